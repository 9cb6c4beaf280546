"""Exact enumeration and closed-form evaluation of set partitions by genus."""

from genuscount.core import (
    PartitionType,
    Permutation,
    SetPartition,
    faces_of,
    genus_of,
    tau_of,
    two_part_stats,
    type_of,
)

__version__ = "0.1.0"

__all__ = [
    "PartitionType",
    "Permutation",
    "SetPartition",
    "faces_of",
    "genus_of",
    "tau_of",
    "two_part_stats",
    "type_of",
]
