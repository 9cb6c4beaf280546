"""Embedded reference tables and access helpers.

``data/golden.json`` holds the published tables as transcribed, with
``data/golden.sha256`` guarding the embedded copy against accidental edits.
Every cell keeps the name of the table it came from.
"""

from __future__ import annotations

import copy
import hashlib
import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterator

from genuscount.core import PartitionType

TABLES = ("types", "stirling", "assoc_stirling", "pairings", "two_part_5", "equal_blocks")


class GoldenChecksumError(RuntimeError):
    pass


@dataclass(frozen=True)
class GoldenCell:
    table: str
    key: tuple  # (n, type) | (n, k) | (k,) | (n,) | (p, k)
    genus: int
    value: int
    partial: bool = False

    def label(self) -> str:
        key = ", ".join(str(k) for k in self.key)
        return f"{self.table}[{key}] g={self.genus}"


def _data_text(name: str) -> str:
    return resources.files("genuscount.app").joinpath("data", name).read_text()


def embedded_checksum_ok() -> bool:
    text = _data_text("golden.json")
    want = _data_text("golden.sha256").split()[0]
    return hashlib.sha256(text.encode()).hexdigest() == want


class GoldenTables:
    def __init__(self, data: dict, source: str = "embedded"):
        if data.get("format") != 1:
            raise ValueError("unsupported golden data format")
        missing = [t for t in TABLES if t not in data["tables"]]
        if missing:
            raise ValueError(f"golden data lacks tables {missing}")
        self.data = data
        self.source = source

    @classmethod
    def embedded(cls, check: bool = True) -> "GoldenTables":
        if check and not embedded_checksum_ok():
            raise GoldenChecksumError("embedded golden.json does not match golden.sha256")
        return cls(json.loads(_data_text("golden.json")))

    @classmethod
    def load(cls, path: str | Path) -> "GoldenTables":
        return cls(json.loads(Path(path).read_text()), source=str(path))

    def dumps(self) -> str:
        return json.dumps(self.data, indent=1) + "\n"

    def rows(self, table: str) -> list[dict]:
        return self.data["tables"][table]["rows"]

    def cells(self, table: str) -> Iterator[GoldenCell]:
        for row in self.rows(table):
            key = _row_key(table, row)
            for g, v in enumerate(row["values"]):
                yield GoldenCell(table, key, g, int(v), bool(row.get("partial", False)))

    def all_cells(self) -> Iterator[GoldenCell]:
        for t in TABLES:
            yield from self.cells(t)

    # keyed views -------------------------------------------------------

    def types(self, n: int) -> dict[tuple[PartitionType, int], int]:
        return {(c.key[1], c.genus): c.value for c in self.cells("types") if c.key[0] == n}

    def type_rows(self, n: int) -> list[PartitionType]:
        return [PartitionType.parse(r["type"]) for r in self.rows("types") if r["n"] == n]

    def stirling(self, n: int, singletons: bool = True) -> dict[tuple[int, int], int]:
        table = "stirling" if singletons else "assoc_stirling"
        return {(c.key[1], c.genus): c.value for c in self.cells(table) if c.key[0] == n}

    def n_range(self, table: str) -> tuple[int, int]:
        ns = [r["n"] for r in self.rows(table)]
        return min(ns), max(ns)

    def pairings(self) -> dict[tuple[int, int], int]:
        return {(c.key[0], c.genus): c.value for c in self.cells("pairings")}

    def two_part_5(self) -> dict[tuple[int, int], int]:
        return {(c.key[0], c.genus): c.value for c in self.cells("two_part_5")}

    def equal_blocks(self) -> dict[tuple[int, int], tuple[list[int], bool]]:
        return {(r["p"], r["k"]): ([int(v) for v in r["values"]], bool(r["partial"])) for r in self.rows("equal_blocks")}

    def with_value(self, table: str, key: tuple, genus: int, value: int) -> "GoldenTables":
        """Copy with one cell replaced (used to exercise the failure path)."""
        data = copy.deepcopy(self.data)
        for row in data["tables"][table]["rows"]:
            if _row_key(table, row) == tuple(key):
                row["values"][genus] = value
                return GoldenTables(data, source=f"{self.source} (modified)")
        raise KeyError(f"no row {key} in {table}")


def _row_key(table: str, row: dict) -> tuple:
    if table == "types":
        return (row["n"], PartitionType.parse(row["type"]))
    if table in ("stirling", "assoc_stirling"):
        return (row["n"], row["k"])
    if table == "pairings":
        return (row["k"],)
    if table == "two_part_5":
        return (row["n"],)
    if table == "equal_blocks":
        return (row["p"], row["k"])
    raise KeyError(table)
