import pytest
from hypothesis import given, settings

import oracles
from strategies import rgs, set_partitions, two_block_partitions

from genuscount.core import (
    GenusIntegrityError,
    PartitionType,
    Permutation,
    SetPartition,
    faces_of,
    genus_from_counts,
    genus_of,
    tau_of,
    two_part_stats,
    type_of,
)

FIG1 = SetPartition.parse("1,3,4,6,7|2,5,9|8|10")
FIG2 = SetPartition.from_blocks([[1, 4, 5, 8, 10], [2, 3, 6, 7, 9, 11, 12]])


def test_tau_of_examples():
    assert str(tau_of(FIG1)) == "(1 3 4 6 7)(2 5 9)(8)(10)"
    assert tau_of(SetPartition.parse("1")) == Permutation.identity(1)
    assert str(tau_of(SetPartition.parse("1,2|3"))) == "(1 2)(3)"


def test_genus_and_faces_examples():
    assert faces_of(FIG1) == 3
    assert genus_of(FIG1) == 2
    assert faces_of(FIG2) == 5
    assert genus_of(FIG2) == 3
    assert genus_of(SetPartition.parse("1,2|3,4")) == 0
    assert genus_of(SetPartition.parse("1,3|2,4")) == 1
    for n in range(1, 9):
        one_block = SetPartition.from_blocks([range(1, n + 1)])
        assert faces_of(one_block) == n
        assert genus_of(one_block) == 0


def test_type_of_examples():
    assert type_of(FIG1) == PartitionType((1, 1, 3, 5))
    assert str(type_of(FIG1)) == "[1^2,3,5]"
    assert type_of(SetPartition.parse("1,2|3,4")) == PartitionType.parse("2^2")
    assert type_of(SetPartition.parse("1,2,3,4,5")) == PartitionType((5,))


def test_two_part_stats_examples():
    assert two_part_stats(FIG2) == (1, 3, 1)
    assert two_part_stats(SetPartition.parse("1,2|3,4")) == (1, 1, 1)
    assert two_part_stats(SetPartition.parse("1,3|2,4")) == (0, 0, 1)
    with pytest.raises(ValueError):
        two_part_stats(FIG1)


def test_partition_type_parsing_and_order():
    assert PartitionType.parse("[2^2, 3]") == PartitionType.parse("3 2^2") == PartitionType((2, 2, 3))
    assert PartitionType.parse("2^4 3, 4").parts == (2, 2, 2, 2, 3, 4)
    assert PartitionType((2, 2, 3)).key() == "2^2,3"
    types = [PartitionType.parse(s) for s in ("2^2,3", "7", "3,4", "2,5")]
    assert [str(t) for t in sorted(types, key=PartitionType.sort_key)] == ["[7]", "[2,5]", "[3,4]", "[2^2,3]"]
    assert PartitionType.parse("1^3,2").without_singletons() == PartitionType((2,))
    with pytest.raises(ValueError):
        PartitionType.parse("2^x")


def test_set_partition_validation_and_text_form():
    assert str(FIG1) == "1,3,4,6,7|2,5,9|8|10"
    assert SetPartition.parse(str(FIG1)) == FIG1
    with pytest.raises(ValueError):
        SetPartition(3, ((1, 2),))
    with pytest.raises(ValueError):
        SetPartition(3, ((2, 3), (1,)))
    with pytest.raises(ValueError):
        SetPartition.from_rgs((1, 3))


def test_genus_integrity_is_enforced():
    assert genus_from_counts(4, 2, 1) == 1
    with pytest.raises(GenusIntegrityError):
        genus_from_counts(4, 2, 2)
    with pytest.raises(GenusIntegrityError):
        genus_from_counts(3, 3, 3)


def test_permutation_algebra():
    s = Permutation.long_cycle(5)
    assert s.compose(s.inverse()) == Permutation.identity(5)
    assert Permutation.from_cycles(5, [(1, 3), (2, 5, 4)]).cycles() == [(1, 3), (2, 5, 4)]
    with pytest.raises(ValueError):
        Permutation((1, 1, 2))


def test_genus_matches_oracle_exhaustively():
    for n in range(1, 9):
        for blocks in oracles.set_partitions(n):
            p = SetPartition.from_blocks(blocks, n)
            assert genus_of(p) == oracles.genus(blocks, n)


@settings(max_examples=300, deadline=None)
@given(set_partitions())
def test_genus_integrality_and_bounds(p):
    k, f = len(p.blocks), faces_of(p)
    twice = p.n + 1 - k - f
    assert twice >= 0 and twice % 2 == 0
    g = genus_of(p)
    assert 2 * g <= p.n - k
    if g > 0:
        assert p.n >= 2 * g + k
    if k == 1:
        assert g == 0


@settings(max_examples=300, deadline=None)
@given(set_partitions())
def test_singletons_do_not_change_genus(p):
    q = p.remove_singletons()
    assert (0 if q is None else genus_of(q)) == genus_of(p)


@settings(max_examples=300, deadline=None)
@given(two_block_partitions())
def test_two_block_face_structure(p):
    s1, s2, fp = two_part_stats(p)
    assert fp == 1
    assert s2 - s1 == p.n - 2 * len(p.blocks[0])


@settings(max_examples=200, deadline=None)
@given(rgs())
def test_rgs_round_trip(r):
    p = SetPartition.from_rgs(r)
    assert p.to_rgs() == r
    assert SetPartition.parse(str(p)) == p
    assert tau_of(p).cycles() == list(p.blocks)
