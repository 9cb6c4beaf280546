import json
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from conftest import bell_from_types, stirling_from_types

from genuscount.core import PartitionType, SetPartition, genus_of
from genuscount.enumeration import (
    Constraint,
    ConstraintError,
    GenusCountTable,
    count_by_genus,
    count_stirling,
    count_table,
    count_types,
    count_unit,
    iter_rgs,
    reduce_types,
    split_workload,
    visit_partitions,
)


def test_visit_counts():
    assert visit_partitions(4, Constraint(), lambda p: None) == 15
    assert visit_partitions(6, Constraint(ctype=PartitionType.parse("3^2")), lambda p: None) == 10
    assert visit_partitions(5, Constraint(min_block_size=2), lambda p: None) == 11


def test_visitor_can_stop_early():
    seen = []
    visited = visit_partitions(6, Constraint(), lambda p: seen.append(p) or len(seen) < 4)
    assert visited == 4


def test_count_by_genus_examples():
    assert count_by_genus(4).by_genus() == {0: 14, 1: 1}
    assert count_by_genus(6, Constraint(ctype=PartitionType.parse("3^2"))).by_genus() == {0: 3, 1: 6, 2: 1}
    assert count_by_genus(2).by_genus() == {0: 2}


def test_count_stirling_examples():
    t = count_stirling(5)
    assert (t.get(2, 0), t.get(2, 1)) == (10, 5)
    assert count_stirling(8).get(4, 2) == 161
    h = count_stirling(6, no_singletons=True)
    assert (h.get(3, 0), h.get(3, 1)) == (5, 10)


def test_count_types_examples(brute_types):
    assert brute_types(10)[(PartitionType.parse("2,3,5"), 1)] == 830
    assert brute_types(12)[(PartitionType.parse("4^3"), 2)] == 2007
    assert count_types(7, min_block_size=2).get(PartitionType.parse("2^2,3"), 2) == 14


def test_split_workload_shapes():
    assert [u.label() for u in split_workload(5, depth=1)] == ["1"]
    assert [u.label() for u in split_workload(5, depth=2)] == ["11", "12"]
    with pytest.raises(ValueError):
        split_workload(5, depth=5)


def test_split_units_sum_to_whole():
    whole = count_by_genus(10).counts
    total = Counter()
    for u in split_workload(10, depth=4):
        total.update(count_unit(u, "genus"))
    assert dict(total) == whole


def test_rgs_stream_is_lexicographic_and_complete():
    seqs = list(iter_rgs(6))
    assert seqs == sorted(seqs)
    assert len(seqs) == len(set(seqs)) == oracles.bell_triangle(6)


def test_constraint_errors():
    with pytest.raises(ConstraintError):
        Constraint(min_block_size=3)
    with pytest.raises(ConstraintError):
        Constraint(parts=2, ctype=PartitionType.parse("2^3"))
    with pytest.raises(ConstraintError):
        Constraint(min_block_size=2, ctype=PartitionType.parse("1,3"))
    with pytest.raises(ConstraintError):
        count_by_genus(5, Constraint(ctype=PartitionType.parse("2,2")))


def test_counts_match_independent_oracle():
    for n in range(1, 9):
        want = Counter()
        for (parts, g), v in oracles.type_counts(n).items():
            want[(PartitionType(parts), g)] += v
        assert count_types(n).counts == dict(want)


@pytest.mark.parametrize("n", range(1, 13))
def test_sum_rules_by_enumeration(n, brute_types):
    T = brute_types(n)
    assert sum(T.values()) == oracles.bell_triangle(n)
    S = stirling_from_types(T)
    for k in range(1, n + 1):
        assert sum(v for (kk, _), v in S.items() if kk == k) == oracles.stirling2(n, k)
    # C summed over types with k parts is S^(g)_(n,k)
    by_type = Counter()
    for (t, g), v in T.items():
        by_type[(t.length, g)] += v
    assert dict(by_type) == S
    hat = sum(bell_from_types(T, singletons=False).values())
    assert hat == sum(oracles.ward(n, k) for k in range(n + 1))


@pytest.mark.parametrize("n", range(1, 12))
def test_associated_bell_identity(n, brute_types):
    hat = lambda m: sum(bell_from_types(brute_types(m), singletons=False).values()) if m >= 1 else 1
    assert oracles.bell_triangle(n) == hat(n) + hat(n + 1)


@pytest.mark.parametrize("n", range(2, 12))
def test_singleton_types_factor(n, brute_types):
    from math import comb

    T = brute_types(n)
    for (t, g), v in T.items():
        r = t.singletons
        if 1 <= r <= 3 and r < n:
            rest = t.without_singletons()
            assert v == comb(n, r) * brute_types(n - r).get((rest, g), 0)


def test_parallel_equals_serial():
    serial = count_types(9)
    for depth in (2, 3, 5):
        par = count_table(9, Constraint(), "type", workers=2, depth=depth)
        assert par.counts == serial.counts
        assert json.dumps(par.to_json()["counts"]) == json.dumps(serial.to_json()["counts"])


def test_checkpoints_resume(tmp_path):
    first = count_table(8, Constraint(parts=3), "genus", depth=3, checkpoint_dir=tmp_path)
    units = sorted(tmp_path.glob("*.json"))
    assert len(units) == len(split_workload(8, Constraint(parts=3), 3))
    # a resumed run reads every unit back instead of recounting
    seen = []
    again = count_table(8, Constraint(parts=3), "genus", depth=3, checkpoint_dir=tmp_path,
                        progress=lambda done, total: seen.append(done))
    assert again.counts == first.counts
    assert seen[0] == len(units)


def test_reduce_types():
    t = count_types(7)
    assert reduce_types(t, "parts").counts == count_stirling(7).counts
    assert reduce_types(t, "parts", min_block_size=2).counts == count_stirling(7, no_singletons=True).counts
    assert reduce_types(t, "genus").counts == count_by_genus(7).counts


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 8), st.sampled_from(["genus", "parts", "type"]), st.booleans())
def test_table_json_round_trip(n, mode, no_single):
    if no_single and n < 2:
        n = 2
    t = count_table(n, Constraint(min_block_size=2 if no_single else 1), mode)
    back = GenusCountTable.from_json(json.loads(json.dumps(t.to_json())))
    assert back.same_counts(t) and back.constraint == t.constraint and back.n == t.n
    assert all(isinstance(r["count"], str) for r in t.to_json()["counts"])


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 9), st.integers(2, 4))
def test_any_split_depth_gives_same_table(n, depth):
    depth = min(depth, n - 1)
    whole = count_types(n).counts
    total = Counter()
    for u in split_workload(n, depth=depth):
        total.update(count_unit(u, "type"))
    assert dict(total) == whole


def test_visited_partitions_satisfy_constraint():
    c = Constraint(min_block_size=2, parts=3)
    seen = []
    visit_partitions(9, c, seen.append)
    assert all(c.accepts(p) for p in seen)
    assert len(seen) == oracles.ward(9, 3)
    assert all(isinstance(p, SetPartition) and genus_of(p) >= 0 for p in seen)
