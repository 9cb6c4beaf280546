import pytest
from hypothesis import given, settings, strategies as st

import oracles

from genuscount.core import PartitionType
from genuscount.classic import (
    assoc_bell,
    bell,
    binom,
    catalan,
    double_factorial,
    eulerian2,
    eulerian2_from_stirling,
    faa_di_bruno,
    integer_partitions,
    stirling1,
    stirling1_unsigned,
    stirling2,
    ward,
    ward_from_eulerian,
)


def test_bell_examples():
    assert bell(1) == 1
    assert bell(5) == 52
    assert bell(12) == 4213597
    assert [bell(n) for n in range(16)] == [oracles.bell_triangle(n) for n in range(16)]


def test_stirling2_examples_and_row_sums():
    assert stirling2(1, 1) == 1
    assert stirling2(4, 2) == 7
    for n in range(1, 21):
        assert sum(stirling2(n, k) for k in range(n + 1)) == bell(n)
    for n in range(1, 15):
        for k in range(n + 1):
            assert stirling2(n, k) == oracles.stirling2(n, k)


def test_faa_di_bruno_examples():
    assert faa_di_bruno(4, PartitionType.parse("2^2")) == 3
    assert faa_di_bruno(10, PartitionType.parse("2,3,5")) == 2520
    for k in range(1, 9):
        assert faa_di_bruno(2 * k, PartitionType((2,) * k)) == double_factorial(2 * k - 1)
    with pytest.raises(ValueError):
        faa_di_bruno(5, PartitionType.parse("2,2"))


@pytest.mark.parametrize("n", range(1, 13))
def test_faa_di_bruno_sums_to_stirling(n):
    for k in range(1, n + 1):
        assert sum(faa_di_bruno(n, t) for t in integer_partitions(n, k)) == stirling2(n, k)


def test_assoc_bell_examples():
    assert assoc_bell(2) == 1
    assert assoc_bell(5) == 11
    for n in range(21):
        assert assoc_bell(n) + assoc_bell(n + 1) == bell(n)
    for n in range(1, 15):
        assert assoc_bell(n) == sum(oracles.ward(n, k) for k in range(n + 1))


def test_ward_examples():
    assert ward(4, 2) == 3
    assert ward(6, 3) == 15
    for n in range(15):
        for k in range(n + 1):
            assert ward(n, k) == oracles.ward(n, k)


@pytest.mark.parametrize("n", range(1, 13))
def test_stirling_from_ward(n):
    for k in range(n + 1):
        assert stirling2(n, k) == sum(binom(n, l) * ward(n - l, k - l) for l in range(n + 1))


def test_eulerian2_examples():
    assert eulerian2(1, 0) == 1
    assert eulerian2(2, 1) == 2
    assert [eulerian2(3, k) for k in range(3)] == [1, 8, 6]
    # rows sum to (2n-1)!!
    for n in range(1, 12):
        assert sum(eulerian2(n, k) for k in range(n)) == double_factorial(2 * n - 1)


def test_eulerian2_literal_sum_is_shifted_triangle():
    for n in range(1, 12):
        assert eulerian2_from_stirling(n, 0) == 0
        for k in range(1, n + 2):
            assert eulerian2_from_stirling(n, k) == eulerian2(n, k - 1)


@pytest.mark.parametrize("n", range(0, 13))
def test_ward_from_eulerian(n):
    for k in range(n + 1):
        assert ward_from_eulerian(n, k) == ward(n, k)


def test_stirling1_examples():
    assert stirling1_unsigned(3, 1) == 2
    for p in range(10):
        assert stirling1_unsigned(p, p) == 1
    assert stirling1(4, 2) == 11 and stirling1(4, 1) == -6


@pytest.mark.parametrize("n", range(0, 11))
def test_stirling_kinds_are_inverse(n):
    for q in range(n + 1):
        total = sum(stirling2(n, p) * stirling1(p, q) for p in range(n + 1))
        assert total == (1 if n == q else 0)


def test_small_helpers():
    assert [catalan(n) for n in range(8)] == [oracles.catalan(n) for n in range(8)]
    assert double_factorial(-1) == double_factorial(0) == 1
    assert double_factorial(7) == oracles.double_factorial(7) == 105
    assert binom(3, 5) == binom(-1, 0) == 0


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 40), st.integers(0, 40))
def test_binom_matches_pascal(n, k):
    assert binom(n, k) == oracles.binomial(n, k)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 14))
def test_integer_partitions_cover_profiles(n):
    types = integer_partitions(n)
    assert len(types) == len(set(types))
    assert sum(faa_di_bruno(n, t) for t in types) == bell(n)
    assert all(t.n == n for t in types)
