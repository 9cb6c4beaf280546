from fractions import Fraction
from math import factorial

import pytest

import oracles
from conftest import BRUTE_MAX

from genuscount.core import PartitionType
from genuscount.pairings import (
    Q_poly,
    R_double_sum,
    R_eval,
    R_poly,
    coth_series,
    epsilon,
    epsilon_chapuy_holds,
    epsilon_from_R,
    epsilon_recurrence_chapuy,
    epsilon_recurrence_hz,
    pairings_gf,
)
from genuscount.polynomial import RationalPolynomial

TABLE1 = {
    2: [2, 1],
    4: [14, 70, 21],
    5: [42, 420, 483],
    6: [132, 2310, 6468, 1485],
}


def test_epsilon_examples():
    assert epsilon(4, 1) == 70
    assert epsilon(6, 2) == 6468
    assert epsilon(8, 4) == 225225
    for k, row in TABLE1.items():
        assert [epsilon(k, g) for g in range(len(row))] == row
    assert epsilon(3, 2) == 0


def test_coth_series_is_even_with_bernoulli_coefficients():
    s = coth_series(8)
    assert [s[i] for i in range(9)] == [1, 0, Fraction(1, 12), 0, Fraction(-1, 720), 0, Fraction(1, 30240), 0,
                                        Fraction(-1, 1209600)]


def test_hz_recurrence_examples():
    assert epsilon_recurrence_hz(5, 2) == 483
    assert epsilon_recurrence_hz(2, 1) == 1
    for k in range(13):
        for g in range(7):
            assert epsilon_recurrence_hz(k, g) == epsilon(k, g)


def test_chapuy_recurrence():
    lhs, rhs = epsilon_recurrence_chapuy(4, 1)
    assert lhs == rhs == 2 * 70
    assert epsilon_chapuy_holds(6, 3)
    assert epsilon_recurrence_chapuy(7, 0) == (0, 0)
    for k in range(1, 17):
        for g in range(k // 2 + 1):
            assert epsilon_chapuy_holds(k, g)
    # a wrong table must be caught
    assert not epsilon_chapuy_holds(4, 1, eps=lambda k, g: 71 if (k, g) == (4, 1) else epsilon(k, g))


def test_R_examples():
    assert Fraction(R_eval(1, 4) * oracles.catalan(4), 2) == 70
    r1 = R_poly(1)
    assert r1(0) == 0 and r1(1) == 0
    for g in range(1, 5):
        r = R_poly(g)
        assert r.degree == 3 * g
        assert all(r(k) == 0 for k in range(-1, 2 * g))


def test_R_recurrence():
    for g in range(1, 5):
        for k in range(2, 13):
            assert R_eval(g, k) == R_eval(g, k - 1) + oracles.binomial(k, 2) * R_eval(g - 1, k - 2)
            assert R_poly(g)(k) == R_eval(g, k)


def test_R_double_sum_normalisation():
    for k in range(10):
        assert R_double_sum(0, k) == 2**k
        for g in range(4):
            assert R_double_sum(g, k) == R_eval(g, k) * 2 ** (k - g) or k < g
            assert epsilon_from_R(k, g) == epsilon(k, g)


def test_Q_examples():
    assert Q_poly(1) == RationalPolynomial([1])
    assert Q_poly(2) == RationalPolynomial([21, 21])
    assert Q_poly(3) == RationalPolynomial([11 * 135, 11 * 558, 11 * 158])
    assert [Q_poly(g)(0) for g in range(1, 5)] == [1, 21, 1485, 225225]
    with pytest.raises(ValueError):
        Q_poly(0)


def test_Q_polynomials_are_integral():
    prev = None
    for g in range(1, 9):
        q = Q_poly(g)
        assert q.is_integral() and q.degree == g - 1
        assert q(0) == Fraction(factorial(4 * g), 2 ** (2 * g) * factorial(2 * g + 1))
        if prev is not None:
            assert q(0) / prev(0) == Fraction((4 * g) * (4 * g - 1) * (4 * g - 2) * (4 * g - 3), 4 * (2 * g + 1) * (2 * g))
        prev = q


def test_pairings_gf_examples():
    assert pairings_gf(1, 8)[5] == 420
    assert pairings_gf(2, 8)[4] == 21
    assert pairings_gf(3, 8)[6] == 1485


def test_pairings_gf_matches_epsilon():
    for g in range(0, 6):
        s = pairings_gf(g, 20)
        for k in range(21):
            assert s[k] == epsilon(k, g)


def test_columns_and_row_sums():
    for k in range(1, 13):
        assert sum(epsilon(k, g) for g in range(k // 2 + 1)) == oracles.double_factorial(2 * k - 1)
        assert epsilon(k, 0) == oracles.catalan(k)
        if k >= 2:
            assert epsilon(k, 1) == oracles.binomial(2 * k - 1, 3) * oracles.catalan(k - 2)


@pytest.mark.parametrize("k", range(1, BRUTE_MAX // 2 + 1))
def test_epsilon_against_enumeration(k, brute_types):
    T = brute_types(2 * k)
    t = PartitionType((2,) * k)
    for g in range(k // 2 + 1):
        assert epsilon(k, g) == T.get((t, g), 0)
