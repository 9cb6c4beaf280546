from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from genuscount.polynomial import RationalPolynomial

coeffs = st.lists(st.fractions(max_denominator=12).filter(lambda f: abs(f) < 100), max_size=6)


def test_trailing_zeros_trimmed():
    p = RationalPolynomial([1, 2, 0, 0])
    assert list(p.coeffs) == [1, 2]
    assert p.degree == 1
    assert RationalPolynomial([0, 0]) == RationalPolynomial()


def test_interpolation_recovers_polynomial():
    p = RationalPolynomial([Fraction(1, 2), -3, 0, 7])
    q = RationalPolynomial.interpolate([(x, p(x)) for x in range(4)])
    assert q == p
    with pytest.raises(ValueError):
        RationalPolynomial.interpolate([(0, 1), (0, 2)])


def test_format_and_helpers():
    p = RationalPolynomial([1, 6, -19, 21])
    assert p.format() == "1+6x-19x^2+21x^3"
    assert p.is_integral() and p.int_coeffs() == [1, 6, -19, 21]
    assert RationalPolynomial([2, 4]).content() == 2
    assert p.derivative() == RationalPolynomial([6, -38, 63])
    assert RationalPolynomial.monomial(3, 5)(2) == 40


@settings(max_examples=150, deadline=None)
@given(coeffs, coeffs, st.integers(-5, 5))
def test_ring_operations_evaluate_pointwise(a, b, x):
    p, q = RationalPolynomial(a), RationalPolynomial(b)
    assert (p + q)(x) == p(x) + q(x)
    assert (p - q)(x) == p(x) - q(x)
    assert (p * q)(x) == p(x) * q(x)
    assert (-p)(x) == -p(x)


@settings(max_examples=100, deadline=None)
@given(coeffs)
def test_interpolation_round_trip(a):
    p = RationalPolynomial(a)
    pts = [(x, p(x)) for x in range(max(p.degree, 0) + 1)]
    assert RationalPolynomial.interpolate(pts) == p
