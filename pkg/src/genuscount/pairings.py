"""Genus-refined counts of pairings of 2k points, ``eps_g(k)``.

``eps_g(k)`` is the number of genus-g partitions of ``{1..2k}`` into k
pairs (type ``[2^k]``). It is computed here four ways: coefficient
extraction from a power of ``(u/2) coth(u/2)``, the three-term
recurrence, the polynomial ``R_g`` and the generating polynomial
``Q^(g)``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from genuscount.classic import binom, catalan, stirling1_unsigned
from genuscount.polynomial import RationalPolynomial
from genuscount.series.base import Series, half_power

__all__ = [
    "RationalPolynomial",
    "coth_series",
    "epsilon",
    "epsilon_chapuy_holds",
    "epsilon_from_R",
    "epsilon_recurrence_chapuy",
    "epsilon_recurrence_hz",
    "pairings_gf",
    "Q_poly",
    "Q_rhs",
    "R_double_sum",
    "R_eval",
    "R_poly",
]


@lru_cache(maxsize=None)
def coth_series(N: int) -> Series:
    """``(u/2) coth(u/2) = (1/2)(e^u + 1) / ((e^u - 1)/u)`` to order ``N``, by series division."""
    num = [Fraction(1)] + [Fraction(1, 2 * factorial(m)) for m in range(1, N + 1)]
    den = [Fraction(1, factorial(m + 1)) for m in range(N + 1)]
    return Series(num, N) / Series(den, N)


@lru_cache(maxsize=None)
def epsilon(k: int, g: int) -> int:
    """``(2k)! / ((k+1)! (k-2g)!) [ ((u/2) coth(u/2))^(k+1) ]_(u^(2g))``."""
    if k < 0 or g < 0:
        raise ValueError("need k, g >= 0")
    if 2 * g > k:
        return 0
    c = (coth_series(2 * g) ** (k + 1))[2 * g]
    v = Fraction(factorial(2 * k), factorial(k + 1) * factorial(k - 2 * g)) * c
    if v.denominator != 1:
        raise ArithmeticError(f"eps_{g}({k}) is not an integer: {v}")
    return int(v)


@lru_cache(maxsize=None)
def epsilon_recurrence_hz(k: int, g: int) -> int:
    """``(k+1) e_g(k) = 2(2k-1) e_g(k-1) + (2k-1)(2k-2)(2k-3)/2 e_(g-1)(k-2)``."""
    if k < 0 or g < 0:
        return 0
    if g == 0:
        return catalan(k)
    if k < 2 * g:
        return 0
    num = 2 * (2 * k - 1) * epsilon_recurrence_hz(k - 1, g)
    num += Fraction((2 * k - 1) * (2 * k - 2) * (2 * k - 3), 2) * epsilon_recurrence_hz(k - 2, g - 1)
    v = Fraction(num, k + 1)
    if v.denominator != 1:
        raise ArithmeticError(f"recurrence left a fraction at k={k}, g={g}")
    return int(v)


def epsilon_recurrence_chapuy(k: int, g: int, eps=epsilon) -> tuple[int, int]:
    """Both sides of ``2g e_g(k) = sum_(h=1..g) C(k+2h+1-2g, 2h+1) e_(g-h)(k)``."""
    lhs = 2 * g * eps(k, g)
    rhs = sum(binom(k + 2 * h + 1 - 2 * g, 2 * h + 1) * eps(k, g - h) for h in range(1, g + 1))
    return lhs, rhs


def epsilon_chapuy_holds(k: int, g: int, eps=epsilon) -> bool:
    lhs, rhs = epsilon_recurrence_chapuy(k, g, eps)
    return lhs == rhs


def R_double_sum(g: int, k: int) -> int:
    """``sum_s C(k, s) sum_j (-1)^(s+1-j) c(k-s+1, k+2-2g-j) c(s+1, j)``, ``c`` unsigned Stirling numbers of the first kind."""
    if g < 0 or k < 0:
        raise ValueError("need g, k >= 0")
    total = 0
    for s in range(k + 1):
        inner = 0
        for j in range(k + 3 - 2 * g):
            sign = -1 if (s + 1 - j) % 2 else 1
            inner += sign * stirling1_unsigned(k - s + 1, k + 2 - 2 * g - j) * stirling1_unsigned(s + 1, j)
        total += comb(k, s) * inner
    return total


def R_eval(g: int, k: int) -> int:
    """``R_g(k)``, normalised so that ``e_g(k) = catalan(k) R_g(k) / 2^g``.

    The raw double sum :func:`R_double_sum` carries an extra factor
    ``2^(k-g)`` (it equals ``2^k`` for g = 0), which is divided out here.
    """
    raw = Fraction(R_double_sum(g, k)) / Fraction(2) ** (k - g)
    if raw.denominator != 1:
        raise ArithmeticError(f"R_{g}({k}) is not an integer")
    return int(raw)


@lru_cache(maxsize=None)
def R_poly(g: int) -> RationalPolynomial:
    """Degree-3g polynomial through ``R_eval(g, k)``, k = 0..3g."""
    return RationalPolynomial.interpolate([(k, R_eval(g, k)) for k in range(3 * g + 1)])


def epsilon_from_R(k: int, g: int) -> int:
    """``e_g(k) = catalan(k) R_g(k) / 2^g``."""
    v = Fraction(catalan(k) * R_eval(g, k), 2**g)
    if v.denominator != 1:
        raise ArithmeticError(f"non-integral value from R at k={k}, g={g}")
    return int(v)


def _diff(p: list[Fraction], times: int = 1) -> list[Fraction]:
    for _ in range(times):
        p = [i * c for i, c in enumerate(p)][1:]
    return p


def _polymul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _polyadd(*ps: list) -> list:
    m = max((len(p) for p in ps), default=0)
    return [sum((p[i] if i < len(p) else 0) for p in ps) for i in range(m)]


def Q_rhs(g: int, q_prev: RationalPolynomial) -> list[Fraction]:
    """Coefficients of the right-hand operator applied to ``Q^(g-1)``."""
    Q = list(q_prev.coeffs)
    one_m4u = [Fraction(1), Fraction(-4)]
    c0 = [
        3 * comb(4 * g - 1, 3),
        6 * (4 * g - 1) * (8 * g * g - 14 * g + 1),
        96 * (g - 2) * (4 * g * g - 8 * g - 1),
        128 * (g - 2) * (g - 3) * (2 * g - 5),
    ]
    c1 = [48 * g * g - 24 * g + 3, 24 * (8 * g * g - 20 * g - 1), 192 * (g - 3) ** 2]
    c2 = [24 * g, 24 * (2 * g - 7)]
    t0 = _polymul(c0, Q)
    t1 = _polymul(_polymul(c1, [0, 1]), _polymul(one_m4u, _diff(Q)))
    t2 = _polymul(_polymul(c2, [0, 0, 1]), _polymul(_polymul(one_m4u, one_m4u), _diff(Q, 2)))
    t3 = _polymul([0, 0, 0, 4], _polymul(_polymul(one_m4u, _polymul(one_m4u, one_m4u)), _diff(Q, 3)))
    return [Fraction(v) for v in _polyadd(t0, t1, t2, t3)]


@lru_cache(maxsize=None)
def Q_poly(g: int) -> RationalPolynomial:
    """Numerator ``Q^(g)`` of ``sum_k e_g(k) u^k = u^(2g) Q^(g)(u) / (1-4u)^((6g-1)/2)``.

    Solves ``(2g+1+r) q_r + 4(g-r) q_(r-1) = [rhs]_r`` degree by degree from
    ``q_0 = (4g)! / (2^(2g) (2g+1)!)``; the constant term of the right-hand
    side and its vanishing at degrees ``g`` and ``g+1`` are asserted.
    """
    if g < 1:
        raise ValueError("Q^(g) is defined for g >= 1")
    if g == 1:
        return RationalPolynomial([1])
    rhs = Q_rhs(g, Q_poly(g - 1))
    rhs += [Fraction(0)] * (g + 2 - len(rhs))
    q0 = Fraction(factorial(4 * g), 2 ** (2 * g) * factorial(2 * g + 1))
    if (2 * g + 1) * q0 != rhs[0]:
        raise ArithmeticError(f"constant term mismatch at g={g}")
    if rhs[g] or rhs[g + 1] or any(rhs[g + 2:]):
        raise ArithmeticError(f"right-hand side of degree >= {g} at g={g}")
    q = [q0]
    for r in range(1, g):
        q.append((rhs[r] - 4 * (g - r) * q[r - 1]) / (2 * g + 1 + r))
    out = RationalPolynomial(q)
    if not out.is_integral():
        raise ArithmeticError(f"Q^({g}) has non-integer coefficients")
    return out


def pairings_gf(g: int, N: int) -> Series:
    """``u^(2g) Q^(g)(u) / (1-4u)^((6g-1)/2)`` to order ``N``; ``g = 0`` gives Catalan numbers."""
    if g < 0:
        raise ValueError("g must be non-negative")
    if g == 0:
        return Series([catalan(k) for k in range(N + 1)], N)
    Q = Series(Q_poly(g).coeffs, N)
    return (Q * half_power(6 * g - 1, N)).shift(2 * g).truncate(N)
