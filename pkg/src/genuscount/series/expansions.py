"""Generating-function expansions for the genus-refined counts.

Bivariate series use ``y`` (variable 0) for the number of blocks. Kappa
series use ``kappa_l`` (variable ``l - 1``) to mark a block of size ``l``.
"""

from __future__ import annotations

from fractions import Fraction

from genuscount.series.base import Poly, Series, half_power, kappa

# numerators x^(2g+2) P(x) / (1-4x)^((6g-1)/2); rows for g >= 4 are only the known head
_BELL_NUMERATORS: dict[int, list[int]] = {
    1: [1],
    2: [1, 6, -19, 21],
    3: [1, 60, -66, -130, 1065, -2262, 1738],
    4: [1, 306, 4035, -16669, 63735, -136164],
    5: [1, 1320, 75068, 218300],
    6: [1, 5406],
}

# singleton-free numerators x^(2g+2) (1+x)^(g-1) Phat(x) / ((1-3x)(1+x))^((6g-1)/2)
_ASSOC_BELL_NUMERATORS: dict[int, list[int]] = {
    1: [1],
    2: [1, 9, -4, 9],
    3: [1, 66, 249, 226, 894, -480, 406],
}

# phat^(g)(x, y) as {(x_degree, y_degree): coeff}
_ASSOC_STIRLING_NUMERATORS: dict[int, dict[tuple[int, int], int]] = {
    1: {(0, 0): 1},
    2: {
        (0, 0): 1,
        (1, 0): -4, (1, 1): 14,
        (2, 0): 6, (2, 1): -22, (2, 2): 21,
        (3, 0): -4, (3, 1): 2, (3, 2): 7,
        (4, 0): 1, (4, 1): 6, (4, 2): -19, (4, 3): 21,
    },
}


def bell_numerator(g: int) -> tuple[list[int], bool]:
    """Known coefficients of ``P^(g)`` and whether they are the complete polynomial."""
    if g not in _BELL_NUMERATORS:
        raise ValueError(f"no numerator data for genus {g}")
    coeffs = _BELL_NUMERATORS[g]
    return list(coeffs), len(coeffs) == 3 * (g - 1) + 1


def assoc_bell_numerator(g: int) -> list[int]:
    if g not in _ASSOC_BELL_NUMERATORS:
        raise ValueError(f"no singleton-free numerator data for genus {g}")
    return list(_ASSOC_BELL_NUMERATORS[g])


def bell_gf_order(g: int, N: int) -> int:
    """Highest order emitted by :func:`expand_bell_gf`; capped when the numerator is partial."""
    if g == 0:
        return N
    coeffs, complete = bell_numerator(g)
    return N if complete else min(N, 2 * g + 2 + len(coeffs) - 1)


def ys(N: int, coeffs) -> Series:
    return Series(coeffs, N, "poly")


def expand_bell_gf(g: int, N: int) -> Series:
    """``sum_n B^(g)_n x^n``; for partially known numerators the order is truncated."""
    if g < 0 or g > 6:
        raise ValueError("genus must be in 0..6")
    if g == 0:
        root = half_power(1, N + 1, sign=1)
        return ((Series.one(N + 1) - root) * Fraction(1, 2)).shift(-1).truncate(N)
    order = bell_gf_order(g, N)
    coeffs, _ = bell_numerator(g)
    num = Series(coeffs, order)
    return (num * half_power(6 * g - 1, order)).shift(2 * g + 2).truncate(order)


def expand_assoc_bell_gf(g: int, N: int) -> Series:
    """``sum_n Bhat^(g)_n x^n`` from the discriminant ``(1-3x)(1+x)``.

    Genus 0 gives the Riordan numbers ``(1 + x - sqrt((1-3x)(1+x))) / (2x(1+x))``.
    """
    if g == 0:
        M = N + 1
        root = Series([1, -2, -3], M) ** Fraction(1, 2)
        num = (Series([1, 1], M) - root) * Series([1, 1], M).inverse()
        return (num * Fraction(1, 2)).shift(-1).truncate(N)
    disc = Series([1, -2, -3], N)
    num = Series(assoc_bell_numerator(g), N) * (Series([1, 1], N) ** (g - 1))
    return (num * disc ** Fraction(-(6 * g - 1), 2)).shift(2 * g + 2).truncate(N)


def _bivariate(terms: dict[tuple[int, int], int], N: int) -> Series:
    coeffs = [Poly() for _ in range(N + 1)]
    for (t, s), c in terms.items():
        if t <= N:
            coeffs[t] = coeffs[t] + Poly.var(0, s, c)
    return ys(N, coeffs)


def stirling_numerator(g: int) -> dict[tuple[int, int], int]:
    """``p^(g)(x, y) = sum chi(t, s) x^t y^s``; requires a complete chi array."""
    from genuscount.genusforms import chi_array

    chi = chi_array(g)
    if not chi.is_complete():
        raise ValueError(f"chi^({g}) is incomplete, its numerator is not known")
    return chi.polynomial()


def expand_stirling_gf(g: int, N: int) -> Series:
    """``sum S^(g)_(n,k) x^n y^k`` (``y`` = variable 0)."""
    if g < 0:
        raise ValueError("genus must be non-negative")
    y = Poly.var(0)
    b = ys(N + 1, [1, 1 - y])
    disc = b * b - Series.x(N + 1, "poly") * 4
    if g == 0:
        num = b - disc ** Fraction(1, 2)
        return (num * Fraction(1, 2)).shift(-1).truncate(N)
    p = _bivariate(stirling_numerator(g), N)
    denom = disc.truncate(N) ** Fraction(-(6 * g - 1), 2)
    return (p * denom * (y * y)).shift(2 * g + 2).truncate(N)


def expand_assoc_stirling_gf(g: int, N: int) -> Series:
    """``sum Shat^(g)_(n,k) x^n y^k`` (partitions without singletons)."""
    if g < 0:
        raise ValueError("genus must be non-negative")
    y = Poly.var(0)
    disc = ys(N + 1, [1, -2, 1 - y * 4])
    if g == 0:
        num = ys(N + 1, [1, 1]) - disc ** Fraction(1, 2)
        den = ys(N + 1, [1, y]).inverse()
        return (num * den * Fraction(1, 2)).shift(-1).truncate(N)
    if g not in _ASSOC_STIRLING_NUMERATORS:
        raise ValueError(f"no singleton-free numerator for genus {g}")
    p = _bivariate(_ASSOC_STIRLING_NUMERATORS[g], N)
    denom = disc.truncate(N) ** Fraction(-(6 * g - 1), 2)
    return (p * denom * (y * y)).shift(2 * g + 2).truncate(N)


def two_block_gf(g: int, N: int) -> Series:
    """``x^(2g+2) / (1-x)^(2g+3)``, the y^2 part of the genus-g Stirling series."""
    return (Series([1, -1], N) ** (-(2 * g + 3))).shift(2 * g + 2).truncate(N)


# ---------------------------------------------------------------------------
# functional equations in the kappa variables
# ---------------------------------------------------------------------------


def _weighted_w(L: int, N: int, weight) -> Series:
    coeffs = [Poly() for _ in range(N + 1)]
    for l in range(1, min(L, N) + 1):
        w = weight(l)
        if w:
            coeffs[l] = kappa(l) * w
    return Series(coeffs, N, "poly")


def solve_Z0(L: int, N: int) -> Series:
    """Genus-0 series by iterating ``Z <- 1 + W(x Z)``, ``W = sum_(l <= L) kappa_l x^l``.

    Each pass fixes one more degree, so ``N`` passes reach the truncation order.
    """
    if L < 1 or N < 1:
        raise ValueError("need L >= 1 and N >= 1")
    W = _weighted_w(L, N, lambda l: 1)
    Z = Series.one(N, "poly")
    for step in range(1, N + 1):
        Zs = Z.truncate(step)
        new = Series.one(step, "poly") + W.truncate(step).compose(Zs.shift(1).truncate(step))
        Z = Series(list(new.coeffs) + [Poly()] * (N - step), N, "poly")
    return Z


def solve_Z1(L: int, N: int, Z0: Series | None = None) -> Series:
    """Genus-1 series ``X2(xt) Y2(xt) / ((1 - X2(xt))^4 J(x))`` with ``xt = x Z0(x)``.

    ``X2 = x W' - W`` and ``Y2 = x^2 W'' / 2``. The last factor
    ``J = 1 / (x d/dx log xt) = (1 - X2(xt)) / Z0(x)`` is the Jacobian of the
    change of variable; reading it as ``1 - x W'(x)`` instead already fails
    for four pairs.
    """
    if Z0 is None:
        Z0 = solve_Z0(L, N)
    X2 = _weighted_w(L, N, lambda l: l - 1)
    Y2 = _weighted_w(L, N, lambda l: Fraction(l * (l - 1), 2))
    xt = Z0.shift(1).truncate(N)
    X2t = X2.compose(xt)
    Y2t = Y2.compose(xt)
    one = Series.one(N, "poly")
    return X2t * Y2t * Z0 * ((one - X2t) ** 5).inverse()


def solve_Z1_literal(L: int, N: int, Z0: Series | None = None) -> Series:
    """The same expression with the last factor taken as ``1 - V(x)``, ``V = x W'``.

    Kept so the discrepancy can be demonstrated; it disagrees with the
    counts from ``[2^4]`` on.
    """
    if Z0 is None:
        Z0 = solve_Z0(L, N)
    V = _weighted_w(L, N, lambda l: l)
    X2 = _weighted_w(L, N, lambda l: l - 1)
    Y2 = _weighted_w(L, N, lambda l: Fraction(l * (l - 1), 2))
    xt = Z0.shift(1).truncate(N)
    X2t = X2.compose(xt)
    one = Series.one(N, "poly")
    return X2t * Y2.compose(xt) * (((one - X2t) ** 4) * (one - V)).inverse()


def kappa_coefficient(series: Series, n: int, parts) -> Fraction:
    """Coefficient of ``x^n prod kappa_l`` for the block sizes ``parts``."""
    from genuscount.series.base import kappa_monomial

    return series.coeff(n, kappa_monomial(parts))
