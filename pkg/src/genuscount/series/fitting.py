"""Inverse problems: recover numerator polynomials and chi arrays from counts.

Nothing here extrapolates. Each fit reports which data it consumed to solve
and which surplus data it checked.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from genuscount.polynomial import RationalPolynomial
from genuscount.series.base import Series


FAMILIES = ("bell", "assoc_bell", "pairings")


@dataclass
class NumeratorFit:
    family: str
    g: int
    ok: bool
    polynomial: RationalPolynomial | None = None
    consumed: tuple[int, int] | None = None
    checked: tuple[int, int] | None = None
    reason: str = ""
    first_excess: tuple[int, Fraction] | None = None

    def to_json(self) -> dict:
        return {
            "kind": "numerator",
            "family": self.family,
            "g": self.g,
            "ok": self.ok,
            "coefficients": None if self.polynomial is None else [str(c) for c in self.polynomial.coeffs],
            "source": {
                "consumed_coefficients": self.consumed,
                "checked_zero_coefficients": self.checked,
            },
            "reason": self.reason,
            "first_excess": None if self.first_excess is None else [self.first_excess[0], str(self.first_excess[1])],
        }


def _ansatz(family: str, g: int, N: int):
    """(series to multiply by, power of x to strip, extra unit factor to divide, degree)."""
    disc_power = Fraction(6 * g - 1, 2)
    if family == "bell":
        return Series([1, -4], N) ** disc_power, 2 * g + 2, None, 3 * (g - 1)
    if family == "assoc_bell":
        extra = Series([1, 1], N) ** (g - 1) if g > 1 else None
        return Series([1, -2, -3], N) ** disc_power, 2 * g + 2, extra, 3 * (g - 1)
    if family == "pairings":
        return Series([1, -4], N) ** disc_power, 2 * g, None, g - 1
    raise ValueError(f"unknown family {family!r}, expected one of {FAMILIES}")


def fit_numerator(counts: Sequence, g: int, family: str = "bell") -> NumeratorFit:
    """Fit the numerator of the genus-g generating function of ``family``.

    ``counts[n]`` is the count at index ``n`` starting from 0 (``k`` for
    pairings). The polynomial is read off after clearing the denominator;
    every higher coefficient that the data determine must vanish, and at
    least two of them are required.
    """
    if g < 1:
        raise ValueError("the ansatz applies to g >= 1")
    N = len(counts) - 1
    denom, lead, extra, deg = _ansatz(family, g, max(N, 0))
    if N - lead - deg < 2:
        return NumeratorFit(family, g, False, reason=f"need counts up to index {lead + deg + 2}, got {N}")
    series = Series(counts, N) * denom
    low = [i for i in range(min(lead, N + 1)) if series[i] != 0]
    if low:
        return NumeratorFit(family, g, False, reason=f"nonzero coefficient below x^{lead}", first_excess=(low[0], series[low[0]]))
    body = series.shift(-lead)
    if extra is not None:
        body = body * extra.truncate(body.N).inverse()
    excess = [(lead + i, body[i]) for i in range(deg + 1, body.N + 1) if body[i] != 0]
    consumed = (lead, lead + deg)
    checked = (lead + deg + 1, N)
    if excess:
        return NumeratorFit(family, g, False, consumed=consumed, checked=checked,
                            reason="counts violate the ansatz", first_excess=excess[0])
    poly = RationalPolynomial(body[i] for i in range(deg + 1))
    return NumeratorFit(family, g, True, poly, consumed, checked)


# ---------------------------------------------------------------------------
# exact linear algebra
# ---------------------------------------------------------------------------


@dataclass
class LinearSolution:
    consistent: bool
    rank: int
    values: dict[int, Fraction]
    free: list[int]
    undetermined: list[int]
    conflict_row: int | None = None


def solve_exact(rows: Sequence[Sequence], rhs: Sequence, nvars: int) -> LinearSolution:
    """Gauss-Jordan elimination over the rationals.

    ``values`` holds every variable whose value is forced by the system; a
    pivot variable coupled to a free variable is reported as undetermined.
    """
    A = [[Fraction(v) for v in r] + [Fraction(b)] for r, b in zip(rows, rhs)]
    origin = list(range(len(A)))
    pivots: list[int] = []
    r = 0
    for col in range(nvars):
        pr = next((i for i in range(r, len(A)) if A[i][col] != 0), None)
        if pr is None:
            continue
        A[r], A[pr] = A[pr], A[r]
        origin[r], origin[pr] = origin[pr], origin[r]
        inv = 1 / A[r][col]
        A[r] = [v * inv for v in A[r]]
        for i in range(len(A)):
            if i != r and A[i][col] != 0:
                f = A[i][col]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(col)
        r += 1
        if r == len(A):
            break
    for i in range(r, len(A)):
        if A[i][nvars] != 0:
            return LinearSolution(False, r, {}, [], [], conflict_row=origin[i])
    pivot_set = set(pivots)
    free = [c for c in range(nvars) if c not in pivot_set]
    values: dict[int, Fraction] = {}
    undetermined = list(free)
    for i, col in enumerate(pivots):
        if any(A[i][f] != 0 for f in free):
            undetermined.append(col)
        else:
            values[col] = A[i][nvars]
    return LinearSolution(True, r, values, free, sorted(undetermined))


# ---------------------------------------------------------------------------
# chi arrays
# ---------------------------------------------------------------------------

ASSUMPTIONS = ("symmetry", "top_row", "first_column", "second_column")


@dataclass
class ChiFit:
    g: int
    status: str  # solved, partial, inconsistent
    chi: object = None
    missing: list[tuple[int, int]] = field(default_factory=list)
    non_integral: list[tuple[int, int]] = field(default_factory=list)
    equations: int = 0
    rank: int = 0
    surplus: int = 0
    data_range: tuple[int, int] | None = None
    assumptions: tuple[str, ...] = ()
    conflict: tuple[int, int] | None = None

    @property
    def ok(self) -> bool:
        return self.status == "solved"

    def to_json(self) -> dict:
        return {
            "kind": "chi",
            "g": self.g,
            "status": self.status,
            "chi": None if self.chi is None else self.chi.to_json(),
            "missing": [list(c) for c in self.missing],
            "non_integral": [list(c) for c in self.non_integral],
            "source": {
                "equations": self.equations,
                "rank": self.rank,
                "surplus_checks": self.surplus,
                "data_n_range": self.data_range,
                "assumptions": list(self.assumptions),
            },
            "conflict": None if self.conflict is None else list(self.conflict),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def fit_chi(g: int, data: Mapping[tuple[int, int], int], assume: Sequence[str] = (),
            known: Mapping[tuple[int, int], int] | None = None) -> ChiFit:
    """Solve the linear system ``contract(chi, weights(n, k)) = C(g) S(n, k)``.

    ``assume`` may add structural relations from :data:`ASSUMPTIONS`; the
    default assumes nothing. ``known`` pins individual cells.
    """
    from math import comb

    from genuscount.genusforms import (
        ChiArray,
        chi_constant,
        chi_last_line,
        chi_term,
        second_column_profile,
        second_column_scale,
    )

    for a in assume:
        if a not in ASSUMPTIONS:
            raise ValueError(f"unknown assumption {a!r}, expected one of {ASSUMPTIONS}")
    top = 4 * (g - 1)
    cells = [(t, s) for t in range(top + 1) for s in range(t + 1)]
    index = {c: i for i, c in enumerate(cells)}
    nv = len(cells)
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    keys: list[tuple[int, int]] = []
    Cg = chi_constant(g)
    for (n, k), v in sorted(data.items()):
        row = [Fraction(0)] * nv
        for (t, s), i in index.items():
            row[i] = chi_term(n, k, g, t, s)
        rows.append(row)
        rhs.append(Fraction(Cg * v))
        keys.append((n, k))

    def pin(cell, value):
        row = [Fraction(0)] * nv
        row[index[cell]] = Fraction(1)
        rows.append(row)
        rhs.append(Fraction(value))
        keys.append(("pin",) + cell)

    for cell, v in (known or {}).items():
        pin(cell, v)
    if "symmetry" in assume:
        for t, s in cells:
            m = (top + s - t, s)
            if m != (t, s) and index[m] > index[(t, s)]:
                row = [Fraction(0)] * nv
                row[index[(t, s)]] = Fraction(1)
                row[index[m]] = Fraction(-1)
                rows.append(row)
                rhs.append(Fraction(0))
                keys.append(("sym", t, s))
    if "top_row" in assume:
        for s, v in enumerate(chi_last_line(g)):
            pin((top, s), v)
    if "first_column" in assume:
        for t in range(top + 1):
            pin((t, 0), (-1) ** t * comb(top, t))
    if "second_column" in assume and g >= 2:
        d = second_column_scale(g)
        for t, p in enumerate(second_column_profile(g), start=1):
            pin((t, 1), d * p)

    ns = [n for n, _ in data]
    rng = (min(ns), max(ns)) if ns else None
    sol = solve_exact(rows, rhs, nv)
    if not sol.consistent:
        bad = keys[sol.conflict_row]
        return ChiFit(g, "inconsistent", equations=len(rows), rank=sol.rank, data_range=rng,
                      assumptions=tuple(assume), conflict=bad if bad[0] != "pin" else bad[1:])
    values = {cells[i]: v for i, v in sol.values.items()}
    non_integral = sorted(c for c, v in values.items() if v.denominator != 1)
    ints = {c: int(v) for c, v in values.items() if v.denominator == 1}
    chi = ChiArray.from_partial(g, []).with_entries(ints)
    missing = sorted(cells[i] for i in sol.undetermined)
    status = "solved" if not missing and not non_integral else "partial"
    return ChiFit(g, status, chi, missing, non_integral, len(rows), sol.rank,
                  max(0, len(rows) - sol.rank), rng, tuple(assume))
