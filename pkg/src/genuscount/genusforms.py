"""Closed forms and conjectures for genus-refined partition counts.

Every public evaluator returns a :class:`FormulaResult` tagging the value as
``exact`` (proved), ``conjectured`` (fits all known data, unproved) or
``unavailable`` (not determined by the known formulas).
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Any, Callable

from genuscount.classic import binom, catalan, stirling1
from genuscount.core import PartitionType


class Status(str, enum.Enum):
    EXACT = "exact"
    CONJECTURED = "conjectured"
    UNAVAILABLE = "unavailable"

    def __str__(self) -> str:
        return self.value


_RANK = {Status.EXACT: 0, Status.CONJECTURED: 1, Status.UNAVAILABLE: 2}


def weakest(*statuses: Status) -> Status:
    return max(statuses, key=_RANK.__getitem__)


@dataclass(frozen=True)
class FormulaResult:
    value: int | None
    status: Status
    note: str = ""

    @classmethod
    def exact(cls, value, note=""):
        return cls(_as_int(value), Status.EXACT, note)

    @classmethod
    def conjectured(cls, value, note=""):
        return cls(_as_int(value), Status.CONJECTURED, note)

    @classmethod
    def unavailable(cls, note=""):
        return cls(None, Status.UNAVAILABLE, note)

    @property
    def available(self) -> bool:
        return self.status is not Status.UNAVAILABLE

    def __str__(self) -> str:
        if not self.available:
            return f"unavailable{f' ({self.note})' if self.note else ''}"
        return f"{self.value} ({self.status})"


def _as_int(v) -> int:
    v = Fraction(v)
    if v.denominator != 1:
        raise ArithmeticError(f"formula produced a non-integer value {v}")
    return int(v)


# ---------------------------------------------------------------------------
# chi arrays and the *_p contraction
# ---------------------------------------------------------------------------

UNKNOWN = None

_CHI_ROWS: dict[int, list[list[int | None]]] = {
    1: [[1]],
    2: [
        [1],
        [-4, 10],
        [6, -10, -15],
        [-4, -10, 39, -4],
        [1, 10, -15, -4, 8],
    ],
    3: [
        [1],
        [-8, 68],
        [28, -340, 246],
        [-56, 612, 294, -980],
        [70, -340, -3390, 4480, 245],
        [-56, -340, 5700, -3500, -5530, 1464],
        [28, 612, -3390, -3500, 11020, -1824, -1208],
        [-8, -340, 294, 4480, -5530, -1824, 2944, -16],
        [1, 68, 246, -980, 245, 1464, -1208, -16, 180],
    ],
    # genus 4 as printed, last row completed separately
    4: [
        [1],
        [-12, 318],
        [66, -2862, 6831],
        [-220, 11130, -33651, 6072],
        [495, -23850, 30123, 156660, -99693],
        [-792, 28620],
        [924, -13356],
        [-792, -13356],
        [495, 28620],
        [-220, -23850],
        [66, 11130, 30123],
        [-12, -2862, -33651, 156660],
        [1, 318, 6831, 6072, -99693],
    ],
}


@dataclass(frozen=True)
class ChiArray:
    """Lower-triangular integer array ``chi(t, s)``, ``0 <= s <= t <= 4(g-1)``.

    Unknown entries are ``None``. ``fitted`` records cells that were filled
    from data rather than taken from a published array.
    """

    g: int
    rows: tuple[tuple[int | None, ...], ...]
    fitted: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.g < 1:
            raise ValueError("chi arrays exist for g >= 1")
        size = 4 * self.g - 3
        if len(self.rows) != size or any(len(r) != t + 1 for t, r in enumerate(self.rows)):
            raise ValueError(f"genus {self.g} needs a triangular array with {size} rows")

    @classmethod
    def from_partial(cls, g: int, rows, fitted=frozenset()) -> "ChiArray":
        size = 4 * g - 3
        full = []
        for t in range(size):
            given = list(rows[t]) if t < len(rows) else []
            full.append(tuple(given + [UNKNOWN] * (t + 1 - len(given))))
        return cls(g, tuple(full), frozenset(fitted))

    @property
    def size(self) -> int:
        return len(self.rows)

    @property
    def top(self) -> int:
        """Largest row index, ``4(g-1)``."""
        return self.size - 1

    def entry(self, t: int, s: int) -> int | None:
        if not 0 <= s <= t <= self.top:
            raise IndexError(f"chi({t},{s}) outside the genus-{self.g} array")
        return self.rows[t][s]

    def __getitem__(self, ts):
        return self.entry(*ts)

    def row(self, t: int) -> tuple[int | None, ...]:
        return self.rows[t]

    def cells(self):
        return [(t, s) for t in range(self.size) for s in range(t + 1)]

    def unknown_cells(self) -> list[tuple[int, int]]:
        return [(t, s) for t, s in self.cells() if self.rows[t][s] is UNKNOWN]

    def is_complete(self) -> bool:
        return not self.unknown_cells()

    def with_entries(self, values: dict[tuple[int, int], int], fitted: bool = True) -> "ChiArray":
        rows = [list(r) for r in self.rows]
        for (t, s), v in values.items():
            old = rows[t][s]
            if old is not UNKNOWN and old != v:
                raise ValueError(f"chi({t},{s}) already {old}, refusing to overwrite with {v}")
            rows[t][s] = v
        marks = set(self.fitted)
        if fitted:
            marks.update(k for k in values if self.rows[k[0]][k[1]] is UNKNOWN)
        return ChiArray(self.g, tuple(tuple(r) for r in rows), frozenset(marks))

    def fill_by_symmetry(self) -> "ChiArray":
        """Complete unknown cells from their column mirror ``chi(t, s) = chi(top + s - t, s)``."""
        values = {}
        for t, s in self.unknown_cells():
            mirror = self.rows[self.top + s - t][s]
            if mirror is not UNKNOWN:
                values[(t, s)] = mirror
        return self.with_entries(values)

    def polynomial(self) -> dict[tuple[int, int], int]:
        """Known coefficients of ``p(x, y) = sum chi(t,s) x^t y^s`` keyed ``(t, s)``."""
        return {(t, s): v for t, r in enumerate(self.rows) for s, v in enumerate(r) if v is not UNKNOWN}

    def to_json(self) -> dict:
        return {
            "g": self.g,
            "rows": [["UNKNOWN" if v is UNKNOWN else v for v in r] for r in self.rows],
            "fitted": sorted([list(c) for c in self.fitted]),
        }

    @classmethod
    def from_json(cls, d: dict) -> "ChiArray":
        rows = tuple(tuple(UNKNOWN if v == "UNKNOWN" else int(v) for v in r) for r in d["rows"])
        return cls(int(d["g"]), rows, frozenset(tuple(c) for c in d.get("fitted", [])))

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def _entry(x: Any, t: int, s: int):
    if isinstance(x, ChiArray):
        return x.entry(t, s)
    if callable(x):
        return x(t, s)
    if isinstance(x, dict):
        return x[(t, s)]
    return x[t][s]


def contract(a, b, p: int):
    """``sum_{0 <= s <= t <= p} a[t,s] * b[t,s]``.

    ``a`` and ``b`` may be :class:`ChiArray`, ``{(t, s): v}`` mappings,
    row lists ``x[t][s]`` or callables ``x(t, s)``.
    """
    total = 0
    for t in range(p + 1):
        for s in range(t + 1):
            try:
                av, bv = _entry(a, t, s), _entry(b, t, s)
            except (IndexError, KeyError) as exc:
                raise ValueError(f"index ({t},{s}) missing for contraction up to {p}") from exc
            if av is UNKNOWN or bv is UNKNOWN:
                raise ValueError(f"entry ({t},{s}) is unknown")
            total += av * bv
    return total


def chi_constant(g: int) -> int:
    """Normalisation ``C(g) = 12 (2g-1) (6g-5)! / (3g-3)!``."""
    return 12 * (2 * g - 1) * factorial(6 * g - 5) // factorial(3 * g - 3)


def chi_constant_alt(g: int) -> Fraction:
    """Same constant written with double factorials."""
    from genuscount.classic import double_factorial

    return Fraction(3 * 2 ** (2 * g - 1) * factorial(2 * g) * double_factorial(6 * g - 5), factorial(g) * double_factorial(2 * g - 3))


def second_column_scale(g: int) -> int:
    """``d(g) = (4^(g+1) - 1 - 3 (6g - 1)) / 3``."""
    return (4 ** (g + 1) - 1 - 3 * (6 * g - 1)) // 3


def second_column_profile(g: int) -> list[int]:
    """Coefficients of ``(1 + x)(1 - x)^(4g-6)``: the shape of chi(t, 1), t = 1..4(g-1)."""
    if g < 2:
        raise ValueError("second column exists for g >= 2")
    m = 4 * g - 6
    base = [(-1) ** j * comb(m, j) for j in range(m + 1)] + [0]
    return [base[j] + (base[j - 1] if j else 0) for j in range(m + 2)]


def numerator_linear_coefficient(g: int) -> Fraction:
    """Conjectured first non-trivial coefficient of the genus-g Bell numerator."""
    return Fraction((second_column_scale(g) + 8 * g + 2) * factorial(6 * g - 2), chi_constant(g) * factorial(3 * g - 1)) - 2 * (6 * g - 1)


def chi_last_line(g: int) -> list[int]:
    """Conjectured top row ``chi(4(g-1), s)`` from signed Stirling numbers of the first kind.

    It is the polynomial part in ``y`` of
    ``(1-y)^(4g+1) y^(-2g-3) sum_j 2 s(2g+2+j, j+1) / ((2g+j+2)(2g+j+1)) y^(-j)``
    multiplied by ``(1-y)^(2(g-1))``.
    """
    if g < 1:
        raise ValueError("g must be positive")
    inner = {}
    for j in range(2 * g - 1):
        inner[-j] = Fraction(2 * stirling1(2 * g + 2 + j, j + 1), (2 * g + j + 2) * (2 * g + j + 1))
    m = 4 * g + 1
    shift = -2 * g - 3
    poly: dict[int, Fraction] = {}
    for i in range(m + 1):
        bi = (-1) ** i * comb(m, i)
        for e, c in inner.items():
            deg = i + shift + e
            if deg >= 0:
                poly[deg] = poly.get(deg, 0) + bi * c
    top = max(poly) if poly else 0
    head = [poly.get(d, Fraction(0)) for d in range(top + 1)]
    m2 = 2 * (g - 1)
    out = [Fraction(0)] * (len(head) + m2)
    for i in range(m2 + 1):
        bi = (-1) ** i * comb(m2, i)
        for d, c in enumerate(head):
            out[i + d] += bi * c
    width = 4 * g - 3
    out = (out + [Fraction(0)] * width)[:width]
    return [_as_int(v) for v in out]


@lru_cache(maxsize=None)
def chi_array(g: int, fill_symmetric: bool = False) -> ChiArray:
    """Published chi arrays; genus 4 has its top row completed from :func:`chi_last_line`.

    For ``g >= 5`` only the conjectured top row is filled.
    """
    if g < 1:
        raise ValueError("chi arrays exist for g >= 1")
    if g in _CHI_ROWS:
        arr = ChiArray.from_partial(g, _CHI_ROWS[g])
    else:
        arr = ChiArray.from_partial(g, [])
    if not arr.is_complete():
        top = arr.top
        values = {(top, s): v for s, v in enumerate(chi_last_line(g)) if arr.rows[top][s] is UNKNOWN}
        arr = arr.with_entries(values, fitted=False)
    if fill_symmetric:
        arr = arr.fill_by_symmetry()
    return arr


@dataclass
class ChiReport:
    g: int
    checks: list[tuple[str, bool, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def failures(self):
        return [c for c in self.checks if not c[1]]

    def add(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks.append((name, ok, detail))


def chi_structure_checks(x: ChiArray) -> ChiReport:
    """Verify the structural regularities of a chi array on its known entries."""
    rep = ChiReport(x.g)
    top = x.top
    bad = []
    for t, s in x.cells():
        a, b = x.rows[t][s], x.rows[top + s - t][s]
        if a is not UNKNOWN and b is not UNKNOWN and a != b:
            bad.append((t, s))
    rep.add("column symmetry", not bad, f"asymmetric cells {bad}" if bad else "")

    bad = [t for t in range(x.size) if x.rows[t][0] not in (UNKNOWN, (-1) ** t * comb(top, t))]
    rep.add("first column signed binomials", not bad, f"rows {bad}" if bad else "")

    if x.g >= 2:
        d = second_column_scale(x.g)
        prof = second_column_profile(x.g)
        bad = [t for t in range(1, x.size) if x.rows[t][1] not in (UNKNOWN, d * prof[t - 1])]
        rep.add("second column d(g) profile", not bad, f"rows {bad}" if bad else "")

    bad = []
    for t in range(x.size - (x.g - 1), x.size):
        r = x.rows[t]
        if UNKNOWN not in r and sum(r) != 0:
            bad.append(t)
    rep.add("vanishing sums of last g-1 rows", not bad, f"rows {bad}" if bad else "")

    expected = chi_last_line(x.g)
    bad = [s for s, v in enumerate(x.rows[top]) if v is not UNKNOWN and v != expected[s]]
    rep.add("top row from Stirling numbers", not bad, f"columns {bad}" if bad else "")
    return rep


def chi_term(n: int, k: int, g: int, t: int, s: int) -> Fraction:
    """Gamma-ratio weight of ``chi(t, s)`` in the genus-g Stirling formula.

    ``Gamma(n-t+g-2) Gamma(n-t+4g-3) / (Gamma(k-s-1) Gamma(k-s+3g-2)
    Gamma(n-k+s-t-2g+1) Gamma(n-k+s-t+g))``, with ``1/Gamma(m) = 0`` for
    ``m <= 0``.
    """
    dens = (k - s - 1, k - s + 3 * g - 2, n - k + s - t - 2 * g + 1, n - k + s - t + g)
    if min(dens) <= 0:
        return Fraction(0)
    nums = (n - t + g - 2, n - t + 4 * g - 3)
    if min(nums) <= 0:
        raise ArithmeticError(f"pole in numerator at n={n}, k={k}, t={t}, s={s}")
    num = factorial(nums[0] - 1) * factorial(nums[1] - 1)
    den = 1
    for d in dens:
        den *= factorial(d - 1)
    return Fraction(num, den)


def chi_term_binomial(n: int, k: int, g: int, t: int, s: int) -> int:
    """The same weight in binomial form, ``(3g-1)! C(.) C(.) C(.)``."""
    a = n - k + s - t
    return (
        factorial(3 * g - 1)
        * binom(a + g - 1, a - 2 * g)
        * binom(n - t + g - 3, k - s - 2)
        * binom(n - t + 4 * g - 4, a + g - 1)
    )


def stirling_from_chi(n: int, k: int, g: int, chi: ChiArray) -> Fraction | None:
    """``contract(chi, weights) / C(g)``; ``None`` if a needed entry is unknown."""
    total = Fraction(0)
    for t in range(chi.size):
        for s in range(t + 1):
            w = chi_term(n, k, g, t, s)
            if not w:
                continue
            c = chi.rows[t][s]
            if c is UNKNOWN:
                return None
            total += c * w
    return total / chi_constant(g)


# ---------------------------------------------------------------------------
# genus-dependent Bell numbers
# ---------------------------------------------------------------------------

_BELL4 = {10: 1, 11: 352, 12: 19261, 13: 541541, 14: 10571561, 15: 162718556}


def bell_genus(n: int, g: int) -> FormulaResult:
    """Number of partitions of {1..n} of genus ``g``."""
    if n < 0 or g < 0:
        raise ValueError("n and g must be non-negative")
    if g == 0:
        return FormulaResult.exact(catalan(n))
    if n < 2 * g + 2:
        return FormulaResult.exact(0)
    if n == 2 * g + 2:
        return FormulaResult.exact(1, "only the two-block partition reaches this genus")
    ratio = Fraction(factorial(2 * n), factorial(n))
    if g == 1:
        return FormulaResult.exact(Fraction(1, 48) / ((2 * n - 3) * (2 * n - 1) * factorial(n - 4)) * ratio)
    if g == 2:
        poly = 5 * n**3 - 39 * n**2 + 88 * n - 84
        den = 2**9 * 3**2 * 5 * (2 * n - 7) * (2 * n - 5) * (2 * n - 3) * (2 * n - 1) * factorial(n - 6)
        return FormulaResult.exact(Fraction(poly, den) * ratio)
    if g == 3:
        poly = 35 * n**6 - 819 * n**5 + 7589 * n**4 - 36009 * n**3 + 93464 * n**2 - 129060 * n + 95040
        den = 2**13 * 3**4 * 5 * 7 * factorial(n - 8)
        for j in (11, 9, 7, 5, 3, 1):
            den *= 2 * n - j
        return FormulaResult.conjectured(Fraction(poly, den) * ratio)
    if g == 4 and n in _BELL4:
        return FormulaResult.conjectured(_BELL4[n], "tabulated values")
    return FormulaResult.unavailable(f"B^({g})_{n} is not determined by known data")


def assoc_bell_genus(n: int, g: int) -> FormulaResult:
    """Genus-g partitions of {1..n} with no singleton block.

    Peels singletons off ``bell_genus``: B^(g)_n = sum_s C(n, s) Bhat^(g)_(n-s).
    """
    if n < 0 or g < 0:
        raise ValueError("n and g must be non-negative")
    status = Status.EXACT
    hat: list[int] = []
    for m in range(n + 1):
        r = bell_genus(m, g)
        if not r.available:
            return FormulaResult.unavailable(f"needs B^({g})_{m}")
        status = weakest(status, r.status)
        hat.append(r.value - sum(comb(m, s) * hat[m - s] for s in range(1, m + 1)))
    return FormulaResult(hat[n], status)


def assoc_bell_genus0_direct(n: int) -> int:
    """Riordan numbers by their alternating binomial sum."""
    return sum((-1) ** j * comb(n, j) * comb(j, j // 2) for j in range(n + 1))


def assoc_bell_genus1_direct(n: int) -> int:
    """Genus-1, singleton-free partitions by the direct double-factorial sum."""
    from genuscount.classic import double_factorial

    if n < 4:
        return 0
    total = Fraction(0)
    for l in range(n - 3):
        total += Fraction(
            (-1) ** (n - l) * Fraction(3) ** (l - 2) * double_factorial(2 * l + 3) * double_factorial(2 * n - 2 * l - 5),
            2 ** (n - 4) * factorial(l) * factorial(n - 4 - l),
        )
    return _as_int(total)


# ---------------------------------------------------------------------------
# genus-dependent Stirling numbers
# ---------------------------------------------------------------------------


def stirling_k2(n: int, g: int) -> int:
    """Two-block partitions of genus g: ``C(n, 2g+2)``."""
    return binom(n, 2 * g + 2)


def stirling_k3_conjecture(n: int, g: int) -> FormulaResult:
    """Three-block partitions of genus g; proved for g <= 1, conjectured beyond."""
    if n < 3 or g < 0:
        raise ValueError("need n >= 3 and g >= 0")
    v = Fraction(4 ** (g + 1) - 1, 3) * Fraction(n - g - 1, g + 2) * binom(n, 2 * g + 3)
    return FormulaResult.exact(v) if g <= 1 else FormulaResult.conjectured(v)


def narayana(n: int, k: int) -> int:
    if n < 1 or k < 1 or k > n:
        return 0
    return comb(n, k) * comb(n, k - 1) // n


def stirling_genus1(n: int, k: int) -> int:
    return _as_int(Fraction(binom(k, 2) * binom(n, k) * binom(n - 2, k), 6))


def _gamma_ch(n: int, k: int) -> Fraction:
    if n < 0 and n + 5 < 0:
        return Fraction(0)
    return Fraction(binom(n + 10, 5) * binom(n + 5, k) * binom(n + 5, n - k), comb(10, 5))


_CH2_TERMS = [
    (8, 10, 6), (-4, 10, 5), (-15, 10, 4), (10, 10, 3), (1, 10, 2),
    (-4, 9, 5), (39, 9, 4), (-10, 9, 3), (-4, 9, 2),
    (-15, 8, 4), (-10, 8, 3), (6, 8, 2),
    (-4, 7, 2), (10, 7, 3), (1, 6, 2),
]


def stirling_genus2_ch(n: int, k: int) -> int:
    """Genus-2 Stirling numbers as the fifteen-term combination of gamma[n, k] values."""
    total = sum(c * _gamma_ch(n - dn, k - dk) for c, dn, dk in _CH2_TERMS)
    return _as_int(total)


def stirling_genus(n: int, k: int, g: int) -> FormulaResult:
    """Number of genus-g partitions of {1..n} into k blocks."""
    if n < 1 or k < 0 or g < 0:
        raise ValueError("need n >= 1, k >= 0, g >= 0")
    if k == 0 or k > n:
        return FormulaResult.exact(0)
    if g == 0:
        return FormulaResult.exact(narayana(n, k))
    if k < 2 or n < 2 * g + k:
        return FormulaResult.exact(0)
    if k == 2:
        return FormulaResult.exact(stirling_k2(n, g))
    if g == 1:
        return FormulaResult.exact(stirling_genus1(n, k))
    if g > 4 and g not in _CHI_ROWS:
        return FormulaResult.unavailable(f"no chi array for genus {g}")
    v = stirling_from_chi(n, k, g, chi_array(g))
    if v is None:
        return FormulaResult.unavailable(f"needs unknown chi^({g}) entries")
    return FormulaResult.exact(v) if g == 2 else FormulaResult.conjectured(v)


def assoc_stirling_genus(n: int, k: int, g: int) -> FormulaResult:
    """Genus-g partitions of {1..n} into k blocks, none a singleton (g = 0, 1)."""
    if n < 0 or k < 0:
        raise ValueError("need n, k >= 0")
    if g == 0:
        if n == 0:
            return FormulaResult.exact(1 if k == 0 else 0)
        if k == 0 or n < 2 * k:
            return FormulaResult.exact(0)
        return FormulaResult.exact(Fraction(binom(n - k - 1, n - 2 * k) * comb(n, k), n - k + 1))
    if g == 1:
        return FormulaResult.exact(Fraction(binom(k, 2) * binom(n, k) * binom(n - k, k), 6))
    return FormulaResult.unavailable("closed form known only for g <= 1")


# ---------------------------------------------------------------------------
# Faa di Bruno refinements
# ---------------------------------------------------------------------------


def kreweras(n: int, t: PartitionType) -> int:
    """Non-crossing partitions of {1..n} with block-size profile ``t``."""
    if t.n != n:
        raise ValueError(f"type {t} is not a partition of {n}")
    den = factorial(n + 1 - t.length)
    for m in t.multiplicities.values():
        den *= factorial(m)
    return factorial(n) // den


def two_part_unhalved(n: int, p: int, g: int) -> Fraction:
    return Fraction(n, g + 1) * binom(p - 1, g) * binom(n - p - 1, g)


def two_part(n: int, p: int, g: int) -> int:
    """Genus-g partitions of type ``[p, n-p]``."""
    if not 1 <= p <= n - 1:
        raise ValueError(f"need 1 <= p <= n-1, got p={p}, n={n}")
    if g < 0 or g > min(p - 1, n - p - 1):
        return 0
    v = two_part_unhalved(n, p, g)
    if n == 2 * p:
        v /= 2
    return _as_int(v)


def two_part_alt(n: int, p: int, g: int) -> int:
    """Equivalent form ``(n/p) C(p, p-1-g) C(n-p-1, g)``."""
    if g < 0:
        return 0
    v = Fraction(n, p) * binom(p, p - 1 - g) * binom(n - p - 1, g)
    if n == 2 * p:
        v /= 2
    return _as_int(v)


@lru_cache(maxsize=None)
def transfer_trace(n: int) -> dict[tuple[int, int], int]:
    """``tr M^n`` as ``{(z_degree, u_degree): coefficient}``.

    Uses ``t_n = t_1 t_(n-1) + z (1 - u) t_(n-2)`` with ``t_0 = 2``,
    ``t_1 = 1 + z u``.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return {(0, 0): 2}
    if n == 1:
        return {(0, 0): 1, (1, 1): 1}
    out: dict[tuple[int, int], int] = {}
    for (a, b), c in transfer_trace(n - 1).items():
        out[(a, b)] = out.get((a, b), 0) + c
        out[(a + 1, b + 1)] = out.get((a + 1, b + 1), 0) + c
    for (a, b), c in transfer_trace(n - 2).items():
        out[(a + 1, b)] = out.get((a + 1, b), 0) + c
        out[(a + 1, b + 1)] = out.get((a + 1, b + 1), 0) - c
    return {k: v for k, v in sorted(out.items()) if v}


def two_part_transfer(n: int, p: int, g: int) -> int:
    """Two-block counts read off the transfer-matrix trace (independent of :func:`two_part`)."""
    if not 1 <= p <= n - 1:
        raise ValueError(f"need 1 <= p <= n-1, got p={p}, n={n}")
    e = p - 1 - g
    if e < 0 or g < 0:
        return 0
    c = transfer_trace(n).get((p, e), 0)
    if n == 2 * p:
        if c % 2:
            raise ArithmeticError("odd coefficient at n = 2p")
        c //= 2
    return c


def two_part_gf(g: int, N: int):
    """Expansion of ``x^(2g+2) (2 - x(v + 1/v)) / (2 (1-xv)^(g+2) (1-x/v)^(g+2))``.

    Returns a :class:`~genuscount.series.BiSeries` in ``x`` whose
    coefficients are Laurent polynomials in ``v``. Its coefficient at
    ``x^n v^(2p-n)`` is half the unhalved two-block count, so
    :func:`two_part_from_gf` adds the mirror ``v^(n-2p)`` to recover
    :func:`two_part`.
    """
    from genuscount.series import BiSeries, Poly

    v = Poly.var(0)
    vinv = Poly.var(0, -1)
    one = Poly.const(1)
    num = BiSeries([one * 2, -(v + vinv)], N)
    a = BiSeries([one, -v], N) ** Fraction(-(g + 2))
    b = BiSeries([one, -vinv], N) ** Fraction(-(g + 2))
    return ((num * a * b).shift(2 * g + 2) * Fraction(1, 2)).truncate(N)


def two_part_from_gf(series, n: int, p: int) -> Fraction:
    coeff = series[n]
    c = coeff.coeff((2 * p - n,))
    return c if n == 2 * p else c + coeff.coeff((n - 2 * p,))


def three_part(n: int, p: int, q: int, g: int) -> FormulaResult:
    """Genus-0 and genus-1 counts of type ``[p, q, n-p-q]``."""
    r = n - p - q
    if p < 1 or q < 1 or r < 1:
        raise ValueError(f"need three positive parts, got {p}, {q}, {r}")
    if g == 0:
        v = Fraction(n * (n - 1))
    elif g == 1:
        v = Fraction(n, 2) * (
            -5 * (n - 1) ** 2 + 3 * (p * p + q * q + r * r - 1) + 6 * p * q * r + (r + p) * (r + q) * (p + q)
        )
    else:
        return FormulaResult.unavailable("three-block formulas known for g <= 1")
    distinct = len({p, q, r})
    if distinct == 1:
        v /= 6
    elif distinct == 2:
        v /= 2
    return FormulaResult.exact(v)


def _pentagonal_pyramidal(p) -> Fraction:
    return Fraction(p * (p - 1) ** 2, 2)


_PK1: dict[int, Callable[[Fraction], Fraction]] = {
    2: lambda p: Fraction(1),
    3: lambda p: 7 * p - 4,
    4: lambda p: 34 * p**2 - 38 * p + 10,
    5: lambda p: Fraction(5, 6) * (169 * p**3 - 279 * p**2 + 146 * p - 24),
    6: lambda p: 533 * p**4 - 1160 * p**3 + Fraction(1813, 2) * p**2 - Fraction(599, 2) * p + 35,
    7: lambda p: Fraction(7, 120) * (32621 * p**5 - 87970 * p**4 + 91335 * p**3 - 45410 * p**2 + 10744 * p - 960),
}


def pk_genus1(p: int, k: int) -> FormulaResult:
    """Genus-1 partitions of type ``[p^k]``; proved for k <= 3."""
    if p < 2 or k not in _PK1:
        return FormulaResult.unavailable(f"no formula for p={p}, k={k}")
    v = _pentagonal_pyramidal(p) * _PK1[k](Fraction(p))
    return FormulaResult.exact(v) if k <= 3 else FormulaResult.conjectured(v)


_PK2: dict[int, Callable[[Fraction], Fraction]] = {
    3: lambda p: Fraction(1, 8) * p * (p - 1) ** 2 * (p - 2) * (27 - 55 * p + 26 * p**2),
    4: lambda p: Fraction(1, 6) * p * (p - 1) ** 2 * (287 - 1248 * p + 1908 * p**2 - 1218 * p**3 + 274 * p**4),
    5: lambda p: Fraction(1, 144)
    * p
    * (p - 1) ** 2
    * (-30576 + 194318 * p - 467213 * p**2 + 532986 * p**3 - 288895 * p**4 + 59500 * p**5),
}


def pk_genus2(p: int, k: int) -> FormulaResult:
    """Genus-2 partitions of type ``[p^k]``, k in 3..5 (all conjectured)."""
    if p < 2 or k not in _PK2:
        return FormulaResult.unavailable(f"no formula for p={p}, k={k}")
    return FormulaResult.conjectured(_PK2[k](Fraction(p)))


def p_squared(p: int, g: int) -> int:
    """Genus-g partitions of type ``[p^2]``: ``C(p-1, g) C(p, g+1)``."""
    if p < 1 or g < 0:
        return 0
    return binom(p - 1, g) * binom(p, g + 1)
