"""Truncated power series in ``x`` over exact coefficient rings.

Coefficients are either :class:`fractions.Fraction` or :class:`Poly`, a
sparse multivariate Laurent polynomial. The same :class:`Series` class
serves as the univariate ``RationalSeries``, the bivariate ``BiSeries``
(coefficients are polynomials in ``y``) and the kappa-graded
``KappaSeries`` (coefficients are polynomials in ``kappa_1..kappa_L``).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

Monomial = tuple[int, ...]


class Poly:
    """Sparse Laurent polynomial, monomials keyed by exponent tuples."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, object] | None = None):
        clean: dict[Monomial, Fraction] = {}
        for mono, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                key = _trim(tuple(mono))
                clean[key] = clean.get(key, Fraction(0)) + c
        self.terms = {k: v for k, v in clean.items() if v}

    @classmethod
    def const(cls, c) -> "Poly":
        return cls({(): c})

    @classmethod
    def var(cls, i: int, power: int = 1, coeff=1) -> "Poly":
        mono = [0] * (i + 1)
        mono[i] = power
        return cls({tuple(mono): coeff})

    def coeff(self, mono: Iterable[int]) -> Fraction:
        return self.terms.get(_trim(tuple(mono)), Fraction(0))

    def is_zero(self) -> bool:
        return not self.terms

    def is_const(self) -> bool:
        return not self.terms or set(self.terms) == {()}

    def const_value(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def nvars(self) -> int:
        return max((len(m) for m in self.terms), default=0)

    def __add__(self, other):
        other = _lift(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_lift(other))

    def __rsub__(self, other):
        return _lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            other = Fraction(other)
            return Poly({m: c * other for m, c in self.terms.items()})
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _add_mono(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return Poly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Poly):
            if not other.is_const() or other.is_zero():
                raise ZeroDivisionError("can only divide a Poly by a nonzero constant")
            other = other.const_value()
        return self * (1 / Fraction(other))

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == Poly.const(other).terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def evaluate(self, values: Iterable) -> Fraction:
        vals = [Fraction(v) for v in values]
        total = Fraction(0)
        for m, c in self.terms.items():
            term = c
            for e, v in zip(m, vals):
                term *= v**e
            if len(m) > len(vals):
                raise ValueError("not enough values to evaluate")
            total += term
        return total

    def specialize(self, i: int, value) -> "Poly":
        """Substitute variable ``i`` by a number."""
        value = Fraction(value)
        out: dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            e = m[i] if i < len(m) else 0
            rest = list(m) + [0] * max(0, i + 1 - len(m))
            rest[i] = 0
            key = _trim(tuple(rest))
            out[key] = out.get(key, 0) + c * value**e
        return Poly(out)

    def univariate(self, i: int = 0) -> dict[int, Fraction]:
        """``{degree: coeff}`` for a polynomial in variable ``i`` only."""
        out = {}
        for m, c in self.terms.items():
            if any(e for j, e in enumerate(m) if j != i):
                raise ValueError("polynomial involves other variables")
            out[m[i] if i < len(m) else 0] = c
        return dict(sorted(out.items()))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items()):
            mono = "*".join(f"z{i}^{e}" if e != 1 else f"z{i}" for i, e in enumerate(m) if e)
            parts.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(parts)

    __repr__ = __str__


def _trim(m: Monomial) -> Monomial:
    end = len(m)
    while end and m[end - 1] == 0:
        end -= 1
    return m[:end]


def _add_mono(a: Monomial, b: Monomial) -> Monomial:
    if len(a) < len(b):
        a, b = b, a
    return _trim(tuple(x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)))


def _lift(v) -> Poly:
    return v if isinstance(v, Poly) else Poly.const(v)


def _is_zero(c) -> bool:
    return c.is_zero() if isinstance(c, Poly) else c == 0


class Series:
    """Power series ``sum_{n <= N} c_n x^n`` known exactly modulo ``x^(N+1)``."""

    __slots__ = ("coeffs", "ring")

    def __init__(self, coeffs: Iterable, N: int, ring: str = "Q"):
        if N < 0:
            raise ValueError("truncation order must be non-negative")
        if ring not in ("Q", "poly"):
            raise ValueError(f"unknown coefficient ring {ring!r}")
        cast = Fraction if ring == "Q" else _lift
        c = [cast(v) for v in list(coeffs)[: N + 1]]
        zero = cast(0)
        c += [zero] * (N + 1 - len(c))
        self.coeffs = tuple(c)
        self.ring = ring

    @classmethod
    def from_coeffs(cls, coeffs, N: int) -> "Series":
        coeffs = list(coeffs)
        ring = "poly" if any(isinstance(c, Poly) for c in coeffs) else "Q"
        return cls(coeffs, N, ring)

    @classmethod
    def one(cls, N: int, ring: str = "Q") -> "Series":
        return cls([1], N, ring)

    @classmethod
    def x(cls, N: int, ring: str = "Q") -> "Series":
        return cls([0, 1], N, ring)

    @property
    def N(self) -> int:
        return len(self.coeffs) - 1

    def _zero(self):
        return Fraction(0) if self.ring == "Q" else Poly()

    def __getitem__(self, n: int):
        if n < 0:
            return self._zero()
        if n > self.N:
            raise IndexError(f"coefficient {n} beyond truncation order {self.N}")
        return self.coeffs[n]

    def __len__(self):
        return len(self.coeffs)

    def list(self) -> list:
        return list(self.coeffs)

    def valuation(self) -> int | None:
        for i, c in enumerate(self.coeffs):
            if not _is_zero(c):
                return i
        return None

    def truncate(self, N: int) -> "Series":
        return Series(self.coeffs, min(N, self.N), self.ring)

    def _coerce(self, other) -> "Series":
        if isinstance(other, Series):
            return other
        return Series([other], self.N, "poly" if isinstance(other, Poly) or self.ring == "poly" else "Q")

    def _ring_with(self, other: "Series") -> str:
        return "poly" if "poly" in (self.ring, other.ring) else "Q"

    def __add__(self, other):
        other = self._coerce(other)
        N = min(self.N, other.N)
        return Series((self.coeffs[i] + other.coeffs[i] for i in range(N + 1)), N, self._ring_with(other))

    __radd__ = __add__

    def __neg__(self):
        return Series((-c for c in self.coeffs), self.N, self.ring)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Series):
            ring = "poly" if isinstance(other, Poly) or self.ring == "poly" else "Q"
            return Series((c * other for c in self.coeffs), self.N, ring)
        N = min(self.N, other.N)
        a, b = self.coeffs, other.coeffs
        out = []
        for n in range(N + 1):
            acc = self._zero() if self._ring_with(other) == "Q" else Poly()
            for i in range(n + 1):
                if _is_zero(a[i]) or _is_zero(b[n - i]):
                    continue
                acc = acc + a[i] * b[n - i]
            out.append(acc)
        return Series(out, N, self._ring_with(other))

    __rmul__ = __mul__

    def _unit(self):
        c0 = self.coeffs[0]
        if isinstance(c0, Poly):
            if not c0.is_const() or c0.is_zero():
                raise ZeroDivisionError("constant term is not a unit")
            c0 = c0.const_value()
        if c0 == 0:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        return c0

    def inverse(self) -> "Series":
        c0 = self._unit()
        out = [self._zero() + Fraction(1) / c0]
        for n in range(1, self.N + 1):
            acc = self._zero()
            for j in range(1, n + 1):
                if not _is_zero(self.coeffs[j]):
                    acc = acc + self.coeffs[j] * out[n - j]
            out.append(-acc / c0)
        return Series(out, self.N, self.ring)

    def __truediv__(self, other):
        if isinstance(other, Series):
            return self * other.inverse()
        return self * (1 / Fraction(other))

    def __pow__(self, alpha) -> "Series":
        """Integer or rational power; non-integer powers need constant term 1."""
        alpha = Fraction(alpha)
        if alpha.denominator == 1 and alpha >= 0:
            result = Series.one(self.N, self.ring)
            base, e = self, int(alpha)
            while e:
                if e & 1:
                    result = result * base
                base = base * base
                e >>= 1
            return result
        c0 = self._unit()
        if alpha.denominator != 1 and c0 != 1:
            raise ValueError("rational powers need a constant term equal to 1")
        f = self / c0
        h = [self._zero() + 1]
        for n in range(1, self.N + 1):
            acc = self._zero()
            for j in range(1, n + 1):
                if not _is_zero(f.coeffs[j]):
                    acc = acc + f.coeffs[j] * h[n - j] * (alpha * j - (n - j))
            h.append(acc / n)
        out = Series(h, self.N, self.ring)
        if c0 != 1:
            out = out * (Fraction(c0) ** int(alpha))
        return out

    def shift(self, k: int) -> "Series":
        """Multiply by ``x^k``; negative ``k`` divides and needs valuation ``>= -k``."""
        if k >= 0:
            return Series([self._zero()] * k + list(self.coeffs), self.N + k, self.ring)
        v = self.valuation()
        if v is not None and v < -k:
            raise ValueError(f"cannot divide by x^{-k}: valuation is {v}")
        return Series(self.coeffs[-k:], self.N + k, self.ring)

    def derivative(self) -> "Series":
        return Series((self.coeffs[i] * i for i in range(1, self.N + 1)), max(self.N - 1, 0), self.ring)

    def compose(self, inner: "Series") -> "Series":
        """``self(inner(x))`` for ``inner`` of valuation at least 1 (Horner scheme)."""
        if not _is_zero(inner.coeffs[0]):
            raise ValueError("inner series must have zero constant term")
        N = min(self.N, inner.N)
        ring = self._ring_with(inner)
        acc = Series([self.coeffs[N]], N, ring)
        for i in range(N - 1, -1, -1):
            acc = acc * inner + Series([self.coeffs[i]], N, ring)
        return acc

    def map(self, fn) -> "Series":
        out = [fn(c) for c in self.coeffs]
        ring = "poly" if any(isinstance(c, Poly) for c in out) else "Q"
        return Series(out, self.N, ring)

    def specialize(self, i: int, value) -> "Series":
        """Substitute coefficient variable ``i``; returns a rational series if nothing is left."""
        out = self.map(lambda c: c.specialize(i, value) if isinstance(c, Poly) else c)
        if all(isinstance(c, Fraction) or c.is_const() for c in out.coeffs):
            return Series((c.const_value() if isinstance(c, Poly) else c for c in out.coeffs), self.N, "Q")
        return out

    def coeff(self, n: int, mono: Iterable[int] = ()) -> Fraction:
        c = self[n]
        return c.coeff(mono) if isinstance(c, Poly) else (c if not tuple(mono) else Fraction(0))

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        N = min(self.N, other.N)
        return all(_lift(self.coeffs[i]) == _lift(other.coeffs[i]) for i in range(N + 1))

    def __hash__(self):
        return hash((self.N, self.ring))

    def __repr__(self):
        shown = ", ".join(str(c) for c in self.coeffs[:8])
        return f"Series([{shown}{', ...' if self.N >= 8 else ''}], N={self.N})"


def RationalSeries(coeffs, N: int) -> Series:
    return Series(coeffs, N, "Q")


def BiSeries(coeffs, N: int) -> Series:
    """Series in ``x`` with polynomial coefficients in ``y`` (variable 0)."""
    return Series(coeffs, N, "poly")



def KappaSeries(coeffs, N: int) -> Series:
    """Series in ``x`` whose coefficients are polynomials in ``kappa_1, kappa_2, ...``.

    ``kappa_l`` is variable index ``l - 1``.
    """
    return Series(coeffs, N, "poly")


def kappa(l: int) -> Poly:
    return Poly.var(l - 1)


def kappa_monomial(parts) -> Monomial:
    """Exponent tuple of ``prod kappa_l`` over the parts of a type."""
    parts = list(getattr(parts, "parts", parts))
    mono = [0] * (max(parts) if parts else 0)
    for p in parts:
        mono[p - 1] += 1
    return tuple(mono)


def half_power(m: int, N: int, sign: int = -1) -> Series:
    """``(1 - 4x)^(sign * m / 2)`` by the generalised binomial series."""
    if m < 1 or m % 2 == 0:
        raise ValueError("m must be an odd positive integer")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    alpha = Fraction(sign * m, 2)
    out = [Fraction(1)]
    for n in range(1, N + 1):
        out.append(out[-1] * (alpha - n + 1) / n * -4)
    return Series(out, N, "Q")
