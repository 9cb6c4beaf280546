"""Bell, Stirling, Faa di Bruno and related classical counts, in exact integers."""

from __future__ import annotations

from functools import lru_cache
from math import comb, factorial, prod

from genuscount.core import PartitionType


def binom(n: int, k: int) -> int:
    """Binomial coefficient, zero outside ``0 <= k <= n`` (and for ``n < 0``)."""
    if n < 0 or k < 0 or k > n:
        return 0
    return comb(n, k)


def double_factorial(n: int) -> int:
    """``n!!`` with ``(-1)!! = 0!! = 1``."""
    if n < -1:
        raise ValueError(f"double factorial undefined for {n}")
    return prod(range(n, 0, -2)) if n > 0 else 1


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


@lru_cache(maxsize=None)
def bell(n: int) -> int:
    if n < 0:
        raise ValueError("n must be non-negative")
    if n <= 1:
        return 1
    m = n - 1
    return sum(comb(m, p) * bell(p) for p in range(m + 1))


@lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> int:
    """Stirling numbers of the second kind via the alternating binomial sum."""
    if n < 0 or k < 0:
        return 0
    if k > n:
        return 0
    total = sum((-1) ** (k - s) * comb(k, s) * s**n for s in range(k + 1))
    return total // factorial(k)


def faa_di_bruno(n: int, t: PartitionType) -> int:
    """Number of set partitions of {1..n} with block-size profile ``t``."""
    if t.n != n:
        raise ValueError(f"type {t} is not a partition of {n}")
    denom = 1
    for size, mult in t.multiplicities.items():
        denom *= factorial(mult) * factorial(size) ** mult
    return factorial(n) // denom


def integer_partitions(n: int, k: int | None = None, min_part: int = 1):
    """All partition types of ``n`` (optionally with exactly ``k`` parts), in table order."""
    out = []

    def rec(rest, lo, acc):
        if rest == 0:
            if k is None or len(acc) == k:
                out.append(PartitionType(tuple(acc)))
            return
        if k is not None and len(acc) >= k:
            return
        for part in range(lo, rest + 1):
            acc.append(part)
            rec(rest - part, part, acc)
            acc.pop()

    if n >= 1:
        rec(n, min_part, [])
    return sorted(out, key=PartitionType.sort_key)


@lru_cache(maxsize=None)
def assoc_bell(n: int) -> int:
    """Partitions of {1..n} without singletons (EGF ``exp(e^x - x - 1)``)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return 1
    return sum((-1) ** j * bell(n - 1 - j) for j in range(n - 1))


@lru_cache(maxsize=None)
def ward(n: int, k: int) -> int:
    """Associated Stirling numbers of the second kind (no singleton blocks)."""
    if n < 0 or k < 0:
        return 0
    return sum((-1) ** l * binom(n, l) * stirling2(n - l, k - l) for l in range(k + 1))


@lru_cache(maxsize=None)
def eulerian2(n: int, k: int) -> int:
    """Second-order Eulerian numbers; row n = 0, 1, 2, 3 reads 1 | 1 | 1, 2 | 1, 8, 6."""
    if n < 0 or k < 0:
        return 0
    if n == 0:
        return 1 if k == 0 else 0
    return (k + 1) * eulerian2(n - 1, k) + (2 * n - 1 - k) * eulerian2(n - 1, k - 1)


def eulerian2_from_stirling(n: int, k: int) -> int:
    """``sum_j (-1)^(k-j) C(2n+1, k-j) S(n+j, j)``; equals ``eulerian2(n, k - 1)`` for n >= 1."""
    if n < 0 or k < 0:
        return 0
    return sum((-1 if (k - j) % 2 else 1) * binom(2 * n + 1, k - j) * stirling2(n + j, j) for j in range(k + 1))


def ward_from_eulerian(n: int, k: int) -> int:
    """Associated Stirling numbers through second-order Eulerian numbers."""
    if n < 0 or k < 0 or n < k:
        return 0
    m = n - k
    return sum(binom(l, n - 2 * k) * eulerian2_from_stirling(m, m - l) for l in range(m + 1))


@lru_cache(maxsize=None)
def stirling1_unsigned(p: int, q: int) -> int:
    """Number of permutations of ``p`` elements with ``q`` cycles."""
    if p < 0 or q < 0:
        return 0
    if p == 0:
        return 1 if q == 0 else 0
    if q == 0:
        return 0
    return stirling1_unsigned(p - 1, q - 1) + (p - 1) * stirling1_unsigned(p - 1, q)


def stirling1(p: int, q: int) -> int:
    """Signed Stirling numbers of the first kind."""
    c = stirling1_unsigned(p, q)
    return -c if (p - q) % 2 else c
