"""Independent reference implementations used only by the tests.

Nothing here imports the package: partitions are generated by inserting
elements one at a time (not by restricted growth strings), the genus is
computed from dictionaries, and the classic numbers come from their
textbook recurrences.
"""

from collections import Counter
from functools import lru_cache


def set_partitions(n):
    """All partitions of {1..n} as lists of lists, built by element insertion."""
    if n == 0:
        yield []
        return
    for p in set_partitions(n - 1):
        for i in range(len(p)):
            yield [b + [n] if j == i else list(b) for j, b in enumerate(p)]
        yield [list(b) for b in p] + [[n]]


def genus(blocks, n):
    tau = {}
    for b in blocks:
        b = sorted(b)
        for i, x in enumerate(b):
            tau[x] = b[(i + 1) % len(b)]
    tau_inv = {v: k for k, v in tau.items()}
    sigma = {i: i % n + 1 for i in range(1, n + 1)}
    face = {x: sigma[tau_inv[x]] for x in range(1, n + 1)}
    seen, cycles = set(), 0
    for x in range(1, n + 1):
        if x not in seen:
            cycles += 1
            while x not in seen:
                seen.add(x)
                x = face[x]
    twice = n + 1 - len(blocks) - cycles
    assert twice % 2 == 0 and twice >= 0
    return twice // 2


@lru_cache(maxsize=None)
def type_counts(n):
    """{(sorted block sizes, g): count} over all partitions of {1..n}."""
    c = Counter()
    for p in set_partitions(n):
        c[(tuple(sorted(len(b) for b in p)), genus(p, n))] += 1
    return dict(c)


def binomial(n, k):
    row = [1]
    for _ in range(n):
        row = [a + b for a, b in zip([0] + row, row + [0])]
    return row[k] if 0 <= k <= n else 0


def bell_triangle(n):
    row = [1]
    out = [1]
    for _ in range(n):
        new = [row[-1]]
        for v in row:
            new.append(new[-1] + v)
        row = new
        out.append(row[0])
    return out[n]


@lru_cache(maxsize=None)
def stirling2(n, k):
    if n == k:
        return 1
    if k == 0 or k > n:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


@lru_cache(maxsize=None)
def catalan(n):
    if n == 0:
        return 1
    return sum(catalan(i) * catalan(n - 1 - i) for i in range(n))


@lru_cache(maxsize=None)
def ward(n, k):
    """Associated Stirling numbers: S-hat(n, k) = k S-hat(n-1, k) + (n-1) S-hat(n-2, k-1)."""
    if n == 0 and k == 0:
        return 1
    if n <= 0 or k <= 0:
        return 0
    return k * ward(n - 1, k) + (n - 1) * ward(n - 2, k - 1)


def double_factorial(n):
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out
