"""Streaming enumeration of set partitions with on-the-fly genus counting.

Partitions are walked as restricted growth strings (RGS) in lexicographic
order, one at a time and without materialising lists. Work can be split into
disjoint RGS prefixes; each prefix is enumerable on its own and the per-unit
count tables merge by plain addition, so results do not depend on how the
units are scheduled.

The enumeration ceiling is not enforced; n = 15 (B_15 ~ 1.4e9 partitions) is
supported but takes many CPU-hours in pure Python.
"""

from __future__ import annotations

import json
import logging
import os
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterator

from genuscount.core import PartitionType, SetPartition

log = logging.getLogger(__name__)

MODES = ("genus", "parts", "type")


class ConstraintError(ValueError):
    pass


@dataclass(frozen=True)
class Constraint:
    """Filter on the enumerated partitions.

    ``min_block_size=2`` excludes singletons; ``parts`` fixes the number of
    blocks; ``ctype`` fixes the full block-size profile.
    """

    min_block_size: int = 1
    parts: int | None = None
    ctype: PartitionType | None = None

    def __post_init__(self):
        if self.min_block_size not in (1, 2):
            raise ConstraintError("min_block_size must be 1 or 2")
        if self.parts is not None and self.parts < 1:
            raise ConstraintError("parts must be positive")
        if self.ctype is not None:
            if isinstance(self.ctype, str):
                object.__setattr__(self, "ctype", PartitionType.parse(self.ctype))
            if self.parts is not None and self.parts != self.ctype.length:
                raise ConstraintError(f"parts={self.parts} contradicts type {self.ctype}")
            if self.min_block_size == 2 and self.ctype.singletons:
                raise ConstraintError(f"type {self.ctype} has singletons")

    def check_n(self, n: int) -> None:
        if n < 1:
            raise ConstraintError("n must be at least 1")
        if self.ctype is not None and self.ctype.n != n:
            raise ConstraintError(f"type {self.ctype} is not a partition of {n}")

    def accepts(self, p: SetPartition) -> bool:
        sizes = [len(b) for b in p.blocks]
        if min(sizes) < self.min_block_size:
            return False
        if self.parts is not None and len(sizes) != self.parts:
            return False
        if self.ctype is not None and tuple(sorted(sizes)) != self.ctype.parts:
            return False
        return True

    def to_dict(self) -> dict:
        return {
            "min_block_size": self.min_block_size,
            "parts": self.parts,
            "ctype": self.ctype.key() if self.ctype is not None else None,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Constraint":
        ctype = d.get("ctype")
        return cls(
            min_block_size=d.get("min_block_size", 1),
            parts=d.get("parts"),
            ctype=PartitionType.parse(ctype) if ctype else None,
        )

    def slug(self) -> str:
        bits = [f"min{self.min_block_size}"]
        if self.parts is not None:
            bits.append(f"k{self.parts}")
        if self.ctype is not None:
            bits.append("t" + self.ctype.key().replace("^", "p").replace(",", "_"))
        return "-".join(bits)


NO_CONSTRAINT = Constraint()


@dataclass(frozen=True)
class WorkUnit:
    n: int
    constraint: Constraint
    prefix: tuple[int, ...]

    def label(self) -> str:
        return "".join(map(str, self.prefix)) if max(self.prefix) < 10 else ".".join(map(str, self.prefix))

    def to_dict(self) -> dict:
        return {"n": self.n, "constraint": self.constraint.to_dict(), "prefix": list(self.prefix)}

    @classmethod
    def from_dict(cls, d: dict) -> "WorkUnit":
        return cls(d["n"], Constraint.from_dict(d["constraint"]), tuple(d["prefix"]))


@dataclass
class GenusCountTable:
    """Exact counts keyed per ``mode``.

    * ``genus``: key ``g``
    * ``parts``: key ``(k, g)``
    * ``type``:  key ``(PartitionType, g)``
    """

    n: int
    constraint: Constraint
    mode: str
    counts: dict = field(default_factory=dict)
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown aggregation mode {self.mode!r}")

    def total(self) -> int:
        return sum(self.counts.values())

    def by_genus(self) -> dict[int, int]:
        out: Counter = Counter()
        for key, v in self.counts.items():
            out[key if self.mode == "genus" else key[1]] += v
        return dict(sorted(out.items()))

    def get(self, *key) -> int:
        k = key[0] if len(key) == 1 else tuple(key)
        return self.counts.get(k, 0)

    def sorted_items(self) -> list:
        if self.mode == "type":
            return sorted(self.counts.items(), key=lambda kv: (kv[0][0].sort_key(), kv[0][1]))
        return sorted(self.counts.items())

    def merge(self, other: "GenusCountTable") -> "GenusCountTable":
        if (self.n, self.constraint, self.mode) != (other.n, other.constraint, other.mode):
            raise ValueError("cannot merge tables of different shape")
        merged = Counter(self.counts)
        merged.update(other.counts)
        return GenusCountTable(self.n, self.constraint, self.mode, _canonical(merged, self.mode), dict(self.meta))

    def to_json(self) -> dict:
        rows = []
        for key, v in self.sorted_items():
            if self.mode == "genus":
                rows.append({"genus": key, "count": str(v)})
            elif self.mode == "parts":
                rows.append({"k": key[0], "genus": key[1], "count": str(v)})
            else:
                rows.append({"type": key[0].key(), "genus": key[1], "count": str(v)})
        return {
            "n": self.n,
            "constraint": self.constraint.to_dict(),
            "key": self.mode,
            "counts": rows,
            "meta": self.meta,
        }

    @classmethod
    def from_json(cls, d: dict) -> "GenusCountTable":
        mode = d["key"]
        counts = {}
        for row in d["counts"]:
            if mode == "genus":
                key = row["genus"]
            elif mode == "parts":
                key = (row["k"], row["genus"])
            else:
                key = (PartitionType.parse(row["type"]), row["genus"])
            counts[key] = int(row["count"])
        return cls(d["n"], Constraint.from_dict(d["constraint"]), mode, counts, dict(d.get("meta", {})))

    def same_counts(self, other: "GenusCountTable") -> bool:
        return self.mode == other.mode and self.counts == other.counts


def _canonical(counts, mode):
    """Drop zeros, canonicalise raw size tuples and order keys deterministically."""
    out: Counter = Counter()
    for key, v in counts.items():
        if not v:
            continue
        if mode == "type" and not isinstance(key[0], PartitionType):
            key = (PartitionType(key[0]), key[1])
        out[key] += v
    if mode == "type":
        return dict(sorted(out.items(), key=lambda kv: (kv[0][0].sort_key(), kv[0][1])))
    return dict(sorted(out.items()))


# ---------------------------------------------------------------------------
# RGS walk
# ---------------------------------------------------------------------------


def _check_prefix(n: int, prefix: tuple[int, ...]) -> None:
    if not prefix or prefix[0] != 1:
        raise ValueError("RGS prefix must start with 1")
    top = 0
    for a in prefix:
        if not 1 <= a <= top + 1:
            raise ValueError(f"invalid RGS prefix {prefix}")
        top = max(top, a)
    if len(prefix) > n:
        raise ValueError("prefix longer than n")


def _walk(n: int, c: Constraint, prefix: tuple[int, ...], leaf: Callable) -> None:
    """Depth-first RGS walk calling ``leaf(blk, prev, last, sizes, m)`` per accepted partition.

    Blocks are 0-based internally. ``prev[x]`` is the previous element of the
    block holding ``x`` (``-1`` for its minimum); ``last[b]`` the current
    maximum of block ``b``.
    """
    blk = [0] * n
    prev = [0] * n
    last = [-1] * n
    sizes = [0] * n

    max_blocks, max_size, target, no_single, min_blocks = _limits(n, c)

    # replay the prefix
    m = 0
    ones = 0
    for i, a in enumerate(prefix):
        b = a - 1
        blk[i] = b
        prev[i] = last[b]
        last[b] = i
        sizes[b] += 1
        if b == m:
            m += 1
            ones += 1
        elif sizes[b] == 2:
            ones -= 1
    start = len(prefix)
    if not _feasible(n, start, m, ones, sizes, max_blocks, max_size, no_single, min_blocks):
        return

    def rec(i, m, ones):
        if i == n:
            if target is not None and sorted(sizes[:m]) != target:
                return
            leaf(blk, prev, last, sizes, m)
            return
        rest = n - i - 1
        top = m + 1 if m < max_blocks else m
        for b in range(top):
            sb = sizes[b]
            if sb >= max_size:
                continue
            if b == m:
                m2, ones2 = m + 1, ones + 1
            else:
                m2, ones2 = m, ones - 1 if sb == 1 else ones
            if no_single and ones2 > rest:
                continue
            if m2 + rest < min_blocks:
                continue
            blk[i] = b
            old = last[b]
            prev[i] = old
            last[b] = i
            sizes[b] = sb + 1
            rec(i + 1, m2, ones2)
            sizes[b] = sb
            last[b] = old

    rec(start, m, ones)


def _faces(n, blk, prev, last):
    """Number of cycles of ``x -> tau^-1(x) + 1 (mod n)``, all 0-based."""
    nm1 = n - 1
    pi = [0] * n
    for x in range(n):
        p = prev[x]
        if p < 0:
            p = last[blk[x]]
        pi[x] = p + 1 if p < nm1 else 0
    seen = bytearray(n)
    f = 0
    for x in range(n):
        if not seen[x]:
            f += 1
            while not seen[x]:
                seen[x] = 1
                x = pi[x]
    return f


def iter_rgs(n: int, c: Constraint = NO_CONSTRAINT, prefix: tuple[int, ...] = (1,)) -> Iterator[tuple[int, ...]]:
    """Yield the 1-based RGS of every partition satisfying ``c``, lexicographically."""
    c.check_n(n)
    _check_prefix(n, prefix)
    max_blocks, max_size, target, no_single, min_blocks = _limits(n, c)
    rgs = list(prefix) + [0] * (n - len(prefix))
    sizes = [0] * (n + 1)
    for a in prefix:
        sizes[a] += 1
    m = max(prefix)
    ones = sum(1 for b in range(1, m + 1) if sizes[b] == 1)
    start = len(prefix)
    if not _feasible(n, start, m, ones, sizes, max_blocks, max_size, no_single, min_blocks):
        return

    def rec(i, m, ones):
        if i == n:
            if target is None or sorted(sizes[1 : m + 1]) == target:
                yield tuple(rgs)
            return
        rest = n - i - 1
        for a in range(1, min(m + 1, max_blocks) + 1):
            sa = sizes[a]
            if sa >= max_size:
                continue
            m2, ones2 = (m + 1, ones + 1) if a == m + 1 else (m, ones - (sa == 1))
            if (no_single and ones2 > rest) or m2 + rest < min_blocks:
                continue
            rgs[i] = a
            sizes[a] = sa + 1
            yield from rec(i + 1, m2, ones2)
            sizes[a] = sa

    yield from rec(start, m, ones)


def _limits(n, c):
    max_blocks = c.parts if c.parts is not None else n
    max_size = n
    target = None
    if c.ctype is not None:
        max_blocks = c.ctype.length
        max_size = c.ctype.parts[-1]
        target = list(c.ctype.parts)
    no_single = c.min_block_size == 2 or (target is not None and target[0] >= 2)
    min_blocks = c.parts if c.parts is not None else (len(target) if target else 1)
    return max_blocks, max_size, target, no_single, min_blocks


def _feasible(n, filled, m, ones, sizes, max_blocks, max_size, no_single, min_blocks):
    if m > max_blocks or max(sizes) > max_size:
        return False
    if no_single and ones > n - filled:
        return False
    return m + (n - filled) >= min_blocks


def _subprefixes(n, prefix, depth):
    if len(prefix) >= depth:
        yield prefix
        return
    top = max(prefix)
    for a in range(1, top + 2):
        yield from _subprefixes(n, prefix + (a,), depth)


def visit_partitions(n: int, c: Constraint, visitor: Callable[[SetPartition], object]) -> int:
    """Call ``visitor`` once per partition satisfying ``c``; stop early if it returns ``False``.

    Returns the number of visits made.
    """
    count = 0
    for rgs in iter_rgs(n, c):
        count += 1
        if visitor(SetPartition.from_rgs(rgs)) is False:
            break
    return count


def split_workload(n: int, c: Constraint = NO_CONSTRAINT, depth: int = 1) -> list[WorkUnit]:
    """Disjoint RGS prefixes of length ``depth`` covering the whole enumeration."""
    c.check_n(n)
    if not 1 <= depth < n:
        raise ValueError(f"depth must satisfy 1 <= depth < n, got depth={depth}, n={n}")
    return [WorkUnit(n, c, p) for p in _subprefixes(n, (1,), depth)]


def count_unit(unit: WorkUnit, mode: str) -> dict:
    """Raw counts for one work unit (keys canonicalised)."""
    n = unit.n
    acc: Counter = Counter()
    base = n + 1

    if mode == "genus":
        def leaf(blk, prev, last, sizes, m):
            acc[(base - m - _faces(n, blk, prev, last)) >> 1] += 1
    elif mode == "parts":
        def leaf(blk, prev, last, sizes, m):
            acc[(m, (base - m - _faces(n, blk, prev, last)) >> 1)] += 1
    elif mode == "type":
        def leaf(blk, prev, last, sizes, m):
            acc[(tuple(sizes[:m]), (base - m - _faces(n, blk, prev, last)) >> 1)] += 1
    else:
        raise ValueError(f"unknown aggregation mode {mode!r}")

    _walk(n, unit.constraint, unit.prefix, leaf)
    return _canonical(acc, mode)


def _count_unit_args(args):
    unit, mode = args
    return unit, count_unit(unit, mode)


def default_workers() -> int:
    env = os.environ.get("GENUSCOUNT_THREADS")
    return max(1, int(env)) if env else 1


def _default_depth(n, workers):
    if n <= 2:
        return None
    depth, units = 1, 1
    # Bell numbers: enough units to keep every worker busy
    bell = [1, 1, 2, 5, 15, 52, 203, 877, 4140]
    while depth + 1 < n and depth + 1 < len(bell) and units < 8 * workers:
        depth += 1
        units = bell[depth]
    return depth


def _verify_total(table: GenusCountTable) -> None:
    for key, v in table.counts.items():
        if v < 0:
            raise AssertionError(f"negative count at {key}")


def count_table(
    n: int,
    c: Constraint = NO_CONSTRAINT,
    mode: str = "genus",
    workers: int | None = None,
    depth: int | None = None,
    checkpoint_dir: str | os.PathLike | None = None,
    progress: Callable[[int, int], None] | None = None,
) -> GenusCountTable:
    """Aggregate counts over all partitions of {1..n} satisfying ``c``.

    With ``workers > 1`` (or an explicit ``depth``), the enumeration is split
    into RGS-prefix units. When ``checkpoint_dir`` is set, each finished
    unit is persisted there and reused on the next run.
    """
    c.check_n(n)
    workers = default_workers() if workers is None else max(1, workers)
    t0 = time.time()
    if depth is None and (workers > 1 or checkpoint_dir is not None):
        depth = _default_depth(n, workers)

    if depth is None:
        counts = count_unit(WorkUnit(n, c, (1,)), mode)
        n_units = 1
    else:
        units = split_workload(n, c, depth)
        n_units = len(units)
        total: Counter = Counter()
        pending = []
        ckdir = Path(checkpoint_dir) if checkpoint_dir is not None else None
        if ckdir is not None:
            ckdir.mkdir(parents=True, exist_ok=True)
        done = 0
        for u in units:
            path = _unit_path(ckdir, u, mode) if ckdir else None
            if path is not None and path.exists():
                total.update(GenusCountTable.from_json(json.loads(path.read_text())).counts)
                done += 1
            else:
                pending.append(u)
        if progress:
            progress(done, n_units)

        def record(u, counts):
            nonlocal done
            total.update(counts)
            done += 1
            if ckdir is not None:
                t = GenusCountTable(n, c, mode, counts, {"prefix": list(u.prefix)})
                _atomic_write(_unit_path(ckdir, u, mode), json.dumps(t.to_json()))
            if progress:
                progress(done, n_units)

        if workers > 1 and len(pending) > 1:
            with ProcessPoolExecutor(max_workers=workers) as ex:
                for u, counts in ex.map(_count_unit_args, [(u, mode) for u in pending]):
                    record(u, counts)
        else:
            for u in pending:
                record(u, count_unit(u, mode))
        counts = _canonical(total, mode)

    table = GenusCountTable(
        n,
        c,
        mode,
        counts,
        {
            "generated": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
            "workers": workers,
            "units": n_units,
            "seconds": round(time.time() - t0, 3),
        },
    )
    _verify_total(table)
    return table


def _unit_path(ckdir: Path, u: WorkUnit, mode: str) -> Path:
    return ckdir / f"n{u.n}-{u.constraint.slug()}-{mode}-u{'.'.join(map(str, u.prefix))}.json"


def _atomic_write(path: Path, text: str) -> None:
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(text)
    os.replace(tmp, path)


def count_by_genus(n: int, c: Constraint = NO_CONSTRAINT, **kw) -> GenusCountTable:
    return count_table(n, c, "genus", **kw)


def count_stirling(n: int, no_singletons: bool = False, **kw) -> GenusCountTable:
    """Counts keyed by (number of blocks, genus)."""
    return count_table(n, Constraint(min_block_size=2 if no_singletons else 1), "parts", **kw)


def count_types(n: int, min_block_size: int = 1, **kw) -> GenusCountTable:
    """Counts keyed by (block-size type, genus)."""
    return count_table(n, Constraint(min_block_size=min_block_size), "type", **kw)


def reduce_types(table: GenusCountTable, mode: str, min_block_size: int = 1) -> GenusCountTable:
    """Collapse a type-keyed table to ``parts`` or ``genus`` keys, optionally dropping singleton types."""
    if table.mode != "type":
        raise ValueError("expected a type-keyed table")
    acc: Counter = Counter()
    for (t, g), v in table.counts.items():
        if min_block_size == 2 and t.singletons:
            continue
        acc[g if mode == "genus" else (t.length, g)] += v
    c = Constraint(min_block_size=max(min_block_size, table.constraint.min_block_size))
    return GenusCountTable(table.n, c, mode, _canonical(acc, mode), dict(table.meta))
