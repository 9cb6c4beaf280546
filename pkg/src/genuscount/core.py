"""Set partitions, permutations and the genus of a partition.

Everything here is 1-based. A partition of {1..n} is turned into the
permutation ``tau`` whose cycles are its blocks read in increasing order;
with ``sigma = (1 2 ... n)`` the faces of the associated map are the cycles
of ``sigma o tau^-1`` and the genus follows from Euler's relation

    n + 1 - |blocks| - faces = 2 * genus.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence


class GenusIntegrityError(AssertionError):
    """Raised when Euler's relation yields a non-integral or negative genus."""


@dataclass(frozen=True)
class PartitionType:
    """An integer partition of ``n``, the block-size profile of a set partition.

    ``parts`` is kept sorted in increasing order, so ``[1^2, 3, 5]`` is stored
    as ``(1, 1, 3, 5)``.
    """

    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(sorted(int(p) for p in self.parts))
        if not parts:
            raise ValueError("a partition type needs at least one part")
        if parts[0] < 1:
            raise ValueError(f"parts must be positive, got {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def from_multiplicities(cls, mult: dict[int, int]) -> "PartitionType":
        parts: list[int] = []
        for size, count in mult.items():
            if count < 0:
                raise ValueError(f"negative multiplicity for {size}")
            parts.extend([size] * count)
        return cls(tuple(parts))

    @classmethod
    def parse(cls, text: str) -> "PartitionType":
        """Parse ``"2^2,3"``, ``"[2^2, 3]"`` or ``"3 2^3"`` style notation."""
        body = text.strip().strip("[]")
        parts: list[int] = []
        for token in re.split(r"[,\s]+", body):
            if not token:
                continue
            m = re.fullmatch(r"(\d+)(?:\^(\d+))?", token)
            if m is None:
                raise ValueError(f"cannot parse partition type {text!r}")
            parts.extend([int(m.group(1))] * int(m.group(2) or 1))
        return cls(tuple(parts))

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        """Number of parts, written ``|alpha|``."""
        return len(self.parts)

    @property
    def multiplicities(self) -> dict[int, int]:
        return dict(sorted(Counter(self.parts).items()))

    @property
    def singletons(self) -> int:
        return self.parts.count(1)

    def without_singletons(self) -> "PartitionType | None":
        rest = tuple(p for p in self.parts if p > 1)
        return PartitionType(rest) if rest else None

    def key(self) -> str:
        """Stable text key, e.g. ``2^2,3``."""
        chunks = []
        for size, count in self.multiplicities.items():
            chunks.append(str(size) if count == 1 else f"{size}^{count}")
        return ",".join(chunks)

    def sort_key(self) -> tuple:
        """Table order: increasing number of parts, then lexicographic."""
        return (len(self.parts), self.parts)

    def __str__(self) -> str:
        return f"[{self.key()}]"


@dataclass(frozen=True)
class Permutation:
    """A permutation of {1..n}; ``images[i - 1]`` is the image of ``i``."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(self.images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a bijection of 1..{len(images)}: {images}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        images = list(range(1, n + 1))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                images[a - 1] = b
        return cls(tuple(images))

    @classmethod
    def long_cycle(cls, n: int) -> "Permutation":
        """``sigma = (1 2 ... n)``."""
        return cls(tuple(range(2, n + 1)) + (1,))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def compose(self, other: "Permutation") -> "Permutation":
        """``self o other``: apply ``other`` first."""
        if other.n != self.n:
            raise ValueError("permutations act on different sets")
        return Permutation(tuple(self.images[j - 1] for j in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, j in enumerate(self.images, start=1):
            inv[j - 1] = i
        return Permutation(tuple(inv))

    def cycles(self) -> list[tuple[int, ...]]:
        """Cycle decomposition, each cycle starting at (and listed by) its smallest element."""
        seen = [False] * (self.n + 1)
        out = []
        for start in range(1, self.n + 1):
            if seen[start]:
                continue
            cyc = []
            x = start
            while not seen[x]:
                seen[x] = True
                cyc.append(x)
                x = self.images[x - 1]
            out.append(tuple(cyc))
        return out

    def cycle_count(self) -> int:
        return len(self.cycles())

    def __str__(self) -> str:
        return "".join("(" + " ".join(map(str, c)) + ")" for c in self.cycles())


@dataclass(frozen=True)
class SetPartition:
    """A partition of {1..n}, blocks increasing and ordered by their minimum."""

    n: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        blocks = tuple(tuple(b) for b in self.blocks)
        seen: list[int] = []
        for b in blocks:
            if not b:
                raise ValueError("empty block")
            if any(x >= y for x, y in zip(b, b[1:])):
                raise ValueError(f"block {b} is not strictly increasing")
            seen.extend(b)
        if sorted(seen) != list(range(1, self.n + 1)):
            raise ValueError(f"blocks {blocks} do not partition 1..{self.n}")
        if any(a[0] > b[0] for a, b in zip(blocks, blocks[1:])):
            raise ValueError("blocks must be ordered by their minimum")
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]], n: int | None = None) -> "SetPartition":
        """Build from blocks in any order, sorting elements and blocks."""
        bl = sorted((tuple(sorted(b)) for b in blocks), key=lambda b: b[0])
        if n is None:
            n = sum(len(b) for b in bl)
        return cls(n, tuple(bl))

    @classmethod
    def from_rgs(cls, rgs: Sequence[int]) -> "SetPartition":
        """Decode a 1-based restricted growth string."""
        blocks: list[list[int]] = []
        for i, a in enumerate(rgs, start=1):
            if a == len(blocks) + 1:
                blocks.append([i])
            elif 1 <= a <= len(blocks):
                blocks[a - 1].append(i)
            else:
                raise ValueError(f"invalid restricted growth string {list(rgs)}")
        return cls(len(rgs), tuple(tuple(b) for b in blocks))

    @classmethod
    def parse(cls, text: str) -> "SetPartition":
        """Parse the canonical text form ``1,3,4,6,7|2,5,9|8|10``."""
        blocks = [[int(x) for x in chunk.split(",")] for chunk in text.strip().split("|")]
        return cls.from_blocks(blocks)

    def to_rgs(self) -> tuple[int, ...]:
        rgs = [0] * self.n
        for label, b in enumerate(self.blocks, start=1):
            for x in b:
                rgs[x - 1] = label
        return tuple(rgs)

    def remove_singletons(self) -> "SetPartition | None":
        """Drop singleton blocks and relabel the remaining points 1..n'."""
        kept = sorted(x for b in self.blocks if len(b) > 1 for x in b)
        if not kept:
            return None
        relabel = {x: i for i, x in enumerate(kept, start=1)}
        return SetPartition.from_blocks(
            [[relabel[x] for x in b] for b in self.blocks if len(b) > 1], n=len(kept)
        )

    def __len__(self) -> int:
        return len(self.blocks)

    def __str__(self) -> str:
        return "|".join(",".join(map(str, b)) for b in self.blocks)


class TwoPartStats(NamedTuple):
    s1: int
    s2: int
    f_prime: int


def tau_of(p: SetPartition) -> Permutation:
    """The permutation whose cycles are the blocks of ``p``, each traversed upward."""
    return Permutation.from_cycles(p.n, p.blocks)


def _face_permutation(p: SetPartition) -> Permutation:
    return Permutation.long_cycle(p.n).compose(tau_of(p).inverse())


def faces_of(p: SetPartition) -> int:
    return _face_permutation(p).cycle_count()


def genus_from_counts(n: int, parts: int, faces: int) -> int:
    twice = n + 1 - parts - faces
    if twice < 0 or twice % 2:
        raise GenusIntegrityError(f"n={n}, parts={parts}, faces={faces} gives 2g={twice}")
    return twice // 2


def genus_of(p: SetPartition) -> int:
    return genus_from_counts(p.n, len(p.blocks), faces_of(p))


def type_of(p: SetPartition) -> PartitionType:
    return PartitionType(tuple(len(b) for b in p.blocks))


def two_part_stats(p: SetPartition) -> TwoPartStats:
    """Singleton faces of a two-block partition, split by the block they sit in.

    A point ``x`` is a singleton face when ``tau(x - 1) == x`` (indices mod n).
    ``s1`` counts those in the first canonical block (the one holding 1).
    """
    if len(p.blocks) != 2:
        raise ValueError(f"expected a two-block partition, got {len(p.blocks)} blocks")
    face = _face_permutation(p)
    first = set(p.blocks[0])
    fixed = [x for x in range(1, p.n + 1) if face(x) == x]
    s1 = sum(1 for x in fixed if x in first)
    s2 = len(fixed) - s1
    if s2 - s1 != p.n - 2 * len(p.blocks[0]):
        raise AssertionError(f"singleton balance violated for {p}")
    return TwoPartStats(s1, s2, face.cycle_count() - s1 - s2)
