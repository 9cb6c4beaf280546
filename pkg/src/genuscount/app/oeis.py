"""Offline cross-checks against OEIS b-files.

A b-file is plain text: optional ``#`` comment lines, then lines holding an
index and a value separated by whitespace. Each sequence binding states how
the b-file index maps onto the argument of the generator, because OEIS
offsets rarely agree with the indexing used here.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from genuscount import classic, genusforms, pairings


class BFileError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def parse_bfile(text: str) -> list[tuple[int, int]]:
    out: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) != 2:
            raise BFileError(lineno, f"expected 'index value', got {raw!r}")
        try:
            idx, val = int(fields[0]), int(fields[1])
        except ValueError:
            raise BFileError(lineno, f"non-integer field in {raw!r}") from None
        if out and idx != out[-1][0] + 1:
            raise BFileError(lineno, f"index {idx} does not follow {out[-1][0]}")
        out.append((idx, val))
    if not out:
        raise BFileError(0, "no data lines")
    return out


def read_bfile(path: str | Path) -> list[tuple[int, int]]:
    return parse_bfile(Path(path).read_text())


def _value(r):
    return r.value if isinstance(r, genusforms.FormulaResult) else r


def _bell_genus(n, g=0):
    if g == 0 and n == 0:
        return 1
    return _value(genusforms.bell_genus(n, g))


def _assoc_bell_genus(n, g=0):
    if g == 0 and n == 0:
        return 1
    return _value(genusforms.assoc_bell_genus(n, g))


# generator name -> f(n, **params); None means "outside the domain"
GENERATORS: dict[str, Callable[..., int | None]] = {
    "bell-genus": _bell_genus,
    "assoc-bell-genus": _assoc_bell_genus,
    "epsilon": lambda k, g=0: pairings.epsilon(k, g),
    "q-constant": lambda g: pairings.Q_poly(g)(0) if g >= 1 else None,
    "bell": lambda n: classic.bell(n),
    "catalan": lambda n: classic.catalan(n),
}


@dataclass(frozen=True)
class Binding:
    anumber: str
    generator: str
    shift: int  # generator argument = b-file index + shift
    params: dict = field(default_factory=dict)
    description: str = ""

    def value(self, index: int) -> int | None:
        arg = index + self.shift
        if arg < 0:
            return None
        v = GENERATORS[self.generator](arg, **self.params)
        return None if v is None else int(v)


BINDINGS: dict[str, Binding] = {
    "A000108": Binding("A000108", "bell-genus", 0, {"g": 0}, "planar partitions, Catalan numbers"),
    "A002802": Binding("A002802", "bell-genus", 4, {"g": 1}, "genus-1 partitions"),
    "A002802/epsilon": Binding("A002802", "epsilon", 2, {"g": 1}, "genus-1 pairings"),
    "A035319": Binding("A035319", "q-constant", 0, {}, "constant term of Q^(g)"),
    "A005043": Binding("A005043", "assoc-bell-genus", 0, {"g": 0}, "planar partitions without singletons"),
    "A000110": Binding("A000110", "bell", 0, {}, "Bell numbers"),
}


@dataclass
class OeisReport:
    anumber: str
    generator: str
    shift: int
    matched: int
    compared: int
    skipped: int
    first_divergence: dict | None = None

    @property
    def ok(self) -> bool:
        return self.first_divergence is None and self.compared > 0

    def to_json(self) -> dict:
        return {
            "sequence": self.anumber,
            "generator": self.generator,
            "shift": self.shift,
            "matched": self.matched,
            "compared": self.compared,
            "skipped": self.skipped,
            "status": "match" if self.ok else "mismatch",
            "first_divergence": self.first_divergence,
        }

    def text(self) -> str:
        head = f"{self.anumber} vs {self.generator} (argument = index {self.shift:+d})"
        if self.ok:
            return f"{head}: match on {self.matched} terms ({self.skipped} skipped)"
        if self.first_divergence is None:
            return f"{head}: nothing compared"
        d = self.first_divergence
        return f"{head}: matched {self.matched} terms, diverges at index {d['index']}: file {d['file']} != generated {d['generated']}"


def check(entries: list[tuple[int, int]], binding: Binding, limit: int | None = None) -> OeisReport:
    matched = compared = skipped = 0
    first = None
    for idx, val in entries:
        if limit is not None and compared >= limit:
            break
        got = binding.value(idx)
        if got is None:
            skipped += 1
            continue
        compared += 1
        if got != val:
            first = {"index": idx, "file": str(val), "generated": str(got)}
            break
        matched += 1
    return OeisReport(binding.anumber, binding.generator, binding.shift, matched, compared, skipped, first)


def binding_for(path: str | Path) -> Binding | None:
    """Guess the binding from a b-file name such as ``b002802.txt``."""
    m = re.search(r"b(\d{6})", Path(path).name)
    return BINDINGS.get(f"A{m.group(1)}") if m else None
