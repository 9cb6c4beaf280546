"""Appendix-style tables: C (by type), S (by block count) and S-hat.

Rows are ordered like the printed tables: types by number of parts and then
lexicographically, block counts increasing, genus ascending within a row.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass

from genuscount.classic import integer_partitions

KINDS = ("C", "S", "Shat")
FORMATS = ("text", "csv", "json", "markdown")


@dataclass
class Table:
    kind: str
    n: int
    rows: list[tuple[str, list[int]]]  # (row label, values for g = 0, 1, ...)

    def width(self) -> int:
        return max((len(v) for _, v in self.rows), default=1)

    def cells(self) -> dict[tuple[str, int], int]:
        return {(label, g): v for label, vals in self.rows for g, v in enumerate(vals) if v}


def row_keys(kind: str, n: int) -> list:
    if kind == "C":
        return list(integer_partitions(n, min_part=2))
    if kind == "S":
        return list(range(1, n + 1))
    if kind == "Shat":
        return list(range(1, n // 2 + 1))
    raise ValueError(f"unknown table kind {kind!r}, expected one of {KINDS}")


def build(kind: str, n: int, counts: dict) -> Table:
    """``counts`` maps (row key, g) to a value; row keys are PartitionType for C, k otherwise."""
    rows = []
    for key in row_keys(kind, n):
        vals = [counts.get((key, g), 0) for g in range(n // 2 + 1)]
        while len(vals) > 1 and vals[-1] == 0:
            vals.pop()
        rows.append((str(key), vals))
    return Table(kind, n, rows)


def from_types(kind: str, n: int, type_counts: dict) -> Table:
    """Build any of the three tables from type-keyed counts (singletons allowed)."""
    if kind == "C":
        return build(kind, n, {k: v for k, v in type_counts.items() if not k[0].singletons})
    acc: dict = {}
    for (t, g), v in type_counts.items():
        if kind == "Shat" and t.singletons:
            continue
        acc[(t.length, g)] = acc.get((t.length, g), 0) + v
    return build(kind, n, acc)


def from_golden(golden, kind: str, n: int) -> Table:
    if kind == "C":
        return build(kind, n, golden.types(n))
    return build(kind, n, golden.stirling(n, singletons=(kind == "S")))


# rendering -----------------------------------------------------------------


def render(tables: list[Table], fmt: str) -> str:
    if fmt == "text":
        if len(tables) == 1:
            return to_text(tables[0]) + "\n"
        return "".join(f"n={t.n}: {to_text(t)}\n" for t in tables)
    if fmt == "csv":
        return to_csv(tables)
    if fmt == "json":
        return json.dumps([to_json(t) for t in tables], indent=1) + "\n"
    if fmt == "markdown":
        return "\n".join(to_markdown(t) for t in tables)
    raise ValueError(f"unknown format {fmt!r}, expected one of {FORMATS}")


def to_text(t: Table) -> str:
    return "; ".join(f"{label}|{','.join(map(str, vals))}" for label, vals in t.rows)


def to_csv(tables: list[Table]) -> str:
    width = max(t.width() for t in tables)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["table", "n", "row"] + [f"g{g}" for g in range(width)])
    for t in tables:
        for label, vals in t.rows:
            w.writerow([t.kind, t.n, label] + vals + [0] * (width - len(vals)))
    return buf.getvalue()


def to_json(t: Table) -> dict:
    return {"table": t.kind, "n": t.n, "rows": [{"row": label, "values": [str(v) for v in vals]} for label, vals in t.rows]}


def to_markdown(t: Table) -> str:
    head = "type" if t.kind == "C" else "k"
    lines = [f"**{t.kind}, n={t.n}**", "", f"| {head} | " + " | ".join(f"g={g}" for g in range(t.width())) + " |",
             "|---" * (t.width() + 1) + "|"]
    for label, vals in t.rows:
        cells = vals + [0] * (t.width() - len(vals))
        lines.append(f"| {label} | " + " | ".join(map(str, cells)) + " |")
    return "\n".join(lines) + "\n"


# parsing back --------------------------------------------------------------


def parse_text(line: str, kind: str, n: int) -> Table:
    rows = []
    for chunk in line.strip().split(";"):
        label, _, vals = chunk.strip().partition("|")
        rows.append((label, [int(v) for v in vals.split(",")]))
    return Table(kind, n, rows)


def parse_csv(text: str) -> list[Table]:
    out: dict[tuple[str, int], Table] = {}
    reader = csv.reader(io.StringIO(text))
    next(reader)
    for rec in reader:
        kind, n, label, *vals = rec
        key = (kind, int(n))
        t = out.setdefault(key, Table(kind, int(n), []))
        ints = [int(v) for v in vals]
        while len(ints) > 1 and ints[-1] == 0:
            ints.pop()
        t.rows.append((label, ints))
    return list(out.values())


def parse_json(text: str) -> list[Table]:
    return [Table(d["table"], d["n"], [(r["row"], [int(v) for v in r["values"]]) for r in d["rows"]])
            for d in json.loads(text)]
