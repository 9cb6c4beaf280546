"""On-disk cache of brute-force count tables.

One JSON file per (n, constraint, mode); big integers are stored as decimal
strings. Writes go through a temporary file and ``os.replace`` so readers
never see a half-written entry.
"""

from __future__ import annotations

import json
import logging
import os
from pathlib import Path

from genuscount.enumeration import NO_CONSTRAINT, Constraint, GenusCountTable, count_table

log = logging.getLogger(__name__)

ENV_VAR = "GENUSCOUNT_CACHE"


def default_cache_dir() -> Path | None:
    env = os.environ.get(ENV_VAR)
    return Path(env) if env else None


class CountCache:
    def __init__(self, root: str | os.PathLike):
        self.root = Path(root)

    def path(self, n: int, c: Constraint, mode: str) -> Path:
        return self.root / f"n{n}-{c.slug()}-{mode}.json"

    def get(self, n: int, c: Constraint, mode: str) -> GenusCountTable | None:
        p = self.path(n, c, mode)
        if not p.exists():
            return None
        try:
            table = GenusCountTable.from_json(json.loads(p.read_text()))
        except (ValueError, KeyError) as exc:
            log.warning("ignoring unreadable cache entry %s: %s", p, exc)
            return None
        if (table.n, table.constraint, table.mode) != (n, c, mode):
            log.warning("cache entry %s holds a different table, ignoring", p)
            return None
        return table

    def put(self, table: GenusCountTable) -> Path:
        self.root.mkdir(parents=True, exist_ok=True)
        p = self.path(table.n, table.constraint, table.mode)
        tmp = p.with_suffix(".json.tmp")
        tmp.write_text(json.dumps(table.to_json(), indent=1) + "\n")
        os.replace(tmp, p)
        return p

    def checkpoint_dir(self, n: int, c: Constraint, mode: str) -> Path:
        return self.root / "units" / f"n{n}-{c.slug()}-{mode}"


def cached_count(n: int, c: Constraint = NO_CONSTRAINT, mode: str = "genus",
                 cache: CountCache | None = None, **kw) -> GenusCountTable:
    """``count_table`` with a cache lookup first; checkpoints land under the cache root."""
    if cache is None:
        return count_table(n, c, mode, **kw)
    hit = cache.get(n, c, mode)
    if hit is not None:
        return hit
    if kw.get("checkpoint_dir") is None and n >= 13:
        kw["checkpoint_dir"] = cache.checkpoint_dir(n, c, mode)
    table = count_table(n, c, mode, **kw)
    cache.put(table)
    return table
