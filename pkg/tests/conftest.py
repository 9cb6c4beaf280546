import os

import pytest

from genuscount.app.cache import CountCache, cached_count
from genuscount.app.golden import GoldenTables
from genuscount.enumeration import Constraint

BRUTE_MAX = int(os.environ.get("GENUSCOUNT_TEST_MAX_N", "12"))


@pytest.fixture(scope="session")
def golden():
    return GoldenTables.embedded()


@pytest.fixture(scope="session")
def count_cache(tmp_path_factory):
    """Shared on-disk cache so every test (and the verifier) enumerates each n once."""
    root = os.environ.get("GENUSCOUNT_CACHE")
    return CountCache(root if root else tmp_path_factory.mktemp("counts"))


@pytest.fixture(scope="session")
def brute_types(count_cache):
    """``brute_types(n)`` -> {(PartitionType, g): count}, singletons allowed, n <= BRUTE_MAX."""
    memo = {}

    def get(n):
        if n > BRUTE_MAX:
            pytest.skip(f"brute force limited to n <= {BRUTE_MAX}")
        if n not in memo:
            memo[n] = dict(cached_count(n, Constraint(), "type", cache=count_cache).counts)
        return memo[n]

    return get


def stirling_from_types(types, singletons=True):
    out = {}
    for (t, g), v in types.items():
        if singletons or not t.singletons:
            out[(t.length, g)] = out.get((t.length, g), 0) + v
    return out


def bell_from_types(types, singletons=True):
    out = {}
    for (t, g), v in types.items():
        if singletons or not t.singletons:
            out[g] = out.get(g, 0) + v
    return out


ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def record_acceptance(number, ok, detail):
    ACCEPTANCE[number] = (ok, detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}")
