"""Cross-checks between brute force, closed forms, series and the embedded tables.

Every check compares two methods on a stated range and ends in one of four
states. Conjectured formulas that agree with the counts are reported as
``conjecture-confirmed`` together with the range that was actually covered;
nothing is promoted to ``exact`` on numerical evidence.
"""

from __future__ import annotations

import json
import logging
import time
from collections import Counter
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator

from genuscount import classic, genusforms as gf, pairings
from genuscount.app.cache import CountCache, cached_count
from genuscount.app.golden import GoldenCell, GoldenTables
from genuscount.core import PartitionType
from genuscount.enumeration import Constraint
from genuscount.genusforms import FormulaResult, Status
from genuscount.series import expansions as ex
from genuscount.series.base import Poly

log = logging.getLogger(__name__)

SCOPES = {"fast": 10, "standard": 12, "extended": 13, "full": 15}

EXACT = "exact-match"
CONFIRMED = "conjecture-confirmed"
MISMATCH = "mismatch"
UNAVAILABLE = "unavailable"


@dataclass
class CheckRecord:
    subject: str
    method_a: str
    method_b: str
    range: str
    status: str
    cells: int = 0
    first_divergence: dict | None = None
    note: str = ""

    def text(self) -> str:
        line = f"[{self.status}] {self.subject}: {self.method_a} vs {self.method_b} on {self.range} ({self.cells} cells)"
        if self.first_divergence:
            d = self.first_divergence
            line += f"; first divergence at {d['cell']}: {d['a']} != {d['b']}"
        if self.note:
            line += f"; {self.note}"
        return line


@dataclass
class VerificationReport:
    scope: str
    n_max: int
    golden_source: str
    records: list[CheckRecord] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not any(r.status == MISMATCH for r in self.records)

    def first_mismatch(self) -> CheckRecord | None:
        return next((r for r in self.records if r.status == MISMATCH), None)

    def summary(self) -> dict[str, int]:
        c = Counter(r.status for r in self.records)
        return {s: c.get(s, 0) for s in (EXACT, CONFIRMED, MISMATCH, UNAVAILABLE)}

    def to_json(self) -> dict:
        return {
            "scope": self.scope,
            "n_max": self.n_max,
            "golden": self.golden_source,
            "ok": self.ok,
            "summary": self.summary(),
            "records": [asdict(r) for r in self.records],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1) + "\n"

    @classmethod
    def from_json(cls, d: dict) -> "VerificationReport":
        return cls(d["scope"], d["n_max"], d["golden"], [CheckRecord(**r) for r in d["records"]])

    def text(self) -> str:
        lines = [f"verification scope {self.scope} (n <= {self.n_max}), golden data: {self.golden_source}"]
        lines += [r.text() for r in self.records]
        s = self.summary()
        lines.append("summary: " + ", ".join(f"{k} {v}" for k, v in s.items()))
        bad = self.first_mismatch()
        lines.append("result: OK" if bad is None else f"result: MISMATCH in {bad.subject}")
        return "\n".join(lines) + "\n"


class BudgetExceeded(RuntimeError):
    pass


@dataclass
class BruteData:
    n: int
    types: dict  # (PartitionType, g) -> count, singletons allowed

    def C(self) -> dict:
        return {(t, g): v for (t, g), v in self.types.items() if not t.singletons}

    def S(self, singletons: bool = True) -> dict:
        out: Counter = Counter()
        for (t, g), v in self.types.items():
            if singletons or not t.singletons:
                out[(t.length, g)] += v
        return dict(out)

    def B(self, singletons: bool = True) -> dict:
        out: Counter = Counter()
        for (k, g), v in self.S(singletons).items():
            out[g] += v
        return dict(out)


def _fmt_key(key) -> str:
    if isinstance(key, tuple):
        return ", ".join(str(k) for k in key)
    return str(key)


class Verifier:
    def __init__(self, scope: str = "fast", golden: GoldenTables | None = None,
                 cache: CountCache | None = None, workers: int | None = None,
                 budget: float | None = None, progress: Callable[[str], None] | None = None):
        if scope not in SCOPES:
            raise ValueError(f"unknown scope {scope!r}, expected one of {sorted(SCOPES)}")
        self.scope = scope
        self.n_max = SCOPES[scope]
        self.golden = golden if golden is not None else GoldenTables.embedded()
        self.cache = cache
        self.workers = workers
        self.deadline = None if budget is None else time.monotonic() + budget
        self.progress = progress or (lambda msg: None)
        self._brute: dict[int, BruteData] = {}
        self.report = VerificationReport(scope, self.n_max, self.golden.source)

    # brute force ----------------------------------------------------------

    def brute(self, n: int) -> BruteData:
        if n not in self._brute:
            if self.deadline is not None and time.monotonic() > self.deadline:
                raise BudgetExceeded(f"time budget exhausted before n={n}")
            self.progress(f"enumerating n={n}")
            t = cached_count(n, Constraint(), "type", cache=self.cache, workers=self.workers)
            self._brute[n] = BruteData(n, dict(t.counts))
        return self._brute[n]

    # record helpers --------------------------------------------------------

    def compare(self, subject: str, a: str, b: str, rng: str,
                pairs: Iterable[tuple[str, object, object]], conjectured: bool = False) -> CheckRecord:
        """``pairs`` yields (cell, value_a, value_b); a value_b of ``None`` means not available."""
        cells = 0
        skipped = 0
        first = None
        try:
            for cell, va, vb in pairs:
                if va is None or vb is None:
                    skipped += 1
                    continue
                cells += 1
                if va != vb:
                    first = {"cell": cell, "a": str(va), "b": str(vb)}
                    break
        except BudgetExceeded as exc:
            rec = CheckRecord(subject, a, b, rng, UNAVAILABLE, cells, note=str(exc))
            self.report.records.append(rec)
            return rec
        if first is not None:
            status = MISMATCH
        elif cells == 0:
            status = UNAVAILABLE
        else:
            status = CONFIRMED if conjectured else EXACT
        note = f"{skipped} cells without a value" if skipped else ""
        rec = CheckRecord(subject, a, b, rng, status, cells, first, note)
        self.report.records.append(rec)
        if status == MISMATCH:
            log.error(rec.text())
        return rec

    def compare_formula(self, subject: str, a: str, rng: str,
                        pairs: Iterable[tuple[str, FormulaResult, int]]) -> CheckRecord:
        """Like :meth:`compare` with a formula on side A; its weakest status sets the label."""
        seen = {"conj": False}

        def gen():
            for cell, res, truth in pairs:
                if res.status is Status.UNAVAILABLE:
                    yield cell, None, truth
                    continue
                if res.status is Status.CONJECTURED:
                    seen["conj"] = True
                yield cell, res.value, truth

        rec = self.compare(subject, a, "enumerate", rng, gen())
        if rec.status == EXACT and seen["conj"]:
            rec.status = CONFIRMED
        return rec

    def brute_range(self, lo: int = 1) -> range:
        return range(lo, self.n_max + 1)

    # suites ---------------------------------------------------------------

    def run(self) -> VerificationReport:
        for suite in (self.golden_appendix, self.golden_other_tables, self.formulas_vs_counts,
                      self.sum_rules, self.series_checks, self.pairing_checks, self.chi_checks):
            self.progress(f"suite {suite.__name__}")
            suite()
        return self.report

    def golden_appendix(self) -> None:
        """C, S and S-hat tables against enumeration, one record per table and n."""
        g = self.golden
        for table, lo, pick in (("types", 2, lambda d: d.C()), ("stirling", 1, lambda d: d.S()),
                                ("assoc_stirling", 2, lambda d: d.S(False))):
            hi = min(self.n_max, g.n_range(table)[1])
            for n in range(lo, hi + 1):
                cells = [c for c in g.cells(table) if c.key[0] == n]
                self.compare(f"{table} n={n}", "golden", "enumerate", f"n={n}",
                             _golden_pairs(cells, lambda: pick(self.brute(n)), table, n))

    def golden_other_tables(self) -> None:
        g = self.golden
        eps = list(g.cells("pairings"))
        krange = f"k={min(c.key[0] for c in eps)}..{max(c.key[0] for c in eps)}"
        self.compare("pairings table", "golden", "epsilon (series coefficient)", krange,
                     ((c.label(), c.value, pairings.epsilon(c.key[0], c.genus)) for c in eps))
        self.compare("pairings table", "golden", "epsilon (three-term recurrence)", krange,
                     ((c.label(), c.value, pairings.epsilon_recurrence_hz(c.key[0], c.genus)) for c in eps))
        small = [c for c in eps if 2 * c.key[0] <= self.n_max]
        self.compare("pairings table", "golden", "enumerate", f"2k<={self.n_max}",
                     ((c.label(), c.value, self.brute(2 * c.key[0]).types.get((PartitionType((2,) * c.key[0]), c.genus), 0))
                      for c in small))

        tp = list(g.cells("two_part_5"))
        nr = f"n={min(c.key[0] for c in tp)}..{max(c.key[0] for c in tp)}"
        self.compare("two_part_5 table", "golden", "two_part", nr,
                     ((c.label(), c.value, gf.two_part(c.key[0], 5, c.genus)) for c in tp))
        self.compare("two_part_5 table", "golden", "two_part_transfer", nr,
                     ((c.label(), c.value, gf.two_part_transfer(c.key[0], 5, c.genus)) for c in tp))
        self.compare("two_part_5 table", "golden", "enumerate", f"n<={self.n_max}",
                     ((c.label(), c.value, self.brute(c.key[0]).types.get((PartitionType((5, c.key[0] - 5)), c.genus), 0))
                      for c in tp if c.key[0] <= self.n_max))

        eb = list(g.cells("equal_blocks"))
        note = "rows marked partial are compared on their printed prefix"

        def by_formula(c: GoldenCell):
            p, k = c.key
            if p == 2:
                return FormulaResult.exact(pairings.epsilon(k, c.genus))
            if k == 1:
                return FormulaResult.exact(1 if c.genus == 0 else 0)
            if k == 2:
                return FormulaResult.exact(gf.p_squared(p, c.genus))
            if c.genus == 0:
                return FormulaResult.exact(gf.kreweras(p * k, PartitionType((p,) * k)))
            if c.genus == 1:
                return gf.pk_genus1(p, k)
            if c.genus == 2 and 3 <= k <= 5:
                return gf.pk_genus2(p, k)
            return FormulaResult.unavailable()

        rec = self.compare_formula("equal_blocks table", "formulas", "p, k as printed",
                                   ((c.label(), by_formula(c), c.value) for c in eb))
        rec.method_b, rec.note = "golden", (rec.note + "; " if rec.note else "") + note
        self.compare("equal_blocks table", "golden", "enumerate", f"pk<={self.n_max}",
                     ((c.label(), c.value, self.brute(c.key[0] * c.key[1]).types.get((PartitionType((c.key[0],) * c.key[1]), c.genus), 0))
                      for c in eb if c.key[0] * c.key[1] <= self.n_max))

    def formulas_vs_counts(self) -> None:
        rng = f"n=1..{self.n_max}"

        def stirling_cells(g):
            for n in self.brute_range():
                S = self.brute(n).S()
                for k in range(1, n + 1):
                    yield f"S[{n},{k}] g={g}", gf.stirling_genus(n, k, g), S.get((k, g), 0)

        for g in range(0, 5):
            self.compare_formula(f"stirling_genus g={g}", "stirling_genus", rng, stirling_cells(g))

        def bell_cells(g, singletons):
            fn = gf.bell_genus if singletons else gf.assoc_bell_genus
            for n in self.brute_range(1 if singletons else 2):
                B = self.brute(n).B(singletons)
                yield f"B[{n}] g={g}", fn(n, g), B.get(g, 0)

        for g in range(0, 5):
            self.compare_formula(f"bell_genus g={g}", "bell_genus", rng, bell_cells(g, True))
            self.compare_formula(f"assoc_bell_genus g={g}", "assoc_bell_genus", rng, bell_cells(g, False))

        def hat_cells():
            for n in self.brute_range(2):
                S = self.brute(n).S(False)
                for k in range(1, n // 2 + 1):
                    for g in (0, 1):
                        yield f"Shat[{n},{k}] g={g}", gf.assoc_stirling_genus(n, k, g), S.get((k, g), 0)

        self.compare_formula("assoc_stirling_genus g<=1", "assoc_stirling_genus", rng, hat_cells())

        def k3_cells():
            for n in self.brute_range(3):
                S = self.brute(n).S()
                for g in range(0, (n - 1) // 2 + 1):
                    yield f"S[{n},3] g={g}", gf.stirling_k3_conjecture(n, g), S.get((3, g), 0)

        self.compare_formula("three-block ansatz", "stirling_k3_conjecture", rng, k3_cells())

        def k2_cells():
            for n in self.brute_range(2):
                S = self.brute(n).S()
                for g in range(0, n // 2 + 1):
                    yield f"S[{n},2] g={g}", FormulaResult.exact(gf.stirling_k2(n, g)), S.get((2, g), 0)

        self.compare_formula("two-block count", "stirling_k2", rng, k2_cells())

        def type_cells(select, formula):
            for n in self.brute_range():
                T = self.brute(n).types
                for t in classic.integer_partitions(n):
                    if not select(t):
                        continue
                    for g in range(0, n // 2 + 1):
                        res = formula(n, t, g)
                        if res is not None:
                            yield f"[{t.key()}] g={g}", res, T.get((t, g), 0)

        self.compare_formula("kreweras (genus 0 by type)", "kreweras", rng,
                             type_cells(lambda t: True, lambda n, t, g: FormulaResult.exact(gf.kreweras(n, t)) if g == 0 else None))
        self.compare_formula("two_part", "two_part", rng,
                             type_cells(lambda t: t.length == 2,
                                        lambda n, t, g: FormulaResult.exact(gf.two_part(n, t.parts[0], g))))
        self.compare_formula("three_part g<=1", "three_part", rng,
                             type_cells(lambda t: t.length == 3,
                                        lambda n, t, g: gf.three_part(n, t.parts[0], t.parts[1], g) if g <= 1 else None))

        def pk(n, t, g):
            if len(set(t.parts)) != 1 or t.length < 3 or t.parts[0] < 3:
                return None
            p, k = t.parts[0], t.length
            if g == 1:
                return gf.pk_genus1(p, k)
            if g == 2 and k <= 5:
                return gf.pk_genus2(p, k)
            return None

        self.compare_formula("equal blocks g=1,2", "pk_genus1/pk_genus2", rng, type_cells(lambda t: True, pk))
        self.compare_formula("pairings", "epsilon", rng,
                             type_cells(lambda t: set(t.parts) == {2},
                                        lambda n, t, g: FormulaResult.exact(pairings.epsilon(t.length, g))))

    def sum_rules(self) -> None:
        rng = f"n=1..{self.n_max}"

        def gen():
            for n in self.brute_range():
                d = self.brute(n)
                S, Sh = d.S(), d.S(False)
                yield f"B[{n}]", sum(d.B().values()), classic.bell(n)
                yield f"Bhat[{n}]", sum(d.B(False).values()), classic.assoc_bell(n)
                for k in range(1, n + 1):
                    yield f"S[{n},{k}]", sum(v for (kk, _), v in S.items() if kk == k), classic.stirling2(n, k)
                    yield f"Shat[{n},{k}]", sum(v for (kk, _), v in Sh.items() if kk == k), classic.ward(n, k)
                    yield f"S[{n},{k}] g=0", S.get((k, 0), 0), gf.narayana(n, k)
                for t in classic.integer_partitions(n):
                    yield f"C[{n},[{t.key()}]]", sum(v for (tt, _), v in d.types.items() if tt == t), classic.faa_di_bruno(n, t)

        self.compare("sum over genus", "enumerate", "classic numbers", rng, gen())

        def singletons():
            # S^(g)_(n,k) = sum_j C(n, j) Shat^(g)_(n-j, k-j): removing singletons keeps the genus
            for n in self.brute_range():
                S = self.brute(n).S()
                hats = {m: (self.brute(m).S(False) if m > 0 else {(0, 0): 1}) for m in range(0, n + 1)}
                for (k, g), v in sorted(S.items()):
                    rhs = sum(classic.binom(n, j) * hats[n - j].get((k - j, g), 0) for j in range(0, k + 1))
                    yield f"S[{n},{k}] g={g}", v, rhs

        self.compare("singleton removal", "enumerate S", "binomial sum of S-hat", rng, singletons())

        def ward_forms():
            for n in range(1, 21):
                for k in range(1, n // 2 + 1):
                    yield f"Shat[{n},{k}]", classic.ward(n, k), classic.ward_from_eulerian(n, k)

        self.compare("associated Stirling numbers", "ward", "ward_from_eulerian", "n=1..20", ward_forms())

        def two_part_rules():
            for n in range(2, 21):
                for p in range(1, n):
                    for g in range(0, n // 2 + 1):
                        yield f"[{p},{n - p}] g={g}", gf.two_part(n, p, g), gf.two_part_transfer(n, p, g)

        self.compare("two_part", "two_part", "two_part_transfer", "1<=p<n<=20", two_part_rules())

        def two_part_sums():
            for n in range(2, 21):
                for p in range(1, n):
                    total = sum(gf.two_part(n, p, g) for g in range(0, n // 2 + 1))
                    want = Fraction(classic.binom(n, p), 2 if 2 * p == n else 1)
                    yield f"[{p},{n - p}]", total, want

        self.compare("two_part sum over genus", "two_part", "binomial", "1<=p<n<=20", two_part_sums())

        def eps_sums():
            for k in range(0, 16):
                yield f"[2^{k}]", sum(pairings.epsilon(k, g) for g in range(0, k // 2 + 1)), classic.double_factorial(2 * k - 1)

        self.compare("pairings sum over genus", "epsilon", "(2k-1)!!", "k=0..15", eps_sums())

    def series_checks(self) -> None:
        N = 15

        def bell_vs_formula():
            for g in range(0, 4):
                s = ex.expand_bell_gf(g, N)
                for n in range(1, N + 1):
                    yield f"B[{n}] g={g}", s[n], gf.bell_genus(n, g).value

        self.compare("Bell generating functions g<=3", "expand_bell_gf", "bell_genus", f"n<={N}", bell_vs_formula())

        def stirling_at_one():
            for g in range(0, 4):
                s = ex.expand_stirling_gf(g, N)
                b = ex.expand_bell_gf(g, N)
                for n in range(1, N + 1):
                    yield f"B[{n}] g={g}", s[n].specialize(0, 1).const_value(), b[n]

        self.compare("Stirling series at y=1, g<=3", "expand_stirling_gf(x, 1)", "expand_bell_gf", f"n<={N}", stirling_at_one())

        def stirling_vs_brute(singletons):
            top = 3 if singletons else 2
            for g in range(0, top + 1):
                s = (ex.expand_stirling_gf if singletons else ex.expand_assoc_stirling_gf)(g, self.n_max)
                for n in self.brute_range(1 if singletons else 2):
                    S = self.brute(n).S(singletons)
                    for k in range(1, n + 1):
                        yield f"S[{n},{k}] g={g}", s[n].coeff((k,)), S.get((k, g), 0)

        rng = f"n<={self.n_max}"
        self.compare("Stirling series g<=3", "expand_stirling_gf", "enumerate", rng, stirling_vs_brute(True))
        self.compare("singleton-free Stirling series g<=2", "expand_assoc_stirling_gf", "enumerate", rng, stirling_vs_brute(False))

        def assoc_bell_vs_brute():
            for g in range(0, 4):
                s = ex.expand_assoc_bell_gf(g, self.n_max)
                for n in self.brute_range(2):
                    yield f"Bhat[{n}] g={g}", s[n], self.brute(n).B(False).get(g, 0)

        self.compare("singleton-free Bell series g<=3", "expand_assoc_bell_gf", "enumerate", rng, assoc_bell_vs_brute())

        Nk = self.n_max
        Z0 = ex.solve_Z0(Nk, Nk)
        Z1 = ex.solve_Z1(Nk, Nk, Z0)

        def kappa(Z, g, source):
            for n in range(1, Nk + 1):
                for t in classic.integer_partitions(n):
                    if source == "golden" and (t.singletons or n < 2):
                        continue
                    want = self.golden.types(n).get((t, g), 0) if source == "golden" else self.brute(n).types.get((t, g), 0)
                    yield f"[{t.key()}] g={g}", ex.kappa_coefficient(Z, n, t.parts), want

        self.compare("genus-0 kappa series", "solve_Z0", "enumerate", f"n<={Nk}", kappa(Z0, 0, "brute"))
        self.compare("genus-1 kappa series", "solve_Z1", "enumerate", f"n<={Nk}", kappa(Z1, 1, "brute"))
        self.compare("genus-1 kappa series", "solve_Z1", "golden", f"n<={Nk}", kappa(Z1, 1, "golden"))

        def two_part_series():
            for g in range(0, 4):
                s = gf.two_part_gf(g, 16)
                for n in range(2, 17):
                    for p in range(1, n // 2 + 1):
                        yield f"[{p},{n - p}] g={g}", gf.two_part_from_gf(s, n, p), gf.two_part(n, p, g)

        self.compare("two-part series", "two_part_gf", "two_part", "n<=16", two_part_series())

    def pairing_checks(self) -> None:
        def gf_vs_eps():
            for g in range(0, 8):
                s = pairings.pairings_gf(g, 15)
                for k in range(0, 16):
                    yield f"eps_{g}({k})", s[k], pairings.epsilon(k, g)

        self.compare("pairings series", "pairings_gf", "epsilon", "g<=7, k<=15", gf_vs_eps())

        def routes():
            for g in range(0, 8):
                for k in range(0, 16):
                    e = pairings.epsilon(k, g)
                    yield f"eps_{g}({k}) rec", pairings.epsilon_recurrence_hz(k, g), e
                    yield f"eps_{g}({k}) R", pairings.epsilon_from_R(k, g), e
                    if g >= 1:
                        lhs, rhs = pairings.epsilon_recurrence_chapuy(k, g)
                        yield f"eps_{g}({k}) genus recurrence", lhs, rhs

        self.compare("pairings identities", "epsilon", "recurrences and R_g", "g<=7, k<=15", routes())

        def q_constant():
            from math import factorial
            for g in range(1, 9):
                yield f"Q^({g})(0)", pairings.Q_poly(g)(0), Fraction(factorial(4 * g), 2 ** (2 * g) * factorial(2 * g + 1))

        self.compare("Q constant term", "Q_poly", "(4g)!/(2^(2g)(2g+1)!)", "g=1..8", q_constant())

    def chi_checks(self) -> None:
        def gen():
            for g in range(1, 5):
                rep = gf.chi_structure_checks(gf.chi_array(g))
                for name, ok, _ in rep.checks:
                    yield f"chi^({g}) {name}", ok, True

        self.compare("chi array structure", "chi_structure_checks", "expected", "g=1..4", gen())


def _golden_pairs(cells: list[GoldenCell], brute: Callable[[], dict], table: str, n: int) -> Iterator:
    """Cell-by-cell comparison; also flags brute-force cells missing from the table."""
    if not cells:
        return
    counts = brute()
    seen = set()
    for c in cells:
        key = (c.key[1], c.genus)
        seen.add(key)
        yield c.label(), c.value, counts.get(key, 0)
    for key, v in sorted(counts.items(), key=lambda kv: (_fmt_key(kv[0]))):
        if key not in seen and v:
            yield f"{table}[{n}, {key[0]}] g={key[1]} (not in table)", 0, v


def run_verification(scope: str = "fast", **kw) -> VerificationReport:
    return Verifier(scope, **kw).run()
