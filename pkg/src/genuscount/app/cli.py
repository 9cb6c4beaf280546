"""Command-line interface: ``genuscount <command> ...``.

Exit codes: 0 success, 1 verification mismatch, 2 invalid arguments or
out-of-domain parameters, 3 underdetermined fit, 4 inconsistent fit.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
import time
from pathlib import Path

from genuscount import genusforms as gf, pairings
from genuscount.app import oeis, tables
from genuscount.app.cache import CountCache, cached_count, default_cache_dir
from genuscount.app.golden import GoldenTables
from genuscount.app.verify import SCOPES, Verifier
from genuscount.core import PartitionType
from genuscount.enumeration import Constraint, ConstraintError, count_table
from genuscount.genusforms import FormulaResult
from genuscount.series.fitting import ASSUMPTIONS, FAMILIES, fit_chi, fit_numerator

log = logging.getLogger("genuscount")

EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_PARTIAL = 3
EXIT_INCONSISTENT = 4


class UsageError(Exception):
    pass


def _cache(args) -> CountCache | None:
    root = args.cache if getattr(args, "cache", None) else default_cache_dir()
    return CountCache(root) if root else None


def _progress(args):
    if not args.verbose:
        return None
    return lambda msg: print(msg, file=sys.stderr, flush=True)


# count ---------------------------------------------------------------------


def cmd_count(args) -> int:
    try:
        c = Constraint(min_block_size=2 if args.no_singletons else 1, parts=args.parts,
                       ctype=PartitionType.parse(args.type) if args.type else None)
        c.check_n(args.n)
    except (ConstraintError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    table = cached_count(args.n, c, args.by, cache=_cache(args), workers=args.threads)
    items = table.sorted_items()
    if args.format == "json":
        d = table.to_json()
        d.pop("meta")
        out = json.dumps(d, indent=1) + "\n"
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if args.by == "genus":
            w.writerow(["genus", "count"])
            w.writerows([g, v] for g, v in items)
        else:
            w.writerow(["k" if args.by == "parts" else "type", "genus", "count"])
            w.writerows([k if args.by == "parts" else k.key(), g, v] for (k, g), v in items)
        out = buf.getvalue()
    elif args.by == "genus":
        out = " ".join(f"{g}:{v}" for g, v in items) + "\n"
    else:
        rows: dict = {}
        for (k, g), v in items:
            rows.setdefault(k, []).append(f"{g}:{v}")
        out = "".join(f"{k}  {' '.join(vs)}\n" for k, vs in rows.items())
    sys.stdout.write(out)
    return 0


# formula -------------------------------------------------------------------


def _as_result(v) -> FormulaResult:
    return v if isinstance(v, FormulaResult) else FormulaResult.exact(v)


def _need(args, *names):
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.family} needs {' '.join(missing)}")


def _count_in_range(n: int, lo: int, what: str) -> None:
    if n < lo:
        raise UsageError(f"{what} must be at least {lo}")


def evaluate_formula(args) -> str:
    fam = args.family
    if fam in ("q-poly", "r-poly"):
        _need(args, "g")
        if fam == "q-poly":
            _count_in_range(args.g, 1, "g")
            return pairings.Q_poly(args.g).format("u") + " (exact)"
        _count_in_range(args.g, 0, "g")
        return pairings.R_poly(args.g).format("k") + " (exact)"
    if fam == "epsilon":
        _need(args, "k", "g")
        _count_in_range(args.k, 0, "k")
        _count_in_range(args.g, 0, "g")
        return str(_as_result(pairings.epsilon(args.k, args.g)))
    _need(args, "g")
    _count_in_range(args.g, 0, "g")
    if fam == "pk":
        _need(args, "p", "k")
        _count_in_range(args.p, 1, "p")
        _count_in_range(args.k, 1, "k")
        if args.g == 1:
            return str(gf.pk_genus1(args.p, args.k))
        if args.g == 2:
            return str(gf.pk_genus2(args.p, args.k))
        if args.k == 2:
            return str(_as_result(gf.p_squared(args.p, args.g)))
        raise UsageError("pk covers g = 1, 2 (and k = 2 for any g)")
    _need(args, "n")
    _count_in_range(args.n, 1, "n")
    n, g = args.n, args.g
    if fam == "bell-genus":
        return str(gf.bell_genus(n, g))
    if fam == "assoc-bell-genus":
        return str(gf.assoc_bell_genus(n, g))
    if fam == "k3":
        return str(gf.stirling_k3_conjecture(n, g))
    if fam in ("stirling-genus", "assoc-stirling-genus"):
        _need(args, "k")
        _count_in_range(args.k, 1, "k")
        fn = gf.stirling_genus if fam == "stirling-genus" else gf.assoc_stirling_genus
        return str(fn(n, args.k, g))
    if fam == "two-part":
        _need(args, "p")
        if not 1 <= args.p < n:
            raise UsageError("two-part needs 1 <= p < n")
        return str(_as_result(gf.two_part(n, args.p, g)))
    if fam == "three-part":
        _need(args, "p", "q")
        if args.p < 1 or args.q < 1 or args.p + args.q >= n:
            raise UsageError("three-part needs p, q >= 1 and p + q < n")
        return str(gf.three_part(n, args.p, args.q, g))
    raise UsageError(f"unknown formula family {fam!r}")


FORMULA_FAMILIES = ("two-part", "three-part", "epsilon", "bell-genus", "assoc-bell-genus", "stirling-genus",
                    "assoc-stirling-genus", "k3", "pk", "q-poly", "r-poly")


def cmd_formula(args) -> int:
    try:
        out = evaluate_formula(args)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    print(out)
    return 0


# table ---------------------------------------------------------------------


def cmd_table(args) -> int:
    lo = args.n if args.n is not None else args.n_min
    hi = args.n if args.n is not None else args.n_max
    if lo is None or hi is None or lo > hi:
        raise UsageError("give --n or both --n-min and --n-max")
    first = 2 if args.kind in ("C", "Shat") else 1
    if lo < first:
        raise UsageError(f"{args.kind} tables start at n={first}")
    golden = GoldenTables.embedded() if args.source == "golden" else None
    if golden is not None and hi > golden.n_range("types")[1]:
        raise UsageError("the embedded tables stop at n=15")
    built = []
    for n in range(lo, hi + 1):
        if golden is not None:
            built.append(tables.from_golden(golden, args.kind, n))
        else:
            t = cached_count(n, Constraint(), "type", cache=_cache(args), workers=args.threads)
            built.append(tables.from_types(args.kind, n, t.counts))
    text = tables.render(built, args.format)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


# verify --------------------------------------------------------------------


def cmd_verify(args) -> int:
    golden = GoldenTables.load(args.golden) if args.golden else GoldenTables.embedded()
    v = Verifier(args.scope, golden=golden, cache=_cache(args), workers=args.threads,
                 budget=args.budget, progress=_progress(args))
    report = v.run()
    text = report.dumps() if args.format == "json" else report.text()
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    bad = report.first_mismatch()
    if bad is not None:
        d = bad.first_divergence
        print(f"mismatch: {bad.subject} at {d['cell']} ({bad.method_a} {d['a']} != {bad.method_b} {d['b']})", file=sys.stderr)
        return EXIT_MISMATCH
    return 0


# fit -----------------------------------------------------------------------


def stirling_data(g: int, source: str, max_n: int, cache=None, workers=None) -> dict[tuple[int, int], int]:
    """Genus-g Stirling numbers for every (n, k) with n <= max_n, zeros included."""
    data = {}
    golden = GoldenTables.embedded() if source == "golden" else None
    for n in range(1, max_n + 1):
        if source == "brute":
            counts = cached_count(n, Constraint(), "parts", cache=cache, workers=workers).counts
        elif source == "golden":
            counts = golden.stirling(n)
        else:
            raise UsageError(f"unknown data source {source!r}")
        for k in range(1, n + 1):
            data[(n, k)] = counts.get((k, g), 0)
    return data


def sequence_data(family: str, g: int, source: str, max_n: int, cache=None, workers=None) -> list[int]:
    if family == "pairings":
        if source == "formula":
            return [pairings.epsilon(k, g) for k in range(max_n + 1)]
        if source == "golden":
            e = GoldenTables.embedded().pairings()
            return [1 if (k == 0 and g == 0) else e.get((k, g), 0) for k in range(min(max_n, 8) + 1)]
        seq = [1 if g == 0 else 0]
        for k in range(1, max_n // 2 + 1):
            t = cached_count(2 * k, Constraint(ctype=PartitionType((2,) * k)), "genus", cache=cache, workers=workers)
            seq.append(t.get(g))
        return seq
    singletons = family == "bell"
    if source == "formula":
        fn = gf.bell_genus if singletons else gf.assoc_bell_genus
        seq = [0]
        for n in range(1, max_n + 1):
            r = fn(n, g)
            if r.status is not gf.Status.EXACT:
                break
            seq.append(r.value)
        return seq
    seq = [0]
    for n in range(1, max_n + 1):
        if source == "brute":
            c = Constraint(min_block_size=1 if singletons else 2)
            seq.append(cached_count(n, c, "genus", cache=cache, workers=workers).get(g))
        elif source == "golden":
            golden = GoldenTables.embedded()
            if n < 2 and not singletons:
                seq.append(0)
                continue
            seq.append(sum(v for (k, gg), v in golden.stirling(n, singletons).items() if gg == g))
        else:
            raise UsageError(f"unknown data source {source!r}")
    return seq


def cmd_fit(args) -> int:
    if args.target == "chi":
        if args.g < 1:
            raise UsageError("chi arrays exist for g >= 1")
        max_n = args.max_n if args.max_n is not None else (12 if args.source == "brute" else 15)
        data = stirling_data(args.g, args.source, max_n, _cache(args), args.threads)
        fit = fit_chi(args.g, data, assume=args.assume or ())
        if args.format == "json":
            print(fit.dumps())
        else:
            print(f"chi^({args.g}) from {args.source} data n<={max_n}: {fit.status}")
            print(f"equations {fit.equations}, rank {fit.rank}, surplus checks {fit.surplus}, assumptions {list(fit.assumptions) or 'none'}")
            if fit.chi is not None:
                print(fit.chi.dumps() if hasattr(fit.chi, "dumps") else fit.chi)
            if fit.missing:
                print("missing cells: " + " ".join(f"({t},{s})" for t, s in fit.missing))
            if fit.conflict:
                print(f"conflicting data at {fit.conflict}")
        return {"solved": 0, "partial": EXIT_PARTIAL, "inconsistent": EXIT_INCONSISTENT}[fit.status]
    if args.g < 1:
        raise UsageError("numerator fits need g >= 1")
    max_n = args.max_n if args.max_n is not None else 15
    seq = sequence_data(args.family, args.g, args.source, max_n, _cache(args), args.threads)
    fit = fit_numerator(seq, args.g, args.family)
    if args.format == "json":
        print(json.dumps(fit.to_json(), indent=2))
    elif fit.ok:
        print(fit.polynomial.format("x"))
    else:
        print(f"no fit: {fit.reason}")
    if fit.ok:
        return 0
    return EXIT_PARTIAL if fit.first_excess is None else EXIT_INCONSISTENT


# oeis ----------------------------------------------------------------------


def cmd_oeis(args) -> int:
    if args.generator:
        params = {}
        for p in args.param or []:
            k, _, v = p.partition("=")
            if not v:
                raise UsageError(f"bad --param {p!r}, expected name=value")
            params[k] = int(v)
        if args.generator not in oeis.GENERATORS:
            raise UsageError(f"unknown generator {args.generator!r}; known: {', '.join(oeis.GENERATORS)}")
        binding = oeis.Binding(args.sequence or "custom", args.generator, args.shift or 0, params)
    else:
        binding = oeis.BINDINGS.get(args.sequence) if args.sequence else oeis.binding_for(args.bfile)
        if binding is None:
            raise UsageError(f"no binding for {args.sequence or args.bfile}; known: {', '.join(oeis.BINDINGS)}")
    try:
        entries = oeis.read_bfile(args.bfile)
    except oeis.BFileError as exc:
        print(f"{args.bfile}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        raise UsageError(str(exc)) from None
    rep = oeis.check(entries, binding, args.limit)
    print(json.dumps(rep.to_json(), indent=1) if args.format == "json" else rep.text())
    return 0 if rep.ok else EXIT_MISMATCH


# bench ---------------------------------------------------------------------


def cmd_bench(args) -> int:
    from genuscount.classic import bell

    t0 = time.perf_counter()
    table = count_table(args.n, Constraint(), args.by, workers=args.threads, depth=args.depth)
    dt = time.perf_counter() - t0
    total = table.total()
    if total != bell(args.n):
        print(f"count {total} differs from B_{args.n} = {bell(args.n)}", file=sys.stderr)
        return EXIT_MISMATCH
    print(f"n={args.n} partitions={total} mode={args.by} workers={table.meta['workers']} "
          f"units={table.meta['units']} seconds={dt:.2f} rate={total / dt:,.0f}/s")
    return 0


# parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="genuscount", description="Genus-refined counts of set partitions.")
    p.add_argument("-v", "--verbose", action="store_true", help="progress messages on stderr")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, threads=True, cache=True):
        if threads:
            sp.add_argument("--threads", type=int, default=None, help="worker processes (default $GENUSCOUNT_THREADS or 1)")
        if cache:
            sp.add_argument("--cache", default=None, help="cache directory (default $GENUSCOUNT_CACHE)")

    c = sub.add_parser("count", help="count partitions of {1..n} by genus")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--parts", type=int, default=None, help="exact number of blocks")
    c.add_argument("--type", default=None, help="block-size type such as 2^2,3")
    c.add_argument("--no-singletons", action="store_true")
    c.add_argument("--by", choices=("genus", "parts", "type"), default="genus", help="aggregation key")
    c.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common(c)
    c.set_defaults(func=cmd_count)

    f = sub.add_parser("formula", help="evaluate a closed form with its status")
    f.add_argument("family", choices=FORMULA_FAMILIES)
    for name in ("n", "k", "g", "p", "q"):
        f.add_argument(f"--{name}", type=int, default=None)
    f.set_defaults(func=cmd_formula)

    t = sub.add_parser("table", help="emit C, S or S-hat tables")
    t.add_argument("--kind", choices=tables.KINDS, default="S")
    t.add_argument("--n", type=int, default=None)
    t.add_argument("--n-min", type=int, default=None)
    t.add_argument("--n-max", type=int, default=None)
    t.add_argument("--source", choices=("brute", "golden"), default="brute")
    t.add_argument("--format", choices=tables.FORMATS, default="text")
    t.add_argument("--out", default=None)
    common(t)
    t.set_defaults(func=cmd_table)

    v = sub.add_parser("verify", help="run the cross-check suites")
    v.add_argument("--scope", choices=tuple(SCOPES), default="fast")
    v.add_argument("--budget", type=float, default=None, help="seconds; later enumerations are skipped once exceeded")
    v.add_argument("--golden", default=None, help="compare against this golden JSON instead of the embedded copy")
    v.add_argument("--format", choices=("text", "json"), default="text")
    v.add_argument("--out", default=None)
    common(v)
    v.set_defaults(func=cmd_verify)

    fi = sub.add_parser("fit", help="fit chi arrays or generating-function numerators")
    fsub = fi.add_subparsers(dest="target", required=True)
    fc = fsub.add_parser("chi")
    fc.add_argument("--g", type=int, required=True)
    fc.add_argument("--source", choices=("brute", "golden"), default="brute")
    fc.add_argument("--max-n", type=int, default=None)
    fc.add_argument("--assume", action="append", choices=ASSUMPTIONS, help="structural assumption (repeatable)")
    fc.add_argument("--format", choices=("text", "json"), default="text")
    common(fc)
    fc.set_defaults(func=cmd_fit)
    fn = fsub.add_parser("numerator")
    fn.add_argument("--family", choices=FAMILIES, required=True)
    fn.add_argument("--g", type=int, required=True)
    fn.add_argument("--source", choices=("formula", "brute", "golden"), default="formula")
    fn.add_argument("--max-n", type=int, default=None)
    fn.add_argument("--format", choices=("text", "json"), default="text")
    common(fn)
    fn.set_defaults(func=cmd_fit)

    o = sub.add_parser("oeis", help="compare a b-file with a generated sequence")
    o.add_argument("bfile")
    o.add_argument("--sequence", default=None, help=f"binding, one of {', '.join(oeis.BINDINGS)}")
    o.add_argument("--generator", default=None, help=f"custom generator: {', '.join(oeis.GENERATORS)}")
    o.add_argument("--param", action="append", help="generator parameter name=value")
    o.add_argument("--shift", type=int, default=None, help="generator argument minus b-file index")
    o.add_argument("--limit", type=int, default=None)
    o.add_argument("--format", choices=("text", "json"), default="text")
    o.set_defaults(func=cmd_oeis)

    b = sub.add_parser("bench", help="time a full enumeration")
    b.add_argument("--n", type=int, default=10)
    b.add_argument("--by", choices=("genus", "parts", "type"), default="genus")
    b.add_argument("--depth", type=int, default=None)
    common(b, cache=False)
    b.set_defaults(func=cmd_bench)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"genuscount {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
