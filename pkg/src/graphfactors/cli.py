"""Command-line interface: ``graphfactors {construct,rho,factor,verify,explore,g6}``.

Exit codes: 0 pass / success, 1 counterexample found, 2 parameter or parse
error, 3 eigenvalue iteration did not converge, 4 capacity exceeded,
5 sampled run with no counterexample (not a proof).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from collections import Counter
from pathlib import Path
from typing import Iterable, Iterator

from . import graph as gc
from .canon import canonical_form
from .enumeration import EnumerationSource, Sampler
from .errors import CapacityError, ConvergenceError, Graph6Error, ParameterError
from .factors import FactorQuery, Outcome, ab_factor, fractional_pm
from .graph import Graph, is_connected, min_degree
from .graph6 import parse_graph6, read_graph6_lines, write_graph6
from .spectral import DEFAULT_TOL, MAX_ITER, TIE_TOL, compare_rho, spectral_radius
from .theorems import (
    VARIANTS,
    VerificationReport,
    explore_problem_5_1,
    fmt_real,
    verify_cor_1_1,
    verify_lemma_suite,
    verify_thm_1_1,
    verify_thm_1_2,
    verify_thm_1_3,
    verify_thm_5_1,
)

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_USAGE, EXIT_CONVERGENCE, EXIT_CAPACITY, EXIT_SAMPLED = 0, 1, 2, 3, 4, 5

log = logging.getLogger("graphfactors")

# family -> (constructor, parameter names); trailing "*" takes any number of ints
FAMILIES = {
    "h_na": (gc.h_na, ["n", "a"]),
    "t_graph": (gc.t_graph, ["n", "b", "delta"]),
    "isolated_extremal": (gc.isolated_extremal, ["n", "b", "delta"]),
    "g_unique_pm": (gc.g_unique_pm, ["two_n"]),
    "g_unique_kfactor": (gc.g_unique_kfactor, ["two_n", "k"]),
    "pair_join": (gc.pair_join_graph, ["n", "t"]),
    "complete": (gc.complete, ["n"]),
    "empty": (gc.empty, ["n"]),
    "path": (gc.path, ["n"]),
    "cycle": (gc.cycle, ["n"]),
    "star": (gc.star, ["leaves"]),
    "complete_bipartite": (gc.complete_bipartite, ["p", "q"]),
    "petersen": (gc.petersen, []),
    "circulant": (lambda n, *offsets: gc.circulant(n, offsets), ["n", "offsets*"]),
}

THEOREMS = ("thm1.1", "thm1.2", "thm1.3", "cor1.1", "thm5.1", "lemmas")


class UsageError(ParameterError):
    pass


def _emit(obj: dict) -> None:
    sys.stdout.write(json.dumps(obj) + "\n")


def _g6(g: Graph) -> str:
    return write_graph6(g).decode("ascii")


def _graphs_from(arg: str | None) -> Iterator[Graph]:
    """The graph6 argument, or every non-blank stdin line."""
    if arg is not None:
        yield parse_graph6(arg)
        return
    for _, g in read_graph6_lines(sys.stdin.buffer):
        yield g


# -- construct ---------------------------------------------------------------------


def cmd_construct(args: argparse.Namespace) -> int:
    if args.family not in FAMILIES:
        raise UsageError(f"unknown family {args.family!r}; choose from {', '.join(sorted(FAMILIES))}")
    fn, names = FAMILIES[args.family]
    variadic = bool(names) and names[-1].endswith("*")
    fixed = len(names) - 1 if variadic else len(names)
    if len(args.params) < fixed or (not variadic and len(args.params) != fixed):
        raise UsageError(f"{args.family} takes parameters: {' '.join(names) or '(none)'}")
    g = fn(*args.params)
    code = _g6(g)
    stats = {"order": g.n, "size": g.num_edges, "min_degree": min_degree(g) if g.n else 0,
             "connected": is_connected(g)}
    if args.json:
        _emit({"graph6": code, **(stats if args.stats else {})})
    else:
        print(code)
        if args.stats:
            _emit(stats)
    return EXIT_OK


# -- rho ---------------------------------------------------------------------------------


def cmd_rho(args: argparse.Namespace) -> int:
    if args.tol <= 0:
        raise UsageError("--tol must be positive")
    other = parse_graph6(args.compare) if args.compare else None
    for g in _graphs_from(args.graph):
        spec = spectral_radius(g, args.tol, args.max_iter)
        out = {"graph6": _g6(g), "rho": fmt_real(spec.rho), "residual": fmt_real(spec.residual),
               "iterations": spec.iterations}
        if other is not None:
            order = compare_rho(g, other, args.tie_tol)
            out.update({"compare": args.compare, "rho_other": fmt_real(order.rho_h),
                        "verdict": order.verdict.value, "margin": fmt_real(order.margin)})
        _emit(out)
    return EXIT_OK


# -- factor ------------------------------------------------------------------------------


def _factor_query(args: argparse.Namespace) -> FactorQuery | None:
    if args.fractional:
        if args.a is not None or args.b is not None or args.odd:
            raise UsageError("--fractional cannot be combined with --a/--b/--odd")
        return None
    if args.a is None or args.b is None:
        raise UsageError("give --a and --b (or --fractional)")
    return FactorQuery(args.a, args.b, args.odd)


def cmd_factor(args: argparse.Namespace) -> int:
    q = _factor_query(args)
    for g in _graphs_from(args.graph):
        res = fractional_pm(g) if q is None else ab_factor(g, q)
        out: dict = {"graph6": _g6(g), "outcome": res.outcome.value, "method": res.method}
        if res.outcome is Outcome.FOUND:
            out["factor_edges"] = [list(e) for e in res.edges()]
            if res.fractional is not None:
                out["weights"] = [[u, v, float(w)] for (u, v), w in sorted(res.fractional.weights.items())]
        elif res.outcome is Outcome.REFUTED:
            out["witness"] = sorted(res.witness)
            out["violation"] = {"count": res.violation[0], "bound": res.violation[1]}
        else:
            out["exhaustive"] = bool(res.exhaustive)
        _emit(out)
    return EXIT_OK


# -- verify / explore ---------------------------------------------------------------------


def _source(args: argparse.Namespace, n: int | None, connected: bool = False) -> EnumerationSource | None:
    if args.source in (None, "internal"):
        if n is None:
            return None
        return EnumerationSource.internal(n, connected_only=connected or args.connected_only, dedup=args.dedup)
    path = Path(args.source)
    if not path.is_file():
        raise UsageError(f"--source: no such file {args.source}")
    return EnumerationSource.graph6(path, connected_only=connected or args.connected_only, dedup=args.dedup)


def _need(args: argparse.Namespace, *names: str) -> list[int]:
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.theorem} needs {' '.join(missing)}")
    return [getattr(args, n) for n in names]


def _sampler(args: argparse.Namespace) -> Sampler:
    return Sampler(seed=args.seed, count=args.samples, strategy=args.strategy)


def _write_report(report: VerificationReport, args: argparse.Namespace) -> int:
    text = report.to_json(timing=not args.deterministic)
    if args.out:
        Path(args.out).write_text(text)
        log.info("report written to %s", args.out)
    else:
        sys.stdout.write(text)
    log.info("%s: %s", report.theorem, report.summary)
    return {"pass": EXIT_OK, "fail": EXIT_COUNTEREXAMPLE, "no-counterexample": EXIT_SAMPLED,
            "evidence": EXIT_OK}[report.verdict]


def cmd_verify(args: argparse.Namespace) -> int:
    t = args.theorem
    if args.jobs < 1:
        raise UsageError("--jobs must be >= 1")
    if t == "thm1.1":
        (two_n,) = _need(args, "two_n")
        report = verify_thm_1_1(two_n, _source(args, two_n, connected=True), args.jobs)
    elif t == "thm1.3":
        n, a, b = _need(args, "n", "a", "b")
        report = verify_thm_1_3(n, a, b, _source(args, n), args.jobs)
    elif t == "cor1.1":
        n, k = _need(args, "n", "k")
        report = verify_cor_1_1(n, k, _source(args, n), args.jobs)
    elif t == "thm1.2":
        n, b, delta = _need(args, "n", "b", "delta")
        report = verify_thm_1_2(n, b, delta, _sampler(args))
    elif t == "thm5.1":
        n, delta = _need(args, "n", "delta")
        b = args.b if args.b is not None else 1
        if args.variant == "oneb" and args.b is None:
            raise UsageError("thm5.1 --variant oneb needs --b")
        report = verify_thm_5_1(n, b, delta, args.variant, _sampler(args))
    elif t == "lemmas":
        (n_max,) = _need(args, "n_max")
        report = verify_lemma_suite(n_max)
    else:  # argparse restricts choices
        raise UsageError(f"unknown theorem {t!r}")
    return _write_report(report, args)


def cmd_explore(args: argparse.Namespace) -> int:
    args.theorem = args.problem
    two_n, k = _need(args, "two_n", "k")
    if args.source in (None, "internal"):
        src = EnumerationSource.internal(two_n, connected_only=args.connected_only, dedup=True)
    else:
        src = _source(args, two_n)
    return _write_report(explore_problem_5_1(two_n, k, src, args.jobs, h_order=args.h_order), args)


# -- g6 -------------------------------------------------------------------------------------


def _read(path: str, lenient: bool) -> tuple[list[tuple[int, Graph]], list[tuple[int, str]]]:
    errors: list[tuple[int, str]] = []
    fh: Iterable[bytes] = sys.stdin.buffer if path == "-" else open(path, "rb")
    try:
        graphs = list(read_graph6_lines(fh, lenient=lenient, errors=errors))
    finally:
        if path != "-":
            fh.close()
    return graphs, errors


def cmd_g6(args: argparse.Namespace) -> int:
    graphs, errors = _read(args.file, args.lenient)
    for lineno, msg in errors:
        log.warning("skipped %s", msg)
    if args.action == "validate":
        out = {"status": "ok", "count": len(graphs), "skipped": [{"line": l, "error": m} for l, m in errors]}
        if args.json:
            _emit(out)
        else:
            print(f"ok: {len(graphs)} graphs" + (f", {len(errors)} malformed lines skipped" if errors else ""))
    elif args.action == "stats":
        orders = Counter(g.n for _, g in graphs)
        sizes = Counter(g.num_edges for _, g in graphs)
        out = {"count": len(graphs)}
        if len(orders) == 1:
            out["n"] = next(iter(orders))
        out["orders"] = {str(k): v for k, v in sorted(orders.items())}
        out["edges"] = {str(k): v for k, v in sorted(sizes.items())}
        out["connected"] = sum(1 for _, g in graphs if is_connected(g))
        if errors:
            out["skipped"] = len(errors)
        _emit(out)
    else:  # convert
        for _, g in graphs:
            if args.to == "edges":
                _emit({"n": g.n, "edges": [list(e) for e in g.edges()]})
            elif args.to == "canonical":
                print(_g6(canonical_form(g)))
            else:
                print(_g6(g))
    return EXIT_OK


# -- parser ------------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="graphfactors", description="Spectral thresholds and factor certificates for small graphs.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="print a graph family member as graph6")
    c.add_argument("family", help=", ".join(sorted(FAMILIES)))
    c.add_argument("params", type=int, nargs="*")
    c.add_argument("--stats", action="store_true", help="also report order, size, min degree, connectivity")
    c.add_argument("--json", action="store_true", help="emit a single JSON object")
    c.set_defaults(func=cmd_construct)

    r = sub.add_parser("rho", help="spectral radius of graph6 input (argument or stdin lines)")
    r.add_argument("graph", nargs="?")
    r.add_argument("--tol", type=float, default=DEFAULT_TOL)
    r.add_argument("--max-iter", type=int, default=MAX_ITER)
    r.add_argument("--tie-tol", type=float, default=TIE_TOL)
    r.add_argument("--compare", metavar="GRAPH6", help="order rho against this graph")
    r.add_argument("--json", action="store_true", help="accepted for symmetry; output is always JSON")
    r.set_defaults(func=cmd_rho)

    f = sub.add_parser("factor", help="decide an [a,b]-factor, odd [1,b]-factor or fractional perfect matching")
    f.add_argument("graph", nargs="?")
    f.add_argument("--a", type=int)
    f.add_argument("--b", type=int)
    f.add_argument("--odd", action="store_true")
    f.add_argument("--fractional", action="store_true")
    f.add_argument("--json", action="store_true", help="accepted for symmetry; output is always JSON")
    f.set_defaults(func=cmd_factor)

    def run_opts(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--source", help="'internal' (default) or a graph6 file")
        sp.add_argument("--connected-only", action="store_true")
        sp.add_argument("--dedup", action="store_true", help="one graph per isomorphism class")
        sp.add_argument("--jobs", type=int, default=1)
        sp.add_argument("--out", help="write the JSON report here instead of stdout")
        sp.add_argument("--deterministic", action="store_true", help="omit wall time from the report")
        sp.add_argument("--json", action="store_true", help="accepted for symmetry; reports are JSON")
        sp.add_argument("--two-n", type=int)
        sp.add_argument("--k", type=int)

    v = sub.add_parser("verify", help="run a theorem verification and write a JSON report")
    v.add_argument("theorem", choices=THEOREMS)
    run_opts(v)
    for name in ("--n", "--a", "--b", "--delta", "--n-max"):
        v.add_argument(name, type=int)
    v.add_argument("--variant", choices=VARIANTS, default="oneb")
    v.add_argument("--samples", type=int, default=10_000)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--strategy", choices=("uniform", "near_extremal", "mixed"), default="mixed")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("explore", help="gather evidence on unique k-factor extremal graphs")
    e.add_argument("problem", choices=("problem5.1",))
    e.add_argument("--h-order", type=int, help="order of the regular part H when k > n (default: k)")
    run_opts(e)
    e.set_defaults(func=cmd_explore)

    g = sub.add_parser("g6", help="validate, summarise or convert graph6 files")
    g.add_argument("action", choices=("validate", "stats", "convert"))
    g.add_argument("file", help="graph6 file, or - for stdin")
    g.add_argument("--lenient", action="store_true", help="skip malformed lines and report them")
    g.add_argument("--to", choices=("graph6", "edges", "canonical"), default="graph6")
    g.add_argument("--json", action="store_true")
    g.set_defaults(func=cmd_g6)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (ParameterError, Graph6Error) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE


if __name__ == "__main__":
    sys.exit(main())
