"""Command-line front end.

Exit codes: 0 ok, 1 input error, 2 timeout / incomplete, 3 refuted
(verification violations, or a conjecture counterexample in a sweep),
4 internal solver inconsistency.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import multiprocessing as mp
import os
import sys
import time
from dataclasses import dataclass, field

from . import constructions as con
from .coloring import (certificate_dict, certificate_from_dict, palette_width, to_dot, to_list,
                       verify_royal, verify_singleton_mode, verify_strong_royal)
from .fixtures import FIXTURE_SETS
from .graph6 import Graph6Error, encode_graph6, parse_graph6, read_graph6_lines
from .graphs import FAMILIES, Graph, enumerate_trees, generate
from .solver import (SolverBug, SolveTimeout, classify, k_floor, royal_index, strong_royal_index)

EXIT_OK, EXIT_INPUT, EXIT_TIMEOUT, EXIT_REFUTED = 0, 1, 2, 3
CSV_COLUMNS = ["graph6", "n", "m", "k_floor", "index", "verdict", "method", "nodes", "ms"]

log = logging.getLogger("royalcolor")


class InputError(Exception):
    pass


def default_timeout_ms() -> int:
    return int(os.environ.get("ROYAL_TIMEOUT_MS", "300000"))


def parse_graph_arg(tokens: list[str]) -> Graph:
    """``['cycle', '7']`` -> generated graph; ``['C~']`` -> parsed graph6."""
    if not tokens:
        raise InputError("missing graph (family name and parameter, or a graph6 string)")
    name = tokens[0].replace("-", "_")
    if name == "caterpillar":
        name = "cubic_caterpillar"
    if name in FAMILIES:
        if len(tokens) != 2:
            raise InputError(f"family {tokens[0]!r} needs exactly one integer parameter")
        try:
            return generate(name, int(tokens[1]))
        except ValueError as exc:
            raise InputError(str(exc)) from None
    if len(tokens) != 1:
        raise InputError(f"unexpected arguments after graph6 string: {tokens[1:]}")
    try:
        return parse_graph6(tokens[0])
    except Graph6Error as exc:
        raise InputError(str(exc)) from None


def _load_json(src: str) -> dict:
    try:
        text = sys.stdin.read() if src == "-" else open(src).read()
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read certificate {src}: {exc}") from None


def _emit(obj) -> None:
    print(json.dumps(obj))


# --------------------------------------------------------------------------
# solve


def cmd_solve(args) -> int:
    g = parse_graph_arg(args.graph)
    workers = 1 if args.deterministic else args.workers
    timeout = args.timeout_ms / 1000
    try:
        if args.mode == "strong":
            res = strong_royal_index(g, timeout=timeout, workers=workers)
            kf = k_floor(g.n)
            verdict = {0: "royal-zero", 1: "royal-one"}.get(res.index - kf, "anomaly")
        else:
            res = royal_index(g, timeout=timeout, workers=workers)
            verdict = "n/a"
    except SolveTimeout as exc:
        _emit({"n": g.n, "graph6": encode_graph6(g), "status": "timeout", "lower": exc.lower,
               "upper": exc.upper, "nodes": exc.nodes})
        return EXIT_TIMEOUT
    _emit(certificate_dict(g.n, res.certificate, graph6=encode_graph6(g), mode=args.mode,
                           index=res.index, verdict=verdict, method="exact-search",
                           nodes=res.nodes, ms=res.ms,
                           labels=[to_list(x) for x in res.witness_labeling.labels]))
    return EXIT_OK


# --------------------------------------------------------------------------
# verify

_VERIFIERS = {
    "strong": verify_strong_royal,
    "royal": verify_royal,
    "majestic": lambda g, c: verify_singleton_mode(g, c, strong=False),
    "strong-majestic": lambda g, c: verify_singleton_mode(g, c, strong=True),
}


def cmd_verify(args) -> int:
    data = _load_json(args.cert)
    try:
        n, c = certificate_from_dict(data)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if args.graph:
        g = parse_graph_arg(args.graph)
    elif "graph6" in data:
        g = parse_graph_arg([data["graph6"]])
    else:
        raise InputError("no graph given and certificate carries no graph6 field")
    if g.n != n:
        raise InputError(f"certificate is for order {n}, graph has order {g.n}")
    missing = [e for e in g.edges if e not in c.colors]
    extra = [e for e in c.colors if e not in set(g.edges)]
    if missing or extra:
        raise InputError(f"certificate edges do not match graph (missing {missing[:3]}, extra {extra[:3]})")
    try:
        bad = _VERIFIERS[args.mode](g, c)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    _emit({"valid": not bad, "mode": args.mode, "width": palette_width(c),
           "violations": [{"kind": v.kind, "witness": list(v.witness), "detail": v.detail} for v in bad]})
    return EXIT_OK if not bad else EXIT_REFUTED


# --------------------------------------------------------------------------
# construct


def _base_certificate(g: Graph, cert_path: str | None):
    if cert_path:
        n, c = certificate_from_dict(_load_json(cert_path))
        if n != g.n:
            raise InputError("base certificate order does not match the graph")
        return c
    return strong_royal_index(g).certificate


def cmd_construct(args) -> int:
    fam = args.family
    p = args.params
    try:
        if fam in ("cycle", "caterpillar", "corona-complete", "gk", "path"):
            if len(p) != 1:
                raise InputError(f"{fam} takes one integer parameter")
            x = int(p[0])
            if fam == "cycle":
                g, c = generate("cycle", x), con.construct_cycle(x)
            elif fam == "path":
                g, c = generate("path", x), con.construct_path(x)
            elif fam == "caterpillar":
                g, c = generate("cubic_caterpillar", x), con.construct_cubic_caterpillar(x)
            elif fam == "corona-complete":
                g, c = con.corona_complete(x)
            else:
                gk = con.gk_build(x)
                g, c = gk.graph, gk.certificate
        elif fam in ("corona-lift", "cartesian-lift"):
            g = parse_graph_arg(p)
            c = _base_certificate(g, args.cert)
            lift = con.lift_corona if fam == "corona-lift" else con.lift_cartesian_k2
            for _ in range(args.times):
                g, c = lift(g, c)
        else:
            raise InputError(f"unknown construction {fam!r}")
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(to_dot(g, c))
    _emit(certificate_dict(g.n, c, graph6=encode_graph6(g), construction=fam, width=palette_width(c)))
    return EXIT_OK


# --------------------------------------------------------------------------
# sweep


@dataclass
class SweepReport:
    family: str
    scope: str  # "trees" (every graph must be royal-zero) or "connected"
    rows: list[dict] = field(default_factory=list)
    complete: bool = True

    @property
    def counterexamples(self) -> list[dict]:
        allowed = {"royal-zero"} if self.scope == "trees" else {"royal-zero", "royal-one"}
        return [r for r in self.rows if r["verdict"] not in allowed and r["verdict"] != "timeout"]

    def summary(self) -> dict:
        counts: dict[str, int] = {}
        for r in self.rows:
            counts[r["verdict"]] = counts.get(r["verdict"], 0) + 1
        return {"family": self.family, "scope": self.scope, "graphs": len(self.rows),
                "verdicts": dict(sorted(counts.items())), "complete": self.complete,
                "counterexamples": [r["graph6"] for r in self.counterexamples]}

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.DictWriter(buf, CSV_COLUMNS, extrasaction="ignore", lineterminator="\n")
        w.writeheader()
        w.writerows(self.rows)
        return buf.getvalue()

    def to_json(self) -> dict:
        return {**self.summary(), "rows": self.rows}


def _classify_row(job) -> dict:
    g6, timeout, zero_ms = job
    g = parse_graph6(g6)
    row = {"graph6": g6, "n": g.n, "m": g.m, "k_floor": k_floor(g.n)}
    try:
        r = classify(g, timeout=timeout)
        row.update(index=r.index, verdict=r.verdict, method=r.method, nodes=r.nodes, ms=0 if zero_ms else r.ms)
    except SolveTimeout as exc:
        row.update(index="", verdict="timeout", method="", nodes=exc.nodes, ms="")
    return row


def run_sweep(graphs: list[Graph], family: str, scope: str, *, timeout: float, workers: int = 1,
              budget_s: float | None = None, zero_ms: bool = False) -> SweepReport:
    report = SweepReport(family, scope)
    jobs = [(encode_graph6(g), timeout, zero_ms) for g in graphs]
    t0 = time.monotonic()
    if workers <= 1:
        results = map(_classify_row, jobs)
        pool = None
    else:
        pool = mp.get_context("fork").Pool(workers)
        results = pool.imap(_classify_row, jobs)
    try:
        for row in results:
            report.rows.append(row)
            if row["verdict"] == "timeout":
                report.complete = False
            if budget_s is not None and time.monotonic() - t0 > budget_s and len(report.rows) < len(jobs):
                report.complete = False
                break
    finally:
        if pool is not None:
            pool.terminate()
    return report


def _sweep_graphs(args) -> tuple[list[Graph], str, str]:
    src = args.source
    if src == "trees":
        if not args.args or len(args.args) > 2:
            raise InputError("usage: sweep trees N [N_MAX]")
        lo = int(args.args[0])
        hi = int(args.args[1]) if len(args.args) == 2 else lo
        if lo < 3:
            raise InputError("tree sweeps need order at least 3")
        graphs = [t for n in range(lo, hi + 1) for t in enumerate_trees(n)]
        return graphs, f"trees n={lo}..{hi}", "trees"
    if src in ("graph6", "connected"):
        want_n = None
        rest = list(args.args)
        if src == "connected":
            if not rest:
                raise InputError("usage: sweep connected N [FILE]")
            want_n = int(rest.pop(0))
        path = rest[0] if rest else "-"
        fh = sys.stdin if path == "-" else open(path)
        try:
            graphs = read_graph6_lines(fh)
        except Graph6Error as exc:
            raise InputError(str(exc)) from None
        finally:
            if fh is not sys.stdin:
                fh.close()
        for i, g in enumerate(graphs, 1):
            if want_n is not None and g.n != want_n:
                raise InputError(f"graph {i} has order {g.n}, expected {want_n}")
            if g.n < 3 or not g.is_connected():
                raise InputError(f"graph {i} is disconnected or smaller than order 3")
        if args.min_size is not None:
            graphs = [g for g in graphs if g.m >= args.min_size]
        desc = f"{src} {path}" + (f" n={want_n}" if want_n else "")
        if args.min_size is not None:
            desc += f" m>={args.min_size}"
        return graphs, desc, "connected"
    raise InputError(f"unknown sweep source {src!r}")


def cmd_sweep(args) -> int:
    graphs, desc, scope = _sweep_graphs(args)
    workers = 1 if args.deterministic else args.workers
    report = run_sweep(graphs, desc, scope, timeout=args.timeout_ms / 1000, workers=workers,
                       budget_s=args.budget_s, zero_ms=args.deterministic)
    text = report.to_csv()
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(report.to_json(), fh, indent=1)
    print(json.dumps(report.summary()), file=sys.stderr)
    if report.counterexamples:
        return EXIT_REFUTED
    if not report.complete:
        return EXIT_TIMEOUT
    return EXIT_OK


# --------------------------------------------------------------------------
# reproduce


def cmd_reproduce(args) -> int:
    names = list(FIXTURE_SETS) if args.set == "all" else [args.set]
    failed = 0
    for name in names:
        for row in FIXTURE_SETS[name]():
            status = "PASS" if row.ok else "FAIL"
            failed += not row.ok
            print(f"{status}  [{name}] {row.claim}: expected {row.expected}, computed {row.computed}")
    print(f"{'all rows match' if not failed else f'{failed} rows differ'}")
    return EXIT_OK if not failed else EXIT_REFUTED


# --------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors, which would collide with the timeout code
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="royal", description="Royal and strong royal edge colorings.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def solver_flags(sp):
        sp.add_argument("--timeout-ms", type=int, default=default_timeout_ms())
        sp.add_argument("--workers", type=int, default=1)
        sp.add_argument("--deterministic", action="store_true", help="single worker, reproducible output")

    s = sub.add_parser("solve", help="compute sroy (or roy) with a certificate")
    s.add_argument("graph", nargs="+", help="FAMILY PARAM or a graph6 string")
    s.add_argument("--mode", choices=["strong", "royal"], default="strong")
    solver_flags(s)
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", help="check a certificate")
    v.add_argument("graph", nargs="*", help="FAMILY PARAM or graph6; defaults to the certificate's graph6")
    v.add_argument("--cert", required=True, help="certificate JSON file, or - for stdin")
    v.add_argument("--mode", choices=list(_VERIFIERS), default="strong")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("construct", help="run an explicit construction")
    c.add_argument("family", choices=["cycle", "path", "caterpillar", "corona-complete", "gk",
                                      "corona-lift", "cartesian-lift"])
    c.add_argument("params", nargs="+")
    c.add_argument("--cert", help="base certificate for the lifts (solved if omitted)")
    c.add_argument("--times", type=int, default=1, help="apply a lift repeatedly")
    c.add_argument("--dot", help="also write a DOT rendering to this file")
    c.set_defaults(func=cmd_construct)

    w = sub.add_parser("sweep", help="classify a family and report conjecture counterexamples")
    w.add_argument("source", choices=["trees", "graph6", "connected"])
    w.add_argument("args", nargs="*", help="trees: N [N_MAX]; graph6: [FILE]; connected: N [FILE]")
    w.add_argument("--min-size", type=int, help="only graphs with at least this many edges")
    w.add_argument("--csv")
    w.add_argument("--json")
    w.add_argument("--budget-s", type=float, help="stop (incomplete) after this many seconds")
    solver_flags(w)
    w.set_defaults(func=cmd_sweep)

    r = sub.add_parser("reproduce", help="recompute the reference fixture table")
    r.add_argument("set", choices=list(FIXTURE_SETS) + ["all"])
    r.set_defaults(func=cmd_reproduce)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SolverBug as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
