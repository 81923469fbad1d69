"""Command-line interface: ``markovpst {gen,evolve,profile,detect,verify}``."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from typing import Sequence

from markovpst import analytic, detector, graph
from markovpst._format import fmt, rounded
from markovpst.arcs import evolve, fidelities, psi_state

log = logging.getLogger("markovpst")

_GENERATORS = {
    "path": graph.path,
    "cycle": graph.cycle,
    "hypercube": graph.hypercube,
    "star": graph.star,
}


class SourceError(ValueError):
    pass


def parse_graph_source(source: str) -> graph.Graph:
    """Build a graph from a generator spec (``path:6``, ``cartesian:path:2,path:3``) or a file."""
    if os.path.isfile(source):
        with open(source) as fh:
            return graph.read_edge_list(fh, require_connected=False)
    kind, sep, arg = source.partition(":")
    if not sep:
        raise SourceError(f"{source!r} is neither a file nor a generator spec")
    if kind in _GENERATORS:
        try:
            size = int(arg)
        except ValueError:
            raise SourceError(f"{source!r}: expected an integer after '{kind}:'") from None
        return _GENERATORS[kind](size)
    if kind in ("cartesian", "tensor"):
        left, comma, right = arg.partition(",")
        if not comma:
            raise SourceError(f"{source!r}: expected '{kind}:A,B'")
        return graph.product(parse_graph_source(left), parse_graph_source(right), kind)
    raise SourceError(f"{source!r}: unknown generator {kind!r}")


def _source(value: str) -> graph.Graph:
    try:
        return parse_graph_source(value)
    except graph.GraphError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    except SourceError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _nonneg(value: str) -> int:
    v = int(value)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {v}")
    return v


def _positive(value: str) -> int:
    v = int(value)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _tol(value: str) -> float:
    v = float(value)
    if not 0 < v < 0.5:
        raise argparse.ArgumentTypeError(f"tolerance must lie in (0, 0.5), got {v}")
    return v


def _emit(text: str, out: str | None) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="") as fh:
            fh.write(text)


def _check_start(g: graph.Graph, start: int) -> None:
    if start >= g.n:
        raise graph.VertexRangeError(f"--start {start} outside 0..{g.n - 1}")


def cmd_gen(args) -> int:
    _emit(graph.dumps_edge_list(args.spec), args.output)
    return 0


def cmd_evolve(args) -> int:
    g = args.graph
    _check_start(g, args.start)
    g.require_connected()
    state = evolve(g, psi_state(g, args.start), args.steps)
    fid = fidelities(g, state)
    if args.format == "json":
        doc = {
            "n": g.n,
            "start": args.start,
            "steps": args.steps,
            "state": [[j, k, rounded(a)] for (j, k), a in state.items()],
            "fidelity": [[k, rounded(f)] for k, f in enumerate(fid) if abs(f) > args.tol],
        }
        _emit(json.dumps(doc, indent=2) + "\n", args.output)
    else:
        lines = [f"# n={g.n} start={args.start} steps={args.steps}\n", state.dumps()]
        lines += [f"fidelity {k} {fmt(f)}\n" for k, f in enumerate(fid) if abs(f) > args.tol]
        _emit("".join(lines), args.output)
    return 0


def cmd_profile(args) -> int:
    g = args.graph
    _check_start(g, args.start)
    g.require_connected()
    n, j = g.n, args.start
    if g == graph.path(n) and 1 <= j <= n - j - 1 and args.tmax <= n - 1:
        prof = analytic.path_probability_profile(n, j, args.tmax)
    else:
        prof = analytic.numeric_profile(g, j, args.tmax)
    _emit(prof.to_csv(), args.output)
    return 0


def cmd_detect(args) -> int:
    g = args.graph
    g.require_connected()
    events = detector.detect(g, args.horizon, args.tol)
    if args.format == "text":
        text = "".join(
            f"{e.time} {e.source} {e.target} {fmt(e.amplitude)} {e.kind}\n" for e in events
        )
    else:
        text = detector.events_to_json(events)
    _emit(text, args.output)
    return 0


def cmd_verify(args) -> int:
    families = args.family or ["all"]
    chosen: list[str] = []
    for fam in families:
        if fam == "all":
            chosen += detector.FAMILIES
        elif fam == "conclusion":
            chosen += ["hypercubes", "stars", "products"]
        else:
            chosen.append(fam)
    chosen = list(dict.fromkeys(chosen))
    reports = detector.run_claim_suite(
        horizon_factor=args.horizon_factor, tol=args.tol, families=chosen, nmax=args.nmax
    )
    if args.format == "text":
        text = "".join(
            f"{r.verdict:9s} {r.claim} {json.dumps(r.params, sort_keys=False)} {r.observed}\n"
            for r in reports
        )
    else:
        text = detector.claims_to_json(reports)
    _emit(text, args.output)
    for key, counts in detector.summary(reports).items():
        print(f"{key}: {counts['confirmed']} confirmed, {counts['refuted']} refuted, "
              f"{counts['ambiguous']} ambiguous", file=sys.stderr)
    failed = detector.proved_failures(reports)
    for r in failed:
        print(f"FAILED proved claim {r.claim} {r.params}: {r.observed}", file=sys.stderr)
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="markovpst", description=__doc__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def with_output(sp):
        sp.add_argument("-o", "--output", help="output file (default stdout)")
        return sp

    sp = with_output(sub.add_parser("gen", help="write a generated graph as an edge list"))
    sp.add_argument("spec", type=_source, help="e.g. path:6, cycle:8, cartesian:path:2,path:3")
    sp.set_defaults(func=cmd_gen)

    sp = with_output(sub.add_parser("evolve", help="evolve psi_start and dump the arc state"))
    sp.add_argument("graph", type=_source, help="generator spec or edge-list file")
    sp.add_argument("--start", type=_nonneg, required=True)
    sp.add_argument("--steps", type=_nonneg, required=True)
    sp.add_argument("--tol", type=_tol, default=detector.DEFAULT_TOL)
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=cmd_evolve)

    sp = with_output(sub.add_parser("profile", help="per-vertex probability profile as CSV"))
    sp.add_argument("graph", type=_source)
    sp.add_argument("--start", type=_nonneg, required=True)
    sp.add_argument("--tmax", type=_nonneg, required=True)
    sp.add_argument("--format", choices=("csv",), default="csv")
    sp.set_defaults(func=cmd_profile)

    sp = with_output(sub.add_parser("detect", help="search for PST and periodic vertices"))
    sp.add_argument("graph", type=_source)
    sp.add_argument("--horizon", type=_positive, default=None, help="default 4*n")
    sp.add_argument("--tol", type=_tol, default=detector.DEFAULT_TOL)
    sp.add_argument("--format", choices=("json", "text"), default="json")
    sp.set_defaults(func=cmd_detect)

    sp = with_output(sub.add_parser("verify", help="run the claim suite"))
    sp.add_argument(
        "--family", action="append",
        choices=(*detector.FAMILIES, "conclusion", "all"),
        help="repeatable; default all",
    )
    sp.add_argument("--nmax", type=_positive, default=50, help="largest path/cycle size")
    sp.add_argument("--horizon-factor", type=_positive, default=detector.DEFAULT_HORIZON_FACTOR)
    sp.add_argument("--tol", type=_tol, default=detector.DEFAULT_TOL)
    sp.add_argument("--format", choices=("json", "text"), default="json")
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except graph.GraphError as exc:
        print(f"markovpst: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
