"""``congestlab`` command line: gen, oracle, run, verify.

JSON goes to stdout, a one-line human summary to stderr. Exit codes: 0 on
success, 1 on a verification or runtime failure, 2 on bad usage or input.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any

from . import gadgets, verify
from .algorithms import PROGRAMS
from .graph import DisconnectedGraphError, GraphError, apsp_oracle, distance_params, random_connected_graph
from .instances import format_bits, intersection_size, parse_bits, random_bits
from .io import load_graph, save_graph
from .sim import SimConfig, SimulationError, cut_report, report_dict, run


class UsageError(Exception):
    pass


def _emit(obj: dict[str, Any], argv: list[str]) -> None:
    obj = {**obj, "invocation": argv}
    print(json.dumps(obj, sort_keys=True))


def _bits(value: str, k: int, rng: random.Random, name: str) -> tuple[int, ...]:
    if value == "random":
        return random_bits(k, rng)
    try:
        bits = parse_bits(value)
    except ValueError as exc:
        raise UsageError(f"--{name}: {exc}") from None
    if len(bits) != k:
        raise UsageError(f"--{name} must have exactly k={k} bits, got {len(bits)}")
    return bits


def cmd_gen(args: argparse.Namespace) -> dict[str, Any]:
    rng = random.Random(args.seed)
    if args.kind == "apsp":
        k = gadgets.apsp_params(args.n).k
        x, y = _bits(args.x, k, rng, "x"), _bits(args.y, k, rng, "y")
        graph = gadgets.build_apsp_gadget(args.n, x, y)
        meta = {"gadget": "apsp", "n": args.n, "k": k, "x": format_bits(x), "y": format_bits(y)}
    elif args.kind == "ecc":
        prm = gadgets.ecc_params(args.n, args.ell)
        x, y = _bits(args.x, prm.k, rng, "x"), _bits(args.y, prm.k, rng, "y")
        graph = gadgets.build_ecc_gadget(args.n, args.ell, x, y)
        meta = {
            "gadget": "ecc", "n": args.n, "ell": args.ell, "k": prm.k, "s": prm.s,
            "x": format_bits(x), "y": format_bits(y), "padding": prm.padding(sum(x), sum(y)),
        }
    elif args.kind == "line":
        graph = gadgets.build_line(args.d)
        meta = {"gadget": "line", "d": args.d}
    else:
        graph = random_connected_graph(args.n, args.m, args.seed)
        meta = {"gadget": "random", "n": args.n, "m": args.m, "seed": args.seed}
    out = args.out or f"{args.kind}_n{graph.node_count}"
    files = save_graph(graph, out, meta, dot=args.dot)
    print(f"wrote {', '.join(map(str, files))}", file=sys.stderr)
    return {"files": [str(f) for f in files], "nodes": graph.node_count, "edges": graph.edge_count, "meta": meta}


def _decode(graph, meta: dict[str, Any], dm, ecc) -> dict[str, Any]:
    out: dict[str, Any] = {}
    kind = meta.get("gadget")
    if kind == "apsp":
        out["decode_apsp"] = gadgets.decode_apsp(dm, graph)
    elif kind == "ecc":
        out["decode_ecc"] = gadgets.decode_ecc(ecc, graph, int(meta["ell"]))
    if "x" in meta and "y" in meta:
        out["intersection_size"] = intersection_size(parse_bits(meta["x"]), parse_bits(meta["y"]))
    return out


def cmd_oracle(args: argparse.Namespace) -> dict[str, Any]:
    graph, meta = load_graph(args.graph, args.roles)
    dm = apsp_oracle(graph)
    ecc, diameter, radius = distance_params(dm)
    out: dict[str, Any] = {
        "n": graph.node_count,
        "m": graph.edge_count,
        "eccentricities": [int(e) for e in ecc],
        "diameter": diameter,
        "radius": radius,
    }
    if args.matrix:
        out["matrix"] = dm.dist.tolist()
    out.update(_decode(graph, meta, dm, ecc))
    print(f"oracle: n={graph.node_count} D={diameter} R={radius}", file=sys.stderr)
    return out


def cmd_run(args: argparse.Namespace) -> tuple[dict[str, Any], bool]:
    graph, _ = load_graph(args.graph, args.roles)
    n = graph.node_count
    max_rounds = args.max_rounds or 12 * n + 20
    config = SimConfig(beta=args.beta, max_rounds=max_rounds, seed=args.seed)
    result = run(graph, PROGRAMS[args.program], config)
    cut = cut_report(result, graph) if args.cut else None
    out = report_dict(result, cut)
    ok = True
    if args.check_oracle:
        dm = apsp_oracle(graph)
        ecc, diameter, radius = distance_params(dm)
        mismatches = []
        for u, o in enumerate(result.outputs):
            if args.program == "apsp":
                good = o == dm.dist[u].tolist()
            elif args.program == "ecc":
                good = o["dist"] == dm.dist[u].tolist() and (o["ecc"], o["diameter"], o["radius"]) == (int(ecc[u]), diameter, radius)
            else:
                good = o["depth"] == int(dm.dist[0][u])
            if not good:
                mismatches.append(u)
        out["oracle_check"] = {"ok": not mismatches, "mismatched_nodes": mismatches, "round_budget": 6 * n + 6 * diameter}
        ok = not mismatches
    if cut is not None:
        ok = ok and cut.within_bound
    print(f"run {args.program}: {result.rounds_used} rounds, B={result.bandwidth_bits}", file=sys.stderr)
    return out, ok


def _n_range(text: str) -> range:
    try:
        lo, hi = (int(v) for v in text.split(":"))
    except ValueError:
        raise UsageError(f"--n-range must look like LO:HI, got {text!r}") from None
    return range(lo, hi + 1)


def cmd_verify(args: argparse.Namespace) -> verify.VerifyReport:
    suite = args.suite
    if suite == "apsp-prop":
        if args.n_range:
            return verify.apsp_decode(_n_range(args.n_range), args.trials, args.seed)
        return verify.apsp_prop(args.n or 8, args.trials, args.seed)
    if suite == "ecc-exact":
        ell = args.ell or 1
        return verify.ecc_exact(args.n or gadgets.min_ecc_nodes(ell), ell, args.trials, args.seed)
    if suite == "ecc-approx":
        eps = Fraction(args.eps) if args.eps else Fraction(1, 10)
        return verify.ecc_approx(eps, args.trials, args.seed, args.n)
    if suite == "thresholds":
        return verify.thresholds([Fraction(args.eps)] if args.eps else None)
    rng = _n_range(args.n_range) if args.n_range else range(2, 101)
    report, _ = verify.sim_vs_oracle(args.trials, args.seed, rng, args.beta)
    return report


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="congestlab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="build a gadget or random graph and write it to disk")
    gsub = gen.add_subparsers(dest="kind", required=True)
    for kind in ("apsp", "ecc", "line", "random"):
        g = gsub.add_parser(kind)
        g.add_argument("--out", help="output prefix (writes PREFIX.edges, PREFIX.roles.json)")
        g.add_argument("--dot", action="store_true", help="also write PREFIX.dot")
        g.add_argument("--seed", type=int, default=0)
        if kind in ("apsp", "ecc", "random"):
            g.add_argument("--n", type=int, required=True)
        if kind in ("apsp", "ecc"):
            g.add_argument("--x", required=True, help="bit string, x_1 first, or 'random'")
            g.add_argument("--y", required=True, help="bit string, y_1 first, or 'random'")
        if kind == "ecc":
            g.add_argument("--ell", type=int, default=1)
        if kind == "line":
            g.add_argument("--d", type=int, required=True)
        if kind == "random":
            g.add_argument("--m", type=int, required=True)

    o = sub.add_parser("oracle", help="exact distances, eccentricities and gadget decodes")
    o.add_argument("graph", help="edge-list file")
    o.add_argument("--roles", help="role sidecar (default: <stem>.roles.json if present)")
    o.add_argument("--matrix", action="store_true", help="include the full distance matrix")

    r = sub.add_parser("run", help="simulate a reference CONGEST program")
    r.add_argument("program", choices=sorted(PROGRAMS))
    r.add_argument("graph")
    r.add_argument("--roles")
    r.add_argument("--beta", type=int, default=4)
    r.add_argument("--max-rounds", type=int)
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--cut", action="store_true", help="report bits crossing the Alice/Bob cut")
    r.add_argument("--check-oracle", action="store_true", help="compare outputs with the BFS oracle")

    v = sub.add_parser("verify", help="run a verification sweep")
    v.add_argument("suite", choices=verify.SUITES)
    v.add_argument("--trials", type=int, default=200)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--n", type=int)
    v.add_argument("--n-range", help="LO:HI (inclusive)")
    v.add_argument("--ell", type=int)
    v.add_argument("--eps")
    v.add_argument("--beta", type=int, default=4)
    return p


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    try:
        if args.command == "gen":
            _emit(cmd_gen(args), argv)
        elif args.command == "oracle":
            _emit(cmd_oracle(args), argv)
        elif args.command == "run":
            out, ok = cmd_run(args)
            _emit(out, argv)
            return 0 if ok else 1
        else:
            report = cmd_verify(args)
            _emit(report.to_dict(), argv)
            print(report.summary(), file=sys.stderr)
            return 0 if report.ok else 1
    except (UsageError, gadgets.GadgetParameterError, DisconnectedGraphError, GraphError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SimulationError as exc:
        print(f"simulation failed: {exc}", file=sys.stderr)
        return 1
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
