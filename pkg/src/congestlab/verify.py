"""Verification sweeps shared by the CLI ``verify`` command and the acceptance tests.

Every sweep returns a :class:`VerifyReport`; an empty ``failures`` list
means every instance checked out.
"""

from __future__ import annotations

import itertools
import json
import random
import time
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from . import gadgets
from .algorithms import EccDiameterRadius, PipelinedApsp
from .graph import A, B, BDoublePrime, LabeledGraph, apsp_oracle, distance_params, random_connected_graph
from .instances import Bits, format_bits, intersection_size, pair_to_index, random_bits
from .sim import SimConfig, cut_report, run, to_json


@dataclass
class VerifyReport:
    suite: str
    instances: int = 0
    failures: list[tuple[str, Any, Any]] = field(default_factory=list)
    elapsed: float = 0.0
    invocation: dict[str, Any] = field(default_factory=dict)
    stats: dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, desc: str, expected: Any, got: Any) -> None:
        self.failures.append((desc, expected, got))

    def to_dict(self, timing: bool = True) -> dict[str, Any]:
        d = {
            "suite": self.suite,
            "instances": self.instances,
            "ok": self.ok,
            "failures": [{"instance": a, "expected": _plain(b), "got": _plain(c)} for a, b, c in self.failures],
            "invocation": self.invocation,
            "stats": _plain(self.stats),
        }
        if timing:
            d["elapsed"] = round(self.elapsed, 4)
        return d

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), sort_keys=True)

    def summary(self) -> str:
        status = "PASS" if self.ok else f"FAIL ({len(self.failures)} failures)"
        return f"{self.suite}: {self.instances - len(self.failures)}/{self.instances} passed [{status}] in {self.elapsed:.2f}s"


def _plain(v: Any) -> Any:
    if isinstance(v, Fraction):
        return float(v)
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if hasattr(v, "item"):
        return v.item()
    return v


def _inputs(k: int, trials: int, rng: random.Random, exhaustive_limit: int = 4096) -> Iterator[tuple[Bits, Bits]]:
    """All ``(x, y)`` pairs if there are at most ``exhaustive_limit``, else ``trials`` random ones."""
    if 4**k <= exhaustive_limit:
        for x in itertools.product((0, 1), repeat=k):
            for y in itertools.product((0, 1), repeat=k):
                yield x, y
    else:
        for _ in range(trials):
            yield random_bits(k, rng), random_bits(k, rng)


def _desc(**kw: Any) -> str:
    parts = []
    for key, val in kw.items():
        if isinstance(val, tuple):
            val = format_bits(val)
        parts.append(f"{key}={val}")
    return " ".join(parts)


# -- gadget sweeps ----------------------------------------------------------


def check_apsp_instance(n: int, x: Bits, y: Bits, report: VerifyReport) -> LabeledGraph:
    """Distance law, decoder and diameter for one APSP gadget instance."""
    g = gadgets.build_apsp_gadget(n, x, y)
    dm = apsp_oracle(g)
    desc = _desc(n=n, x=x, y=y)
    report.instances += 1
    s = gadgets.apsp_params(n).s
    for i in range(1, s + 1):
        for j in range(i + 1, s + 1):
            p = pair_to_index(i, j, s)
            want = 3 if x[p - 1] and y[p - 1] else 2
            got = dm[g.node(A(i)), g.node(B(j))]
            if got != want:
                report.fail(f"{desc} d(a{i},b{j})", want, got)
    audited = dm.audited()
    decoded = gadgets.decode_apsp(audited, g)
    if decoded != intersection_size(x, y):
        report.fail(f"{desc} decode", intersection_size(x, y), decoded)
    alice = {u for u, side in g.side.items() if side.name == "ALICE"}
    if not audited.accessed <= alice:
        report.fail(f"{desc} decoder read Bob rows", [], sorted(audited.accessed - alice))
    _, diameter, _ = distance_params(dm)
    key = "max_diameter_even" if n % 2 == 0 else "max_diameter_odd"
    report.stats[key] = max(report.stats.get(key, 0), diameter)
    return g


def apsp_prop(n: int = 8, trials: int = 200, seed: int = 0) -> VerifyReport:
    """Exhaustive (small k) or randomized sweep of the APSP distance law at one ``n``."""
    rep = VerifyReport("apsp-prop", invocation={"n": n, "trials": trials, "seed": seed})
    t0 = time.perf_counter()
    rng = random.Random(seed)
    for x, y in _inputs(gadgets.apsp_params(n).k, trials, rng):
        check_apsp_instance(n, x, y, rep)
    rep.elapsed = time.perf_counter() - t0
    return rep


def apsp_instances(n_range: Sequence[int], trials: int, seed: int) -> list[tuple[int, Bits, Bits]]:
    """Random APSP instances; each draws ``n`` from ``n_range`` and a bit density."""
    rng = random.Random(seed)
    out = []
    for _ in range(trials):
        n = rng.choice(list(n_range))
        k = gadgets.apsp_params(n).k
        px, py = rng.random(), rng.random()
        x = tuple(int(rng.random() < px) for _ in range(k))
        y = tuple(int(rng.random() < py) for _ in range(k))
        out.append((n, x, y))
    return out


def apsp_decode(n_range: Sequence[int] = range(5, 41), trials: int = 200, seed: int = 0) -> VerifyReport:
    rep = VerifyReport("apsp-decode", invocation={"n_range": [min(n_range), max(n_range)], "trials": trials, "seed": seed})
    t0 = time.perf_counter()
    for n, x, y in apsp_instances(n_range, trials, seed):
        check_apsp_instance(n, x, y, rep)
    rep.elapsed = time.perf_counter() - t0
    return rep


def check_ecc_instance(n: int, ell: int, x: Bits, y: Bits, report: VerifyReport) -> tuple[LabeledGraph, Any]:
    """Eccentricity law, decoder, ``ell = 1`` upper bounds and diameter for one instance."""
    g = gadgets.build_ecc_gadget(n, ell, x, y)
    dm = apsp_oracle(g)
    ecc, diameter, _ = distance_params(dm)
    desc = _desc(n=n, ell=ell, x=x, y=y)
    report.instances += 1
    if g.node_count != n:
        report.fail(f"{desc} node count", n, g.node_count)
    k = len(x)
    for p in range(1, k + 1):
        ap = g.node(A(p))
        want = 3 * ell + 1 if x[p - 1] and y[p - 1] else 5 * ell + 1
        if ecc[ap] != want:
            report.fail(f"{desc} e(a{p})", want, int(ecc[ap]))
        if ell == 1:
            far = g.node(BDoublePrime(p))
            row = dm.row(ap)
            if row[far] > 6:
                report.fail(f"{desc} d(a{p},b''{p})", "<= 6", int(row[far]))
            worst = max(int(row[v]) for v in range(n) if v != far)
            if worst > 5:
                report.fail(f"{desc} max d(a{p},v), v != b''{p}", "<= 5", worst)
    decoded = gadgets.decode_ecc(ecc, g, ell)
    if decoded != intersection_size(x, y):
        report.fail(f"{desc} decode", intersection_size(x, y), decoded)
    key = f"max_diameter_ell{ell}"
    report.stats[key] = max(report.stats.get(key, 0), diameter)
    return g, ecc


def ecc_exact(n: int = 23, ell: int = 1, trials: int = 200, seed: int = 0) -> VerifyReport:
    rep = VerifyReport("ecc-exact", invocation={"n": n, "ell": ell, "trials": trials, "seed": seed})
    t0 = time.perf_counter()
    rng = random.Random(seed)
    for x, y in _inputs(gadgets.ecc_params(n, ell).k, trials, rng):
        check_ecc_instance(n, ell, x, y, rep)
    rep.elapsed = time.perf_counter() - t0
    return rep


def adversarial_estimates(ecc: Sequence[int], eps, rng: random.Random) -> list[Fraction]:
    """Per-node estimates inside ``[e / (5/3 - eps), e]``: an endpoint or a random interior point."""
    rho = Fraction(5, 3) - gadgets._as_fraction(eps)
    out = []
    for e in ecc:
        lo, hi = Fraction(int(e)) / rho, Fraction(int(e))
        pick = rng.randrange(3)
        if pick == 0:
            out.append(lo)
        elif pick == 1:
            out.append(hi)
        else:
            out.append(lo + (hi - lo) * Fraction(rng.randrange(1, 1000), 1000))
    return out


def ecc_approx(eps=0.1, trials: int = 1000, seed: int = 0, n: int | None = None) -> VerifyReport:
    """Decode from in-band estimates on the stretched gadget with ``ell = choose_ell(eps)``."""
    ell = gadgets.choose_ell(eps)
    n = n if n is not None else gadgets.min_ecc_nodes(ell)
    rep = VerifyReport("ecc-approx", invocation={"eps": str(eps), "n": n, "ell": ell, "trials": trials, "seed": seed})
    t0 = time.perf_counter()
    rng = random.Random(seed)
    k = gadgets.ecc_params(n, ell).k
    cache: dict[tuple[Bits, Bits], tuple[LabeledGraph, Any]] = {}
    for _ in range(trials):
        x, y = random_bits(k, rng), random_bits(k, rng)
        if (x, y) not in cache:
            g = gadgets.build_ecc_gadget(n, ell, x, y)
            cache[x, y] = (g, distance_params(apsp_oracle(g))[0])
        g, ecc = cache[x, y]
        est = adversarial_estimates(ecc, eps, rng)
        rep.instances += 1
        try:
            got = gadgets.decode_ecc_approx(est, g, ell, eps, exact=ecc)
        except gadgets.ApproximationContractError as exc:
            rep.fail(_desc(x=x, y=y), "estimates within contract", str(exc))
            continue
        if got != intersection_size(x, y):
            rep.fail(_desc(x=x, y=y), intersection_size(x, y), got)
    rep.elapsed = time.perf_counter() - t0
    return rep


def thresholds(eps_values: Iterable = None) -> VerifyReport:
    """``3*ell + 1 < (5*ell + 1) / (5/3 - eps)`` for ``ell = choose_ell(eps)``."""
    if eps_values is None:
        eps_values = [Fraction(t, 100) for t in range(1, 67)]
    eps_values = list(eps_values)
    rep = VerifyReport("thresholds", invocation={"eps": [str(e) for e in eps_values]})
    t0 = time.perf_counter()
    for eps in eps_values:
        ell = gadgets.choose_ell(eps)
        low, high = gadgets.approx_thresholds(ell, eps)
        rep.instances += 1
        rep.stats[str(eps)] = {"ell": ell, "low": low, "high": float(high)}
        if not low < high:
            rep.fail(f"eps={eps} ell={ell}", f"{low} < {float(high):.6f}", "violated")
    rep.elapsed = time.perf_counter() - t0
    return rep


# -- simulator vs oracle ----------------------------------------------------


def round_budget(n: int, diameter: int) -> int:
    return 6 * n + 6 * diameter


def check_simulation(
    graph: LabeledGraph,
    report: VerifyReport,
    desc: str,
    beta: int = 4,
    program: str = "apsp",
) -> str:
    """Run a reference program, compare with the oracle, check the round budget
    and (if sides are declared) the cut inequality. Returns the run's JSON report."""
    dm = apsp_oracle(graph)
    ecc, diameter, radius = distance_params(dm)
    n = graph.node_count
    factory = PipelinedApsp if program == "apsp" else EccDiameterRadius
    budget = round_budget(n, diameter)
    result = run(graph, factory, SimConfig(beta=beta, max_rounds=budget + 2 * diameter + 2 + n))
    report.instances += 1
    for u, out in enumerate(result.outputs):
        vec = out if program == "apsp" else out["dist"]
        if vec != [int(d) for d in dm.dist[u]]:
            report.fail(f"{desc} node {u} distances", "oracle row", "mismatch")
            break
        if program == "ecc" and (out["ecc"], out["diameter"], out["radius"]) != (int(ecc[u]), diameter, radius):
            report.fail(f"{desc} node {u} ecc/D/R", (int(ecc[u]), diameter, radius), (out["ecc"], out["diameter"], out["radius"]))
            break
    if program == "apsp" and result.rounds_used > budget:
        report.fail(f"{desc} rounds", f"<= {budget}", result.rounds_used)
    for t, load in enumerate(result.edge_load, start=1):
        over = [e for e, bits in load.items() if bits > result.bandwidth_bits]
        if over:
            report.fail(f"{desc} round {t} bandwidth", result.bandwidth_bits, over)
            break
    cut = None
    if graph.side and len(graph.side) == n:
        cut = cut_report(result, graph)
        if not cut.within_bound:
            report.fail(f"{desc} cut bits", f"<= {cut.bound_bits}", cut.total_cross_bits)
        report.stats["max_cut_ratio"] = max(
            report.stats.get("max_cut_ratio", 0.0), cut.total_cross_bits / max(1, cut.bound_bits)
        )
    report.stats["max_round_ratio"] = max(report.stats.get("max_round_ratio", 0.0), result.rounds_used / budget)
    return to_json(result, cut)


def random_graphs(trials: int, seed: int, n_range: Sequence[int] = range(2, 101)) -> list[LabeledGraph]:
    rng = random.Random(seed)
    out = []
    for _ in range(trials):
        n = rng.choice(list(n_range))
        max_m = n * (n - 1) // 2
        m = rng.randint(n - 1, min(max_m, 3 * n))
        out.append(random_connected_graph(n, m, seed=rng.randrange(2**32)))
    return out


def sim_vs_oracle(
    trials: int = 50,
    seed: int = 0,
    n_range: Sequence[int] = range(2, 101),
    beta: int = 4,
    program: str = "apsp",
    extra: Iterable[tuple[str, LabeledGraph]] = (),
) -> tuple[VerifyReport, list[str]]:
    """Simulate on seeded random graphs (and any ``extra`` graphs); returns the report and per-run JSON."""
    rep = VerifyReport(
        "sim-vs-oracle",
        invocation={"trials": trials, "seed": seed, "n_range": [min(n_range), max(n_range)], "beta": beta, "program": program},
    )
    t0 = time.perf_counter()
    runs = []
    for i, g in enumerate(random_graphs(trials, seed, n_range)):
        runs.append(check_simulation(g, rep, f"random#{i} n={g.node_count} m={g.edge_count}", beta, program))
    for desc, g in extra:
        runs.append(check_simulation(g, rep, desc, beta, program))
    rep.elapsed = time.perf_counter() - t0
    return rep, runs


SUITES = ("apsp-prop", "ecc-exact", "ecc-approx", "thresholds", "sim-vs-oracle")
