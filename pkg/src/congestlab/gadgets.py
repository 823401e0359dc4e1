"""Reduction graphs built from a two-party input ``(x, y)``, plus their decoders.

Each builder returns a :class:`~congestlab.graph.LabeledGraph` whose roles
name the gadget vertices and whose ``side`` map says which party simulates
each node. Decoders recover ``|x ∩ y|`` from distances, eccentricities or
approximate eccentricities, touching only Alice-side data.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

from .graph import (
    A0,
    B0,
    A,
    AHelper,
    APrime,
    B,
    BDoublePrime,
    BHelper,
    BPrime,
    DistanceMatrix,
    GraphError,
    LabeledGraph,
    LineNode,
    Padding,
    Side,
    subdivide_edges,
)
from .instances import bit_b, index_to_pair, pair_count


class GadgetParameterError(ValueError):
    """Requested size violates a construction precondition."""


class ApproximationContractError(ValueError):
    """An eccentricity estimate lies outside ``[e / rho, e]``."""


# -- APSP gadget ----------------------------------------------------------


@dataclass(frozen=True)
class ApspGadgetParams:
    n: int
    s: int
    k: int

    @property
    def has_b0(self) -> bool:
        return self.n % 2 == 0

    @property
    def alice_size(self) -> int:
        return self.s + 1

    @property
    def bob_size(self) -> int:
        return self.s + 1 if self.has_b0 else self.s


def apsp_params(n: int) -> ApspGadgetParams:
    if n < 5:
        raise GadgetParameterError(f"APSP gadget needs n >= 5, got n={n}")
    s = (n - 1) // 2
    return ApspGadgetParams(n=n, s=s, k=pair_count(s))


def build_apsp_gadget(n: int, x: Sequence[int], y: Sequence[int]) -> LabeledGraph:
    """APSP reduction graph: ``d(a_i, b_j) = 3`` iff the pair's bits are both 1.

    Layout: ``a_0 = 0``, ``a_i = i``; then ``b_0`` (even ``n`` only) and
    ``b_1..b_s``. Alice holds every ``a`` node, Bob every ``b`` node; the cut
    is ``{(a_i, b_i)}``.
    """
    prm = apsp_params(n)
    s, k = prm.s, prm.k
    if len(x) != k or len(y) != k:
        raise GadgetParameterError(f"inputs must have length k={k} for n={n}, got {len(x)}/{len(y)}")

    a = list(range(s + 1))
    b0 = s + 1 if prm.has_b0 else None
    first_b = s + 2 if prm.has_b0 else s + 1
    b = [b0] + [first_b + i - 1 for i in range(1, s + 1)]

    roles = {a[0]: A0}
    side = {a[0]: Side.ALICE}
    for i in range(1, s + 1):
        roles[a[i]] = A(i)
        roles[b[i]] = B(i)
        side[a[i]] = Side.ALICE
        side[b[i]] = Side.BOB
    if b0 is not None:
        roles[b0] = B0
        side[b0] = Side.BOB

    edges = []
    for i in range(1, s + 1):
        edges.append((a[i], b[i]))
        edges.append((a[0], a[i]))
        if b0 is not None:
            edges.append((b0, b[i]))
    for p in range(1, k + 1):
        i, j = index_to_pair(p, s)
        if not x[p - 1]:
            edges.append((a[i], a[j]))
        if not y[p - 1]:
            edges.append((b[i], b[j]))
    return LabeledGraph.from_edges(n, edges, roles, side)


def _count_roles(graph: LabeledGraph, kind: str) -> int:
    return sum(1 for r in graph.roles.values() if r.kind == kind)


def decode_apsp(dm: DistanceMatrix, graph: LabeledGraph) -> int:
    """Count pairs ``i < j`` with ``d(a_i, b_j) = 3``, reading only ``a_i`` rows."""
    index = graph.role_index()
    s = _count_roles(graph, "A")
    if s < 2:
        raise GraphError("graph lacks APSP gadget roles A(1..s)")
    try:
        a = [index[A(i)] for i in range(1, s + 1)]
        b = [index[B(i)] for i in range(1, s + 1)]
    except KeyError as exc:
        raise GraphError(f"missing gadget role {exc.args[0]}") from None
    count = 0
    for i in range(s):
        row = dm.row(a[i])
        count += sum(1 for j in range(i + 1, s) if row[b[j]] == 3)
    return count


# -- eccentricity gadget ----------------------------------------------------


def _helper_count(k: int) -> int:
    # floor(log2(k - 1)) + 1 for k >= 2
    return (k - 1).bit_length()


def _worst_case_nodes(k: int, ell: int) -> int:
    s = _helper_count(k)
    return 3 * k + 4 * s + 6 + (ell - 1) * (3 * k + 2 * k * s + 4 + 2 * k)


def min_ecc_nodes(ell: int) -> int:
    if ell < 1:
        raise GadgetParameterError(f"ell must be >= 1, got {ell}")
    return 23 if ell == 1 else 31 * ell - 8


@dataclass(frozen=True)
class EccGadgetParams:
    n: int
    ell: int
    k: int
    s: int

    def n_prime(self, x_weight: int, y_weight: int) -> int:
        """Nodes used before padding, given the number of ones in x and y."""
        k, s, ell = self.k, self.s, self.ell
        return 3 * k + 4 * s + 6 + (ell - 1) * (3 * k + 2 * k * s + 4 + x_weight + y_weight)

    def padding(self, x_weight: int, y_weight: int) -> int:
        return self.n - self.n_prime(x_weight, y_weight)

    @property
    def cut_size(self) -> int:
        return 2 * self.s + 1


def ecc_params(n: int, ell: int) -> EccGadgetParams:
    """Largest ``k`` whose worst-case gadget (``|x| = |y| = k``) fits in ``n`` nodes."""
    lo = min_ecc_nodes(ell)
    if n < lo:
        constraint = "n >= 23" if ell == 1 else "n >= 31*ell - 8"
        raise GadgetParameterError(f"eccentricity gadget needs {constraint} (= {lo}), got n={n}")
    k = 2
    while _worst_case_nodes(k + 1, ell) <= n:
        k += 1
    return EccGadgetParams(n=n, ell=ell, k=k, s=_helper_count(k))


def build_ecc_gadget(n: int, ell: int, x: Sequence[int], y: Sequence[int]) -> LabeledGraph:
    """Eccentricity reduction graph, every non-cut edge stretched to length ``ell``.

    At ``ell = 1`` this is the exact-eccentricity construction. The cut
    edges ``(a^0_i, b^1_i)``, ``(a^1_i, b^0_i)``, ``(a'_3, b'_3)`` and the
    padding attachments ``(a'_1, a''_i)`` are never subdivided.
    """
    prm = ecc_params(n, ell)
    k, s = prm.k, prm.s
    if len(x) != k or len(y) != k:
        raise GadgetParameterError(f"inputs must have length k={k} for n={n}, ell={ell}")
    pad = prm.padding(sum(x), sum(y))

    roles: dict[int, object] = {}
    side: dict[int, Side] = {}

    def add(role, party: Side) -> int:
        idx = len(roles)
        roles[idx] = role
        side[idx] = party
        return idx

    a = [None] + [add(A(p), Side.ALICE) for p in range(1, k + 1)]
    ah = {(i, bit): add(AHelper(i, bit), Side.ALICE) for i in range(1, s + 1) for bit in (0, 1)}
    ap = [None] + [add(APrime(j), Side.ALICE) for j in (1, 2, 3)]
    pads = [add(Padding(i), Side.ALICE) for i in range(1, pad + 1)]
    b = [None] + [add(B(p), Side.BOB) for p in range(1, k + 1)]
    bh = {(i, bit): add(BHelper(i, bit), Side.BOB) for i in range(1, s + 1) for bit in (0, 1)}
    bp = [None] + [add(BPrime(j), Side.BOB) for j in (1, 2, 3)]
    bpp = [None] + [add(BDoublePrime(p), Side.BOB) for p in range(1, k + 1)]

    stretch_a: list[tuple[int, int]] = []
    stretch_b: list[tuple[int, int]] = []
    for p in range(1, k + 1):
        stretch_a += [(a[p], ah[i, bit_b(p, i)]) for i in range(1, s + 1)]
        stretch_a.append((a[p], ap[1]))
        stretch_b += [(b[p], bh[i, bit_b(p, i)]) for i in range(1, s + 1)]
        stretch_b.append((b[p], bp[1]))
        stretch_b.append((b[p], bpp[p]))
    stretch_a += [(ap[1], ap[2]), (ap[2], ap[3])]
    stretch_b += [(bp[1], bp[2]), (bp[2], bp[3])]
    stretch_a += [(a[p], ap[3]) for p in range(1, k + 1) if x[p - 1]]
    stretch_b += [(b[p], bp[3]) for p in range(1, k + 1) if y[p - 1]]

    fixed = [(ap[1], v) for v in pads]
    fixed += [(ah[i, 0], bh[i, 1]) for i in range(1, s + 1)]
    fixed += [(ah[i, 1], bh[i, 0]) for i in range(1, s + 1)]
    fixed.append((ap[3], bp[3]))

    base = LabeledGraph.from_edges(len(roles), stretch_a + stretch_b + fixed, roles, side)
    owner = {(min(e), max(e)): Side.ALICE for e in stretch_a}
    owner.update({(min(e), max(e)): Side.BOB for e in stretch_b})
    graph = subdivide_edges(base, stretch_a + stretch_b, ell, side_of_edge=owner)
    assert graph.node_count == n, (graph.node_count, n)
    return graph


def _a_nodes(graph: LabeledGraph) -> list[int]:
    index = graph.role_index()
    k = _count_roles(graph, "A")
    if k == 0:
        raise GraphError("graph lacks eccentricity gadget roles A(1..k)")
    try:
        return [index[A(p)] for p in range(1, k + 1)]
    except KeyError as exc:
        raise GraphError(f"missing gadget role {exc.args[0]}") from None


def decode_ecc(ecc: Sequence[int], graph: LabeledGraph, ell: int) -> int:
    """Count ``p`` with ``e(a_p) < 5*ell + 1``."""
    far = 5 * ell + 1
    return sum(1 for u in _a_nodes(graph) if ecc[u] < far)


def _as_fraction(eps) -> Fraction:
    if isinstance(eps, float):
        return Fraction(repr(eps))
    return Fraction(eps)


def choose_ell(eps) -> int:
    """Subdivision length that separates the two eccentricity values under (5/3 - eps)-approximation."""
    e = _as_fraction(eps)
    if not 0 < e < Fraction(2, 3):
        raise GadgetParameterError(f"need 0 < eps < 2/3, got {eps}")
    return math.ceil(Fraction(2) / (9 * e))


def approx_thresholds(ell: int, eps) -> tuple[int, Fraction]:
    """``(low, high)``: the intersecting eccentricity and the smallest admissible
    estimate of the non-intersecting one. Exact rationals; ``low < high`` whenever
    ``ell >= choose_ell(eps)``."""
    e = _as_fraction(eps)
    return 3 * ell + 1, Fraction(5 * ell + 1) / (Fraction(5, 3) - e)


def check_estimate(est, exact: int, eps) -> None:
    rho = Fraction(5, 3) - _as_fraction(eps)
    q = _as_fraction(est)
    if not (Fraction(exact) / rho <= q <= exact):
        raise ApproximationContractError(
            f"estimate {est} outside [{float(Fraction(exact) / rho):.4f}, {exact}]"
        )


def decode_ecc_approx(
    est: Sequence,
    graph: LabeledGraph,
    ell: int,
    eps,
    exact: Sequence[int] | None = None,
) -> int:
    """Count ``p`` whose estimate is at most ``3*ell + 1``.

    Pass the true eccentricities as ``exact`` to check every consulted
    estimate against the ``(5/3 - eps)``-approximation contract first.
    """
    low = 3 * ell + 1
    count = 0
    for u in _a_nodes(graph):
        if exact is not None:
            check_estimate(est[u], int(exact[u]), eps)
        if est[u] <= low:
            count += 1
    return count


# -- line network -----------------------------------------------------------


def build_line(d: int) -> LabeledGraph:
    """Path ``A_0 - ... - A_d``; only the endpoints are assigned to a party."""
    if d < 1:
        raise GadgetParameterError(f"line length must be >= 1, got d={d}")
    roles = {i: LineNode(i) for i in range(d + 1)}
    return LabeledGraph.from_edges(
        d + 1, [(i, i + 1) for i in range(d)], roles, {0: Side.ALICE, d: Side.BOB}
    )
