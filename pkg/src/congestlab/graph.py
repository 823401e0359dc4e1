"""Labeled simple graphs, BFS distances and edge subdivision.

Everything downstream (gadget decoders, simulator checks) is verified against
the per-source BFS in this module, so it is kept deliberately plain.
"""

from __future__ import annotations

import enum
import random
import re
from bisect import bisect_left
from collections import deque
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

#: Marks an unreachable pair. Never a valid hop count, so arithmetic on it is
#: caught by ``distance_params`` rather than silently producing huge numbers.
UNREACHABLE = -1


class GraphError(ValueError):
    """Malformed graph input (bad index, missing edge, duplicate role...)."""


class DisconnectedGraphError(GraphError):
    pass


class Side(enum.Enum):
    ALICE = "alice"
    BOB = "bob"


class Role(NamedTuple):
    """A node role tag such as ``A(3)``, ``BPrime(2)`` or ``Intermediate(4,9,1)``."""

    kind: str
    args: tuple[int, ...] = ()

    def __str__(self) -> str:
        if not self.args:
            return self.kind
        return f"{self.kind}({','.join(str(a) for a in self.args)})"

    @classmethod
    def parse(cls, text: str) -> Role:
        m = _ROLE_RE.fullmatch(text.strip())
        if m is None:
            raise GraphError(f"unparseable role tag {text!r}")
        args = m.group(2)
        if not args:
            return cls(m.group(1))
        return cls(m.group(1), tuple(int(a) for a in args.split(",")))


_ROLE_RE = re.compile(r"([A-Za-z][A-Za-z0-9]*)(?:\(([-0-9,\s]*)\))?")


# Role constructors used by the gadget builders.
def _role(kind: str):
    def make(*args: int) -> Role:
        return Role(kind, tuple(args))

    make.__name__ = kind
    return make


A = _role("A")
B = _role("B")
AHelper = _role("AHelper")
BHelper = _role("BHelper")
APrime = _role("APrime")
BPrime = _role("BPrime")
BDoublePrime = _role("BDoublePrime")
Padding = _role("Padding")
LineNode = _role("LineNode")
Intermediate = _role("Intermediate")

A0 = Role("A0")
B0 = Role("B0")


def _norm(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class LabeledGraph:
    """Undirected simple graph on nodes ``0..node_count-1``.

    ``roles`` maps node index to a role tag and ``side`` maps node index to
    the party simulating it. Both are partial. Use :meth:`from_edges` to build
    one; the constructor trusts its arguments.
    """

    node_count: int
    adjacency: tuple[tuple[int, ...], ...]
    roles: Mapping[int, Role] = field(default_factory=dict)
    side: Mapping[int, Side] = field(default_factory=dict)

    @classmethod
    def from_edges(
        cls,
        node_count: int,
        edges: Iterable[tuple[int, int]],
        roles: Mapping[int, Role] | None = None,
        side: Mapping[int, Side] | None = None,
    ) -> LabeledGraph:
        if node_count < 1:
            raise GraphError("node_count must be positive")
        nbrs: list[set[int]] = [set() for _ in range(node_count)]
        for u, v in edges:
            if not (0 <= u < node_count and 0 <= v < node_count):
                raise GraphError(f"edge ({u}, {v}) out of range for n={node_count}")
            if u == v:
                raise GraphError(f"self-loop at {u}")
            if v in nbrs[u]:
                raise GraphError(f"duplicate edge ({u}, {v})")
            nbrs[u].add(v)
            nbrs[v].add(u)
        roles = dict(roles or {})
        side = dict(side or {})
        seen: dict[Role, int] = {}
        for node, role in roles.items():
            if not 0 <= node < node_count:
                raise GraphError(f"role {role} on missing node {node}")
            if role in seen:
                raise GraphError(f"role {role} assigned to nodes {seen[role]} and {node}")
            seen[role] = node
        for node in side:
            if not 0 <= node < node_count:
                raise GraphError(f"side assigned to missing node {node}")
        adjacency = tuple(tuple(sorted(s)) for s in nbrs)
        return cls(node_count, adjacency, roles, side)

    def edges(self) -> Iterator[tuple[int, int]]:
        """Undirected edges as ``(u, v)`` with ``u < v``, in sorted order."""
        for u, nb in enumerate(self.adjacency):
            for v in nb:
                if u < v:
                    yield (u, v)

    @property
    def edge_count(self) -> int:
        return sum(len(nb) for nb in self.adjacency) // 2

    def has_edge(self, u: int, v: int) -> bool:
        nb = self.adjacency[u]
        i = bisect_left(nb, v)
        return i < len(nb) and nb[i] == v

    def degree(self, u: int) -> int:
        return len(self.adjacency[u])

    def node(self, role: Role) -> int:
        """Index of the node carrying ``role``."""
        for idx, r in self.roles.items():
            if r == role:
                return idx
        raise GraphError(f"no node with role {role}")

    def role_index(self) -> dict[Role, int]:
        return {r: i for i, r in self.roles.items()}

    def with_side(self, side: Mapping[int, Side]) -> LabeledGraph:
        return LabeledGraph(self.node_count, self.adjacency, dict(self.roles), dict(side))

    def cut_edges(self) -> list[tuple[int, int]]:
        """Edges whose endpoints lie on different declared sides."""
        missing = [u for u in range(self.node_count) if u not in self.side]
        if missing:
            raise GraphError(f"no side declared for nodes {missing[:10]}")
        return [(u, v) for u, v in self.edges() if self.side[u] != self.side[v]]


def bfs(graph: LabeledGraph, source: int) -> list[int]:
    """Hop distances from ``source``; unreachable nodes get ``UNREACHABLE``."""
    if not 0 <= source < graph.node_count:
        raise GraphError(f"source {source} out of range for n={graph.node_count}")
    dist = [UNREACHABLE] * graph.node_count
    dist[source] = 0
    queue = deque([source])
    adj = graph.adjacency
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for v in adj[u]:
            if dist[v] == UNREACHABLE:
                dist[v] = du
                queue.append(v)
    return dist


class DistanceMatrix:
    """All-pairs hop counts, ``dist[u, v]``, with optional row-access auditing.

    An audited matrix (see :meth:`audited`) records every row read through
    :meth:`row` or :meth:`__getitem__`, which lets tests confirm that a
    decoder only consulted nodes one party could have simulated.
    """

    def __init__(self, dist: np.ndarray):
        dist = np.asarray(dist, dtype=np.int64)
        if dist.ndim != 2 or dist.shape[0] != dist.shape[1]:
            raise GraphError("distance matrix must be square")
        self._dist = dist
        self.accessed: set[int] | None = None

    @property
    def n(self) -> int:
        return self._dist.shape[0]

    @property
    def dist(self) -> np.ndarray:
        """Read-only view of the full matrix (not audited)."""
        view = self._dist.view()
        view.flags.writeable = False
        return view

    def audited(self) -> DistanceMatrix:
        dm = DistanceMatrix(self._dist)
        dm.accessed = set()
        return dm

    def row(self, u: int) -> np.ndarray:
        if self.accessed is not None:
            self.accessed.add(int(u))
        return self.dist[u]

    def __getitem__(self, uv: tuple[int, int]) -> int:
        u, v = uv
        return int(self.row(u)[v])

    def is_connected(self) -> bool:
        return not bool((self._dist == UNREACHABLE).any())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DistanceMatrix):
            return NotImplemented
        return np.array_equal(self._dist, other._dist)

    def __repr__(self) -> str:
        return f"DistanceMatrix(n={self.n})"


class AuditedSequence:
    """Read-only sequence wrapper that logs which indices were read."""

    def __init__(self, values):
        self._values = values
        self.accessed: set[int] = set()

    def __getitem__(self, i: int):
        self.accessed.add(int(i))
        return self._values[i]

    def __len__(self) -> int:
        return len(self._values)


def apsp_oracle(graph: LabeledGraph) -> DistanceMatrix:
    """Exact all-pairs distances by one BFS per source."""
    return DistanceMatrix(np.array([bfs(graph, u) for u in range(graph.node_count)]))


def distance_params(dm: DistanceMatrix) -> tuple[np.ndarray, int, int]:
    """Return ``(eccentricities, diameter, radius)`` of a connected graph."""
    if not dm.is_connected():
        raise DisconnectedGraphError("eccentricity is undefined on a disconnected graph")
    ecc = dm.dist.max(axis=1)
    return ecc, int(ecc.max()), int(ecc.min())


def subdivide_edges(
    graph: LabeledGraph,
    edges: Iterable[tuple[int, int]],
    ell: int,
    side_of_edge: Mapping[tuple[int, int], Side] | None = None,
) -> LabeledGraph:
    """Replace each listed edge by a path of ``ell`` edges.

    New nodes are appended after the existing ones, in the order the edges
    are listed, and carry ``Intermediate(u, v, pos)`` roles with ``u < v``
    and ``pos`` counted from ``u``. ``side_of_edge`` optionally assigns the
    new nodes of a given (normalized) edge to a party.
    """
    if ell < 1:
        raise GraphError("subdivision length must be >= 1")
    targets = [_norm(u, v) for u, v in edges]
    if len(set(targets)) != len(targets):
        raise GraphError("edge listed twice for subdivision")
    for u, v in targets:
        if not graph.has_edge(u, v):
            raise GraphError(f"cannot subdivide missing edge ({u}, {v})")
    if ell == 1 or not targets:
        return graph

    drop = set(targets)
    new_edges = [e for e in graph.edges() if e not in drop]
    roles = dict(graph.roles)
    side = dict(graph.side)
    nxt = graph.node_count
    for u, v in targets:
        chain = [u]
        for pos in range(1, ell):
            roles[nxt] = Intermediate(u, v, pos)
            if side_of_edge is not None and (u, v) in side_of_edge:
                side[nxt] = side_of_edge[(u, v)]
            chain.append(nxt)
            nxt += 1
        chain.append(v)
        new_edges.extend(zip(chain, chain[1:]))
    return LabeledGraph.from_edges(nxt, new_edges, roles, side)


def random_connected_graph(n: int, m: int, seed: int = 0) -> LabeledGraph:
    """Random recursive spanning tree over a shuffled order, plus uniformly random extra edges."""
    max_m = n * (n - 1) // 2
    if n < 1 or not n - 1 <= m <= max_m:
        raise GraphError(f"need n >= 1 and n-1 <= m <= {max_m}, got n={n}, m={m}")
    rng = random.Random(seed)
    order = list(range(n))
    rng.shuffle(order)
    edges = {_norm(order[i], order[rng.randrange(i)]) for i in range(1, n)}
    while len(edges) < m:
        u, v = rng.sample(range(n), 2)
        edges.add(_norm(u, v))
    return LabeledGraph.from_edges(n, sorted(edges))
