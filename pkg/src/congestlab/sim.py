"""Synchronous CONGEST round engine with per-edge bandwidth accounting.

Round ``t`` transmits what every node emitted at the end of round ``t - 1``
(or from ``init`` for ``t = 1``), delivers it, then lets each live node
compute. A node's ``init`` may halt immediately, in which case the run uses
zero rounds. Every directed edge carries at most ``B`` bits per round;
exceeding it is a hard error rather than a silent queue.
"""

from __future__ import annotations

import json
import random
from collections.abc import Callable, Mapping
from dataclasses import dataclass, field
from typing import Any

from .graph import GraphError, LabeledGraph

TAG_BITS = 3

Outbox = Mapping[int, list["Message"]]


def id_bits(n: int) -> int:
    """``ceil(log2(n + 1))``: enough bits for any ID or hop count below ``n``."""
    return max(1, n.bit_length())


def bandwidth_bits(n: int, beta: int = 4) -> int:
    if n < 1 or beta < 1:
        raise ValueError("n and beta must be positive")
    return beta * id_bits(n)


@dataclass(frozen=True)
class Message:
    kind: int
    fields: tuple[int, ...] = ()
    widths: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if not 0 <= self.kind < (1 << TAG_BITS):
            raise ValueError(f"message tag {self.kind} does not fit in {TAG_BITS} bits")
        if len(self.fields) != len(self.widths):
            raise ValueError("each field needs a declared width")
        for value, width in zip(self.fields, self.widths):
            if not 0 <= value < (1 << width):
                raise ValueError(f"field value {value} does not fit in {width} bits")

    @property
    def size_bits(self) -> int:
        return TAG_BITS + sum(self.widths)


@dataclass(frozen=True)
class SimConfig:
    beta: int = 4
    max_rounds: int = 100_000
    seed: int = 0

    def __post_init__(self) -> None:
        if self.beta < 1 or self.max_rounds < 1:
            raise ValueError("beta and max_rounds must be positive")


@dataclass(frozen=True)
class NodeContext:
    """What a node knows when it starts: its ID, ``n``, its degree and the bandwidth.

    Ports ``0..degree-1`` lead to the neighbours in increasing ID order.
    """

    node_id: int
    n: int
    degree: int
    bandwidth: int
    local_input: Any = None
    rng: random.Random = field(default_factory=random.Random, compare=False)


class NodeProgram:
    """Per-node state machine; the engine makes one instance per node.

    Subclasses override :meth:`init` and :meth:`on_round`, both of which
    return an outbox mapping port to the messages to transmit next round,
    and call :meth:`halt` to stop with an output.
    """

    halted: bool = False
    output: Any = None

    def init(self, ctx: NodeContext) -> Outbox:
        return {}

    def on_round(self, rnd: int, inbox: Mapping[int, list[Message]]) -> Outbox:
        return {}

    def halt(self, output: Any = None) -> None:
        self.halted = True
        self.output = output


class SimulationError(RuntimeError):
    pass


class BandwidthExceeded(SimulationError):
    def __init__(self, rnd: int, edge: tuple[int, int], bits: int, limit: int):
        super().__init__(f"round {rnd}: edge {edge[0]}->{edge[1]} attempted {bits} bits, limit {limit}")
        self.round = rnd
        self.edge = edge
        self.bits = bits
        self.limit = limit


class SimulationTimeout(SimulationError):
    def __init__(self, rounds: int, unhalted: list[int], nodes: list[NodeProgram]):
        super().__init__(f"{len(unhalted)} node(s) still running after {rounds} rounds, e.g. {unhalted[:8]}")
        self.rounds = rounds
        self.unhalted = unhalted
        self.nodes = nodes


@dataclass
class SimResult:
    rounds_used: int
    outputs: list[Any]
    edge_load: list[dict[tuple[int, int], int]]
    delivered_bits: list[int]
    bandwidth_bits: int
    halted: bool = True

    @property
    def total_bits(self) -> int:
        return sum(sum(load.values()) for load in self.edge_load)


@dataclass(frozen=True)
class CutReport:
    cut_size: int
    total_cross_bits: int
    per_round_cross_bits: tuple[int, ...]
    rounds_used: int
    bandwidth_bits: int

    @property
    def bound_bits(self) -> int:
        return self.rounds_used * self.cut_size * self.bandwidth_bits

    @property
    def within_bound(self) -> bool:
        return self.total_cross_bits <= self.bound_bits


ProgramFactory = Callable[[], NodeProgram]


def _node_rng(seed: int, node: int) -> random.Random:
    return random.Random(f"{seed}:{node}")


def run(
    graph: LabeledGraph,
    program: ProgramFactory,
    config: SimConfig = SimConfig(),
    inputs: Mapping[int, Any] | None = None,
    raise_on_timeout: bool = True,
) -> SimResult:
    """Execute ``program`` on every node of ``graph`` until all nodes halt."""
    n = graph.node_count
    adj = graph.adjacency
    B = bandwidth_bits(n, config.beta)
    inputs = inputs or {}
    back_port = [{v: adj[v].index(u) for v in adj[u]} for u in range(n)]

    nodes = [program() for _ in range(n)]
    pending: list[Outbox] = []
    for u, node in enumerate(nodes):
        ctx = NodeContext(u, n, len(adj[u]), B, inputs.get(u), _node_rng(config.seed, u))
        pending.append(node.init(ctx) or {})

    edge_load: list[dict[tuple[int, int], int]] = []
    delivered: list[int] = []
    rnd = 0
    while not all(node.halted for node in nodes):
        if rnd >= config.max_rounds:
            unhalted = [u for u, node in enumerate(nodes) if not node.halted]
            if raise_on_timeout:
                raise SimulationTimeout(rnd, unhalted, nodes)
            return SimResult(rnd, [nd.output for nd in nodes], edge_load, delivered, B, halted=False)
        rnd += 1
        load: dict[tuple[int, int], int] = {}
        inboxes: list[dict[int, list[Message]]] = [{} for _ in range(n)]
        received = 0
        for u in range(n):
            out = pending[u]
            for port in sorted(out):
                msgs = out[port]
                if not msgs:
                    continue
                if not 0 <= port < len(adj[u]):
                    raise GraphError(f"node {u} sent on nonexistent port {port}")
                v = adj[u][port]
                bits = sum(m.size_bits for m in msgs)
                if bits > B:
                    raise BandwidthExceeded(rnd, (u, v), bits, B)
                load[(u, v)] = bits
                inboxes[v].setdefault(back_port[u][v], []).extend(msgs)
                received += bits
        edge_load.append(load)
        delivered.append(received)
        pending = [{} for _ in range(n)]
        for u, node in enumerate(nodes):
            if not node.halted:
                pending[u] = node.on_round(rnd, inboxes[u]) or {}
    return SimResult(rnd, [node.output for node in nodes], edge_load, delivered, B)


def cut_report(result: SimResult, graph: LabeledGraph) -> CutReport:
    """Bits that crossed between Alice's and Bob's nodes, per round and in total."""
    cut = graph.cut_edges()
    side = graph.side
    per_round = tuple(
        sum(bits for (u, v), bits in load.items() if side[u] != side[v]) for load in result.edge_load
    )
    return CutReport(
        cut_size=len(cut),
        total_cross_bits=sum(per_round),
        per_round_cross_bits=per_round,
        rounds_used=result.rounds_used,
        bandwidth_bits=result.bandwidth_bits,
    )


def _jsonable(value: Any) -> Any:
    if isinstance(value, Mapping):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if hasattr(value, "item"):  # numpy scalars
        return value.item()
    return value


def report_dict(result: SimResult, cut: CutReport | None = None) -> dict[str, Any]:
    out: dict[str, Any] = {
        "rounds": result.rounds_used,
        "outputs": {str(u): _jsonable(o) for u, o in enumerate(result.outputs)},
        "bandwidth_bits": result.bandwidth_bits,
        "halted": result.halted,
        "total_bits": result.total_bits,
    }
    if cut is not None:
        out["cut"] = {
            "size": cut.cut_size,
            "total_bits": cut.total_cross_bits,
            "per_round": list(cut.per_round_cross_bits),
            "bound_bits": cut.bound_bits,
            "within_bound": cut.within_bound,
        }
    return out


def to_json(result: SimResult, cut: CutReport | None = None) -> str:
    return json.dumps(report_dict(result, cut), sort_keys=True, separators=(",", ":"))
