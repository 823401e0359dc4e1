"""Reference CONGEST programs: BFS tree, all-pairs BFS, eccentricities.

The three programs stack: :class:`LeaderBfsTree` builds a BFS tree rooted at
the minimum ID, :class:`PipelinedApsp` adds one BFS wave per node with
launches scheduled by a token walking the tree depth-first, and
:class:`EccDiameterRadius` aggregates the resulting eccentricities up and
down the tree.

Node IDs are ``0..n-1`` and every node knows ``n``, so a node that has heard
of leader 0 knows the election is over; tree and table completion are
detected locally rather than by a global phase clock.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Mapping

from .sim import TAG_BITS, Message, NodeContext, NodeProgram, id_bits

LEADER, CHILD, WAVE, TOKEN, AGG, RESULT = range(6)


class LeaderBfsTree(NodeProgram):
    """Min-ID flooding that also fixes each node's BFS depth, parent and children.

    Halts once its own tree neighbourhood is known, at most ``depth + 2``
    rounds in. Output: ``leader``, ``depth``, ``parent`` (port or None) and
    ``children`` (ports).
    """

    halt_when_tree_ready = True

    def init(self, ctx: NodeContext) -> dict[int, list[Message]]:
        self.ctx = ctx
        self.id = ctx.node_id
        self.w = id_bits(ctx.n)
        big = TAG_BITS + 2 * self.w
        if ctx.n > 1 and big > ctx.bandwidth:
            raise ValueError(
                f"bandwidth {ctx.bandwidth} bits cannot carry a {big}-bit message; raise beta"
            )
        self.ports = range(ctx.degree)
        self._urgent: list[deque[Message]] = [deque() for _ in self.ports]
        self._control: list[deque[Message]] = [deque() for _ in self.ports]
        self.leader = self.id
        self.depth = 0
        self.parent: int | None = None
        self.children: list[int] = []
        self._heard: set[int] = set()
        self.tree_ready = False
        self.rnd = 0
        self.after_init()
        self._adopt(self.id, 0, None)
        self._check_tree()
        self.step(0)
        return self._flush()

    # -- plumbing ---------------------------------------------------------

    def _send(self, port: int, msg: Message, urgent: bool = False) -> None:
        (self._urgent if urgent else self._control)[port].append(msg)

    def _flush(self) -> dict[int, list[Message]]:
        out: dict[int, list[Message]] = {}
        budget = self.ctx.bandwidth
        for port in self.ports:
            room = budget
            batch = []
            for queue in (self._urgent[port], self._control[port]):
                while queue and queue[0].size_bits <= room:
                    msg = queue.popleft()
                    room -= msg.size_bits
                    batch.append(msg)
            if batch:
                out[port] = batch
        return out

    def pending_messages(self) -> int:
        return sum(len(q) for q in self._urgent) + sum(len(q) for q in self._control)

    def on_round(self, rnd: int, inbox: Mapping[int, list[Message]]) -> dict[int, list[Message]]:
        self.rnd = rnd
        best = None
        for port in sorted(inbox):
            for msg in inbox[port]:
                if msg.kind == LEADER:
                    cand = (msg.fields[0], msg.fields[1] + 1, port)
                    if best is None or cand < best:
                        best = cand
                    if msg.fields[0] == 0:
                        self._heard.add(port)
                elif msg.kind == CHILD:
                    self.children.append(port)
                    self._heard.add(port)
                else:
                    self.handle(rnd, port, msg)
        if best is not None and best[:2] < (self.leader, self.depth):
            self._adopt(*best)
        self._check_tree()
        self.step(rnd)
        return self._flush()

    def _adopt(self, leader: int, depth: int, parent: int | None) -> None:
        self.leader, self.depth, self.parent = leader, depth, parent
        msg = Message(LEADER, (leader, depth), (self.w, self.w))
        for port in self.ports:
            if port != parent:
                self._send(port, msg, urgent=True)
        if leader == 0 and parent is not None:
            self._send(parent, Message(CHILD))

    def _check_tree(self) -> None:
        if self.tree_ready or self.leader != 0:
            return
        if all(p in self._heard or p == self.parent for p in self.ports):
            self.children.sort()
            self.tree_ready = True
            self.on_tree_ready()

    # -- hooks ------------------------------------------------------------

    def after_init(self) -> None:
        pass

    def handle(self, rnd: int, port: int, msg: Message) -> None:
        pass

    def step(self, rnd: int) -> None:
        pass

    def on_tree_ready(self) -> None:
        if self.halt_when_tree_ready:
            self.halt(self.tree_output())

    def tree_output(self) -> dict:
        return {
            "leader": self.leader,
            "depth": self.depth,
            "parent": self.parent,
            "children": list(self.children),
        }


class PipelinedApsp(LeaderBfsTree):
    """All-source BFS in O(n) rounds; each node outputs its distance vector.

    A token walks the BFS tree depth-first, one edge per round, and rests one
    round at each node it reaches for the first time; that node then starts a
    BFS wave carrying its ID. Successive waves are far enough apart that at
    most one new wave reaches any node per round, so the first copy of a wave
    to arrive carries the true distance. A node whose table holds all ``n``
    sources is done.
    """

    halt_when_tree_ready = False

    def after_init(self) -> None:
        self.dist: dict[int, int] = {}
        self._token_due: int | None = None
        self._token_next = 0
        self._visited = False
        self.table_complete = False
        self.dfs_done = False

    def on_tree_ready(self) -> None:
        if self.parent is None and not self._visited:
            self._first_visit(self.rnd)

    def _first_visit(self, rnd: int) -> None:
        self._visited = True
        self._relax(self.id, 0, None)
        self._token_next = 0
        self._token_due = rnd + 1

    def _relax(self, src: int, d: int, via: int | None) -> None:
        known = self.dist.get(src)
        if known is not None and known <= d:
            return
        self.dist[src] = d
        self.on_improve(src, known, d)
        msg = Message(WAVE, (src, d), (self.w, self.w))
        for port in self.ports:
            if port != via:
                self._send(port, msg, urgent=True)

    def on_improve(self, src: int, old: int | None, new: int) -> None:
        pass

    def handle(self, rnd: int, port: int, msg: Message) -> None:
        if msg.kind == WAVE:
            self._relax(msg.fields[0], msg.fields[1] + 1, port)
        elif msg.kind == TOKEN:
            if port == self.parent and not self._visited:
                self._token_due = -1  # first visit, launched once the tree is known
            else:
                self._token_next = self.children.index(port) + 1
                self._token_due = rnd
        else:
            self.handle_more(rnd, port, msg)

    def handle_more(self, rnd: int, port: int, msg: Message) -> None:
        pass

    def step(self, rnd: int) -> None:
        if self._token_due == -1 and self.tree_ready:
            self._first_visit(rnd)
        elif self._token_due is not None and self._token_due != -1 and rnd >= self._token_due:
            self._token_due = None
            if self._token_next < len(self.children):
                self._send(self.children[self._token_next], Message(TOKEN))
            elif self.parent is not None:
                self._send(self.parent, Message(TOKEN))
            else:
                self.dfs_done = True
        if not self.table_complete and len(self.dist) == self.ctx.n:
            self._complete()

    def _complete(self) -> None:
        self.table_complete = True
        self.on_table_complete()

    def distance_vector(self) -> list[int]:
        return [self.dist[v] for v in range(self.ctx.n)]

    def on_table_complete(self) -> None:
        self.halt(self.distance_vector())


class EccDiameterRadius(PipelinedApsp):
    """Eccentricity per node, then diameter and radius via convergecast and broadcast.

    Output: ``{"ecc", "diameter", "radius", "dist"}``.
    """

    def after_init(self) -> None:
        self._agg: dict[int, tuple[int, int]] = {}
        self._sent_up = False
        self.ecc: int | None = None
        super().after_init()

    def on_table_complete(self) -> None:
        self.ecc = max(self.dist.values())
        self._try_convergecast()

    def _try_convergecast(self) -> None:
        if self._sent_up or self.ecc is None or not self.tree_ready:
            return
        if any(c not in self._agg for c in self.children):
            return
        hi = max([self.ecc] + [a[0] for a in self._agg.values()])
        lo = min([self.ecc] + [a[1] for a in self._agg.values()])
        self._sent_up = True
        if self.parent is None:
            self._finish(hi, lo)
        else:
            self._send(self.parent, Message(AGG, (hi, lo), (self.w, self.w)))

    def _finish(self, diameter: int, radius: int) -> None:
        msg = Message(RESULT, (diameter, radius), (self.w, self.w))
        for c in self.children:
            self._send(c, msg)
        self.halt({"ecc": self.ecc, "diameter": diameter, "radius": radius, "dist": self.distance_vector()})

    def handle_more(self, rnd: int, port: int, msg: Message) -> None:
        if msg.kind == AGG:
            self._agg[port] = msg.fields
            self._try_convergecast()
        elif msg.kind == RESULT:
            self._finish(*msg.fields)

    def step(self, rnd: int) -> None:
        super().step(rnd)
        if not self.halted:
            self._try_convergecast()


def leader_bfs_tree() -> type[LeaderBfsTree]:
    return LeaderBfsTree


def pipelined_apsp() -> type[PipelinedApsp]:
    return PipelinedApsp


def ecc_diameter_radius() -> type[EccDiameterRadius]:
    return EccDiameterRadius


PROGRAMS = {
    "tree": LeaderBfsTree,
    "apsp": PipelinedApsp,
    "ecc": EccDiameterRadius,
}
