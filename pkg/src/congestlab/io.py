"""Edge-list files, JSON role sidecars and DOT export."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .graph import GraphError, LabeledGraph, Role, Side


def write_edge_list(graph: LabeledGraph) -> str:
    lines = [f"{graph.node_count} {graph.edge_count}"]
    lines += [f"{u} {v}" for u, v in graph.edges()]
    return "\n".join(lines) + "\n"


def read_edge_list(text: str) -> tuple[int, list[tuple[int, int]]]:
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not rows or len(rows[0]) != 2:
        raise GraphError("edge list must start with a 'n m' header line")
    try:
        n, m = int(rows[0][0]), int(rows[0][1])
        edges = [(int(a), int(b)) for a, b in rows[1:]]
    except ValueError as exc:
        raise GraphError(f"malformed edge list: {exc}") from None
    if len(edges) != m:
        raise GraphError(f"header declares {m} edges, found {len(edges)}")
    return n, edges


def sidecar_dict(graph: LabeledGraph, meta: dict[str, Any] | None = None) -> dict[str, Any]:
    out: dict[str, Any] = {
        "roles": {str(role): idx for idx, role in sorted(graph.roles.items())},
        "side": {
            "alice": sorted(u for u, s in graph.side.items() if s is Side.ALICE),
            "bob": sorted(u for u, s in graph.side.items() if s is Side.BOB),
        },
    }
    if meta:
        out["meta"] = meta
    return out


def parse_sidecar(data: dict[str, Any]) -> tuple[dict[int, Role], dict[int, Side], dict[str, Any]]:
    try:
        roles = {int(idx): Role.parse(tag) for tag, idx in data.get("roles", {}).items()}
        side = {int(u): Side.ALICE for u in data.get("side", {}).get("alice", [])}
        for u in data.get("side", {}).get("bob", []):
            if int(u) in side:
                raise GraphError(f"node {u} declared on both sides")
            side[int(u)] = Side.BOB
    except (AttributeError, TypeError, ValueError) as exc:
        raise GraphError(f"malformed role sidecar: {exc}") from None
    return roles, side, dict(data.get("meta", {}))


def to_dot(graph: LabeledGraph, name: str = "G") -> str:
    colors = {Side.ALICE: "lightblue", Side.BOB: "salmon"}
    lines = [f"graph {name} {{"]
    for u in range(graph.node_count):
        label = str(graph.roles.get(u, u))
        attrs = [f'label="{label}"']
        if u in graph.side:
            attrs.append(f'style=filled, fillcolor="{colors[graph.side[u]]}"')
        lines.append(f"  {u} [{', '.join(attrs)}];")
    for u, v in graph.edges():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def sidecar_path(edge_path: Path) -> Path:
    return edge_path.with_suffix(".roles.json")


def save_graph(
    graph: LabeledGraph, prefix: str | Path, meta: dict[str, Any] | None = None, dot: bool = False
) -> list[Path]:
    """Write ``<prefix>.edges`` and ``<prefix>.roles.json`` (and ``<prefix>.dot``)."""
    prefix = Path(prefix)
    edges = prefix.with_suffix(".edges")
    side = sidecar_path(edges)
    edges.write_text(write_edge_list(graph))
    side.write_text(json.dumps(sidecar_dict(graph, meta), indent=1, sort_keys=True) + "\n")
    written = [edges, side]
    if dot:
        dot_path = prefix.with_suffix(".dot")
        dot_path.write_text(to_dot(graph))
        written.append(dot_path)
    return written


def load_graph(
    edge_path: str | Path, roles_path: str | Path | None = None
) -> tuple[LabeledGraph, dict[str, Any]]:
    """Read an edge list plus its sidecar (defaults to ``<stem>.roles.json`` if present)."""
    edge_path = Path(edge_path)
    n, edges = read_edge_list(edge_path.read_text())
    roles: dict[int, Role] = {}
    side: dict[int, Side] = {}
    meta: dict[str, Any] = {}
    rp = Path(roles_path) if roles_path is not None else sidecar_path(edge_path)
    if roles_path is not None or rp.exists():
        try:
            data = json.loads(rp.read_text())
        except json.JSONDecodeError as exc:
            raise GraphError(f"malformed role sidecar {rp}: {exc}") from None
        roles, side, meta = parse_sidecar(data)
    return LabeledGraph.from_edges(n, edges, roles, side), meta
