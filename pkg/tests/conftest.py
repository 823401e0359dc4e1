import networkx as nx
import pytest

from congestlab.gadgets import build_apsp_gadget, build_ecc_gadget
from congestlab.graph import LabeledGraph


def from_nx(G: nx.Graph) -> LabeledGraph:
    G = nx.convert_node_labels_to_integers(G)
    return LabeledGraph.from_edges(G.number_of_nodes(), G.edges())


def to_nx(g: LabeledGraph) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(range(g.node_count))
    G.add_edges_from(g.edges())
    return G


@pytest.fixture
def fig2():
    """The 8-node APSP example: x=(0,1,0), y=(1,1,0)."""
    return build_apsp_gadget(8, (0, 1, 0), (1, 1, 0))


@pytest.fixture
def ecc23():
    return build_ecc_gadget(23, 1, (1, 0, 0), (1, 1, 0))
