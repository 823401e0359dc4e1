import networkx as nx
import pytest

from congestlab.algorithms import EccDiameterRadius, LeaderBfsTree, PipelinedApsp
from congestlab.gadgets import build_line
from congestlab.graph import A, B, LabeledGraph, apsp_oracle, bfs, distance_params, random_connected_graph
from congestlab.sim import SimConfig, run

from .conftest import from_nx


def path(n):
    return LabeledGraph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


class TestTree:
    def test_star(self):
        g = from_nx(nx.star_graph(7))
        r = run(g, LeaderBfsTree)
        assert r.rounds_used <= 2
        assert r.outputs[0]["children"] == list(range(7))

    @pytest.mark.parametrize("n", [1, 2, 5, 9])
    def test_path_depths(self, n):
        r = run(path(n), LeaderBfsTree)
        assert [o["depth"] for o in r.outputs] == list(range(n))
        assert all(o["leader"] == 0 for o in r.outputs)

    @pytest.mark.parametrize("seed", range(50))
    def test_random_graphs(self, seed):
        rng_n = 2 + seed % 60
        g = random_connected_graph(rng_n, rng_n - 1 + seed, seed)
        r = run(g, LeaderBfsTree)
        depth = bfs(g, 0)
        parent = {}
        for u, o in enumerate(r.outputs):
            assert o["depth"] == depth[u]
            if o["parent"] is None:
                assert u == 0
                continue
            p = g.adjacency[u][o["parent"]]
            assert depth[p] == depth[u] - 1
            parent[u] = p
        # children lists are the inverse of the parent pointers
        for u, o in enumerate(r.outputs):
            kids = {g.adjacency[u][c] for c in o["children"]}
            assert kids == {v for v, p in parent.items() if p == u}
        assert r.rounds_used <= max(depth) + 2


class TestApsp:
    def test_path4(self):
        r = run(path(4), PipelinedApsp)
        assert r.outputs[0] == [0, 1, 2, 3] and r.outputs[3] == [3, 2, 1, 0]

    def test_fig2(self, fig2):
        r = run(fig2, PipelinedApsp)
        assert r.outputs == apsp_oracle(fig2).dist.tolist()
        assert r.outputs[fig2.node(A(1))][fig2.node(B(3))] == 3

    def test_complete(self):
        r = run(from_nx(nx.complete_graph(5)), PipelinedApsp)
        assert r.outputs == [[0 if i == j else 1 for j in range(5)] for i in range(5)]

    def test_single_node(self):
        r = run(path(1), PipelinedApsp)
        assert r.outputs == [[0]]

    def test_first_arrival_is_final(self):
        """A wave's first copy carries the true distance, so no entry is ever lowered."""
        lowered = []

        class Watch(PipelinedApsp):
            def on_improve(self, src, old, new):
                if old is not None:
                    lowered.append((self.id, src, old, new))

        for seed in range(10):
            g = random_connected_graph(30, 60, seed)
            r = run(g, Watch)
            assert r.outputs == apsp_oracle(g).dist.tolist()
        assert lowered == []

    @pytest.mark.parametrize("name,G", [
        ("petersen", nx.petersen_graph()),
        ("grid", nx.grid_2d_graph(5, 6)),
        ("cycle", nx.cycle_graph(17)),
        ("barbell", nx.barbell_graph(6, 5)),
        ("tree", nx.balanced_tree(2, 4)),
    ])
    def test_named_graphs(self, name, G):
        g = from_nx(G)
        r = run(g, PipelinedApsp)
        _, D, _ = distance_params(apsp_oracle(g))
        assert r.outputs == apsp_oracle(g).dist.tolist()
        assert r.rounds_used <= 6 * g.node_count + 6 * D

    def test_beta_too_small(self):
        with pytest.raises(ValueError, match="beta"):
            run(path(8), PipelinedApsp, SimConfig(beta=1))


class TestEcc:
    def test_path3(self):
        r = run(path(3), EccDiameterRadius)
        assert [o["ecc"] for o in r.outputs] == [2, 1, 2]
        assert all((o["diameter"], o["radius"]) == (2, 1) for o in r.outputs)

    def test_gadget(self, ecc23):
        r = run(ecc23, EccDiameterRadius)
        ecc = [r.outputs[ecc23.node(A(p))]["ecc"] for p in (1, 2, 3)]
        assert ecc == [4, 6, 6]
        exact, D, R = distance_params(apsp_oracle(ecc23))
        assert [o["ecc"] for o in r.outputs] == exact.tolist()
        assert r.outputs[0]["diameter"] == D and r.outputs[0]["radius"] == R

    def test_cycle(self):
        r = run(from_nx(nx.cycle_graph(6)), EccDiameterRadius)
        assert all(o["ecc"] == 3 and o["diameter"] == 3 and o["radius"] == 3 for o in r.outputs)

    def test_line(self):
        r = run(build_line(6), EccDiameterRadius)
        assert [o["ecc"] for o in r.outputs] == [6, 5, 4, 3, 4, 5, 6]
        assert r.outputs[3]["radius"] == 3

    @pytest.mark.parametrize("seed", range(10))
    def test_random(self, seed):
        g = random_connected_graph(40, 70, seed)
        r = run(g, EccDiameterRadius)
        exact, D, R = distance_params(apsp_oracle(g))
        assert [o["ecc"] for o in r.outputs] == exact.tolist()
        assert {(o["diameter"], o["radius"]) for o in r.outputs} == {(D, R)}
