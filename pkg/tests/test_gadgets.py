import itertools
import math
import random
from fractions import Fraction

import pytest

from congestlab import gadgets
from congestlab.gadgets import (
    ApproximationContractError,
    GadgetParameterError,
    apsp_params,
    approx_thresholds,
    build_apsp_gadget,
    build_ecc_gadget,
    build_line,
    choose_ell,
    decode_apsp,
    decode_ecc,
    decode_ecc_approx,
    ecc_params,
)
from congestlab.graph import (
    A0,
    A,
    AuditedSequence,
    B,
    BDoublePrime,
    BPrime,
    APrime,
    GraphError,
    Side,
    apsp_oracle,
    distance_params,
    subdivide_edges,
)
from congestlab.instances import index_to_pair, intersection_size

ALL3 = list(itertools.product((0, 1), repeat=3))


def eq1_nodes(k, ell):
    """Worst-case node count of the stretched gadget, written out independently."""
    s = math.floor(math.log2(k - 1)) + 1
    return 3 * k + 4 * s + 6 + (ell - 1) * (3 * k + 2 * k * s + 4 + 2 * k)


def brute_k(n, ell):
    return max(k for k in range(2, n + 1) if eq1_nodes(k, ell) <= n)


class TestApspParams:
    @pytest.mark.parametrize("n,s,k", [(8, 3, 3), (5, 2, 1), (9, 4, 6)])
    def test_examples(self, n, s, k):
        prm = apsp_params(n)
        assert (prm.s, prm.k) == (s, k)

    @pytest.mark.parametrize("n", range(5, 41))
    def test_side_sizes_sum_to_n(self, n):
        prm = apsp_params(n)
        assert prm.alice_size + prm.bob_size == n
        g = build_apsp_gadget(n, (1,) * prm.k, (1,) * prm.k)
        assert g.node_count == n
        assert sum(1 for s in g.side.values() if s is Side.ALICE) == prm.alice_size

    def test_too_small(self):
        with pytest.raises(GadgetParameterError):
            apsp_params(4)


class TestApspGadget:
    def test_fig2_edges(self, fig2):
        assert fig2.node_count == 8 and fig2.edge_count == 12
        a = [fig2.node(A0)] + [fig2.node(A(i)) for i in (1, 2, 3)]
        b = [fig2.node(B(i)) for i in (1, 2, 3)]
        assert fig2.has_edge(a[1], a[2]) and fig2.has_edge(a[2], a[3]) and not fig2.has_edge(a[1], a[3])
        assert fig2.has_edge(b[1], b[2]) and not fig2.has_edge(b[0], b[1]) and not fig2.has_edge(b[0], b[2])
        assert fig2.cut_edges() == sorted((min(a[i], b[i - 1]), max(a[i], b[i - 1])) for i in (1, 2, 3))

    def test_all_ones_has_base_edges_only(self):
        assert build_apsp_gadget(8, (1, 1, 1), (1, 1, 1)).edge_count == 9
        assert build_apsp_gadget(9, (1,) * 6, (1,) * 6).edge_count == 8

    def test_fig2_distances(self, fig2):
        dm = apsp_oracle(fig2)
        a, b = fig2.node, fig2.node
        assert dm[a(A(1)), b(B(3))] == 3
        assert dm[a(A(1)), b(B(2))] == 2
        assert dm[a(A(2)), b(B(3))] == 2

    def test_length_mismatch(self):
        with pytest.raises(GadgetParameterError):
            build_apsp_gadget(8, (1, 1), (1, 1, 1))

    def test_distance_law_exhaustive_n8(self):
        for x in ALL3:
            for y in ALL3:
                g = build_apsp_gadget(8, x, y)
                dm = apsp_oracle(g)
                for p in range(1, 4):
                    i, j = index_to_pair(p, 3)
                    want = 3 if x[p - 1] and y[p - 1] else 2
                    assert dm[g.node(A(i)), g.node(B(j))] == want

    @pytest.mark.parametrize("n", range(5, 41))
    def test_distance_law_random(self, n):
        rng = random.Random(n)
        prm = apsp_params(n)
        for _ in range(3):
            x = tuple(rng.randrange(2) for _ in range(prm.k))
            y = tuple(rng.randrange(2) for _ in range(prm.k))
            g = build_apsp_gadget(n, x, y)
            dm = apsp_oracle(g)
            for p in range(1, prm.k + 1):
                i, j = index_to_pair(p, prm.s)
                assert dm[g.node(A(i)), g.node(B(j))] in {2, 3}
                assert (dm[g.node(A(i)), g.node(B(j))] == 3) == bool(x[p - 1] and y[p - 1])
            assert decode_apsp(dm, g) == intersection_size(x, y)


class TestDecodeApsp:
    def test_fig2(self, fig2):
        assert decode_apsp(apsp_oracle(fig2), fig2) == 1

    def test_all_zero_x(self):
        g = build_apsp_gadget(8, (0, 0, 0), (1, 0, 1))
        assert decode_apsp(apsp_oracle(g), g) == 0

    def test_all_ones(self):
        g = build_apsp_gadget(8, (1, 1, 1), (1, 1, 1))
        assert decode_apsp(apsp_oracle(g), g) == 3

    def test_reads_only_alice_rows(self, fig2):
        dm = apsp_oracle(fig2).audited()
        decode_apsp(dm, fig2)
        assert dm.accessed and all(fig2.side[u] is Side.ALICE for u in dm.accessed)

    def test_missing_roles(self):
        g = build_line(3)
        with pytest.raises(GraphError):
            decode_apsp(apsp_oracle(g), g)


class TestEccParams:
    @pytest.mark.parametrize(
        "n,ell,k,s,pad_worst",
        [(23, 1, 3, 2, 0), (54, 2, 3, 2, 0), (24, 1, 3, 2, 1)],
    )
    def test_examples(self, n, ell, k, s, pad_worst):
        prm = ecc_params(n, ell)
        assert (prm.k, prm.s) == (k, s)
        assert prm.padding(k, k) == pad_worst

    def test_n23_arithmetic(self):
        assert 3 * 3 + 4 * 2 + 6 == 23
        assert eq1_nodes(4, 1) == 26

    @pytest.mark.parametrize("ell", [1, 2, 3, 4])
    def test_maximal_k_matches_brute_force(self, ell):
        lo = gadgets.min_ecc_nodes(ell)
        for n in range(lo, lo + 300, 7):
            prm = ecc_params(n, ell)
            assert prm.k == brute_k(n, ell)
            assert eq1_nodes(prm.k, ell) <= n < eq1_nodes(prm.k + 1, ell)
            assert prm.k >= 2

    @pytest.mark.parametrize("n,ell", [(22, 1), (53, 2), (84, 3), (10, 1)])
    def test_below_minimum(self, n, ell):
        with pytest.raises(GadgetParameterError, match="n >="):
            ecc_params(n, ell)

    def test_min_n_formula(self):
        assert [gadgets.min_ecc_nodes(ell) for ell in (1, 2, 3)] == [23, 54, 85]
        for ell in range(2, 10):
            assert eq1_nodes(3, ell) == 31 * ell - 8


class TestEccGadget:
    @pytest.mark.parametrize("x,y", [((1, 0, 0), (1, 1, 0)), ((0, 0, 0), (0, 0, 0)), ((1, 1, 1), (1, 1, 1))])
    def test_n23_no_padding(self, x, y):
        g = build_ecc_gadget(23, 1, x, y)
        assert g.node_count == 23
        assert not any(r.kind == "Padding" for r in g.roles.values())

    def test_cut_is_ec(self):
        g = build_ecc_gadget(23, 1, (1, 0, 0), (1, 1, 0))
        assert len(g.cut_edges()) == 2 * 2 + 1
        assert (min(g.node(APrime(3)), g.node(BPrime(3))), max(g.node(APrime(3)), g.node(BPrime(3)))) in g.cut_edges()

    def test_ell1_edge_list(self):
        """Edge-for-edge comparison with the unstretched construction, built by hand."""
        x, y = (1, 0, 1), (0, 1, 1)
        g = build_ecc_gadget(23, 1, x, y)
        idx = g.role_index()

        def r(kind, *args):
            return idx[(kind, tuple(args))]

        want = set()
        k, s = 3, 2
        for p in range(1, k + 1):
            bits = [((p - 1) >> (i - 1)) & 1 for i in range(1, s + 1)]
            for i, bit in enumerate(bits, start=1):
                want.add((r("A", p), r("AHelper", i, bit)))
                want.add((r("B", p), r("BHelper", i, bit)))
            want.add((r("A", p), r("APrime", 1)))
            want.add((r("B", p), r("BPrime", 1)))
            want.add((r("B", p), r("BDoublePrime", p)))
            if x[p - 1]:
                want.add((r("A", p), r("APrime", 3)))
            if y[p - 1]:
                want.add((r("B", p), r("BPrime", 3)))
        for side in ("A", "B"):
            want.add((r(side + "Prime", 1), r(side + "Prime", 2)))
            want.add((r(side + "Prime", 2), r(side + "Prime", 3)))
        for i in range(1, s + 1):
            want.add((r("AHelper", i, 0), r("BHelper", i, 1)))
            want.add((r("AHelper", i, 1), r("BHelper", i, 0)))
        want.add((r("APrime", 3), r("BPrime", 3)))
        assert set(g.edges()) == {(min(e), max(e)) for e in want}

    def test_ecc_example(self, ecc23):
        ecc, _, _ = distance_params(apsp_oracle(ecc23))
        assert [int(ecc[ecc23.node(A(p))]) for p in (1, 2, 3)] == [4, 6, 6]

    @pytest.mark.parametrize("ell,n", [(1, 23), (2, 54), (3, 85)])
    def test_eccentricity_law_exhaustive(self, ell, n):
        for x in ALL3:
            for y in ALL3:
                g = build_ecc_gadget(n, ell, x, y)
                assert g.node_count == n
                ecc, _, _ = distance_params(apsp_oracle(g))
                for p in range(1, 4):
                    want = 3 * ell + 1 if x[p - 1] and y[p - 1] else 5 * ell + 1
                    assert ecc[g.node(A(p))] == want
                assert decode_ecc(ecc, g, ell) == intersection_size(x, y)

    def test_upper_bounds_ell1(self):
        for x in ALL3:
            for y in ALL3:
                g = build_ecc_gadget(23, 1, x, y)
                dm = apsp_oracle(g)
                for p in range(1, 4):
                    row = dm.row(g.node(A(p)))
                    far = g.node(BDoublePrime(p))
                    assert row[far] <= 6
                    assert max(row[v] for v in range(23) if v != far) <= 5
                    assert (row[far] < 6) == bool(x[p - 1] and y[p - 1])

    @pytest.mark.parametrize("ell", [2, 3])
    def test_padding_varies_with_weight(self, ell):
        n = gadgets.min_ecc_nodes(ell) + 5
        for x, y in [((0, 0, 0), (0, 0, 0)), ((1, 1, 1), (0, 1, 0)), ((1, 1, 1), (1, 1, 1))]:
            g = build_ecc_gadget(n, ell, x, y)
            pads = sum(1 for r in g.roles.values() if r.kind == "Padding")
            assert g.node_count == n
            assert pads == ecc_params(n, ell).padding(sum(x), sum(y)) == 5 + (ell - 1) * (6 - sum(x) - sum(y))

    def test_intermediates_sided_and_tagged(self):
        g = build_ecc_gadget(54, 2, (1, 1, 0), (0, 1, 1))
        inter = [u for u, r in g.roles.items() if r.kind == "Intermediate"]
        assert len(inter) == 3 * 3 + 2 * 3 * 2 + 4 + 2 + 2
        for u in inter:
            a, b, _ = g.roles[u].args
            assert g.side[u] is g.side[a] is g.side[b]
        assert len(g.cut_edges()) == 5

    def test_larger_n_random(self):
        rng = random.Random(11)
        for n, ell in [(60, 1), (120, 1), (130, 2)]:
            k = ecc_params(n, ell).k
            x = tuple(rng.randrange(2) for _ in range(k))
            y = tuple(rng.randrange(2) for _ in range(k))
            g = build_ecc_gadget(n, ell, x, y)
            ecc, _, _ = distance_params(apsp_oracle(g))
            assert decode_ecc(ecc, g, ell) == intersection_size(x, y)

    def test_wrong_length(self):
        with pytest.raises(GadgetParameterError):
            build_ecc_gadget(23, 1, (1, 0), (1, 1, 0))

    def test_decode_reads_alice_only(self, ecc23):
        ecc = AuditedSequence(distance_params(apsp_oracle(ecc23))[0])
        assert decode_ecc(ecc, ecc23, 1) == 1
        assert all(ecc23.side[u] is Side.ALICE for u in ecc.accessed)

    def test_decode_all_zero_x(self):
        g = build_ecc_gadget(23, 1, (0, 0, 0), (1, 1, 1))
        assert decode_ecc(distance_params(apsp_oracle(g))[0], g, 1) == 0


class TestThresholds:
    def test_eps_tenth(self):
        ell = choose_ell(0.1)
        low, high = approx_thresholds(ell, 0.1)
        assert ell == 3 and low == 10
        assert high == Fraction(16) / (Fraction(5, 3) - Fraction(1, 10))
        assert float(high) == pytest.approx(10.2128, abs=1e-4)

    def test_eps_half(self):
        ell = choose_ell(0.5)
        low, high = approx_thresholds(ell, 0.5)
        assert (ell, low) == (1, 4)
        assert float(high) == pytest.approx(6 / (7 / 6))

    def test_sweep(self):
        for t in range(1, 67):
            eps = Fraction(t, 100)
            ell = choose_ell(eps)
            assert ell == math.ceil(200 / (9 * t) - 1e-12)
            low, high = approx_thresholds(ell, eps)
            assert low < high
            # float input gives the same answer
            assert choose_ell(t / 100) == ell

    @pytest.mark.parametrize("eps", [0, -0.1, Fraction(2, 3), 0.7])
    def test_out_of_range(self, eps):
        with pytest.raises(GadgetParameterError):
            choose_ell(eps)


class TestDecodeApprox:
    def _setup(self, x, y, eps=0.1):
        ell = choose_ell(eps)
        g = build_ecc_gadget(gadgets.min_ecc_nodes(ell), ell, x, y)
        return g, ell, distance_params(apsp_oracle(g))[0]

    def test_exact_estimates(self):
        g, ell, ecc = self._setup((1, 0, 1), (1, 1, 1))
        assert decode_ecc_approx(ecc, g, ell, 0.1, exact=ecc) == decode_ecc(ecc, g, ell) == 2

    def test_band_endpoints(self):
        eps = Fraction(1, 10)
        rho = Fraction(5, 3) - eps
        for x in ALL3:
            for y in ALL3:
                g, ell, ecc = self._setup(x, y, eps)
                for pick_low in (True, False):
                    est = [Fraction(int(e)) / rho if pick_low else Fraction(int(e)) for e in ecc]
                    assert decode_ecc_approx(est, g, ell, eps, exact=ecc) == intersection_size(x, y)

    def test_contract_violation(self):
        g, ell, ecc = self._setup((1, 0, 0), (1, 0, 0))
        est = [int(e) for e in ecc]
        est[g.node(A(2))] = 3  # far below 16 / (5/3 - 0.1)
        with pytest.raises(ApproximationContractError):
            decode_ecc_approx(est, g, ell, 0.1, exact=ecc)
        # without verification the bad estimate is simply misread
        assert decode_ecc_approx(est, g, ell, 0.1) == 2


class TestLine:
    def test_single_edge(self):
        g = build_line(1)
        assert g.node_count == 2 and list(g.edges()) == [(0, 1)]

    def test_diameter(self):
        assert distance_params(apsp_oracle(build_line(4)))[1] == 4

    def test_sides_and_cut(self):
        g = build_line(4)
        assert g.side == {0: Side.ALICE, 4: Side.BOB}
        split = g.with_side({0: Side.ALICE, **{i: Side.BOB for i in range(1, 5)}})
        assert split.cut_edges() == [(0, 1)]

    def test_bad_d(self):
        with pytest.raises(GadgetParameterError):
            build_line(0)

    def test_subdivided_cut_path(self):
        """Stretching the single cut edge of a line multiplies its length."""
        g = subdivide_edges(build_line(2), [(0, 1)], 3)
        assert distance_params(apsp_oracle(g))[1] == 4
