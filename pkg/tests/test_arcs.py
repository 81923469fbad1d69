import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from markovpst.arcs import (
    ArcState,
    apply_reflection,
    apply_swap,
    dense_oracle_step,
    evolve,
    fidelities,
    overlap,
    psi_state,
    step,
    walk_step,
)
from markovpst.graph import GraphError, VertexRangeError, cycle, from_edge_list, path, star

from strategies import connected_graphs, graph_and_states

R2 = 1 / math.sqrt(2)


def arcs(n, mapping):
    return ArcState.from_arcs(n, mapping)


class TestPsiState:
    @pytest.mark.parametrize("n", [2, 3, 6, 11])
    def test_path_start(self, n):
        assert psi_state(path(n), 0).arcs() == {(0, 1): 1.0}

    @pytest.mark.parametrize("n", [3, 4, 7])
    def test_cycle(self, n):
        for j in range(n):
            s = psi_state(cycle(n), j)
            assert s.isclose(arcs(n, {(j, (j + 1) % n): R2, (j, (j - 1) % n): R2}), 1e-15)

    def test_star_center(self):
        s = psi_state(star(4), 0)
        assert s.isclose(arcs(4, {(0, k): 1 / math.sqrt(3) for k in (1, 2, 3)}), 1e-15)

    def test_invalid_vertex(self):
        with pytest.raises(VertexRangeError):
            psi_state(path(3), 3)

    @given(connected_graphs())
    def test_unit_norm(self, g):
        for j in range(g.n):
            assert abs(psi_state(g, j).norm() - 1) < 1e-12


class TestOverlap:
    @given(connected_graphs())
    def test_orthonormal_basis(self, g):
        psis = [psi_state(g, j) for j in range(g.n)]
        for j, a in enumerate(psis):
            for k, b in enumerate(psis):
                assert overlap(a, b) == pytest.approx(float(j == k), abs=1e-15)

    def test_zero_state(self):
        assert overlap(ArcState.zero(5), psi_state(cycle(5), 2)) == 0

    def test_mismatched_n(self):
        with pytest.raises(ValueError):
            overlap(psi_state(path(3), 0), psi_state(path(4), 0))


class TestReflection:
    @given(connected_graphs())
    def test_fixes_psi(self, g):
        for j in range(g.n):
            s = psi_state(g, j)
            assert apply_reflection(g, s).isclose(s, 1e-12)

    @pytest.mark.parametrize("n", [4, 5, 9])
    def test_path_redirects_backward_arc(self, n):
        g = path(n)
        for j in range(n - 2):
            out = apply_reflection(g, arcs(n, {(j + 1, j): 1.0}))
            assert out.isclose(arcs(n, {(j + 1, j + 2): 1.0}), 1e-12)

    def test_orthogonal_complement_negated(self):
        g = cycle(5)
        s = arcs(5, {(2, 3): R2, (2, 1): -R2})
        out = apply_reflection(g, s)
        assert out.isclose(s.scaled(-1), 1e-12)
        # S is an involution, so 2 Pi - I = S U: permute the oracle's rows
        dense_reflection = dense_oracle_step(g)[swap_perm(5)]
        assert np.allclose(dense_reflection @ s.to_dense(), -s.to_dense(), atol=1e-12)

    def test_rejects_non_edge_arc(self):
        with pytest.raises(GraphError):
            apply_reflection(path(4), arcs(4, {(0, 2): 1.0}))


def swap_perm(n):
    return [(c % n) * n + c // n for c in range(n * n)]


class TestSwap:
    def test_basis(self):
        assert apply_swap(arcs(2, {(0, 1): 1.0})).arcs() == {(1, 0): 1.0}

    @given(graph_and_states())
    def test_involution(self, gs):
        _, s = gs
        assert apply_swap(apply_swap(s)) == s

    @pytest.mark.parametrize("n", [3, 6])
    def test_cycle_psi(self, n):
        for j in range(n):
            expect = arcs(n, {((j + 1) % n, j): R2, ((j - 1) % n, j): R2})
            assert apply_swap(psi_state(cycle(n), j)).isclose(expect, 1e-15)


class TestStep:
    @pytest.mark.parametrize("n", [2, 3, 8])
    def test_path_start(self, n):
        assert step(path(n), psi_state(path(n), 0)).isclose(arcs(n, {(1, 0): 1.0}), 1e-12)

    @pytest.mark.parametrize("n", [3, 4, 10])
    def test_cycle_psi(self, n):
        for j in range(n):
            expect = arcs(n, {((j + 1) % n, j): R2, ((j - 1) % n, j): R2})
            assert step(cycle(n), psi_state(cycle(n), j)).isclose(expect, 1e-12)

    @given(graph_and_states())
    def test_is_swap_after_reflection(self, gs):
        g, s = gs
        assert step(g, s).max_abs_diff(apply_swap(apply_reflection(g, s))) < 1e-14

    @given(graph_and_states(count=2))
    def test_preserves_inner_products(self, gs):
        g, a, b = gs
        assert abs(step(g, a).norm() - a.norm()) < 1e-12
        assert abs(overlap(step(g, a), step(g, b)) - overlap(a, b)) < 1e-12

    @given(graph_and_states())
    def test_matches_dense_oracle(self, gs):
        g, s = gs
        u = dense_oracle_step(g)
        assert np.abs(u @ s.to_dense() - step(g, s).to_dense()).max() < 1e-12

    def test_input_untouched(self):
        g = cycle(5)
        s = psi_state(g, 1)
        before = dict(s.amplitudes)
        step(g, s)
        evolve(g, s, 7)
        assert dict(s.amplitudes) == before


class TestEvolve:
    def test_zero_steps(self):
        s = psi_state(path(6), 1)
        assert evolve(path(6), s, 0) is s

    @pytest.mark.parametrize("n", [2, 3, 6, 13])
    def test_path_extreme_transfer(self, n):
        g = path(n)
        assert evolve(g, psi_state(g, 0), n - 1).isclose(psi_state(g, n - 1), 1e-12)

    def test_cycle6_antipodal(self):
        g = cycle(6)
        assert evolve(g, psi_state(g, 0), 3).isclose(psi_state(g, 3), 1e-12)

    def test_negative_steps(self):
        with pytest.raises(ValueError):
            evolve(path(3), psi_state(path(3), 0), -1)

    def test_rejects_disconnected(self):
        g = from_edge_list(4, [(0, 1), (2, 3)], require_connected=False)
        with pytest.raises(GraphError):
            walk_step(g)

    def test_fidelities(self):
        g = path(6)
        f = fidelities(g, evolve(g, psi_state(g, 1), 5))
        assert np.allclose(f, [0, 0, 0, 0, 1, 0], atol=1e-12)


class TestDenseOracle:
    def test_p2_by_hand(self):
        u = dense_oracle_step(path(2))
        assert u.shape == (4, 4)
        # |01> is index 1, |10> is index 2
        assert np.allclose(u[:, 1], np.eye(4)[2])
        assert np.allclose(u[:, 2], np.eye(4)[1])

    @given(connected_graphs())
    @settings(max_examples=30)
    def test_orthogonal(self, g):
        u = dense_oracle_step(g)
        assert np.abs(u.T @ u - np.eye(g.n**2)).max() < 1e-12

    def test_cap(self, monkeypatch):
        with pytest.raises(ValueError):
            dense_oracle_step(path(41))
        monkeypatch.setenv("MARKOVPST_ORACLE_CAP", "5")
        with pytest.raises(ValueError):
            dense_oracle_step(path(6))
        assert dense_oracle_step(path(5)).shape == (25, 25)


class TestSingleStepIdentities:
    @pytest.mark.parametrize("n", range(3, 31))
    def test_path(self, n):
        g = path(n)
        for j in range(1, n - 1):
            expect = arcs(n, {(j + 1, j): R2, (j - 1, j): R2})
            assert step(g, psi_state(g, j)).isclose(expect, 1e-12)
        for j in range(n - 2):
            assert step(g, arcs(n, {(j + 1, j): 1.0})).isclose(arcs(n, {(j + 2, j + 1): 1.0}), 1e-12)
        for j in range(2, n):
            assert step(g, arcs(n, {(j - 1, j): 1.0})).isclose(arcs(n, {(j - 2, j - 1): 1.0}), 1e-12)

    @pytest.mark.parametrize("n", range(3, 31))
    def test_cycle(self, n):
        g = cycle(n)
        for j in range(n):
            a, b, c, d = ((j + o) % n for o in (1, -1, 2, -2))
            assert step(g, psi_state(g, j)).isclose(arcs(n, {(a, j): R2, (b, j): R2}), 1e-12)
            assert step(g, arcs(n, {(a, j): 1.0})).isclose(arcs(n, {(c, a): 1.0}), 1e-12)
            assert step(g, arcs(n, {(b, j): 1.0})).isclose(arcs(n, {(d, b): 1.0}), 1e-12)


class TestSerialization:
    @given(graph_and_states())
    def test_round_trip(self, gs):
        g, s = gs
        back = ArcState.loads(g.n, s.dumps())
        assert back.max_abs_diff(s) < 1e-11

    def test_text_order_and_format(self):
        s = psi_state(cycle(4), 0)
        assert s.dumps() == "0 1 0.707106781187\n0 3 0.707106781187\n"

    def test_ignores_fidelity_lines(self):
        text = "# header\n4 3 0.707106781187\nfidelity 4 1\n"
        assert ArcState.loads(6, text).arcs() == {(4, 3): 0.707106781187}

    def test_dense_round_trip(self):
        s = psi_state(star(5), 0)
        assert ArcState.from_dense(5, s.to_dense()) == s
