import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import bipartitions, graphs, random_graph
from graphent.graph import Graph, GraphError, build_family, local_complement, ring, toggle_edge
from graphent.stabilizer import (
    Bipartition,
    PauliString,
    StabilizerTableau,
    apply_lc_unitary,
    check_commuting,
    cut_rank,
    generators_of,
    is_independent,
    measure_pauli,
    overlap,
    schmidt_coefficients,
    schmidt_rank_exponent,
    statevector,
    tableau_to_graph,
)


def stabilizes(t, psi):
    return all(np.allclose(p.matrix() @ psi, psi) for p in t.generators)


class TestPauli:
    def test_text_roundtrip(self):
        for s in ["+XZI", "-ZXZ", "+YIY"]:
            assert str(PauliString.from_str(s)) == s
        assert str(PauliString.from_str("−ZXZ")) == "-ZXZ"

    def test_bad_text(self):
        with pytest.raises(ValueError):
            PauliString.from_str("+XQ")

    def test_products_match_matrices(self, rng):
        letters = "IXYZ"
        for _ in range(200):
            a = PauliString.from_str("+" + "".join(rng.choice(list(letters), 3)))
            b = PauliString.from_str("+" + "".join(rng.choice(list(letters), 3)))
            if not a.commutes_with(b):
                continue
            assert np.allclose((a * b).matrix(), a.matrix() @ b.matrix())

    def test_commutation_matches_matrices(self, rng):
        for _ in range(100):
            a = PauliString.from_str("+" + "".join(rng.choice(list("IXYZ"), 3)))
            b = PauliString.from_str("+" + "".join(rng.choice(list("IXYZ"), 3)))
            am, bm = a.matrix(), b.matrix()
            assert a.commutes_with(b) == np.allclose(am @ bm, bm @ am)


class TestGenerators:
    def test_single_edge(self):
        assert [str(p) for p in generators_of(Graph.from_edges(2, [(0, 1)])).generators] == ["+XZ", "+ZX"]

    def test_path(self):
        assert str(generators_of(build_family("cluster1d", n=3)).generators[1]) == "+ZXZ"

    def test_empty(self):
        assert [str(p) for p in generators_of(Graph.empty(3)).generators] == ["+XII", "+IXI", "+IIX"]

    def test_index_signs(self):
        gens = generators_of(ring(4), "0110").generators
        assert [p.sign for p in gens] == [1, -1, -1, 1]

    def test_check_commuting(self):
        assert not check_commuting(StabilizerTableau.from_generators(["+XI", "+ZI"]))
        assert check_commuting(StabilizerTableau.from_generators(["+ZI", "+IZ"]))

    def test_dependent_generators(self):
        t = StabilizerTableau.from_generators(["+ZI", "+ZI"])
        assert not is_independent(t)

    @given(graphs(max_n=10))
    @settings(max_examples=100, deadline=None)
    def test_always_valid(self, g):
        t = generators_of(g)
        assert check_commuting(t) and is_independent(t)


class TestStatevector:
    def test_plus(self):
        assert np.allclose(statevector(Graph.empty(1)), [2**-0.5, 2**-0.5])

    def test_bell(self):
        assert np.allclose(statevector(Graph.from_edges(2, [(0, 1)])), np.array([1, 1, 1, -1]) / 2)

    def test_cap(self):
        with pytest.raises(ValueError):
            statevector(Graph.empty(13))

    @given(graphs(max_n=7), st.data())
    @settings(max_examples=60, deadline=None)
    def test_eigenequations(self, g, data):
        k = data.draw(st.lists(st.integers(0, 1), min_size=g.n, max_size=g.n))
        psi = statevector(g, k)
        assert np.allclose(np.abs(psi), 2 ** (-g.n / 2))
        for i, p in enumerate(generators_of(g).generators):
            assert np.allclose(p.matrix() @ psi, (-1) ** k[i] * psi)

    def test_overlaps(self):
        edge = Graph.from_edges(2, [(0, 1)])
        assert abs(overlap(edge, "00", Graph.empty(2), "00") - 0.5) < 1e-12
        assert abs(overlap(edge, "01", edge, "01") - 1) < 1e-12
        assert abs(overlap(edge, "00", edge, "10")) < 1e-12
        with pytest.raises(ValueError):
            overlap(edge, "00", Graph.empty(3), "000")


class TestCutRank:
    def test_examples(self):
        edge = Graph.from_edges(2, [(0, 1)])
        assert cut_rank(edge, Bipartition.of(2, {0})) == 1
        assert cut_rank(Graph.empty(4), Bipartition.of(4, {0, 1})) == 0
        path = build_family("cluster1d", n=4)
        assert cut_rank(path, Bipartition.of(4, {0, 2})) == 2

    def test_invalid_partition(self):
        with pytest.raises(ValueError):
            Bipartition.of(3, set())
        with pytest.raises(ValueError):
            Bipartition.of(3, {0, 1, 2})
        with pytest.raises((ValueError, GraphError)):
            cut_rank(ring(4), Bipartition.of(5, {0}))

    def test_matches_schmidt_rank(self, rng):
        for _ in range(40):
            n = int(rng.integers(2, 8))
            g = random_graph(rng, n)
            psi = statevector(g)
            for side in bipartitions(n):
                assert cut_rank(g, Bipartition.of(n, side)) == schmidt_rank_exponent(psi, n, side)

    def test_flat_spectrum(self, rng):
        for _ in range(20):
            n = int(rng.integers(2, 8))
            g = random_graph(rng, n)
            psi = statevector(g)
            for side in bipartitions(n):
                c = schmidt_coefficients(psi, n, side)
                c = c[c > 1e-9]
                assert np.allclose(c, c[0])

    @given(graphs(min_n=2, max_n=9), st.data())
    @settings(max_examples=100, deadline=None)
    def test_lc_and_same_side_toggle_invariance(self, g, data):
        side = data.draw(st.sets(st.integers(0, g.n - 1), min_size=1, max_size=g.n - 1))
        p = Bipartition.of(g.n, side)
        base = cut_rank(g, p)
        v = data.draw(st.integers(0, g.n - 1))
        assert cut_rank(local_complement(g, v), p) == base
        same = [(i, j) for i in range(g.n) for j in range(i + 1, g.n)
                if (i in side) == (j in side)]
        if same:
            i, j = data.draw(st.sampled_from(same))
            assert cut_rank(toggle_edge(g, i, j), p) == base


class TestMeasurement:
    def test_x_on_plus(self):
        t = generators_of(Graph.empty(1))
        out, _ = measure_pauli(t, PauliString.from_str("+X"), np.random.default_rng(0))
        assert out == 1

    def test_z_on_plus_is_fair(self):
        rng = np.random.default_rng(3)
        outs = [measure_pauli(generators_of(Graph.empty(1)), PauliString.from_str("+Z"), rng)[0]
                for _ in range(1000)]
        assert abs(outs.count(1) / 1000 - 0.5) < 0.05

    @given(graphs(max_n=8), st.data())
    @settings(max_examples=60, deadline=None)
    def test_generators_recover_index(self, g, data):
        k = data.draw(st.lists(st.integers(0, 1), min_size=g.n, max_size=g.n))
        order = data.draw(st.permutations(range(g.n)))
        t = generators_of(g, k)
        gens = generators_of(g).generators
        rng = np.random.default_rng(0)
        for i in order:
            out, t = measure_pauli(t, gens[i], rng)
            assert out == (-1) ** k[i]

    def test_post_measurement_state_matches_dense(self, rng):
        # project the dense state and compare with the updated tableau
        for _ in range(30):
            n = int(rng.integers(1, 6))
            g = random_graph(rng, n)
            psi = statevector(g)
            t = generators_of(g)
            for _ in range(4):
                word = "+" + "".join(rng.choice(list("IXYZ"), n))
                p = PauliString.from_str(word)
                out, t = measure_pauli(t, p, rng)
                proj = (np.eye(1 << n) + out * p.matrix()) / 2
                psi = proj @ psi
                norm = np.linalg.norm(psi)
                assert norm > 1e-9
                psi /= norm
                assert check_commuting(t) and stabilizes(t, psi)


class TestLC:
    def test_k4_to_star(self):
        g = build_family("ghz_complete", n=4)
        h, _ = tableau_to_graph(apply_lc_unitary(generators_of(g), 0))
        assert h == build_family("ghz_star", n=4)

    def test_twice_restores_graph(self):
        g = ring(5)
        t = apply_lc_unitary(apply_lc_unitary(generators_of(g), 2), 2)
        assert tableau_to_graph(t)[0] == g

    def test_single_vertex(self):
        t = apply_lc_unitary(generators_of(Graph.empty(1)), 0)
        assert check_commuting(t) and is_independent(t)

    def test_out_of_range(self):
        with pytest.raises((ValueError, GraphError)):
            apply_lc_unitary(generators_of(ring(4)), 9)

    def test_matches_dense_unitary(self, rng):
        for _ in range(30):
            n = int(rng.integers(2, 7))
            g = random_graph(rng, n)
            v = int(rng.integers(n))
            t = apply_lc_unitary(generators_of(g), v)
            h, _ = tableau_to_graph(t)
            assert h == local_complement(g, v)
            # exp(-i pi/4 X_v) prod exp(i pi/4 Z_j) applied to the dense state
            u = np.eye(1 << n, dtype=complex)
            for q in range(n):
                if q == v:
                    x = PauliString.single(n, q, "X").matrix()
                    u = (np.eye(1 << n) - 1j * x) / np.sqrt(2) @ u
                elif q in g.neighbours(v):
                    z = PauliString.single(n, q, "Z").matrix()
                    u = (np.eye(1 << n) + 1j * z) / np.sqrt(2) @ u
            assert stabilizes(t, u @ statevector(g))
