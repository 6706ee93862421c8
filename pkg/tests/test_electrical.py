import itertools

import numpy as np
import pytest

from epidemetric.electrical import (
    default_orientation, divergence, effective_resistance, effective_resistance_grounded, energy,
    eta, incidence, laplacian, resistance_matrix, spectral, unit_current_flow,
)
from epidemetric.generators import (
    complete_graph, complete_pendant, cycle_graph, path_graph, random_tree, star_graph,
)
from epidemetric.graph import Graph, WeightError


def cofactor_resistance(g, a, b):
    """Independent oracle: R(a,b) = det L[-{a,b}] / det L[-{a}]."""
    lap = laplacian(g)
    keep_a = [v for v in range(g.n) if v != a]
    keep_ab = [v for v in range(g.n) if v not in (a, b)]
    num = np.linalg.det(lap[np.ix_(keep_ab, keep_ab)]) if keep_ab else 1.0
    return num / np.linalg.det(lap[np.ix_(keep_a, keep_a)])


def test_laplacian_small():
    np.testing.assert_array_equal(laplacian(path_graph(2)), [[1, -1], [-1, 1]])
    np.testing.assert_array_equal(laplacian(complete_graph(3)), 3 * np.eye(3) - np.ones((3, 3)))


def test_laplacian_factorization(corpus):
    for g in corpus:
        b = incidence(g)
        lap = b.T @ np.diag(g.weights) @ b
        np.testing.assert_allclose(lap, laplacian(g), atol=1e-12)
        np.testing.assert_allclose(laplacian(g).sum(axis=1), 0, atol=1e-12)
        # the orientation is a bookkeeping choice
        b2 = incidence(g, default_orientation(g).flip(0))
        np.testing.assert_allclose(b2.T @ np.diag(g.weights) @ b2, lap, atol=1e-12)


def test_incidence_rows():
    g = path_graph(3)
    np.testing.assert_array_equal(incidence(g), [[-1, 1, 0], [0, -1, 1]])


def test_spectra():
    np.testing.assert_allclose(spectral(path_graph(2)).eigenvalues, [0, 2], atol=1e-12)
    for n in (3, 6, 9):
        lam = spectral(complete_graph(n)).eigenvalues
        np.testing.assert_allclose(lam, [0] + [n] * (n - 1), atol=1e-10)


def test_quadratic_form_and_projection(corpus):
    rng = np.random.default_rng(5)
    for g in corpus[:15]:
        f = rng.normal(size=g.n)
        u, v = g.endpoints
        direct = float(np.sum(g.weights * (f[u] - f[v]) ** 2))
        assert f @ laplacian(g) @ f == pytest.approx(direct, rel=1e-10)
        sp = spectral(g)
        assert sp.eigenvalues.min() > -1e-10
        proj = np.eye(g.n) - np.ones((g.n, g.n)) / g.n
        np.testing.assert_allclose(sp.green @ laplacian(g), proj, atol=1e-9)


def test_closed_forms():
    for n in (4, 6, 10):
        r = resistance_matrix(path_graph(n))
        i, j = np.indices((n, n))
        np.testing.assert_allclose(r, np.abs(i - j), atol=1e-9)
    for n in range(3, 12):
        r = resistance_matrix(complete_graph(n))
        np.testing.assert_allclose(r[~np.eye(n, dtype=bool)], 2 / n, rtol=1e-9)
    assert effective_resistance(complete_graph(3), 0, 2) == pytest.approx(2 / 3)
    for n in (5, 10):
        assert effective_resistance(complete_pendant(n), 0, n) == pytest.approx(1.0, abs=1e-9)
    assert effective_resistance(cycle_graph(4), 0, 2) == pytest.approx(1.0)
    assert effective_resistance(star_graph(6), 1, 2) == pytest.approx(2.0)


def test_cofactor_oracle_and_methods(corpus):
    for g in corpus[:25]:
        for a, b in itertools.combinations(range(g.n), 2):
            want = cofactor_resistance(g, a, b)
            assert effective_resistance(g, a, b) == pytest.approx(want, rel=1e-8)
            assert effective_resistance_grounded(g, a, b) == pytest.approx(want, rel=1e-8)
            assert effective_resistance(g, a, b, method="grounded") == pytest.approx(want, rel=1e-8)


def test_unknown_method():
    with pytest.raises(ValueError):
        effective_resistance(path_graph(3), 0, 1, method="magic")


def test_zero_weight_rejected():
    # a zero conductance would disconnect the network and widen the kernel
    with pytest.raises(WeightError):
        path_graph(4).with_weights([1.0, 0.0, 1.0])


def test_flow_laws(corpus):
    for g in corpus[:20]:
        for a, b in [(0, g.n - 1), (1, 0)]:
            sol = unit_current_flow(g, a, b)
            o = sol.orientation
            # Ohm
            np.testing.assert_allclose(sol.current, g.weights * (sol.potential[o.heads] - sol.potential[o.tails]))
            # Kirchhoff: +1 leaves a, -1 arrives at b, zero elsewhere
            div = divergence(sol.current, o, g.n)
            want = -eta(g.n, a, b)
            np.testing.assert_allclose(div, want, atol=1e-10)
            assert sol.strength == pytest.approx(1.0)
            r = effective_resistance(g, a, b)
            assert sol.resistance == pytest.approx(r, rel=1e-9)
            assert energy(g, sol.current) == pytest.approx(r, rel=1e-9)


def test_k3_currents():
    g = complete_graph(3)
    sol = unit_current_flow(g, 0, 1)
    flows = {g.edges[e]: sol.current[e] for e in range(g.m)}
    assert flows[(0, 1)] == pytest.approx(2 / 3)
    assert flows[(0, 2)] == pytest.approx(1 / 3)
    assert flows[(1, 2)] == pytest.approx(-1 / 3)  # 2 -> 1 against orientation


def test_kn_no_current_between_bystanders():
    for n in (4, 7):
        g = complete_graph(n)
        sol = unit_current_flow(g, 0, 1)
        for e, (u, v) in enumerate(g.edges):
            if u >= 2 and v >= 2:
                assert abs(sol.current[e]) < 1e-12


def test_orientation_flip_flips_current():
    g = complete_graph(4)
    o = default_orientation(g)
    base = unit_current_flow(g, 0, 3, o)
    flipped = unit_current_flow(g, 0, 3, o.flip(2))
    assert flipped.current[2] == pytest.approx(-base.current[2])
    np.testing.assert_allclose(np.delete(flipped.current, 2), np.delete(base.current, 2))


def test_thomson_principle():
    # any other unit flow on K3 has strictly more energy
    g = complete_graph(3)
    o = default_orientation(g)
    sol = unit_current_flow(g, 0, 1)
    # cycle 0->1->2->0 in edge order (0,1),(0,2),(1,2)
    cycle = np.array([1.0, -1.0, 1.0])
    np.testing.assert_allclose(divergence(cycle, o, 3), 0, atol=1e-15)
    for t in (-0.5, -0.01, 0.01, 0.3):
        other = sol.current + t * cycle
        assert energy(g, other) > energy(g, sol.current)
        # E(i + t c) = E(i) + t^2 E(c): the cross term vanishes
        assert energy(g, other) == pytest.approx(energy(g, sol.current) + t * t * energy(g, cycle))


def test_thomson_random(corpus):
    rng = np.random.default_rng(11)
    for g in corpus[:20]:
        if g.m == g.n - 1:
            continue
        sol = unit_current_flow(g, 0, g.n - 1)
        b = incidence(g)
        # cycle space = kernel of B^T
        _, s, vt = np.linalg.svd(b.T)
        null = vt[np.sum(s > 1e-10):]
        c = rng.normal(size=null.shape[0]) @ null
        assert energy(g, sol.current + c) > energy(g, sol.current)


def test_metric_and_domination(unit_corpus):
    for g in unit_corpus:
        r = resistance_matrix(g)
        np.testing.assert_allclose(r, r.T, atol=1e-12)
        assert np.all(r[~np.eye(g.n, dtype=bool)] > 0)
        assert (r[:, None, :] - r[:, :, None] - r[None, :, :]).max() <= 1e-8
        assert (r - g.distances).max() <= 1e-9


def test_trees_equal_distance(trees):
    for t in trees:
        np.testing.assert_allclose(resistance_matrix(t), t.distances, atol=1e-9)
    t = random_tree(9, np.random.default_rng(3))
    np.testing.assert_allclose(resistance_matrix(t), t.distances, atol=1e-9)


def test_rayleigh(corpus):
    rng = np.random.default_rng(9)
    for g in corpus[:20]:
        base = resistance_matrix(g)
        for _ in range(10):
            w = np.array(g.weights)
            w[rng.integers(g.m)] *= rng.uniform(0.05, 0.95)
            assert (base - resistance_matrix(g.with_weights(w))).max() <= 1e-9


def test_weighted_series_parallel():
    g = Graph(3, [(0, 1), (1, 2), (0, 2)], weights=[2.0, 2.0, 1.0])
    # series 1/2 + 1/2 = 1 in parallel with 1 -> 1/2
    assert effective_resistance(g, 0, 2) == pytest.approx(0.5)
