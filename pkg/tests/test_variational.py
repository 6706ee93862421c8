import itertools

import numpy as np
import pytest

from epidemetric.electrical import effective_resistance
from epidemetric.epidemic import epidemic_density
from epidemetric.generators import complete_graph, cycle_graph, karate_graph, path_graph, star_graph
from epidemetric.graph import Subgraph
from epidemetric.variational import (
    BoundaryProblem, PathBudgetError, capacitary_function, capacity, conductance_check,
    density_energy, epidemic_density_energy, epidemic_modulus_bound, gradient, harmonic_extension,
    harmonic_residual, is_admissible, modulus, modulus_bruteforce, normalized_potential, path_edges,
    rho_distance_function, rho_length, simple_paths,
)


def test_gamblers_ruin():
    g = path_graph(6)
    h = harmonic_extension(g, BoundaryProblem({0: 0.0, 5: 1.0}))
    np.testing.assert_allclose(h, np.arange(6) / 5, atol=1e-12)
    assert abs(h[3] - 0.6) <= 1e-10
    assert harmonic_residual(g, h, [0, 5]).max() <= 1e-10


def test_constant_data_gives_constant():
    for g in (karate_graph(), cycle_graph(7)):
        h = harmonic_extension(g, BoundaryProblem([0, 3, 5], [2.5, 2.5, 2.5]))
        np.testing.assert_allclose(h, 2.5, atol=1e-12)


def test_k3_half():
    h = harmonic_extension(complete_graph(3), BoundaryProblem({0: 0.0, 1: 1.0}))
    assert h[2] == pytest.approx(0.5)


def test_maximum_principle_and_residual(corpus):
    rng = np.random.default_rng(2)
    for g in corpus:
        k = int(rng.integers(1, g.n))
        bnd = sorted(rng.choice(g.n, size=k, replace=False).tolist())
        vals = rng.normal(size=k)
        h = harmonic_extension(g, BoundaryProblem(bnd, vals))
        assert h.min() >= vals.min() - 1e-10 and h.max() <= vals.max() + 1e-10
        assert harmonic_residual(g, h, bnd).max() <= 1e-10
        np.testing.assert_array_equal(h[bnd], vals)


def test_boundary_validation():
    with pytest.raises(ValueError):
        BoundaryProblem({})
    with pytest.raises(ValueError):
        BoundaryProblem([1, 1], [0, 1])
    with pytest.raises(ValueError):
        harmonic_extension(path_graph(3), BoundaryProblem({7: 1.0}))
    with pytest.raises(ValueError):
        capacitary_function(path_graph(3), 1, 1)


def test_capacity_closed_forms():
    for n in (2, 4, 7):
        assert capacity(path_graph(n), 0, n - 1) == pytest.approx(1 / (n - 1))
    for n in (3, 5, 8):
        assert capacity(complete_graph(n), 0, 1) == pytest.approx(n / 2)
    assert capacity(complete_graph(3), 0, 2) == pytest.approx(1.5)


def test_capacitary_examples():
    np.testing.assert_allclose(capacitary_function(path_graph(3), 0, 2), [0, 0.5, 1])
    np.testing.assert_allclose(capacitary_function(complete_graph(3), 0, 1), [0, 1, 0.5])


def test_capacitary_uniqueness(corpus):
    for g in corpus[:25]:
        for a, b in [(0, g.n - 1), (g.n - 1, 1)]:
            np.testing.assert_allclose(capacitary_function(g, a, b), normalized_potential(g, a, b), atol=1e-9)


def test_rho_length():
    g = path_graph(4)
    curve = Subgraph(g, frozenset({0, 1, 2}), (0, 1))
    assert rho_length(np.array([0.25, 0.5, 7.0]), curve) == pytest.approx(0.75)
    assert path_edges(complete_graph(4), (0, 2, 3)) == [1, 5]


def test_simple_paths():
    assert sorted(simple_paths(complete_graph(3), 0, 1)) == [(0, 1), (0, 2, 1)]
    assert len(simple_paths(complete_graph(5), 0, 1)) == 1 + 3 + 6 + 6
    assert len(simple_paths(cycle_graph(6), 0, 3)) == 2
    with pytest.raises(PathBudgetError):
        simple_paths(complete_graph(7), 0, 1, max_paths=10)


def test_admissibility_methods_agree(corpus):
    rng = np.random.default_rng(4)
    for g in corpus[:30]:
        for _ in range(3):
            a, b = rng.choice(g.n, size=2, replace=False)
            rho = rng.uniform(0, 0.6, size=g.m)
            fast = is_admissible(g, rho, a, b)
            slow = is_admissible(g, rho, a, b, method="enumerate")
            assert fast.admissible == slow.admissible
            assert fast.shortest_length == pytest.approx(slow.shortest_length)
            if not fast.admissible:
                p = fast.witness
                assert p[0] == a and p[-1] == b
                assert rho[path_edges(g, p)].sum() == pytest.approx(fast.shortest_length)


def test_admissibility_validation():
    g = path_graph(3)
    with pytest.raises(ValueError):
        is_admissible(g, [1.0], 0, 2)
    with pytest.raises(ValueError):
        is_admissible(g, [1.0, -1.0], 0, 2)
    with pytest.raises(ValueError):
        is_admissible(g, [1.0, 1.0], 0, 2, method="guess")
    big = path_graph(20)
    with pytest.raises(PathBudgetError):
        is_admissible(big, np.ones(19), 0, 19, method="enumerate")


def test_gradient_density_admissible(corpus):
    for g in corpus[:20]:
        for a, b in [(0, g.n - 1), (1, 2)]:
            rho = gradient(g, capacitary_function(g, a, b))
            assert is_admissible(g, rho, a, b, tol=1e-9).admissible
            assert density_energy(g, rho) == pytest.approx(modulus(g, a, b))


def test_distance_function_contracts(corpus):
    rng = np.random.default_rng(6)
    for g in corpus[:20]:
        rho = rng.uniform(0.1, 1.0, size=g.m)
        u = rho_distance_function(g, rho, 0)
        assert u[0] == 0
        x, y = g.endpoints
        assert np.all(np.abs(u[x] - u[y]) <= rho + 1e-12)


def test_bruteforce_examples():
    bf = modulus_bruteforce(path_graph(3), 0, 2)
    assert bf.value == pytest.approx(0.5, rel=1e-6)
    np.testing.assert_allclose(bf.rho, [0.5, 0.5], rtol=1e-5)
    assert modulus_bruteforce(complete_graph(3), 0, 1).value == pytest.approx(1.5, rel=1e-6)
    assert modulus_bruteforce(cycle_graph(4), 0, 2).value == pytest.approx(1.0, rel=1e-6)
    with pytest.raises(PathBudgetError):
        modulus_bruteforce(path_graph(12), 0, 11)


def test_bruteforce_brackets(corpus):
    for g in [h for h in corpus if h.n <= 7][:10]:
        bf = modulus_bruteforce(g, 0, g.n - 1)
        assert bf.lower <= bf.value + 1e-12
        assert is_admissible(g, bf.rho, 0, g.n - 1, tol=1e-9).admissible
        assert bf.value == pytest.approx(capacity(g, 0, g.n - 1), rel=1e-5)


def test_four_way_agreement(corpus):
    for g in corpus:
        for a, b in itertools.combinations(range(g.n), 2):
            c = conductance_check(g, a, b)
            assert abs(c["modulus"] - c["capacity"]) <= 1e-8 * c["conductance"]
            assert abs(c["capacity"] - c["conductance"]) <= 1e-8 * c["conductance"]


def test_scaling():
    g = karate_graph()
    for s in (0.5, 3.0):
        scaled = g.with_weights(g.weights * s)
        assert capacity(scaled, 0, 33) == pytest.approx(s * capacity(g, 0, 33))
        assert effective_resistance(scaled, 0, 33) == pytest.approx(effective_resistance(g, 0, 33) / s)


def test_bound_examples():
    chk = epidemic_modulus_bound(path_graph(3), 0, 2)
    assert (chk.distance, chk.modulus, chk.epidemic) == (2, pytest.approx(0.5), 4)
    assert chk.bound == pytest.approx(2.0) and chk.holds() and chk.sharp_holds()
    chk = epidemic_modulus_bound(star_graph(5), 1, 2)
    assert chk.bound == pytest.approx(2.0) and chk.epidemic == 8
    assert chk.slack == pytest.approx(6.0)
    with pytest.raises(ValueError):
        epidemic_modulus_bound(path_graph(3), 1, 1)


def test_bound_on_corpus(unit_corpus):
    for g in unit_corpus:
        for a, b in itertools.combinations(range(g.n), 2):
            chk = epidemic_modulus_bound(g, a, b)
            assert chk.holds() and chk.sharp_holds()
            assert epidemic_density_energy(g, a, b) >= chk.modulus - 1e-9
            assert is_admissible(g, epidemic_density(g, a, b), a, b).admissible
