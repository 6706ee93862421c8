"""Dirichlet problems, capacity and the modulus of connecting curve families.

A density is a non-negative array indexed like ``Graph.edges``. Its energy is
``sum_e w(e) rho(e)^2``. The family Gamma(a, b) of connected subgraphs
containing a and b is handled through simple a-b paths: every such curve
contains one, and rho-length only grows when edges are added.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .electrical import effective_resistance, laplacian, unit_current_flow
from .epidemic import epidemic, epidemic_density
from .graph import Graph, Subgraph


class PathBudgetError(RuntimeError):
    """Path enumeration would exceed its budget."""


@dataclass(frozen=True, eq=False)
class BoundaryProblem:
    vertices: tuple[int, ...]
    values: np.ndarray

    def __init__(self, boundary, values=None):
        if values is None:
            items = sorted(dict(boundary).items())
            verts = [k for k, _ in items]
            vals = [v for _, v in items]
        else:
            verts, vals = list(boundary), list(values)
        if not verts:
            raise ValueError("boundary set must be non-empty")
        if len(set(verts)) != len(verts):
            raise ValueError("boundary vertices must be distinct")
        object.__setattr__(self, "vertices", tuple(int(x) for x in verts))
        object.__setattr__(self, "values", np.asarray(vals, dtype=float))


def harmonic_extension(g: Graph, bp: BoundaryProblem) -> np.ndarray:
    """The function equal to the boundary data on B and harmonic off B.

    Harmonic means h(x) = sum_y C(x, y) h(y) / C(x). The interior block of
    the Laplacian is SPD on a connected graph with non-empty boundary, so a
    Cholesky solve suffices.
    """
    n = g.n
    bnd = np.asarray(bp.vertices, dtype=np.int64)
    if np.any((bnd < 0) | (bnd >= n)):
        raise ValueError("boundary vertex out of range")
    h = np.zeros(n)
    h[bnd] = bp.values
    mask = np.ones(n, dtype=bool)
    mask[bnd] = False
    interior = np.flatnonzero(mask)
    if interior.size == 0:
        return h
    lap = laplacian(g)
    lii = lap[np.ix_(interior, interior)]
    rhs = -lap[np.ix_(interior, bnd)] @ bp.values
    h[interior] = scipy.linalg.cho_solve(scipy.linalg.cho_factor(lii), rhs)
    return h


def harmonic_residual(g: Graph, h: np.ndarray, boundary) -> np.ndarray:
    """|h(x) - weighted neighbour mean| at every vertex outside ``boundary``."""
    lap = laplacian(g)
    deg = np.diag(lap)
    res = np.abs(lap @ h) / deg
    res[list(boundary)] = 0.0
    return res


def gradient(g: Graph, u: np.ndarray) -> np.ndarray:
    """rho_u(e) = |u(x) - u(y)| for e = {x, y}."""
    x, y = g.endpoints
    return np.abs(u[x] - u[y])


def density_energy(g: Graph, rho: np.ndarray) -> float:
    rho = np.asarray(rho, dtype=float)
    return float(np.sum(g.weights * rho * rho))


def capacitary_function(g: Graph, a: int, b: int) -> np.ndarray:
    """Harmonic off {a, b} with u(a) = 0, u(b) = 1."""
    if a == b:
        raise ValueError("capacity needs two distinct vertices")
    return harmonic_extension(g, BoundaryProblem((a, b), (0.0, 1.0)))


def normalized_potential(g: Graph, a: int, b: int) -> np.ndarray:
    """(v - v(a)) / R_eff from the unit current potential.

    Same function as ``capacitary_function`` by uniqueness, computed through
    the Green operator instead of an interior solve.
    """
    sol = unit_current_flow(g, a, b)
    return (sol.potential - sol.potential[a]) / sol.resistance


def capacity(g: Graph, a: int, b: int) -> float:
    return density_energy(g, gradient(g, capacitary_function(g, a, b)))


def modulus(g: Graph, a: int, b: int) -> float:
    """Mod(Gamma(a, b)). Equal to the capacity, which is what is computed."""
    return capacity(g, a, b)


def rho_length(rho: np.ndarray, curve: Subgraph) -> float:
    return float(np.sum(np.asarray(rho)[list(curve.edges)]))


def path_edges(g: Graph, path) -> list[int]:
    return [g.edge_index(x, y) for x, y in zip(path[:-1], path[1:])]


def shortest_rho_lengths(g: Graph, rho: np.ndarray, source: int) -> tuple[np.ndarray, np.ndarray]:
    """Dijkstra over edge lengths rho. Returns (lengths, predecessor)."""
    indptr, nbr, eid = g.csr
    dist = np.full(g.n, np.inf)
    pred = np.full(g.n, -1, dtype=np.int64)
    dist[source] = 0.0
    heap = [(0.0, source)]
    done = np.zeros(g.n, dtype=bool)
    while heap:
        dx, x = heapq.heappop(heap)
        if done[x]:
            continue
        done[x] = True
        for k in range(indptr[x], indptr[x + 1]):
            y = nbr[k]
            nd = dx + rho[eid[k]]
            if nd < dist[y]:
                dist[y] = nd
                pred[y] = x
                heapq.heappush(heap, (nd, int(y)))
    return dist, pred


def rho_distance_function(g: Graph, rho: np.ndarray, a: int) -> np.ndarray:
    """u(x) = shortest rho-length of a curve from a to x."""
    return shortest_rho_lengths(g, np.asarray(rho, dtype=float), a)[0]


def simple_paths(g: Graph, a: int, b: int, max_paths: int = 1_000_000) -> list[tuple[int, ...]]:
    """All simple a-b paths as vertex tuples (depth-first order)."""
    if a == b:
        raise ValueError("paths need two distinct endpoints")
    out = []
    stack = [(a, iter(g.neighbors(a).tolist()))]
    path = [a]
    on_path = {a}
    while stack:
        _, it = stack[-1]
        nxt = next(it, None)
        if nxt is None:
            stack.pop()
            on_path.discard(path.pop())
            continue
        if nxt in on_path:
            continue
        if nxt == b:
            out.append(tuple(path) + (b,))
            if len(out) > max_paths:
                raise PathBudgetError(f"more than {max_paths} simple paths between {a} and {b}")
            continue
        path.append(nxt)
        on_path.add(nxt)
        stack.append((nxt, iter(g.neighbors(nxt).tolist())))
    return out


@dataclass(frozen=True)
class Admissibility:
    admissible: bool
    shortest_length: float
    witness: tuple[int, ...] | None


ENUMERATION_MAX_N = 14


def is_admissible(g: Graph, rho, a: int, b: int, tol: float = 1e-12,
                  method: str = "dijkstra") -> Admissibility:
    """Whether every a-b curve has rho-length >= 1 - tol.

    ``witness`` is a shortest path, reported only when the check fails.
    ``method="enumerate"`` scans all simple paths instead (small graphs).
    """
    rho = np.asarray(rho, dtype=float)
    if rho.shape != (g.m,):
        raise ValueError(f"density must have {g.m} entries")
    if np.any(rho < 0):
        raise ValueError("densities are non-negative")
    if method == "dijkstra":
        dist, pred = shortest_rho_lengths(g, rho, a)
        best = float(dist[b])
        path = [b]
        while path[-1] != a:
            path.append(int(pred[path[-1]]))
        best_path = tuple(reversed(path))
    elif method == "enumerate":
        if g.n > ENUMERATION_MAX_N:
            raise PathBudgetError(f"enumeration limited to {ENUMERATION_MAX_N} vertices")
        best, best_path = np.inf, None
        for p in simple_paths(g, a, b):
            length = float(rho[path_edges(g, p)].sum())
            if length < best:
                best, best_path = length, p
    else:
        raise ValueError(f"unknown method {method!r}")
    ok = best >= 1.0 - tol
    return Admissibility(ok, best, None if ok else best_path)


@dataclass(frozen=True, eq=False)
class BruteForceModulus:
    value: float
    lower: float
    rho: np.ndarray
    n_paths: int
    iterations: int


BRUTEFORCE_MAX_N = 10


def modulus_bruteforce(g: Graph, a: int, b: int, tol: float = 1e-7,
                       max_iter: int = 200_000, max_paths: int = 200_000) -> BruteForceModulus:
    """Modulus straight from its definition, as a convex QP over path constraints.

    Minimises sum w rho^2 subject to rho-length >= 1 on every simple a-b path.
    Runs accelerated projected gradient ascent on the dual (one multiplier
    per path; the primal is rho = P^T lam / 2w). Every iterate is rescaled
    into a feasible density, so ``value`` is always an upper bound and
    ``lower`` the dual bound; iteration stops once they agree to ``tol``
    (relative).
    """
    if g.n > BRUTEFORCE_MAX_N:
        raise PathBudgetError(f"brute-force modulus limited to {BRUTEFORCE_MAX_N} vertices")
    paths = simple_paths(g, a, b, max_paths=max_paths)
    pm = np.zeros((len(paths), g.m))
    for k, p in enumerate(paths):
        pm[k, path_edges(g, p)] = 1.0
    w = g.weights
    scaled = pm / np.sqrt(w)
    lip = 0.5 * np.linalg.norm(scaled, 2) ** 2

    def primal(lam):
        return (pm.T @ lam) / (2.0 * w)

    def dual(lam, rho):
        return float(lam.sum() - np.sum(w * rho * rho))

    def feasible(rho):
        shortest = float((pm @ rho).min())
        if shortest <= 0:
            return np.inf, rho
        r = rho / shortest
        return float(np.sum(w * r * r)), r

    lam = np.full(len(paths), 1.0 / len(paths))
    y = lam.copy()
    t = 1.0
    best_up, best_rho = feasible(np.ones(g.m))
    best_low = -np.inf
    prev = -np.inf
    it = 0
    for it in range(1, max_iter + 1):
        rho_y = primal(y)
        grad = 1.0 - pm @ rho_y
        new = np.maximum(y + grad / lip, 0.0)
        rho = primal(new)
        val = dual(new, rho)
        best_low = max(best_low, val)
        up, cand = feasible(rho)
        if up < best_up:
            best_up, best_rho = up, cand
        if best_up - best_low <= tol * best_up:
            lam = new
            break
        if val < prev:
            # adaptive restart when the dual objective stalls
            t = 1.0
            y = lam
            prev = dual(lam, primal(lam))
            continue
        t_next = 0.5 * (1.0 + np.sqrt(1.0 + 4.0 * t * t))
        y = new + ((t - 1.0) / t_next) * (new - lam)
        lam, t, prev = new, t_next, val
    return BruteForceModulus(best_up, best_low, best_rho, len(paths), it)


@dataclass(frozen=True)
class BoundCheck:
    a: int
    b: int
    distance: int
    modulus: float
    epidemic: int
    union_volume: int

    @property
    def bound(self) -> float:
        """d(a, b)^2 Mod(a, b)."""
        return self.distance ** 2 * self.modulus

    @property
    def slack(self) -> float:
        return self.epidemic - self.bound

    def holds(self, tol: float = 1e-9) -> bool:
        return self.bound <= self.epidemic + tol

    def sharp_holds(self, tol: float = 1e-9) -> bool:
        """Mod <= |Omega_a union Omega_b| / d^2."""
        return self.modulus <= self.union_volume / self.distance ** 2 + tol


def epidemic_modulus_bound(g: Graph, a: int, b: int) -> BoundCheck:
    if a == b:
        raise ValueError("the bound compares distinct vertices")
    res = epidemic(g, a, b)
    return BoundCheck(a, b, res.distance, modulus(g, a, b), res.value, res.union_volume)


def epidemic_density_energy(g: Graph, a: int, b: int) -> float:
    return density_energy(g, epidemic_density(g, a, b))


def conductance_check(g: Graph, a: int, b: int) -> dict:
    """Mod, Cap and 1/R_eff side by side for one pair."""
    cap = capacity(g, a, b)
    return {
        "modulus": modulus(g, a, b),
        "capacity": cap,
        "conductance": 1.0 / effective_resistance(g, a, b),
    }
