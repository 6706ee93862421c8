"""Laplacian, Green operator, effective resistance and unit current flows.

Edge weights are conductances: C(e) = W(e), R(e) = 1/W(e). The default
orientation puts each edge's tail at its smaller vertex id.
"""
from __future__ import annotations

import weakref
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .graph import Graph, adjacency_matrix, degrees

KERNEL_RTOL = 1e-10


@dataclass(frozen=True, eq=False)
class Orientation:
    tails: np.ndarray
    heads: np.ndarray

    def flip(self, e: int) -> "Orientation":
        tails, heads = self.tails.copy(), self.heads.copy()
        tails[e], heads[e] = heads[e], tails[e]
        return Orientation(tails, heads)


def default_orientation(g: Graph) -> Orientation:
    u, v = g.endpoints
    return Orientation(u.copy(), v.copy())


def laplacian(g: Graph) -> np.ndarray:
    """L = D - A with weighted degrees on the diagonal."""
    return np.diag(degrees(g)) - adjacency_matrix(g)


def incidence(g: Graph, orientation: Orientation | None = None) -> np.ndarray:
    """M x N matrix with +1 at each edge's head and -1 at its tail."""
    o = orientation or default_orientation(g)
    b = np.zeros((g.m, g.n))
    rows = np.arange(g.m)
    b[rows, o.heads] = 1.0
    b[rows, o.tails] = -1.0
    return b


@dataclass(frozen=True, eq=False)
class SpectralLaplacian:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    green: np.ndarray

    def resistance(self, a: int, b: int) -> float:
        if a == b:
            return 0.0
        gm = self.green
        return float(gm[a, a] + gm[b, b] - 2.0 * gm[a, b])

    def resistance_matrix(self) -> np.ndarray:
        diag = np.diag(self.green)
        r = diag[:, None] + diag[None, :] - 2.0 * self.green
        np.fill_diagonal(r, 0.0)
        return r


_spectral_cache: "weakref.WeakKeyDictionary[Graph, SpectralLaplacian]" = weakref.WeakKeyDictionary()


def spectral(g: Graph) -> SpectralLaplacian:
    """Eigendecomposition of L and the Green operator sum_{i>=1} u_i u_i^T / lambda_i."""
    cached = _spectral_cache.get(g)
    if cached is not None:
        return cached
    lam, u = np.linalg.eigh(laplacian(g))
    scale = max(float(lam[-1]), 0.0)
    nonzero = lam > KERNEL_RTOL * scale
    if g.n > 1 and int((~nonzero).sum()) != 1:
        raise np.linalg.LinAlgError(
            f"expected a one-dimensional Laplacian kernel, found {int((~nonzero).sum())} zero eigenvalues"
        )
    uk = u[:, nonzero]
    green = (uk / lam[nonzero]) @ uk.T
    green = 0.5 * (green + green.T)
    for arr in (lam, u, green):
        arr.setflags(write=False)
    out = SpectralLaplacian(lam, u, green)
    _spectral_cache[g] = out
    return out


def eta(n: int, a: int, b: int) -> np.ndarray:
    """External current vector: -1 at a, +1 at b."""
    x = np.zeros(n)
    x[a] -= 1.0
    x[b] += 1.0
    return x


def effective_resistance(g: Graph, a: int, b: int, method: str = "green") -> float:
    """R_eff(a, b) via the Green operator (``"green"``) or a grounded solve."""
    if a == b:
        return 0.0
    if method == "green":
        return spectral(g).resistance(a, b)
    if method == "grounded":
        return effective_resistance_grounded(g, a, b)
    raise ValueError(f"unknown method {method!r}")


def effective_resistance_grounded(g: Graph, a: int, b: int) -> float:
    """Fix v(a) = 0, drop a's row and column, solve the SPD system for v(b)."""
    if a == b:
        return 0.0
    keep = np.delete(np.arange(g.n), a)
    lr = laplacian(g)[np.ix_(keep, keep)]
    rhs = eta(g.n, a, b)[keep]
    v = scipy.linalg.solve(lr, rhs, assume_a="pos")
    return float(v[np.searchsorted(keep, b)])


def resistance_matrix(g: Graph) -> np.ndarray:
    return spectral(g).resistance_matrix()


def conductance(g: Graph, a: int, b: int) -> float:
    """C_eff = 1 / R_eff."""
    return 1.0 / effective_resistance(g, a, b)


@dataclass(frozen=True, eq=False)
class CurrentSolution:
    a: int
    b: int
    potential: np.ndarray
    current: np.ndarray
    orientation: Orientation

    @property
    def strength(self) -> float:
        return float(divergence(self.current, self.orientation, len(self.potential))[self.a])

    @property
    def resistance(self) -> float:
        return float(self.potential[self.b] - self.potential[self.a])


def unit_current_flow(g: Graph, a: int, b: int, orientation: Orientation | None = None) -> CurrentSolution:
    """Unit current from a to b: v = G eta_ab (sum v = 0), i = W B v."""
    if a == b:
        raise ValueError("a unit flow needs distinct source and sink")
    o = orientation or default_orientation(g)
    v = spectral(g).green @ eta(g.n, a, b)
    i = g.weights * (v[o.heads] - v[o.tails])
    return CurrentSolution(a, b, v, i, o)


def divergence(flow: np.ndarray, orientation: Orientation, n: int) -> np.ndarray:
    """div_j(x) = sum_{y~x} j(x, y), with j(tail, head) = flow[e]."""
    out = np.zeros(n)
    np.add.at(out, orientation.tails, flow)
    np.subtract.at(out, orientation.heads, flow)
    return out


def energy(g: Graph, flow: np.ndarray) -> float:
    """sum_e R(e) j(e)^2."""
    flow = np.asarray(flow, dtype=float)
    return float(np.sum(flow * flow / g.weights))
