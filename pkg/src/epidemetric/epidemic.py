"""Epidemic quasimetric and its admissible density.

For a pair (a, b) at hop distance d, Omega(x, d) is the subgraph induced by
the radius-d ball around x, and the quasimetric is |Omega(a, d)| + |Omega(b, d)|
counted in edges.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .graph import Graph, Subgraph, ball, induced


@dataclass(frozen=True)
class EpidemicResult:
    a: int
    b: int
    distance: int
    vol_a: int
    vol_b: int
    union_volume: int

    @property
    def value(self) -> int:
        return self.vol_a + self.vol_b


def omega(g: Graph, x: int, r: int) -> Subgraph:
    return induced(g, ball(g, x, r))


def _reach(g: Graph, x: int) -> np.ndarray:
    u, v = g.endpoints
    dx = g.distances[x]
    return np.maximum(dx[u], dx[v])


def epidemic(g: Graph, a: int, b: int) -> EpidemicResult:
    d = int(g.distances[a, b])
    in_a = _reach(g, a) <= d
    in_b = _reach(g, b) <= d
    return EpidemicResult(a, b, d, int(in_a.sum()), int(in_b.sum()), int((in_a | in_b).sum()))


def volume_profile(g: Graph) -> np.ndarray:
    """vol[x, r] = |Omega(x, r)| for r = 0..diameter."""
    u, v = g.endpoints
    dist = g.distances
    return kernels.ball_volume_profile(dist, u, v, int(dist.max()))


def epidemic_matrix(g: Graph) -> np.ndarray:
    """Integer N x N table of Epidemic(x, y)."""
    vol = volume_profile(g)
    d = g.distances
    rows = np.arange(g.n)[:, None]
    out = vol[rows, d] + vol[rows, d].T
    np.fill_diagonal(out, 0)
    return out


def epidemic_density(g: Graph, a: int, b: int) -> np.ndarray:
    """rho = 1/d on the edges of Omega(a, d) union Omega(b, d), 0 elsewhere."""
    if a == b:
        raise ValueError("epidemic density needs two distinct vertices")
    d = int(g.distances[a, b])
    support = (_reach(g, a) <= d) | (_reach(g, b) <= d)
    return np.where(support, 1.0 / d, 0.0)


def discrepancy(g: Graph, a: int, b: int, resistance: float | None = None) -> float:
    """R_eff(a, b) * Epidemic(a, b) / d(a, b)^2."""
    if a == b:
        raise ValueError("discrepancy needs two distinct vertices")
    if resistance is None:
        from .electrical import effective_resistance
        resistance = effective_resistance(g, a, b)
    res = epidemic(g, a, b)
    return resistance * res.value / res.distance ** 2


def discrepancy_matrix(g: Graph, resistances: np.ndarray | None = None) -> np.ndarray:
    if resistances is None:
        from .electrical import resistance_matrix
        resistances = resistance_matrix(g)
    d = g.distances.astype(float)
    np.fill_diagonal(d, 1.0)
    out = resistances * epidemic_matrix(g) / d ** 2
    np.fill_diagonal(out, 0.0)
    return out
