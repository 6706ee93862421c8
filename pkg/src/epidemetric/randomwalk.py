"""Weighted random walks: transition matrix, stationary law, Monte Carlo checks.

Randomness comes from SplitMix64 streams keyed by ``(seed, trial index)``.
Each trial owns its stream, so results do not depend on how trials are
split across threads or which kernel backend runs them.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import kernels
from .electrical import effective_resistance
from .graph import Graph, adjacency_matrix, degrees
from .variational import BoundaryProblem, harmonic_extension

ABORT_LIMIT = 0.01
_CHUNK = 8192


class WalkAbortError(RuntimeError):
    """Too many trials hit ``max_steps``."""


@dataclass(frozen=True, eq=False)
class TransitionStructure:
    P: np.ndarray
    local_conductance: np.ndarray


def transition(g: Graph) -> TransitionStructure:
    """P(x, y) = C(x, y) / C(x)."""
    c = degrees(g)
    return TransitionStructure(adjacency_matrix(g) / c[:, None], c)


def stationary(g: Graph) -> np.ndarray:
    """pi(x) = C(x) / sum_z C(z)."""
    c = degrees(g)
    return c / c.sum()


@dataclass(frozen=True)
class WalkConfig:
    seed: int = 0
    trials: int = 100_000
    max_steps: int | None = None
    threads: int | None = None

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must fit in 64 unsigned bits")
        if self.max_steps is not None and self.max_steps < 1:
            raise ValueError("max_steps must be positive")

    def steps_for(self, g: Graph) -> int:
        return self.max_steps if self.max_steps is not None else 100 * g.n * g.n


@dataclass(frozen=True)
class MCEstimate:
    estimate: float
    stderr: float
    trials: int
    aborted: int
    exact: float | None = None

    @property
    def z(self) -> float:
        if self.exact is None:
            return math.nan
        diff = self.estimate - self.exact
        if self.stderr == 0.0:
            return 0.0 if diff == 0.0 else math.copysign(math.inf, diff)
        return diff / self.stderr


def _cumulative(g: Graph) -> np.ndarray:
    indptr, _, eid = g.csr
    w = g.weights[eid]
    cum = np.empty_like(w)
    for x in range(g.n):
        s, e = indptr[x], indptr[x + 1]
        cum[s:e] = np.cumsum(w[s:e])
    return cum


def run_walks(g: Graph, start: int, stop, count_vertex: int, cfg: WalkConfig,
              backend=None) -> tuple[np.ndarray, np.ndarray]:
    """Run ``cfg.trials`` walks; see ``_core_py.walk`` for the semantics."""
    impl = backend or kernels
    indptr, nbr, _ = g.csr
    cum = _cumulative(g)
    mask = np.zeros(g.n, dtype=np.uint8)
    mask[list(stop)] = 1
    steps = cfg.steps_for(g)
    bounds = [(s, min(cfg.trials, s + _CHUNK)) for s in range(0, cfg.trials, _CHUNK)]

    def job(span):
        lo, hi = span
        return impl.walk(indptr, nbr, cum, int(start), mask, int(count_vertex),
                         np.uint64(cfg.seed), lo, hi - lo, steps)

    workers = min(cfg.threads or kernels.thread_count(), len(bounds))
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(job, bounds))
    else:
        parts = [job(s) for s in bounds]
    ends = np.concatenate([p[0] for p in parts])
    visits = np.concatenate([p[1] for p in parts])
    return ends, visits


def _check_aborts(ends, trials):
    aborted = int((ends < 0).sum())
    if aborted > ABORT_LIMIT * trials:
        raise WalkAbortError(
            f"{aborted} of {trials} trials exceeded max_steps; raise max_steps"
        )
    return aborted


def escape_probability_mc(g: Graph, a: int, b: int, cfg: WalkConfig, backend=None) -> MCEstimate:
    """Estimate P_a(tau_b < tau_a^+); compared against C_eff(a, b) / C(a)."""
    if a == b:
        raise ValueError("escape probability needs distinct vertices")
    ends, _ = run_walks(g, a, (a, b), a, cfg, backend)
    aborted = _check_aborts(ends, cfg.trials)
    done = ends[ends >= 0]
    n = done.size
    p = float(np.mean(done == b))
    stderr = math.sqrt(p * (1.0 - p) / n)
    exact = 1.0 / (effective_resistance(g, a, b) * float(degrees(g)[a]))
    return MCEstimate(p, stderr, n, aborted, exact)


def green_function_mc(g: Graph, a: int, b: int, cfg: WalkConfig, backend=None) -> MCEstimate:
    """Estimate G_b(a, a), visits to a (time 0 included) before hitting b.

    Compared against C(a) R_eff(a, b).
    """
    if a == b:
        raise ValueError("Green's function needs distinct vertices")
    ends, visits = run_walks(g, a, (b,), a, cfg, backend)
    aborted = _check_aborts(ends, cfg.trials)
    done = visits[ends >= 0].astype(float)
    n = done.size
    mean = float(done.mean())
    stderr = float(done.std(ddof=1) / math.sqrt(n)) if n > 1 else 0.0
    exact = float(degrees(g)[a]) * effective_resistance(g, a, b)
    return MCEstimate(mean, stderr, n, aborted, exact)


def hitting_probability(g: Graph, boundary, target, x: int) -> float:
    """P_x(the walk first enters ``boundary`` inside ``target``)."""
    boundary = sorted(set(boundary))
    target = set(target)
    if not target <= set(boundary):
        raise ValueError("target must be a subset of the boundary")
    bp = BoundaryProblem(boundary, [1.0 if v in target else 0.0 for v in boundary])
    return float(harmonic_extension(g, bp)[x])


def hitting_probability_mc(g: Graph, boundary, target, x: int, cfg: WalkConfig,
                           backend=None) -> MCEstimate:
    boundary = sorted(set(boundary))
    exact = hitting_probability(g, boundary, target, x)
    if x in boundary:
        value = 1.0 if x in set(target) else 0.0
        return MCEstimate(value, 0.0, cfg.trials, 0, exact)
    ends, _ = run_walks(g, x, boundary, -1, cfg, backend)
    aborted = _check_aborts(ends, cfg.trials)
    done = ends[ends >= 0]
    p = float(np.isin(done, list(target)).mean())
    return MCEstimate(p, math.sqrt(p * (1.0 - p) / done.size), done.size, aborted, exact)


def symmetrized_transition(g: Graph) -> np.ndarray:
    """D^{1/2} P D^{-1/2}, symmetric with the spectrum of P."""
    ts = transition(g)
    s = np.sqrt(ts.local_conductance)
    return s[:, None] * ts.P / s[None, :]
