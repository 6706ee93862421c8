"""Batch checks of the identities and inequalities relating the graph metrics.

Each suite scans every pair of every graph, records the largest violation
of its inequality or identity and the pair where it happened, and passes
when that violation stays within the suite's tolerance.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

from .electrical import effective_resistance_grounded, energy, resistance_matrix, unit_current_flow
from .epidemic import epidemic_matrix, epidemic
from .graph import Graph, matrix_power_distances
from .variational import BRUTEFORCE_MAX_N, capacity, modulus, modulus_bruteforce


@dataclass
class SuiteResult:
    name: str
    tolerance: float
    max_violation: float = 0.0
    checked: int = 0
    worst: dict | None = None
    note: str = ""
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.max_violation <= self.tolerance

    def record(self, violation: float, **where) -> None:
        self.checked += 1
        violation = float(violation)
        if self.worst is None or violation > self.max_violation:
            self.max_violation = max(self.max_violation, violation)
            self.worst = {k: _plain(v) for k, v in where.items()}
            self.worst["violation"] = violation

    def as_dict(self) -> dict:
        d = asdict(self)
        d["passed"] = self.passed
        return d


def _plain(v):
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (np.floating,)):
        return float(v)
    if isinstance(v, tuple):
        return [_plain(x) for x in v]
    return v


def _pairs(n):
    for a in range(n):
        for b in range(a + 1, n):
            yield a, b


def distance_oracle(graphs) -> SuiteResult:
    s = SuiteResult("matrix_power_distance_equals_bfs", 0.0)
    for gi, g in enumerate(graphs):
        diff = np.abs(matrix_power_distances(g) - g.distances)
        i, j = np.unravel_index(int(np.argmax(diff)), diff.shape)
        s.record(diff[i, j], graph=gi, pair=(i + 1, j + 1))
    return s


def modulus_capacity(graphs, rtol: float = 1e-8) -> SuiteResult:
    """Mod = Cap = 1/R_eff, relative error."""
    s = SuiteResult("modulus_capacity_conductance", rtol)
    for gi, g in enumerate(graphs):
        r = resistance_matrix(g)
        for a, b in _pairs(g.n):
            mod, cap, ceff = modulus(g, a, b), capacity(g, a, b), 1.0 / r[a, b]
            err = max(abs(mod - cap), abs(cap - ceff)) / ceff
            s.record(err, graph=gi, pair=(a + 1, b + 1), modulus=mod, capacity=cap, conductance=ceff)
    return s


def bruteforce_modulus(graphs, rtol: float = 1e-5, max_n: int = 8) -> SuiteResult:
    s = SuiteResult("bruteforce_modulus_oracle", rtol, note=f"graphs with N <= {max_n}")
    for gi, g in enumerate(graphs):
        if g.n > min(max_n, BRUTEFORCE_MAX_N):
            continue
        for a, b in _pairs(g.n):
            bf = modulus_bruteforce(g, a, b)
            cap = capacity(g, a, b)
            s.record(abs(bf.value - cap) / cap, graph=gi, pair=(a + 1, b + 1), bruteforce=bf.value, capacity=cap)
    return s


def epidemic_bound(graphs, tol: float = 1e-9) -> SuiteResult:
    """d^2 Mod <= |Omega_a union Omega_b| <= Epidemic."""
    s = SuiteResult("epidemic_modulus_bound", tol, note="d^2 Mod <= Epidemic, and <= union volume")
    for gi, g in enumerate(graphs):
        for a, b in _pairs(g.n):
            res = epidemic(g, a, b)
            bound = res.distance ** 2 * modulus(g, a, b)
            viol = max(bound - res.value, bound - res.union_volume)
            s.record(viol, graph=gi, pair=(a + 1, b + 1), bound=bound, epidemic=res.value,
                     union_volume=res.union_volume)
    return s


def discrepancy_lower(graphs, tol: float = 1e-9) -> SuiteResult:
    s = SuiteResult("discrepancy_at_least_one", tol)
    for gi, g in enumerate(graphs):
        r = resistance_matrix(g)
        ep = epidemic_matrix(g)
        d = g.distances
        best = (0.0, None)
        for a, b in _pairs(g.n):
            delta = r[a, b] * ep[a, b] / d[a, b] ** 2
            s.record(1.0 - delta, graph=gi, pair=(a + 1, b + 1), discrepancy=delta)
            if delta > best[0]:
                best = (delta, (a + 1, b + 1))
        s.extra.setdefault("max_discrepancy", []).append({"graph": gi, "value": best[0], "pair": best[1]})
    return s


def resistance_metric(graphs, tol: float = 1e-8) -> SuiteResult:
    s = SuiteResult("resistance_is_metric", tol, note="symmetry, positivity, triangle inequality")
    for gi, g in enumerate(graphs):
        r = resistance_matrix(g)
        sym = float(np.abs(r - r.T).max())
        s.record(sym, graph=gi, kind="symmetry")
        off = r[~np.eye(g.n, dtype=bool)]
        if off.size:
            s.record(max(0.0, -float(off.min())), graph=gi, kind="positivity", min_off_diagonal=float(off.min()))
        # r[x, y] - r[x, z] - r[z, y] over all triples
        viol = r[:, None, :] - r[:, :, None] - r[None, :, :]
        x, z, y = np.unravel_index(int(np.argmax(viol)), viol.shape)
        s.record(max(0.0, float(viol[x, z, y])), graph=gi, kind="triangle", triple=(x + 1, z + 1, y + 1))
    return s


def resistance_below_distance(graphs, tol: float = 1e-9) -> SuiteResult:
    """R_eff <= d_G; meaningful for unit weights."""
    s = SuiteResult("resistance_at_most_distance", tol)
    for gi, g in enumerate(graphs):
        diff = resistance_matrix(g) - g.distances
        i, j = np.unravel_index(int(np.argmax(diff)), diff.shape)
        s.record(max(0.0, float(diff[i, j])), graph=gi, pair=(i + 1, j + 1))
    return s


def tree_equality(graphs, tol: float = 1e-9) -> SuiteResult:
    s = SuiteResult("tree_resistance_equals_distance", tol)
    for gi, g in enumerate(graphs):
        if g.m != g.n - 1:
            continue
        diff = np.abs(resistance_matrix(g) - g.distances)
        i, j = np.unravel_index(int(np.argmax(diff)), diff.shape)
        s.record(float(diff[i, j]), graph=gi, pair=(i + 1, j + 1))
    if s.checked == 0:
        s.note = "no trees in input"
    elif s.max_violation <= tol:
        s.note = "R_eff == d_G on every pair"
    return s


def rayleigh(graphs, trials: int = 10, seed: int = 0, tol: float = 1e-9) -> SuiteResult:
    """Lowering one edge's weight never lowers any effective resistance."""
    s = SuiteResult("rayleigh_monotonicity", tol)
    rng = np.random.default_rng(seed)
    for gi, g in enumerate(graphs):
        base = resistance_matrix(g)
        for _ in range(trials):
            e = int(rng.integers(g.m))
            w = np.array(g.weights)
            w[e] *= rng.uniform(0.05, 0.95)
            after = resistance_matrix(g.with_weights(w))
            drop = base - after
            i, j = np.unravel_index(int(np.argmax(drop)), drop.shape)
            s.record(max(0.0, float(drop[i, j])), graph=gi, edge=e, pair=(i + 1, j + 1))
    return s


def method_agreement(graphs, rtol: float = 1e-8) -> SuiteResult:
    """Green operator, grounded solve and unit-current energy give one R_eff."""
    s = SuiteResult("resistance_method_agreement", rtol)
    for gi, g in enumerate(graphs):
        r = resistance_matrix(g)
        for a, b in _pairs(g.n):
            grounded = effective_resistance_grounded(g, a, b)
            en = energy(g, unit_current_flow(g, a, b).current)
            err = max(abs(r[a, b] - grounded), abs(r[a, b] - en)) / r[a, b]
            s.record(err, graph=gi, pair=(a + 1, b + 1), green=r[a, b], grounded=grounded, energy=en)
    return s


def run_all(graphs: list[Graph], rayleigh_seed: int = 0) -> list[SuiteResult]:
    """All suites. Distance-based inequalities run on unit-weight copies."""
    unweighted = [g.unweighted() for g in graphs]
    return [
        distance_oracle(graphs),
        modulus_capacity(graphs),
        bruteforce_modulus(graphs),
        method_agreement(graphs),
        resistance_metric(graphs),
        rayleigh(graphs, seed=rayleigh_seed),
        epidemic_bound(unweighted),
        discrepancy_lower(unweighted),
        resistance_below_distance(unweighted),
        tree_equality(unweighted),
    ]
