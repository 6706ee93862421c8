"""Named graph families, random test graphs and the built-in datasets."""
from __future__ import annotations

import numpy as np

from .graph import Graph, GraphError


def path_graph(n: int) -> Graph:
    """P_n: 0 - 1 - ... - (n-1)."""
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def star_graph(n: int) -> Graph:
    """S_n: hub 0 joined to n-1 leaves."""
    if n < 2:
        raise GraphError("a star needs at least 2 vertices")
    return Graph(n, [(0, i) for i in range(1, n)])


def complete_graph(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_pendant(n: int) -> Graph:
    """K_n on 0..n-1 plus a pendant vertex n attached to vertex 0."""
    edges = [(i, j) for i in range(n) for j in range(i + 1, n)]
    return Graph(n + 1, edges + [(0, n)])


def triangle_counterexample(n_leaves: int) -> tuple[Graph, tuple[int, int, int]]:
    """Path x1 - x2 - x3 - y with ``n_leaves`` leaves hung on y.

    Epidemic(x1, x2) = 3 and Epidemic(x2, x3) = 4 for every size, while
    Epidemic(x1, x3) = n_leaves + 5, so the triangle inequality fails by a
    margin that grows with the number of leaves.
    """
    edges = [(0, 1), (1, 2), (2, 3)] + [(3, 4 + i) for i in range(n_leaves)]
    return Graph(4 + n_leaves, edges), (0, 1, 2)


def random_connected_graph(n: int, p: float, rng: np.random.Generator,
                           weight_range: tuple[float, float] | None = None,
                           max_tries: int = 10_000) -> Graph:
    """G(n, p) conditioned on connectivity by rejection sampling."""
    iu, ju = np.triu_indices(n, 1)
    for _ in range(max_tries):
        keep = rng.random(iu.size) < p
        pairs = list(zip(iu[keep].tolist(), ju[keep].tolist()))
        if len(pairs) < n - 1:
            continue
        if not _connected(n, pairs):
            continue
        w = None
        if weight_range is not None:
            w = rng.uniform(weight_range[0], weight_range[1], len(pairs))
        return Graph(n, pairs, w)
    raise RuntimeError(f"no connected G({n}, {p}) sample in {max_tries} tries")


def random_tree(n: int, rng: np.random.Generator) -> Graph:
    """Uniform random recursive tree: vertex i attaches to a random earlier vertex."""
    return Graph(n, [(int(rng.integers(0, i)), i) for i in range(1, n)])


def random_corpus(count: int = 50, max_n: int = 12, p: float = 0.4, seed: int = 2024,
                  weight_range: tuple[float, float] | None = (0.5, 2.0),
                  min_n: int = 3) -> list[Graph]:
    """Seeded list of random connected graphs with sizes in [min_n, max_n]."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        n = int(rng.integers(min_n, max_n + 1))
        out.append(random_connected_graph(n, p, rng, weight_range))
    return out


def _connected(n, pairs):
    adj = [[] for _ in range(n)]
    for u, v in pairs:
        adj[u].append(v)
        adj[v].append(u)
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == n


# Zachary's karate club, 1-based labels as usually published.
KARATE_EDGES = (
    (1, 2), (1, 3), (1, 4), (1, 5), (1, 6), (1, 7), (1, 8), (1, 9), (1, 11),
    (1, 12), (1, 13), (1, 14), (1, 18), (1, 20), (1, 22), (1, 32), (2, 3),
    (2, 4), (2, 8), (2, 14), (2, 18), (2, 20), (2, 22), (2, 31), (3, 4),
    (3, 8), (3, 9), (3, 10), (3, 14), (3, 28), (3, 29), (3, 33), (4, 8),
    (4, 13), (4, 14), (5, 7), (5, 11), (6, 7), (6, 11), (6, 17), (7, 17),
    (9, 31), (9, 33), (9, 34), (10, 34), (14, 34), (15, 33), (15, 34),
    (16, 33), (16, 34), (19, 33), (19, 34), (20, 34), (21, 33), (21, 34),
    (23, 33), (23, 34), (24, 26), (24, 28), (24, 30), (24, 33), (24, 34),
    (25, 26), (25, 28), (25, 32), (26, 32), (27, 30), (27, 34), (28, 34),
    (29, 32), (29, 34), (30, 33), (30, 34), (31, 33), (31, 34), (32, 33),
    (32, 34), (33, 34),
)

# 0 = instructor's faction (vertex 1), 1 = administrator's faction (vertex 34).
KARATE_FACTIONS = (
    0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 1, 0,
    0, 1, 0, 1, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1,
)


def karate_graph() -> Graph:
    return Graph(34, [(u - 1, v - 1) for u, v in KARATE_EDGES])


DATASETS = ("karate", "path:N", "star:N", "complete:N", "complete-pendant:N", "cycle:N")


def dataset(name: str) -> Graph:
    """Built-in graph by name: ``karate`` or ``family:N``."""
    if name == "karate":
        return karate_graph()
    family, _, size = name.partition(":")
    makers = {
        "path": path_graph,
        "star": star_graph,
        "complete": complete_graph,
        "complete-pendant": complete_pendant,
        "cycle": cycle_graph,
    }
    if family not in makers or not size:
        raise KeyError(f"unknown dataset {name!r}; choose from {', '.join(DATASETS)}")
    try:
        n = int(size)
    except ValueError:
        raise KeyError(f"dataset size must be an integer, got {size!r}") from None
    return makers[family](n)
