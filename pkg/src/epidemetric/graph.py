"""Simple connected graphs, induced subgraphs and hop distances.

Vertices are ``0..n-1`` internally. Edge-list and adjacency files use
1-based labels; the conversion happens only in the readers and writers.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import kernels


class GraphError(ValueError):
    """Invalid graph input. ``line`` is the 1-based source line, if known."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ParseError(GraphError):
    pass


class SelfLoopError(GraphError):
    pass


class DuplicateEdgeError(GraphError):
    pass


class WeightError(GraphError):
    pass


class DisconnectedError(GraphError):
    def __init__(self, representatives):
        self.representatives = tuple(representatives)
        a, b = self.representatives[:2]
        super().__init__(
            f"graph is disconnected: vertices {a + 1} and {b + 1} lie in different components"
        )


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable simple weighted graph.

    ``edges`` keeps input order; each pair is stored as ``(min, max)``.
    ``weights`` are edge conductances, all 1.0 unless given.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    weights: np.ndarray = field(repr=False)

    def __init__(self, n: int, edges: Iterable[Sequence[int]], weights=None, *, _lines=None):
        n = int(n)
        if n < 1:
            raise GraphError("a graph needs at least one vertex")
        canon = []
        seen = {}
        for k, (u, v) in enumerate(edges):
            line = _lines[k] if _lines is not None else None
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) has a vertex outside 0..{n - 1}", line)
            if u == v:
                raise SelfLoopError(f"self-loop at vertex {u + 1}", line)
            e = (u, v) if u < v else (v, u)
            if e in seen:
                raise DuplicateEdgeError(
                    f"duplicate edge {{{e[0] + 1}, {e[1] + 1}}}", line
                )
            seen[e] = k
            canon.append(e)
        if weights is None:
            w = np.ones(len(canon))
        else:
            w = np.array(weights, dtype=float).reshape(-1)
            if w.shape[0] != len(canon):
                raise WeightError(f"expected {len(canon)} weights, got {w.shape[0]}")
            bad = np.flatnonzero(~(w > 0) | ~np.isfinite(w))
            if bad.size:
                k = int(bad[0])
                line = _lines[k] if _lines is not None else None
                raise WeightError(f"non-positive or non-finite weight {w[k]!r}", line)
        w.setflags(write=False)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", tuple(canon))
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "_edge_index", seen)
        comps = self._components()
        if len(comps) > 1:
            raise DisconnectedError([c[0] for c in comps])

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def is_weighted(self) -> bool:
        return bool(np.any(self.weights != 1.0))

    def edge_index(self, u: int, v: int) -> int:
        """Position of edge {u, v} in ``edges``; KeyError if absent."""
        return self._edge_index[(u, v) if u < v else (v, u)]

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self._edge_index

    def with_weights(self, weights) -> "Graph":
        return Graph(self.n, self.edges, weights)

    def unweighted(self) -> "Graph":
        return Graph(self.n, self.edges)

    @cached_property
    def endpoints(self) -> tuple[np.ndarray, np.ndarray]:
        """(tails, heads) arrays with tail < head."""
        if not self.edges:
            empty = np.zeros(0, dtype=np.int64)
            return empty, empty
        arr = np.asarray(self.edges, dtype=np.int64)
        return arr[:, 0].copy(), arr[:, 1].copy()

    @cached_property
    def csr(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(indptr, neighbors, edge ids); neighbor lists sorted by vertex id."""
        u, v = self.endpoints
        src = np.concatenate([u, v])
        dst = np.concatenate([v, u])
        eid = np.concatenate([np.arange(self.m), np.arange(self.m)]).astype(np.int64)
        order = np.lexsort((dst, src))
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        np.add.at(indptr, src + 1, 1)
        np.cumsum(indptr, out=indptr)
        return indptr, dst[order].astype(np.int64), eid[order]

    def neighbors(self, x: int) -> np.ndarray:
        indptr, nbr, _ = self.csr
        return nbr[indptr[x]:indptr[x + 1]]

    def _components(self):
        parent = list(range(self.n))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for u, v in self.edges:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[max(ru, rv)] = min(ru, rv)
        groups = {}
        for x in range(self.n):
            groups.setdefault(find(x), []).append(x)
        return sorted(groups.values())

    @cached_property
    def distances(self) -> np.ndarray:
        """All-pairs hop distances (unit edge lengths)."""
        indptr, nbr, _ = self.csr
        d = kernels.all_pairs_bfs(indptr, nbr, self.n)
        d.setflags(write=False)
        return d

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m}{', weighted' if self.is_weighted else ''})"


@dataclass(frozen=True, eq=False)
class Subgraph:
    """Subgraph of ``parent`` induced by ``vertices``; ``edges`` are parent edge ids."""

    parent: Graph
    vertices: frozenset
    edges: tuple[int, ...]

    def degree(self, x: int) -> int:
        if x not in self.vertices:
            raise KeyError(x)
        return sum(1 for e in self.edges if x in self.parent.edges[e])


# ----------------------------------------------------------------------------
# Construction from text


def _strip(line):
    line = line.split("#", 1)[0]
    return line.strip()


def from_edge_list(text: str) -> Graph:
    """Parse ``u v [w]`` lines with 1-based labels into a Graph.

    The vertex count is the largest label seen.
    """
    pairs, weights, lines = [], [], []
    weighted = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip(raw)
        if not line:
            continue
        tok = line.split()
        if len(tok) not in (2, 3):
            raise ParseError(f"expected 'u v [w]', got {raw.strip()!r}", lineno)
        if weighted is None:
            weighted = len(tok) == 3
        elif weighted != (len(tok) == 3):
            raise ParseError("mixed weighted and unweighted lines", lineno)
        try:
            u, v = int(tok[0]), int(tok[1])
        except ValueError:
            raise ParseError(f"vertex labels must be integers, got {raw.strip()!r}", lineno) from None
        if u < 1 or v < 1:
            raise ParseError("vertex labels start at 1", lineno)
        if weighted:
            try:
                weights.append(float(tok[2]))
            except ValueError:
                raise ParseError(f"bad weight {tok[2]!r}", lineno) from None
        pairs.append((u - 1, v - 1))
        lines.append(lineno)
    if not pairs:
        raise ParseError("no edges found")
    n = max(max(p) for p in pairs) + 1
    return Graph(n, pairs, weights if weighted else None, _lines=lines)


def from_adjacency(matrix) -> Graph:
    """Graph from a symmetric N x N weight table (0 = no edge)."""
    a = np.asarray(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ParseError(f"adjacency must be square, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ParseError("adjacency has non-finite entries")
    if not np.array_equal(a, a.T):
        i, j = np.argwhere(a != a.T)[0]
        raise ParseError(f"adjacency is not symmetric at ({i + 1}, {j + 1})")
    if np.any(np.diag(a) != 0):
        i = int(np.flatnonzero(np.diag(a))[0])
        raise SelfLoopError(f"self-loop at vertex {i + 1}", i + 1)
    iu, ju = np.nonzero(np.triu(a, 1))
    w = a[iu, ju]
    return Graph(a.shape[0], zip(iu.tolist(), ju.tolist()), w)


def from_adjacency_csv(text: str) -> Graph:
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            rows.append([float(t) for t in line.split(",")])
        except ValueError:
            raise ParseError(f"non-numeric adjacency entry in {line!r}", lineno) from None
    if not rows:
        raise ParseError("empty adjacency file")
    if len({len(r) for r in rows}) != 1:
        raise ParseError("adjacency rows have different lengths")
    return from_adjacency(rows)


def read_graph(path) -> Graph:
    """Read a ``.csv`` adjacency table or a whitespace edge list."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if str(path).lower().endswith(".csv"):
        return from_adjacency_csv(text)
    return from_edge_list(text)


def to_edge_list(g: Graph) -> str:
    out = []
    for (u, v), w in zip(g.edges, g.weights):
        if g.is_weighted:
            out.append(f"{u + 1} {v + 1} {w:.17g}")
        else:
            out.append(f"{u + 1} {v + 1}")
    return "\n".join(out) + "\n"


def adjacency_matrix(g: Graph, weighted: bool = True) -> np.ndarray:
    a = np.zeros((g.n, g.n))
    u, v = g.endpoints
    w = g.weights if weighted else 1.0
    a[u, v] = w
    a[v, u] = w
    return a


def to_adjacency_csv(g: Graph) -> str:
    a = adjacency_matrix(g)
    return "".join(",".join(f"{x:.17g}" for x in row) + "\n" for row in a)


# ----------------------------------------------------------------------------
# Degrees, volume, balls


def degree(g: Graph, x: int) -> float:
    """Weighted degree sum_{y~x} W(x, y)."""
    return float(degrees(g)[x])


def degrees(g: Graph) -> np.ndarray:
    d = np.zeros(g.n)
    u, v = g.endpoints
    np.add.at(d, u, g.weights)
    np.add.at(d, v, g.weights)
    return d


def neighbor_counts(g: Graph) -> np.ndarray:
    indptr = g.csr[0]
    return np.diff(indptr)


def volume(s: Subgraph) -> int:
    """Edge count of ``s``."""
    return len(s.edges)


def volume_by_degrees(s: Subgraph) -> int:
    total = sum(s.degree(x) for x in s.vertices)
    assert total % 2 == 0
    return total // 2


def induced(g: Graph, vs: Iterable[int]) -> Subgraph:
    vset = frozenset(int(x) for x in vs)
    for x in vset:
        if not 0 <= x < g.n:
            raise GraphError(f"vertex {x} not in graph")
    edges = tuple(k for k, (u, v) in enumerate(g.edges) if u in vset and v in vset)
    return Subgraph(g, vset, edges)


def subgraph_as_graph(s: Subgraph) -> tuple[Graph, list[int]]:
    """Relabel an induced subgraph as a standalone Graph (must be connected).

    Returns the graph and the parent vertex of each new vertex.
    """
    order = sorted(s.vertices)
    local = {x: i for i, x in enumerate(order)}
    pairs = [(local[s.parent.edges[e][0]], local[s.parent.edges[e][1]]) for e in s.edges]
    w = s.parent.weights[list(s.edges)] if s.edges else []
    return Graph(len(order), pairs, w), order


def bfs_distances(g: Graph, x: int) -> np.ndarray:
    """Hop distance from ``x`` to every vertex; weights are ignored."""
    return np.array(g.distances[x])


def distance_matrix(g: Graph) -> np.ndarray:
    return np.array(g.distances)


def ball(g: Graph, x: int, r: int) -> frozenset:
    if r < 0:
        raise ValueError("radius must be non-negative")
    return frozenset(np.flatnonzero(g.distances[x] <= r).tolist())


def diameter(g: Graph) -> int:
    return int(g.distances.max())


def matrix_power_distances(g: Graph) -> np.ndarray:
    """Hop distances by thresholded powers of K + I.

    B_k is B^k with non-zero entries set to 1 (B_0 = I). Summing the
    complements 1 - B_k for k = 0..N counts, for each pair, the powers at
    which the pair is not yet connected, which is the distance. Kept as an
    independent check on the BFS path.
    """
    n = g.n
    k_mat = (adjacency_matrix(g, weighted=False) != 0).astype(np.int64)
    b = k_mat + np.eye(n, dtype=np.int64)
    bk = np.eye(n, dtype=np.int64)
    total = np.zeros((n, n), dtype=np.int64)
    for _ in range(n + 1):
        total += 1 - bk
        bk = ((bk @ b) != 0).astype(np.int64)
    return total


def masked_adjacency(g: Graph, vs: Iterable[int]) -> np.ndarray:
    """M K M with M the 0/1 diagonal indicator of ``vs``."""
    m = np.zeros(g.n, dtype=np.int64)
    m[list(vs)] = 1
    k_mat = (adjacency_matrix(g, weighted=False) != 0).astype(np.int64)
    return np.diag(m) @ k_mat @ np.diag(m)
