"""Average-linkage agglomerative clustering on a dissimilarity table."""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .generators import KARATE_FACTIONS, karate_graph
from .graph import Graph


@dataclass(frozen=True)
class Merge:
    left: int
    right: int
    height: float
    new_id: int
    size: int


@dataclass(frozen=True)
class Dendrogram:
    """Merge list over leaves 0..n-1; merge k creates cluster id n + k."""

    n: int
    merges: tuple[Merge, ...]

    def clusters(self) -> dict[int, frozenset]:
        members = {i: frozenset([i]) for i in range(self.n)}
        for m in self.merges:
            members[m.new_id] = members[m.left] | members[m.right]
        return members

    def to_json(self) -> str:
        return json.dumps(
            {
                "n": self.n,
                "merges": [
                    {"left": m.left, "right": m.right, "height": m.height,
                     "id": m.new_id, "size": m.size}
                    for m in self.merges
                ],
            },
            indent=2,
        )

    @classmethod
    def from_json(cls, text: str) -> "Dendrogram":
        data = json.loads(text)
        merges = tuple(
            Merge(d["left"], d["right"], float(d["height"]), d["id"], d["size"])
            for d in data["merges"]
        )
        return cls(int(data["n"]), merges)

    def to_newick(self, labels=None, digits: int = 17) -> str:
        """Newick tree; leaves named by ``labels`` (default 1-based ids)."""
        names = [str(i + 1) for i in range(self.n)] if labels is None else [str(x) for x in labels]
        if self.n == 1:
            return f"{names[0]};"
        height = {i: 0.0 for i in range(self.n)}
        text = dict(enumerate(names))
        for m in self.merges:
            parts = []
            for child in (m.left, m.right):
                branch = max(m.height - height[child], 0.0)
                parts.append(f"{text.pop(child)}:{branch:.{digits}g}")
            text[m.new_id] = f"({','.join(parts)})"
            height[m.new_id] = m.height
        return text[self.merges[-1].new_id] + ";"


@dataclass(frozen=True)
class Partition:
    labels: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(int(x) for x in self.labels))
        if set(self.labels) != set(range(len(set(self.labels)))):
            raise ValueError("partition labels must be 0..k-1")

    @property
    def k(self) -> int:
        return len(set(self.labels))

    def clusters(self) -> list[list[int]]:
        out = [[] for _ in range(self.k)]
        for v, lab in enumerate(self.labels):
            out[lab].append(v)
        return out

    def to_csv(self) -> str:
        rows = ["vertex,label"] + [f"{v + 1},{lab}" for v, lab in enumerate(self.labels)]
        return "\n".join(rows) + "\n"


def _validate(d) -> np.ndarray:
    d = np.asarray(d, dtype=float)
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        raise ValueError(f"dissimilarity must be square, got shape {d.shape}")
    if not np.all(np.isfinite(d)):
        raise ValueError("dissimilarity has NaN or infinite entries")
    if np.any(d < 0):
        raise ValueError("dissimilarity has negative entries")
    if not np.array_equal(d, d.T):
        raise ValueError("dissimilarity is not symmetric")
    if np.any(np.diag(d) != 0):
        raise ValueError("dissimilarity diagonal must be zero")
    return d


def agnes(d) -> Dendrogram:
    """UPGMA: repeatedly merge the pair with least mean pairwise dissimilarity.

    Cluster-to-cluster sums are carried exactly (integer inputs stay exact),
    and ties go to the lexicographically smallest (min id, max id) pair.
    """
    d = _validate(d)
    n = d.shape[0]
    sums = d.copy()
    sizes = np.ones(n)
    ids = np.arange(n)
    active = np.ones(n, dtype=bool)
    merges = []
    for step in range(n - 1):
        slots = np.flatnonzero(active)
        avg = sums[np.ix_(slots, slots)] / np.outer(sizes[slots], sizes[slots])
        iu, ju = np.triu_indices(slots.size, 1)
        vals = avg[iu, ju]
        best = vals.min()
        cand = np.flatnonzero(vals == best)
        a_ids = ids[slots[iu[cand]]]
        b_ids = ids[slots[ju[cand]]]
        lo, hi = np.minimum(a_ids, b_ids), np.maximum(a_ids, b_ids)
        pick = cand[np.lexsort((hi, lo))[0]]
        si, sj = slots[iu[pick]], slots[ju[pick]]
        left, right = sorted((int(ids[si]), int(ids[sj])))
        new_id = n + step
        size = int(sizes[si] + sizes[sj])
        merges.append(Merge(left, right, float(best), new_id, size))
        # slot si becomes the merged cluster, sj retires
        sums[si, :] += sums[sj, :]
        sums[:, si] += sums[:, sj]
        sums[si, si] = 0.0
        sizes[si] = size
        ids[si] = new_id
        active[sj] = False
    return Dendrogram(n, tuple(merges))


def cut(dend: Dendrogram, k: int) -> Partition:
    """Undo the last k - 1 merges. Clusters are numbered by their smallest vertex."""
    n = dend.n
    if not 1 <= k <= n:
        raise ValueError(f"k must be in 1..{n}, got {k}")
    members = {i: [i] for i in range(n)}
    for m in dend.merges[: n - k]:
        members[m.new_id] = members.pop(m.left) + members.pop(m.right)
    groups = sorted((sorted(v) for v in members.values()), key=lambda c: c[0])
    labels = [0] * n
    for lab, grp in enumerate(groups):
        for v in grp:
            labels[v] = lab
    return Partition(tuple(labels))


def mislabel_count(p: Partition, reference: Partition) -> int:
    """Disagreements between two 2-way partitions under the better label matching."""
    if p.k != 2 or reference.k != 2:
        raise ValueError("mislabel count compares two-cluster partitions only")
    if len(p.labels) != len(reference.labels):
        raise ValueError("partitions cover different vertex sets")
    a = np.asarray(p.labels)
    b = np.asarray(reference.labels)
    same = int(np.sum(a == b))
    return min(a.size - same, same)


def cluster_graph(g: Graph, k: int) -> tuple[Dendrogram, Partition]:
    """Epidemic table -> average linkage -> k clusters."""
    from .epidemic import epidemic_matrix

    dend = agnes(epidemic_matrix(g))
    return dend, cut(dend, k)


def karate() -> tuple[Graph, Partition]:
    """Zachary's karate club and its two factions (vertex 1's faction is label 0)."""
    return karate_graph(), Partition(KARATE_FACTIONS)
