"""Pure numpy implementation of the hot kernels.

Mirrors ``_core.pyx`` function for function. Both must produce identical
output for identical input; the random walk in particular draws from the
same counter-based stream, so estimates match bit for bit.
"""
from collections import deque

import numpy as np

GAMMA = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_S30 = np.uint64(30)
_S27 = np.uint64(27)
_S31 = np.uint64(31)
_S11 = np.uint64(11)
_TWO_M53 = 2.0 ** -53


def _mix64(z):
    z = np.asarray(z, dtype=np.uint64)
    z = (z ^ (z >> _S30)) * _M1
    z = (z ^ (z >> _S27)) * _M2
    return z ^ (z >> _S31)


def stream_keys(seed, trials):
    """Per-trial SplitMix64 starting states for ``trials`` (uint64 array)."""
    with np.errstate(over="ignore"):
        base = _mix64(np.uint64(seed))
        t = np.asarray(trials, dtype=np.uint64) + np.uint64(1)
        return _mix64(base + t * GAMMA)


def uniforms(keys, step):
    """The ``step``-th uniform in [0, 1) of each stream."""
    with np.errstate(over="ignore"):
        z = _mix64(keys + np.uint64(step + 1) * GAMMA)
    return (z >> _S11).astype(np.float64) * _TWO_M53


def all_pairs_bfs(indptr, indices, n):
    dist = np.full((n, n), -1, dtype=np.int64)
    for s in range(n):
        row = dist[s]
        row[s] = 0
        queue = deque([s])
        while queue:
            x = queue.popleft()
            dx = row[x] + 1
            for y in indices[indptr[x]:indptr[x + 1]]:
                if row[y] < 0:
                    row[y] = dx
                    queue.append(y)
    return dist


def ball_volume_profile(dist, eu, ev, max_radius):
    """vol[x, r] = number of edges with both ends within distance r of x."""
    n = dist.shape[0]
    width = max_radius + 1
    reach = np.maximum(dist[:, eu], dist[:, ev])
    offsets = (np.arange(n, dtype=np.int64) * width)[:, None]
    counts = np.bincount((reach + offsets).ravel(), minlength=n * width)
    return np.cumsum(counts.reshape(n, width), axis=1)


def walk(indptr, indices, cum, start, stop_mask, count_vertex, seed,
         trial_start, n_trials, max_steps):
    """Run ``n_trials`` walks from ``start`` until they step onto ``stop_mask``.

    Returns ``(ends, visits)``: the stopping vertex of each trial (-1 when
    ``max_steps`` ran out) and the number of times ``count_vertex`` was
    occupied before stopping, time 0 included.
    """
    keys = stream_keys(seed, np.arange(trial_start, trial_start + n_trials))
    ends = np.full(n_trials, -1, dtype=np.int64)
    visits = np.zeros(n_trials, dtype=np.int64)
    if start == count_vertex:
        visits += 1
    live = np.arange(n_trials)
    pos = np.full(n_trials, start, dtype=np.int64)
    for step in range(max_steps):
        if live.size == 0:
            break
        x = pos
        u = uniforms(keys[live], step)
        lo = indptr[x]
        hi = indptr[x + 1] - 1
        target = u * cum[hi]
        while True:
            open_ = lo < hi
            if not open_.any():
                break
            mid = (lo + hi) // 2
            go_left = target < cum[mid]
            hi = np.where(open_ & go_left, mid, hi)
            lo = np.where(open_ & ~go_left, mid + 1, lo)
        pos = indices[lo]
        stopped = stop_mask[pos].astype(bool)
        visits[live[(pos == count_vertex) & ~stopped]] += 1
        ends[live[stopped]] = pos[stopped]
        live = live[~stopped]
        pos = pos[~stopped]
    return ends, visits
