# cython: language_level=3
"""Compiled hot kernels. See ``_core_py`` for the reference semantics."""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, uint64_t, uint8_t

cnp.import_array()

cdef uint64_t GAMMA = 0x9E3779B97F4A7C15ULL


cdef inline uint64_t mix64(uint64_t z) noexcept nogil:
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL
    return z ^ (z >> 31)


def stream_keys(uint64_t seed, trials):
    cdef int64_t[:] t = np.ascontiguousarray(trials, dtype=np.int64)
    out = np.empty(t.shape[0], dtype=np.uint64)
    cdef uint64_t[:] o = out
    cdef uint64_t base = mix64(seed)
    cdef Py_ssize_t i
    for i in range(t.shape[0]):
        o[i] = mix64(base + (<uint64_t>t[i] + 1) * GAMMA)
    return out


def uniforms(keys, int64_t step):
    cdef uint64_t[:] k = np.ascontiguousarray(keys, dtype=np.uint64)
    out = np.empty(k.shape[0], dtype=np.float64)
    cdef double[:] o = out
    cdef Py_ssize_t i
    for i in range(k.shape[0]):
        o[i] = <double>(mix64(k[i] + (<uint64_t>step + 1) * GAMMA) >> 11) * (1.0 / 9007199254740992.0)
    return out


def all_pairs_bfs(const int64_t[:] indptr, const int64_t[:] indices, Py_ssize_t n):
    dist_arr = np.full((n, n), -1, dtype=np.int64)
    cdef int64_t[:, :] dist = dist_arr
    queue_arr = np.empty(n, dtype=np.int64)
    cdef int64_t[:] queue = queue_arr
    cdef Py_ssize_t s, head, tail, k
    cdef int64_t x, y, dx
    with nogil:
        for s in range(n):
            dist[s, s] = 0
            queue[0] = s
            head = 0
            tail = 1
            while head < tail:
                x = queue[head]
                head += 1
                dx = dist[s, x] + 1
                for k in range(indptr[x], indptr[x + 1]):
                    y = indices[k]
                    if dist[s, y] < 0:
                        dist[s, y] = dx
                        queue[tail] = y
                        tail += 1
    return dist_arr


def ball_volume_profile(const int64_t[:, :] dist, const int64_t[:] eu,
                        const int64_t[:] ev, int64_t max_radius):
    cdef Py_ssize_t n = dist.shape[0]
    cdef Py_ssize_t m = eu.shape[0]
    cdef Py_ssize_t width = max_radius + 1
    vol_arr = np.zeros((n, width), dtype=np.int64)
    cdef int64_t[:, :] vol = vol_arr
    cdef Py_ssize_t x, e, r
    cdef int64_t du, dv
    with nogil:
        for x in range(n):
            for e in range(m):
                du = dist[x, eu[e]]
                dv = dist[x, ev[e]]
                vol[x, du if du > dv else dv] += 1
            for r in range(1, width):
                vol[x, r] += vol[x, r - 1]
    return vol_arr


def walk(const int64_t[:] indptr, const int64_t[:] indices, const double[:] cum,
         int64_t start, const uint8_t[:] stop_mask, int64_t count_vertex,
         uint64_t seed, int64_t trial_start, Py_ssize_t n_trials, int64_t max_steps):
    ends_arr = np.full(n_trials, -1, dtype=np.int64)
    visits_arr = np.zeros(n_trials, dtype=np.int64)
    cdef int64_t[:] ends = ends_arr
    cdef int64_t[:] visits = visits_arr
    cdef uint64_t base = mix64(seed)
    cdef uint64_t key
    cdef Py_ssize_t t
    cdef int64_t step, x, lo, hi, mid, v
    cdef double u, target
    with nogil:
        for t in range(n_trials):
            key = mix64(base + (<uint64_t>(trial_start + t) + 1) * GAMMA)
            x = start
            v = 1 if start == count_vertex else 0
            for step in range(max_steps):
                u = <double>(mix64(key + (<uint64_t>step + 1) * GAMMA) >> 11) * (1.0 / 9007199254740992.0)
                lo = indptr[x]
                hi = indptr[x + 1] - 1
                target = u * cum[hi]
                while lo < hi:
                    mid = (lo + hi) // 2
                    if target < cum[mid]:
                        hi = mid
                    else:
                        lo = mid + 1
                x = indices[lo]
                if stop_mask[x]:
                    ends[t] = x
                    break
                if x == count_vertex:
                    v += 1
            visits[t] = v
    return ends_arr, visits_arr
