"""Time the compiled and numpy kernel backends on the same inputs.

    python benchmarks/bench_kernels.py [--trials 200000] [--repeat 3]

Prints one row per kernel with the best-of-N wall time for each backend,
the speedup, and whether the outputs matched exactly.
"""
import argparse
import time

import numpy as np

from epidemetric import kernels
from epidemetric.generators import karate_graph, path_graph, random_connected_graph
from epidemetric.randomwalk import _cumulative


def best_of(fn, repeat):
    times, out = [], None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def same(x, y):
    if isinstance(x, tuple):
        return all(np.array_equal(a, b) for a, b in zip(x, y))
    return np.array_equal(x, y)


def cases(trials):
    big = random_connected_graph(300, 0.03, np.random.default_rng(1))
    for name, g in (("karate", karate_graph()), ("gnp300", big)):
        indptr, nbr, _ = g.csr
        yield f"bfs {name}", lambda m, g=g, i=indptr, n=nbr: m.all_pairs_bfs(i, n, g.n)
        dist = g.distances
        u, v = g.endpoints
        diam = int(dist.max())
        yield f"profile {name}", lambda m, d=dist, u=u, v=v, r=diam: m.ball_volume_profile(d, u, v, r)
    for name, g, a, b in (("P6", path_graph(6), 0, 5), ("karate", karate_graph(), 0, 33)):
        indptr, nbr, _ = g.csr
        cum = _cumulative(g)
        mask = np.zeros(g.n, dtype=np.uint8)
        mask[[b]] = 1
        steps = 100 * g.n * g.n
        yield (f"walk {name} x{trials}",
               lambda m, i=indptr, n=nbr, c=cum, s=mask, a=a, k=steps:
               m.walk(i, n, c, a, s, a, np.uint64(7), 0, trials, k))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=200_000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    py = kernels.get_backend("python")
    try:
        cy = kernels.get_backend("cython")
    except ImportError:
        raise SystemExit("compiled extension not built; run `pip install -e . --no-build-isolation`")
    print(f"{'kernel':<22}{'cython s':>11}{'python s':>11}{'speedup':>9}  match")
    for label, fn in cases(args.trials):
        tc, oc = best_of(lambda: fn(cy), args.repeat)
        tp, op = best_of(lambda: fn(py), args.repeat)
        print(f"{label:<22}{tc:>11.4f}{tp:>11.4f}{tp / tc:>8.1f}x  {same(oc, op)}")


if __name__ == "__main__":
    main()
