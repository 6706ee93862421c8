"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
Vertex labels on the command line and in files are 1-based.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .clustering import cluster_graph, karate, mislabel_count
from .electrical import effective_resistance, resistance_matrix
from .epidemic import discrepancy_matrix, epidemic, epidemic_matrix
from .generators import DATASETS, dataset, random_corpus
from .graph import GraphError, read_graph
from .randomwalk import WalkAbortError, WalkConfig, escape_probability_mc, green_function_mc
from .tables import format_value, write_pair_matrix
from .variational import capacity, modulus, modulus_bruteforce
from . import verify as vf

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
Z_LIMIT = 4.0


class UsageError(Exception):
    pass


def _load(args):
    sources = [s for s in (args.source, args.input, args.dataset) if s]
    if len(sources) != 1:
        raise UsageError("give exactly one graph: a path, --input PATH or --dataset NAME")
    if args.dataset:
        name = args.dataset
    elif args.input:
        return read_graph(args.input), args.input
    else:
        name = args.source
        if os.path.exists(name):
            return read_graph(name), name
    try:
        return dataset(name), name
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None


def _vertex(g, label, flag):
    if not 1 <= label <= g.n:
        raise UsageError(f"{flag} must be a vertex label in 1..{g.n}, got {label}")
    return label - 1


def _outdir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _emit_tables(args, tables: dict) -> None:
    out = _outdir(args)
    if args.format == "json":
        payload = {name: np.asarray(t).tolist() for name, t in tables.items()}
        path = out / "metrics.json"
        path.write_text(json.dumps(payload, indent=1))
        print(path)
        return
    for name, t in tables.items():
        path = out / f"{name}.csv"
        write_pair_matrix(path, t, args.digits)
        print(path)


def cmd_metrics(args) -> int:
    g, _ = _load(args)
    r = resistance_matrix(g)
    _emit_tables(args, {
        "distances": g.distances,
        "epidemic": epidemic_matrix(g),
        "effres": r,
        "discrepancy": discrepancy_matrix(g, r),
    })
    return EXIT_OK


def _pair(args, g):
    if args.pair is None:
        return None
    a, b = (_vertex(g, x, "--pair") for x in args.pair)
    return a, b


def cmd_epidemic(args) -> int:
    g, _ = _load(args)
    pair = _pair(args, g)
    if pair is None:
        _emit_tables(args, {"epidemic": epidemic_matrix(g)})
        return EXIT_OK
    res = epidemic(g, *pair)
    print(json.dumps({
        "pair": [pair[0] + 1, pair[1] + 1], "distance": res.distance,
        "vol_a": res.vol_a, "vol_b": res.vol_b, "value": res.value,
        "union_volume": res.union_volume,
    }))
    return EXIT_OK


def cmd_effres(args) -> int:
    g, _ = _load(args)
    pair = _pair(args, g)
    if pair is None:
        _emit_tables(args, {"effres": resistance_matrix(g)})
        return EXIT_OK
    r = effective_resistance(g, *pair, method=args.method)
    print(format_value(r, args.digits))
    return EXIT_OK


def cmd_modulus(args) -> int:
    g, _ = _load(args)
    pair = _pair(args, g)
    if pair is None:
        r = resistance_matrix(g)
        with np.errstate(divide="ignore"):
            mod = np.where(np.eye(g.n, dtype=bool), 0.0, 1.0 / r)
        _emit_tables(args, {"modulus": mod})
        return EXIT_OK
    a, b = pair
    report = {
        "pair": [a + 1, b + 1],
        "modulus": modulus(g, a, b),
        "capacity": capacity(g, a, b),
        "conductance": 1.0 / effective_resistance(g, a, b),
    }
    if args.bruteforce:
        bf = modulus_bruteforce(g, a, b)
        report["bruteforce"] = {"value": bf.value, "lower": bf.lower, "paths": bf.n_paths}
    print(json.dumps(report, indent=1))
    return EXIT_OK


def cmd_cluster(args) -> int:
    g, name = _load(args)
    if not 1 <= args.k <= g.n:
        raise UsageError(f"--k must be in 1..{g.n}")
    dend, part = cluster_graph(g, args.k)
    out = _outdir(args)
    (out / "dendrogram.json").write_text(dend.to_json())
    (out / "dendrogram.newick").write_text(dend.to_newick(digits=args.digits) + "\n")
    (out / "partition.csv").write_text(part.to_csv())
    if name == "karate":
        _, ref = karate()
        if args.k == 2:
            count = mislabel_count(part, ref)
            differ = [p != q for p, q in zip(part.labels, ref.labels)]
            swapped = sum(differ) != count
            wrong = [v + 1 for v in range(g.n) if differ[v] != swapped]
            text = f"mislabels {count}\nvertices {' '.join(map(str, wrong))}\n"
        else:
            text = "mislabels n/a (reference split has 2 clusters)\n"
        (out / "mislabels.txt").write_text(text)
        print(text, end="")
    print(f"wrote {out}")
    return EXIT_OK


def cmd_simulate(args) -> int:
    g, _ = _load(args)
    if args.trials < 1:
        raise UsageError("--trials must be at least 1")
    a, b = _vertex(g, args.a, "--a"), _vertex(g, args.b, "--b")
    if a == b:
        raise UsageError("--a and --b must differ")
    cfg = WalkConfig(seed=args.seed, trials=args.trials, max_steps=args.max_steps)
    runs = []
    if args.quantity in ("escape", "both"):
        runs.append(("escape_probability", escape_probability_mc(g, a, b, cfg)))
    if args.quantity in ("green", "both"):
        runs.append(("green_function", green_function_mc(g, a, b, cfg)))
    ok = True
    for label, est in runs:
        d = args.digits
        print(f"{label} estimate={format_value(est.estimate, d)} stderr={format_value(est.stderr, d)} "
              f"exact={format_value(est.exact, d)} z={format_value(est.z, d)} "
              f"trials={est.trials} aborted={est.aborted}")
        ok &= abs(est.z) <= Z_LIMIT
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify(args) -> int:
    if args.random is not None:
        if args.source or args.input or args.dataset:
            raise UsageError("--random cannot be combined with an input graph")
        graphs = random_corpus(args.random, max_n=args.max_n, p=args.p, seed=args.seed,
                               weight_range=(0.5, 2.0) if args.weighted else None)
    else:
        graphs = [_load(args)[0]]
    suites = vf.run_all(graphs, rayleigh_seed=args.seed)
    passed = all(s.passed for s in suites)
    report = {"graphs": len(graphs), "passed": passed, "suites": [s.as_dict() for s in suites]}
    text = json.dumps(report, indent=1)
    print(text)
    if args.out:
        (_outdir(args) / "verify.json").write_text(text)
    for s in suites:
        if not s.passed:
            print(f"FAIL {s.name}: max violation {s.max_violation:.3g} > {s.tolerance:g} at {s.worst}",
                  file=sys.stderr)
    return EXIT_OK if passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("source", nargs="?", help=f"graph file or dataset ({', '.join(DATASETS)})")
    common.add_argument("--input", metavar="PATH", help="edge list (u v [w]) or .csv adjacency")
    common.add_argument("--dataset", metavar="NAME", help="built-in graph")
    common.add_argument("--out", default=".", metavar="DIR")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--digits", type=int, default=17)

    parser = argparse.ArgumentParser(prog="epidemetric", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("metrics", parents=[common], help="distance, epidemic, resistance and discrepancy tables")
    for name, helptext in (("epidemic", "epidemic quasimetric"), ("effres", "effective resistance"),
                           ("modulus", "modulus / capacity")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--pair", nargs=2, type=int, metavar=("A", "B"))
        if name == "effres":
            p.add_argument("--method", choices=("green", "grounded"), default="green")
        if name == "modulus":
            p.add_argument("--bruteforce", action="store_true", help="also solve the path QP")

    p = sub.add_parser("cluster", parents=[common], help="average-linkage clustering on epidemic values")
    p.add_argument("--k", type=int, default=2)

    p = sub.add_parser("simulate", parents=[common], help="Monte Carlo escape probability / Green's function")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-steps", type=int, default=None)
    p.add_argument("--quantity", choices=("escape", "green", "both"), default="both")

    p = sub.add_parser("verify", parents=[common], help="check identities and inequalities")
    p.add_argument("--random", type=int, metavar="COUNT", help="verify COUNT seeded random graphs")
    p.add_argument("--max-n", type=int, default=12)
    p.add_argument("--p", type=float, default=0.4)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--weighted", action="store_true", help="random weights in [0.5, 2]")
    p.set_defaults(out=None)
    return parser


COMMANDS = {
    "metrics": cmd_metrics,
    "epidemic": cmd_epidemic,
    "effres": cmd_effres,
    "modulus": cmd_modulus,
    "cluster": cmd_cluster,
    "simulate": cmd_simulate,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        parser.error(str(exc))
    except WalkAbortError as exc:
        print(f"epidemetric: error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (GraphError, OSError, ValueError) as exc:
        print(f"epidemetric: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
