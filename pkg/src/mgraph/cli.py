"""Command-line harness: generate, analyze, verify, predict, oracle, stats.

Reports go to stdout as JSON with the run configuration and tool version
embedded; delimited series and figures go to files under --out-prefix.
Exit codes: 0 success, 1 internal failure, 2 usage or parameter error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import __version__, algos, genmodel, oracle, properties, theory
from . import graph as graphmod


class UsageError(ValueError):
    pass


def _json_default(obj):
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"not serializable: {type(obj)}")


def _emit(payload: dict) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True, default=_json_default))


def _run_config(args, fields: list[str]) -> dict:
    cfg = {"command": args.command, "version": __version__,
           "threads": args.threads}
    for f in fields:
        cfg[f] = getattr(args, f.replace("-", "_"))
    return cfg


def _load_giant(path) -> graphmod.Graph:
    g = graphmod.load_edge_list(path)
    if graphmod.is_connected(g):
        return g
    sub, _ = graphmod.giant_component(g)
    return sub


def _threads(args) -> int:
    if args.threads is not None:
        return args.threads
    env = os.environ.get("MGRAPH_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise UsageError(f"bad MGRAPH_THREADS value {env!r}") from None
    return 1


def cmd_generate(args) -> int:
    spec = genmodel.ModelSpec(kind=args.model, n=args.n, beta=args.beta,
                              weight_mode=args.weight_mode, seed=args.seed)
    g = genmodel.generate_graph(spec)
    graphmod.save_edge_list(g, args.out)
    degs = g.degrees()
    hist = np.bincount(degs)
    sidecar = {
        "spec": json.loads(spec.to_json()),
        "giant_n": g.n,
        "giant_m": g.m,
        "degree_histogram": {str(d): int(c)
                             for d, c in enumerate(hist.tolist()) if c},
        "version": __version__,
    }
    with open(str(args.out) + ".json", "w", encoding="utf-8") as fh:
        json.dump(sidecar, fh, indent=2, sort_keys=True)
        fh.write("\n")
    _emit({"config": _run_config(args, ["model", "n", "beta", "weight_mode",
                                        "seed", "out"]),
           "giant_n": g.n, "giant_m": g.m, "edge_list": str(args.out)})
    return 0


_ANALYZE_ALGOS = ("sampling", "two-sweep", "rw", "sumsweep", "ifub",
                  "exact-sumsweep", "bcm")


def _run_algo(g, name: str, args) -> list[dict]:
    if name == "sampling":
        k = args.k if args.k else max(1, int(round(g.n ** 0.3)))
        return [algos.sample_lower_bound(g, min(k, g.n), seed=args.seed).to_dict()]
    if name == "two-sweep":
        return [algos.two_sweep(g, seed=args.seed,
                                max_degree_start=args.max_degree_start).to_dict()]
    if name == "rw":
        return [algos.rw_approx(g, seed=args.seed).to_dict()]
    if name == "sumsweep":
        k = args.k if args.k else 10
        _, res = algos.sumsweep_heuristic(g, k, seed=args.seed)
        return [res.to_dict()]
    if name == "ifub":
        return [algos.ifub(g).to_dict()]
    if name == "exact-sumsweep":
        d, r = algos.exact_sumsweep(g, initial_k=args.initial_k,
                                    hub_period=args.hub_period, seed=args.seed)
        return [d.to_dict(), r.to_dict()]
    if name == "bcm":
        import time
        t0 = time.perf_counter()
        calls0 = graphmod.bfs_call_count()
        top = algos.bcm_topk(g, args.topk)
        return [{
            "algo": "bcm_topk",
            "value": top[0][1],
            "witnesses": [v for v, _ in top],
            "top": [{"vertex": v, "farness": f} for v, f in top],
            "bfs_count": graphmod.bfs_call_count() - calls0,
            "wall_time_ms": (time.perf_counter() - t0) * 1e3,
            "params": {"k": args.topk},
            "seed": None,
        }]
    raise UsageError(f"unknown algorithm {name!r}")


def cmd_analyze(args) -> int:
    g = _load_giant(args.input)
    if args.algo == "all":
        results = []
        for name in _ANALYZE_ALGOS:
            results.extend(_run_algo(g, name, args))
    elif args.algo in _ANALYZE_ALGOS:
        results = _run_algo(g, args.algo, args)
    else:
        raise UsageError(f"unknown algorithm {args.algo!r}")
    payload = {
        "config": _run_config(args, ["input", "algo", "seed", "k", "topk",
                                     "initial_k", "hub_period"]),
        "giant_n": g.n, "giant_m": g.m,
        "results": results,
    }
    if args.out_prefix:
        import csv
        path = f"{args.out_prefix}_comparison.csv"
        with open(path, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh)
            w.writerow(["algo", "value", "bfs_count", "wall_time_ms"])
            for r in results:
                w.writerow([r["algo"], r["value"], r["bfs_count"],
                            round(r["wall_time_ms"], 3)])
        payload["comparison_csv"] = path
        if len(results) > 1 and not args.no_figures:
            from .plotting import save_algo_comparison
            payload["figure"] = save_algo_comparison(
                results, f"{args.out_prefix}_comparison.png")
    _emit(payload)
    return 0


def cmd_verify(args) -> int:
    g = _load_giant(args.input)
    pid = args.property
    if pid == 1:
        rep = properties.verify_dev(g, x=args.x, eps=args.eps,
                                    tail_sample=args.tail_sample,
                                    seed=args.seed, threads=_threads(args))
    elif pid == 2:
        rep = properties.verify_touch(g, x=args.x, y=args.y,
                                      pair_sample=args.pairs, seed=args.seed)
    elif pid == 3:
        rep = properties.verify_untouch(g, s=args.source,
                                        t_sample=args.targets,
                                        z_resolution=args.z_resolution,
                                        seed=args.seed)
    elif pid == 4:
        if args.beta is None:
            raise UsageError("--beta is required for property 4")
        rep = properties.verify_degree(g, beta=args.beta)
    else:
        raise UsageError(f"property id must be 1..4, got {pid}")
    payload = rep.to_dict()
    payload["config"] = _run_config(
        args, ["input", "property", "x", "y", "eps", "pairs", "targets",
               "z_resolution", "tail_sample", "beta", "seed"])
    if args.out_prefix:
        payload["csv_files"] = rep.write_csv(args.out_prefix)
        if not args.no_figures:
            from .plotting import save_property_figure
            payload["figure"] = save_property_figure(
                rep, f"{args.out_prefix}_p{pid}.png")
    _emit(payload)
    return 0


def cmd_predict(args) -> int:
    pred = theory.predict(args.beta, args.n)
    payload = pred.to_dict()
    payload["config"] = _run_config(args, ["beta", "n"])
    _emit(payload)
    return 0


def cmd_oracle(args) -> int:
    if args.action == "build":
        if not args.input or not args.labels:
            raise UsageError("oracle build needs --input and --labels")
        g = _load_giant(args.input)
        labels = oracle.build_labels(g)
        oracle.save_labels(labels, args.labels)
        payload = oracle.label_stats(labels)
        payload["config"] = _run_config(args, ["input", "labels"])
        _emit(payload)
        return 0
    if not args.labels or not os.path.exists(args.labels):
        raise UsageError(f"label file not found: {args.labels}")
    labels = oracle.load_labels(args.labels)
    if args.action == "stats":
        payload = oracle.label_stats(labels)
        payload["config"] = _run_config(args, ["labels"])
        _emit(payload)
        return 0
    if args.action == "query":
        if args.s is None or args.t is None:
            raise UsageError("oracle query needs --s and --t")
        if not (0 <= args.s < labels.n and 0 <= args.t < labels.n):
            raise UsageError("query vertex out of range")
        d = oracle.query(labels, args.s, args.t)
        payload = {"s": args.s, "t": args.t,
                   "distance": None if d == graphmod.UNREACHED else d,
                   "config": _run_config(args, ["labels", "s", "t"])}
        _emit(payload)
        return 0
    raise UsageError(f"unknown oracle action {args.action!r}")


def cmd_stats(args) -> int:
    g = graphmod.load_edge_list(args.input)
    degs = g.degrees()
    labels = graphmod.connected_components(g)
    sizes = np.bincount(labels)
    payload = {
        "config": _run_config(args, ["input"]),
        "n": g.n, "m": g.m,
        "min_degree": int(degs.min()), "max_degree": int(degs.max()),
        "avg_degree": float(degs.mean()),
        "components": int(sizes.size),
        "giant_n": int(sizes.max()),
    }
    _emit(payload)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="mgraph",
        description="Metric-property workbench for power-law graphs.")
    p.add_argument("--threads", type=int, default=None,
                   help="worker cap (falls back to MGRAPH_THREADS, then 1)")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="synthesize a seeded random graph")
    g.add_argument("--model", required=True, choices=genmodel.MODEL_KINDS)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--beta", type=float, required=True)
    g.add_argument("--weight-mode", default="deterministic-quantile",
                   choices=genmodel.WEIGHT_MODES)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", required=True)
    g.set_defaults(fn=cmd_generate)

    a = sub.add_parser("analyze", help="run diameter/radius/centrality algorithms")
    a.add_argument("--input", required=True)
    a.add_argument("--algo", required=True)
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("--k", type=int, default=None)
    a.add_argument("--topk", type=int, default=10)
    a.add_argument("--initial-k", type=int, default=10)
    a.add_argument("--hub-period", type=int, default=5)
    a.add_argument("--max-degree-start", action="store_true")
    a.add_argument("--out-prefix", default=None)
    a.add_argument("--no-figures", action="store_true")
    a.set_defaults(fn=cmd_analyze)

    v = sub.add_parser("verify", help="check one of the four growth properties")
    v.add_argument("--input", required=True)
    v.add_argument("--property", type=int, required=True)
    v.add_argument("--x", type=float, default=0.5)
    v.add_argument("--y", type=float, default=0.6)
    v.add_argument("--eps", type=float, default=0.2)
    v.add_argument("--pairs", type=int, default=10_000)
    v.add_argument("--targets", type=int, default=10_000)
    v.add_argument("--z-resolution", type=float, default=0.05)
    v.add_argument("--tail-sample", type=int, default=None)
    v.add_argument("--beta", type=float, default=None)
    v.add_argument("--source", type=int, default=None)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--out-prefix", default=None)
    v.add_argument("--no-figures", action="store_true")
    v.set_defaults(fn=cmd_verify)

    q = sub.add_parser("predict", help="closed-form growth predictions")
    q.add_argument("--beta", type=float, required=True)
    q.add_argument("--n", type=int, required=True)
    q.set_defaults(fn=cmd_predict)

    o = sub.add_parser("oracle", help="build/query/stat 2-hop distance labels")
    o.add_argument("action", choices=("build", "query", "stats"))
    o.add_argument("--input", default=None)
    o.add_argument("--labels", default=None)
    o.add_argument("--s", type=int, default=None)
    o.add_argument("--t", type=int, default=None)
    o.set_defaults(fn=cmd_oracle)

    s = sub.add_parser("stats", help="edge-list summary")
    s.add_argument("--input", required=True)
    s.set_defaults(fn=cmd_stats)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except algos.RWFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # noqa: BLE001 - top-level CLI guard
        import traceback
        traceback.print_exc()
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
