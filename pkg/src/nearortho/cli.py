"""Command-line entry point.

Subcommands: construct, verify, spectral, covers, count, sweep.
Exit codes: 0 success / verified pass, 1 verified fail, 2 inconclusive
(budget exceeded), 3 usage error.

All randomness flows from --seed; no ambient entropy.  A construct run writes
run.json plus a manifest (config, version, content hash) into a directory
named by the run's content hash, so re-running a manifest reproduces
byte-identical run.json (timestamps live only in the manifest).
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import os
import sys
import time
from pathlib import Path

from nearortho import __version__
from nearortho.analysis import count_Npt, ramsey_bound, ratio_report, witness_graph
from nearortho.construction import (MODE_BIPARTITE, MODE_CLIQUE, ConstructionParams,
                                    ScheduleError, build, schedule_f2, schedule_fp,
                                    union_bound)
from nearortho.covers import cover_pair_for, f2_cover_of, g_inner_identity_check
from nearortho.ff import FpVector, vector
from nearortho.verify import InconclusiveError, bipartite_check, is_k_nearly_orthogonal
from nearortho import spectral as spectral_mod

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INCONCLUSIVE = 2
EXIT_USAGE = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # map argparse's exit 2 onto the usage code
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _load_config(path: str) -> dict:
    """KEY=VALUE lines; '#' starts a comment.  Flags win over config values."""
    out = {}
    for line in Path(path).read_text().splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"bad config line: {line!r}")
        key, value = line.split("=", 1)
        out[key.strip()] = value.strip()
    return out


def _apply_config(args: argparse.Namespace, keys: dict[str, type]) -> None:
    if not getattr(args, "config", None):
        return
    cfg = _load_config(args.config)
    for key, typ in keys.items():
        if getattr(args, key, None) is None and key in cfg:
            setattr(args, key, typ(cfg[key]))


def _read_vector_set(path: str) -> list[FpVector]:
    obj = json.loads(Path(path).read_text())
    if isinstance(obj, dict) and "result" in obj:  # a construct run.json
        p = obj["params"]["p"]
        return [vector(p, e) for e in obj["result"]]
    p = obj["p"]
    return [vector(p, e) for e in obj["vectors"]]


def _write_run(run, out_dir: str, config: dict) -> Path:
    payload = run.to_json_str()
    digest = hashlib.sha256(payload.encode()).hexdigest()[:16]
    run_dir = Path(out_dir) / digest
    run_dir.mkdir(parents=True, exist_ok=True)
    (run_dir / "run.json").write_text(payload)
    manifest = {
        "config": config,
        "version": __version__,
        "content_hash": digest,
        "timestamp": time.time(),
    }
    (run_dir / "manifest.json").write_text(json.dumps(manifest, sort_keys=True, indent=2))
    return run_dir


def _cmd_construct(args) -> int:
    _apply_config(args, {"p": int, "t": int, "m": int, "n": int, "k": int,
                         "d": int, "seed": int, "max_retries": int, "mode": str})
    try:
        if args.schedule:
            if args.k is None or args.d is None:
                raise SystemExit(EXIT_USAGE)
            if args.schedule == "f2":
                t, m, n = schedule_f2(args.k, args.d)
                p = 2
            else:
                if args.p is None:
                    raise SystemExit(EXIT_USAGE)
                p = args.p
                t, m, n = schedule_fp(p, args.k, args.d)
        else:
            missing = [f for f in ("p", "t", "m", "n", "k") if getattr(args, f) is None]
            if missing:
                print(f"error: missing {missing} (or use --schedule)", file=sys.stderr)
                return EXIT_USAGE
            p, t, m, n = args.p, args.t, args.m, args.n
        params = ConstructionParams(p=p, t=t, m=m, n=n, k=args.k, d=args.d,
                                    mode=args.mode)
    except (ScheduleError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    run = build(params, args.seed, max_retries=args.max_retries)
    config = {"subcommand": "construct", "params": params.to_json(),
              "seed": args.seed, "max_retries": args.max_retries}
    run_dir = _write_run(run, args.out, config)
    print(json.dumps({
        "verdict": "PASS" if run.verdict.passed else "FAIL",
        "size": len(run.result),
        "retries_used": run.retries_used,
        "log2_union_bound": union_bound(params),
        "ramsey_cap": str(ramsey_bound(params.ambient_dim, params.k)),
        "run_dir": str(run_dir),
    }, indent=2))
    return EXIT_PASS if run.verdict.passed else EXIT_FAIL


def _cmd_verify(args) -> int:
    vectors = _read_vector_set(args.input)
    try:
        if args.mode == MODE_CLIQUE:
            verdict = is_k_nearly_orthogonal(vectors, args.k)
        else:
            verdict = bipartite_check(vectors, args.k, budget=args.budget)
    except InconclusiveError as exc:
        print(json.dumps({"verdict": "INCONCLUSIVE", "reason": str(exc)}, indent=2))
        return EXIT_INCONCLUSIVE
    print(json.dumps({"verdict": "PASS" if verdict.passed else "FAIL",
                      **verdict.to_json()}, indent=2))
    return EXIT_PASS if verdict.passed else EXIT_FAIL


def _cmd_spectral(args) -> int:
    g = spectral_mod.build_Gpt(args.p, args.t)
    report = spectral_mod.spectrum(g)
    out = {"p": args.p, "t": args.t, "order": g.order, "degree": g.d_reg,
           "loops": g.n_loops, **report.to_json()}
    if args.mixing_samples:
        import numpy as np

        rng = np.random.default_rng(args.seed)
        violations = 0
        for _ in range(args.mixing_samples):
            c1 = [int(i) for i in np.flatnonzero(rng.integers(0, 2, g.order))]
            c2 = [int(i) for i in np.flatnonzero(rng.integers(0, 2, g.order))]
            if not spectral_mod.mixing_check(g, c1, c2, lam=report.lambda_max_abs_rest)["ok"]:
                violations += 1
        out["mixing_samples"] = args.mixing_samples
        out["mixing_violations"] = violations
    if args.dimacs:
        edges = []
        n = g.order
        for i in range(n):
            for j in range(i + 1, n):
                if g.adjacency[i, j]:
                    edges.append((i, j))
        lines = [f"p edge {n} {len(edges)}"]
        lines += [f"e {i + 1} {j + 1}" for i, j in edges]
        Path(args.dimacs).write_text("\n".join(lines) + "\n")
    print(json.dumps(out, indent=2))
    ok = report.passed and not out.get("mixing_violations", 0)
    return EXIT_PASS if ok else EXIT_FAIL


def _cmd_covers(args) -> int:
    if args.op == "gcheck":
        report = g_inner_identity_check(args.p, args.t)
        print(json.dumps(report, indent=2))
        return EXIT_PASS
    if args.op == "f2cover":
        vectors = _read_vector_set(args.input)
        basis = f2_cover_of(vectors)
        print(json.dumps(basis.to_json(), indent=2))
        return EXIT_PASS
    # pair
    a1 = _read_vector_set(args.input)
    a2 = _read_vector_set(args.input2)
    pair = cover_pair_for(a1, a2, args.p, args.t)
    print(json.dumps({
        "C1": sorted([list(v.entries) for v in pair.c1]),
        "C2": sorted([list(v.entries) for v in pair.c2]),
        "W1": pair.w1.to_json(),
        "W2": pair.w2.to_json(),
        "product": len(pair.c1) * len(pair.c2),
        "bound": args.p ** (args.t + 2),
    }, indent=2))
    return EXIT_PASS


def _cmd_count(args) -> int:
    report = count_Npt(args.p, args.t)
    print(json.dumps(report.to_json(), indent=2))
    return EXIT_PASS


def _sweep_point(point):
    p, t, m, n, k, mode, seed, max_retries = point
    params = ConstructionParams(p=p, t=t, m=m, n=n, k=k, mode=mode)
    run = build(params, seed, max_retries=max_retries)
    size = len(run.result)
    row = {"p": p, "t": t, "m": m, "n": n, "k": k, "d": params.ambient_dim,
           "size": size if run.verdict.passed else "",
           "retries": run.retries_used,
           "ratio": ""}
    if run.verdict.passed:
        w = witness_graph(run.result, k, mode)
        row["ratio"] = ratio_report(w)["ratio_float"]
    return row


def _parse_int_list(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x]


def _cmd_sweep(args) -> int:
    points = []
    idx = 0
    for p in _parse_int_list(args.p):
        for t in _parse_int_list(args.t):
            for m in _parse_int_list(args.m):
                for n in _parse_int_list(args.n):
                    for k in _parse_int_list(args.k):
                        # each grid point gets its own derived seed
                        points.append((p, t, m, n, k, args.mode,
                                       args.seed + idx, args.max_retries))
                        idx += 1
    if len(points) > args.max_points:
        print(f"error: grid of {len(points)} points exceeds --max-points "
              f"{args.max_points}", file=sys.stderr)
        return EXIT_USAGE
    workers = int(os.environ.get("NEARORTHO_WORKERS", "1"))
    if workers > 1 and points:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_sweep_point, points))
    else:
        rows = [_sweep_point(pt) for pt in points]
    fieldnames = ["p", "t", "m", "n", "k", "d", "size", "retries", "ratio"]
    out = sys.stdout if args.out == "-" else open(args.out, "w", newline="")
    try:
        writer = csv.DictWriter(out, fieldnames=fieldnames)
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_PASS


def build_parser() -> _Parser:
    parser = _Parser(prog="nearortho",
                     description="Nearly orthogonal sets over prime fields")
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="run the randomized construction")
    c.add_argument("--p", type=int)
    c.add_argument("--t", type=int)
    c.add_argument("--m", type=int)
    c.add_argument("--n", type=int)
    c.add_argument("--k", type=int)
    c.add_argument("--d", type=int)
    c.add_argument("--mode", choices=[MODE_CLIQUE, MODE_BIPARTITE], default=MODE_CLIQUE)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--max-retries", type=int, default=20)
    c.add_argument("--schedule", choices=["f2", "fp"])
    c.add_argument("--out", default="runs")
    c.add_argument("--config", help="KEY=VALUE file; flags win on conflict")
    c.set_defaults(func=_cmd_construct)

    v = sub.add_parser("verify", help="verify a vector set from JSON")
    v.add_argument("--input", required=True)
    v.add_argument("--k", type=int, required=True)
    v.add_argument("--mode", choices=[MODE_CLIQUE, MODE_BIPARTITE], default=MODE_CLIQUE)
    v.add_argument("--budget", type=int, default=10_000_000)
    v.set_defaults(func=_cmd_verify)

    s = sub.add_parser("spectral", help="G(p,t) spectrum and mixing checks")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--t", type=int, required=True)
    s.add_argument("--mixing-samples", type=int, default=0)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--dimacs", help="write the graph in DIMACS format here")
    s.set_defaults(func=_cmd_spectral)

    co = sub.add_parser("covers", help="cover constructions and identities")
    co.add_argument("--op", choices=["f2cover", "gcheck", "pair"], required=True)
    co.add_argument("--p", type=int)
    co.add_argument("--t", type=int)
    co.add_argument("--input")
    co.add_argument("--input2")
    co.set_defaults(func=_cmd_covers)

    ct = sub.add_parser("count", help="count pairwise-non-orthogonal sets")
    ct.add_argument("--p", type=int, required=True)
    ct.add_argument("--t", type=int, required=True)
    ct.set_defaults(func=_cmd_count)

    sw = sub.add_parser("sweep", help="grid of construction runs -> CSV")
    sw.add_argument("--p", required=True, help="comma-separated values")
    sw.add_argument("--t", required=True)
    sw.add_argument("--m", required=True)
    sw.add_argument("--n", required=True)
    sw.add_argument("--k", required=True)
    sw.add_argument("--mode", choices=[MODE_CLIQUE, MODE_BIPARTITE], default=MODE_CLIQUE)
    sw.add_argument("--seed", type=int, default=0)
    sw.add_argument("--max-retries", type=int, default=20)
    sw.add_argument("--max-points", type=int, default=200)
    sw.add_argument("--out", default="-")
    sw.set_defaults(func=_cmd_sweep)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
