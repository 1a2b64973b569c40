"""Command-line front end.

Subcommands:
  sweep          runtime sweep over function families and problem sizes
  ordering-test  paired comparison of a function against the ones count
  drift-report   conditional-drift tables (Monte-Carlo, exhaustive, or graph)
  verify         run a named verification suite
  bounds         print closed-form bound values
  graph-run      EA batches on a graph instance (spanning tree / shortest paths)

Exit status: 0 all checks passed, 1 a statistical check failed,
2 configuration or IO error.
"""

import argparse
import csv
import json
import math
import sys

import numpy as np

from .combinatorial.graphs import load_graph
from .combinatorial.mst import check_gap_drift, mst_batch, mst_bound
from .combinatorial.sssp import ratio_diagnostic_from_stats, sssp_batch, sssp_bound
from .combinatorial.euler import euler_bound, euler_bound_tight
from .drift.estimation import check_multiplicative_condition, estimate_conditional_drift
from .ea import RunConfig, run
from .experiments import ExperimentSpec, ordering_test, resolve_function, run_sweep
from .linear.bounds import bound_catalog, catalog_entries
from .linear.exact import exact_pointwise_drift, pointwise_drift_exhaustive_check
from .linear.mc_checks import level_drift_mc_check
from .linear.potentials import potential_by_name
from .seeding import derive_seed, make_rng
from .verify import run_suite

CSV_HEADER = ["function", "n", "rep", "seed", "T", "capped"]

PRESETS = {
    "quick": {"n_values": list(range(20, 201, 20)), "reps": 100},
    "paper": {"n_values": list(range(20, 1001, 20)), "reps": 1000},
}


def _write_csv(path, header, rows):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def _write_json(path, payload):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _cmd_sweep(args):
    if args.preset:
        preset = PRESETS[args.preset]
        n_values = preset["n_values"] if not args.n else args.n
        reps = preset["reps"] if args.reps is None else args.reps
    else:
        n_values = args.n or [100]
        reps = args.reps if args.reps is not None else 100
    spec = ExperimentSpec(
        functions=args.function or ["onemax", "binval", "random"],
        n_values=n_values,
        reps=reps,
        master_seed=args.seed,
        out_csv=args.out_csv,
        out_json=args.out_json,
    )
    rows, summary = run_sweep(spec)
    if spec.out_csv:
        _write_csv(spec.out_csv, CSV_HEADER, rows)
    if spec.out_json:
        _write_json(spec.out_json, summary)
    capped_cells = [c for c in summary["cells"] if c["capped"]]
    for cell in summary["cells"]:
        bounds = ", ".join(f"{k}={v:.1f}" for k, v in cell["bounds"].items())
        mean = "n/a" if cell["mean_T"] is None else f"{cell['mean_T']:.1f}"
        print(
            f"{cell['function']:>8} n={cell['n']:>5}: mean T = {mean:>10} "
            f"(median {cell['median_T']}, capped {cell['capped']}) vs {bounds}"
        )
    if capped_cells:
        print(f"warning: {len(capped_cells)} cells had capped runs", file=sys.stderr)
    return 0


def _cmd_ordering_test(args):
    res = ordering_test(args.n[0] if args.n else 100, args.reps or 1000,
                        args.other, master_seed=args.seed)
    print(f"baseline mean T = {res.mean_onemax:.2f}")
    print(f"{res.other} mean T = {res.mean_other:.2f}")
    print(f"relative gap = {res.relative_gap:.4f}")
    print(f"one-sided p (other > baseline) = {res.one_sided_p:.3e}")
    print(f"result: {'pass' if res.passed else 'FAIL'}")
    if args.out_json:
        _write_json(
            args.out_json,
            {
                "n": res.n,
                "reps": res.reps,
                "other": res.other,
                "mean_onemax": res.mean_onemax,
                "mean_other": res.mean_other,
                "relative_gap": res.relative_gap,
                "one_sided_p": res.one_sided_p,
                "passed": res.passed,
            },
        )
    return 0 if res.passed else 1


def _drift_rows_graph(args):
    if args.function == "mst":
        g = load_graph(args.graph_file, directed=False)
        summary, stats = mst_batch(g, args.reps or 100, args.seed, collect_stats=True)
        delta = 1.0 / (math.e * g.m * g.m)
        report = check_gap_drift(stats, delta, args.reps or 100)
        rows = [
            (f"{e.level:.2f}", e.sample_count, f"{e.mean_decrease:.6g}",
             f"{e.ci_halfwidth:.6g}", f"{e.bound:.6g}", int(e.violated))
            for e in report.entries
        ]
        header = ["level", "samples", "mean_decrease", "ci95", "bound", "violated"]
        print(report)
        return header, rows, report.passed
    g = load_graph(args.graph_file, directed=True)
    summary, stats = sssp_batch(g, args.source, args.reps or 100, args.seed, collect_stats=True)
    diag = ratio_diagnostic_from_stats(stats, g.n_vertices)
    rows = [
        (f"{e.level:.2f}", e.sample_count, f"{e.mean_ratio:.8g}",
         f"{e.ci_halfwidth:.6g}", f"{diag.reference_ratio:.8f}", int(not e.within_bound))
        for e in diag.entries
    ]
    header = ["level", "samples", "mean_ratio", "ci95", "reference", "above_reference"]
    print(diag)
    print("note: gap-ratio report is diagnostic; it does not gate the exit status")
    return header, rows, True


def _cmd_drift_report(args):
    if args.function in ("mst", "sssp"):
        if not args.graph_file:
            raise ValueError("graph drift reports need --graph-file")
        header, rows, passed = _drift_rows_graph(args)
    elif args.exhaustive:
        n = args.n[0] if args.n else 10
        f = resolve_function(args.function, n, make_rng(derive_seed(args.seed, 1)))
        g = potential_by_name(args.potential, n, f)
        floor_factor = 1.0 / (4.0 * math.e * n)
        rows = []
        passed = True
        for code in range(1, 1 << n):
            x = np.array([(code >> i) & 1 for i in range(n)], dtype=np.uint8)
            drift = exact_pointwise_drift(f, g, x)
            gx = g.value(x)
            floor = gx * floor_factor if g.kind == "ramp" else float("nan")
            ok = not (g.kind == "ramp" and drift < floor)
            passed = passed and ok
            rows.append(
                ("".join(str(b) for b in x), f"{gx:.6g}", f"{drift:.10g}",
                 f"{floor:.10g}", int(not ok))
            )
        header = ["point", "potential", "exact_drift", "floor", "violated"]
        report = pointwise_drift_exhaustive_check(f) if g.kind == "ramp" else None
        if report is not None:
            print(report)
    else:
        n = args.n[0] if args.n else 50
        f = resolve_function(args.function, n, make_rng(derive_seed(args.seed, 1)))
        if args.potential not in ("ones", None):
            raise ValueError("Monte-Carlo drift reports support the 'ones' potential")
        report = level_drift_mc_check(f, args.reps or 1000, args.seed)
        rows = [
            (e.level, e.sample_count, f"{e.mean_decrease:.6g}", f"{e.ci_halfwidth:.6g}",
             f"{e.bound:.6g}", int(e.violated))
            for e in report.entries
        ]
        header = ["level", "samples", "mean_decrease", "ci95", "bound", "violated"]
        print(report)
        passed = report.passed
    if args.out_csv:
        _write_csv(args.out_csv, header, rows)
    return 0 if passed else 1


def _cmd_verify(args):
    results = run_suite(args.suite, seed=args.seed)
    all_ok = True
    for res in results:
        print(res)
        all_ok = all_ok and res.passed
    return 0 if all_ok else 1


def _cmd_bounds(args):
    payload = {}
    if args.n:
        for n in args.n:
            for name, formula, asym in catalog_entries():
                value = bound_catalog(name, n)
                flag = " (asymptotic leading term)" if asym else ""
                print(f"{name}(n={n}) = {value:.4f}   [{formula}]{flag}")
                payload[f"{name}(n={n})"] = value
            if args.w_max:
                value = sssp_bound(n, args.w_max)
                print(f"sssp_bound(n={n}, w_max={args.w_max}) = {value:.4f}")
                payload[f"sssp_bound(n={n},w_max={args.w_max})"] = value
    if args.m:
        if args.w_max:
            value = mst_bound(args.m, args.w_max)
            print(f"mst_bound(m={args.m}, w_max={args.w_max}) = {value:.4f}")
            payload[f"mst_bound(m={args.m},w_max={args.w_max})"] = value
        if args.m >= 3:
            print(f"euler_bound(m={args.m}) = {euler_bound(args.m):.4f}")
            print(f"euler_bound_tight(m={args.m}) = {euler_bound_tight(args.m):.4f}")
            payload[f"euler_bound(m={args.m})"] = euler_bound(args.m)
            payload[f"euler_bound_tight(m={args.m})"] = euler_bound_tight(args.m)
    if not payload:
        raise ValueError("nothing to print: pass --n and/or --m (see --help)")
    if args.out_json:
        _write_json(args.out_json, payload)
    return 0


def _cmd_graph_run(args):
    reps = args.reps if args.reps is not None else 100
    rows = []
    if args.function == "mst":
        g = load_graph(args.graph_file, directed=False)
        summary, _ = mst_batch(g, reps, args.seed)
        bound = mst_bound(g.m, g.w_max)
        label = f"mst_bound(m={g.m}, w_max={g.w_max})"
    elif args.function == "sssp":
        g = load_graph(args.graph_file, directed=True)
        summary, _ = sssp_batch(g, args.source, reps, args.seed)
        bound = sssp_bound(g.n_vertices, g.w_max)
        label = f"sssp_bound(n={g.n_vertices}, w_max={g.w_max})"
    else:
        raise ValueError("graph-run supports --function mst or sssp")
    for rep, rec in enumerate(summary.records):
        rows.append(
            (args.function, g.n_vertices, rep, derive_seed(args.seed, rep), rec.T,
             int(rec.capped))
        )
    print(f"{args.function} on {args.graph_file}: n={g.n_vertices}, m={g.m}")
    print(f"mean T = {summary.mean_T:.1f} (sd {summary.sd_T:.1f}, capped {summary.capped_count})")
    ok = summary.valid and summary.mean_T <= bound
    print(f"mean T <= {label} = {bound:.1f}: {'pass' if ok else 'FAIL'}")
    if args.out_csv:
        _write_csv(args.out_csv, CSV_HEADER, rows)
    if args.out_json:
        _write_json(
            args.out_json,
            {
                "function": args.function,
                "graph_file": args.graph_file,
                "n": g.n_vertices,
                "m": g.m,
                "reps": reps,
                "mean_T": summary.mean_T,
                "sd_T": summary.sd_T,
                "capped": summary.capped_count,
                "bound_name": label,
                "bound_value": bound,
                "passed": ok,
            },
        )
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="driftlab", description="Drift measurement lab for the (1+1) EA"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, functions=False):
        p.add_argument("--seed", type=int, default=42, help="master seed (default 42)")
        p.add_argument("--n", type=int, action="append", help="problem size (repeatable)")
        p.add_argument("--reps", type=int, default=None, help="repetitions")
        p.add_argument("--out-csv", help="write per-run rows to this CSV file")
        p.add_argument("--out-json", help="write the summary to this JSON file")
        if functions:
            p.add_argument(
                "--function",
                action="append",
                help="onemax, binval, random, or a weights file (repeatable)",
            )

    p = sub.add_parser("sweep", help="runtime sweep; one CSV row per run")
    common(p, functions=True)
    p.add_argument("--preset", choices=sorted(PRESETS), help="quick or paper-scale sweep")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("ordering-test", help="paired comparison vs the ones count")
    common(p)
    p.add_argument("--other", default="binval", help="function to compare (default binval)")
    p.set_defaults(func=_cmd_ordering_test)

    p = sub.add_parser("drift-report", help="conditional drift tables and checks")
    common(p)
    p.add_argument("--function", default="binval",
                   help="onemax/binval/random/weights-file, or mst/sssp with --graph-file")
    p.add_argument("--potential", default="ones", help="ones, ramp, split, log-split, fitness")
    p.add_argument("--exhaustive", action="store_true",
                   help="exact enumeration table instead of Monte-Carlo (n <= 12)")
    p.add_argument("--graph-file", help="graph instance for mst/sssp drift")
    p.add_argument("--source", type=int, default=0, help="source vertex (sssp)")
    p.set_defaults(func=_cmd_drift_report)

    p = sub.add_parser("verify", help="run a named verification suite")
    p.add_argument("suite", help="suite name or 'all'")
    p.add_argument("--seed", type=int, default=42)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("bounds", help="print closed-form bound values")
    p.add_argument("--n", type=int, action="append", help="bit-string / vertex count")
    p.add_argument("--m", type=int, help="edge count (spanning tree / tour bounds)")
    p.add_argument("--w-max", type=int, help="maximum edge weight")
    p.add_argument("--out-json", help="write values to this JSON file")
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("graph-run", help="EA batch on a graph instance")
    common(p)
    p.add_argument("--function", required=True, choices=["mst", "sssp"])
    p.add_argument("--graph-file", required=True)
    p.add_argument("--source", type=int, default=0, help="source vertex (sssp)")
    p.set_defaults(func=_cmd_graph_run)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
