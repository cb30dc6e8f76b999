"""Command-line harness.

Subcommands:
  run    seeded ES experiment -> trace.csv, result.json, trace.svg
  exact  reference parameters and objective for a problem instance
  table  medians over seeds for all four problems (text + CSV)
  bench  per-iteration timing of the kernel loop, numba vs pure Python
"""

import argparse
import json
import math
import statistics
import sys
import time
from pathlib import Path

import numpy as np

from . import exact
from .backend import numba_available
from .engine import ESConfig, run
from .kernels import get_kernels
from .problems import PROBLEM_NAMES, make_problem
from .report import build_run_result, render_svg_plot, trace_rows, write_result_json, write_trace_csv

DEFAULT_SEGMENTS = {"brachistochrone": 20, "ramm": 20, "newton": 20, "thermal": 31}
DEFAULT_SIGMA = {"brachistochrone": 0.01, "ramm": 0.001, "newton": 0.01, "thermal": 0.01}


def _build_problem(name, segments=None):
    kwargs = {}
    if segments is not None:
        kwargs["n_segments"] = segments
    return make_problem(name, **kwargs)


def _resolved(args):
    segments = args.segments if args.segments is not None else DEFAULT_SEGMENTS[args.problem]
    sigma = args.sigma if args.sigma is not None else DEFAULT_SIGMA[args.problem]
    return segments, sigma


def cmd_run(args) -> int:
    segments, sigma = _resolved(args)
    problem = _build_problem(args.problem, segments)
    config = ESConfig(
        sigma=sigma,
        lambda_offspring=args.lambda_offspring,
        iterations=args.iters,
        seed=args.seed,
    )
    out_dir = Path(args.out)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        probe = out_dir / ".write_probe"
        probe.write_text("")
        probe.unlink()
    except OSError as exc:
        print(f"error: cannot write to {out_dir}: {exc}", file=sys.stderr)
        return 1
    t0 = time.perf_counter()
    output = run(problem, config)
    wall = time.perf_counter() - t0
    result = build_run_result(problem, config, output, wall)
    write_trace_csv(output.trace, problem.reference_objective, out_dir / "trace.csv")
    write_result_json(result, out_dir / "result.json")
    pts = [(r[3], float(r[4])) for r in trace_rows(output.trace, problem.reference_objective) if r[4] != ""]
    (out_dir / "trace.svg").write_text(render_svg_plot(pts), encoding="utf-8")
    print(json.dumps(result.to_dict(), indent=2))
    return 0


def cmd_exact(args) -> int:
    if args.problem == "brachistochrone":
        sol = exact.solve_cycloid((args.ax, args.ay), (args.bx, args.by), args.g)
        payload = {
            "problem": "brachistochrone",
            "radius": sol.radius,
            "theta_end": sol.theta_end,
            "time": sol.time,
        }
    elif args.problem == "ramm":
        ref = exact.ramm_reference(args.b)
        payload = {
            "problem": "ramm",
            "b": args.b,
            "T0": ref.T0,
            "TP": ref.TP,
            "TPbr": ref.TPbr,
            "case_id": ref.case_id,
        }
        if args.b > math.pi / 2.0:
            _, t_br = exact.ramm_conjectured_curve(args.b, args.g)
            payload["T_br"] = t_br
    elif args.problem == "newton":
        profile = exact.solve_newton_profile(args.r, args.height)
        payload = {
            "problem": "newton",
            "lambda": profile.lambda_n,
            "u_max": profile.u_max,
            "resistance": exact.newton_exact_resistance(profile),
        }
    else:
        ref = exact.thermal_reference(args.body_height)
        payload = {
            "problem": "thermal",
            "h": ref.h,
            "u_star": ref.u_star,
            "u_minus0": ref.u_minus0,
            "case_id": ref.case_id,
            "resistance": ref.resistance,
        }
    print(json.dumps(payload, indent=2))
    return 0


def cmd_table(args) -> int:
    seeds = [int(s) for s in args.seeds.split(",") if s.strip()]
    if not seeds:
        print("error: empty seed list", file=sys.stderr)
        return 2
    out_dir = Path(args.out)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        print(f"error: cannot create {out_dir}: {exc}", file=sys.stderr)
        return 1
    rows = []
    for name in PROBLEM_NAMES:
        problem = _build_problem(name, DEFAULT_SEGMENTS[name])
        results = []
        for seed in sorted(seeds):
            config = ESConfig(
                sigma=DEFAULT_SIGMA[name],
                lambda_offspring=args.lambda_offspring,
                iterations=args.iters,
                seed=seed,
            )
            t0 = time.perf_counter()
            output = run(problem, config)
            wall = time.perf_counter() - t0
            results.append(build_run_result(problem, config, output, wall))
        rows.append(
            {
                "problem": name,
                "reference_objective": problem.reference_objective,
                "interpolant_objective": problem.interpolant_objective,
                "median_best_objective": statistics.median(r.best_objective for r in results),
                "median_relative_error": statistics.median(r.relative_error for r in results),
                "median_max_abs_deviation": statistics.median(r.max_abs_deviation for r in results),
            }
        )
    header = [
        "problem",
        "reference_objective",
        "interpolant_objective",
        "median_best_objective",
        "median_relative_error",
        "median_max_abs_deviation",
    ]
    csv_lines = [",".join(header)]
    for row in rows:
        csv_lines.append(",".join(repr(row[h]) if h != "problem" else row[h] for h in header))
    (out_dir / "table.csv").write_text("\n".join(csv_lines) + "\n", encoding="utf-8")
    widths = [16, 20, 22, 22, 22, 25]
    text_lines = ["".join(h.ljust(w) for h, w in zip(header, widths))]
    for row in rows:
        text_lines.append(
            "".join(
                (row[h] if h == "problem" else f"{row[h]:.6f}").ljust(w)
                for h, w in zip(header, widths)
            )
        )
    table_text = "\n".join(text_lines)
    (out_dir / "table.txt").write_text(table_text + "\n", encoding="utf-8")
    print(table_text)
    return 0


def cmd_bench(args) -> int:
    problem = _build_problem(args.problem, DEFAULT_SEGMENTS[args.problem])
    sigma = DEFAULT_SIGMA[args.problem]
    report = {"problem": args.problem}
    variants = []
    if numba_available():
        variants.append(("numba", True, args.iters))
    else:
        report["note"] = "numba unavailable; benchmarking fallback only"
    variants.append(("python", False, args.iters_python))
    for label, use_numba, iters in variants:
        k = get_kernels(use_numba)
        loop_args = (
            problem.kernel_id,
            problem.chord,
            problem.mask,
            problem.params,
            problem.upper,
            sigma,
            args.lambda_offspring,
            iters,
            np.uint64(args.seed),
        )
        k.run_loop(*loop_args)  # warm-up / compile
        t0 = time.perf_counter()
        k.run_loop(*loop_args)
        dt = time.perf_counter() - t0
        report[label] = {
            "iterations": iters,
            "seconds": dt,
            "iterations_per_second": iters / dt,
        }
    if "numba" in report and "python" in report:
        report["speedup"] = (
            report["numba"]["iterations_per_second"] / report["python"]["iterations_per_second"]
        )
    print(json.dumps(report, indent=2))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="varmin", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a seeded ES experiment")
    p_run.add_argument("--problem", choices=PROBLEM_NAMES, required=True)
    p_run.add_argument("--segments", type=int, default=None)
    p_run.add_argument("--sigma", type=float, default=None)
    p_run.add_argument("--lambda", dest="lambda_offspring", type=int, default=10)
    p_run.add_argument("--iters", type=int, default=100_000)
    p_run.add_argument("--seed", type=int, default=1)
    p_run.add_argument("--out", default="runs/out")
    p_run.set_defaults(func=cmd_run)

    p_exact = sub.add_parser("exact", help="print exact reference values")
    p_exact.add_argument("--problem", choices=PROBLEM_NAMES, required=True)
    p_exact.add_argument("--ax", type=float, default=0.0)
    p_exact.add_argument("--ay", type=float, default=10.0)
    p_exact.add_argument("--bx", type=float, default=10.0)
    p_exact.add_argument("--by", type=float, default=0.0)
    p_exact.add_argument("--g", type=float, default=9.8)
    p_exact.add_argument("--b", type=float, default=2.0)
    p_exact.add_argument("--r", type=float, default=1.0)
    p_exact.add_argument("--height", type=float, default=2.0)
    p_exact.add_argument("--body-height", dest="body_height", type=float, default=2.0)
    p_exact.set_defaults(func=cmd_exact)

    p_table = sub.add_parser("table", help="median results over seeds, all problems")
    p_table.add_argument("--seeds", default="1,2,3,4,5")
    p_table.add_argument("--iters", type=int, default=100_000)
    p_table.add_argument("--lambda", dest="lambda_offspring", type=int, default=10)
    p_table.add_argument("--out", default="runs/table")
    p_table.set_defaults(func=cmd_table)

    p_bench = sub.add_parser("bench", help="compare numba and pure-Python backends")
    p_bench.add_argument("--problem", choices=PROBLEM_NAMES, default="brachistochrone")
    p_bench.add_argument("--iters", type=int, default=100_000)
    p_bench.add_argument("--iters-python", type=int, default=1_000)
    p_bench.add_argument("--lambda", dest="lambda_offspring", type=int, default=10)
    p_bench.add_argument("--seed", type=int, default=1)
    p_bench.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
