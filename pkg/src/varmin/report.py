"""Run records, trace serialization, and the SVG convergence plot.

Traces go to CSV (one row per recorded generation), results to JSON, and
the log-log convergence figure to a self-contained hand-emitted SVG so no
plotting stack is needed.
"""

import json
import math
from dataclasses import dataclass

from .engine import RunTrace

TRACE_HEADER = "iteration,best_objective,gap,log10_iteration,log10_gap"


@dataclass(frozen=True)
class RunResult:
    problem: str
    segments: int
    sigma: float
    lambda_offspring: int
    iterations: int
    seed: int
    best_objective: float
    reference_objective: float
    interpolant_objective: float
    relative_error: float
    max_abs_deviation: float
    wall_time: float

    def to_dict(self):
        return {
            "problem": self.problem,
            "segments": self.segments,
            "sigma": self.sigma,
            "lambda": self.lambda_offspring,
            "iterations": self.iterations,
            "seed": self.seed,
            "best_objective": self.best_objective,
            "reference_objective": self.reference_objective,
            "interpolant_objective": self.interpolant_objective,
            "relative_error": self.relative_error,
            "max_abs_deviation": self.max_abs_deviation,
            "wall_time": self.wall_time,
        }

    @classmethod
    def from_dict(cls, d):
        d = dict(d)
        d["lambda_offspring"] = d.pop("lambda")
        return cls(**d)


def build_run_result(problem, config, output, wall_time) -> RunResult:
    best = output.best_objective
    ref = problem.reference_objective
    return RunResult(
        problem=problem.name,
        segments=problem.n_segments,
        sigma=config.sigma,
        lambda_offspring=config.lambda_offspring,
        iterations=config.iterations,
        seed=config.seed,
        best_objective=best,
        reference_objective=ref,
        interpolant_objective=problem.interpolant_objective,
        relative_error=abs(best - ref) / ref,
        max_abs_deviation=problem.deviation(output.best),
        wall_time=wall_time,
    )


def trace_rows(trace: RunTrace, reference: float):
    rows = []
    for it, best in zip(trace.iterations, trace.best_objective):
        gap = float(best) - reference
        log_gap = "" if gap <= 0.0 else repr(math.log10(gap))
        rows.append((int(it), float(best), gap, math.log10(int(it)), log_gap))
    return rows


def write_trace_csv(trace: RunTrace, reference: float, path) -> None:
    lines = [TRACE_HEADER]
    for it, best, gap, log_it, log_gap in trace_rows(trace, reference):
        lines.append(f"{it},{best!r},{gap!r},{log_it!r},{log_gap}")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def render_svg_plot(points) -> str:
    """Line chart of log10(gap) against log10(iteration).

    ``points`` is a sequence of (log10_iteration, log10_gap) pairs; at
    least two finite points are required.
    """
    pts = [(float(x), float(y)) for x, y in points if math.isfinite(float(x)) and math.isfinite(float(y))]
    if len(pts) < 2:
        raise ValueError("need at least 2 finite points to plot")
    width, height = 640, 480
    ml, mr, mt, mb = 70, 20, 20, 50
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = min(ys), max(ys)
    if x_hi == x_lo:
        x_hi = x_lo + 1.0
    if y_hi == y_lo:
        y_hi = y_lo + 1.0

    def sx(x):
        return ml + (x - x_lo) / (x_hi - x_lo) * (width - ml - mr)

    def sy(y):
        return height - mb - (y - y_lo) / (y_hi - y_lo) * (height - mt - mb)

    poly = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in pts)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{ml}" y1="{height - mb}" x2="{width - mr}" y2="{height - mb}" '
        'stroke="black" stroke-width="1"/>',
        f'<line x1="{ml}" y1="{mt}" x2="{ml}" y2="{height - mb}" '
        'stroke="black" stroke-width="1"/>',
    ]
    n_ticks = 5
    for i in range(n_ticks):
        tx = x_lo + (x_hi - x_lo) * i / (n_ticks - 1)
        px = sx(tx)
        parts.append(
            f'<line x1="{px:.2f}" y1="{height - mb}" x2="{px:.2f}" y2="{height - mb + 5}" '
            'stroke="black" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{px:.2f}" y="{height - mb + 18}" font-size="11" '
            f'text-anchor="middle">{tx:.2f}</text>'
        )
        ty = y_lo + (y_hi - y_lo) * i / (n_ticks - 1)
        py = sy(ty)
        parts.append(
            f'<line x1="{ml - 5}" y1="{py:.2f}" x2="{ml}" y2="{py:.2f}" '
            'stroke="black" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{ml - 8}" y="{py + 4:.2f}" font-size="11" '
            f'text-anchor="end">{ty:.2f}</text>'
        )
    parts.append(
        f'<text x="{(ml + width - mr) / 2:.2f}" y="{height - 10}" font-size="12" '
        'text-anchor="middle">log10 iteration</text>'
    )
    parts.append(
        f'<text x="14" y="{(mt + height - mb) / 2:.2f}" font-size="12" text-anchor="middle" '
        f'transform="rotate(-90 14 {(mt + height - mb) / 2:.2f})">log10 gap</text>'
    )
    parts.append(
        f'<polyline points="{poly}" fill="none" stroke="#1f77b4" stroke-width="1.5"/>'
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def write_result_json(result: RunResult, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(result.to_dict(), fh, indent=2)
        fh.write("\n")
