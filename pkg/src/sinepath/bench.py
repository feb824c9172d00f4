"""Benchmark harness: run grids of solves, aggregate, and emit artifacts.

A plan crosses instance files x robot counts x algorithm presets x repeats.
Run r of every cell uses master seed ``seed_base + r``, so runs pair up
across algorithms for the signed-rank test.  Each run records both metrics
(total and max single tour length).  Results aggregate to mean / sample std
cells, and emit as canonical CSV (byte-stable under re-parse), JSON with the
raw runs, verdict and rank tables, and per-route SVG drawings.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .instances import Instance, load_instance
from .solver import SolveReport, SolverConfig, solve
from .stats import DEFAULT_SIGNIFICANCE, RankTable, friedman_mean_ranks, wilcoxon_signed_rank

METRICS = ("total", "max_single")

# Structural-weight grid for the ablation sweep: deposit-side backbone
# influence (kappa), from "off" through strongly prior-guided.
DEFAULT_ABLATION_WEIGHTS = (0.0, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0)


@dataclass(frozen=True)
class AlgorithmSpec:
    """Named solver preset; the plan overrides its master seed per run."""

    name: str
    config: SolverConfig


@dataclass(frozen=True)
class ExperimentPlan:
    instances: tuple[str, ...]
    robot_counts: tuple[int, ...]
    algorithms: tuple[AlgorithmSpec, ...]
    repeats: int = 8
    seed_base: int = 0

    def __post_init__(self):
        if not self.instances:
            raise ValueError("plan needs at least one instance")
        if not self.robot_counts or any(m < 1 for m in self.robot_counts):
            raise ValueError("robot counts must be positive")
        if not self.algorithms:
            raise ValueError("plan needs at least one algorithm")
        names = [a.name for a in self.algorithms]
        if len(set(names)) != len(names):
            raise ValueError("algorithm names must be unique")
        if self.repeats < 2:
            raise ValueError("repeats must be at least 2 for mean/std cells")


@dataclass(frozen=True)
class CellStats:
    """Aggregate of one (instance, robots, algorithm, metric) cell.

    ``runs`` holds the raw per-run values; it is empty when the cell was
    re-read from a csv, which only carries the aggregate and ``n``.
    """

    mean: float
    std: float
    runs: tuple[float, ...]
    n: int


def cell_stats(runs) -> CellStats:
    arr = np.asarray(runs, dtype=np.float64)
    if len(arr) < 2:
        raise ValueError("cells need at least 2 runs")
    return CellStats(
        float(arr.mean()), float(arr.std(ddof=1)), tuple(float(x) for x in arr), len(arr)
    )


CellKey = tuple[str, int, str, str]  # (instance, robots, algorithm, metric)


@dataclass
class BenchResults:
    cells: dict[CellKey, CellStats] = field(default_factory=dict)
    failed: dict[tuple[str, int, str], str] = field(default_factory=dict)
    seed_base: int = 0

    def instances(self) -> tuple[str, ...]:
        return tuple(sorted({k[0] for k in self.cells}))

    def robot_counts(self) -> tuple[int, ...]:
        return tuple(sorted({k[1] for k in self.cells}))

    def algorithms(self) -> tuple[str, ...]:
        return tuple(sorted({k[2] for k in self.cells}))


def _metric_values(report: SolveReport) -> dict[str, float]:
    return {
        "total": report.objectives.total,
        "max_single": report.objectives.max_single,
    }


def run_plan(plan: ExperimentPlan, workers: int = 1) -> BenchResults:
    """Execute every cell of the plan.

    Instance files parse up front: a parse failure aborts the whole plan with
    the file named.  A solver failure marks that cell failed and the plan
    continues.  Cells run concurrently up to ``workers``; aggregation is
    keyed, so the schedule cannot change the results.
    """
    loaded: list[Instance] = []
    for path in plan.instances:
        try:
            loaded.append(load_instance(path))
        except Exception as exc:
            raise type(exc)(f"{path}: {exc}") from exc

    tasks = [
        (inst, m, spec)
        for inst in loaded
        for m in plan.robot_counts
        for spec in plan.algorithms
    ]

    def run_cell(task):
        inst, m, spec = task
        values: dict[str, list[float]] = {metric: [] for metric in METRICS}
        for r in range(plan.repeats):
            cfg = replace(spec.config, master_seed=plan.seed_base + r)
            report = solve(inst, m, cfg)
            for metric, value in _metric_values(report).items():
                values[metric].append(value)
        return inst.name, m, spec.name, values

    results = BenchResults(seed_base=plan.seed_base)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_guard(run_cell), tasks))
    else:
        outcomes = [_guard(run_cell)(t) for t in tasks]

    for task, outcome in zip(tasks, outcomes):
        inst, m, spec = task
        if isinstance(outcome, Exception):
            results.failed[(inst.name, m, spec.name)] = str(outcome)
            continue
        name, robots, alg, values = outcome
        for metric in METRICS:
            results.cells[(name, robots, alg, metric)] = cell_stats(values[metric])
    return results


def _guard(fn):
    def wrapped(task):
        try:
            return fn(task)
        except Exception as exc:  # recorded, not raised: the plan continues
            return exc

    return wrapped


def ablation_sweep(
    inst: Instance,
    m: int,
    weights=DEFAULT_ABLATION_WEIGHTS,
    repeats: int = 8,
    seed_base: int = 0,
    base_config: SolverConfig | None = None,
) -> dict[float, dict[str, CellStats]]:
    """One run set per structural weight, everything else held fixed.

    The weight drives the deposit-side backbone influence (kappa).  The
    default base keeps the transition bias neutral (omega = 1) and seeding
    off, so weight 0 degenerates to the plain colony: with the same seeds it
    is bit-identical to mode "aco".
    """
    if base_config is None:
        base_config = SolverConfig(omega=1.0, seed_with_christofides=False)
    if repeats < 2:
        raise ValueError("repeats must be at least 2")
    out: dict[float, dict[str, CellStats]] = {}
    for w in weights:
        if w < 0:
            raise ValueError("structural weights must be non-negative")
        cfg_w = replace(base_config, aco=replace(base_config.aco, kappa=float(w)))
        values: dict[str, list[float]] = {metric: [] for metric in METRICS}
        for r in range(repeats):
            cfg = replace(cfg_w, master_seed=seed_base + r)
            report = solve(inst, m, cfg)
            for metric, value in _metric_values(report).items():
                values[metric].append(value)
        out[float(w)] = {metric: cell_stats(values[metric]) for metric in METRICS}
    return out


# ---------------------------------------------------------------------------
# Emitters.  Numbers are written with shortest round-trip decimals (repr), so
# parse -> emit reproduces the bytes exactly.


def _fmt(x) -> str:
    return repr(float(x))


def format_results_csv(results: BenchResults) -> str:
    lines = ["instance,robots,algorithm,metric,mean,std,n"]
    for key in sorted(results.cells):
        inst, robots, alg, metric = key
        c = results.cells[key]
        lines.append(
            f"{inst},{robots},{alg},{metric},{_fmt(c.mean)},{_fmt(c.std)},{c.n}"
        )
    return "\n".join(lines) + "\n"


def parse_results_csv(text: str) -> BenchResults:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != "instance,robots,algorithm,metric,mean,std,n":
        raise ValueError("unrecognised results csv header")
    results = BenchResults()
    for ln in lines[1:]:
        fields = ln.split(",")
        if len(fields) != 7:
            raise ValueError(f"bad results row: {ln!r}")
        inst, robots, alg, metric, mean, std, n = fields
        key = (inst, int(robots), alg, metric)
        # Raw runs are not part of the csv; carry the aggregate only.
        results.cells[key] = CellStats(float(mean), float(std), (), int(n))
    return results


def format_results_json(results: BenchResults) -> str:
    cells = []
    for key in sorted(results.cells):
        inst, robots, alg, metric = key
        c = results.cells[key]
        cells.append(
            {
                "instance": inst,
                "robots": robots,
                "algorithm": alg,
                "metric": metric,
                "mean": c.mean,
                "std": c.std,
                "n": c.n,
                "runs": list(c.runs),
            }
        )
    failed = [
        {"instance": k[0], "robots": k[1], "algorithm": k[2], "error": msg}
        for k, msg in sorted(results.failed.items())
    ]
    return json.dumps(
        {"seed_base": results.seed_base, "cells": cells, "failed": failed},
        sort_keys=True,
        indent=2,
    ) + "\n"


def wilcoxon_verdict_rows(
    results: BenchResults, significance: float = DEFAULT_SIGNIFICANCE
) -> list[dict]:
    """Per (instance, robots, metric): each algorithm against the best mean.

    The best-mean algorithm anchors the comparison and gets verdict "best".
    Cells without enough raw runs for the signed-rank test (fewer than 5, or
    parsed back from csv where runs are not carried) get verdict "untested".
    """
    rows: list[dict] = []
    for inst in results.instances():
        for m in results.robot_counts():
            for metric in METRICS:
                algs = [
                    a
                    for a in results.algorithms()
                    if (inst, m, a, metric) in results.cells
                ]
                if len(algs) < 2:
                    continue
                best = min(algs, key=lambda a: (results.cells[(inst, m, a, metric)].mean, a))
                best_runs = results.cells[(inst, m, best, metric)].runs
                for alg in algs:
                    cell = results.cells[(inst, m, alg, metric)]
                    if alg == best:
                        verdict, p = "best", ""
                    elif len(cell.runs) < 5 or len(cell.runs) != len(best_runs):
                        verdict, p = "untested", ""
                    else:
                        res = wilcoxon_signed_rank(cell.runs, best_runs, significance)
                        verdict, p = res.verdict, _fmt(res.p_value)
                    rows.append(
                        {
                            "instance": inst,
                            "robots": m,
                            "metric": metric,
                            "algorithm": alg,
                            "mean": cell.mean,
                            "std": cell.std,
                            "p_value": p,
                            "verdict": verdict,
                        }
                    )
    return rows


def format_wilcoxon_csv(rows: list[dict], significance: float = DEFAULT_SIGNIFICANCE) -> str:
    lines = ["instance,robots,metric,algorithm,mean,std,p_value,verdict"]
    for r in rows:
        lines.append(
            f"{r['instance']},{r['robots']},{r['metric']},{r['algorithm']},"
            f"{_fmt(r['mean'])},{_fmt(r['std'])},{r['p_value']},{r['verdict']}"
        )
    lines.append(f"# wilcoxon signed-rank, two-sided, significance {significance}")
    return "\n".join(lines) + "\n"


def friedman_blocks(results: BenchResults, metric: str = "total") -> dict[str, RankTable]:
    """Mean-rank tables per robot count plus an overall block.

    The overall block treats every (instance, robots) pair as one ranking
    unit.  Blocks that lack two complete units are skipped.
    """
    blocks: dict[str, RankTable] = {}
    for m in results.robot_counts():
        means: dict[str, dict[str, float]] = {}
        for inst in results.instances():
            per_alg = {
                a: results.cells[(inst, m, a, metric)].mean
                for a in results.algorithms()
                if (inst, m, a, metric) in results.cells
            }
            if per_alg:
                means[inst] = per_alg
        try:
            blocks[str(m)] = friedman_mean_ranks(means)
        except ValueError:
            continue
    overall: dict[str, dict[str, float]] = {}
    for inst in results.instances():
        for m in results.robot_counts():
            per_alg = {
                a: results.cells[(inst, m, a, metric)].mean
                for a in results.algorithms()
                if (inst, m, a, metric) in results.cells
            }
            if per_alg:
                overall[f"{inst}@{m}"] = per_alg
    try:
        blocks["overall"] = friedman_mean_ranks(overall)
    except ValueError:
        pass
    return blocks


def format_friedman_csv(blocks: dict[str, RankTable]) -> str:
    lines = ["block,algorithm,mean_rank,position"]
    for block in sorted(blocks):
        table = blocks[block]
        order = table.ordering()
        for alg in table.algorithms:
            lines.append(
                f"{block},{alg},{_fmt(table.mean_ranks[alg])},{order.index(alg) + 1}"
            )
    return "\n".join(lines) + "\n"


def format_ablation_csv(sweep: dict[float, dict[str, CellStats]], m: int) -> str:
    lines = ["weight,robots,metric,mean,std,n"]
    for w in sorted(sweep):
        for metric in METRICS:
            c = sweep[w][metric]
            lines.append(f"{_fmt(w)},{m},{metric},{_fmt(c.mean)},{_fmt(c.std)},{c.n}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Route drawing.

_ROUTE_COLORS = (
    "#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00",
    "#a65628", "#f781bf", "#17becf", "#666666", "#bcbd22",
)


def format_svg_routes(report: SolveReport, inst: Instance, size: float = 640.0) -> str:
    """SVG 1.1 drawing: nodes as dots, one closed polyline per robot.

    The viewBox fits the coordinate bounding box with a 5% margin; the
    vertical axis is flipped so y grows upward.  Geographic instances draw
    as lon (x) by lat (y).
    """
    coords = inst.coords
    if inst.metric.value == "greatcircle":
        xs, ys = coords[:, 1], coords[:, 0]
    else:
        xs, ys = coords[:, 0], coords[:, 1]
    xmin, xmax = float(xs.min()), float(xs.max())
    ymin, ymax = float(ys.min()), float(ys.max())
    span_x = max(xmax - xmin, 1e-9)
    span_y = max(ymax - ymin, 1e-9)
    margin_x, margin_y = 0.05 * span_x, 0.05 * span_y
    width = span_x + 2 * margin_x
    height = span_y + 2 * margin_y
    scale = size / max(width, height)

    def sx(x: float) -> float:
        return (x - xmin + margin_x) * scale

    def sy(y: float) -> float:
        return (ymax - y + margin_y) * scale

    w_px, h_px = width * scale, height * scale
    radius = 0.006 * max(w_px, h_px)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="0 0 {w_px:.2f} {h_px:.2f}">',
        f'<rect width="{w_px:.2f}" height="{h_px:.2f}" fill="white"/>',
    ]
    for i, tour in enumerate(report.tours):
        color = _ROUTE_COLORS[i % len(_ROUTE_COLORS)]
        pts = [f"{sx(xs[v]):.2f},{sy(ys[v]):.2f}" for v in tour.order]
        pts.append(pts[0])  # close the loop
        parts.append(
            f'<polyline points="{" ".join(pts)}" fill="none" '
            f'stroke="{color}" stroke-width="{radius / 2:.2f}"/>'
        )
    for x, y in zip(xs, ys):
        parts.append(
            f'<circle cx="{sx(float(x)):.2f}" cy="{sy(float(y)):.2f}" '
            f'r="{radius:.2f}" fill="#222222"/>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def emit_bench_artifacts(
    results: BenchResults,
    out_dir,
    significance: float = DEFAULT_SIGNIFICANCE,
) -> list[Path]:
    """Write results.csv, results.json, wilcoxon.csv and, when at least two
    instances completed, friedman.csv.  Returns the paths written."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []

    p = out / "results.csv"
    p.write_text(format_results_csv(results))
    written.append(p)

    p = out / "results.json"
    p.write_text(format_results_json(results))
    written.append(p)

    rows = wilcoxon_verdict_rows(results, significance)
    p = out / "wilcoxon.csv"
    p.write_text(format_wilcoxon_csv(rows, significance))
    written.append(p)

    if len(results.instances()) >= 2:
        blocks = friedman_blocks(results)
        if blocks:
            p = out / "friedman.csv"
            p.write_text(format_friedman_csv(blocks))
            written.append(p)
    return written
