"""Seeded repeated runs and their on-disk artifacts.

An experiment directory holds:

``traces.csv``
    ``iteration`` column plus one ``run_<k>`` column of global-best fitness per
    successful run.
``finals.csv``
    ``run,seed,final_fitness,evaluations,nonfinite_rejections`` per successful run.
``report.json``
    Problem, config echo, per-run results, failures, aggregates and (under the
    separate ``timing`` key) wall-clock times.

Floats are written with ``repr`` so they round-trip exactly.
"""

from __future__ import annotations

import csv
import json
import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from .. import stats
from ..core import run
from .spec import ExperimentSpec

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
REPORT = "report.json"
TRACES = "traces.csv"
FINALS = "finals.csv"


class ReportError(ValueError):
    """A persisted report is malformed or internally inconsistent."""


def _run_one(spec: ExperimentSpec, k: int) -> dict:
    t0 = time.perf_counter()
    seed = spec.seed(k)
    try:
        problem = spec.make_problem()
        res = run(problem, spec.ana_config(k))
    except Exception as exc:  # a failed run is reported, the experiment goes on
        return {"run": k, "seed": seed, "error": f"{type(exc).__name__}: {exc}",
                "wall_time": time.perf_counter() - t0}
    return {
        "run": k,
        "seed": seed,
        "final_fitness": res.final_fitness,
        "final_position": res.final_position.tolist(),
        "evaluations": res.evaluations,
        "nonfinite_rejections": res.nonfinite_rejections,
        "trace": res.best_trace,
        "wall_time": time.perf_counter() - t0,
    }


def aggregate(finals) -> dict:
    """Aggregates recorded in a report; ``std`` is None for a single run."""
    x = np.asarray(finals, dtype=float)
    if x.size == 0:
        return {"n": 0, "mean": None, "std": None, "best": None, "worst": None,
                "five_number": None}
    return {
        "n": int(x.size),
        "mean": stats.mean(x),
        "std": stats.std(x) if x.size >= 2 else None,
        "best": float(x.min()),
        "worst": float(x.max()),
        "five_number": list(stats.box_whisker(x)),
    }


def execute_runs(spec: ExperimentSpec, jobs: int | None = None) -> list[dict]:
    """All repeats of ``spec``, ordered by run index whatever the scheduling."""
    jobs = spec.jobs if jobs is None else jobs
    indices = range(spec.repeats)
    if jobs <= 1 or spec.repeats == 1:
        return [_run_one(spec, k) for k in indices]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        results = list(pool.map(_run_one, [spec] * spec.repeats, indices))
    return sorted(results, key=lambda r: r["run"])


def build_report(spec: ExperimentSpec, results: list[dict]) -> dict:
    ok = [r for r in results if "error" not in r]
    failed = [r for r in results if "error" in r]
    problem = spec.make_problem()
    return {
        "schema_version": SCHEMA_VERSION,
        "name": spec.name,
        "problem": {
            "suite": spec.suite,
            "id": spec.problem_id,
            "name": problem.name,
            "dimension": problem.dimension,
            "direction": problem.direction.value,
        },
        # Scheduling and output location do not affect results; keep them out
        # of the echo so serial and parallel reports are identical.
        "spec": {k: v for k, v in spec.to_dict().items() if k not in ("jobs", "output")},
        "runs": [
            {k: r[k] for k in ("run", "seed", "final_fitness", "evaluations",
                               "nonfinite_rejections", "final_position")}
            for r in ok
        ],
        "failures": [{k: r[k] for k in ("run", "seed", "error")} for r in failed],
        "aggregate": aggregate([r["final_fitness"] for r in ok]),
        "timing": {
            "per_run_seconds": [r["wall_time"] for r in results],
            "total_seconds": math.fsum(r["wall_time"] for r in results),
        },
    }


def write_artifacts(out_dir, report: dict, results: list[dict]) -> Path:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    ok = [r for r in results if "error" not in r]
    with open(out / TRACES, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["iteration"] + [f"run_{r['run']}" for r in ok])
        if ok:
            for t, row in enumerate(np.column_stack([r["trace"] for r in ok]), start=1):
                w.writerow([t] + [repr(float(v)) for v in row])
    with open(out / FINALS, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["run", "seed", "final_fitness", "evaluations", "nonfinite_rejections"])
        for r in ok:
            w.writerow([r["run"], r["seed"], repr(float(r["final_fitness"])), r["evaluations"],
                        r["nonfinite_rejections"]])
    (out / REPORT).write_text(json.dumps(report, indent=2) + "\n", encoding="utf-8")
    return out


def run_experiment(spec: ExperimentSpec, out_dir=None, jobs: int | None = None) -> dict:
    """Execute every repeat of ``spec`` and return the report dict.

    Artifacts are written to ``out_dir`` (or ``spec.output``) when given.
    Failed runs are logged, listed under ``failures`` and left out of the
    aggregates.
    """
    results = execute_runs(spec, jobs)
    for r in results:
        if "error" in r:
            logger.error("%s run %d (seed %d) failed: %s", spec.name, r["run"], r["seed"],
                         r["error"])
    report = build_report(spec, results)
    target = out_dir if out_dir is not None else spec.output
    if target is not None:
        write_artifacts(target, report, results)
    return report


def read_finals_csv(path) -> list[dict]:
    with open(path, newline="", encoding="utf-8") as fh:
        return [
            {"run": int(r["run"]), "seed": int(r["seed"]), "final_fitness": float(r["final_fitness"])}
            for r in csv.DictReader(fh)
        ]


def read_traces_csv(path) -> tuple[list[str], np.ndarray]:
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    header = rows[0][1:]
    data = np.array([[float(v) for v in row[1:]] for row in rows[1:]], dtype=float)
    return header, data.reshape(len(rows) - 1, len(header))


def _same(a, b) -> bool:
    if a is None or b is None:
        return a is b
    return a == b or (isinstance(a, float) and math.isclose(a, b, rel_tol=1e-12, abs_tol=0.0))


def load_report(result_dir) -> dict:
    """Read ``report.json`` and re-check it against ``finals.csv`` and its own aggregates."""
    d = Path(result_dir)
    try:
        report = json.loads((d / REPORT).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ReportError(f"{d}: cannot read {REPORT}: {exc}") from None
    if report.get("schema_version") != SCHEMA_VERSION:
        raise ReportError(f"{d}: unsupported schema_version {report.get('schema_version')!r}")
    finals = [r["final_fitness"] for r in report["runs"]]
    if (d / FINALS).exists():
        csv_rows = read_finals_csv(d / FINALS)
        if [(r["run"], r["final_fitness"]) for r in csv_rows] != \
                [(r["run"], r["final_fitness"]) for r in report["runs"]]:
            raise ReportError(f"{d}: {FINALS} disagrees with {REPORT}")
    expected = aggregate(finals)
    for key, value in expected.items():
        got = report["aggregate"].get(key)
        if key == "five_number":
            if (value is None) != (got is None) or (
                    value is not None and not all(map(_same, value, got))):
                raise ReportError(f"{d}: aggregate {key} inconsistent with per-run finals")
        elif not _same(value, got):
            raise ReportError(f"{d}: aggregate {key}={got!r} but finals give {value!r}")
    report["_dir"] = str(d)
    return report


def find_reports(path) -> list[Path]:
    """Experiment directories at ``path`` itself or one level below it."""
    p = Path(path)
    if (p / REPORT).exists():
        return [p]
    found = sorted(c for c in p.iterdir() if (c / REPORT).exists()) if p.is_dir() else []
    if not found:
        raise ReportError(f"{p}: no {REPORT} found here or in its subdirectories")
    return found
