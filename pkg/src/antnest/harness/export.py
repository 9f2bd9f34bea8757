"""Plot-data export: box-whisker finals, five-number summaries, convergence matrices.

For real-world problems the best design's array-factor sweep or FM waveforms
are written as well.
"""

from __future__ import annotations

import csv
from pathlib import Path

from .. import realworld, stats
from .runner import TRACES, find_reports, load_report, read_traces_csv


class ExportError(ValueError):
    pass


def _best_position(report: dict):
    runs = report["runs"]
    best = min(runs, key=lambda r: r["final_fitness"])
    return best["final_position"]


def _write_rows(path: Path, header, rows) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        w.writerows(rows)


def export_reports(reports: list[dict], out_dir) -> list[Path]:
    """Write plot CSVs for already-loaded reports; returns the files written."""
    if not reports:
        raise ExportError("no reports to export")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    summary = []
    for rep in reports:
        key = rep["problem"]["id"]
        runs = rep["runs"]
        if not runs:
            raise ExportError(f"{key}: report has no successful runs")
        path = out / f"{key}_finals.csv"
        _write_rows(path, ["run", "final"], [[r["run"], repr(r["final_fitness"])] for r in runs])
        written.append(path)
        five = stats.box_whisker([r["final_fitness"] for r in runs])
        summary.append([key] + [repr(v) for v in five])
        src = Path(rep["_dir"]) / TRACES if "_dir" in rep else None
        if src is not None and src.exists():
            header, data = read_traces_csv(src)
            path = out / f"{key}_convergence.csv"
            _write_rows(path, ["iteration"] + header,
                        [[t] + [repr(float(v)) for v in row] for t, row in enumerate(data, start=1)])
            written.append(path)
        if rep["problem"]["suite"] == "realworld":
            x = _best_position(rep)
            if key == "antenna":
                theta, af, af_db = realworld.af_sweep(x)
                path = out / "antenna_af.csv"
                _write_rows(path, ["theta_deg", "af", "af_db"],
                            [[repr(float(a)), repr(float(b)), repr(float(c))]
                             for a, b, c in zip(theta, af, af_db)])
            else:
                outer = bool(rep["spec"].get("outer_theta", False))
                t, y, y0 = realworld.fm_waveforms(x, outer)
                path = out / "fm_wave.csv"
                _write_rows(path, ["t", "y", "y_target"],
                            [[int(a), repr(float(b)), repr(float(c))] for a, b, c in zip(t, y, y0)])
            written.append(path)
    path = out / "summary.csv"
    _write_rows(path, ["problem", "min", "q1", "median", "q3", "max"], summary)
    written.append(path)
    return written


def export_plotdata(result_dir, out_dir=None) -> list[Path]:
    """Export plot data for every report under ``result_dir`` (default: ``<dir>/plotdata``)."""
    reports = [load_report(d) for d in find_reports(result_dir)]
    return export_reports(reports, out_dir if out_dir is not None else Path(result_dir) / "plotdata")
