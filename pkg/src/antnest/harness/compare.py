"""Cross-result-set comparison: rank tables and pairwise hypothesis tests.

A *result set* maps function ids to per-run finals. It comes from a result
directory (one or more experiment reports), or from a reference finals CSV
whose columns are named ``<function>_<algorithm>``. Reference *means* (a wide
CSV ``function,<alg1>,<alg2>,...``) join the ranking only.
"""

from __future__ import annotations

import csv
import itertools
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .. import stats
from .runner import find_reports, load_report

TESTS = {
    "student_t": stats.student_t,
    "welch_t": stats.welch_t,
    "wilcoxon": stats.wilcoxon_signed_rank,
}


class CompareError(ValueError):
    pass


@dataclass
class ResultSet:
    name: str
    finals: dict[str, np.ndarray] = field(default_factory=dict)

    def means(self) -> dict[str, float]:
        return {f: stats.mean(v) for f, v in self.finals.items()}


def _function_key(report: dict) -> str:
    return report["problem"]["id"]


def load_result_set(path, name: str | None = None) -> ResultSet:
    p = Path(path)
    rs = ResultSet(name or p.resolve().name)
    for d in find_reports(p):
        report = load_report(d)
        key = _function_key(report)
        if key in rs.finals:
            raise CompareError(f"{p}: more than one report for {key}")
        rs.finals[key] = np.array([r["final_fitness"] for r in report["runs"]], dtype=float)
    return rs


def read_reference_means(path) -> tuple[list[str], dict[str, dict[str, float]]]:
    """Wide means CSV -> (algorithms, {function: {algorithm: mean}})."""
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    if not rows or rows[0][0] != "function":
        raise CompareError(f"{path}: expected a header starting with 'function'")
    algs = rows[0][1:]
    table = {}
    for row in rows[1:]:
        if not row:
            continue
        table[row[0]] = {a: float(v) if v.strip() else float("nan") for a, v in zip(algs, row[1:])}
    return algs, table


def read_reference_finals(path) -> list[ResultSet]:
    """Per-run finals CSV with ``<function>_<algorithm>`` columns -> one set per algorithm."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        rows = list(reader)
        cols = [c for c in reader.fieldnames if "_" in c]
    sets: dict[str, ResultSet] = {}
    for col in cols:
        fn, alg = col.split("_", 1)
        sets.setdefault(alg, ResultSet(alg)).finals[fn] = np.array(
            [float(r[col]) for r in rows], dtype=float)
    return list(sets.values())


def _pvalue(test, a, b):
    try:
        return test(a, b)
    except (stats.UndefinedTestError, ValueError):
        return None


@dataclass
class Comparison:
    table: stats.RankTable
    pvalues: list[dict]

    def rank_counts(self) -> np.ndarray:
        return self.table.place_counts()

    def rank_averages(self) -> dict[str, np.ndarray]:
        return self.table.group_averages()


def compare_sets(sets: list[ResultSet], reference_means=None) -> Comparison:
    """Rank every result set (plus reference algorithms) and test every pair of sets."""
    if not sets:
        raise CompareError("nothing to compare")
    names = [s.name for s in sets]
    if len(set(names)) != len(names):
        raise CompareError(f"duplicate result set names: {names}")
    functions = list(sets[0].finals)
    for s in sets[1:]:
        if set(s.finals) != set(functions):
            raise CompareError(
                f"mismatched problem lists: {sets[0].name} has {sorted(functions)}, "
                f"{s.name} has {sorted(s.finals)}")
    algorithms = list(names)
    columns = [[s.means()[f] for f in functions] for s in sets]
    if reference_means is not None:
        ref_algs, ref = reference_means
        missing = [f for f in functions if f not in ref]
        if missing:
            raise CompareError(f"reference lacks functions {missing}")
        for a in ref_algs:
            if a in algorithms:
                continue
            algorithms.append(a)
            columns.append([ref[f][a] for f in functions])
    table = stats.rank(np.array(columns).T, algorithms, functions)
    pvalues = []
    for a, b in itertools.combinations(sets, 2):
        for f in functions:
            row = {"function": f, "set_a": a.name, "set_b": b.name}
            x, y = a.finals[f], b.finals[f]
            for tname, test in TESTS.items():
                if tname == "wilcoxon" and x.size != y.size:
                    row[tname] = None
                else:
                    row[tname] = _pvalue(test, x, y)
            pvalues.append(row)
    return Comparison(table, pvalues)


def _fmt(v):
    return "" if v is None else repr(float(v))


def write_comparison(cmp: Comparison, out_dir) -> Path:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    t = cmp.table
    with open(out / "ranks.csv", "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["function"] + t.algorithms)
        for f, row in zip(t.functions, t.ranks):
            w.writerow([f] + [int(v) for v in row])
    with open(out / "rank_counts.csv", "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["rank"] + t.algorithms)
        for p, row in enumerate(cmp.rank_counts().T, start=1):
            w.writerow([p] + [int(v) for v in row])
    with open(out / "rank_averages.csv", "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["group", "functions"] + t.algorithms)
        for g, (total, n) in t.group_totals().items():
            w.writerow([g, n] + [repr(float(v) / n) for v in total])
    with open(out / "pvalues.csv", "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["function", "set_a", "set_b"] + list(TESTS))
        for row in cmp.pvalues:
            w.writerow([row["function"], row["set_a"], row["set_b"]]
                       + [_fmt(row[k]) for k in TESTS])
    return out


def compare_report(result_dirs, reference=None, reference_finals=None) -> Comparison:
    """Load result directories and optional reference data, then compare."""
    sets = [load_result_set(d) for d in result_dirs]
    if reference_finals is not None:
        wanted = set(sets[0].finals) if sets else None
        for rs in read_reference_finals(reference_finals):
            if wanted is not None:
                rs.finals = {f: v for f, v in rs.finals.items() if f in wanted}
            sets.append(rs)
    ref = read_reference_means(reference) if reference is not None else None
    return compare_sets(sets, ref)
