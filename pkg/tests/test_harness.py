import csv
import json

import numpy as np
import pytest

from antnest import reference
from antnest.harness import compare, export, runner
from antnest.harness.spec import ExperimentSpec, SpecError, load_spec, parse_spec

from tables import TABLE6

SMALL = """
[experiment]
repeats = 3
base_seed = 11

[problem]
id = {pid}

[ana]
population = 6
iterations = 15
"""


def small_spec(pid="F2", **kw):
    return parse_spec(SMALL.format(pid=pid)).with_overrides(**kw)


def strip_timing(path):
    report = json.loads((path / "report.json").read_text())
    report.pop("timing")
    return json.dumps(report, sort_keys=True)


# --- specs --------------------------------------------------------------------

def test_minimal_spec_gets_table3_protocol():
    spec = parse_spec("[problem]\nid = F10\n")
    assert (spec.population, spec.iterations, spec.repeats) == (30, 500, 30)
    assert spec.dimension == 10 and spec.shifted and spec.suite == "standard"
    assert spec.name == "F10"
    assert [spec.seed(k) for k in range(3)] == [0, 1, 2]


def test_table4_preset():
    spec = parse_spec("[experiment]\npreset = table4\n[problem]\nid = F1\n")
    assert (spec.population, spec.iterations, spec.repeats, spec.dimension) == (30, 10000, 100, 20)
    assert not spec.shifted
    assert spec.make_problem().upper_bounds[0] == 5.12


@pytest.mark.parametrize("text,key", [
    ("[experiment]\nrepeats = 0\n[problem]\nid = F1\n", "repeats"),
    ("[problem]\nid = F1\ncolour = red\n", "colour"),
    ("[problem]\nid = F99\n", "id"),
    ("[ana]\npopulation = 30\n", "id"),
    ("[problem]\nid = F1\n[ana]\npopulation = 1\n", "population"),
    ("[problem]\nid = F1\n[ana]\nr_mode = sideways\n", "r_mode"),
    ("[problem]\nid = F1\n[ana]\niterations = many\n", "iterations"),
    ("[extras]\na = 1\n[problem]\nid = F1\n", "extras"),
])
def test_spec_errors_name_the_key(text, key):
    with pytest.raises(SpecError, match=key):
        parse_spec(text)


def test_load_spec_resolves_data_file(tmp_path):
    (tmp_path / "s.ini").write_text("[problem]\nid = CEC04\ndata_file = cec04.txt\n")
    spec = load_spec(tmp_path / "s.ini")
    assert spec.data_file == str(tmp_path / "cec04.txt")
    assert spec.suite == "cec2019" and spec.preset == "cec2019"


def test_shipped_configs_load():
    from pathlib import Path
    for path in sorted(Path(__file__).parents[1].glob("configs/*.ini")):
        load_spec(path).make_problem()


# --- running ------------------------------------------------------------------

def test_run_experiment_writes_artifacts(tmp_path):
    report = runner.run_experiment(small_spec(), out_dir=tmp_path)
    assert report["schema_version"] == 1
    assert [r["seed"] for r in report["runs"]] == [11, 12, 13]
    assert report["aggregate"]["n"] == 3
    header, data = runner.read_traces_csv(tmp_path / "traces.csv")
    assert header == ["run_0", "run_1", "run_2"] and data.shape == (15, 3)
    assert np.all(np.diff(data, axis=0) <= 0)
    finals = runner.read_finals_csv(tmp_path / "finals.csv")
    assert [f["final_fitness"] for f in finals] == [r["final_fitness"] for r in report["runs"]]
    assert data[-1].tolist() == [r["final_fitness"] for r in report["runs"]]


def test_same_spec_twice_is_byte_identical(tmp_path):
    runner.run_experiment(small_spec(), out_dir=tmp_path / "a")
    runner.run_experiment(small_spec(), out_dir=tmp_path / "b")
    assert strip_timing(tmp_path / "a") == strip_timing(tmp_path / "b")
    for name in ("traces.csv", "finals.csv"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_serial_and_parallel_identical(tmp_path):
    runner.run_experiment(small_spec(), out_dir=tmp_path / "serial", jobs=1)
    runner.run_experiment(small_spec(), out_dir=tmp_path / "parallel", jobs=2)
    assert strip_timing(tmp_path / "serial") == strip_timing(tmp_path / "parallel")


def test_single_repeat_has_no_std(tmp_path):
    report = runner.run_experiment(small_spec(repeats=1), out_dir=tmp_path)
    assert report["aggregate"]["std"] is None
    assert runner.load_report(tmp_path)["aggregate"]["n"] == 1


def test_failed_run_is_reported_and_skipped(tmp_path, monkeypatch):
    real = runner.run

    def flaky(problem, cfg, **kw):
        if cfg.seed == 12:
            raise RuntimeError("objective exploded")
        return real(problem, cfg, **kw)

    monkeypatch.setattr(runner, "run", flaky)
    report = runner.run_experiment(small_spec(), out_dir=tmp_path)
    assert [f["run"] for f in report["failures"]] == [1]
    assert "objective exploded" in report["failures"][0]["error"]
    assert [r["run"] for r in report["runs"]] == [0, 2]
    assert report["aggregate"]["n"] == 2
    runner.load_report(tmp_path)


def test_aggregates_match_describe(tmp_path):
    from antnest import stats
    report = runner.run_experiment(small_spec(), out_dir=tmp_path)
    finals = [r["final_fitness"] for r in report["runs"]]
    assert (report["aggregate"]["mean"], report["aggregate"]["std"]) == stats.describe(finals)


def test_load_report_detects_tampering(tmp_path):
    runner.run_experiment(small_spec(), out_dir=tmp_path)
    path = tmp_path / "report.json"
    report = json.loads(path.read_text())
    report["aggregate"]["mean"] *= 2
    path.write_text(json.dumps(report))
    with pytest.raises(runner.ReportError, match="mean"):
        runner.load_report(tmp_path)


def test_load_report_detects_finals_mismatch(tmp_path):
    runner.run_experiment(small_spec(), out_dir=tmp_path)
    rows = list(csv.reader(open(tmp_path / "finals.csv")))
    rows[1][2] = "123.0"
    with open(tmp_path / "finals.csv", "w", newline="") as fh:
        csv.writer(fh).writerows(rows)
    with pytest.raises(runner.ReportError, match="finals.csv"):
        runner.load_report(tmp_path)


def test_load_report_missing(tmp_path):
    with pytest.raises(runner.ReportError):
        runner.load_report(tmp_path)


# --- compare ------------------------------------------------------------------

def test_single_result_set_ranks_all_one(tmp_path):
    runner.run_experiment(small_spec("F1"), out_dir=tmp_path / "ana" / "F1")
    runner.run_experiment(small_spec("F2"), out_dir=tmp_path / "ana" / "F2")
    cmp = compare.compare_report([tmp_path / "ana"])
    assert cmp.table.functions == ["F1", "F2"]
    assert np.all(cmp.table.ranks == 1)
    assert cmp.pvalues == []


def test_two_sets_get_pvalues(tmp_path):
    runner.run_experiment(small_spec("F1"), out_dir=tmp_path / "a" / "F1")
    runner.run_experiment(small_spec("F1", population=3, iterations=2),
                          out_dir=tmp_path / "b" / "F1")
    cmp = compare.compare_report([tmp_path / "a", tmp_path / "b"])
    row = cmp.pvalues[0]
    assert row["set_a"] == "a" and row["set_b"] == "b"
    for key in ("student_t", "welch_t", "wilcoxon"):
        assert row[key] is None or 0.0 <= row[key] <= 1.0
    out = compare.write_comparison(cmp, tmp_path / "cmp")
    assert {p.name for p in out.iterdir()} == {"ranks.csv", "rank_counts.csv",
                                               "rank_averages.csv", "pvalues.csv"}


def test_mismatched_problem_lists(tmp_path):
    runner.run_experiment(small_spec("F1"), out_dir=tmp_path / "a" / "F1")
    runner.run_experiment(small_spec("F2"), out_dir=tmp_path / "b" / "F2")
    with pytest.raises(compare.CompareError, match="mismatched problem lists"):
        compare.compare_report([tmp_path / "a", tmp_path / "b"])


def test_table3_reference_reproduces_table6():
    algs, functions, means = reference.means_table()
    ana = compare.ResultSet("ANA", {f: np.array([means[i, 0]]) for i, f in enumerate(functions)})
    ref = compare.read_reference_means(reference.path("table3_means.csv"))
    cmp = compare.compare_sets([ana], ref)
    assert cmp.table.algorithms == ["ANA", "DA", "PSO", "GA"]
    for f, row in zip(cmp.table.functions, cmp.table.ranks):
        assert row.tolist() == TABLE6[f]


def test_reference_finals_wilcoxon_f1():
    sets = compare.read_reference_finals(reference.path("table_a5_finals.csv"))
    by_name = {s.name: s for s in sets}
    for s in sets:
        s.finals = {"F1": s.finals["F1"]}
    cmp = compare.compare_sets([by_name["ANA"], by_name["FDO"]])
    assert cmp.pvalues[0]["wilcoxon"] == pytest.approx(1.8626451e-9, abs=1e-12)


# --- export -------------------------------------------------------------------

def test_export_box_whisker_and_convergence(tmp_path):
    spec = small_spec("F2", repeats=30, iterations=5, population=4)
    runner.run_experiment(spec, out_dir=tmp_path / "res")
    files = export.export_plotdata(tmp_path / "res")
    names = {f.name for f in files}
    assert names == {"F2_finals.csv", "F2_convergence.csv", "summary.csv"}
    rows = list(csv.reader(open(tmp_path / "res" / "plotdata" / "F2_finals.csv")))
    assert rows[0] == ["run", "final"] and len(rows) == 31
    conv = list(csv.reader(open(tmp_path / "res" / "plotdata" / "F2_convergence.csv")))
    assert len(conv) == 6 and len(conv[0]) == 31


def test_export_empty_is_error(tmp_path):
    with pytest.raises(export.ExportError):
        export.export_reports([], tmp_path)
    with pytest.raises(runner.ReportError):
        export.export_plotdata(tmp_path)


@pytest.mark.parametrize("pid,fname,ncol", [("antenna", "antenna_af.csv", 3), ("fm", "fm_wave.csv", 3)])
def test_export_realworld(tmp_path, pid, fname, ncol):
    spec = ExperimentSpec(problem_id=pid, suite="realworld", preset="realworld", population=5,
                          iterations=5, repeats=2)
    runner.run_experiment(spec, out_dir=tmp_path / pid)
    export.export_plotdata(tmp_path / pid, tmp_path / "plot")
    rows = list(csv.reader(open(tmp_path / "plot" / fname)))
    assert len(rows[0]) == ncol and len(rows) > 100
