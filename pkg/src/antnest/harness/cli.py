"""Command-line entry point: ``antnest run|compare|export|list-problems``."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path


from ..benchfns.problems import list_problems
from .compare import CompareError, compare_report, write_comparison
from .export import ExportError, export_plotdata
from .runner import ReportError, run_experiment
from .spec import SpecError, load_spec


def _cmd_run(args) -> int:
    spec = load_spec(args.spec)
    spec = spec.with_overrides(base_seed=args.seed, repeats=args.repeats,
                               population=args.population, iterations=args.iterations,
                               jobs=args.jobs, output=args.out)
    out = spec.output or str(Path("results") / spec.name)
    report = run_experiment(spec, out_dir=out)
    agg = report["aggregate"]
    std = "n/a" if agg["std"] is None else f"{agg['std']:.6g}"
    mean = "n/a" if agg["mean"] is None else f"{agg['mean']:.6g}"
    print(f"{spec.name}: {agg['n']}/{spec.repeats} runs, mean {mean}, std {std} -> {out}")
    for f in report["failures"]:
        print(f"  run {f['run']} (seed {f['seed']}) failed: {f['error']}", file=sys.stderr)
    return 1 if report["failures"] else 0


def _cmd_compare(args) -> int:
    cmp = compare_report(args.result_dirs, reference=args.reference,
                         reference_finals=args.reference_finals)
    t = cmp.table
    width = max(len(a) for a in t.algorithms) + 2
    label = 16
    print("function".ljust(label) + "".join(a.rjust(width) for a in t.algorithms))
    for f, row in zip(t.functions, t.ranks):
        print(f.ljust(label) + "".join(str(int(r)).rjust(width) for r in row))
    for group, avg in cmp.rank_averages().items():
        print(f"avg {group}".ljust(label) + "".join(f"{v:.2f}".rjust(width) for v in avg))
    if cmp.pvalues:
        print("\nfunction  set_a  set_b  student_t  welch_t  wilcoxon")
        for row in cmp.pvalues:
            vals = ["-" if row[k] is None else f"{row[k]:.6g}"
                    for k in ("student_t", "welch_t", "wilcoxon")]
            print(f"{row['function']}  {row['set_a']}  {row['set_b']}  " + "  ".join(vals))
    if args.out:
        write_comparison(cmp, args.out)
        print(f"\nwritten to {args.out}")
    return 0


def _cmd_export(args) -> int:
    if not args.plotdata:
        print("export: nothing selected (use --plotdata)", file=sys.stderr)
        return 2
    files = export_plotdata(args.result_dir, args.out)
    for f in files:
        print(f)
    return 0


def _cmd_list(args) -> int:
    for suite, pid, desc in list_problems():
        print(f"{suite:10s} {pid:8s} {desc}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="antnest", description=__doc__)
    p.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="run an experiment spec")
    r.add_argument("spec", help="experiment spec file (INI)")
    r.add_argument("--seed", type=int, help="base seed; run k uses seed + k")
    r.add_argument("--repeats", type=int)
    r.add_argument("--population", type=int)
    r.add_argument("--iterations", type=int)
    r.add_argument("--jobs", type=int, help="worker processes")
    r.add_argument("--out", help="output directory (default results/<name>)")
    r.set_defaults(func=_cmd_run)

    c = sub.add_parser("compare", help="rank result sets and test them pairwise")
    c.add_argument("result_dirs", nargs="+")
    c.add_argument("--reference", help="wide CSV of reference means (function,<alg>,...)")
    c.add_argument("--reference-finals", help="CSV of per-run finals, columns <function>_<alg>")
    c.add_argument("--out", help="directory for ranks/pvalues CSVs")
    c.set_defaults(func=_cmd_compare)

    e = sub.add_parser("export", help="export plot data from a result directory")
    e.add_argument("result_dir")
    e.add_argument("--plotdata", action="store_true", help="box-whisker and convergence CSVs")
    e.add_argument("--out", help="output directory (default <result_dir>/plotdata)")
    e.set_defaults(func=_cmd_export)

    ls = sub.add_parser("list-problems", help="list selectable problems")
    ls.set_defaults(func=_cmd_list)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (SpecError, ReportError, CompareError, ExportError, KeyError, FileNotFoundError) as exc:
        print(f"antnest: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
