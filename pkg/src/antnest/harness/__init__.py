"""Experiment harness: spec files, seeded repeated runs, comparison and plot-data export."""

from .compare import compare_report
from .export import export_plotdata
from .runner import load_report, run_experiment
from .spec import ExperimentSpec, SpecError, load_spec

__all__ = ["ExperimentSpec", "SpecError", "compare_report", "export_plotdata", "load_report",
           "load_spec", "run_experiment"]
