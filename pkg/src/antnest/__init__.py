"""Ant Nesting Algorithm optimizer, benchmark suites, statistics and experiment harness."""

from .core import (AnaConfig, Ant, Direction, ObjectiveError, Problem, RMode, RunResult,
                   SwarmState, TendencyMode, run)

__all__ = [
    "AnaConfig", "Ant", "Direction", "ObjectiveError", "Problem", "RMode", "RunResult",
    "SwarmState", "TendencyMode", "run",
]

__version__ = "0.1.0"
