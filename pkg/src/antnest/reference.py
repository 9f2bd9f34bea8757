"""Published reference tables shipped with the package.

``table3_means.csv`` / ``table3_std.csv``
    Mean and standard deviation of final fitness for ANA, DA, PSO and GA.
``table4_means.csv``
    Means for ANA and six PSO variants on the 20-dimensional problems.
``table_a5_finals.csv``
    Per-run finals of ANA and FDO, one ``<function>_<algorithm>`` column each.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path

import numpy as np


def path(name: str) -> Path:
    return Path(str(resources.files("antnest") / "data" / name))


def means_table(name: str = "table3_means.csv"):
    """(algorithms, functions, means matrix of shape functions x algorithms)."""
    from .harness.compare import read_reference_means
    algs, table = read_reference_means(path(name))
    functions = list(table)
    return algs, functions, np.array([[table[f][a] for a in algs] for f in functions])


def a5_finals() -> dict[str, np.ndarray]:
    """Per-run finals keyed by column name, e.g. ``"F5_ANA"``."""
    data = np.genfromtxt(path("table_a5_finals.csv"), delimiter=",", names=True)
    return {n: np.asarray(data[n], dtype=float) for n in data.dtype.names if n != "turn"}
