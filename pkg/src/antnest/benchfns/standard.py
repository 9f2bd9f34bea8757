"""Classical unimodal (F1-F7) and multimodal (F8-F12) test functions.

Every base function takes a 1-D array ``z`` and returns a float. Shifted
evaluation maps ``x`` to ``z = x - shift + minimizer`` so that the global
optimum of the shifted function sits exactly on the shift vector.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

SCHWEFEL_MINIMIZER = 420.9687462275036
SCHWEFEL_MIN_PER_DIM = -418.9828872724338


def _out(v):
    """Float for a single point, array for a batch of points along axis 0."""
    return float(v) if np.ndim(v) == 0 else v


def sphere(z):
    z = np.asarray(z, dtype=float)
    return _out(np.sum(z * z, axis=-1))


def schwefel_2_22(z):
    a = np.abs(z)
    return float(np.sum(a) + np.prod(a))


def schwefel_1_2(z):
    c = np.cumsum(z)
    return float(np.dot(c, c))


def schwefel_2_21(z):
    return float(np.max(np.abs(z)))


def rosenbrock(z):
    head, tail = z[:-1], z[1:]
    return float(np.sum(100.0 * (tail - head * head) ** 2 + (head - 1.0) ** 2))


def step(z):
    f = np.floor(z + 0.5)
    return float(np.dot(f, f))


def quartic(z, rng=None):
    """Quartic with optional uniform [0, 1) noise drawn from ``rng``."""
    i = np.arange(1, len(z) + 1)
    value = float(np.sum(i * z**4))
    if rng is not None:
        value += float(rng.random())
    return value


def schwefel(z):
    return float(np.sum(-z * np.sin(np.sqrt(np.abs(z)))))


def rastrigin(z):
    z = np.asarray(z, dtype=float)
    return _out(np.sum(z * z - 10.0 * np.cos(2.0 * np.pi * z) + 10.0, axis=-1))


def ackley(z):
    # Grouped so that z == 0 gives exactly 0.0.
    z = np.asarray(z, dtype=float)
    n = z.shape[-1]
    e = np.exp(1.0)
    return _out(20.0 * (1.0 - np.exp(-0.2 * np.sqrt(np.sum(z * z, axis=-1) / n)))
                + (e - np.exp(np.sum(np.cos(2.0 * np.pi * z), axis=-1) / n)))


def griewank(z):
    z = np.asarray(z, dtype=float)
    i = np.arange(1, z.shape[-1] + 1)
    return _out(np.sum(z * z, axis=-1) / 4000.0 - np.prod(np.cos(z / np.sqrt(i)), axis=-1) + 1.0)


def u_penalty(x, a, k, m):
    """Boundary penalty; zero on the closed interval [-a, a]."""
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    hi = x > a
    lo = x < -a
    out[hi] = k * (x[hi] - a) ** m
    out[lo] = k * (-x[lo] - a) ** m
    return out


def penalized(z):
    n = len(z)
    y = 1.0 + (z + 1.0) / 4.0
    core = (10.0 * np.sin(np.pi * y[0]) ** 2
            + np.sum((y[:-1] - 1.0) ** 2 * (1.0 + 10.0 * np.sin(np.pi * y[1:]) ** 2))
            + (y[-1] - 1.0) ** 2)
    return float(np.pi / n * core + np.sum(u_penalty(z, 10.0, 100.0, 4)))


@dataclass(frozen=True)
class StandardFn:
    id: str
    name: str
    func: Callable
    lower: float
    upper: float
    shift: float | tuple
    minimizer: float
    f_min_per_dim: float = 0.0
    kind: str = "unimodal"
    benchmark: bool = True

    def shift_vector(self, dim: int) -> np.ndarray:
        if isinstance(self.shift, tuple):
            head, rest = self.shift
            out = np.full(dim, float(rest))
            out[0] = head
            return out
        return np.full(dim, float(self.shift))

    def f_min(self, dim: int) -> float:
        return self.f_min_per_dim * dim


STANDARD = {
    "F1": StandardFn("F1", "sphere", sphere, -100, 100, -30.0, 0.0),
    "F2": StandardFn("F2", "schwefel_2_22", schwefel_2_22, -10, 10, -3.0, 0.0),
    "F3": StandardFn("F3", "schwefel_1_2", schwefel_1_2, -100, 100, -30.0, 0.0),
    "F4": StandardFn("F4", "schwefel_2_21", schwefel_2_21, -100, 100, -30.0, 0.0),
    "F5": StandardFn("F5", "rosenbrock", rosenbrock, -30, 30, -15.0, 1.0),
    "F6": StandardFn("F6", "step", step, -100, 100, -750.0, 0.0, benchmark=False),
    "F7": StandardFn("F7", "quartic_noise", quartic, -1.28, 1.28, -0.25, 0.0),
    "F8": StandardFn("F8", "schwefel", schwefel, -500, 500, -300.0, SCHWEFEL_MINIMIZER,
                     SCHWEFEL_MIN_PER_DIM, kind="multimodal", benchmark=False),
    "F9": StandardFn("F9", "rastrigin", rastrigin, -5.12, 5.12, -2.0, 0.0, kind="multimodal"),
    "F10": StandardFn("F10", "ackley", ackley, -32, 32, 0.0, 0.0, kind="multimodal"),
    "F11": StandardFn("F11", "griewank", griewank, -600, 600, -400.0, 0.0, kind="multimodal"),
    # The shift column prints "[-30, 30, ... 30]": first component -30, the rest +30.
    "F12": StandardFn("F12", "penalized", penalized, -50, 50, (-30.0, 30.0), -1.0,
                      kind="multimodal"),
}


def eval_standard(id: str, x, shifted: bool = True, rng=None, noise: bool = True,
                  dim: int | None = None) -> float:
    """Evaluate standard function ``id`` at ``x``.

    F7's ``random[0, 1]`` term is drawn from ``rng`` when ``noise`` is set and
    an ``rng`` is supplied; otherwise the deterministic part is returned.
    """
    try:
        fn = STANDARD[id]
    except KeyError:
        raise KeyError(f"unknown standard function {id!r}") from None
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or x.size < 2:
        raise ValueError(f"{id}: expected a 1-D vector of length >= 2, got shape {x.shape}")
    if dim is not None and x.size != dim:
        raise ValueError(f"{id}: dimension mismatch, expected {dim} got {x.size}")
    z = x - fn.shift_vector(x.size) + fn.minimizer if shifted else x
    if id == "F7":
        return fn.func(z, rng if noise else None)
    return fn.func(z)
