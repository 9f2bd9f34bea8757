"""Composite test functions CF1-CF6 (F13-F18).

Each composite blends ten shifted, stretched basic functions:

    F(x) = sum_i w_i * (C * f_i((x - o_i) / lambda_i) / |f_max_i| + bias_i)

with Gaussian proximity weights ``exp(-|x - o_i|^2 / (2 D sigma_i^2))``. All
but the largest weight are damped by ``1 - max(w)^10`` and the weights are
normalized to sum to one. Components are unrotated. The optima ``o_i`` come
from a frozen table (``data/composite_optima.csv``) that
:func:`generate_optima` reproduces from ``OPTIMA_SEED``.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

import numpy as np

from .standard import _out, ackley, griewank, rastrigin, sphere

DIM = 10
C = 2000.0
BIAS = np.arange(10) * 100.0
OPTIMA_SEED = 20211127
BOUND = 5.0


def weierstrass(z, a=0.5, b=3.0, kmax=20):
    """Weierstrass function, written per term so that z == 0 gives exactly 0.0."""
    k = np.arange(kmax + 1)
    ak = a**k
    bk = b**k
    z = np.asarray(z, dtype=float)
    inner = np.cos(2.0 * np.pi * bk * (z[..., None] + 0.5))
    return _out(np.sum(ak * (inner - np.cos(np.pi * bk)), axis=(-2, -1)))


@dataclass(frozen=True)
class CompositeSpec:
    cf_id: str
    components: tuple
    sigma: tuple
    lam: tuple

    @property
    def alias(self) -> str:
        return f"F{12 + int(self.cf_id[2:])}"


def _ten(x):
    return (x,) * 10


_MIXED_A = (ackley, ackley, rastrigin, rastrigin, weierstrass, weierstrass,
            griewank, griewank, sphere, sphere)
_MIXED_B = (rastrigin, rastrigin, weierstrass, weierstrass, griewank, griewank,
            ackley, ackley, sphere, sphere)

COMPOSITES = {
    "CF1": CompositeSpec("CF1", _ten(sphere), _ten(1.0), _ten(5 / 100)),
    "CF2": CompositeSpec("CF2", _ten(griewank), _ten(1.0), _ten(5 / 100)),
    "CF3": CompositeSpec("CF3", _ten(griewank), _ten(1.0), _ten(1.0)),
    "CF4": CompositeSpec("CF4", _MIXED_A, _ten(1.0),
                         (5 / 32, 5 / 32, 1.0, 1.0, 5 / 0.5, 5 / 0.5,
                          5 / 100, 5 / 100, 5 / 100, 5 / 100)),
    "CF5": CompositeSpec("CF5", _MIXED_B, _ten(1.0),
                         (1 / 5, 1 / 5, 5 / 0.5, 5 / 0.5, 5 / 100, 5 / 100,
                          5 / 32, 5 / 32, 5 / 100, 5 / 100)),
    "CF6": CompositeSpec("CF6", _MIXED_B,
                         (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0),
                         (0.1 * 1 / 5, 0.2 * 1 / 5, 0.3 * 5 / 0.5, 0.4 * 5 / 0.5,
                          0.5 * 5 / 100, 0.6 * 5 / 100, 0.7 * 5 / 32, 0.8 * 5 / 32,
                          0.9 * 5 / 100, 1 * 5 / 100)),
}

ALIASES = {spec.alias: cf for cf, spec in COMPOSITES.items()}


def generate_optima(seed: int = OPTIMA_SEED) -> dict[str, np.ndarray]:
    """Draw the component optima: for each CF in order, a 10x10 uniform [-5, 5] block."""
    rng = np.random.default_rng(seed)
    return {cf: rng.uniform(-BOUND, BOUND, size=(10, DIM)) for cf in COMPOSITES}


@lru_cache(maxsize=1)
def _optima_table() -> dict[str, np.ndarray]:
    rows: dict[str, list] = {cf: [None] * 10 for cf in COMPOSITES}
    text = resources.files("antnest.benchfns").joinpath("data/composite_optima.csv")
    with text.open("r", encoding="utf-8") as fh:
        for rec in csv.DictReader(fh):
            vec = [float(rec[f"x{d}"]) for d in range(DIM)]
            rows[rec["cf"]][int(rec["component"])] = vec
    out = {}
    for cf, vecs in rows.items():
        arr = np.array(vecs, dtype=float)
        arr.flags.writeable = False
        out[cf] = arr
    return out


def optima(cf_id: str) -> np.ndarray:
    return _optima_table()[_resolve(cf_id)]


def write_optima_table(path, seed: int = OPTIMA_SEED) -> None:
    table = generate_optima(seed)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["cf", "component"] + [f"x{d}" for d in range(DIM)])
        for cf, arr in table.items():
            for i, vec in enumerate(arr):
                w.writerow([cf, i] + [repr(float(v)) for v in vec])


def _resolve(cf_id: str) -> str:
    if cf_id in COMPOSITES:
        return cf_id
    if cf_id in ALIASES:
        return ALIASES[cf_id]
    raise KeyError(f"unknown composite function {cf_id!r}")


@lru_cache(maxsize=None)
def _fmax(cf_id: str) -> tuple:
    spec = COMPOSITES[cf_id]
    x_max = np.full(DIM, BOUND)
    return tuple(abs(f(x_max / lam)) for f, lam in zip(spec.components, spec.lam))


def composite_weights(cf_id: str, x) -> np.ndarray:
    """Adjusted, normalized component weights at ``x`` (sum to one)."""
    cf = _resolve(cf_id)
    spec = COMPOSITES[cf]
    x = np.asarray(x, dtype=float)
    o = optima(cf)
    sigma = np.asarray(spec.sigma)
    sq = np.sum((x[None, :] - o) ** 2, axis=1)
    # Work in log space so the weights never all underflow to zero.
    logw = -sq / (2.0 * DIM * sigma**2)
    top = logw.max()
    is_max = logw == top
    w_max = np.exp(top)
    rel = np.exp(logw - top)
    rel = np.where(is_max, rel, rel * (1.0 - w_max**10))
    return rel / rel.sum()


def eval_composite(cf_id: str, x) -> float:
    cf = _resolve(cf_id)
    spec = COMPOSITES[cf]
    x = np.asarray(x, dtype=float)
    if x.shape != (DIM,):
        raise ValueError(f"{cf}: composite functions are {DIM}-dimensional, got shape {x.shape}")
    w = composite_weights(cf, x)
    o = optima(cf)
    fmax = _fmax(cf)
    total = 0.0
    for i, (f, lam) in enumerate(zip(spec.components, spec.lam)):
        if w[i] == 0.0:
            continue
        total += w[i] * (C * f((x - o[i]) / lam) / fmax[i] + BIAS[i])
    return float(total)
