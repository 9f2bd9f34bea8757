"""Engineering fitness problems: antenna-array sidelobe level and FM synthesis matching."""

from __future__ import annotations

import numpy as np

from .core import Problem

# Antenna array: four free element positions plus one fixed element, in wavelengths.
FIXED_ELEMENT = 2.25
STEER_DEG = 90.0
SPACING_MIN = 0.25
POSITION_MIN = 0.125
PENALTY = 1.0e3
N_THETA = 2001
PUBLISHED_SOLUTION = (1.5959, 0.3081, 0.8747, 0.6072)

# FM synthesis.
FM_THETA = 2.0 * np.pi / 100.0
FM_TARGET = (1.0, 5.0, 1.5, 4.8, 2.0, 4.9)
FM_LOWER = -6.4
FM_UPPER = 6.35
FM_T = np.arange(101)


def _cos_steer(steer_deg: float) -> float:
    # cos(pi/2) is 6e-17 in floating point; the broadside case is pinned to 0.
    return 0.0 if steer_deg == 90.0 else float(np.cos(np.deg2rad(steer_deg)))


def theta_grid(n: int = N_THETA) -> np.ndarray:
    """Uniform angle grid over [0, 180] degrees, always containing 90."""
    return np.linspace(0.0, 180.0, n)


def array_factor(x, theta_deg, steer_deg: float = STEER_DEG):
    """Array factor of the symmetric aperiodic array at angle(s) ``theta_deg``."""
    x = np.asarray(x, dtype=float)
    theta = np.asarray(theta_deg, dtype=float)
    cos_t = np.cos(np.deg2rad(theta))
    cos_t = np.where(theta == 90.0, 0.0, cos_t)
    u = cos_t - _cos_steer(steer_deg)
    pos = np.append(x, FIXED_ELEMENT)
    af = np.sum(np.cos(2.0 * np.pi * pos[:, None] * np.atleast_1d(u)[None, :]), axis=0)
    return float(af[0]) if np.ndim(theta) == 0 else af


def main_lobe_span(mag: np.ndarray, center: int) -> tuple[int, int]:
    """Indices of the first local minimum of ``mag`` on each side of ``center``."""
    lo = center
    while lo > 0 and mag[lo - 1] <= mag[lo]:
        lo -= 1
    hi = center
    while hi < mag.size - 1 and mag[hi + 1] <= mag[hi]:
        hi += 1
    return lo, hi


def peak_sidelobe_db(x, n_theta: int = N_THETA, exclude_main_lobe: bool = True) -> float:
    """Peak of ``20 log10 |AF|`` outside the main lobe.

    Samples where ``|AF| == 0`` give ``-inf`` and never win the max. When the
    main lobe covers the whole grid, the full grid is used instead.
    """
    theta = theta_grid(n_theta)
    mag = np.abs(array_factor(x, theta))
    keep = np.ones(theta.size, dtype=bool)
    if exclude_main_lobe:
        center = int(np.argmin(np.abs(theta - STEER_DEG)))
        lo, hi = main_lobe_span(mag, center)
        keep[lo:hi + 1] = False
        if not keep.any():
            keep[:] = True
    with np.errstate(divide="ignore"):
        db = 20.0 * np.log10(mag[keep])
    return float(np.max(db))


def antenna_violations(x) -> list[float]:
    """Magnitude of each violated constraint (0 for a violation exactly on a boundary)."""
    x = np.asarray(x, dtype=float)
    out = []
    for xi in x:
        if xi <= 0.0:
            out.append(-xi)
        if xi >= FIXED_ELEMENT:
            out.append(xi - FIXED_ELEMENT)
    for i in range(x.size):
        for j in range(i + 1, x.size):
            gap = abs(x[i] - x[j])
            if gap <= SPACING_MIN:
                out.append(SPACING_MIN - gap)
    if x.min() <= POSITION_MIN:
        out.append(POSITION_MIN - x.min())
    return out


def is_feasible(x) -> bool:
    return not antenna_violations(x)


def antenna_penalty(x) -> float:
    v = antenna_violations(x)
    if not v:
        return 0.0
    return PENALTY * (len(v) + float(sum(v)))


def antenna_fitness(x, n_theta: int = N_THETA, exclude_main_lobe: bool = True) -> float:
    """Peak sidelobe level in dB plus the static constraint penalty."""
    return peak_sidelobe_db(x, n_theta, exclude_main_lobe) + antenna_penalty(x)


def random_feasible_designs(rng, n: int) -> np.ndarray:
    """Rejection-sample ``n`` feasible antenna designs."""
    out = []
    while len(out) < n:
        x = rng.uniform(POSITION_MIN, FIXED_ELEMENT, size=4)
        if is_feasible(x):
            out.append(x)
    return np.array(out)


def af_sweep(x, n_theta: int = N_THETA):
    """(theta_deg, af, af_db) arrays over the full grid, for export."""
    theta = theta_grid(n_theta)
    af = array_factor(x, theta)
    with np.errstate(divide="ignore"):
        af_db = 20.0 * np.log10(np.abs(af))
    return theta, af, af_db


def fm_wave(p, t, outer_theta: bool = False):
    """Nested-sine FM wave at sample(s) ``t``.

    With ``outer_theta`` the outermost phase becomes ``w1 * t * theta``.
    """
    a1, w1, a2, w2, a3, w3 = np.asarray(p, dtype=float)
    t = np.asarray(t, dtype=float)
    th = FM_THETA
    outer = w1 * t * th if outer_theta else w1 * t
    return a1 * np.sin(outer + a2 * np.sin(w2 * t * th + a3 * np.sin(w3 * t * th)))


def fm_fitness(p, outer_theta: bool = False) -> float:
    y = fm_wave(p, FM_T, outer_theta)
    y0 = fm_wave(FM_TARGET, FM_T, outer_theta)
    d = y - y0
    return float(np.dot(d, d))


def fm_waveforms(p, outer_theta: bool = False):
    """(t, y, y_target) arrays, for export."""
    return FM_T.copy(), fm_wave(p, FM_T, outer_theta), fm_wave(FM_TARGET, FM_T, outer_theta)


class _FmObjective:
    def __init__(self, outer_theta: bool):
        self.outer_theta = outer_theta

    def __call__(self, p):
        return fm_fitness(p, self.outer_theta)


class _AntennaObjective:
    def __init__(self, n_theta: int):
        self.n_theta = n_theta

    def __call__(self, x):
        return antenna_fitness(x, self.n_theta)


def make_realworld_problem(id: str, outer_theta: bool = False, n_theta: int = N_THETA) -> Problem:
    if id == "antenna":
        return Problem(4, 0.0, FIXED_ELEMENT, _AntennaObjective(n_theta), name="antenna")
    if id == "fm":
        name = "fm-outer-theta" if outer_theta else "fm"
        return Problem(6, FM_LOWER, FM_UPPER, _FmObjective(outer_theta), name=name)
    raise KeyError(f"unknown real-world problem {id!r}; expected 'antenna' or 'fm'")
