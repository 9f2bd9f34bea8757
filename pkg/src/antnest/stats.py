"""Descriptive statistics, ranking and two-sample hypothesis tests.

All tests return p-values as plain floats, two-sided unless stated. Degenerate
inputs for which a test is undefined raise :class:`UndefinedTestError` instead
of returning NaN.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np
from scipy import special
from scipy.stats import rankdata

EXACT_WILCOXON_MAX_N = 30

FUNCTION_TYPES = {
    "unimodal": ("F1", "F2", "F3", "F4", "F5", "F7"),
    "multimodal": ("F9", "F10", "F11", "F12"),
    "composite": ("F13", "F14", "F15", "F16", "F17", "F18"),
}


class UndefinedTestError(ValueError):
    """The requested statistic is undefined for this input (e.g. zero variance)."""


def _sample(values, name: str = "sample") -> np.ndarray:
    x = np.asarray(values, dtype=float).ravel()
    if x.size == 0:
        raise ValueError(f"{name} is empty")
    if not np.all(np.isfinite(x)):
        raise ValueError(f"{name} contains non-finite values")
    return x


def mean(values) -> float:
    x = _sample(values)
    return math.fsum(x) / x.size


def std(values) -> float:
    """Sample standard deviation (n - 1 denominator)."""
    x = _sample(values)
    if x.size < 2:
        raise UndefinedTestError("standard deviation needs at least 2 values")
    m = math.fsum(x) / x.size
    d = x - m
    return math.sqrt(math.fsum(d * d) / (x.size - 1))


def describe(values) -> tuple[float, float]:
    """(mean, sample std) of ``values``."""
    return mean(values), std(values)


# ---------------------------------------------------------------- ranking

def function_type(fn_id: str) -> str | None:
    if fn_id.startswith("CF"):
        fn_id = f"F{12 + int(fn_id[2:])}"
    for kind, ids in FUNCTION_TYPES.items():
        if fn_id in ids:
            return kind
    return None


@dataclass
class RankTable:
    algorithms: list[str]
    functions: list[str]
    means: np.ndarray
    ranks: np.ndarray  # functions x algorithms, 1 = smallest mean

    def place_counts(self) -> np.ndarray:
        """``counts[a, p]`` = number of functions where algorithm ``a`` placed ``p + 1``."""
        k = len(self.algorithms)
        out = np.zeros((k, k), dtype=int)
        for row in self.ranks:
            for a, r in enumerate(row):
                out[a, r - 1] += 1
        return out

    def group_totals(self, groups: dict | None = None) -> dict[str, tuple[np.ndarray, int]]:
        """Per function type: (rank sum per algorithm, number of functions), plus ``total``."""
        groups = FUNCTION_TYPES if groups is None else groups
        out = {}
        for kind, ids in groups.items():
            rows = [i for i, f in enumerate(self.functions) if f in ids]
            if rows:
                out[kind] = (self.ranks[rows].sum(axis=0), len(rows))
        out["total"] = (self.ranks.sum(axis=0), len(self.functions))
        return out

    def group_averages(self, groups: dict | None = None) -> dict[str, np.ndarray]:
        return {k: s / n for k, (s, n) in self.group_totals(groups).items()}


def rank(means, algorithms: Sequence[str], functions: Sequence[str]) -> RankTable:
    """Rank algorithms per function by ascending mean; ties share the smaller rank."""
    m = np.asarray(means, dtype=float)
    if m.shape != (len(functions), len(algorithms)):
        raise ValueError(f"means shape {m.shape} does not match "
                         f"{len(functions)} functions x {len(algorithms)} algorithms")
    missing = np.argwhere(~np.isfinite(m))
    if missing.size:
        f, a = missing[0]
        raise ValueError(f"missing mean for {algorithms[a]} on {functions[f]}")
    ranks = np.vstack([rankdata(row, method="min") for row in m]).astype(int)
    return RankTable(list(algorithms), list(functions), m, ranks)


# ---------------------------------------------------------------- t-tests

def _t_pvalue(t: float, df: float, tails: int) -> float:
    if tails not in (1, 2):
        raise ValueError(f"tails must be 1 or 2, got {tails}")
    if math.isinf(t):
        return 0.0
    p = float(special.betainc(df / 2.0, 0.5, df / (df + t * t)))
    # One-tailed: the tail in the direction of the observed difference.
    return min(1.0, p if tails == 2 else p / 2.0)


def student_t(a, b, tails: int = 2) -> float:
    """Two-sample, equal-variance t-test p-value (two-tailed unless ``tails=1``)."""
    a = _sample(a, "a")
    b = _sample(b, "b")
    na, nb = a.size, b.size
    if na < 2 or nb < 2:
        raise UndefinedTestError("Student's t-test needs at least 2 values per sample")
    ma, mb = mean(a), mean(b)
    ss = math.fsum((a - ma) ** 2) + math.fsum((b - mb) ** 2)
    df = na + nb - 2
    pooled = ss / df
    if pooled == 0.0:
        raise UndefinedTestError("Student's t-test undefined: pooled variance is zero")
    t = (ma - mb) / math.sqrt(pooled * (1.0 / na + 1.0 / nb))
    return _t_pvalue(t, df, tails)


def welch_t(a, b, tails: int = 2) -> float:
    """Welch t-test p-value with Welch-Satterthwaite degrees of freedom."""
    a = _sample(a, "a")
    b = _sample(b, "b")
    na, nb = a.size, b.size
    if na < 2 or nb < 2:
        raise UndefinedTestError("Welch's t-test needs at least 2 values per sample")
    va, vb = std(a) ** 2 / na, std(b) ** 2 / nb
    if va == 0.0 and vb == 0.0:
        raise UndefinedTestError("Welch's t-test undefined: both variances are zero")
    se2 = va + vb
    t = (mean(a) - mean(b)) / math.sqrt(se2)
    # Scale before squaring so tiny variances do not underflow.
    ra, rb = va / max(va, vb), vb / max(va, vb)
    df = (ra + rb) ** 2 / (ra * ra / (na - 1) + rb * rb / (nb - 1))
    return _t_pvalue(t, df, tails)


# ---------------------------------------------------------------- Wilcoxon

def _signed_ranks(a, b) -> tuple[np.ndarray, np.ndarray]:
    a = _sample(a, "a")
    b = _sample(b, "b")
    if a.shape != b.shape:
        raise ValueError(f"paired samples differ in length: {a.size} vs {b.size}")
    d = a - b
    d = d[d != 0.0]
    if d.size == 0:
        raise UndefinedTestError("Wilcoxon test undefined: all differences are zero")
    # Doubled average ranks are exact integers.
    ranks2 = np.rint(2.0 * rankdata(np.abs(d))).astype(np.int64)
    return d, ranks2


def _exact_counts(ranks2: Sequence[int]) -> list[int]:
    """``counts[s]`` = number of sign vectors whose positive doubled-rank sum is ``s``."""
    total = int(sum(ranks2))
    counts = [0] * (total + 1)
    counts[0] = 1
    reach = 0
    for r in ranks2:
        r = int(r)
        for s in range(reach, -1, -1):
            if counts[s]:
                counts[s + r] += counts[s]
        reach += r
    return counts


def wilcoxon_signed_rank(a, b) -> float:
    """Paired two-sided Wilcoxon signed-rank p-value.

    Zero differences are dropped and tied magnitudes get average ranks. For
    ``n <= 30`` the null distribution is enumerated exactly; beyond that a
    tie-corrected normal approximation is used.
    """
    d, ranks2 = _signed_ranks(a, b)
    n = d.size
    w2 = int(ranks2[d > 0].sum())
    if n <= EXACT_WILCOXON_MAX_N:
        counts = _exact_counts(ranks2)
        c_le = sum(counts[: w2 + 1])
        c_ge = sum(counts[w2:])
        return min(1.0, 2 * min(c_le, c_ge) / 2**n)
    w = w2 / 2.0
    mu = n * (n + 1) / 4.0
    _, tie_sizes = np.unique(ranks2, return_counts=True)
    var = n * (n + 1) * (2 * n + 1) / 24.0 - float(np.sum(tie_sizes**3 - tie_sizes)) / 48.0
    z = (w - mu) / math.sqrt(var)
    return min(1.0, math.erfc(abs(z) / math.sqrt(2.0)))


def wilcoxon_bruteforce(a, b) -> float:
    """Reference p-value by listing every sign vector; only practical for small n."""
    import itertools

    d, ranks2 = _signed_ranks(a, b)
    n = d.size
    w2 = int(ranks2[d > 0].sum())
    le = ge = 0
    for signs in itertools.product((0, 1), repeat=n):
        s = sum(r for r, on in zip(ranks2.tolist(), signs) if on)
        le += s <= w2
        ge += s >= w2
    return min(1.0, 2 * min(le, ge) / 2**n)


# ---------------------------------------------------------------- Shapiro-Wilk

_C1 = (0.0, 0.221157, -0.147981, -2.07119, 4.434685, -2.706056)
_C2 = (0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633)
_C3 = (0.544, -0.39978, 0.025054, -6.714e-4)
_C4 = (1.3822, -0.77857, 0.062767, -0.0020322)
_C5 = (-1.5861, -0.31082, -0.083751, 0.0038915)
_C6 = (-0.4803, -0.082676, 0.0030302)
_G = (-2.273, 0.459)


def _poly(c, x):
    return sum(ci * x**i for i, ci in enumerate(c))


def _shapiro_coefficients(n: int) -> np.ndarray:
    """Royston's approximate coefficients for the lower half of the order statistics."""
    nn2 = n // 2
    if n == 3:
        return np.array([math.sqrt(0.5)])
    i = np.arange(1, nn2 + 1)
    m = special.ndtri((i - 0.375) / (n + 0.25))
    summ2 = 2.0 * float(np.dot(m, m))
    ssumm2 = math.sqrt(summ2)
    rsn = 1.0 / math.sqrt(n)
    a = np.empty(nn2)
    a1 = _poly(_C1, rsn) - m[0] / ssumm2
    if n > 5:
        a2 = -m[1] / ssumm2 + _poly(_C2, rsn)
        fac = math.sqrt((summ2 - 2.0 * m[0] ** 2 - 2.0 * m[1] ** 2)
                        / (1.0 - 2.0 * a1**2 - 2.0 * a2**2))
        a[1] = a2
        start = 2
    else:
        fac = math.sqrt((summ2 - 2.0 * m[0] ** 2) / (1.0 - 2.0 * a1**2))
        start = 1
    a[0] = a1
    a[start:] = -m[start:] / fac
    return a


def shapiro_wilk_w(values) -> float:
    x = np.sort(_sample(values))
    n = x.size
    if n < 3:
        raise UndefinedTestError("Shapiro-Wilk needs at least 3 values")
    if n > 5000:
        raise ValueError("Shapiro-Wilk approximation is valid only up to n = 5000")
    if x[-1] == x[0]:
        raise UndefinedTestError("Shapiro-Wilk undefined for a constant sample")
    a = _shapiro_coefficients(n)
    nn2 = n // 2
    num = float(np.dot(a, x[::-1][:nn2] - x[:nn2])) ** 2
    d = x - mean(x)
    w = num / math.fsum(d * d)
    return min(w, 1.0)


def shapiro_wilk(values) -> float:
    """Shapiro-Wilk normality p-value via Royston's AS R94 approximation."""
    w = shapiro_wilk_w(values)
    n = np.asarray(values).size
    if n == 3:
        pw = 6.0 / math.pi * (math.asin(math.sqrt(w)) - math.pi / 3.0)
        return max(pw, 0.0)
    w1 = math.log(1.0 - w) if w < 1.0 else -math.inf
    if n <= 11:
        gamma = _poly(_G, n)
        if w1 >= gamma:
            return 1e-99
        w1 = -math.log(gamma - w1)
        mu = _poly(_C3, n)
        s = math.exp(_poly(_C4, n))
    else:
        ln = math.log(n)
        mu = _poly(_C5, ln)
        s = math.exp(_poly(_C6, ln))
    return float(special.ndtr(-(w1 - mu) / s))


# ---------------------------------------------------------------- Levene

def levene(a, b) -> float:
    """Levene's test for equal variances (deviations from group means)."""
    groups = [_sample(a, "a"), _sample(b, "b")]
    if any(g.size < 2 for g in groups):
        raise UndefinedTestError("Levene's test needs at least 2 values per sample")
    z = [np.abs(g - mean(g)) for g in groups]
    if all(not zi.any() for zi in z):
        raise UndefinedTestError("Levene's test undefined: no deviation in either sample")
    k = len(z)
    n_total = sum(zi.size for zi in z)
    zbar_i = [mean(zi) for zi in z]
    zbar = math.fsum(math.fsum(zi) for zi in z) / n_total
    between = math.fsum(zi.size * (m - zbar) ** 2 for zi, m in zip(z, zbar_i))
    within = math.fsum(math.fsum((zi - m) ** 2) for zi, m in zip(z, zbar_i))
    if within == 0.0:
        return 0.0 if between > 0.0 else 1.0
    f = (n_total - k) / (k - 1) * between / within
    return float(min(1.0, special.fdtrc(k - 1, n_total - k, f)))


# ---------------------------------------------------------------- box plot data

class FiveNumber(NamedTuple):
    min: float
    q1: float
    median: float
    q3: float
    max: float


def box_whisker(values) -> FiveNumber:
    """Five-number summary with quartiles by linear interpolation of order statistics."""
    x = _sample(values)
    q = np.percentile(x, [0, 25, 50, 75, 100], method="linear")
    return FiveNumber(*(float(v) for v in q))
