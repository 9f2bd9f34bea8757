"""CEC-C06 2019 ("100-digit challenge") test functions.

CEC01-CEC03 are never shifted or rotated. CEC04-CEC10 evaluate their base
function at ``z = M @ (rate * (x - o))`` where ``rate`` is the function's fixed
search-range shrink factor. Official shift/rotation data is not bundled: pass a
data file, otherwise a zero shift and identity rotation are used and the
function reports itself as unofficial. Every function is offset by +1 so its
global optimum value is 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .composite import weierstrass
from .standard import _out, ackley, griewank, rastrigin

LJ_OFFSET = 12.7120622568
SCHWEFEL_SHIFT = 4.209687462275036e2
SCHWEFEL_BIAS = 4.189828872724338e2


def storn_chebyshev(x):
    """Storn's Chebyshev polynomial fitting; ``x`` holds coefficients, highest degree first."""
    x = np.asarray(x, dtype=float)
    D = x.size
    a, b = 1.0, 1.2
    for _ in range(D - 2):
        a, b = b, 2.4 * b - a
    d = b  # T_{D-1}(1.2)
    u = np.polyval(x, 1.2)
    v = np.polyval(x, -1.2)
    p1 = (u - d) ** 2 if u < d else 0.0
    p2 = (v - d) ** 2 if v < d else 0.0
    m = 32 * D
    w = np.polyval(x, 2.0 * np.arange(m + 1) / m - 1.0)
    p3 = np.sum(np.where(w > 1.0, (w - 1.0) ** 2, 0.0) + np.where(w < -1.0, (w + 1.0) ** 2, 0.0))
    return float(p1 + p2 + p3)


def inverse_hilbert(x):
    x = np.asarray(x, dtype=float)
    n = int(round(np.sqrt(x.size)))
    if n * n != x.size:
        raise ValueError(f"inverse Hilbert needs a square dimension, got {x.size}")
    i = np.arange(n)
    H = 1.0 / (i[:, None] + i[None, :] + 1.0)
    W = H @ x.reshape(n, n) - np.eye(n)
    return float(np.sum(np.abs(W)))


def lennard_jones(x):
    x = np.asarray(x, dtype=float)
    k = x.size // 3
    atoms = x[: 3 * k].reshape(k, 3)
    total = 0.0
    for i in range(k - 1):
        d = atoms[i + 1:] - atoms[i]
        ud = np.sum(d * d, axis=1) ** 3
        close = ud <= 1.0e-10
        safe = np.where(close, 1.0, ud)
        total += float(np.sum(np.where(close, 1.0e20, (1.0 / safe - 2.0) / safe)))
    return LJ_OFFSET + total


def modified_schwefel(z):
    z = np.asarray(z, dtype=float) + SCHWEFEL_SHIFT
    n = z.shape[-1]
    az = np.abs(z)
    wrapped = 500.0 - np.fmod(az, 500.0)
    inside = -z * np.sin(np.sqrt(az))
    above = -wrapped * np.sin(np.sqrt(wrapped)) + ((z - 500.0) / 100.0) ** 2 / n
    below = (-(-500.0 + np.fmod(az, 500.0)) * np.sin(np.sqrt(wrapped))
             + ((z + 500.0) / 100.0) ** 2 / n)
    terms = np.where(z > 500.0, above, np.where(z < -500.0, below, inside))
    return _out(np.sum(terms, axis=-1) + SCHWEFEL_BIAS * n)


def expanded_schaffer_f6(z):
    z = np.asarray(z, dtype=float)
    b = np.roll(z, -1, axis=-1)
    s = z * z + b * b
    return _out(np.sum(0.5 + (np.sin(np.sqrt(s)) ** 2 - 0.5) / (1.0 + 0.001 * s) ** 2, axis=-1))


def happy_cat(z):
    z = np.asarray(z, dtype=float) - 1.0
    n = z.shape[-1]
    r2 = np.sum(z * z, axis=-1)
    return _out(np.abs(r2 - n) ** 0.25 + (0.5 * r2 + np.sum(z, axis=-1)) / n + 0.5)


@dataclass(frozen=True)
class CecSpec:
    id: str
    name: str
    func: object
    dim: int
    bound: float
    rate: float | None = None  # None: never shifted or rotated


CEC2019 = {
    "CEC01": CecSpec("CEC01", "Storn's Chebyshev polynomial fitting", storn_chebyshev, 9, 8192.0),
    "CEC02": CecSpec("CEC02", "Inverse Hilbert matrix", inverse_hilbert, 16, 16384.0),
    "CEC03": CecSpec("CEC03", "Lennard-Jones minimum energy cluster", lennard_jones, 18, 4.0),
    "CEC04": CecSpec("CEC04", "Rastrigin", rastrigin, 10, 100.0, 5.12 / 100.0),
    "CEC05": CecSpec("CEC05", "Griewangk", griewank, 10, 100.0, 600.0 / 100.0),
    "CEC06": CecSpec("CEC06", "Weierstrass", weierstrass, 10, 100.0, 0.5 / 100.0),
    "CEC07": CecSpec("CEC07", "Modified Schwefel", modified_schwefel, 10, 100.0, 1000.0 / 100.0),
    "CEC08": CecSpec("CEC08", "Expanded Schaffer F6", expanded_schaffer_f6, 10, 100.0, 1.0),
    "CEC09": CecSpec("CEC09", "Happy Cat", happy_cat, 10, 100.0, 5.0 / 100.0),
    "CEC10": CecSpec("CEC10", "Ackley", ackley, 10, 100.0, 1.0),
}


def load_shift_rotation(path, dim: int) -> tuple[np.ndarray, np.ndarray]:
    """Read a shift/rotation file: one line of ``dim`` shift values, then ``dim`` matrix rows."""
    lines = [ln for ln in Path(path).read_text(encoding="utf-8").splitlines() if ln.strip()]
    if len(lines) < dim + 1:
        raise ValueError(f"{path}: expected {dim + 1} non-empty lines, found {len(lines)}")
    rows = [[float(tok) for tok in ln.split()] for ln in lines[: dim + 1]]
    for lineno, row in enumerate(rows, start=1):
        if len(row) != dim:
            raise ValueError(f"{path}: line {lineno} has {len(row)} values, expected {dim}")
    return np.array(rows[0]), np.array(rows[1:])


def save_shift_rotation(path, shift, rotation) -> None:
    shift = np.asarray(shift, dtype=float)
    rotation = np.asarray(rotation, dtype=float)
    lines = [" ".join(repr(float(v)) for v in shift)]
    lines += [" ".join(repr(float(v)) for v in row) for row in rotation]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


@dataclass
class Cec2019Function:
    """Callable CEC-2019 objective carrying its shift and rotation data."""

    id: str
    shift: np.ndarray | None = None
    rotation: np.ndarray | None = None
    official: bool = False
    spec: CecSpec = field(init=False)

    def __post_init__(self):
        if self.id not in CEC2019:
            raise KeyError(f"unknown CEC-2019 function {self.id!r}")
        self.spec = CEC2019[self.id]
        dim = self.spec.dim
        if self.spec.rate is None:
            if self.shift is not None or self.rotation is not None:
                raise ValueError(f"{self.id} is never shifted or rotated")
            return
        self.shift = np.zeros(dim) if self.shift is None else np.asarray(self.shift, float)
        self.rotation = np.eye(dim) if self.rotation is None else np.asarray(self.rotation, float)
        if self.shift.shape != (dim,) or self.rotation.shape != (dim, dim):
            raise ValueError(f"{self.id}: shift/rotation must have shapes ({dim},) and ({dim}, {dim})")

    @classmethod
    def from_file(cls, id: str, path) -> "Cec2019Function":
        shift, rot = load_shift_rotation(path, CEC2019[id].dim)
        return cls(id, shift, rot, official=True)

    @property
    def dim(self) -> int:
        return self.spec.dim

    def __call__(self, x) -> float:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.spec.dim,):
            raise ValueError(f"{self.id}: expected dimension {self.spec.dim}, got shape {x.shape}")
        if self.spec.rate is None:
            return self.spec.func(x) + 1.0
        z = self.rotation @ (self.spec.rate * (x - self.shift))
        return self.spec.func(z) + 1.0

    def batch(self, X) -> np.ndarray:
        """Evaluate the rows of ``X`` (shape ``(n, dim)``) at once."""
        X = np.atleast_2d(np.asarray(X, dtype=float))
        if X.shape[1] != self.spec.dim:
            raise ValueError(f"{self.id}: expected {self.spec.dim} columns, got {X.shape[1]}")
        if self.spec.rate is None:
            return np.array([self.spec.func(x) for x in X]) + 1.0
        Z = (self.spec.rate * (X - self.shift)) @ self.rotation.T
        return np.asarray(self.spec.func(Z), dtype=float) + 1.0


def eval_cec2019(id: str, x, shift=None, rotation=None) -> float:
    return Cec2019Function(id, shift, rotation)(x)
