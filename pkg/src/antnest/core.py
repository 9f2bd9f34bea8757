"""Ant Nesting Algorithm (ANA) optimizer.

Each worker ant holds its current and previous deposition positions. Every
iteration, each ant draws a Levy-distributed factor ``r`` in [-1, 1] and moves
towards the swarm-wide best position with a step scaled by the deposition
weight, the ratio of its current and previous tendency rates. A move is kept
only when it strictly improves the ant's fitness.

Typical use::

    problem = Problem(dimension=10, lower_bounds=-100.0, upper_bounds=100.0,
                      objective=lambda x: float(np.sum(x**2)))
    result = run(problem, AnaConfig(population=30, iterations=500, seed=1))
"""

from __future__ import annotations

import dataclasses
import enum
import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Callable

import numpy as np

logger = logging.getLogger(__name__)

RandomSource = np.random.Generator


class Direction(str, enum.Enum):
    MINIMIZE = "minimize"
    MAXIMIZE = "maximize"


class RMode(str, enum.Enum):
    SCALAR_PER_ANT = "scalar_per_ant"
    VECTOR_PER_DIMENSION = "vector_per_dimension"


class TendencyMode(str, enum.Enum):
    PER_DIMENSION = "per_dimension"
    EUCLIDEAN_NORM = "euclidean_norm"


class ObjectiveError(ValueError):
    """Raised when an objective returns a non-finite value where one is required."""


@dataclass
class Problem:
    """A box-bounded single-objective problem.

    ``lower_bounds``/``upper_bounds`` accept scalars (broadcast to every
    dimension) or sequences of length ``dimension``. When ``noisy`` is set the
    objective is called as ``objective(x, rng)`` so stochastic terms draw from
    the run's random source.
    """

    dimension: int
    lower_bounds: Any
    upper_bounds: Any
    objective: Callable[..., float]
    direction: Direction = Direction.MINIMIZE
    name: str = "problem"
    noisy: bool = False

    def __post_init__(self):
        if int(self.dimension) != self.dimension or self.dimension < 1:
            raise ValueError(f"dimension must be a positive integer, got {self.dimension!r}")
        self.dimension = int(self.dimension)
        self.lower_bounds = _as_bounds(self.lower_bounds, self.dimension, "lower_bounds")
        self.upper_bounds = _as_bounds(self.upper_bounds, self.dimension, "upper_bounds")
        if not np.all(self.lower_bounds < self.upper_bounds):
            raise ValueError("lower_bounds must be strictly below upper_bounds in every dimension")
        self.direction = Direction(self.direction)

    def evaluate(self, x: np.ndarray, rng: RandomSource | None = None) -> float:
        if self.noisy:
            return float(self.objective(x, rng))
        return float(self.objective(x))

    def better(self, a: float, b: float) -> bool:
        """True when fitness ``a`` strictly improves on ``b``."""
        if self.direction is Direction.MINIMIZE:
            return a < b
        return a > b


def _as_bounds(value, dimension: int, label: str) -> np.ndarray:
    arr = np.asarray(value, dtype=float)
    if arr.ndim == 0:
        arr = np.full(dimension, float(arr))
    if arr.shape != (dimension,):
        raise ValueError(f"{label} must have length {dimension}, got shape {arr.shape}")
    return arr.copy()


@dataclass(frozen=True)
class AnaConfig:
    population: int = 30
    iterations: int = 500
    seed: int = 0
    r_mode: RMode = RMode.SCALAR_PER_ANT
    tendency_mode: TendencyMode = TendencyMode.PER_DIMENSION
    epsilon_guard: float = 1e-12
    levy_beta: float = 1.5

    def __post_init__(self):
        object.__setattr__(self, "r_mode", RMode(self.r_mode))
        object.__setattr__(self, "tendency_mode", TendencyMode(self.tendency_mode))
        if self.population < 2:
            raise ValueError(f"population must be >= 2, got {self.population}")
        if self.iterations < 1:
            raise ValueError(f"iterations must be >= 1, got {self.iterations}")
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if not self.epsilon_guard > 0:
            raise ValueError(f"epsilon_guard must be positive, got {self.epsilon_guard}")
        if not 1 < self.levy_beta <= 2:
            raise ValueError(f"levy_beta must lie in (1, 2], got {self.levy_beta}")

    def to_dict(self) -> dict:
        out = dataclasses.asdict(self)
        out["r_mode"] = self.r_mode.value
        out["tendency_mode"] = self.tendency_mode.value
        return out


@dataclass
class Ant:
    position: np.ndarray
    prev_position: np.ndarray
    fitness: float
    prev_fitness: float


@dataclass
class SwarmState:
    ants: list[Ant]
    best_position: np.ndarray
    best_fitness: float
    iteration: int = 0
    evaluations: int = 0
    nonfinite_rejections: int = 0

    def copy(self) -> "SwarmState":
        return SwarmState(
            ants=[
                Ant(a.position.copy(), a.prev_position.copy(), a.fitness, a.prev_fitness)
                for a in self.ants
            ],
            best_position=self.best_position.copy(),
            best_fitness=self.best_fitness,
            iteration=self.iteration,
            evaluations=self.evaluations,
            nonfinite_rejections=self.nonfinite_rejections,
        )


@dataclass
class RunResult:
    best_trace: np.ndarray
    final_position: np.ndarray
    final_fitness: float
    seed: int
    evaluations: int
    nonfinite_rejections: int = 0
    config: dict = field(default_factory=dict)


def make_rng(seed: int) -> RandomSource:
    return np.random.default_rng(seed)


@lru_cache(maxsize=None)
def mantegna_sigma(beta: float) -> float:
    num = math.gamma(1 + beta) * math.sin(math.pi * beta / 2)
    den = math.gamma((1 + beta) / 2) * beta * 2 ** ((beta - 1) / 2)
    return (num / den) ** (1 / beta)


def levy_r(rng: RandomSource, beta: float = 1.5, size: int | None = None):
    """Levy step from Mantegna's algorithm, hard-clamped into [-1, 1].

    Returns a float, or an array of ``size`` independent draws.
    """
    if not 1 < beta <= 2:
        raise ValueError(f"beta must lie in (1, 2], got {beta}")
    n = 1 if size is None else size
    u = rng.normal(0.0, mantegna_sigma(beta), n)
    v = rng.normal(0.0, 1.0, n)
    step = np.clip(u / np.abs(v) ** (1 / beta), -1.0, 1.0)
    if size is None:
        return float(step[0])
    return step


def tendency(a_pos, b_pos, a_fit: float, b_fit: float,
             mode: TendencyMode = TendencyMode.PER_DIMENSION) -> np.ndarray:
    """Tendency rate between two evaluated points.

    Each dimension (or the whole displacement, in ``euclidean_norm`` mode)
    forms a right triangle with the fitness difference. The radicand can go
    negative, so its absolute value is used.
    """
    diff = np.asarray(a_pos, dtype=float) - np.asarray(b_pos, dtype=float)
    dfit_sq = (a_fit - b_fit) ** 2
    if TendencyMode(mode) is TendencyMode.EUCLIDEAN_NORM:
        value = math.sqrt(abs(float(np.dot(diff, diff)) - dfit_sq))
        return np.full(diff.shape, value)
    return np.sqrt(np.abs(diff * diff - dfit_sq))


def deposition_weight(T, T_prev, r, direction: Direction = Direction.MINIMIZE,
                      epsilon_guard: float = 1e-12) -> tuple[np.ndarray, np.ndarray]:
    """Deposition weight ``r * T / T_prev`` (minimize) or ``r * T_prev / T`` (maximize).

    Returns ``(dw, degenerate)``; components whose denominator magnitude is
    below ``epsilon_guard`` are flagged in ``degenerate`` and set to 0 in ``dw``.
    """
    T = np.asarray(T, dtype=float)
    T_prev = np.asarray(T_prev, dtype=float)
    r = np.broadcast_to(np.asarray(r, dtype=float), T.shape)
    if Direction(direction) is Direction.MINIMIZE:
        num, den = T, T_prev
    else:
        num, den = T_prev, T
    degenerate = np.abs(den) < epsilon_guard
    safe_den = np.where(degenerate, 1.0, den)
    dw = np.where(degenerate, 0.0, r * (num / safe_den))
    return dw, degenerate


def position_delta(ant: Ant, best_position: np.ndarray, best_fitness: float, r,
                   config: AnaConfig, direction: Direction = Direction.MINIMIZE) -> np.ndarray:
    """Rate of change for one ant, following the three-way branch of the pseudocode."""
    r = np.broadcast_to(np.asarray(r, dtype=float), ant.position.shape)
    if np.array_equal(ant.position, best_position):
        return r * ant.position
    toward_best = best_position - ant.position
    if np.array_equal(ant.position, ant.prev_position):
        return r * toward_best
    T = tendency(best_position, ant.position, best_fitness, ant.fitness, config.tendency_mode)
    T_prev = tendency(best_position, ant.prev_position, best_fitness, ant.prev_fitness,
                      config.tendency_mode)
    dw, degenerate = deposition_weight(T, T_prev, r, direction, config.epsilon_guard)
    if degenerate.any():
        dw = np.where(degenerate, r, dw)
    return dw * toward_best


def clamp_to_bounds(pos, problem: Problem) -> np.ndarray:
    return np.clip(pos, problem.lower_bounds, problem.upper_bounds)


def _draw_r(rng: RandomSource, config: AnaConfig, dimension: int):
    if config.r_mode is RMode.VECTOR_PER_DIMENSION:
        return levy_r(rng, config.levy_beta, size=dimension)
    return levy_r(rng, config.levy_beta)


def init_swarm(problem: Problem, config: AnaConfig, rng: RandomSource) -> SwarmState:
    lo, hi = problem.lower_bounds, problem.upper_bounds
    ants = []
    for _ in range(config.population):
        pos = lo + rng.random(problem.dimension) * (hi - lo)
        pos = np.clip(pos, lo, hi)
        fit = problem.evaluate(pos, rng)
        if not math.isfinite(fit):
            raise ObjectiveError(
                f"{problem.name}: objective returned {fit!r} at initial point {pos.tolist()}")
        ants.append(Ant(pos, pos.copy(), fit, fit))
    best = ants[0]
    for ant in ants[1:]:
        if problem.better(ant.fitness, best.fitness):
            best = ant
    return SwarmState(ants=ants, best_position=best.position.copy(),
                      best_fitness=best.fitness, evaluations=config.population)


def step(state: SwarmState, problem: Problem, config: AnaConfig, rng: RandomSource) -> SwarmState:
    """Advance the swarm one iteration in place and return it."""
    for ant in state.ants:
        r = _draw_r(rng, config, problem.dimension)
        delta = position_delta(ant, state.best_position, state.best_fitness, r, config,
                               problem.direction)
        candidate = clamp_to_bounds(ant.position + delta, problem)
        cand_fit = problem.evaluate(candidate, rng)
        state.evaluations += 1
        if not math.isfinite(cand_fit):
            state.nonfinite_rejections += 1
            continue
        if problem.better(cand_fit, ant.fitness):
            ant.prev_position, ant.prev_fitness = ant.position, ant.fitness
            ant.position, ant.fitness = candidate, cand_fit
            if problem.better(cand_fit, state.best_fitness):
                state.best_position = candidate.copy()
                state.best_fitness = cand_fit
    state.iteration += 1
    return state


def run(problem: Problem, config: AnaConfig, callback: Callable[[SwarmState], None] | None = None
        ) -> RunResult:
    """Initialize a swarm and run ``config.iterations`` steps.

    The result depends only on ``problem`` and ``config`` (the seed included).
    ``callback`` is invoked with the live state after every step.
    """
    rng = make_rng(config.seed)
    state = init_swarm(problem, config, rng)
    trace = np.empty(config.iterations)
    for t in range(config.iterations):
        step(state, problem, config, rng)
        trace[t] = state.best_fitness
        if callback is not None:
            callback(state)
    if state.nonfinite_rejections:
        logger.warning("%s: %d candidate(s) rejected for non-finite fitness",
                       problem.name, state.nonfinite_rejections)
    return RunResult(
        best_trace=trace,
        final_position=state.best_position.copy(),
        final_fitness=float(trace[-1]),
        seed=config.seed,
        evaluations=state.evaluations,
        nonfinite_rejections=state.nonfinite_rejections,
        config=config.to_dict(),
    )
