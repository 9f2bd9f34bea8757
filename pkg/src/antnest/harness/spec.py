"""Experiment specification files.

Specs are INI-style text read with :mod:`configparser`::

    [experiment]
    name = f10-table3        ; optional, defaults to the problem id
    preset = table3          ; table3 (default), table4, cec2019, realworld
    repeats = 30
    base_seed = 0
    jobs = 1
    output = results/f10

    [problem]
    suite = standard         ; inferred from id when omitted
    id = F10
    dimension = 10
    shifted = true
    reduced_range = false    ; F1 on [-5.12, 5.12]
    outer_theta = false      ; FM problem only
    data_file = cec04.txt    ; CEC04-CEC10 shift/rotation data

    [ana]
    population = 30
    iterations = 500
    r_mode = scalar_per_ant
    tendency_mode = per_dimension
    epsilon_guard = 1e-12
    levy_beta = 1.5

Only ``[problem] id`` is required. Run ``k`` (0-based) uses seed
``base_seed + k``. Unknown sections or keys are rejected.
"""

from __future__ import annotations

import configparser
import dataclasses
from dataclasses import dataclass
from pathlib import Path

from ..benchfns import cec2019, composite, standard
from ..core import AnaConfig, RMode, TendencyMode

PRESETS = {
    "table3": dict(population=30, iterations=500, repeats=30, dimension=10, shifted=True),
    "table4": dict(population=30, iterations=10000, repeats=100, dimension=20, shifted=False),
    "cec2019": dict(population=30, iterations=500, repeats=30),
    "realworld": dict(population=30, iterations=200, repeats=30),
}

_SECTIONS = {
    "experiment": {"name", "preset", "repeats", "base_seed", "jobs", "output"},
    "problem": {"suite", "id", "dimension", "shifted", "reduced_range", "outer_theta",
                "data_file"},
    "ana": {"population", "iterations", "r_mode", "tendency_mode", "epsilon_guard",
            "levy_beta"},
}


class SpecError(ValueError):
    """Invalid experiment specification; the message names the offending key."""


@dataclass
class ExperimentSpec:
    problem_id: str
    suite: str
    name: str = ""
    preset: str = "table3"
    dimension: int | None = None
    shifted: bool = True
    reduced_range: bool | None = None
    outer_theta: bool = False
    data_file: str | None = None
    population: int = 30
    iterations: int = 500
    repeats: int = 30
    base_seed: int = 0
    jobs: int = 1
    r_mode: str = RMode.SCALAR_PER_ANT.value
    tendency_mode: str = TendencyMode.PER_DIMENSION.value
    epsilon_guard: float = 1e-12
    levy_beta: float = 1.5
    output: str | None = None

    def __post_init__(self):
        if not self.name:
            self.name = self.problem_id
        self.validate()

    def validate(self) -> None:
        if self.repeats < 1:
            raise SpecError(f"repeats: must be >= 1, got {self.repeats}")
        if self.jobs < 1:
            raise SpecError(f"jobs: must be >= 1, got {self.jobs}")
        if self.base_seed < 0 or self.base_seed + self.repeats > 2**64:
            raise SpecError(f"base_seed: derived seeds must fit in 64 bits, got {self.base_seed}")
        if self.dimension is not None and self.dimension < 1:
            raise SpecError(f"dimension: must be positive, got {self.dimension}")
        for key, enum_type in (("r_mode", RMode), ("tendency_mode", TendencyMode)):
            try:
                enum_type(getattr(self, key))
            except ValueError:
                choices = [m.value for m in enum_type]
                raise SpecError(f"{key}: expected one of {choices}, got {getattr(self, key)!r}") from None
        try:
            self.ana_config(0)
        except ValueError as exc:
            key = str(exc).split()[0]
            raise SpecError(f"{key}: {exc}") from None

    def seed(self, run_index: int) -> int:
        return self.base_seed + run_index

    def ana_config(self, run_index: int) -> AnaConfig:
        return AnaConfig(population=self.population, iterations=self.iterations,
                         seed=self.seed(run_index), r_mode=self.r_mode,
                         tendency_mode=self.tendency_mode, epsilon_guard=self.epsilon_guard,
                         levy_beta=self.levy_beta)

    def problem_kwargs(self) -> dict:
        if self.suite == "standard":
            return dict(dim=self.dimension, shifted=self.shifted, reduced_range=self.reduced_range)
        if self.suite == "cec2019":
            return dict(data_file=self.data_file)
        if self.suite == "realworld" and self.problem_id == "fm":
            return dict(outer_theta=self.outer_theta)
        return {}

    def make_problem(self):
        from ..benchfns.problems import make_problem
        return make_problem(self.suite, self.problem_id, **self.problem_kwargs())

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    def with_overrides(self, **kw) -> "ExperimentSpec":
        kw = {k: v for k, v in kw.items() if v is not None}
        return dataclasses.replace(self, **kw)


def infer_suite(problem_id: str) -> str:
    if problem_id in standard.STANDARD:
        return "standard"
    if problem_id in composite.COMPOSITES or problem_id in composite.ALIASES:
        return "composite"
    if problem_id in cec2019.CEC2019:
        return "cec2019"
    if problem_id in ("antenna", "fm"):
        return "realworld"
    raise SpecError(f"id: unknown problem {problem_id!r}")


def _default_preset(suite: str) -> str:
    return {"cec2019": "cec2019", "realworld": "realworld"}.get(suite, "table3")


def _convert(section: str, key: str, raw: str, parser: configparser.ConfigParser):
    try:
        if key in ("repeats", "base_seed", "jobs", "dimension", "population", "iterations"):
            return parser.getint(section, key)
        if key in ("shifted", "reduced_range", "outer_theta"):
            return parser.getboolean(section, key)
        if key in ("epsilon_guard", "levy_beta"):
            return parser.getfloat(section, key)
    except ValueError:
        raise SpecError(f"{key}: cannot parse {raw!r}") from None
    return raw.strip()


def spec_from_mapping(values: dict, base_dir: Path | None = None) -> ExperimentSpec:
    """Build a spec from flat key/value pairs (already typed)."""
    values = dict(values)
    if "id" not in values:
        raise SpecError("id: [problem] id is required")
    pid = values.pop("id")
    suite = values.pop("suite", None) or infer_suite(pid)
    if suite == "composite":
        pid = composite._resolve(pid)
    preset = values.pop("preset", None) or _default_preset(suite)
    if preset not in PRESETS:
        raise SpecError(f"preset: unknown preset {preset!r}; expected one of {sorted(PRESETS)}")
    merged = dict(PRESETS[preset])
    if suite != "standard":
        merged.pop("dimension", None)
        merged.pop("shifted", None)
    merged.update(values)
    data_file = merged.get("data_file")
    if data_file and base_dir is not None and not Path(data_file).is_absolute():
        merged["data_file"] = str(base_dir / data_file)
    try:
        return ExperimentSpec(problem_id=pid, suite=suite, preset=preset, **merged)
    except TypeError as exc:
        raise SpecError(str(exc)) from None


def parse_spec(text: str, base_dir: Path | None = None) -> ExperimentSpec:
    parser = configparser.ConfigParser(inline_comment_prefixes=(";", "#"),
                                       interpolation=None)
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise SpecError(f"syntax: {exc}") from None
    values = {}
    for section in parser.sections():
        if section not in _SECTIONS:
            raise SpecError(f"[{section}]: unknown section")
        for key, raw in parser.items(section):
            if key not in _SECTIONS[section]:
                raise SpecError(f"{key}: unknown key in [{section}]")
            values[key] = _convert(section, key, raw, parser)
    return spec_from_mapping(values, base_dir)


def load_spec(path) -> ExperimentSpec:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise SpecError(f"file: cannot read {path}: {exc}") from None
    return parse_spec(text, base_dir=path.parent)
