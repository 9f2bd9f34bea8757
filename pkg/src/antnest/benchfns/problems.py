"""Problem factories for every benchmark suite."""

from __future__ import annotations

from functools import partial


from ..core import Direction, Problem
from . import cec2019, composite, standard

SUITES = ("standard", "composite", "cec2019", "realworld")

# Range used by the 20-dimensional unshifted protocol for F1.
REDUCED_F1_BOUND = 5.12


def _standard_objective(fn_id, shifted, x, rng=None):
    return standard.eval_standard(fn_id, x, shifted=shifted, rng=rng)


def make_problem(suite: str, id: str, dim: int | None = None, shifted: bool = True,
                 reduced_range: bool | None = None, data_file=None, **options) -> Problem:
    """Build a minimization :class:`Problem` for one benchmark function.

    ``standard``: ``dim`` defaults to 10. ``reduced_range`` narrows F1 to
    [-5.12, 5.12]; by default it is on exactly when ``shifted`` is off and
    ``dim`` is 20 (the long-run protocol).
    ``composite``: always 10-dimensional on [-5, 5].
    ``cec2019``: dimension is fixed per function; ``data_file`` loads official
    shift/rotation data for CEC04-CEC10.
    ``realworld``: ``antenna`` or ``fm``; extra ``options`` go to the builder.
    """
    if suite == "standard":
        if id not in standard.STANDARD:
            raise KeyError(f"unknown standard function {id!r}")
        fn = standard.STANDARD[id]
        dim = 10 if dim is None else int(dim)
        if dim < 2:
            raise ValueError(f"{id}: dimension must be >= 2, got {dim}")
        if reduced_range is None:
            reduced_range = (not shifted) and dim == 20
        lo, hi = fn.lower, fn.upper
        if reduced_range and id == "F1":
            lo, hi = -REDUCED_F1_BOUND, REDUCED_F1_BOUND
        tag = "shifted" if shifted else "unshifted"
        return Problem(dim, lo, hi, partial(_standard_objective, id, shifted),
                       name=f"{id}-{tag}-d{dim}", noisy=(id == "F7"))
    if suite == "composite":
        cf = composite._resolve(id)
        if dim not in (None, composite.DIM):
            raise ValueError(f"{cf}: composite functions are {composite.DIM}-dimensional, got {dim}")
        return Problem(composite.DIM, -composite.BOUND, composite.BOUND,
                       partial(composite.eval_composite, cf), name=cf)
    if suite == "cec2019":
        if id not in cec2019.CEC2019:
            raise KeyError(f"unknown CEC-2019 function {id!r}")
        spec = cec2019.CEC2019[id]
        if dim not in (None, spec.dim):
            raise ValueError(f"{id} has fixed dimension {spec.dim}, got {dim}")
        if data_file is not None:
            if spec.rate is None:
                raise ValueError(f"{id} takes no shift/rotation data")
            fn = cec2019.Cec2019Function.from_file(id, data_file)
        elif options.pop("official", False):
            raise FileNotFoundError(f"{id}: official mode requested but no data file given")
        else:
            fn = cec2019.Cec2019Function(id)
        name = id if fn.official or spec.rate is None else f"{id}-unofficial"
        return Problem(spec.dim, -spec.bound, spec.bound, fn, name=name)
    if suite == "realworld":
        from .. import realworld
        return realworld.make_realworld_problem(id, **options)
    raise KeyError(f"unknown suite {suite!r}; expected one of {SUITES}")


def list_problems() -> list[tuple[str, str, str]]:
    """(suite, id, description) for every selectable problem."""
    out = []
    for fid, fn in standard.STANDARD.items():
        note = "" if fn.benchmark else " (component only)"
        out.append(("standard", fid, f"{fn.name}, {fn.kind}, [{fn.lower}, {fn.upper}]{note}"))
    for cf, spec in composite.COMPOSITES.items():
        out.append(("composite", cf, f"alias {spec.alias}, 10-D on [-5, 5]"))
    for cid, spec in cec2019.CEC2019.items():
        out.append(("cec2019", cid, f"{spec.name}, {spec.dim}-D on [-{spec.bound:g}, {spec.bound:g}]"))
    out.append(("realworld", "antenna", "aperiodic 9-element array peak sidelobe level, 4-D"))
    out.append(("realworld", "fm", "FM synthesizer parameter matching, 6-D"))
    return out


def default_dimension(suite: str, id: str) -> int:
    if suite == "cec2019":
        return cec2019.CEC2019[id].dim
    if suite == "composite":
        return composite.DIM
    if suite == "realworld":
        return {"antenna": 4, "fm": 6}[id]
    return 10


__all__ = ["make_problem", "list_problems", "default_dimension", "SUITES"]

