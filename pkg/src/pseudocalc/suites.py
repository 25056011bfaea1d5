"""Suite and sweep runners: expand parameter grids over the inequality
operations and flatten results into fixed-schema rows.

A suite document (already JSON-decoded) looks like::

    {"schema_version": 1,
     "generator": "power:2",            # optional default for all items
     "items": [
        {"inequality": "young",
         "generator": "neglog",         # optional per-item override
         "params": {"a": 0.5, "b": 0.7},
         "functions": {"f": "x+1", "h": "2*x"},
         "interval": [0, 1],
         "grid": {"p": [1.5, 2, 3]}}]}

Grid axes are expanded as a cartesian product in sorted-key order, so row
order is deterministic; an axis is a list of values, an inclusive range
``{"lo", "hi", "steps"}`` or a seeded draw ``{"random": n, "lo", "hi"}``.
Chain results (Hermite-Hadamard) collapse to one row carrying the weakest
link; the mean chain contributes its two verdicts as two rows.  Evaluation
errors are collected per expansion, never fatal.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, replace
from typing import Callable, Mapping, Sequence

from . import inequalities as ineq
from .calculus import DEFAULT_QUADRATURE, QuadratureConfig
from .errors import ParameterError, PseudoCalcError, UnknownInequality
from .funcspec import ParseError, compile_expr, parse
from .generator import PseudoContext, context_from_source
from .inequalities import InequalityVerdict

__all__ = [
    "VerdictRow",
    "ItemError",
    "SuiteReport",
    "CHECK_CSV_COLUMNS",
    "SWEEP_CSV_COLUMNS",
    "INEQUALITY_NAMES",
    "check_suite",
    "run_sweep",
    "expand_axis",
]

CHECK_CSV_COLUMNS = (
    "name", "generator", "direction", "p", "q", "r", "t", "lambda",
    "lhs_img", "rhs_img", "margin", "holds",
)
SWEEP_CSV_COLUMNS = CHECK_CSV_COLUMNS + ("error",)

INEQUALITY_NAMES = (
    "young",
    "holder",
    "holder_general",
    "holder_interpolation",
    "minkowski",
    "hermite_hadamard",
    "hh_refined",
    "gla_means",
)


@dataclass(frozen=True)
class VerdictRow:
    name: str
    generator: str
    direction: str
    p: float | None
    q: float | None
    r: float | None
    t: float | None
    lam: float | None
    lhs_img: float | None
    rhs_img: float | None
    margin: float | None
    holds: bool
    lhs_raw: float | None = None
    rhs_raw: float | None = None
    error: str | None = None


@dataclass(frozen=True)
class ItemError:
    index: int
    inequality: str
    error: str
    message: str


@dataclass(frozen=True)
class SuiteReport:
    rows: tuple[VerdictRow, ...]
    errors: tuple[ItemError, ...]

    @property
    def total(self) -> int:
        return len(self.rows)

    @property
    def held(self) -> int:
        return sum(1 for r in self.rows if r.holds)

    @property
    def all_hold(self) -> bool:
        return not self.errors and all(r.holds for r in self.rows)


def expand_axis(axis, rng: random.Random) -> list[float]:
    """Expand one grid axis into an explicit value list."""
    if isinstance(axis, Sequence) and not isinstance(axis, (str, bytes)):
        return [float(v) for v in axis]
    if isinstance(axis, Mapping):
        if "random" in axis:
            n = int(axis["random"])
            lo, hi = float(axis["lo"]), float(axis["hi"])
            if n < 1 or not lo < hi:
                raise ParameterError(f"bad random axis {axis!r}")
            return [rng.uniform(lo, hi) for _ in range(n)]
        lo, hi = float(axis["lo"]), float(axis["hi"])
        steps = int(axis["steps"])
        if steps < 1:
            raise ParameterError(f"axis needs steps >= 1, got {steps}")
        if not lo < hi:
            raise ParameterError(f"axis needs lo < hi, got [{lo}, {hi}]")
        if steps == 1:
            return [lo]
        return [lo + (hi - lo) * i / (steps - 1) for i in range(steps)]
    raise ParameterError(f"cannot interpret grid axis {axis!r}")


def _axis_rng(seed: int, item_index: int, axis: str) -> random.Random:
    # string seeding is stable across runs and processes
    return random.Random(f"{seed}|{item_index}|{axis}")


def _expand_grid(grid: Mapping, seed: int, item_index: int) -> list[dict]:
    if not grid:
        return [{}]
    names = sorted(grid.keys())
    axes = [expand_axis(grid[name], _axis_rng(seed, item_index, name)) for name in names]
    return [dict(zip(names, combo)) for combo in itertools.product(*axes)]


def _param(params: Mapping, key: str, inequality: str) -> float:
    if key not in params:
        raise ParameterError(f"{inequality} needs parameter {key!r}")
    return float(params[key])


def _function(funcs: Mapping[str, Callable], key: str, inequality: str) -> Callable:
    if key not in funcs:
        raise ParameterError(f"{inequality} needs function {key!r}")
    return funcs[key]


def _interval(interval, inequality: str) -> tuple[float, float]:
    if interval is None:
        raise ParameterError(f"{inequality} needs an interval [a, b]")
    a, b = float(interval[0]), float(interval[1])
    if not (math.isfinite(a) and math.isfinite(b)):
        raise ParameterError("interval must be finite")
    return a, b


def _row_from_verdict(v: InequalityVerdict, generator: str, params: Mapping,
                      name: str | None = None) -> VerdictRow:
    return VerdictRow(
        name=name or v.name,
        generator=generator,
        direction=v.generator_direction.value,
        p=_opt_float(params.get("p")),
        q=_opt_float(params.get("q")),
        r=_opt_float(params.get("r")),
        t=_opt_float(params.get("t")),
        lam=_opt_float(params.get("lambda")),
        lhs_img=v.lhs_img,
        rhs_img=v.rhs_img,
        margin=v.margin,
        holds=v.holds,
        lhs_raw=v.lhs_raw,
        rhs_raw=v.rhs_raw,
    )


def _opt_float(v) -> float | None:
    return None if v is None else float(v)


def _chain_row(chain: ineq.HHChain, name: str, generator: str, params: Mapping) -> VerdictRow:
    worst = min(chain.verdicts, key=lambda v: v.margin)
    row = _row_from_verdict(worst, generator, params, name=name)
    return replace(row, holds=chain.holds, margin=chain.min_margin)


def evaluate_inequality(ctx: PseudoContext, inequality: str, params: Mapping,
                        funcs: Mapping[str, Callable], interval,
                        cfg: QuadratureConfig) -> list[VerdictRow]:
    """Evaluate one inequality at one parameter point; returns its rows."""
    gen = ctx.name
    if inequality == "young":
        v = ineq.young(ctx, _param(params, "a", inequality), _param(params, "b", inequality),
                       _param(params, "p", inequality))
        return [_row_from_verdict(v, gen, params)]
    if inequality == "holder":
        a, b = _interval(interval, inequality)
        v = ineq.holder(ctx, _function(funcs, "f", inequality), _function(funcs, "h", inequality),
                        _param(params, "p", inequality), a, b, cfg)
        return [_row_from_verdict(v, gen, params)]
    if inequality == "holder_general":
        a, b = _interval(interval, inequality)
        v = ineq.holder_general(ctx, _function(funcs, "f", inequality),
                                _function(funcs, "h", inequality),
                                _param(params, "p", inequality), _param(params, "q", inequality),
                                _param(params, "r", inequality), a, b, cfg)
        return [_row_from_verdict(v, gen, params)]
    if inequality == "holder_interpolation":
        a, b = _interval(interval, inequality)
        v = ineq.holder_interpolation(ctx, _function(funcs, "f", inequality),
                                      _param(params, "t", inequality),
                                      _param(params, "p", inequality),
                                      _param(params, "q", inequality),
                                      _param(params, "r", inequality), a, b, cfg)
        return [_row_from_verdict(v, gen, params)]
    if inequality == "minkowski":
        a, b = _interval(interval, inequality)
        v = ineq.minkowski(ctx, _function(funcs, "f", inequality),
                           _function(funcs, "h", inequality),
                           _param(params, "p", inequality), a, b, cfg,
                           allow_negative_p=bool(params.get("allow_negative_p", False)))
        return [_row_from_verdict(v, gen, params)]
    if inequality == "hermite_hadamard":
        a, b = _interval(interval, inequality)
        chain = ineq.hermite_hadamard(ctx, _function(funcs, "f", inequality), a, b, cfg,
                                      sense=str(params.get("sense", "convex")))
        return [_chain_row(chain, inequality, gen, params)]
    if inequality == "hh_refined":
        a, b = _interval(interval, inequality)
        chain = ineq.hh_refined(ctx, _function(funcs, "f", inequality), a, b,
                                _param(params, "lambda", inequality), cfg,
                                sense=str(params.get("sense", "convex")))
        return [_chain_row(chain, inequality, gen, params)]
    if inequality == "gla_means":
        result = ineq.gla_means(ctx, _param(params, "u", inequality),
                                _param(params, "v", inequality))
        return [_row_from_verdict(v, gen, params) for v in result.verdicts]
    raise UnknownInequality(
        f"unknown inequality {inequality!r}; known: {', '.join(INEQUALITY_NAMES)}"
    )


def _compile_functions(item_functions: Mapping | None) -> dict[str, Callable]:
    funcs: dict[str, Callable] = {}
    for key, expr_text in (item_functions or {}).items():
        funcs[key] = compile_expr(parse(expr_text))
    return funcs


class _ContextCache:
    def __init__(self) -> None:
        self._cache: dict[str, PseudoContext] = {}

    def get(self, source) -> PseudoContext:
        key = source if isinstance(source, str) else repr(sorted((source or {}).items()))
        if key not in self._cache:
            self._cache[key] = context_from_source(source)
        return self._cache[key]


def check_suite(default_ctx: PseudoContext | None, suite: Mapping,
                cfg: QuadratureConfig = DEFAULT_QUADRATURE, seed: int = 0) -> SuiteReport:
    """Run every item of a suite document; grid expansions are evaluated in
    deterministic order and per-item failures become error entries."""
    version = suite.get("schema_version", 1)
    if version != 1:
        raise ParameterError(f"unsupported suite schema_version {version!r}")
    items = suite.get("items")
    if items is None:
        items = [suite] if suite.get("inequality") else []
    cache = _ContextCache()
    default_source = suite.get("generator")
    rows: list[VerdictRow] = []
    errors: list[ItemError] = []
    for index, item in enumerate(items):
        inequality = str(item.get("inequality", ""))
        try:
            source = item.get("generator", default_source)
            if source is not None:
                ctx = cache.get(source)
            elif default_ctx is not None:
                ctx = default_ctx
            else:
                raise ParameterError(f"item {index} has no generator and no default was given")
            funcs = _compile_functions(item.get("functions"))
            grids = _expand_grid(item.get("grid", {}), seed, index)
        except ParseError:
            # malformed expressions are configuration errors, not item results
            raise
        except PseudoCalcError as exc:
            errors.append(ItemError(index, inequality, type(exc).__name__, str(exc)))
            continue
        base_params = dict(item.get("params", {}))
        for grid_point in grids:
            params = {**base_params, **grid_point}
            try:
                rows.extend(
                    evaluate_inequality(ctx, inequality, params, funcs,
                                        item.get("interval"), cfg)
                )
            except PseudoCalcError as exc:
                errors.append(ItemError(index, inequality, type(exc).__name__,
                                        f"{exc} (params {_fmt_params(params)})"))
    return SuiteReport(tuple(rows), tuple(errors))


def _fmt_params(params: Mapping) -> str:
    return ", ".join(f"{k}={params[k]!r}" for k in sorted(params))


def run_sweep(ctx: PseudoContext, inequality: str, params: Mapping,
              functions: Mapping | None, interval, ranges: Mapping,
              cfg: QuadratureConfig = DEFAULT_QUADRATURE, seed: int = 0) -> list[VerdictRow]:
    """Cartesian-product sweep of one inequality; evaluation failures land in
    the row's error column instead of aborting the sweep."""
    if inequality not in INEQUALITY_NAMES:
        raise UnknownInequality(
            f"unknown inequality {inequality!r}; known: {', '.join(INEQUALITY_NAMES)}"
        )
    if not ranges:
        raise ParameterError("sweep needs at least one parameter range")
    funcs = _compile_functions(functions)
    points = _expand_grid(ranges, seed, 0)
    rows: list[VerdictRow] = []
    for point in points:
        merged = {**dict(params or {}), **point}
        try:
            rows.extend(evaluate_inequality(ctx, inequality, merged, funcs, interval, cfg))
        except PseudoCalcError as exc:
            rows.append(
                VerdictRow(
                    name=inequality, generator=ctx.name, direction=ctx.direction.value,
                    p=_opt_float(merged.get("p")), q=_opt_float(merged.get("q")),
                    r=_opt_float(merged.get("r")), t=_opt_float(merged.get("t")),
                    lam=_opt_float(merged.get("lambda")),
                    lhs_img=None, rhs_img=None, margin=None, holds=False,
                    error=f"{type(exc).__name__}: {exc}",
                )
            )
    return rows
