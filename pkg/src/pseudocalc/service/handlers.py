"""Handler layer between the schemas and the core package.

Both the FastAPI endpoints and the CLI call these functions, so every
interface exercises identical logic; handlers raise
:class:`~pseudocalc.errors.PseudoCalcError` subclasses and leave transport
mapping (HTTP status, exit codes) to their callers.
"""

from __future__ import annotations

import math

from .. import algebra, calculus
from ..errors import ParameterError
from ..funcspec import compile_expr, parse
from ..generator import (
    PseudoContext,
    context_from_source,
    eval_g,
    eval_g_inv,
    guard_image,
    validate_spec,
    resolve_spec,
)
from ..suites import VerdictRow, check_suite, run_sweep
from . import schemas as sm


def _source(generator: sm.GeneratorModel | str):
    if isinstance(generator, sm.GeneratorModel):
        return generator.model_dump()
    return generator


def context_for(generator: sm.GeneratorModel | str) -> PseudoContext:
    return context_from_source(_source(generator))


def quad_config(model: sm.QuadratureModel) -> calculus.QuadratureConfig:
    return calculus.QuadratureConfig(
        rel_tol=model.rel_tol, abs_tol=model.abs_tol, max_depth=model.max_depth
    )


def validate(req: sm.ValidateRequest) -> sm.ValidateResponse:
    spec = resolve_spec(_source(req.generator))
    report = validate_spec(spec, samples=req.samples)
    return sm.ValidateResponse(
        generator=spec.name,
        direction=spec.direction.value,
        passed=report.passed,
        checks=[
            sm.CheckEntryModel(
                name=c.name, passed=c.passed, max_violation=c.max_violation, detail=c.detail
            )
            for c in report.checks
        ],
    )


def integrate(req: sm.IntegrateRequest) -> sm.IntegrateResponse:
    ctx = context_for(req.generator)
    cfg = quad_config(req.quadrature)
    f = compile_expr(parse(req.f))
    if req.flavor == "gh" and req.h is None:
        raise ParameterError("flavor 'gh' needs a weight expression h")
    h = compile_expr(parse(req.h)) if req.h is not None else None
    result = calculus.integral_image_full(ctx, f, req.a, req.b, req.flavor, h=h, cfg=cfg)
    raw = eval_g_inv(ctx, guard_image(result.value, "integral image"))
    return sm.IntegrateResponse(
        generator=ctx.name,
        direction=ctx.direction.value,
        flavor=req.flavor,
        raw=raw,
        image=result.value,
        error_estimate=result.error_estimate,
    )


def derive(req: sm.DeriveRequest) -> sm.DeriveResponse:
    ctx = context_for(req.generator)
    f = compile_expr(parse(req.f))
    if req.flavor == "oplus":
        raw = calculus.oplus_derivative(ctx, f, req.x, req.step)
    else:
        raw = calculus.g_derivative(ctx, f, req.x, req.step)
    return sm.DeriveResponse(
        generator=ctx.name,
        direction=ctx.direction.value,
        flavor=req.flavor,
        raw=raw,
        image=eval_g(ctx, raw),
    )


def evaluate(req: sm.EvalRequest) -> sm.EvalResponse:
    ctx = context_for(req.generator)
    op = req.op
    base = dict(generator=ctx.name, direction=ctx.direction.value, op=op)
    if op == "cmp":
        if req.y is None:
            raise ParameterError("cmp needs operand y")
        ordering = algebra.cmp_g(ctx, req.x, req.y)
        return sm.EvalResponse(**base, ordering=ordering.name.lower())
    if op in ("add", "sub", "mul", "div"):
        if req.y is None:
            raise ParameterError(f"{op} needs operand y")
        raw = algebra.binary_op(ctx, algebra.BinaryKind(op), req.x, req.y)
    elif op == "odot":
        if req.scalar is None:
            raise ParameterError("odot needs a scalar")
        raw = algebra.odot(ctx, req.scalar, req.x)
    elif op == "pow":
        if req.scalar is None:
            raise ParameterError("pow needs a scalar exponent")
        raw = algebra.pseudo_pow(ctx, req.x, req.scalar)
    elif op == "abs":
        raw = algebra.pseudo_abs(ctx, req.x)
    elif op == "exp":
        raw = algebra.pseudo_exp(ctx, req.x)
    else:
        raw = algebra.pseudo_ln(ctx, req.x)
    return sm.EvalResponse(**base, raw=raw, image=eval_g(ctx, raw))


def _row_model(row: VerdictRow) -> sm.VerdictRowModel:
    return sm.VerdictRowModel(
        name=row.name,
        generator=row.generator,
        direction=row.direction,
        p=row.p,
        q=row.q,
        r=row.r,
        t=row.t,
        lam=row.lam,
        lhs_img=_json_float(row.lhs_img),
        rhs_img=_json_float(row.rhs_img),
        margin=_json_float(row.margin),
        holds=row.holds,
        lhs_raw=_json_float(row.lhs_raw),
        rhs_raw=_json_float(row.rhs_raw),
        error=row.error,
    )


def _json_float(v: float | None) -> float | None:
    if v is None or not math.isfinite(v):
        return None
    return v


def check(req: sm.CheckRequest) -> sm.CheckResponse:
    cfg = quad_config(req.quadrature)
    suite_doc = req.suite.model_dump(exclude_none=True)
    default_ctx = context_for(req.generator) if req.generator is not None else None
    report = check_suite(default_ctx, suite_doc, cfg, seed=req.seed)
    return sm.CheckResponse(
        verdicts=[_row_model(r) for r in report.rows],
        errors=[
            sm.ItemErrorModel(index=e.index, inequality=e.inequality,
                              error=e.error, message=e.message)
            for e in report.errors
        ],
        total=report.total,
        held=report.held,
        all_hold=report.all_hold,
    )


def sweep(req: sm.SweepRequest) -> sm.SweepResponse:
    ctx = context_for(req.generator)
    cfg = quad_config(req.quadrature)
    rows = run_sweep(ctx, req.inequality, req.params, req.functions, req.interval,
                     req.ranges, cfg, seed=req.seed)
    return sm.SweepResponse(rows=[_row_model(r) for r in rows])
