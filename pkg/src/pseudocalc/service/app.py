"""FastAPI application wrapping the pseudocalc core.

Run with ``pseudocalc serve`` or ``uvicorn pseudocalc.service.app:app``.
Core failures surface as 422 responses with a structured payload naming the
error class (and the byte offset for expression parse errors).
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from ..errors import PseudoCalcError
from ..generator import builtin_names
from . import handlers
from . import schemas as sm

app = FastAPI(
    title="pseudocalc",
    description="Generator-parameterized pseudo-arithmetic, pseudo-calculus "
    "and integral-inequality verification.",
    version="0.1.0",
)


@app.exception_handler(PseudoCalcError)
async def pseudocalc_error_handler(request: Request, exc: PseudoCalcError) -> JSONResponse:
    payload = sm.ErrorPayload(
        error=type(exc).__name__,
        message=str(exc),
        position=getattr(exc, "position", None),
    )
    return JSONResponse(status_code=422, content=payload.model_dump())


@app.get("/health")
def health() -> dict:
    return {"status": "ok"}


@app.get("/generators")
def generators() -> dict:
    return {"builtins": builtin_names()}


@app.post("/generators/validate", response_model=sm.ValidateResponse)
def validate(req: sm.ValidateRequest) -> sm.ValidateResponse:
    return handlers.validate(req)


@app.post("/integrate", response_model=sm.IntegrateResponse)
def integrate(req: sm.IntegrateRequest) -> sm.IntegrateResponse:
    return handlers.integrate(req)


@app.post("/derive", response_model=sm.DeriveResponse)
def derive(req: sm.DeriveRequest) -> sm.DeriveResponse:
    return handlers.derive(req)


@app.post("/eval", response_model=sm.EvalResponse)
def evaluate(req: sm.EvalRequest) -> sm.EvalResponse:
    return handlers.evaluate(req)


@app.post("/inequalities/check", response_model=sm.CheckResponse)
def check(req: sm.CheckRequest) -> sm.CheckResponse:
    return handlers.check(req)


@app.post("/inequalities/sweep", response_model=sm.SweepResponse)
def sweep(req: sm.SweepRequest) -> sm.SweepResponse:
    return handlers.sweep(req)
