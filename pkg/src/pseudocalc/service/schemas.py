"""Pydantic request/response models for the pseudocalc service.

The CLI builds these same models and feeds them to the handler layer, so the
wire format and the command line stay in lockstep.
"""

from __future__ import annotations

from typing import Literal, Union

from pydantic import BaseModel, ConfigDict, Field


class DomainModel(BaseModel):
    lo: float
    hi: float | None = None  # null means +inf
    lo_open: bool = False
    hi_open: bool = False


class GeneratorModel(BaseModel):
    """Inline generator definition with expression strings in ``x``."""

    schema_version: int = 1
    name: str = "custom"
    g: str
    g_inv: str | None = None
    g_prime: str | None = None
    domain: DomainModel
    direction: Literal["increasing", "decreasing"]


GeneratorSource = Union[str, GeneratorModel]


class QuadratureModel(BaseModel):
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_depth: int = 50


class ValidateRequest(BaseModel):
    generator: GeneratorSource
    samples: int = 65


class CheckEntryModel(BaseModel):
    name: str
    passed: bool
    max_violation: float
    detail: str = ""


class ValidateResponse(BaseModel):
    generator: str
    direction: str
    passed: bool
    checks: list[CheckEntryModel]


class IntegrateRequest(BaseModel):
    generator: GeneratorSource
    f: str
    a: float
    b: float
    flavor: Literal["g", "oplus", "gh"] = "g"
    h: str | None = None
    quadrature: QuadratureModel = QuadratureModel()


class IntegrateResponse(BaseModel):
    generator: str
    direction: str
    flavor: str
    raw: float | None
    image: float
    error_estimate: float


class DeriveRequest(BaseModel):
    generator: GeneratorSource
    f: str
    x: float
    flavor: Literal["g", "oplus"] = "g"
    step: float | None = None


class DeriveResponse(BaseModel):
    generator: str
    direction: str
    flavor: str
    raw: float
    image: float


class EvalRequest(BaseModel):
    """One pseudo-algebra operation on raw operands."""

    generator: GeneratorSource
    op: Literal["add", "sub", "mul", "div", "odot", "pow", "abs", "exp", "ln", "cmp"]
    x: float
    y: float | None = None
    scalar: float | None = None  # n for odot, p for pow


class EvalResponse(BaseModel):
    generator: str
    direction: str
    op: str
    raw: float | None = None
    image: float | None = None
    ordering: str | None = None  # cmp only


class SuiteItemModel(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    inequality: str
    generator: GeneratorSource | None = None
    params: dict[str, float | bool | str] = Field(default_factory=dict)
    functions: dict[str, str] = Field(default_factory=dict)
    interval: tuple[float, float] | None = None
    grid: dict[str, object] = Field(default_factory=dict)


class SuiteModel(BaseModel):
    schema_version: int = 1
    generator: GeneratorSource | None = None
    items: list[SuiteItemModel] = Field(default_factory=list)


class CheckRequest(BaseModel):
    suite: SuiteModel
    generator: GeneratorSource | None = None  # default when the suite has none
    seed: int = 0
    quadrature: QuadratureModel = QuadratureModel()


class VerdictRowModel(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    name: str
    generator: str
    direction: str
    p: float | None = None
    q: float | None = None
    r: float | None = None
    t: float | None = None
    lam: float | None = Field(default=None, alias="lambda")
    lhs_img: float | None = None
    rhs_img: float | None = None
    margin: float | None = None
    holds: bool
    lhs_raw: float | None = None
    rhs_raw: float | None = None
    error: str | None = None


class ItemErrorModel(BaseModel):
    index: int
    inequality: str
    error: str
    message: str


class CheckResponse(BaseModel):
    verdicts: list[VerdictRowModel]
    errors: list[ItemErrorModel]
    total: int
    held: int
    all_hold: bool


class SweepRequest(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    generator: GeneratorSource
    inequality: str
    params: dict[str, float | bool | str] = Field(default_factory=dict)
    functions: dict[str, str] = Field(default_factory=dict)
    interval: tuple[float, float] | None = None
    ranges: dict[str, object]
    seed: int = 0
    quadrature: QuadratureModel = QuadratureModel()


class SweepResponse(BaseModel):
    rows: list[VerdictRowModel]


class ErrorPayload(BaseModel):
    error: str
    message: str
    position: int | None = None
