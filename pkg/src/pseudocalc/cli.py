"""Command-line front end.

Thin client over the service handler layer: every subcommand builds the same
pydantic request model the HTTP API accepts, executes it in process (or
against a remote instance via ``--server``), and renders the response as
human text, JSON or CSV.

Exit codes follow the per-command contract: 0 success / all-hold, 1 failed
checks or verdicts (and expression errors inside ``integrate``/``derive``/
``eval`` inputs), 2 configuration errors, 3 quadrature failures.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from typing import Sequence

import pydantic

from .errors import (
    ConvergenceError,
    DepthExceeded,
    NumericError,
    ParameterError,
    PseudoCalcError,
)
from .funcspec import ParseError
from .service import handlers
from .service import schemas as sm
from .suites import CHECK_CSV_COLUMNS, SWEEP_CSV_COLUMNS

QUAD_FAILURES = (DepthExceeded, ConvergenceError, NumericError)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_CONFIG = 2
EXIT_QUADRATURE = 3


class _RemoteError(PseudoCalcError):
    """Reconstructed service-side error (keeps CLI exit codes identical)."""

    def __init__(self, payload: dict):
        self.error = payload.get("error", "PseudoCalcError")
        self.position = payload.get("position")
        super().__init__(payload.get("message", "remote error"))


def _rebuild_remote(payload: dict) -> PseudoCalcError:
    name = payload.get("error")
    message = payload.get("message", "")
    if name == "ParseError":
        return ParseError(int(payload.get("position") or 0), message)
    import pseudocalc.errors as errors_mod

    cls = getattr(errors_mod, name, None) if name else None
    if isinstance(cls, type) and issubclass(cls, PseudoCalcError):
        return cls(message)
    return _RemoteError(payload)


_ENDPOINTS = {
    "validate": "/generators/validate",
    "integrate": "/integrate",
    "derive": "/derive",
    "eval": "/eval",
    "check": "/inequalities/check",
    "sweep": "/inequalities/sweep",
}

_LOCAL = {
    "validate": (handlers.validate, sm.ValidateResponse),
    "integrate": (handlers.integrate, sm.IntegrateResponse),
    "derive": (handlers.derive, sm.DeriveResponse),
    "eval": (handlers.evaluate, sm.EvalResponse),
    "check": (handlers.check, sm.CheckResponse),
    "sweep": (handlers.sweep, sm.SweepResponse),
}


def _dispatch(args, action: str, request):
    if getattr(args, "server", None):
        import httpx

        url = args.server.rstrip("/") + _ENDPOINTS[action]
        resp = httpx.post(url, json=json.loads(request.model_dump_json()), timeout=600.0)
        if resp.status_code == 422 and "error" in resp.json():
            raise _rebuild_remote(resp.json())
        resp.raise_for_status()
        return _LOCAL[action][1].model_validate(resp.json())
    return _LOCAL[action][0](request)


# ---------------------------------------------------------------------------
# Argument plumbing
# ---------------------------------------------------------------------------


def _generator_source(args, default: str | None = "identity") -> str | sm.GeneratorModel | None:
    name = getattr(args, "generator", None)
    path = getattr(args, "generator_file", None)
    if name and path:
        raise ParameterError("exactly one generator source: --generator or --generator-file")
    if path:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
        return sm.GeneratorModel(**doc)
    return name if name else default


def _quadrature(args) -> sm.QuadratureModel:
    rel = args.rel_tol
    if rel is None:
        env = os.environ.get("PSEUDOCALC_QUAD_TOL")
        rel = float(env) if env else 1e-10
    return sm.QuadratureModel(
        rel_tol=rel,
        abs_tol=args.abs_tol if args.abs_tol is not None else 1e-12,
        max_depth=args.max_depth if args.max_depth is not None else 50,
    )


def _parse_param(text: str) -> tuple[str, float | bool | str]:
    if "=" not in text:
        raise argparse.ArgumentTypeError(f"expected key=value, got {text!r}")
    key, raw = text.split("=", 1)
    low = raw.strip().lower()
    if low in ("true", "false"):
        return key.strip(), low == "true"
    try:
        return key.strip(), float(raw)
    except ValueError:
        return key.strip(), raw.strip()


def _parse_range(text: str) -> tuple[str, dict]:
    # key=lo:hi:steps
    if "=" not in text:
        raise argparse.ArgumentTypeError(f"expected key=lo:hi:steps, got {text!r}")
    key, spec_text = text.split("=", 1)
    parts = spec_text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected lo:hi:steps in {text!r}")
    return key.strip(), {"lo": float(parts[0]), "hi": float(parts[1]), "steps": int(parts[2])}


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--generator", default=None,
                   help="builtin generator name (identity, power:<lam>, neglog); "
                   "defaults to identity unless --generator-file is given")
    p.add_argument("--generator-file", help="JSON file with a custom generator definition")
    p.add_argument("--format", choices=("human", "json", "csv"), default="human")
    p.add_argument("--rel-tol", type=float, default=None,
                   help="quadrature relative tolerance (env PSEUDOCALC_QUAD_TOL)")
    p.add_argument("--abs-tol", type=float, default=None)
    p.add_argument("--max-depth", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--server", default=None, help="base URL of a running pseudocalc service")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pseudocalc",
        description="Pseudo-arithmetic, pseudo-calculus and inequality verification "
        "parameterized by a generator function.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate a generator definition")
    _add_common(p)
    p.add_argument("--samples", type=int, default=65)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("integrate", help="compute a pseudo-integral of an expression")
    _add_common(p)
    p.add_argument("--f", required=True, help="integrand expression in x (raw space)")
    p.add_argument("--from", dest="a", type=float, required=True)
    p.add_argument("--to", dest="b", type=float, required=True)
    p.add_argument("--flavor", choices=("g", "oplus", "gh"), default="g")
    p.add_argument("--h", default=None, help="weight expression for flavor gh")
    p.set_defaults(func=cmd_integrate)

    p = sub.add_parser("derive", help="compute a pseudo-derivative of an expression")
    _add_common(p)
    p.add_argument("--f", required=True)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--flavor", choices=("g", "oplus"), default="g")
    p.add_argument("--step", type=float, default=None)
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("eval", help="evaluate one pseudo-algebra operation")
    _add_common(p)
    p.add_argument("--op", required=True,
                   choices=("add", "sub", "mul", "div", "odot", "pow", "abs", "exp", "ln", "cmp"))
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--y", type=float, default=None)
    p.add_argument("--scalar", type=float, default=None, help="n for odot, p for pow")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("check", help="run an inequality suite")
    _add_common(p)
    p.add_argument("--suite", help="suite JSON file")
    p.add_argument("--inequality", help="inline single inequality name")
    p.add_argument("--param", action="append", default=[], metavar="KEY=VALUE")
    p.add_argument("--f", default=None)
    p.add_argument("--h", default=None)
    p.add_argument("--from", dest="a", type=float, default=None)
    p.add_argument("--to", dest="b", type=float, default=None)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("sweep", help="sweep inequality parameters, CSV output")
    _add_common(p)
    p.add_argument("--inequality", required=True)
    p.add_argument("--range", action="append", default=[], metavar="KEY=LO:HI:STEPS")
    p.add_argument("--param", action="append", default=[], metavar="KEY=VALUE")
    p.add_argument("--f", default=None)
    p.add_argument("--h", default=None)
    p.add_argument("--from", dest="a", type=float, default=None)
    p.add_argument("--to", dest="b", type=float, default=None)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    return parser


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------


def _emit_json(model: pydantic.BaseModel) -> None:
    sys.stdout.write(model.model_dump_json(indent=2, by_alias=True) + "\n")


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _emit_csv(rows: list[sm.VerdictRowModel], columns: Sequence[str]) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        data = row.model_dump(by_alias=True)
        writer.writerow([_cell(data.get(col)) for col in columns])
    sys.stdout.write(buf.getvalue())


def _verdict_table(rows: list[sm.VerdictRowModel]) -> str:
    lines = [f"{'name':<22} {'generator':<10} {'lhs_img':>14} {'rhs_img':>14} "
             f"{'margin':>12} holds"]
    for r in rows:
        lhs = "-" if r.lhs_img is None else f"{r.lhs_img:.6g}"
        rhs = "-" if r.rhs_img is None else f"{r.rhs_img:.6g}"
        margin = "-" if r.margin is None else f"{r.margin:.3e}"
        mark = "yes" if r.holds else "NO"
        suffix = f"  [{r.error}]" if r.error else ""
        lines.append(f"{r.name:<22} {r.generator:<10} {lhs:>14} {rhs:>14} {margin:>12} {mark}{suffix}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_validate(args) -> int:
    try:
        req = sm.ValidateRequest(generator=_generator_source(args), samples=args.samples)
        resp = _dispatch(args, "validate", req)
    except (PseudoCalcError, pydantic.ValidationError, OSError, json.JSONDecodeError) as exc:
        return _config_error(exc)
    if args.format == "json":
        _emit_json(resp)
    else:
        print(f"generator {resp.generator} ({resp.direction}): "
              f"{'all checks passed' if resp.passed else 'CHECKS FAILED'}")
        for c in resp.checks:
            status = "ok  " if c.passed else "FAIL"
            print(f"  [{status}] {c.name}: max violation {c.max_violation:.3e} {c.detail}")
    return EXIT_OK if resp.passed else EXIT_FAILED


def cmd_integrate(args) -> int:
    try:
        req = sm.IntegrateRequest(
            generator=_generator_source(args), f=args.f, a=args.a, b=args.b,
            flavor=args.flavor, h=args.h, quadrature=_quadrature(args),
        )
    except (pydantic.ValidationError, OSError, json.JSONDecodeError) as exc:
        return _config_error(exc)
    try:
        resp = _dispatch(args, "integrate", req)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILED
    except QUAD_FAILURES as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_QUADRATURE
    except (PseudoCalcError, pydantic.ValidationError) as exc:
        return _config_error(exc)
    if args.format == "json":
        _emit_json(resp)
    else:
        raw = "-" if resp.raw is None else f"{resp.raw:.12g}"
        print(f"raw      {raw}")
        print(f"image    {resp.image:.12g}")
        print(f"quad_err {resp.error_estimate:.3e}")
    return EXIT_OK


def cmd_derive(args) -> int:
    try:
        req = sm.DeriveRequest(
            generator=_generator_source(args), f=args.f, x=args.x,
            flavor=args.flavor, step=args.step,
        )
    except (pydantic.ValidationError, OSError, json.JSONDecodeError) as exc:
        return _config_error(exc)
    try:
        resp = _dispatch(args, "derive", req)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILED
    except QUAD_FAILURES as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_QUADRATURE
    except (PseudoCalcError, pydantic.ValidationError) as exc:
        return _config_error(exc)
    if args.format == "json":
        _emit_json(resp)
    else:
        print(f"raw   {resp.raw:.12g}")
        print(f"image {resp.image:.12g}")
    return EXIT_OK


def cmd_eval(args) -> int:
    try:
        req = sm.EvalRequest(
            generator=_generator_source(args), op=args.op, x=args.x, y=args.y,
            scalar=args.scalar,
        )
    except (pydantic.ValidationError, OSError, json.JSONDecodeError) as exc:
        return _config_error(exc)
    try:
        resp = _dispatch(args, "eval", req)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILED
    except QUAD_FAILURES as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_QUADRATURE
    except (PseudoCalcError, pydantic.ValidationError) as exc:
        return _config_error(exc)
    if args.format == "json":
        _emit_json(resp)
    elif resp.ordering is not None:
        print(resp.ordering)
    else:
        print(f"raw   {resp.raw:.12g}")
        print(f"image {resp.image:.12g}")
    return EXIT_OK


def _inline_suite(args) -> sm.SuiteModel:
    params = dict(_parse_param(p) for p in args.param)
    functions = {}
    if args.f:
        functions["f"] = args.f
    if args.h:
        functions["h"] = args.h
    interval = None
    if args.a is not None and args.b is not None:
        interval = (args.a, args.b)
    item = sm.SuiteItemModel(
        inequality=args.inequality, params=params, functions=functions, interval=interval,
    )
    return sm.SuiteModel(items=[item])


def cmd_check(args) -> int:
    try:
        if args.suite:
            with open(args.suite, "r", encoding="utf-8") as fh:
                doc = json.load(fh)
            suite = sm.SuiteModel(**doc)
        elif args.inequality:
            suite = _inline_suite(args)
        else:
            raise ParameterError("check needs --suite or --inequality")
        req = sm.CheckRequest(
            suite=suite,
            generator=_generator_source(args, default=None),
            seed=args.seed,
            quadrature=_quadrature(args),
        )
        resp = _dispatch(args, "check", req)
    except (PseudoCalcError, pydantic.ValidationError, OSError, json.JSONDecodeError) as exc:
        return _config_error(exc)
    if args.format == "json":
        _emit_json(resp)
    elif args.format == "csv":
        _emit_csv(resp.verdicts, CHECK_CSV_COLUMNS)
    else:
        print(_verdict_table(resp.verdicts))
        for e in resp.errors:
            print(f"item {e.index} ({e.inequality}): {e.error}: {e.message}", file=sys.stderr)
        print(f"{resp.held}/{resp.total} hold")
    return EXIT_OK if resp.all_hold else EXIT_FAILED


def cmd_sweep(args) -> int:
    try:
        ranges = dict(_parse_range(r) for r in args.range)
        params = dict(_parse_param(p) for p in args.param)
        functions = {}
        if args.f:
            functions["f"] = args.f
        if args.h:
            functions["h"] = args.h
        interval = (args.a, args.b) if args.a is not None and args.b is not None else None
        req = sm.SweepRequest(
            generator=_generator_source(args), inequality=args.inequality,
            params=params, functions=functions, interval=interval, ranges=ranges,
            seed=args.seed, quadrature=_quadrature(args),
        )
        resp = _dispatch(args, "sweep", req)
    except (PseudoCalcError, pydantic.ValidationError, OSError, json.JSONDecodeError) as exc:
        return _config_error(exc)
    if args.format == "json":
        _emit_json(resp)
    else:
        _emit_csv(resp.rows, SWEEP_CSV_COLUMNS)
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    uvicorn.run("pseudocalc.service.app:app", host=args.host, port=args.port)
    return EXIT_OK


def _config_error(exc: Exception) -> int:
    if isinstance(exc, ParseError):
        print(f"error: {exc}", file=sys.stderr)
    else:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
    return EXIT_CONFIG


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
