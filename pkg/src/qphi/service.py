"""HTTP service over the core library.

The do_* handlers are plain functions on the pydantic models; the FastAPI app
is a thin routing layer over them, and the CLI calls the same handlers
in-process by default (or over HTTP with --url).  Run a server with

    uvicorn qphi.service:app
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from gmpy2 import mpfr, mpq

from .contiguous import ShiftPair, ShiftTriple, coeff_st, coeff_st_tilde, coeff_uv
from .errors import QphiError
from .models import (
    BenchRequest,
    BenchResponse,
    BesselRequest,
    BesselResponse,
    CoeffRequest,
    CoeffResponse,
    EvalRequest,
    EvalResponse,
    LommelRequest,
    LommelResponse,
    LommelRow,
    VerifyRequest,
    VerifyResponse,
)
from .phi import PhiSpec, phi_eval_detailed
from .qbessel import BesselParams, jackson_j, r2, r3
from .scalars import GUARD_BITS, float_context, format_scalar, parse_scalar
from .verify import IDENTITY_IDS, IdentityCase, Report, SweepConfig, run_bench, run_case, run_sweep

__all__ = [
    "app",
    "do_eval",
    "do_coeff",
    "do_bessel",
    "do_lommel",
    "do_verify",
    "do_bench",
]


def _flexible(text: str, precision: int):
    """A rational if the literal is one, else a float at the given precision."""
    try:
        return mpq(text.strip())
    except ValueError:
        return mpfr(text.strip(), precision)


def do_eval(req: EvalRequest) -> EvalResponse:
    precision = req.precision if req.mode == "float" else None
    upper = tuple(parse_scalar(u, req.mode, req.precision) for u in req.upper)
    lower = tuple(parse_scalar(b, req.mode, req.precision) for b in req.lower)
    q = parse_scalar(req.q, req.mode, req.precision)
    x = parse_scalar(req.x, req.mode, req.precision)
    result = phi_eval_detailed(
        PhiSpec(upper, lower, q, x), max_terms=req.max_terms, precision=precision
    )
    return EvalResponse(
        value=format_scalar(result.value),
        mode=req.mode,
        precision=precision,
        terms_used=result.terms_used,
        tail_bound=None if result.tail_bound is None else format_scalar(result.tail_bound),
        terminated=result.terminated,
    )


def do_coeff(req: CoeffRequest) -> CoeffResponse:
    precision = req.precision if req.mode == "float" else None
    work = req.precision + GUARD_BITS

    def scalars():
        c = parse_scalar(req.c, req.mode, work)
        x = parse_scalar(req.x, req.mode, work)
        q = parse_scalar(req.q, req.mode, work)
        a = None if req.a is None else parse_scalar(req.a, req.mode, work)
        return a, c, x, q

    if req.mode == "float":
        with float_context(work):
            a, c, x, q = scalars()
            pair = _coeff_pair(req, a, c, x, q)
        with float_context(req.precision):
            values = tuple(+v for v in pair[1])
        pair = (pair[0], values)
    else:
        a, c, x, q = scalars()
        pair = _coeff_pair(req, a, c, x, q)
    names, values = pair
    return CoeffResponse(
        flavor={"st": "ST", "st2": "ST_TILDE", "uv": "UV"}[req.family],
        pair={names[0]: format_scalar(values[0]), names[1]: format_scalar(values[1])},
        mode=req.mode,
        precision=precision,
    )


def _coeff_pair(req: CoeffRequest, a, c, x, q):
    if req.family == "st":
        pair = coeff_st(ShiftTriple(req.k, req.m, req.n), a, c, x, q)
        return ("S", "T"), (pair.first, pair.second)
    if req.family == "st2":
        pair = coeff_st_tilde(ShiftTriple(req.k, req.m, req.n), a, c, x, q)
        return ("St", "Tt"), (pair.first, pair.second)
    pair = coeff_uv(ShiftPair(req.m, req.n), c, x, q)
    return ("U", "V"), (pair.first, pair.second)


def do_bessel(req: BesselRequest) -> BesselResponse:
    nu = None if req.nu is None else _flexible(req.nu, req.precision + GUARD_BITS)
    t = None if req.t is None else _flexible(req.t, req.precision + GUARD_BITS)
    x = _flexible(req.x, req.precision + GUARD_BITS)
    q = _flexible(req.q, req.precision + GUARD_BITS)
    value = jackson_j(BesselParams(req.kind, x, q, nu=nu, t=t), precision=req.precision)
    return BesselResponse(value=format_scalar(value), kind=req.kind, precision=req.precision)


def do_lommel(req: LommelRequest) -> LommelResponse:
    t = parse_scalar(req.t)
    q = parse_scalar(req.q)
    coeff = (r2 if req.kind == 2 else r3)(req.m, req.n, t, q)
    rows = [
        LommelRow(exponent=e, coefficient=format_scalar(v))
        for e, v in sorted(coeff.value.items())
    ]
    return LommelResponse(
        kind=req.kind, m=req.m, n=req.n, rows=rows, den_order=coeff.den_order
    )


def do_verify(req: VerifyRequest) -> VerifyResponse:
    if req.case is not None:
        case = IdentityCase.from_dict(req.case, seed=req.seed)
        result = run_case(case, req.order, req.precision, req.condition)
        report = Report(
            config={
                "case": case.to_dict(),
                "order": req.order,
                "precision": req.precision,
                "condition": req.condition,
            },
            cases=[result],
        )
        return VerifyResponse(ok=report.ok, report=report.to_dict(), wall_time=report.wall_time)
    if req.suite == "all":
        identities = IDENTITY_IDS
    elif req.suite in IDENTITY_IDS:
        identities = (req.suite,)
    else:
        raise ValueError(f"unknown suite {req.suite!r}; know 'all' and {list(IDENTITY_IDS)}")
    modes = ("exact", "float") if req.mode == "both" else (req.mode,)
    config = SweepConfig(
        identities=identities,
        max_shift=req.max_shift,
        trials=req.trials,
        seed=req.seed,
        modes=modes,
        order=req.order,
        precision=req.precision,
        condition=req.condition,
    )
    report = run_sweep(config)
    return VerifyResponse(ok=report.ok, report=report.to_dict(), wall_time=report.wall_time)


def do_bench(req: BenchRequest) -> BenchResponse:
    params = None
    if req.params is not None:
        params = {name: parse_scalar(value) for name, value in req.params.items()}
        missing = {"a", "c", "x", "q"} - set(params)
        if missing:
            raise ValueError(f"bench params missing {sorted(missing)}")
    result = run_bench(
        req.k, req.m, req.n, params=params, repeat=req.repeat,
        precision=req.precision, seed=req.seed,
    )
    return BenchResponse(ok=result["agree"], result=result)


app = FastAPI(title="qphi", version="0.1.0")


@app.exception_handler(QphiError)
async def _qphi_error(request: Request, exc: QphiError) -> JSONResponse:
    return JSONResponse(status_code=400, content={"error": type(exc).__name__, "detail": str(exc)})


@app.exception_handler(ValueError)
async def _value_error(request: Request, exc: ValueError) -> JSONResponse:
    return JSONResponse(status_code=422, content={"error": "ValueError", "detail": str(exc)})


@app.get("/")
async def root() -> dict:
    return {"name": "qphi", "version": app.version, "endpoints": ["/eval", "/coeff", "/bessel", "/lommel", "/verify", "/bench"]}


@app.post("/eval", response_model=EvalResponse)
async def eval_endpoint(req: EvalRequest) -> EvalResponse:
    return do_eval(req)


@app.post("/coeff", response_model=CoeffResponse)
async def coeff_endpoint(req: CoeffRequest) -> CoeffResponse:
    return do_coeff(req)


@app.post("/bessel", response_model=BesselResponse)
async def bessel_endpoint(req: BesselRequest) -> BesselResponse:
    return do_bessel(req)


@app.post("/lommel", response_model=LommelResponse)
async def lommel_endpoint(req: LommelRequest) -> LommelResponse:
    return do_lommel(req)


@app.post("/verify", response_model=VerifyResponse)
async def verify_endpoint(req: VerifyRequest) -> VerifyResponse:
    return do_verify(req)


@app.post("/bench", response_model=BenchResponse)
async def bench_endpoint(req: BenchRequest) -> BenchResponse:
    return do_bench(req)
