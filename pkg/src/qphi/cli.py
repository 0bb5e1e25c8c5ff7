"""Command-line surface.

Every subcommand builds a request model and calls the service handler layer
in-process; pass --url to target a running HTTP server instead.  Exit codes:
0 success, 1 verification failure or pole, 2 usage error.
"""

from __future__ import annotations

import json
import sys

import click
import httpx
from pydantic import ValidationError

from . import service
from .errors import NonTerminatingError, QphiError
from .models import (
    BenchRequest,
    BesselRequest,
    CoeffRequest,
    EvalRequest,
    LommelRequest,
    VerifyRequest,
)
from .verify import render_table


@click.group()
@click.option("--url", default=None, help="Base URL of a running qphi service.")
@click.pass_context
def main(ctx, url):
    """Basic hypergeometric series, recurrence coefficients, q-Bessel tools."""
    ctx.obj = {"url": url}


def _invoke(ctx, path: str, handler, model, payload: dict) -> dict:
    url = ctx.obj.get("url")
    if url is None:
        try:
            request = model(**payload)
        except ValidationError as exc:
            raise click.UsageError(str(exc))
        try:
            return handler(request).model_dump()
        except (NonTerminatingError, ValueError) as exc:
            raise click.UsageError(str(exc))
        except QphiError as exc:
            click.echo(f"error: {type(exc).__name__}: {exc}", err=True)
            sys.exit(1)
    response = httpx.post(url.rstrip("/") + path, json=payload, timeout=600.0)
    if response.status_code == 200:
        return response.json()
    try:
        data = response.json()
    except ValueError:
        data = {"error": "HTTPError", "detail": response.text}
    if response.status_code == 422 or data.get("error") in ("ValueError", "NonTerminatingError"):
        raise click.UsageError(f"{data.get('error', response.status_code)}: {data.get('detail')}")
    click.echo(f"error: {data.get('error')}: {data.get('detail')}", err=True)
    sys.exit(1)


@main.command("eval")
@click.option("--phi", nargs=2, type=int, required=True, metavar="R S",
              help="Series type r s, e.g. --phi 1 1.")
@click.option("--upper", multiple=True, help="Upper parameter (repeatable).")
@click.option("--lower", multiple=True, help="Lower parameter (repeatable).")
@click.option("--q", required=True)
@click.option("--x", required=True)
@click.option("--mode", type=click.Choice(["exact", "float"]), default="exact")
@click.option("--prec", type=int, default=128, help="Float precision in bits.")
@click.option("--terms", type=int, default=10_000, help="Term budget.")
@click.pass_context
def cmd_eval(ctx, phi, upper, lower, q, x, mode, prec, terms):
    """Evaluate an r-phi-s basic hypergeometric series."""
    payload = {
        "r": phi[0], "s": phi[1], "upper": list(upper), "lower": list(lower),
        "q": q, "x": x, "mode": mode, "precision": prec, "max_terms": terms,
    }
    click.echo(json.dumps(_invoke(ctx, "/eval", service.do_eval, EvalRequest, payload),
                          sort_keys=True))


@main.command("coeff")
@click.option("--family", type=click.Choice(["st", "st2", "uv"]), required=True)
@click.option("--k", type=int, default=None)
@click.option("--m", type=int, required=True)
@click.option("--n", type=int, required=True)
@click.option("--a", default=None)
@click.option("--c", required=True)
@click.option("--x", required=True)
@click.option("--q", required=True)
@click.option("--mode", type=click.Choice(["exact", "float"]), default="exact")
@click.option("--prec", type=int, default=128)
@click.pass_context
def cmd_coeff(ctx, family, k, m, n, a, c, x, q, mode, prec):
    """Three-term recurrence coefficient pair (S,T), (St,Tt), or (U,V)."""
    payload = {
        "family": family, "k": k, "m": m, "n": n, "a": a, "c": c, "x": x, "q": q,
        "mode": mode, "precision": prec,
    }
    click.echo(json.dumps(_invoke(ctx, "/coeff", service.do_coeff, CoeffRequest, payload),
                          sort_keys=True))


@main.command("bessel")
@click.option("--kind", type=click.IntRange(1, 3), required=True)
@click.option("--x", required=True)
@click.option("--q", required=True)
@click.option("--nu", default=None, help="Order (float mode).")
@click.option("--t", default=None, help="t = q^nu (exact-parameter mode).")
@click.option("--prec", type=int, default=128)
@click.pass_context
def cmd_bessel(ctx, kind, x, q, nu, t, prec):
    """Jackson q-Bessel function value J^(kind)_nu(x; q)."""
    payload = {"kind": kind, "x": x, "q": q, "nu": nu, "t": t, "precision": prec}
    click.echo(json.dumps(_invoke(ctx, "/bessel", service.do_bessel, BesselRequest, payload),
                          sort_keys=True))


@main.command("lommel")
@click.option("--kind", type=click.IntRange(2, 3), required=True)
@click.option("--m", type=int, required=True)
@click.option("--n", type=int, default=0)
@click.option("--t", required=True)
@click.option("--q", required=True)
@click.option("--format", "fmt", type=click.Choice(["text", "csv", "json"]), default="text")
@click.pass_context
def cmd_lommel(ctx, kind, m, n, t, q, fmt):
    """q-Lommel coefficient table: coefficients of (x/2)^exponent."""
    payload = {"kind": kind, "m": m, "n": n, "t": t, "q": q}
    out = _invoke(ctx, "/lommel", service.do_lommel, LommelRequest, payload)
    if fmt == "json":
        click.echo(json.dumps(out, sort_keys=True))
        return
    if fmt == "csv":
        click.echo("exponent,coefficient")
        for row in out["rows"]:
            click.echo(f"{row['exponent']},{row['coefficient']}")
        return
    for row in out["rows"]:
        click.echo(f"(x/2)^{row['exponent']}: {row['coefficient']}")
    if out["den_order"]:
        click.echo(f"denominator: (-x^2/4; q)_{out['den_order']}")


@main.command("verify")
@click.option("--suite", default="all", help="'all' or one identity id.")
@click.option("--max-shift", type=int, default=1)
@click.option("--trials", type=int, default=2)
@click.option("--seed", type=int, default=0)
@click.option("--mode", type=click.Choice(["exact", "float", "both"]), default="both")
@click.option("--order", type=int, default=32, help="Formal series order.")
@click.option("--prec", type=int, default=128)
@click.option("--condition", type=float, default=1e3)
@click.option("--case", default=None, help="Run a single IdentityCase given as JSON.")
@click.option("--format", "fmt", type=click.Choice(["table", "json"]), default="table")
@click.pass_context
def cmd_verify(ctx, suite, max_shift, trials, seed, mode, order, prec, condition, case, fmt):
    """Run identity verification sweeps (or one repro case)."""
    case_dict = None
    if case is not None:
        try:
            case_dict = json.loads(case)
        except json.JSONDecodeError as exc:
            raise click.UsageError(f"--case is not valid JSON: {exc}")
    payload = {
        "suite": suite, "max_shift": max_shift, "trials": trials, "seed": seed,
        "mode": mode, "order": order, "precision": prec, "condition": condition,
        "case": case_dict,
    }
    out = _invoke(ctx, "/verify", service.do_verify, VerifyRequest, payload)
    if fmt == "json":
        click.echo(json.dumps(out["report"], indent=2, sort_keys=True))
    else:
        click.echo(render_table(out["report"], out.get("wall_time")))
    sys.exit(0 if out["ok"] else 1)


@main.command("bench")
@click.option("--k", type=int, required=True)
@click.option("--m", type=int, required=True)
@click.option("--n", type=int, required=True)
@click.option("--repeat", type=int, default=3)
@click.option("--prec", type=int, default=128)
@click.option("--seed", type=int, default=0)
@click.option("--a", default=None)
@click.option("--c", default=None)
@click.option("--x", default=None)
@click.option("--q", default=None)
@click.pass_context
def cmd_bench(ctx, k, m, n, repeat, prec, seed, a, c, x, q):
    """Time direct summation against recurrence reconstruction; assert agreement."""
    given = {"a": a, "c": c, "x": x, "q": q}
    params = {key: value for key, value in given.items() if value is not None}
    payload = {
        "k": k, "m": m, "n": n, "repeat": repeat, "precision": prec, "seed": seed,
        "params": params or None,
    }
    out = _invoke(ctx, "/bench", service.do_bench, BenchRequest, payload)
    click.echo(json.dumps(out["result"], sort_keys=True))
    sys.exit(0 if out["ok"] else 1)


if __name__ == "__main__":
    main()
