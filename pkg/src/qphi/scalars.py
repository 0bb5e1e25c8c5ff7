"""Scalar arithmetic with two interchangeable backends.

A ``Scalar`` is either an exact rational (``gmpy2.mpq``) or an
arbitrary-precision binary float (``gmpy2.mpfr``).  Exact scalars are always
stored normalized (lowest terms, positive denominator) -- gmpy2 guarantees
that.  Float scalars carry their precision; one computation runs at one
precision, fixed up front via ``float_context``.  Mixing float precisions
inside a single expression is an error, checked at the entry points with
``check_same_precision``.

Rationals serialize as ``"p/q"`` (or ``"p"``); floats serialize as decimal
strings that round-trip exactly at their stated precision.
"""

from __future__ import annotations

from typing import Iterable, Union

import gmpy2
from gmpy2 import mpfr, mpq

from .errors import PrecisionMismatchError

Scalar = Union[mpq, mpfr]

#: Default float precision in bits.
DEFAULT_PRECISION = 128

#: Guard bits added internally so results round-trip well inside 2^-(p-16).
GUARD_BITS = 16

ZERO = mpq(0)
ONE = mpq(1)


def rat(p, q=1) -> mpq:
    """Exact rational p/q."""
    return mpq(p, q)


def is_exact(x: Scalar) -> bool:
    return not isinstance(x, mpfr)


def backend(x: Scalar) -> str:
    """``"exact"`` or ``"float"``."""
    return "float" if isinstance(x, mpfr) else "exact"


def float_context(precision: int):
    """Context manager fixing the working mpfr precision.

    All float-mode computations in the package run inside one of these; the
    precision is set once per computation, never per operand.
    """
    if precision < 2:
        raise ValueError(f"precision must be >= 2 bits, got {precision}")
    return gmpy2.context(gmpy2.get_context(), precision=precision)


def to_float(x, precision: int = DEFAULT_PRECISION) -> mpfr:
    """Convert to mpfr at the given precision (exact inputs round once)."""
    return mpfr(x, precision)


def check_same_precision(values: Iterable[Scalar], precision: int) -> None:
    """Reject float inputs whose precision differs from the computation's."""
    for v in values:
        if isinstance(v, mpfr) and v.precision != precision:
            raise PrecisionMismatchError(
                f"operand has precision {v.precision}, computation uses {precision}"
            )


def parse_scalar(text: str, mode: str = "exact", precision: int = DEFAULT_PRECISION) -> Scalar:
    """Parse ``"p/q"``, ``"p"``, or (float mode) a decimal literal."""
    text = text.strip()
    if mode == "exact":
        try:
            return mpq(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not an exact rational: {text!r}") from exc
    if mode == "float":
        try:
            if "/" in text:
                return to_float(mpq(text), precision)
            return mpfr(text, precision)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a numeric literal: {text!r}") from exc
    raise ValueError(f"unknown scalar mode {mode!r}")


def format_scalar(x: Scalar) -> str:
    """Serialize a scalar.

    Rationals render as ``p/q`` (``p`` when the denominator is 1).  Floats
    render with enough decimal digits to round-trip at their own precision.
    """
    if isinstance(x, mpfr):
        return str(x)
    return str(x)


def close_rel(a: Scalar, b: Scalar, rel_tol) -> bool:
    """|a-b| <= rel_tol * max(|a|, |b|), with exact zero matching zero."""
    if a == b:
        return True
    scale = max(abs(a), abs(b))
    return abs(a - b) <= rel_tol * scale


def rel_error(a: Scalar, b: Scalar):
    """Relative difference |a-b|/max(|a|,|b|), 0 when equal."""
    if a == b:
        return ZERO
    scale = max(abs(a), abs(b))
    return abs(a - b) / scale


def float_agree_tol(precision: int) -> mpfr:
    """The documented cross-backend agreement tolerance 2^-(precision-16)."""
    return mpfr(2, 64) ** -(precision - 16)
