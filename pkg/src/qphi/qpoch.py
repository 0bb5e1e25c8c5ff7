"""q-Pochhammer symbols for integer and infinite index.

Conventions, for scalar a and base q:

    (a; q)_j   = prod_{i=0}^{j-1} (1 - a q^i)          j >= 1,   (a; q)_0 = 1
    (a; q)_-j  = 1 / (a q^-j; q)_j                     j >= 1
    (a; q)_inf = prod_{i>=0} (1 - a q^i)               float backend only, |q| < 1

The reciprocal 1/(q; q)_j is taken to be 0 for j < 0 (the factorial-like
convention used throughout the series coefficients); that case is exposed
separately as ``inv_q_factorial`` because (q; q)_j itself has a pole there.
"""

from __future__ import annotations

from gmpy2 import mpfr

from .errors import ConvergenceError, NonTerminatingError, PoleError
from .scalars import (
    DEFAULT_PRECISION,
    GUARD_BITS,
    ONE,
    ZERO,
    Scalar,
    check_same_precision,
    float_context,
    is_exact,
)


def q_pochhammer(a: Scalar, q: Scalar, j: int) -> Scalar:
    """(a; q)_j for any integer j."""
    if j >= 0:
        prod = ONE
        aq = a
        for _ in range(j):
            f = 1 - aq
            if not f:
                return ZERO
            prod *= f
            aq *= q
        return prod
    # (a; q)_-j = 1 / (a q^-j; q)_j : factors (1 - a q^-i), i = 1..-j
    prod = ONE
    aq = a
    for _ in range(-j):
        aq /= q
        f = 1 - aq
        if not f:
            raise PoleError(f"(1 - a*q^-i) with a={a}, q={q}")
        prod *= f
    return 1 / prod


def inv_q_factorial(q: Scalar, j: int) -> Scalar:
    """1 / (q; q)_j with the convention that it vanishes for j < 0."""
    if j < 0:
        return ZERO
    return 1 / q_pochhammer(q, q, j)


def inv_nonzero(value: Scalar, factor: str) -> Scalar:
    """1/value, raising a named PoleError instead of ZeroDivisionError."""
    if not value:
        raise PoleError(factor)
    return 1 / value


def q_pochhammer_inf(
    a: Scalar,
    q: Scalar,
    precision: int = DEFAULT_PRECISION,
    max_factors: int = 10**7,
) -> mpfr:
    """(a; q)_inf in the float backend.  Exact mode is refused.

    Stops once the remaining factors are provably within the target
    relative error: for |a q^J| = u < 1 and 0 < q < 1 the log of the
    remaining product is bounded by u / ((1-q)(1-u)).
    """
    if precision is None:
        raise_if_non_terminating_exact("(a; q)_inf")
    if not (0 < abs(q) < 1):
        raise ValueError(f"(a; q)_inf needs |q| < 1, got q={q}")
    work = precision + GUARD_BITS
    with float_context(work):
        check_same_precision([v for v in (a, q) if isinstance(v, mpfr)], precision)
        af = mpfr(a, work)
        qf = mpfr(q, work)
        eps = mpfr(2, work) ** -(precision + 8)
        prod = mpfr(1, work)
        term = af
        for _ in range(max_factors):
            u = abs(term)
            if u < 1 and u / ((1 - abs(qf)) * (1 - u)) < eps:
                break
            f = 1 - term
            if not f:
                raise PoleError(f"(1 - a*q^i) with a={a}, q={q}")
            prod *= f
            term *= qf
        else:
            raise ConvergenceError("(a; q)_inf did not converge in max_factors")
        return mpfr(prod, precision)


def q_pochhammer_ratio_inf(a: Scalar, b: Scalar, q: Scalar, i: int) -> Scalar:
    """(a; q)_inf / (b; q)_inf given that a = b * q^i, exactly telescoped.

    Works in either backend because the infinite parts cancel:
    the ratio is 1/(b; q)_i for i >= 0 and (b q^i; q)_-i for i < 0.
    """
    if is_exact(a) and is_exact(b) and is_exact(q):
        if a != b * q**i:
            raise ValueError("q_pochhammer_ratio_inf requires a = b * q^i")
    if i >= 0:
        den = q_pochhammer(b, q, i)
        if not den:
            raise PoleError(f"(b; q)_{i} with b={b}, q={q}")
        return 1 / den
    return q_pochhammer(a, q, -i)


def raise_if_non_terminating_exact(what: str) -> None:
    raise NonTerminatingError(
        f"{what} does not terminate; exact backend refuses infinite sums/products"
    )
