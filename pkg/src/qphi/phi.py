"""Evaluation and formal expansion of basic hypergeometric series.

The series r_phi_s(a_1..a_r; b_1..b_s; q, x) is

    sum_{j>=0}  [ (a_1;q)_j ... (a_r;q)_j / ((q;q)_j (b_1;q)_j ... (b_s;q)_j) ]
                * [ (-1)^j q^C(j,2) ]^(1+s-r) * x^j

computed throughout by the term recurrence

    t_{j+1} / t_j = prod_i (1 - a_i q^j) / [ (1 - q^{j+1}) prod_i (1 - b_i q^j) ]
                    * ((-1) q^j)^(1+s-r) * x,      t_0 = 1.

Exact-backend evaluation requires termination (an upper parameter q^-j0).
The exact backend detects that by scanning; the float backend never compares
floats for equality and needs the termination index tagged explicitly,
otherwise it sums with a certified geometric tail bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

from gmpy2 import mpfr

from .errors import ConvergenceError, NonTerminatingError, PoleError
from .qpoch import DEFAULT_PRECISION
from .scalars import (
    GUARD_BITS,
    ONE,
    ZERO,
    Scalar,
    check_same_precision,
    float_context,
    is_exact,
)
from .series import TruncatedSeries


@dataclass(frozen=True)
class PhiSpec:
    """One r_phi_s instance.

    ``x`` is the scalar argument; in ``phi_formal`` it is read as the scalar
    scale of the formal argument (the series variable enters as x * X^power).
    ``terminate`` optionally records that some upper parameter equals
    q^-terminate; the float backend will not detect termination on its own.
    """

    upper: Tuple[Scalar, ...]
    lower: Tuple[Scalar, ...]
    q: Scalar
    x: Scalar
    terminate: Optional[int] = None

    @property
    def factor_exponent(self) -> int:
        """Exponent 1 + s - r of the (-1)^j q^C(j,2) factor."""
        return 1 + len(self.lower) - len(self.upper)


@dataclass(frozen=True)
class ScaledPair:
    """An (u/a, v/a) upper/lower parameter pair sharing the scale ``a``.

    The pair's contribution to the term ratio is evaluated as
    (a - u q^l) / (a - v q^l), which is the same rational function for
    a != 0 and stays finite at the removable point a = 0 (it tends to u/v
    there after the q^l cancellation).
    """

    u: Scalar
    v: Scalar
    a: Scalar


@dataclass(frozen=True)
class PhiResult:
    value: Scalar
    terms_used: int
    tail_bound: Optional[Scalar]
    terminated: bool


def detect_termination(upper, q, limit: int) -> Optional[int]:
    """Smallest j0 in [0, limit] with some upper parameter equal to q^-j0.

    Exact scalars only; the float backend must tag termination explicitly.
    """
    best: Optional[int] = None
    for u in upper:
        if not u:
            continue
        p = u
        for j in range(limit + 1):
            if p == 1:
                if best is None or j < best:
                    best = j
                break
            p *= q
    return best


def _sum_terminating(upper, lower, q, x, j0: int, e: int) -> Tuple[Scalar, int]:
    """Sum t_0..t_j0 by the term recurrence.  Works in either backend."""
    total = ONE + ZERO
    term = total
    qpow = ONE
    used = 1
    for j in range(j0):
        num = x
        for u in upper:
            num *= 1 - u * qpow
        den = 1 - q * qpow
        if not den:
            raise PoleError(f"(1 - q^{j + 1}) with q={q}")
        for b in lower:
            f = 1 - b * qpow
            if not f:
                raise PoleError(f"(1 - b*q^{j}) with b={b}, q={q}")
            den *= f
        term = term * num / den
        if e:
            term *= (-qpow) ** e
        qpow *= q
        if not term:
            break
        total += term
        used += 1
    return total, used


def phi_eval(
    spec: PhiSpec,
    max_terms: int = 10_000,
    tol: Optional[Scalar] = None,
    precision: Optional[int] = None,
) -> Scalar:
    """Value of the series; see ``phi_eval_detailed`` for the bookkeeping."""
    return phi_eval_detailed(spec, max_terms=max_terms, tol=tol, precision=precision).value


def phi_eval_detailed(
    spec: PhiSpec,
    max_terms: int = 10_000,
    tol: Optional[Scalar] = None,
    precision: Optional[int] = None,
) -> PhiResult:
    """Evaluate the series.

    Backend choice: float when ``precision`` is given or any input is mpfr
    (all float inputs must share that precision), exact otherwise.  The exact
    backend requires termination.  The float backend sums until its computed
    geometric tail bound drops below ``tol`` (relative; default 2^-(p+8)).
    """
    params = list(spec.upper) + list(spec.lower) + [spec.q, spec.x]
    wants_float = precision is not None or any(isinstance(v, mpfr) for v in params)
    if not wants_float:
        j0 = spec.terminate
        if j0 is None and not spec.x:
            j0 = 0  # x = 0: only the j = 0 term survives
        if j0 is None:
            j0 = detect_termination(spec.upper, spec.q, max_terms)
        if j0 is None:
            raise NonTerminatingError(
                "series does not terminate within max_terms; exact backend refuses"
            )
        value, used = _sum_terminating(
            spec.upper, spec.lower, spec.q, spec.x, j0, spec.factor_exponent
        )
        return PhiResult(value, used, None, True)

    p = precision if precision is not None else next(
        v.precision for v in params if isinstance(v, mpfr)
    )
    check_same_precision(params, p)
    j0 = spec.terminate
    if j0 is None and not spec.x:
        j0 = 0
    if j0 is None and all(is_exact(v) for v in spec.upper) and is_exact(spec.q):
        j0 = detect_termination(spec.upper, spec.q, max_terms)
    e = spec.factor_exponent
    work = p + GUARD_BITS
    with float_context(work):
        upper = tuple(mpfr(u, work) for u in spec.upper)
        lower = tuple(mpfr(b, work) for b in spec.lower)
        q = mpfr(spec.q, work)
        x = mpfr(spec.x, work)
        if j0 is not None:
            value, used = _sum_terminating(upper, lower, q, x, j0, e)
            return PhiResult(mpfr(value, p), used, None, True)
        if e < 0:
            raise ConvergenceError("r > s + 1 series diverges unless it terminates")
        if not 0 < q < 1:
            raise ConvergenceError("float tail bound requires 0 < q < 1")
        eps = mpfr(2, work) ** -(p + 8) if tol is None else mpfr(tol, work)
        total = mpfr(1, work)
        term = mpfr(1, work)
        qpow = mpfr(1, work)
        used = 1
        for j in range(max_terms):
            num = x
            for u in upper:
                num *= 1 - u * qpow
            den = 1 - q * qpow
            for b in lower:
                f = 1 - b * qpow
                if not f:
                    raise PoleError(f"(1 - b*q^{j}) with b={b}, q={q}")
                den *= f
            term = term * num / den
            if e:
                term *= (-qpow) ** e
            qpow *= q
            total += term
            used += 1
            # certified tail: |t_{j'}/t_{j'-1}| <= rho for all j' > j+1
            rho = abs(x) * qpow**e
            for u in upper:
                rho *= 1 + abs(u) * qpow
            dfac = 1 - q * qpow
            for b in lower:
                dfac *= 1 - abs(b) * qpow
            if dfac <= 0:
                continue
            rho /= dfac
            if rho < 1:
                bound = abs(term) * rho / (1 - rho)
                if bound <= eps * max(mpfr(1, work), abs(total)):
                    return PhiResult(mpfr(total, p), used, mpfr(bound, p), False)
        raise ConvergenceError("series did not meet tol within max_terms")


def phi_formal(spec: PhiSpec, order: int, x_power: int = 1) -> TruncatedSeries:
    """Expand the series as a TruncatedSeries in a formal variable X.

    The argument is spec.x * X^x_power: term j lands on exponent j*x_power
    with coefficient t_j (spec.x^j included).  Exact scalars only.
    """
    if x_power < 1:
        raise ValueError("x_power must be a positive integer")
    params = list(spec.upper) + list(spec.lower) + [spec.q, spec.x]
    if any(isinstance(v, mpfr) for v in params):
        raise ValueError("phi_formal requires exact-rational inputs")
    e = spec.factor_exponent
    coeffs = [ZERO] * (order + 1)
    coeffs[0] = ONE
    jmax = order // x_power
    if spec.terminate is not None:
        jmax = min(jmax, spec.terminate)
    term = ONE
    qpow = ONE
    q = spec.q
    for j in range(jmax):
        num = spec.x
        for u in spec.upper:
            num *= 1 - u * qpow
        den = 1 - q * qpow
        if not den:
            raise PoleError(f"(1 - q^{j + 1}) with q={q}")
        for b in spec.lower:
            f = 1 - b * qpow
            if not f:
                raise PoleError(f"(1 - b*q^{j}) with b={b}, q={q}")
            den *= f
        term = term * num / den
        if e:
            term *= (-qpow) ** e
        qpow *= q
        if not term:
            break
        coeffs[(j + 1) * x_power] = term
    return TruncatedSeries(coeffs, order)


def phi_terminating_scaled(
    j0: int,
    fixed_upper,
    pair: ScaledPair,
    fixed_lower,
    q: Scalar,
    z: Scalar,
) -> Scalar:
    """Terminating series with upper (q^-j0, *fixed_upper, u/a), lower
    (*fixed_lower, v/a), evaluated through the pair's (a - u q^l)/(a - v q^l)
    form so that the removable point a = 0 is computed directly.
    """
    r = 2 + len(fixed_upper)
    s = 1 + len(fixed_lower)
    e = 1 + s - r
    qneg = q ** (-j0) if j0 else ONE
    total = ONE + ZERO
    term = total
    qpow = ONE
    for l in range(j0):
        num = z * (1 - qneg * qpow) * (pair.a - pair.u * qpow)
        for u in fixed_upper:
            num *= 1 - u * qpow
        den = 1 - q * qpow
        if not den:
            raise PoleError(f"(1 - q^{l + 1}) with q={q}")
        for b in fixed_lower:
            f = 1 - b * qpow
            if not f:
                raise PoleError(f"(1 - b*q^{l}) with b={b}, q={q}")
            den *= f
        dp = pair.a - pair.v * qpow
        if not dp:
            raise PoleError(f"(a - v*q^{l}) with a={pair.a}, v={pair.v}, q={q}")
        den *= dp
        term = term * num / den
        if e:
            term *= (-qpow) ** e
        qpow *= q
        if not term:
            break
        total += term
    return total
