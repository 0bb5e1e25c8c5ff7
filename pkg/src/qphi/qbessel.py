"""Jackson q-Bessel functions and their three-term recurrences.

The three q-analogues, for 0 < q < 1:

    J1_nu(x;q) = pref * 2phi1(0, 0; q^(nu+1); q, -x^2/4)        (|x| < 2)
    J2_nu(x;q) = pref * 0phi1(-; q^(nu+1); q, -x^2 q^(nu+1)/4)
    J3_nu(x;q) = pref * 1phi1(0; q^(nu+1); q, x^2 q/4)

    pref = (q^(nu+1); q)_inf / (q; q)_inf * (x/2)^nu

J3 and J2 satisfy recurrences shifting both the order by m and the argument
by q^(n/2); the coefficients R3_{m,n} and R2_{m,n} are Laurent polynomials
(R2 with a finite Pochhammer denominator for n > 0) built from polynomial
families p3 and p2.  With t = q^nu the recurrences normalize to identities
whose every ingredient is rational in (t, x, q), which is how they are
verified exactly; their m >= 1, n = 0 specializations are the q-Lommel
polynomials, available in closed form through ``lommel_closed``.

Exact mode works with t only.  Float mode accepts a real order nu (or
derives it from t) and computes the (x/2)^nu and infinite-product
prefactors directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import gmpy2
from gmpy2 import mpfr

from .contiguous import ShiftTriple, _p11_any_a
from .errors import ConvergenceError, PoleError
from .phi import PhiSpec, phi_eval, phi_formal
from .qpoch import inv_nonzero as _inv
from .qpoch import q_pochhammer as qp
from .qpoch import q_pochhammer_inf
from .scalars import (
    DEFAULT_PRECISION,
    GUARD_BITS,
    ONE,
    ZERO,
    Scalar,
    float_context,
    is_exact,
)
from .series import LaurentPoly, TruncatedSeries


@dataclass(frozen=True)
class BesselParams:
    """Order/argument bundle for ``jackson_j``.

    Exactly one of ``nu`` (real order, float mode) and ``t`` (t = q^nu,
    exact mode) must be given.
    """

    kind: int
    x: Scalar
    q: Scalar
    nu: Optional[float] = None
    t: Optional[Scalar] = None

    def __post_init__(self):
        if self.kind not in (1, 2, 3):
            raise ValueError(f"kind must be 1, 2 or 3, got {self.kind}")
        if (self.nu is None) == (self.t is None):
            raise ValueError("exactly one of nu and t must be given")


@dataclass(frozen=True)
class LommelCoeff:
    """A recurrence coefficient R{kind}_{m,n}.

    ``value`` is a Laurent polynomial in x/2; for kind 2 with n > 0 it sits
    over the denominator (-x^2/4; q)_den_order, i.e. the product of
    (1 + (x/2)^2 q^i) for i < den_order.
    """

    kind: int
    m: int
    n: int
    value: LaurentPoly
    den_order: int
    t: Scalar
    q: Scalar

    def den_poly(self) -> LaurentPoly:
        p = LaurentPoly.constant(ONE)
        qi = ONE
        for _ in range(self.den_order):
            p = p * LaurentPoly({0: ONE, 2: qi})
            qi = qi * self.q
        return p

    def evaluate(self, x: Scalar) -> Scalar:
        w = x / 2
        v = self.value.evaluate(w)
        if self.den_order:
            v /= self.den_poly().evaluate(w)
        return v


# --- polynomial families -------------------------------------------------
#
# Scalars A3/B3 and A2/B2 (with tilded variants for n < 0); negative index
# gives 0.  Each is a Pochhammer prefactor times a terminating 2phi1.


def _phi21(j: int, u2, l1, q, z) -> Scalar:
    return phi_eval(PhiSpec((q**-j, u2), (l1,), q, z, terminate=j))


def _a3(j: int, m: int, n: int, t, q) -> Scalar:
    if j < 0:
        return ZERO
    pref = qp(t, q, m) * qp(t / q, q, m - j) * _inv(qp(q, q, j), f"(q;q)_{j}")
    pref *= q ** ((j - m + 1) * (n - 1) + 1) * t**-n
    return pref * _phi21(j, t * q ** (m - j - 1), t, q, q ** (j - n + 1))


def _b3(j: int, m: int, n: int, t, q) -> Scalar:
    if j < 0:
        return ZERO
    pref = _inv(qp(q, q, j) * qp(q * q / t, q, j), f"(q;q)_{j} (q^2/t;q)_{j}")
    pref *= (-1) ** j * q ** (j * (j + 1) // 2) * t**-j
    return pref * _phi21(j, t * q ** (-j - 1), t * q**m, q, q ** (j + n + 1))


def p3(m: int, n: int, t: Scalar, q: Scalar) -> LaurentPoly:
    """P3_{m,n}: even powers of x/2, the j-th term carrying q^j as printed.

    Degree at most max(|n|, |m-n|) - 1 in (x/2)^2 q; the zero shift gives
    the zero polynomial.
    """
    f = max(abs(n), abs(m - n)) - 1
    lo, hi = min(m, 0), max(m, 0)
    terms = {}
    for j in range(f + 1):
        coeff = q**j * (_a3(j + lo, m, n, t, q) - _b3(j - hi, m, n, t, q))
        if coeff:
            terms[2 * j] = coeff
    return LaurentPoly(terms)


def _a2(j: int, m: int, n: int, t, q) -> Scalar:
    if j < 0:
        return ZERO
    pref = qp(t, q, m) * _inv(
        qp(q, q, j) * qp(q * q / t, q, j - m), f"(q;q)_{j} (q^2/t;q)_{j - m}"
    )
    pref *= q ** ((j - m + 1) * n) * t ** -(j - m + n)
    return pref * _phi21(j, t * q ** (m - j - 1), t, q, q ** (2 * j - m - n + 1))


def _b2(j: int, m: int, n: int, t, q) -> Scalar:
    if j < 0:
        return ZERO
    pref = _inv(qp(q, q, j) * qp(q * q / t, q, j), f"(q;q)_{j} (q^2/t;q)_{j}")
    pref *= q ** (j * (j + 1)) * t ** (-2 * j)
    return pref * _phi21(j, t * q ** (-j - 1), t * q**m, q, q ** (n + 1))


def _a2t(j: int, m: int, n: int, t, q) -> Scalar:
    if j < 0:
        return ZERO
    pref = qp(t, q, m) * _inv(
        qp(q, q, j) * qp(q * q / t, q, j - m), f"(q;q)_{j} (q^2/t;q)_{j - m}"
    )
    pref *= q ** ((j - m + 1) * (j + n)) * t ** -(2 * j - m + n)
    return pref * _phi21(j, t * q ** (m - j - 1), t, q, q ** (1 - n))


def _b2t(j: int, m: int, n: int, t, q) -> Scalar:
    if j < 0:
        return ZERO
    pref = t**-j * _inv(qp(q, q, j) * qp(q * q / t, q, j), f"(q;q)_{j} (q^2/t;q)_{j}")
    return pref * _phi21(j, t * q ** (-j - 1), t * q**m, q, q ** (2 * j + m + n + 1))


def p2(m: int, n: int, t: Scalar, q: Scalar) -> LaurentPoly:
    """P2_{m,n}: even powers of x/2 with sign/power factor (-1)^j t^j."""
    g = (m + n + 1) // 2 - min(m, n, m + n, 0) - 1
    lo, hi = min(m, 0), max(m, 0)
    fam_a, fam_b = (_a2, _b2) if n >= 0 else (_a2t, _b2t)
    terms = {}
    sign_t = ONE
    for j in range(g + 1):
        coeff = sign_t * (fam_a(j + lo, m, n, t, q) - fam_b(j - hi, m, n, t, q))
        if coeff:
            terms[2 * j] = coeff
        sign_t = -sign_t * t
    return LaurentPoly(terms)


def r3(m: int, n: int, t: Scalar, q: Scalar) -> LommelCoeff:
    """R3_{m,n}: pure Laurent polynomial in x/2.

    The infinite-product prefactor telescopes exactly to 1/(t/q; q)_{m+2}.
    """
    pref = q ** -max(m + 1, 0) * _inv(qp(t / q, q, m + 2), f"(t/q;q)_{m + 2}")
    value = p3(m + 1, n, t, q).scale(pref).shift(min(m + 2, -m))
    return LommelCoeff(3, m, n, value, 0, t, q)


def r2(m: int, n: int, t: Scalar, q: Scalar) -> LommelCoeff:
    """R2_{m,n}: Laurent numerator over (-x^2/4; q)_max(n,0)."""
    pref = (
        (-1) ** max(m + 1, 0)
        * t ** min(m + 1, 0)
        * q ** (m * (m - 1) // 2 - 1)
        * _inv(qp(t / q, q, m + 2), f"(t/q;q)_{m + 2}")
    )
    value = p2(m + 1, n, t, q).scale(pref).shift(min(m + 2, -m))
    return LommelCoeff(2, m, n, value, max(n, 0), t, q)


def lommel_closed(kind: int, m: int, t: Scalar, q: Scalar) -> LommelCoeff:
    """q-Lommel polynomial of degree m >= 1 in closed form.

    Matches r3(m, 0, t, q) and r2(m, 0, t, q) exactly; the kind-3 sum is
    stated at argument 2x, which in the x/2 convention used here lands on
    the same Laurent polynomial.
    """
    if kind not in (2, 3):
        raise ValueError(f"kind must be 2 or 3, got {kind}")
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    terms = {}
    if kind == 3:
        for j in range(m + 1):
            coeff = qp(t, q, m - j) * _inv(qp(q, q, j), f"(q;q)_{j}")
            coeff *= _phi21(j, t * q ** (m - j), t, q, q ** (j + 1))
            if coeff:
                terms[2 * j - m] = coeff
    else:
        for j in range(m // 2 + 1):
            coeff = (
                (-1) ** j
                * qp(t, q, m - j)
                * qp(q, q, m - j)
                * _inv(
                    qp(q, q, j) * qp(t, q, j) * qp(q, q, m - 2 * j),
                    f"(q;q)_{j} (t;q)_{j} (q;q)_{m - 2 * j}",
                )
                * t**j
                * q ** (j * (j - 1))
            )
            if coeff:
                terms[2 * j - m] = coeff
    return LommelCoeff(kind, m, 0, LaurentPoly(terms), 0, t, q)


# --- normalized recurrence residuals --------------------------------------
#
# Dividing the J3 recurrence by (q^(nu+1);q)_inf/(q;q)_inf * (x/2)^nu leaves
#
#   (x/2)^m/(tq;q)_m * 1phi1(0; tq^(m+1); q, x^2 q^(n+1)/4)
#     - R3_{m,n} * 1phi1(0; tq; q, x^2 q/4)
#     + R3_{m-1,n}|_{t->tq} * (1-t) * (x/2)^-1 * 1phi1(0; t; q, x^2 q/4)
#
# and the J2 recurrence likewise with leading factor t^m q^C(m,2) and 0phi1
# arguments -(x^2/4) t q^(m+n+1), -(x^2/4) t q, -(x^2/4) t.  Every piece is
# rational in (t, x, q), so the residual can be expanded as an exact formal
# series in x/2 (cleared of denominators) or evaluated in floats.


def _combine_formal(polys, specs, order: int) -> TruncatedSeries:
    sig = min([0] + [p.min_exp() for p in polys if not p.is_zero()])
    total = TruncatedSeries.zero(order)
    for poly, spec in zip(polys, specs):
        if poly.is_zero():
            continue
        total = total + phi_formal(spec, order, x_power=2).mul_poly(poly.shift(-sig))
    return total


def j3_parts(m: int, n: int, t, q):
    c1 = LaurentPoly({m: _inv(qp(t * q, q, m), f"(tq;q)_{m}")})
    c2 = -r3(m, n, t, q).value
    c3 = r3(m - 1, n, t * q, q).value.scale(1 - t).shift(-1)
    specs = (
        PhiSpec((ZERO,), (t * q ** (m + 1),), q, q ** (n + 1)),
        PhiSpec((ZERO,), (t * q,), q, q),
        PhiSpec((ZERO,), (t,), q, q),
    )
    return (c1, c2, c3), specs


def j2_parts(m: int, n: int, t, q):
    den = r2(m, n, t, q).den_poly()  # shared by both R2 instances
    lead = t**m * q ** (m * (m - 1) // 2) * _inv(qp(t * q, q, m), f"(tq;q)_{m}")
    c1 = LaurentPoly({m: lead}) * den
    c2 = -r2(m, n, t, q).value
    c3 = r2(m - 1, n, t * q, q).value.scale(1 - t).shift(-1)
    specs = (
        PhiSpec((), (t * q ** (m + 1),), q, -t * q ** (m + n + 1)),
        PhiSpec((), (t * q,), q, -t * q),
        PhiSpec((), (t,), q, -t),
    )
    return (c1, c2, c3), specs


def j3_residual_series(m: int, n: int, t, q, order: int = 32) -> TruncatedSeries:
    """Normalized J3 recurrence residual as an exact series in x/2."""
    polys, specs = j3_parts(m, n, t, q)
    return _combine_formal(polys, specs, order)


def j2_residual_series(m: int, n: int, t, q, order: int = 32) -> TruncatedSeries:
    """Normalized J2 recurrence residual (cleared of the R2 denominator)."""
    polys, specs = j2_parts(m, n, t, q)
    return _combine_formal(polys, specs, order)


def _residual_value(parts, x, q, precision: Optional[int]) -> Scalar:
    p = precision if precision is not None else DEFAULT_PRECISION
    work = p + GUARD_BITS
    (c1, c2, c3), specs = parts
    with float_context(work):
        w = mpfr(x) / 2
        total = mpfr(0)
        for poly, spec in zip((c1, c2, c3), specs):
            if poly.is_zero():
                continue
            arg = mpfr(spec.x) * w * w
            val = phi_eval(
                PhiSpec(spec.upper, spec.lower, spec.q, arg), precision=work
            )
            total += poly.evaluate(w) * val
    with float_context(p):
        return +total


def j3_recurrence_residual(
    m: int, n: int, t, x, q, precision: Optional[int] = None
) -> Scalar:
    """Float value of the normalized J3 residual; zero up to roundoff.

    The exact statement of the same identity is ``j3_residual_series``.
    """
    return _residual_value(j3_parts(m, n, t, q), x, q, precision)


def j2_recurrence_residual(
    m: int, n: int, t, x, q, precision: Optional[int] = None
) -> Scalar:
    """Float value of the normalized J2 residual; zero up to roundoff."""
    return _residual_value(j2_parts(m, n, t, q), x, q, precision)


# --- Jackson's functions in J-normalization --------------------------------


def _resolve_order(params: BesselParams, q):
    """Return (nu_float_or_None, integer_order_or_None, t)."""
    if params.t is not None:
        t = params.t
        if is_exact(t) and is_exact(params.q):
            i = round(gmpy2.log(mpfr(t)) / gmpy2.log(mpfr(params.q)))
            if params.q**i == t:
                return None, int(i), t
        nu = gmpy2.log(mpfr(t)) / gmpy2.log(q)
        return nu, None, t
    nu = params.nu
    f = float(nu)
    if f.is_integer():
        return None, int(f), params.q ** int(f)
    return mpfr(nu), None, gmpy2.exp(mpfr(nu) * gmpy2.log(q))


def jackson_j(params: BesselParams, precision: Optional[int] = None) -> Scalar:
    """Evaluate J1, J2 or J3 at real order, float backend.

    For nonnegative integer order the prefactor ratio collapses exactly to
    1/(q;q)_nu before rounding; otherwise both infinite products are summed
    at guarded precision.  Noninteger order requires x > 0.
    """
    p = precision if precision is not None else DEFAULT_PRECISION
    work = p + GUARD_BITS
    with float_context(work):
        q = mpfr(params.q)
        if not 0 < q < 1:
            raise ValueError(f"q must satisfy 0 < q < 1, got {params.q}")
        x = mpfr(params.x)
        nu, order, t = _resolve_order(params, q)
        if order is not None:
            if order < 0:
                raise PoleError(f"(q^(nu+1);q)_inf at integer nu = {order} < 0")
            half_pow = mpfr(1) if (not x and order == 0) else (x / 2) ** order
            if is_exact(params.q):
                ratio = mpfr(_inv(qp(params.q, params.q, order), f"(q;q)_{order}"))
            else:
                ratio = _inv(qp(q, q, order), f"(q;q)_{order}")
            qv = q ** (order + 1)
        else:
            if not x > 0:
                raise ValueError("noninteger order requires x > 0")
            half_pow = gmpy2.exp(nu * gmpy2.log(x / 2))
            qv = gmpy2.exp((nu + 1) * gmpy2.log(q))
            ratio = q_pochhammer_inf(qv, q, work) / q_pochhammer_inf(q, q, work)
        if params.kind == 1:
            if not abs(x) < 2:
                raise ConvergenceError(f"kind 1 requires |x| < 2, got x = {params.x}")
            spec = PhiSpec((ZERO, ZERO), (qv,), q, -x * x / 4)
        elif params.kind == 2:
            spec = PhiSpec((), (qv,), q, -x * x * qv / 4)
        else:
            spec = PhiSpec((ZERO,), (qv,), q, x * x * q / 4)
        value = ratio * half_pow * phi_eval(spec, precision=work)
    with float_context(p):
        return +value


def jackson_recurrence_residual(
    kind: int, m: int, n: int, nu, x, q, precision: Optional[int] = None
) -> Scalar:
    """Residual of the J3 (kind 3) or J2 (kind 2) recurrence as printed,
    in true J-normalization with real order nu; float backend."""
    if kind not in (2, 3):
        raise ValueError(f"kind must be 2 or 3, got {kind}")
    p = precision if precision is not None else DEFAULT_PRECISION
    work = p + GUARD_BITS
    with float_context(work):
        qf = mpfr(q)
        nu = mpfr(nu)
        xf = mpfr(x)
        t = gmpy2.exp(nu * gmpy2.log(qf))
        xs = xf * qf ** (mpfr(n) / 2)
        lhs_pref = qf ** (-(nu + m) * n / 2)
        if kind == 2:
            lhs_pref *= qf ** (m * nu + m * (m - 1) // 2)
        lhs = lhs_pref * jackson_j(
            BesselParams(kind, xs, qf, nu=nu + m), precision=work
        )
        rm = r2(m, n, t, qf) if kind == 2 else r3(m, n, t, qf)
        rp = r2(m - 1, n, t * qf, qf) if kind == 2 else r3(m - 1, n, t * qf, qf)
        rhs = rm.evaluate(xf) * jackson_j(BesselParams(kind, xf, qf, nu=nu), precision=work)
        rhs -= rp.evaluate(xf) * jackson_j(
            BesselParams(kind, xf, qf, nu=nu - 1), precision=work
        )
        value = lhs - rhs
    with float_context(p):
        return +value


# --- the a = 0 limit of the 1phi1 coefficient machinery --------------------


def st_tilde_a0(k: int, m: int, n: int, c, x, q) -> Scalar:
    """St(k, m, n; a=0, c, x; q), evaluated through the paired-ratio form.

    The value is independent of k; computing it for several k exercises
    both branches of the underlying coefficient families.
    """
    den0 = (q - c) * (1 - c)
    if not den0:
        raise PoleError(f"(q-c)(1-c) with c={c}, q={q}")
    exp = 1 - max(m, 0)
    if not x and exp < 0:
        raise PoleError(f"x^{exp} at x = 0")
    poly = _p11_any_a(ShiftTriple(k, m, n), ZERO, c, q)
    return poly.evaluate(x) * x**exp / den0
