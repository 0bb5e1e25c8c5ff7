"""Three-term recurrence coefficients for 1phi1 and 0phi1.

For integers (k, m, n) the pair (S, T) satisfies

    1phi1(a q^k; c q^m; q, x q^n)
        = S * 1phi1(aq; cq; q, xq) + T * 1phi1(a; c; q, x)

and the pair (St, Tt) the variant with 1phi1(aq; cq; q, x) in the first slot;
for integers (m, n) the pair (U, V) satisfies

    0phi1(-; c q^m; q, x q^n) = U * 0phi1(-; cq; q, xq) + V * 0phi1(-; c; q, x).

S is a closed form: a scalar prefactor times x^(1-max(m,0)) divided by
(ax/c; q)_max(k-m+n,0), times the polynomial family p11; T, Tt, V come from
S-type values at shifted parameters:

    T(k,m,n; a,c,x)  = -(1-c)(1-cq) / ((1-aq)(c-axq) x q) * S(k-1,m-1,n-1; aq,cq,xq)
    Tt(k,m,n; a,c,x) = -(1-c)(1-cq) q / ((1-aq) x)        * St(k-1,m-1,n; aq,cq,x)
    V(m,n; c,x)      =  (1-c)(1-cq) / x                   * U(m-1,n-1; cq,xq)

Everything is exact-rational; each pole raises PoleError naming the factor.
All coefficients are also available unevaluated, as rational functions of x
(`RationalX`), which is what the cleared-denominator identity checks consume.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Literal, Tuple, Union

from .errors import PoleError
from .phi import ScaledPair, _sum_terminating, phi_terminating_scaled
from .qpoch import inv_nonzero
from .qpoch import q_pochhammer as qp
from .scalars import ONE, ZERO, Scalar
from .series import LaurentPoly


@dataclass(frozen=True)
class ShiftTriple:
    k: int
    m: int
    n: int

    @property
    def degree_bound(self) -> int:
        """Degree bound d for p11; equals -1 exactly at the zero shift."""
        k, m, n = self.k, self.m, self.n
        return max(abs(k), abs(m - k), abs(n), abs(m - n)) - 1


@dataclass(frozen=True)
class ShiftPair:
    m: int
    n: int

    @property
    def degree_bound(self) -> int:
        """Degree bound e for p01."""
        m, n = self.m, self.n
        return (n + 1) // 2 - min(m, n, n - m, 0) - 1


class RationalX:
    """A rational function of x:  num(x) / prod_alpha (1 - alpha*x)^mult.

    ``num`` is a Laurent polynomial (negative powers of x live here);
    ``den`` maps alpha -> multiplicity.  The factored denominator is what
    lets identity checks clear S and T by their least common multiple
    instead of a blunt product.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: Dict[Scalar, int] | None = None):
        self.num = num
        self.den: Dict[Scalar, int] = {a: m for a, m in (den or {}).items() if m}

    @classmethod
    def from_scalar(cls, s: Scalar) -> "RationalX":
        return cls(LaurentPoly.constant(s))

    def mul(self, other: "RationalX") -> "RationalX":
        den = dict(self.den)
        for a, mult in other.den.items():
            den[a] = den.get(a, 0) + mult
        return RationalX(self.num * other.num, den)

    def subst_scale(self, s: Scalar) -> "RationalX":
        """Substitute x -> s*x."""
        return RationalX(
            self.num.rescale_var(s), {a * s: m for a, m in self.den.items()}
        )

    def den_poly(self) -> LaurentPoly:
        p = LaurentPoly.constant(ONE)
        for alpha, mult in self.den.items():
            f = LaurentPoly({0: ONE, 1: -alpha})
            for _ in range(mult):
                p = p * f
        return p

    def evaluate(self, x: Scalar) -> Scalar:
        v = self.num.evaluate(x)
        for alpha, mult in self.den.items():
            f = 1 - alpha * x
            if not f:
                raise PoleError(f"(1 - {alpha}*x) at x={x}")
            v /= f**mult
        return v


def lcm_den(*fns: RationalX) -> Dict[Scalar, int]:
    out: Dict[Scalar, int] = {}
    for f in fns:
        for a, m in f.den.items():
            if out.get(a, 0) < m:
                out[a] = m
    return out


def cofactor_poly(lcm: Dict[Scalar, int], own: Dict[Scalar, int]) -> LaurentPoly:
    """Expanded product of the lcm factors missing from ``own``."""
    p = LaurentPoly.constant(ONE)
    for alpha, mult in lcm.items():
        extra = mult - own.get(alpha, 0)
        f = LaurentPoly({0: ONE, 1: -alpha})
        for _ in range(extra):
            p = p * f
    return p


Coefficient = Union[Scalar, RationalX]


@dataclass(frozen=True)
class CoeffPair:
    first: Coefficient
    second: Coefficient
    flavor: Literal["ST", "ST_TILDE", "UV"]


# --- the 1phi1 coefficient families ------------------------------------------
#
# Each A/B below is a scalar (x-free): a q-Pochhammer prefactor times a
# terminating 3phi2.  Negative index gives 0.  The two parameter slots that
# blow up individually as a -> 0 are evaluated jointly: the B family pairs
# (c q^(m-k)/a ; c q^(-j)/a) and the At family (c/a ; c q^(m-k-j)/a), both
# through phi_terminating_scaled, and the Bt prefactor (q/a;q)_j a^j is
# computed as prod_i (a - q^(1+i)).  That makes every family finite at a = 0,
# which the q-Bessel limit path relies on.


def _a11(j: int, k: int, m: int, n: int, a, c, q) -> Scalar:
    if j < 0:
        return ZERO
    pref = qp(a * q / c, q, k - m) * qp(c, q, m) * qp(c / q, q, m - j)
    pref *= inv_nonzero(qp(q, q, j) * qp(a, q, k - j), f"(q;q)_{j} (a;q)_{k - j}")
    pref *= c ** (-n) * q ** ((j - m + 1) * (n - 1) + 1)
    series, _ = _sum_terminating(
        (q**-j, c * q ** (m - j - 1), a),
        (c, a * q ** (k - j)),
        q,
        q ** (j - n + 1),
        j,
        0,
    )
    return pref * series


def _b11(j: int, k: int, m: int, n: int, a, c, q) -> Scalar:
    if j < 0:
        return ZERO
    pref = qp(a * q / c, q, j) * inv_nonzero(
        qp(q, q, j) * qp(q * q / c, q, j), f"(q;q)_{j} (q^2/c;q)_{j}"
    )
    pref *= (-1) ** j * c**-j * q ** (j * (j + 1) // 2)
    series = phi_terminating_scaled(
        j,
        (c * q ** (-j - 1),),
        ScaledPair(u=c * q ** (m - k), v=c * q**-j, a=a),
        (c * q**m,),
        q,
        q ** (k - m + n + 1),
    )
    return pref * series


def _a11t(j: int, k: int, m: int, n: int, a, c, q) -> Scalar:
    if j < 0:
        return ZERO
    pref = qp(a * q / c, q, j + k - m) * qp(c, q, m) * qp(c / q, q, m - j)
    pref *= inv_nonzero(qp(q, q, j) * qp(a, q, k), f"(q;q)_{j} (a;q)_{k}")
    pref *= c ** (-n) * q ** ((j - m + 1) * (n - 1) + 1)
    series = phi_terminating_scaled(
        j,
        (c * q ** (m - j - 1),),
        ScaledPair(u=c, v=c * q ** (m - k - j), a=a),
        (c,),
        q,
        q ** (m - k - n + 1),
    )
    return pref * series


def _b11t(j: int, k: int, m: int, n: int, a, c, q) -> Scalar:
    if j < 0:
        return ZERO
    pref = ONE  # (q/a; q)_j * a^j, in the form valid at a = 0
    qi = q
    for _ in range(j):
        pref *= a - qi
        qi *= q
    pref *= inv_nonzero(
        qp(q, q, j) * qp(q * q / c, q, j), f"(q;q)_{j} (q^2/c;q)_{j}"
    )
    pref *= c**-j
    series, _ = _sum_terminating(
        (q**-j, c * q ** (-j - 1), a * q**k),
        (c * q**m, a * q**-j),
        q,
        q ** (j + n + 1),
        j,
        0,
    )
    return pref * series


def _p11_any_a(shift: ShiftTriple, a, c, q) -> LaurentPoly:
    k, m, n = shift.k, shift.m, shift.n
    d = shift.degree_bound
    lo, hi = min(m, 0), max(m, 0)
    terms: Dict[int, Scalar] = {}
    if k - m + n >= 0:
        fam_a, fam_b = _a11, _b11
    else:
        fam_a, fam_b = _a11t, _b11t
    for j in range(d + 1):
        coeff = fam_a(j + lo, k, m, n, a, c, q) - fam_b(j - hi, k, m, n, a, c, q)
        if coeff:
            terms[j] = coeff
    return LaurentPoly(terms)


def p11(shift: ShiftTriple, a: Scalar, c: Scalar, q: Scalar) -> LaurentPoly:
    """The polynomial family behind S and St; degree <= shift.degree_bound.

    a = 0 is refused here: that limit belongs to the q-Bessel path, which
    evaluates the same coefficient families through their removable-
    singularity form.
    """
    if not a:
        raise ValueError("p11 requires a != 0; use the q-Bessel a = 0 path")
    return _p11_any_a(shift, a, c, q)


# --- the 0phi1 coefficient families ------------------------------------------


def _a01(j: int, m: int, n: int, c, q) -> Scalar:
    if j < 0:
        return ZERO
    pref = qp(c, q, m) * inv_nonzero(
        qp(q, q, j) * qp(q * q / c, q, j - m), f"(q;q)_{j} (q^2/c;q)_{j - m}"
    )
    pref *= c ** (2 * m - n - j) * q ** ((j - m + 1) * (n - m))
    series, _ = _sum_terminating(
        (q**-j, c * q ** (m - j - 1)), (c,), q, q ** (2 * j - n + 1), j, 0
    )
    return pref * series


def _b01(j: int, m: int, n: int, c, q) -> Scalar:
    if j < 0:
        return ZERO
    pref = inv_nonzero(
        qp(q, q, j) * qp(q * q / c, q, j), f"(q;q)_{j} (q^2/c;q)_{j}"
    )
    pref *= c ** (-2 * j) * q ** (j * (j + 1))
    series, _ = _sum_terminating(
        (q**-j, c * q ** (-j - 1)), (c * q**m,), q, q ** (n - m + 1), j, 0
    )
    return pref * series


def _a01t(j: int, m: int, n: int, c, q) -> Scalar:
    if j < 0:
        return ZERO
    pref = qp(c, q, m) * inv_nonzero(
        qp(q, q, j) * qp(q * q / c, q, j - m), f"(q;q)_{j} (q^2/c;q)_{j - m}"
    )
    pref *= c ** (2 * m - n - 2 * j) * q ** ((j - m + 1) * (j - m + n))
    series, _ = _sum_terminating(
        (q**-j, c * q ** (m - j - 1)), (c,), q, q ** (m - n + 1), j, 0
    )
    return pref * series


def _b01t(j: int, m: int, n: int, c, q) -> Scalar:
    if j < 0:
        return ZERO
    pref = c**-j * inv_nonzero(
        qp(q, q, j) * qp(q * q / c, q, j), f"(q;q)_{j} (q^2/c;q)_{j}"
    )
    series, _ = _sum_terminating(
        (q**-j, c * q ** (-j - 1)), (c * q**m,), q, q ** (2 * j + n + 1), j, 0
    )
    return pref * series


def p01(shift: ShiftPair, c: Scalar, q: Scalar) -> LaurentPoly:
    """The polynomial family behind U; degree <= shift.degree_bound."""
    m, n = shift.m, shift.n
    e = shift.degree_bound
    lo, hi = min(m, 0), max(m, 0)
    fam_a, fam_b = (_a01, _b01) if m <= n else (_a01t, _b01t)
    terms: Dict[int, Scalar] = {}
    for j in range(e + 1):
        coeff = fam_a(j + lo, m, n, c, q) - fam_b(j - hi, m, n, c, q)
        if coeff:
            terms[j] = coeff
    return LaurentPoly(terms)


# --- assembled coefficients ---------------------------------------------------


def _check_nonzero(value: Scalar, factor: str) -> Scalar:
    if not value:
        raise PoleError(factor)
    return value


def s_rational(shift: ShiftTriple, a, c, q, tilde: bool = False) -> RationalX:
    """S (or St when ``tilde``) as a rational function of x."""
    k, m, n = shift.k, shift.m, shift.n
    den0 = _check_nonzero((q - c) * (1 - c), f"(q-c)(1-c) with c={c}, q={q}")
    poly = p11(shift, a, c, q).scale((1 - a) / den0)
    if not tilde:
        poly = poly * LaurentPoly({0: c, 1: -a})
    num = poly.shift(1 - max(m, 0))
    den: Dict[Scalar, int] = {}
    alpha = a / c
    for _ in range(max(k - m + n, 0)):
        den[alpha] = den.get(alpha, 0) + 1
        alpha *= q
    return RationalX(num, den)


def t_rational(shift: ShiftTriple, a, c, q) -> RationalX:
    """T via its relation to S at (k-1, m-1, n-1; aq, cq, xq)."""
    inner = s_rational(
        ShiftTriple(shift.k - 1, shift.m - 1, shift.n - 1), a * q, c * q, q
    ).subst_scale(q)
    aq1 = _check_nonzero(1 - a * q, f"(1-aq) with a={a}, q={q}")
    scale = -(1 - c) * (1 - c * q) / (aq1 * q * c)
    pref = RationalX(LaurentPoly({-1: scale}), {a * q / c: 1})
    return inner.mul(pref)


def t_tilde_rational(shift: ShiftTriple, a, c, q) -> RationalX:
    """Tt via its relation to St at (k-1, m-1, n; aq, cq, x)."""
    inner = s_rational(
        ShiftTriple(shift.k - 1, shift.m - 1, shift.n), a * q, c * q, q, tilde=True
    )
    aq1 = _check_nonzero(1 - a * q, f"(1-aq) with a={a}, q={q}")
    scale = -(1 - c) * (1 - c * q) * q / aq1
    return inner.mul(RationalX(LaurentPoly({-1: scale})))


def u_rational(shift: ShiftPair, c, q) -> RationalX:
    """U as a rational function of x."""
    m, n = shift.m, shift.n
    den0 = _check_nonzero((q - c) * (1 - c), f"(q-c)(1-c) with c={c}, q={q}")
    num = p01(shift, c, q).scale(-1 / den0).shift(1 - max(m, 0))
    den: Dict[Scalar, int] = {}
    alpha = 1 / c
    for _ in range(max(n - m, 0)):
        den[alpha] = den.get(alpha, 0) + 1
        alpha *= q
    return RationalX(num, den)


def v_rational(shift: ShiftPair, c, q) -> RationalX:
    """V via its relation to U at (m-1, n-1; cq, xq)."""
    inner = u_rational(ShiftPair(shift.m - 1, shift.n - 1), c * q, q).subst_scale(q)
    return inner.mul(RationalX(LaurentPoly({-1: (1 - c) * (1 - c * q)})))


def coeff_st(shift: ShiftTriple, a, c, x, q) -> CoeffPair:
    """(S, T) for the given shift, evaluated at scalar x."""
    s = s_rational(shift, a, c, q).evaluate(x)
    t = t_rational(shift, a, c, q).evaluate(x)
    return CoeffPair(s, t, "ST")


def coeff_st_rational(shift: ShiftTriple, a, c, q) -> CoeffPair:
    return CoeffPair(s_rational(shift, a, c, q), t_rational(shift, a, c, q), "ST")


def coeff_st_tilde(shift: ShiftTriple, a, c, x, q) -> CoeffPair:
    """(St, Tt) for the given shift, evaluated at scalar x."""
    s = s_rational(shift, a, c, q, tilde=True).evaluate(x)
    t = t_tilde_rational(shift, a, c, q).evaluate(x)
    return CoeffPair(s, t, "ST_TILDE")


def coeff_st_tilde_rational(shift: ShiftTriple, a, c, q) -> CoeffPair:
    return CoeffPair(
        s_rational(shift, a, c, q, tilde=True),
        t_tilde_rational(shift, a, c, q),
        "ST_TILDE",
    )


def coeff_uv(shift: ShiftPair, c, x, q) -> CoeffPair:
    """(U, V) for the given shift, evaluated at scalar x."""
    u = u_rational(shift, c, q).evaluate(x)
    v = v_rational(shift, c, q).evaluate(x)
    return CoeffPair(u, v, "UV")


def coeff_uv_rational(shift: ShiftPair, c, q) -> CoeffPair:
    return CoeffPair(u_rational(shift, c, q), v_rational(shift, c, q), "UV")
