import random
from fractions import Fraction

import pytest
from gmpy2 import mpfr, mpq

from qphi import (
    NonTerminatingError,
    PhiSpec,
    PoleError,
    ScaledPair,
    float_agree_tol,
    float_context,
    phi_eval,
    phi_eval_detailed,
    phi_formal,
    phi_terminating_scaled,
    q_pochhammer,
    q_pochhammer_inf,
    rat,
)
from oracles import draw_frac, phi_sum_brute


def test_x_zero_is_one():
    spec = PhiSpec((mpq(0),), (rat(1, 2),), rat(1, 2), mpq(0))
    assert phi_eval(spec) == 1


def test_chu_vandermonde_instance():
    j, b, c, q = 3, rat(1, 3), rat(1, 5), rat(1, 2)
    spec = PhiSpec((q**-j, b), (c,), q, c * q**j / b, terminate=j)
    want = q_pochhammer(c / b, q, j) / q_pochhammer(c, q, j)
    assert phi_eval(spec) == want


def test_special_0phi1_is_euler_product():
    q, x = rat(1, 2), rat(1, 2)
    lhs = phi_eval(PhiSpec((), (-q,), q, x), precision=128)
    rhs = q_pochhammer_inf(-x, q * q)
    with float_context(128):
        assert abs(lhs - rhs) <= float_agree_tol(128) * abs(rhs)


def test_terminating_matches_brute_sum():
    rng = random.Random(23)
    for upper_extra, lower_n in (((), 1), ((draw_frac(rng),), 1), ((), 0)):
        for _ in range(10):
            q = draw_frac(rng)
            j0 = rng.randint(0, 6)
            upper = (Fraction(q) ** -j0,) + upper_extra
            lower = tuple(draw_frac(rng) for _ in range(lower_n))
            x = draw_frac(rng)
            want = phi_sum_brute(upper, lower, Fraction(q), Fraction(x), j0 + 1)
            spec = PhiSpec(
                tuple(mpq(u) for u in upper),
                tuple(mpq(b) for b in lower),
                mpq(q),
                mpq(x),
                terminate=j0,
            )
            assert phi_eval(spec) == mpq(want)


def test_terminating_stable_under_more_terms():
    q = rat(1, 3)
    spec = PhiSpec((q**-4, rat(2, 7)), (rat(1, 5),), q, rat(3, 8), terminate=4)
    assert phi_eval(spec, max_terms=100) == phi_eval(spec, max_terms=200)


def test_formal_1phi1_x_coefficient():
    a, c, q = rat(1, 3), rat(1, 5), rat(1, 2)
    s = phi_formal(PhiSpec((a,), (c,), q, mpq(1)), order=2)
    assert s.coeffs[0] == 1
    assert s.coeffs[1] == -(1 - a) / ((1 - q) * (1 - c))


def test_formal_0phi1_x_coefficient():
    c, q = rat(1, 5), rat(1, 2)
    s = phi_formal(PhiSpec((), (c,), q, mpq(1)), order=1)
    assert s.coeffs[1] == 1 / ((1 - q) * (1 - c))


def test_formal_order_zero():
    s = phi_formal(PhiSpec((rat(1, 3),), (rat(1, 5),), rat(1, 2), mpq(1)), order=0)
    assert s.coeffs == [mpq(1)]


def test_formal_scales_and_powers():
    # spec.x acts as a scalar multiplier of the formal variable
    a, c, q = rat(1, 3), rat(1, 5), rat(1, 2)
    plain = phi_formal(PhiSpec((a,), (c,), q, mpq(1)), order=6)
    scaled = phi_formal(PhiSpec((a,), (c,), q, rat(1, 2)), order=6)
    for j in range(7):
        assert scaled.coeffs[j] == plain.coeffs[j] * rat(1, 2) ** j
    squared = phi_formal(PhiSpec((a,), (c,), q, mpq(1)), order=6, x_power=2)
    assert squared.coeffs[2] == plain.coeffs[1]
    assert squared.coeffs[3] == 0


def test_formal_evaluated_matches_phi_eval():
    q = rat(1, 2)
    j0 = 5
    spec = PhiSpec((q**-j0, rat(1, 7)), (rat(2, 9),), q, rat(1, 4), terminate=j0)
    s = phi_formal(PhiSpec(spec.upper, spec.lower, q, mpq(1), terminate=j0), order=8)
    assert s.evaluate(rat(1, 4)) == phi_eval(spec)


def test_float_matches_exact():
    q = rat(1, 2)
    j0 = 6
    spec = PhiSpec((q**-j0, rat(1, 7)), (rat(2, 9),), q, rat(1, 4), terminate=j0)
    exact = phi_eval(spec)
    approx = phi_eval(spec, precision=128)
    with float_context(128):
        assert abs(approx - mpfr(exact)) <= float_agree_tol(128) * abs(mpfr(exact))


def test_float_precisions_agree():
    # non-terminating 1phi1: values at two precisions agree within the
    # coarser tolerance, so the tail bound is not lying
    spec = PhiSpec((rat(1, 3),), (rat(1, 5),), rat(1, 2), rat(-1, 2))
    lo = phi_eval(spec, precision=128)
    hi = phi_eval(spec, precision=192)
    with float_context(192):
        assert abs(mpfr(lo, 192) - hi) <= float_agree_tol(128) * abs(hi)


def test_detailed_result_fields():
    q = rat(1, 2)
    spec = PhiSpec((q**-3,), (rat(1, 5),), q, rat(1, 4), terminate=3)
    res = phi_eval_detailed(spec)
    assert res.terminated and res.terms_used == 4 and res.tail_bound is None

    res = phi_eval_detailed(
        PhiSpec((rat(1, 3),), (rat(1, 5),), q, rat(1, 2)), precision=128
    )
    assert not res.terminated
    assert res.tail_bound is not None and res.tail_bound >= 0


def test_nonterminating_exact_refused():
    spec = PhiSpec((rat(1, 3),), (rat(1, 5),), rat(1, 2), rat(1, 2))
    with pytest.raises(NonTerminatingError):
        phi_eval(spec)


def test_lower_parameter_pole():
    q = rat(1, 2)
    spec = PhiSpec((rat(1, 3),), (q**-2,), q, rat(1, 2))
    with pytest.raises(PoleError):
        phi_eval(spec, precision=64)


def test_scaled_pair_j0_zero():
    pair = ScaledPair(rat(1, 3), rat(1, 7), rat(2, 5))
    assert phi_terminating_scaled(0, (), pair, (), rat(1, 2), rat(1, 4)) == 1


def test_scaled_pair_matches_plain_series():
    # a != 0: (q^-j, f, u/a; l, v/a) evaluated both ways
    rng = random.Random(29)
    for _ in range(10):
        q = mpq(draw_frac(rng))
        a = mpq(draw_frac(rng))
        u, v, f, l = (mpq(draw_frac(rng)) for _ in range(4))
        z = mpq(draw_frac(rng))
        j0 = rng.randint(0, 5)
        pair = ScaledPair(u, v, a)
        got = phi_terminating_scaled(j0, (f,), pair, (l,), q, z)
        spec = PhiSpec((q**-j0, f, u / a), (l, v / a), q, z, terminate=j0)
        assert got == phi_eval(spec)


def test_scaled_pair_u_equals_v():
    # u = v cancels, leaving the series without the pair
    q, z = rat(1, 2), rat(1, 4)
    pair = ScaledPair(rat(1, 3), rat(1, 3), rat(2, 5))
    got = phi_terminating_scaled(4, (), pair, (), q, z)
    spec = PhiSpec((q**-4,), (), q, z, terminate=4)
    assert got == phi_eval(spec)


def test_scaled_pair_a_zero_limit():
    # at a = 0 every paired ratio collapses to u/v; same as scaling z
    q, z = rat(1, 2), rat(1, 4)
    u, v = rat(1, 3), rat(1, 7)
    got = phi_terminating_scaled(5, (), ScaledPair(u, v, mpq(0)), (), q, z)
    spec = PhiSpec((q**-5,), (), q, z * u / v, terminate=5)
    assert got == phi_eval(spec)


def test_scaled_pair_pole():
    # a - v q^l = 0 at l = 1
    q = rat(1, 2)
    pair = ScaledPair(rat(1, 3), rat(1, 2), rat(1, 4))
    with pytest.raises(PoleError):
        phi_terminating_scaled(3, (), pair, (), q, rat(1, 4))
