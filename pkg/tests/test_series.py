import pytest
from gmpy2 import mpfr, mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from qphi import (
    LaurentPoly,
    OrderMismatchError,
    PoleError,
    TruncatedSeries,
    float_agree_tol,
    float_context,
    rat,
)

ONE = mpq(1)


def ts(*coeffs):
    return TruncatedSeries([mpq(c) for c in coeffs])


# --- TruncatedSeries ------------------------------------------------------


def test_add_cancellation():
    # (1 + x) + (1 - x) = 2
    assert ts(1, 1) + ts(1, -1) == ts(2, 0)


def test_add_componentwise():
    assert ts(1, 2, 3) + ts(0, 0, 1) == ts(1, 2, 4)


def test_add_zero_identity():
    s = ts(5, -1, 7)
    assert s + TruncatedSeries.zero(2) == s


def test_mul_difference_of_squares():
    # (1+x)(1-x) at N=2
    a = TruncatedSeries([ONE, ONE], order=2)
    b = TruncatedSeries([ONE, -ONE], order=2)
    assert a * b == ts(1, 0, -1)


def test_mul_one_identity():
    s = ts(3, 1, 4)
    assert s * TruncatedSeries.one(2) == s


def test_mul_truncates():
    # (1 + x + x^2)(1 + x) at N=2: the x^3 term is dropped
    assert ts(1, 1, 1) * ts(1, 1, 0) == ts(1, 2, 2)


def test_order_mismatch():
    with pytest.raises(OrderMismatchError):
        ts(1, 2) + ts(1, 2, 3)
    with pytest.raises(OrderMismatchError):
        ts(1, 2) * ts(1, 2, 3)


def test_constructor_checks():
    s = TruncatedSeries([ONE], order=3)  # padded with zeros
    assert s.coeffs == [ONE, mpq(0), mpq(0), mpq(0)]
    with pytest.raises(ValueError):
        TruncatedSeries([ONE, ONE], order=0)


def test_is_zero_first_nonzero():
    assert TruncatedSeries.zero(4).is_zero()
    assert TruncatedSeries.zero(4).first_nonzero() is None
    assert ts(0, 0, 5).first_nonzero() == 2


def test_scale_and_evaluate():
    s = ts(1, 2, 3).scale(rat(1, 2))
    assert s == TruncatedSeries([rat(1, 2), rat(1), rat(3, 2)])
    assert ts(1, 2, 3).evaluate(rat(1, 2)) == rat(1) + rat(1) + rat(3, 4)


def test_mul_poly():
    s = ts(1, 1, 1).mul_poly(LaurentPoly({1: ONE}))
    assert s == ts(0, 1, 1)
    with pytest.raises(ValueError):
        ts(1, 1).mul_poly(LaurentPoly({-1: ONE}))


coeff_st_ = st.fractions(min_value=-3, max_value=3, max_denominator=12).map(
    lambda f: mpq(f.numerator, f.denominator)
)
series_st = st.lists(coeff_st_, min_size=4, max_size=4).map(TruncatedSeries)


@settings(max_examples=60, deadline=None)
@given(series_st, series_st, series_st)
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert a * b == b * a
    assert a - a == TruncatedSeries.zero(a.order)


# --- LaurentPoly ----------------------------------------------------------


def test_laurent_eval():
    p = LaurentPoly({-1: ONE, 1: ONE})
    assert p.evaluate(rat(2)) == rat(5, 2)
    assert LaurentPoly.zero().evaluate(rat(7)) == 0
    assert LaurentPoly.constant(rat(9, 4)).evaluate(rat(123)) == rat(9, 4)


def test_laurent_eval_pole_at_zero():
    with pytest.raises(PoleError):
        LaurentPoly({-1: ONE}).evaluate(mpq(0))


def test_laurent_zero_coeffs_dropped():
    p = LaurentPoly({0: mpq(0), 2: mpq(3)})
    assert p.terms == {2: mpq(3)}
    assert (p - p).is_zero()
    with pytest.raises(ValueError):
        LaurentPoly.zero().min_exp()


def test_laurent_exponent_queries():
    p = LaurentPoly({-2: ONE, 3: ONE})
    assert p.min_exp() == -2 and p.max_exp() == 3 and p.degree() == 3
    assert LaurentPoly.zero().degree() == -1


def test_laurent_arithmetic():
    p = LaurentPoly({0: ONE, 1: ONE})
    q = LaurentPoly({0: ONE, 1: -ONE})
    assert p * q == LaurentPoly({0: ONE, 2: -ONE})
    assert p + q == LaurentPoly({0: mpq(2)})
    assert (p - p).is_zero()
    assert p.shift(3) == LaurentPoly({3: ONE, 4: ONE})
    assert p.scale(mpq(0)).is_zero()


def test_laurent_rescale_var():
    # (x/2)-basis -> x-basis: coefficient at exponent e picks up (1/2)^e
    p = LaurentPoly({-1: ONE, 2: ONE})
    r = p.rescale_var(rat(1, 2))
    assert r == LaurentPoly({-1: rat(2), 2: rat(1, 4)})


def test_laurent_as_series():
    s = LaurentPoly({0: ONE, 2: ONE}).as_series(4)
    assert s == TruncatedSeries([ONE, mpq(0), ONE, mpq(0), mpq(0)])
    with pytest.raises(ValueError):
        LaurentPoly({-1: ONE}).as_series(4)


def test_float_matches_exact_evaluation():
    p = 128
    coeffs = [rat(1, 3), rat(-7, 5), rat(22, 7), rat(3, 11)]
    s = TruncatedSeries(coeffs)
    x = rat(4, 9)
    exact = s.evaluate(x)
    with float_context(p):
        approx = TruncatedSeries([mpfr(c) for c in coeffs]).evaluate(mpfr(x))
        err = abs(approx - mpfr(exact)) / abs(mpfr(exact))
    assert err <= float_agree_tol(p)
