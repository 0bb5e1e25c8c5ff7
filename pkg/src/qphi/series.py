"""Truncated power series and Laurent polynomials over Scalar coefficients.

``TruncatedSeries`` is a dense power series in one formal variable, cut at a
fixed order N: coefficients for x^0 .. x^N, everything above unknown.
Combining two series of different orders is an error -- never a silent
re-truncation.

``LaurentPoly`` is a sparse finite sum  sum_e  c_e * x^e  with integer
exponents of either sign, stored as {exponent: coefficient} with zeros
dropped.  It is used for recurrence-coefficient numerators, cleared
denominators, and Lommel tables (where the exponent basis is (x/2)).
"""

from __future__ import annotations

from typing import Dict, Iterator, Tuple

from .errors import OrderMismatchError, PoleError
from .scalars import ONE, ZERO, Scalar


class TruncatedSeries:
    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs, order: int | None = None):
        coeffs = list(coeffs)
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise ValueError("order must be >= 0")
        if len(coeffs) < order + 1:
            coeffs.extend([ZERO] * (order + 1 - len(coeffs)))
        elif len(coeffs) > order + 1:
            raise ValueError("more coefficients than order allows")
        self.order = order
        self.coeffs = coeffs

    @classmethod
    def zero(cls, order: int) -> "TruncatedSeries":
        return cls([ZERO] * (order + 1), order)

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls.from_scalar(ONE, order)

    @classmethod
    def from_scalar(cls, s: Scalar, order: int) -> "TruncatedSeries":
        c = [ZERO] * (order + 1)
        c[0] = s
        return cls(c, order)

    def _check(self, other: "TruncatedSeries") -> None:
        if self.order != other.order:
            raise OrderMismatchError(
                f"series orders differ: {self.order} vs {other.order}"
            )

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        a, b = self.coeffs, other.coeffs
        return TruncatedSeries([a[i] + b[i] for i in range(self.order + 1)], self.order)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        a, b = self.coeffs, other.coeffs
        return TruncatedSeries([a[i] - b[i] for i in range(self.order + 1)], self.order)

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries([-c for c in self.coeffs], self.order)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        n = self.order
        a, b = self.coeffs, other.coeffs
        out = [ZERO] * (n + 1)
        for i in range(n + 1):
            ai = a[i]
            if ai:
                for j in range(n + 1 - i):
                    bj = b[j]
                    if bj:
                        out[i + j] += ai * bj
        return TruncatedSeries(out, n)

    def scale(self, s: Scalar) -> "TruncatedSeries":
        return TruncatedSeries([s * c for c in self.coeffs], self.order)

    def mul_poly(self, poly: "LaurentPoly") -> "TruncatedSeries":
        """Multiply by a polynomial with non-negative exponents, same order out."""
        n = self.order
        a = self.coeffs
        out = [ZERO] * (n + 1)
        for e, c in poly.terms.items():
            if e < 0:
                raise ValueError("mul_poly needs non-negative exponents; shift first")
            if e > n:
                continue
            for i in range(n + 1 - e):
                ai = a[i]
                if ai:
                    out[e + i] += c * ai
        return TruncatedSeries(out, n)

    def is_zero(self) -> bool:
        return all(not c for c in self.coeffs)

    def first_nonzero(self) -> int | None:
        """Index of the first nonzero coefficient, None for the zero series."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    def evaluate(self, x: Scalar) -> Scalar:
        """Horner partial sum of the stored coefficients at x."""
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and all(
            a == b for a, b in zip(self.coeffs, other.coeffs)
        )

    def __repr__(self) -> str:
        return f"TruncatedSeries(order={self.order}, coeffs={self.coeffs!r})"


class LaurentPoly:
    __slots__ = ("terms",)

    def __init__(self, terms: Dict[int, Scalar] | None = None):
        self.terms: Dict[int, Scalar] = {}
        if terms:
            for e, c in terms.items():
                if c:
                    self.terms[int(e)] = c

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def constant(cls, c: Scalar) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def monomial(cls, e: int, c: Scalar = ONE) -> "LaurentPoly":
        return cls({e: c})

    def is_zero(self) -> bool:
        return not self.terms

    def min_exp(self) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no exponents")
        return min(self.terms)

    def max_exp(self) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no exponents")
        return max(self.terms)

    def degree(self) -> int:
        """Largest exponent; -1 for the zero polynomial (ordinary-poly view)."""
        return max(self.terms) if self.terms else -1

    def items(self) -> Iterator[Tuple[int, Scalar]]:
        return iter(sorted(self.terms.items()))

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, ZERO) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        res = LaurentPoly()
        res.terms = out
        return res

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __neg__(self) -> "LaurentPoly":
        res = LaurentPoly()
        res.terms = {e: -c for e, c in self.terms.items()}
        return res

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        out: Dict[int, Scalar] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                s = out.get(e, ZERO) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        res = LaurentPoly()
        res.terms = out
        return res

    def scale(self, s: Scalar) -> "LaurentPoly":
        if not s:
            return LaurentPoly()
        res = LaurentPoly()
        res.terms = {e: s * c for e, c in self.terms.items()}
        return res

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by x^k."""
        res = LaurentPoly()
        res.terms = {e + k: c for e, c in self.terms.items()}
        return res

    def rescale_var(self, s: Scalar) -> "LaurentPoly":
        """Substitute x -> s*x: coefficient at exponent e picks up s^e.

        Used to convert between the (x/2)-exponent basis and plain x
        (direction (x/2)^e -> x^e is rescale_var(1/2))."""
        res = LaurentPoly()
        res.terms = {e: c * s**e for e, c in self.terms.items()}
        return res

    def evaluate(self, x: Scalar) -> Scalar:
        acc = ZERO
        for e, c in self.terms.items():
            if e < 0 and not x:
                raise PoleError("x", "negative exponent evaluated at x = 0")
            acc += c * x**e
        return acc

    def as_series(self, order: int) -> TruncatedSeries:
        if self.terms and self.min_exp() < 0:
            raise ValueError("cannot embed negative exponents in a power series")
        c = [ZERO] * (order + 1)
        for e, coeff in self.terms.items():
            if e <= order:
                c[e] = coeff
        return TruncatedSeries(c, order)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if self.terms.keys() != other.terms.keys():
            return False
        return all(other.terms[e] == c for e, c in self.terms.items())

    def __repr__(self) -> str:
        return f"LaurentPoly({dict(sorted(self.terms.items()))!r})"
