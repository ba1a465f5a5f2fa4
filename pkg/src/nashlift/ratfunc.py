"""Rational functions as polynomial pairs.

Kept deliberately light: the Groebner engine stays polynomial-only, and
rational arithmetic appears only in differential-frame expansions, wedge
coefficients and fractional-ideal generators.  Normalization is lazy and
cheap: strip the common monomial content, attempt one exact division, and
scale the denominator monic.  No multivariate gcd is attempted.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import Polynomial, mono_degree
from .errors import ContextMismatchError


class RationalFunction:
    """num/den with den a nonzero polynomial of the same context."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if den is None:
            den = num.ctx.one()
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.ctx != den.ctx:
            raise ContextMismatchError("numerator and denominator contexts differ")
        if num.is_zero():
            den = num.ctx.one()
        else:
            # cancel the shared monomial factor
            cn = num.monomial_content()
            cd = den.monomial_content()
            shared = tuple(min(a, b) for a, b in zip(cn, cd))
            if any(shared):
                num = num.shift_down(shared)
                den = den.shift_down(shared)
            if not den.is_constant():
                quo = num.divide_exact(den)
                if quo is not None:
                    num, den = quo, num.ctx.one()
        lc = den.lead_coeff()
        if lc != 1:
            inv = 1 / lc
            num = num * inv
            den = den * inv
        self.num = num
        self.den = den

    @property
    def ctx(self):
        return self.num.ctx

    def is_zero(self):
        return self.num.is_zero()

    def is_polynomial(self):
        return self.den.is_constant()

    def __bool__(self):
        return not self.num.is_zero()

    def __eq__(self, other):
        other = as_rational(other, self.ctx)
        return (self.num * other.den - other.num * self.den).is_zero()

    def __hash__(self):
        return hash((self.num, self.den))

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __add__(self, other):
        other = as_rational(other, self.ctx)
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den,
                                self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-as_rational(other, self.ctx))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = as_rational(other, self.ctx)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = as_rational(other, self.ctx)
        if other.num.is_zero():
            raise ZeroDivisionError("division by the zero function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __pow__(self, n):
        if n < 0:
            return RationalFunction(self.den, self.num) ** (-n)
        return RationalFunction(self.num ** n, self.den ** n)

    def reduce_mod(self, ideal):
        """Equivalent representative with both parts reduced mod the ideal.

        Valid as a function on the corresponding variety; the denominator
        must stay nonzero in the quotient ring.
        """
        num = ideal.normal_form(self.num)
        den = ideal.normal_form(self.den)
        if den.is_zero():
            raise ZeroDivisionError("denominator vanishes modulo the ideal")
        return RationalFunction(num, den)

    def is_zero_mod(self, ideal):
        return ideal.normal_form(self.num).is_zero()

    def equal_mod(self, other, ideal):
        """Equality as functions on V(ideal), by clearing denominators."""
        other = as_rational(other, self.ctx)
        cross = self.num * other.den - other.num * self.den
        return ideal.normal_form(cross).is_zero()

    def unit_key(self):
        """Canonical key identifying the function up to a rational constant."""
        return (self.num.monic(), self.den)

    def sort_key(self):
        return (self.den.sort_key(), self.num.sort_key())

    def __str__(self):
        if self.is_polynomial() and self.den.const_value() == 1:
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def __repr__(self):
        return f"RationalFunction({self!s})"


def as_rational(value, ctx):
    if isinstance(value, RationalFunction):
        if value.ctx != ctx:
            raise ContextMismatchError("rational functions from different contexts")
        return value
    if isinstance(value, Polynomial):
        return RationalFunction(value)
    if isinstance(value, (int, Fraction)):
        return RationalFunction(ctx.const(value))
    raise TypeError(f"cannot interpret {value!r} as a rational function")
