"""Truncated power series in one parameter over Q.

A series carries its certified window `trunc` (coefficients of t^0..t^trunc
are correct) plus an `exact` flag meaning the stored coefficients are the
whole function (a polynomial), so valuations beyond the window are still
certain.  Arithmetic tracks the window pessimistically and the flag
honestly: precision is only ever lost, never guessed.
"""

from __future__ import annotations

from fractions import Fraction
from math import inf

from .errors import NonLiftableDivisionError

DEFAULT_TRUNC = 64


def _trim(coeffs):
    i = len(coeffs)
    while i > 0 and coeffs[i - 1] == 0:
        i -= 1
    return tuple(coeffs[:i])


class TruncatedSeries:
    """Coefficients for t^0.. with a certified truncation window."""

    __slots__ = ("coeffs", "trunc", "exact")

    def __init__(self, coeffs, trunc=DEFAULT_TRUNC, exact=False):
        coeffs = _trim([Fraction(c) for c in coeffs])
        if not exact:
            coeffs = _trim(coeffs[:trunc + 1]) if trunc >= 0 else ()
        self.coeffs = coeffs
        self.trunc = trunc
        self.exact = exact

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, trunc=DEFAULT_TRUNC, exact=True):
        return cls((), trunc, exact)

    @classmethod
    def constant(cls, value, trunc=DEFAULT_TRUNC):
        return cls((Fraction(value),), trunc, exact=True)

    @classmethod
    def monomial(cls, exponent, coeff=1, trunc=DEFAULT_TRUNC):
        c = [Fraction(0)] * exponent + [Fraction(coeff)]
        return cls(c, trunc, exact=True)

    # -- queries ---------------------------------------------------------------

    def valuation(self):
        """Least exponent with nonzero coefficient; inf when none is stored.

        For an exact series inf means identically zero; otherwise it only
        means zero up to the certified window.
        """
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return inf

    def valuation_certain(self):
        return self.exact or self.valuation() is not inf

    def is_zero(self):
        return not self.coeffs

    def coeff(self, i):
        if i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def degree(self):
        return len(self.coeffs) - 1

    def window(self):
        return inf if self.exact else self.trunc

    def agrees_with(self, other, upto=None):
        """Coefficientwise equality on the shared certified window."""
        limit = min(self.window(), other.window())
        if upto is not None:
            limit = min(limit, upto)
        if limit is inf:
            return self.coeffs == other.coeffs
        return all(self.coeff(i) == other.coeff(i) for i in range(limit + 1))

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (self.coeffs == other.coeffs and self.trunc == other.trunc
                and self.exact == other.exact)

    def __hash__(self):
        return hash((self.coeffs, self.trunc, self.exact))

    # -- arithmetic --------------------------------------------------------------

    def _window_add(self, other):
        return min(self.window(), other.window())

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TruncatedSeries.constant(other, self.trunc)
        n = max(len(self.coeffs), len(other.coeffs))
        coeffs = [self.coeff(i) + other.coeff(i) for i in range(n)]
        window = self._window_add(other)
        exact = window is inf
        trunc = min(self.trunc, other.trunc) if exact else int(window)
        return TruncatedSeries(coeffs, trunc, exact)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries([-c for c in self.coeffs], self.trunc, self.exact)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TruncatedSeries.constant(other, self.trunc)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries([c * other for c in self.coeffs],
                                   self.trunc, self.exact)
        if self.is_zero() and self.exact:
            return TruncatedSeries.zero(min(self.trunc, other.trunc))
        if other.is_zero() and other.exact:
            return TruncatedSeries.zero(min(self.trunc, other.trunc))
        # certified window of a product: each factor's window shifted by the
        # other's valuation
        wa, wb = self.window(), other.window()
        va = self.valuation() if self.coeffs else inf
        vb = other.valuation() if other.coeffs else inf
        exact = wa is inf and wb is inf
        if exact:
            window = inf
        else:
            window = min(wa + (0 if vb is inf else vb),
                         wb + (0 if va is inf else va))
        limit = (len(self.coeffs) + len(other.coeffs)
                 if exact else int(window) + 1)
        coeffs = [Fraction(0)] * max(limit, 0)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b == 0 or i + j >= limit:
                    continue
                coeffs[i + j] += a * b
        trunc = min(self.trunc, other.trunc) if exact else max(int(window), 0)
        return TruncatedSeries(coeffs, trunc, exact)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative series power")
        result = TruncatedSeries.constant(1, self.trunc)
        for _ in range(n):
            result = result * self
        return result

    def divide(self, other):
        """Series division; valuation(self) must reach valuation(other).

        The certified window shrinks by valuation(other), as precision in
        the quotient genuinely costs that many coefficients.  The quotient
        of exact series is exact again whenever the division terminates.
        """
        if other.is_zero():
            raise ZeroDivisionError("division by the zero series"
                                    if other.exact else
                                    "division by a series zero up to its window")
        va = self.valuation()
        vb = other.valuation()
        if va is inf:
            if self.exact:
                return TruncatedSeries.zero(min(self.trunc, other.trunc))
            raise NonLiftableDivisionError(
                "numerator zero up to its window; quotient undetermined")
        if va < vb:
            raise NonLiftableDivisionError(
                f"valuation {va} of the numerator is below valuation {vb} "
                f"of the denominator")
        a = list(self.coeffs[vb:])
        b = list(other.coeffs[vb:])
        both_exact = self.exact and other.exact
        if both_exact:
            steps = max(len(a) - len(b) + 1, 0)
            quo = [Fraction(0)] * steps
            rem = a[:]
            lead = b[0]
            for k in range(steps):
                q = rem[k] / lead
                quo[k] = q
                if q:
                    for j, bc in enumerate(b):
                        if k + j < len(rem):
                            rem[k + j] -= q * bc
                        else:
                            rem.append(-q * bc)
            if all(c == 0 for c in rem):
                return TruncatedSeries(quo, min(self.trunc, other.trunc),
                                       exact=True)
            window = min(self.trunc, other.trunc) - vb
        else:
            window = int(min(self.window(), other.window())) - vb
        if window < 0:
            raise NonLiftableDivisionError(
                "no certified coefficients remain after division")
        quo = [Fraction(0)] * (window + 1)
        lead = b[0]
        rem = a[:window + 1] + [Fraction(0)] * max(0, window + 1 - len(a))
        for k in range(window + 1):
            q = rem[k] / lead
            quo[k] = q
            if q:
                for j in range(1, min(len(b), window + 1 - k)):
                    rem[k + j] -= q * b[j]
        return TruncatedSeries(quo, window, exact=False)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * Fraction(1, 1) / TruncatedSeries.constant(other,
                                                                    self.trunc)
        return self.divide(other)

    def compose(self, inner):
        """self(inner(t)); inner must have valuation >= 1."""
        if not inner.is_zero() and inner.valuation() < 1:
            raise ValueError("composition needs inner valuation >= 1")
        exact = self.exact and inner.exact
        window = min(self.window(), inner.window())
        trunc = min(self.trunc, inner.trunc) if exact else int(window)
        result = TruncatedSeries.zero(trunc)
        power = TruncatedSeries.constant(1, trunc)
        for i, c in enumerate(self.coeffs):
            if c:
                result = result + power * c
            if i + 1 < len(self.coeffs):
                power = power * inner
        if not exact:
            return TruncatedSeries(result.coeffs, trunc, exact=False)
        return result

    def __str__(self):
        if self.is_zero():
            body = "0"
        else:
            parts = []
            for i, c in enumerate(self.coeffs):
                if c == 0:
                    continue
                if i == 0:
                    term = f"{c}"
                elif i == 1:
                    term = "t" if c == 1 else ("-t" if c == -1 else f"{c}t")
                else:
                    term = (f"t^{i}" if c == 1 else
                            (f"-t^{i}" if c == -1 else f"{c}t^{i}"))
                if parts and not term.startswith("-"):
                    parts.append("+ " + term)
                elif parts:
                    parts.append("- " + term.lstrip("-"))
                else:
                    parts.append(term)
            body = " ".join(parts)
        tag = "" if self.exact else f" + O(t^{self.trunc + 1})"
        return body + tag

    def __repr__(self):
        return f"TruncatedSeries({self!s})"
