"""Exact multivariate polynomial arithmetic over the rationals.

A monomial is an exponent tuple with one entry per variable of a ring
context; a polynomial maps monomials to nonzero `Fraction` coefficients.
Values are immutable after construction and safe to share between threads.
Coefficients are never floats: valuations and ideal membership downstream
must be decided exactly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import ContextMismatchError, PolynomialSyntaxError

# ---------------------------------------------------------------------------
# monomials: plain exponent tuples

def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a, b):
    """True when a divides b (componentwise a <= b)."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(a, b):
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_degree(a):
    return sum(a)


def mono_coprime(a, b):
    return all(x == 0 or y == 0 for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# monomial orders

def _grevlex_key(exps):
    return (sum(exps), tuple(-e for e in reversed(exps)))


@dataclass(frozen=True)
class Lex:
    """Pure lexicographic order; earlier context variables dominate."""

    kind: str = "lex"

    def key(self, mono):
        return mono


@dataclass(frozen=True)
class GrevLex:
    """Graded reverse-lexicographic order."""

    kind: str = "grevlex"

    def key(self, mono):
        return _grevlex_key(mono)


@dataclass(frozen=True)
class BlockElimination:
    """Two-block order: the `eliminated` variables dominate everything else.

    Monomials are compared grevlex on the eliminated block first, then
    grevlex on the remaining block, which gives the elimination property:
    a leading monomial free of eliminated variables forces the whole
    polynomial to be free of them.
    """

    eliminated: tuple
    kind: str = "block"

    def key(self, mono):
        first = tuple(mono[i] for i in self.eliminated)
        rest = tuple(e for i, e in enumerate(mono) if i not in self.eliminated)
        return (_grevlex_key(first), _grevlex_key(rest))


LEX = Lex()
GREVLEX = GrevLex()


# ---------------------------------------------------------------------------
# ring context

@dataclass(frozen=True)
class RingContext:
    """An ordered tuple of variable names together with a monomial order."""

    names: tuple
    order: object = GREVLEX

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate variable names: {self.names}")

    @property
    def nvars(self):
        return len(self.names)

    def index(self, name):
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r}") from None

    def zero(self):
        return Polynomial(self, {})

    def one(self):
        return self.const(1)

    def const(self, value):
        value = Fraction(value)
        if value == 0:
            return self.zero()
        return Polynomial(self, {(0,) * self.nvars: value})

    def variable(self, i):
        if isinstance(i, str):
            i = self.index(i)
        exps = [0] * self.nvars
        exps[i] = 1
        return Polynomial(self, {tuple(exps): Fraction(1)})

    def monomial(self, exps, coeff=1):
        coeff = Fraction(coeff)
        if coeff == 0:
            return self.zero()
        return Polynomial(self, {tuple(exps): coeff})

    def extend(self, extra_names, order=None):
        """New context with `extra_names` appended after the current ones."""
        return RingContext(self.names + tuple(extra_names), order or self.order)

    def parse(self, text):
        return parse_polynomial(self, text)

    def fresh_name(self, base):
        name = base
        while name in self.names:
            name = name + "_"
        return name


def context(*names, order=GREVLEX):
    return RingContext(tuple(names), order)


# ---------------------------------------------------------------------------
# polynomials

class Polynomial:
    """Immutable multivariate polynomial over Q in a fixed ring context."""

    __slots__ = ("ctx", "_terms", "_key", "_hash")

    def __init__(self, ctx, terms):
        self.ctx = ctx
        self._terms = {m: c for m, c in terms.items() if c != 0}
        self._key = None
        self._hash = None

    # -- basic queries ------------------------------------------------------

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def terms(self, order=None):
        """Term list as (monomial, coefficient), descending in the order."""
        key = (order or self.ctx.order).key
        return sorted(self._terms.items(), key=lambda t: key(t[0]), reverse=True)

    def monomials(self):
        return set(self._terms)

    def coeff(self, mono):
        return self._terms.get(tuple(mono), Fraction(0))

    def total_degree(self):
        if not self._terms:
            return -1
        return max(mono_degree(m) for m in self._terms)

    def lead_monomial(self, order=None):
        if not self._terms:
            return None
        key = (order or self.ctx.order).key
        return max(self._terms, key=key)

    def lead_coeff(self, order=None):
        lm = self.lead_monomial(order)
        return Fraction(0) if lm is None else self._terms[lm]

    def lead_term(self, order=None):
        lm = self.lead_monomial(order)
        return None if lm is None else (lm, self._terms[lm])

    def sort_key(self):
        """Deterministic total-order key (descending term list)."""
        if self._key is None:
            key = self.ctx.order.key
            terms = sorted(self._terms.items(), key=lambda t: key(t[0]),
                           reverse=True)
            self._key = tuple((key(m), c) for m, c in terms)
        return self._key

    def is_constant(self):
        return all(mono_degree(m) == 0 for m in self._terms)

    def const_value(self):
        return self._terms.get((0,) * self.ctx.nvars, Fraction(0))

    def variables_used(self):
        used = set()
        for m in self._terms:
            for i, e in enumerate(m):
                if e:
                    used.add(i)
        return used

    # -- equality / hashing --------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ctx == other.ctx and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx, frozenset(self._terms.items())))
        return self._hash

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other):
        if self.ctx != other.ctx:
            raise ContextMismatchError(
                f"ring contexts differ: {self.ctx.names} vs {other.ctx.names}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ctx.const(other)
        self._check(other)
        res = dict(self._terms)
        for m, c in other._terms.items():
            s = res.get(m, 0) + c
            if s:
                res[m] = s
            elif m in res:
                del res[m]
        return Polynomial(self.ctx, res)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ctx, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ctx.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            if q == 0:
                return self.ctx.zero()
            return Polynomial(self.ctx,
                              {m: c * q for m, c in self._terms.items()})
        self._check(other)
        res = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = mono_mul(m1, m2)
                s = res.get(m, 0) + c1 * c2
                if s:
                    res[m] = s
                elif m in res:
                    del res[m]
        return Polynomial(self.ctx, res)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial power wants a non-negative integer")
        result = self.ctx.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def mul_term(self, mono, coeff):
        """Multiply by a single term (used heavily by division loops)."""
        if coeff == 0:
            return self.ctx.zero()
        return Polynomial(self.ctx, {mono_mul(m, mono): c * coeff
                                     for m, c in self._terms.items()})

    # -- calculus / evaluation ------------------------------------------------

    def derivative(self, var):
        """Exact formal partial derivative with respect to variable `var`."""
        if isinstance(var, str):
            var = self.ctx.index(var)
        if not 0 <= var < self.ctx.nvars:
            raise ContextMismatchError(f"variable index {var} out of range")
        res = {}
        for m, c in self._terms.items():
            e = m[var]
            if e:
                dm = m[:var] + (e - 1,) + m[var + 1:]
                s = res.get(dm, 0) + c * e
                if s:
                    res[dm] = s
                elif dm in res:
                    del res[dm]
        return Polynomial(self.ctx, res)

    def evaluate(self, point):
        """Evaluate at a tuple of rationals."""
        point = [Fraction(v) for v in point]
        if len(point) != self.ctx.nvars:
            raise ContextMismatchError("point length does not match context")
        total = Fraction(0)
        for m, c in self._terms.items():
            v = c
            for x, e in zip(point, m):
                if e:
                    v *= x ** e
            total += v
        return total

    def substitute(self, images):
        """Substitute a polynomial image for every variable.

        All images must share one context; the result lives there.
        """
        images = list(images)
        if len(images) != self.ctx.nvars:
            raise ContextMismatchError("need one image per variable")
        target = images[0].ctx if images else self.ctx
        result = target.zero()
        for m, c in self._terms.items():
            part = target.const(c)
            for img, e in zip(images, m):
                if e:
                    part = part * img ** e
            result = result + part
        return result

    def lift_to(self, ctx):
        """Reinterpret in a context that starts with this context's names."""
        if ctx.names[:self.ctx.nvars] != self.ctx.names:
            raise ContextMismatchError("target context does not extend source")
        pad = (0,) * (ctx.nvars - self.ctx.nvars)
        return Polynomial(ctx, {m + pad: c for m, c in self._terms.items()})

    def restrict_to(self, ctx):
        """Drop trailing variables, which must not occur in any term."""
        keep = ctx.nvars
        if self.ctx.names[:keep] != ctx.names:
            raise ContextMismatchError("target context is not a prefix")
        res = {}
        for m, c in self._terms.items():
            if any(m[keep:]):
                raise ValueError("polynomial involves dropped variables")
            res[m[:keep]] = c
        return Polynomial(ctx, res)

    # -- normalization helpers -------------------------------------------------

    def monic(self, order=None):
        lc = self.lead_coeff(order)
        if lc in (0, 1):
            return self
        return self * (1 / lc)

    def integral_normalized(self, order=None):
        """Scale to content-free integer coefficients, positive lead."""
        if not self._terms:
            return self
        den_lcm = 1
        for c in self._terms.values():
            den_lcm = den_lcm * c.denominator // gcd(den_lcm, c.denominator)
        num_gcd = 0
        for c in self._terms.values():
            num_gcd = gcd(num_gcd, abs(c.numerator * (den_lcm // c.denominator)))
        factor = Fraction(den_lcm, num_gcd)
        if self.lead_coeff(order) < 0:
            factor = -factor
        return self * factor

    def monomial_content(self):
        """Componentwise-minimal exponent vector over all terms."""
        if not self._terms:
            return (0,) * self.ctx.nvars
        it = iter(self._terms)
        content = list(next(it))
        for m in it:
            for i, e in enumerate(m):
                if e < content[i]:
                    content[i] = e
        return tuple(content)

    def shift_down(self, mono):
        """Divide by a monomial that divides every term."""
        return Polynomial(self.ctx, {mono_div(m, mono): c
                                     for m, c in self._terms.items()})

    def divide_exact(self, other, order=None):
        """Exact quotient self/other, or None when other does not divide."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        order = order or self.ctx.order
        lm_b, lc_b = other.lead_term(order)
        rem = self
        quo = self.ctx.zero()
        while rem:
            lm_r, lc_r = rem.lead_term(order)
            if not mono_divides(lm_b, lm_r):
                return None
            t_mono = mono_div(lm_r, lm_b)
            t_coeff = lc_r / lc_b
            quo = quo + self.ctx.monomial(t_mono, t_coeff)
            rem = rem - other.mul_term(t_mono, t_coeff)
        return quo

    # -- text -----------------------------------------------------------------

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


# ---------------------------------------------------------------------------
# matrices of polynomials

def det_polys(rows):
    """Determinant of a square polynomial matrix by cofactor expansion."""
    k = len(rows)
    if k == 0:
        ctx = None
        raise ValueError("empty determinant needs an explicit context")
    ctx = rows[0][0].ctx
    if k == 1:
        return rows[0][0]
    if k == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = ctx.zero()
    sign = 1
    for j in range(k):
        entry = rows[0][j]
        if entry:
            sub = [[row[m] for m in range(k) if m != j] for row in rows[1:]]
            total = total + entry * det_polys(sub) * sign
        sign = -sign
    return total


def matrix_minors(rows, k, ctx=None):
    """All k x k minors in (row-subset, column-subset) lexicographic order.

    The enumeration is itertools.combinations order on row indices, then on
    column indices, so repeated runs produce bit-identical generator lists.
    """
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    if ctx is None:
        if not rows:
            raise ValueError("empty matrix needs an explicit context")
        ctx = rows[0][0].ctx
    if k < 0 or k > nrows or k > ncols:
        if k == 0:
            return [ctx.one()]
        raise ValueError(f"minor size {k} exceeds matrix dimensions "
                         f"{nrows}x{ncols}")
    if k == 0:
        return [ctx.one()]
    out = []
    for rsub in itertools.combinations(range(nrows), k):
        for csub in itertools.combinations(range(ncols), k):
            sub = [[rows[r][c] for c in csub] for r in rsub]
            out.append(det_polys(sub))
    return out


# ---------------------------------------------------------------------------
# text syntax: identifiers, ^ for powers, * optional, rationals as p/q

_WS = " \t\r\n"


class _Tokens:
    def __init__(self, text, line=1, column=1):
        self.text = text
        self.pos = 0
        self.line = line
        self.column = column

    def error(self, message):
        raise PolynomialSyntaxError(message, self.line, self.column)

    def _advance(self, n):
        for ch in self.text[self.pos:self.pos + n]:
            if ch == "\n":
                self.line += 1
                self.column = 1
            else:
                self.column += 1
        self.pos += n

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos] in _WS:
            self._advance(1)

    def peek(self):
        self.skip_ws()
        if self.pos >= len(self.text):
            return None
        return self.text[self.pos]

    def take(self):
        ch = self.peek()
        if ch is not None:
            self._advance(1)
        return ch

    def take_integer(self):
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self._advance(1)
        if self.pos == start:
            self.error("expected an integer")
        return int(self.text[start:self.pos])

    def take_identifier(self):
        self.skip_ws()
        start = self.pos
        while (self.pos < len(self.text)
               and (self.text[self.pos].isalnum() or self.text[self.pos] == "_")):
            self._advance(1)
        if self.pos == start:
            self.error("expected an identifier")
        return self.text[start:self.pos]


def _parse_expr(tk, ctx):
    node = _parse_term(tk, ctx)
    while True:
        ch = tk.peek()
        if ch == "+":
            tk.take()
            node = node + _parse_term(tk, ctx)
        elif ch == "-":
            tk.take()
            node = node - _parse_term(tk, ctx)
        else:
            return node


def _parse_term(tk, ctx):
    sign = 1
    while tk.peek() in ("+", "-"):
        if tk.take() == "-":
            sign = -sign
    node = _parse_power(tk, ctx)
    while True:
        ch = tk.peek()
        if ch == "*":
            tk.take()
            node = node * _parse_power(tk, ctx)
        elif ch is not None and (ch.isalnum() or ch == "_" or ch == "("):
            node = node * _parse_power(tk, ctx)
        else:
            break
    return node * sign if sign < 0 else node


def _parse_power(tk, ctx):
    base = _parse_atom(tk, ctx)
    while tk.peek() == "^":
        tk.take()
        neg = False
        while tk.peek() in ("+", "-"):
            if tk.take() == "-":
                neg = not neg
        exp = tk.take_integer()
        if neg:
            tk.error("negative exponents are not allowed")
        base = base ** exp
    return base


def _parse_atom(tk, ctx):
    ch = tk.peek()
    if ch is None:
        tk.error("unexpected end of input")
    if ch == "(":
        tk.take()
        node = _parse_expr(tk, ctx)
        if tk.peek() != ")":
            tk.error("expected ')'")
        tk.take()
        return node
    if ch.isdigit():
        num = tk.take_integer()
        if tk.peek() == "/":
            tk.take()
            den = tk.take_integer()
            if den == 0:
                tk.error("zero denominator")
            return ctx.const(Fraction(num, den))
        return ctx.const(num)
    if ch.isalpha() or ch == "_":
        name = tk.take_identifier()
        try:
            idx = ctx.index(name)
        except KeyError:
            tk.error(f"unknown variable {name!r}")
        return ctx.variable(idx)
    tk.error(f"unexpected character {ch!r}")


def parse_polynomial(ctx, text, line=1, column=1):
    """Parse the text syntax, e.g. ``y^2 - x^3`` or ``1/2 x y^2 - 3``."""
    tk = _Tokens(text, line, column)
    if tk.peek() is None:
        tk.error("empty polynomial")
    node = _parse_expr(tk, ctx)
    if tk.peek() is not None:
        tk.error(f"trailing input {tk.peek()!r}")
    return node


def _format_coeff(c):
    return str(c)  # Fraction prints p/q or p


def format_polynomial(p):
    """Canonical text: terms descending in the context order."""
    if p.is_zero():
        return "0"
    parts = []
    for m, c in p.terms():
        factors = []
        for name, e in zip(p.ctx.names, m):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        body = "*".join(factors)
        coeff = abs(c)
        if body and coeff == 1:
            text = body
        elif body:
            text = f"{_format_coeff(coeff)}*{body}"
        else:
            text = _format_coeff(coeff)
        if not parts:
            parts.append(text if c > 0 else f"-{text}")
        else:
            parts.append(f"+ {text}" if c > 0 else f"- {text}")
    return " ".join(parts)
