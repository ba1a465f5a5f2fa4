"""Buchberger-based ideal engine.

Normal forms, membership, elimination, saturation, products and Krull
dimension, all exact over Q.  The basis computation uses the normal
selection strategy (minimal lcm degree first) together with the coprimality
and chain criteria; new basis elements are rescaled to content-free integer
form to keep rational coefficients from blowing up mid-computation.
"""

from __future__ import annotations

import heapq
import itertools
from fractions import Fraction

from .algebra import (BlockElimination, GREVLEX, Polynomial, RingContext,
                      mono_coprime, mono_degree, mono_div, mono_divides,
                      mono_lcm)
from .errors import ContextMismatchError


def _reduce_full(p, basis, order):
    """Remainder of multivariate division of p by the basis list."""
    ctx = p.ctx
    remainder = {}
    work = p
    leads = [(g.lead_monomial(order), g.lead_coeff(order), g) for g in basis]
    while work:
        lm, lc = work.lead_term(order)
        for glm, glc, g in leads:
            if mono_divides(glm, lm):
                work = work - g.mul_term(mono_div(lm, glm), lc / glc)
                break
        else:
            remainder[lm] = lc
            work = work - ctx.monomial(lm, lc)
    return Polynomial(ctx, remainder)


def s_polynomial(f, g, order):
    lmf, lcf = f.lead_term(order)
    lmg, lcg = g.lead_term(order)
    lcm = mono_lcm(lmf, lmg)
    return (f.mul_term(mono_div(lcm, lmf), 1 / lcf)
            - g.mul_term(mono_div(lcm, lmg), 1 / lcg))


def buchberger(generators, order):
    """Reduced Groebner basis of the generator list under the given order."""
    basis = [g.integral_normalized(order) for g in generators if not g.is_zero()]
    if not basis:
        return ()
    # drop duplicate generators up front; big inputs often repeat
    unique = []
    seen = set()
    for g in basis:
        key = tuple(sorted(g._terms.items()))
        if key not in seen:
            seen.add(key)
            unique.append(g)
    basis = unique
    leads = [g.lead_monomial(order) for g in basis]

    pairs = set()
    heap = []

    def lcm_degree(i, j):
        return mono_degree(mono_lcm(leads[i], leads[j]))

    def push(i, j):
        pairs.add((i, j))
        heapq.heappush(heap, (lcm_degree(i, j), i, j))

    for i, j in itertools.combinations(range(len(basis)), 2):
        push(i, j)

    while pairs:
        _, i, j = heapq.heappop(heap)
        if (i, j) not in pairs:
            continue
        pairs.discard((i, j))
        if mono_coprime(leads[i], leads[j]):
            continue
        lcm_ij = mono_lcm(leads[i], leads[j])
        chained = False
        for k in range(len(basis)):
            if k in (i, j):
                continue
            if (mono_divides(leads[k], lcm_ij)
                    and (min(i, k), max(i, k)) not in pairs
                    and (min(j, k), max(j, k)) not in pairs):
                chained = True
                break
        if chained:
            continue
        rem = _reduce_full(s_polynomial(basis[i], basis[j], order), basis, order)
        if rem.is_zero():
            continue
        rem = rem.integral_normalized(order)
        new = len(basis)
        basis.append(rem)
        leads.append(rem.lead_monomial(order))
        for k in range(new):
            push(k, new)

    # minimal basis: no lead divisible by another's lead
    keep = []
    for i, g in enumerate(basis):
        lm = leads[i]
        redundant = False
        for k, h in enumerate(basis):
            if k == i:
                continue
            lk = leads[k]
            if mono_divides(lk, lm) and (lk != lm or k < i):
                redundant = True
                break
        if not redundant:
            keep.append(g)
    # inter-reduce tails, make monic
    reduced = []
    for idx, g in enumerate(keep):
        others = keep[:idx] + keep[idx + 1:]
        r = _reduce_full(g, others, order) if others else g
        reduced.append(r.monic(order))
    reduced = [r for r in reduced if not r.is_zero()]
    reduced.sort(key=lambda g: order.key(g.lead_monomial(order)))
    return tuple(reduced)


class Ideal:
    """Polynomial ideal with a per-order cache of reduced Groebner bases."""

    __slots__ = ("ctx", "generators", "_gb")

    def __init__(self, ctx, generators):
        self.ctx = ctx
        gens = []
        for g in generators:
            if isinstance(g, str):
                g = ctx.parse(g)
            if g.ctx != ctx:
                raise ContextMismatchError("generator from a different context")
            gens.append(g)
        self.generators = tuple(gens)
        self._gb = {}

    def __repr__(self):
        return "Ideal(" + ", ".join(str(g) for g in self.generators) + ")"

    def groebner(self, order=None):
        order = order or self.ctx.order
        if order not in self._gb:
            self._gb[order] = buchberger(self.generators, order)
        return self._gb[order]

    def normal_form(self, f, order=None):
        """Remainder of f modulo the reduced basis; zero iff f is a member."""
        order = order or self.ctx.order
        basis = self.groebner(order)
        if not basis:
            return f
        return _reduce_full(f, list(basis), order)

    def contains(self, f, order=None):
        return self.normal_form(f, order).is_zero()

    def is_unit(self, order=None):
        basis = self.groebner(order)
        return len(basis) == 1 and basis[0].is_constant()

    def is_zero(self, order=None):
        return not self.groebner(order)

    def equals(self, other, order=None):
        order = order or self.ctx.order
        return self.groebner(order) == other.groebner(order)

    def __mul__(self, other):
        if self.ctx != other.ctx:
            raise ContextMismatchError("ideal product across contexts")
        gens = [a * b for a in self.generators for b in other.generators]
        return Ideal(self.ctx, gens)

    def __add__(self, other):
        if self.ctx != other.ctx:
            raise ContextMismatchError("ideal sum across contexts")
        return Ideal(self.ctx, self.generators + other.generators)

    def eliminate(self, keep):
        """Generators of the intersection with the subring in `keep`.

        `keep` is a set of variable names or indices; the result is an ideal
        of the same context whose generators only involve kept variables.
        """
        keep_idx = set()
        for v in keep:
            keep_idx.add(self.ctx.index(v) if isinstance(v, str) else v)
        gone = tuple(sorted(set(range(self.ctx.nvars)) - keep_idx))
        if not gone:
            return Ideal(self.ctx, self.generators)
        order = BlockElimination(eliminated=gone)
        basis = buchberger(self.generators, order)
        kept = [g for g in basis
                if not (g.variables_used() & set(gone))]
        return Ideal(self.ctx, kept)

    def saturate(self, f):
        """I : f^infinity via one inverse variable and elimination."""
        if isinstance(f, str):
            f = self.ctx.parse(f)
        if f.is_zero():
            raise ValueError("cannot saturate by the zero polynomial")
        name = self.ctx.fresh_name("_s")
        ext = self.ctx.extend((name,))
        w = ext.variable(ext.nvars - 1)
        gens = [g.lift_to(ext) for g in self.generators]
        gens.append(w * f.lift_to(ext) - 1)
        big = Ideal(ext, gens)
        elim = big.eliminate(set(range(self.ctx.nvars)))
        return Ideal(self.ctx, [g.restrict_to(self.ctx)
                                for g in elim.generators])

    def dimension(self):
        """Krull dimension of the quotient ring; -1 for the empty variety.

        Computed combinatorially from the leading-term ideal: the dimension
        is the size of the largest variable subset S such that no leading
        monomial lives entirely inside S.
        """
        basis = self.groebner(GREVLEX)
        if not basis:
            return self.ctx.nvars
        if len(basis) == 1 and basis[0].is_constant():
            return -1
        leads = [g.lead_monomial(GREVLEX) for g in basis]
        n = self.ctx.nvars
        for size in range(n, -1, -1):
            for subset in itertools.combinations(range(n), size):
                sset = set(subset)
                independent = True
                for lm in leads:
                    if all(e == 0 or i in sset for i, e in enumerate(lm)):
                        independent = False
                        break
                if independent:
                    return size
        return 0
