"""Affine charts of varieties and their differential data.

Smoothness is decided by the Jacobian criterion on the supplied generators;
the input ideal is assumed radical and equidimensional (documented, not
verified).  A DifferentialFrame trivialises the cotangent sheaf on the
locus where one codim-sized Jacobian minor is invertible, expressing the
differentials of the non-basis variables over the chosen basis columns.
"""

from __future__ import annotations

import itertools

from .algebra import matrix_minors, det_polys
from .errors import ContextMismatchError, DegenerateFrameError
from .groebner import Ideal
from .ratfunc import RationalFunction


class AffineChart:
    """One affine model: ambient variables, defining ideal, dimension.

    `parent` is None for a root chart, otherwise a pair of the parent chart
    and one polynomial per parent variable expressing the map to the parent
    in the coordinates of this chart.
    """

    __slots__ = ("ctx", "ideal", "dim", "parent", "path")

    def __init__(self, ctx, ideal, dim, parent=None, path="root",
                 validate=True):
        if ideal.ctx != ctx:
            raise ContextMismatchError("ideal context differs from chart context")
        self.ctx = ctx
        self.ideal = ideal
        self.dim = dim
        self.parent = parent
        self.path = path
        if validate:
            self._validate()

    def _validate(self):
        actual = self.ideal.dimension()
        if self.is_empty():
            return
        if actual != self.dim:
            raise ValueError(
                f"declared dimension {self.dim} but computed {actual}")
        if self.parent is not None:
            parent_chart, exprs = self.parent
            if len(exprs) != parent_chart.ctx.nvars:
                raise ValueError("parent map needs one expression per parent "
                                 "variable")
            for g in parent_chart.ideal.generators:
                pulled = g.substitute(exprs)
                if not self.ideal.contains(pulled):
                    raise ValueError("parent generator does not pull back "
                                     "into the chart ideal")

    @property
    def codim(self):
        return self.ctx.nvars - self.dim

    def is_empty(self):
        return self.ideal.is_unit()

    def level(self):
        chart, depth = self, 0
        while chart.parent is not None:
            chart = chart.parent[0]
            depth += 1
        return depth

    def contains_point(self, point):
        return all(g.evaluate(point) == 0 for g in self.ideal.generators)

    def __repr__(self):
        gens = "; ".join(str(g) for g in self.ideal.generators)
        return f"AffineChart({self.path}: vars {self.ctx.names}, ideal [{gens}])"


def chart_from_strings(names, gens, dim, order=None, path="root"):
    from .algebra import RingContext, GREVLEX
    ctx = RingContext(tuple(names), order or GREVLEX)
    ideal = Ideal(ctx, [ctx.parse(g) for g in gens])
    return AffineChart(ctx, ideal, dim, path=path)


def jacobian(chart):
    """Rows = ideal generators, columns = ambient variables."""
    return [[g.derivative(i) for i in range(chart.ctx.nvars)]
            for g in chart.ideal.generators]


def singular_locus(chart):
    """Ideal of the singular locus: chart ideal plus all codim-sized minors.

    The chart is smooth exactly when this is the unit ideal.
    """
    if chart.is_empty():
        return Ideal(chart.ctx, [chart.ctx.one()])
    minors = matrix_minors(jacobian(chart), chart.codim, ctx=chart.ctx)
    return Ideal(chart.ctx, list(chart.ideal.generators) + minors)


def _iter_minors(rows, k):
    for rsub in itertools.combinations(range(len(rows)), k):
        for csub in itertools.combinations(range(len(rows[0])), k):
            yield det_polys([[rows[r][c] for c in csub] for r in rsub])


def is_smooth(chart):
    """Jacobian criterion; an empty chart counts as (vacuously) smooth.

    Minors are folded into the ideal one at a time so the basis stays
    small and the unit ideal is detected as soon as it appears; with
    hundreds of minors the all-at-once basis computation is hopeless.
    """
    if chart.is_empty():
        return True
    if chart.codim == 0:
        return True
    running = Ideal(chart.ctx, chart.ideal.generators)
    if running.is_unit():
        return True
    for minor in _iter_minors(jacobian(chart), chart.codim):
        reduced = running.normal_form(minor)
        if reduced.is_zero():
            continue
        if reduced.is_constant():
            return True
        running = Ideal(chart.ctx,
                        list(running.groebner()) + [reduced])
        if running.is_unit():
            return True
    return False


def _rank_at_point(jac, point, cap):
    """Rank of the Jacobian at a rational point, capped at `cap`."""
    rows = [[entry.evaluate(point) for entry in row] for row in jac]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    col = 0
    r = 0
    while r < len(rows) and col < ncols and rank < cap:
        pivot = None
        for i in range(r, len(rows)):
            if rows[i][col] != 0:
                pivot = i
                break
        if pivot is None:
            col += 1
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pv = rows[r][col]
        for i in range(r + 1, len(rows)):
            if rows[i][col] != 0:
                f = rows[i][col] / pv
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        rank += 1
        r += 1
        col += 1
    return rank


def is_smooth_at_point(chart, point):
    """Jacobian rank test at a single rational point of the chart."""
    if not chart.contains_point(point):
        raise ValueError("point does not lie on the chart")
    if chart.codim == 0:
        return True
    jac = jacobian(chart)
    if not jac:
        return True
    return _rank_at_point(jac, point, chart.codim) == chart.codim


class DifferentialFrame:
    """Expansion of every differential over a basis of `dim` columns.

    `expansions[k]` holds, for non-basis variable k, the coefficients of the
    basis differentials in the expansion of the k-th differential; the
    certificate is the Jacobian minor that was inverted, nonzero in the
    coordinate ring.
    """

    __slots__ = ("chart", "basis_columns", "row_subset", "certificate",
                 "expansions")

    def __init__(self, chart, basis_columns, row_subset, certificate,
                 expansions):
        self.chart = chart
        self.basis_columns = tuple(basis_columns)
        self.row_subset = tuple(row_subset)
        self.certificate = certificate
        self.expansions = expansions

    @property
    def n(self):
        return len(self.basis_columns)

    def derive_poly(self, p, l):
        """Coefficient of the l-th basis differential in dp, via the frame."""
        ctx = self.chart.ctx
        col = self.basis_columns[l]
        total = RationalFunction(p.derivative(col))
        for k, coeffs in self.expansions.items():
            dk = p.derivative(k)
            if dk:
                total = total + RationalFunction(dk) * coeffs[l]
        return total

    def derive(self, f, l):
        """Frame derivative of a rational function (quotient rule)."""
        if not isinstance(f, RationalFunction):
            f = RationalFunction(f)
        dn = self.derive_poly(f.num, l)
        dd = self.derive_poly(f.den, l)
        num = dn * RationalFunction(f.den) - RationalFunction(f.num) * dd
        return num / RationalFunction(f.den * f.den)

    def check_relations(self):
        """Every Jacobian row must vanish mod the chart ideal after expansion."""
        ideal = self.chart.ideal
        jac = jacobian(self.chart)
        for row in jac:
            for l in range(self.n):
                col = self.basis_columns[l]
                coeff = RationalFunction(row[col])
                for k, coeffs in self.expansions.items():
                    coeff = coeff + RationalFunction(row[k]) * coeffs[l]
                if not coeff.is_zero_mod(ideal):
                    return False
        return True

    def __repr__(self):
        names = [self.chart.ctx.names[i] for i in self.basis_columns]
        return f"DifferentialFrame(basis {names})"


def differential_frame(chart, preferred_columns=None):
    """Choose basis columns whose complementary minor is invertible.

    Preferred columns are honoured when admissible; otherwise the first
    admissible column subset in lexicographic order is taken, and for the
    chosen columns the first row subset with nonvanishing minor.
    """
    ctx = chart.ctx
    n = chart.dim
    c = chart.codim
    if n <= 0:
        raise DegenerateFrameError("frame needs a positive-dimensional chart")
    jac = jacobian(chart)
    ideal = chart.ideal

    candidates = []
    if preferred_columns is not None:
        pref = tuple(sorted(ctx.index(v) if isinstance(v, str) else v
                            for v in preferred_columns))
        if len(pref) != n:
            raise ValueError(f"preferred basis needs exactly {n} columns")
        candidates.append(pref)
    candidates.extend(itertools.combinations(range(ctx.nvars), n))

    for basis in candidates:
        others = tuple(i for i in range(ctx.nvars) if i not in basis)
        if len(others) != c:
            continue
        if c == 0:
            return DifferentialFrame(chart, basis, (), ctx.one(), {})
        for rows in itertools.combinations(range(len(jac)), c):
            sub = [[jac[r][k] for k in others] for r in rows]
            minor = det_polys(sub)
            if ideal.normal_form(minor).is_zero():
                continue
            # solve the c x c system by the adjugate: d x_others = -(adj/det) B d x_basis
            expansions = {}
            for pos, k in enumerate(others):
                coeffs = []
                for l, b in enumerate(basis):
                    # Cramer: replace column pos by the basis column of the rows
                    rep = [[(jac[r][b] if j == pos else jac[r][others[j]])
                            for j in range(c)] for r in rows]
                    coeffs.append(RationalFunction(-det_polys(rep), minor))
                expansions[k] = tuple(coeffs)
            frame = DifferentialFrame(chart, basis, rows, minor, expansions)
            if frame.check_relations():
                return frame
    raise DegenerateFrameError(
        "no admissible basis columns: all candidate minors vanish on the chart")
