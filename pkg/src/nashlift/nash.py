"""Iterated Nash blowups and the ladder of wedge-power fractional ideals.

The Gauss data of a chart is the ideal of codim-sized Jacobian minors; its
blowup is realised chart by chart through Rees-style relations followed by
saturation, which cuts out the closure of the graph.  The ladder starts
from the Gauss ideal and repeatedly applies the principal-parts wedge: the
next entry is spanned by the wedge coefficients of all (dim+1)-subsets of
the coordinate-multiple sections of the running product ideal.
"""

from __future__ import annotations

import functools
import itertools
import random
from dataclasses import dataclass, field

from .algebra import matrix_minors
from .errors import (ContextMismatchError, DegenerateInputError,
                     DegenerateLadderError)
from .geometry import (AffineChart, DifferentialFrame, differential_frame,
                       is_smooth, jacobian)
from .groebner import Ideal
from .ratfunc import RationalFunction, as_rational


def _poly_proportional(u, v):
    """True when u = c * v for a nonzero rational constant c."""
    if u.is_zero() or v.is_zero():
        return u.is_zero() and v.is_zero()
    lu, lv = u.lead_term(), v.lead_term()
    if lu[0] != lv[0]:
        return False
    return u * (1 / lu[1]) == v * (1 / lv[1])


def _gen_sort_cmp(a, b):
    ka, kb = a.den.sort_key(), b.den.sort_key()
    if ka != kb:
        return -1 if ka < kb else 1
    ka, kb = a.num.sort_key(), b.num.sort_key()
    if ka == kb:
        return 0
    return -1 if ka > kb else 1  # larger numerators first


class FractionalIdeal:
    """Finitely generated fractional ideal on a chart.

    Generators are stored reduced modulo the chart ideal, scaled so both
    numerator and denominator are monic (a unit rescaling, which every
    valuation-level consumer respects), deduplicated up to such units, and
    sorted deterministically.
    """

    __slots__ = ("chart", "generators", "meta")

    def __init__(self, chart, generators, meta=None, normalize=True):
        self.chart = chart
        self.meta = dict(meta or {})
        if normalize:
            generators = self._normalize(chart, generators)
        self.generators = tuple(generators)

    @staticmethod
    def _normalize(chart, generators):
        seen = {}
        for g in generators:
            g = as_rational(g, chart.ctx).reduce_mod(chart.ideal)
            if g.is_zero():
                continue
            lc = g.num.lead_coeff()
            if lc != 1:
                g = RationalFunction(g.num * (1 / lc), g.den)
            key = (g.num, g.den)
            if key not in seen:
                seen[key] = g
        out = list(seen.values())
        out.sort(key=functools.cmp_to_key(_gen_sort_cmp))
        return out

    def __len__(self):
        return len(self.generators)

    def __repr__(self):
        gens = ", ".join(str(g) for g in self.generators)
        return f"FractionalIdeal([{gens}])"

    def is_principal(self):
        return len(self.generators) == 1

    def is_unit(self):
        return (len(self.generators) == 1
                and self.generators[0].num.is_constant()
                and self.generators[0].is_polynomial())

    def __mul__(self, other):
        if self.chart is not other.chart and self.chart.ctx != other.chart.ctx:
            raise ContextMismatchError("fractional ideals on different charts")
        gens = [a * b for a in self.generators for b in other.generators]
        return FractionalIdeal(self.chart, gens)

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative fractional-ideal power")
        result = FractionalIdeal(self.chart, [self.chart.ctx.one()])
        for _ in range(n):
            result = result * self
        return result

    def cleared(self):
        """Common denominator Q and polynomial numerators P_i with g_i = P_i/Q."""
        ctx = self.chart.ctx
        dens = []
        for g in self.generators:
            if g.den.is_constant():
                continue
            if not any(g.den == d for d in dens):
                dens.append(g.den)
        q = ctx.one()
        for d in dens:
            q = q * d
        nums = []
        for g in self.generators:
            cofactor = q.divide_exact(g.den)
            if cofactor is None:  # constant denominators divide trivially
                cofactor = q * (1 / g.den.const_value())
            nums.append(g.num * cofactor)
        return nums, q

    def minimalized(self):
        """Drop generators lying in the module spanned by the others.

        This prunes the stored list without changing the generated module,
        so valuations, blowups and ladder steps are unaffected; it is what
        keeps iterated constructions desk-sized.
        """
        if len(self.generators) <= 1:
            return self
        nums, q = self.cleared()
        base = list(self.chart.ideal.generators)
        kept = list(range(len(nums)))
        changed = True
        while changed and len(kept) > 1:
            changed = False
            for pos in range(len(kept) - 1, -1, -1):
                i = kept[pos]
                others = [nums[j] for j in kept if j != i]
                test = Ideal(self.chart.ctx, base + others)
                if test.contains(nums[i]):
                    kept.pop(pos)
                    changed = True
                    break
        gens = [RationalFunction(nums[i], q) for i in kept]
        return FractionalIdeal(self.chart, gens, meta=self.meta)


def unit_fractional_ideal(chart):
    return FractionalIdeal(chart, [chart.ctx.one()])


# ---------------------------------------------------------------------------
# the Gauss data

def gauss_minor_ideal(chart, seed=0, attempts=5):
    """Codim-sized Jacobian minors of the chart, as a fractional ideal.

    Complete intersections use the Jacobian rows directly.  With more
    generators than the codimension, the rows are replaced by codim random
    small-integer combinations (retried up to `attempts` times, seed
    recorded) until some minor survives modulo the chart ideal; at smooth
    points the row space has rank exactly codim, so generic combinations
    span it.
    """
    ctx = chart.ctx
    c = chart.codim
    if c == 0:
        return FractionalIdeal(chart, [ctx.one()],
                               meta={"gauss_path": "ambient-smooth"})
    jac = jacobian(chart)
    m = len(jac)
    if m < c:
        raise DegenerateInputError(
            f"{m} generators cannot present a codimension-{c} chart")
    if m == c:
        minors = matrix_minors(jac, c, ctx=ctx)
        gens = [g for g in (chart.ideal.normal_form(p) for p in minors)
                if not g.is_zero()]
        if not gens:
            raise DegenerateInputError(
                "all Jacobian minors vanish on the chart; "
                "the presentation looks non-reduced or of wrong dimension")
        return FractionalIdeal(chart, gens,
                               meta={"gauss_path": "complete-intersection"})
    rng = random.Random(seed)
    for attempt in range(1, attempts + 1):
        combos = [[rng.randint(-3, 3) for _ in range(m)] for _ in range(c)]
        rows = []
        for combo in combos:
            row = []
            for col in range(ctx.nvars):
                entry = ctx.zero()
                for coeff, jrow in zip(combo, jac):
                    if coeff:
                        entry = entry + jrow[col] * coeff
                row.append(entry)
            rows.append(row)
        minors = matrix_minors(rows, c, ctx=ctx)
        gens = [g for g in (chart.ideal.normal_form(p) for p in minors)
                if not g.is_zero()]
        if gens:
            return FractionalIdeal(
                chart, gens,
                meta={"gauss_path": "row-reduced", "seed": seed,
                      "attempt": attempt, "combos": combos})
    raise DegenerateInputError(
        f"all minors vanished modulo the chart ideal in {attempts} "
        f"row-reduction attempts (seed {seed})")


# ---------------------------------------------------------------------------
# blowup charts

@dataclass
class BlowupChart:
    """One chart of a blowup: the generator set to 1 picks the chart."""

    chart: AffineChart
    center: FractionalIdeal
    generator_index: int
    exceptional: RationalFunction

    def __repr__(self):
        return (f"BlowupChart(k={self.generator_index}, "
                f"path={self.chart.path})")


def blowup_charts(parent, center, minimalize=True):
    """Charts covering the blowup of the chart along the fractional ideal.

    Chart k adjoins u_j with the cleared-denominator relations
    u_j * g_k - g_j, then saturates by the numerator of g_k (and by any
    nonconstant generator denominators, where the center is undefined),
    giving the closure of the graph.  New variables are appended after the
    ambient ones.
    """
    if len(center.generators) == 0:
        raise ValueError("cannot blow up an empty center")
    if minimalize:
        center = center.minimalized()
    gens = center.generators
    ctx = parent.ctx
    level = parent.level() + 1
    charts = []
    for k, g_k in enumerate(gens):
        names = []
        for j in range(len(gens)):
            if j != k:
                names.append(ctx.fresh_name(f"u{level}_{j}"))
        ext = ctx.extend(names)
        lifted = [g.lift_to(ext) for g in parent.ideal.generators]
        relations = []
        pos = 0
        for j, g_j in enumerate(gens):
            if j == k:
                continue
            u = ext.variable(ctx.nvars + pos)
            pos += 1
            relations.append(u * (g_k.num.lift_to(ext) * g_j.den.lift_to(ext))
                             - g_j.num.lift_to(ext) * g_k.den.lift_to(ext))
        ideal = Ideal(ext, lifted + relations)
        ideal = ideal.saturate(g_k.num.lift_to(ext))
        for g in gens:
            if not g.den.is_constant():
                ideal = ideal.saturate(g.den.lift_to(ext))
        parent_map = (parent, tuple(ext.variable(i)
                                    for i in range(ctx.nvars)))
        chart = AffineChart(ext, ideal, parent.dim, parent=parent_map,
                            path=f"{parent.path}/k{k}")
        exceptional = RationalFunction(g_k.num.lift_to(ext),
                                       g_k.den.lift_to(ext))
        charts.append(BlowupChart(chart, center, k, exceptional))
    return charts


def nash_blowup(chart, seed=0):
    """One Nash step: blow up the Gauss minor ideal of the chart."""
    return blowup_charts(chart, gauss_minor_ideal(chart, seed=seed))


@dataclass
class TowerLevel:
    level: int
    charts: list
    smooth_flags: list
    empty_flags: list

    @property
    def all_smooth(self):
        return all(self.smooth_flags)

    def to_dict(self):
        return {
            "level": self.level,
            "chart_count": len(self.charts),
            "charts": [
                {
                    "path": c.path,
                    "vars": list(c.ctx.names),
                    "dim": c.dim,
                    "smooth": s,
                    "empty": e,
                    "ideal": [str(g) for g in c.ideal.generators],
                }
                for c, s, e in zip(self.charts, self.smooth_flags,
                                   self.empty_flags)
            ],
        }


@dataclass
class TowerReport:
    levels: list
    stopped_level: object  # int, or None when max_iter was exhausted
    max_iter: int
    seed: int
    gauss_paths: list = field(default_factory=list)

    @property
    def reached_smooth(self):
        return self.stopped_level is not None

    def to_dict(self):
        return {
            "levels": [lv.to_dict() for lv in self.levels],
            "stopped_level": self.stopped_level,
            "reached_smooth": self.reached_smooth,
            "max_iter": self.max_iter,
            "seed": self.seed,
            "gauss_paths": list(self.gauss_paths),
        }


def iterate_until_smooth(chart, max_iter=8, seed=0):
    """Breadth-first tower: blow up every singular frontier chart.

    Stops at the first level whose frontier is entirely smooth; hitting
    max_iter is reported, not raised.
    """
    if max_iter < 1:
        raise ValueError("max_iter must be at least 1")
    levels = []
    gauss_paths = []
    frontier = [chart]
    stopped = None
    for level in range(max_iter + 1):
        smooth_flags = [is_smooth(c) for c in frontier]
        empty_flags = [c.is_empty() for c in frontier]
        levels.append(TowerLevel(level, list(frontier), smooth_flags,
                                 empty_flags))
        if all(smooth_flags):
            stopped = level
            break
        if level == max_iter:
            break
        next_frontier = []
        for c, smooth in zip(frontier, smooth_flags):
            if smooth:
                continue
            gauss = gauss_minor_ideal(c, seed=seed)
            gauss_paths.append({"path": c.path,
                                "gauss_path": gauss.meta.get("gauss_path")})
            for bc in blowup_charts(c, gauss):
                next_frontier.append(bc.chart)
        frontier = next_frontier
    return TowerReport(levels, stopped, max_iter, seed, gauss_paths)


# ---------------------------------------------------------------------------
# the principal-parts wedge and its dlog reduction

def _dlog_vector(frame, f):
    """Logarithmic frame derivatives of a rational function, one per basis
    column: d(num)/num - d(den)/den."""
    vec = []
    for l in range(frame.n):
        dn = frame.derive_poly(f.num, l)
        part = dn / RationalFunction(f.num)
        if not f.den.is_constant():
            dd = frame.derive_poly(f.den, l)
            part = part - dd / RationalFunction(f.den)
        vec.append(part)
    return vec


def _det_rational(rows, ideal):
    """Determinant of a rational-function matrix, rows cleared first.

    Numerators are reduced modulo the ideal after clearing: the value of
    the determinant as a function on the chart is unchanged, and the
    intermediate polynomials stay small.
    """
    ctx = rows[0][0].ctx
    cleared = []
    denominator = ctx.one()
    for row in rows:
        d = ctx.one()
        for entry in row:
            if not entry.den.is_constant():
                d = d * entry.den
            elif entry.den.const_value() != 1:
                d = d * entry.den
        cleared_row = []
        for entry in row:
            cofactor = d.divide_exact(entry.den)
            if cofactor is None:
                cofactor = d * (1 / entry.den.const_value())
            cleared_row.append(ideal.normal_form(entry.num * cofactor))
        cleared.append(cleared_row)
        denominator = denominator * d
    from .algebra import det_polys
    num = ideal.normal_form(det_polys(cleared))
    return RationalFunction(num, denominator)


def principal_parts_wedge(frame, sections):
    """Wedge coefficient of dim+1 sections against the frame volume form.

    Returns the coefficient of the basis form in
    s_0...s_n dlog(s_1/s_0) ^ ... ^ dlog(s_n/s_0), every differential
    expanded through the frame; by the connection-independence identity
    this equals the expansion through any connection, so none is accepted.
    """
    chart = frame.chart
    n = frame.n
    sections = [as_rational(s, chart.ctx) for s in sections]
    if len(sections) != n + 1:
        raise ValueError(f"need exactly {n + 1} sections, got {len(sections)}")
    for s in sections:
        if s.is_zero_mod(chart.ideal):
            raise ValueError("sections must be nonzero modulo the chart ideal")
    if n == 0:
        return sections[0]
    vectors = [_dlog_vector(frame, s) for s in sections]
    rows = [[vectors[i][l] - vectors[0][l] for l in range(n)]
            for i in range(1, n + 1)]
    det = _det_rational(rows, chart.ideal)
    result = det
    for s in sections:
        result = result * s
    return result.reduce_mod(chart.ideal)


def wedge_via_connection(frame, sections, eta=None):
    """Same wedge through an explicit connection: det [s_i | D s_i].

    D is the frame differential, optionally twisted to D + eta for a fixed
    1-form eta given by its frame coefficients.  Used by the identity
    checks; agrees with principal_parts_wedge for every eta.
    """
    chart = frame.chart
    n = frame.n
    sections = [as_rational(s, chart.ctx) for s in sections]
    if len(sections) != n + 1:
        raise ValueError(f"need exactly {n + 1} sections, got {len(sections)}")
    if eta is not None:
        eta = [as_rational(e, chart.ctx) for e in eta]
        if len(eta) != n:
            raise ValueError("eta needs one frame coefficient per basis column")
    rows = []
    for s in sections:
        row = [s]
        for l in range(n):
            d = frame.derive(s, l)
            if eta is not None:
                d = d + s * eta[l]
            row.append(d)
        rows.append(row)
    return _det_rational(rows, chart.ideal).reduce_mod(chart.ideal)


# ---------------------------------------------------------------------------
# the ladder

def spanning_sections(ideal_gens, chart):
    """Coordinate-multiple spanning set: generators times variables and 1.

    The products against every ambient variable (and the constant) are what
    make the principal parts of the sections span; only proportional
    sections may be dropped.
    """
    ctx = chart.ctx
    multipliers = [ctx.one()] + [ctx.variable(i) for i in range(ctx.nvars)]
    raw = []
    for t in ideal_gens:
        for x in multipliers:
            s = (t * x).reduce_mod(chart.ideal)
            if not s.is_zero():
                lc = s.num.lead_coeff()
                if lc != 1:
                    s = RationalFunction(s.num * (1 / lc), s.den)
                raw.append(s)
    sections = []
    for s in raw:
        duplicate = False
        for u in sections:
            if _poly_proportional(
                    chart.ideal.normal_form(s.num * u.den),
                    chart.ideal.normal_form(u.num * s.den)):
                duplicate = True
                break
        if not duplicate:
            sections.append(s)
    sections.sort(key=functools.cmp_to_key(_gen_sort_cmp))
    return sections


class IdealLadder:
    """Entries F at indices (base)^0, (base)^1, ... with base = dim + 2.

    Entry 0 is the Gauss minor ideal; each later entry is generated by the
    principal-parts wedges of the coordinate-multiple sections of the
    running product of all earlier entries.  Everything lives on the base
    chart; valuations along arcs are taken after pullback.
    """

    def __init__(self, chart, frame, entries, running):
        self.chart = chart
        self.frame = frame
        self.entries = entries
        self.running = running

    @property
    def n(self):
        return self.chart.dim

    @property
    def base(self):
        return self.chart.dim + 2

    @property
    def depth(self):
        return len(self.entries) - 1

    @classmethod
    def build(cls, chart, depth, preferred_columns=None, seed=0):
        frame = differential_frame(chart, preferred_columns)
        entry0 = gauss_minor_ideal(chart, seed=seed).minimalized()
        ladder = cls(chart, frame, [entry0], entry0)
        for _ in range(depth):
            ladder.extend()
        return ladder

    def extend(self):
        entry = next_ladder_entry(self)
        self.entries.append(entry)
        self.running = (self.running * entry).minimalized()
        return entry

    def entry(self, i):
        return self.entries[i]

    def to_dict(self):
        return {
            "base": self.base,
            "depth": self.depth,
            "frame_basis": [self.chart.ctx.names[i]
                            for i in self.frame.basis_columns],
            "entries": [
                {"power": i, "index": self.base ** i,
                 "generators": [str(g) for g in e.generators]}
                for i, e in enumerate(self.entries)
            ],
        }


def next_ladder_entry(ladder):
    """The wedge-spanned fractional ideal one rung up."""
    chart = ladder.chart
    frame = ladder.frame
    n = ladder.n
    sections = spanning_sections(ladder.running.generators, chart)
    if len(sections) < n + 1:
        raise DegenerateLadderError(
            f"only {len(sections)} spanning sections, need {n + 1}")
    vectors = [_dlog_vector(frame, s) for s in sections]
    wedges = []
    for subset in itertools.combinations(range(len(sections)), n + 1):
        i0 = subset[0]
        if n == 0:
            w = sections[i0]
        else:
            rows = [[vectors[i][l] - vectors[i0][l] for l in range(n)]
                    for i in subset[1:]]
            w = _det_rational(rows, chart.ideal)
            for i in subset:
                w = w * sections[i]
        w = w.reduce_mod(chart.ideal)
        if not w.is_zero():
            wedges.append(w)
    if not wedges:
        raise DegenerateLadderError("every wedge vanished on the chart")
    return FractionalIdeal(chart, wedges).minimalized()


# ---------------------------------------------------------------------------
# composite indices via base-(dim+2) digits

def base_digits(i, base):
    """Nonzero digits of i in the given base, as (position, digit) pairs."""
    if i < 1:
        raise ValueError("index must be positive")
    if base < 2:
        raise ValueError("base must be at least 2")
    digits = []
    pos = 0
    while i:
        i, d = divmod(i, base)
        if d:
            digits.append((pos, d))
        pos += 1
    return digits


def composite_entry(ladder, i):
    """Entry for a composite index: product of entry powers per digit."""
    digits = base_digits(i, ladder.base)
    need = max(j for j, _ in digits)
    if need > ladder.depth:
        raise ValueError(f"index {i} needs ladder depth {need}, "
                         f"have {ladder.depth}")
    result = unit_fractional_ideal(ladder.chart)
    for j, a in digits:
        result = result * ladder.entries[j] ** a
    return result.minimalized()
