"""Formal arcs on charts and their passage through blowup towers.

An arc is one truncated series per ambient variable, satisfying the chart
ideal to the modeled precision.  Valuations of fractional ideals along
arcs are the intersection numbers driving the liftability criterion: the
arc lifts through the tower exactly when its valuation sequence against
the ladder turns geometric with ratio dim+2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import inf

from .errors import (ArcInCenterError, ArcInSingularLocusError,
                     IndeterminatePullbackError, InsufficientPrecisionError,
                     NonLiftableDivisionError)
from .geometry import is_smooth_at_point, singular_locus
from .nash import nash_blowup
from .ratfunc import RationalFunction, as_rational
from .series import DEFAULT_TRUNC, TruncatedSeries


class Arc:
    """A formal disc on a chart: one series per ambient variable."""

    __slots__ = ("chart", "components", "trunc")

    def __init__(self, chart, components, trunc=None, validate=True):
        components = tuple(components)
        if len(components) != chart.ctx.nvars:
            raise ValueError("need one series per chart variable")
        self.chart = chart
        self.components = components
        if trunc is None:
            trunc = min((c.trunc for c in components), default=DEFAULT_TRUNC)
        self.trunc = trunc
        if validate:
            for g in chart.ideal.generators:
                s = evaluate_polynomial(g, self)
                if s.valuation() is not inf:
                    raise ValueError(
                        f"arc does not lie on the variety: {g} pulls back "
                        f"to {s}")

    @property
    def exact(self):
        return all(c.exact for c in self.components)

    def window(self):
        return min((c.window() for c in self.components), default=inf)

    def center_point(self):
        return tuple(c.coeff(0) for c in self.components)

    @classmethod
    def from_polynomials(cls, chart, coeff_lists, trunc=DEFAULT_TRUNC):
        comps = [TruncatedSeries(c, trunc, exact=True) for c in coeff_lists]
        return cls(chart, comps, trunc)

    def __repr__(self):
        body = "; ".join(f"{n} = {c}" for n, c in zip(self.chart.ctx.names,
                                                      self.components))
        return f"Arc({body})"

    def component_strings(self):
        return {n: str(c) for n, c in zip(self.chart.ctx.names,
                                          self.components)}


def evaluate_polynomial(p, arc):
    """Substitute the arc components into a polynomial, exactly."""
    trunc = arc.trunc
    powers = [{} for _ in range(arc.chart.ctx.nvars)]

    def power(i, e):
        cache = powers[i]
        if e not in cache:
            if e == 1:
                cache[e] = arc.components[i]
            else:
                half = power(i, e // 2)
                sq = half * half
                cache[e] = sq * arc.components[i] if e % 2 else sq
        return cache[e]

    total = TruncatedSeries.zero(trunc)
    for mono, coeff in p.terms():
        term = TruncatedSeries.constant(coeff, trunc)
        for i, e in enumerate(mono):
            if e:
                term = term * power(i, e)
        total = total + term
    return total


def evaluate_on_arc(f, arc):
    """Pull a polynomial or rational function back along the arc."""
    f = as_rational(f, arc.chart.ctx)
    num = evaluate_polynomial(f.num, arc)
    if f.is_polynomial():
        return num
    den = evaluate_polynomial(f.den, arc)
    if den.valuation() is inf:
        caveat = "" if den.exact else " up to the truncation window"
        raise IndeterminatePullbackError(
            f"denominator {f.den} vanishes along the arc{caveat}")
    return num.divide(den)


def _valuation(series):
    """(value, certain): certain means the value cannot move with more
    precision."""
    v = series.valuation()
    if v is inf:
        return inf, series.exact
    return v, True


def function_valuation_along_arc(f, arc):
    """Valuation of a rational function along the arc, without dividing.

    Returns (value, certain, bound): when the value is inf but uncertain,
    the true valuation is at least `bound`.
    """
    f = as_rational(f, arc.chart.ctx)
    num = evaluate_polynomial(f.num, arc)
    vn, cn = _valuation(num)
    shift = 0
    if not f.is_polynomial():
        den = evaluate_polynomial(f.den, arc)
        vd, cd = _valuation(den)
        if vd is inf:
            caveat = "" if cd else " up to the truncation window"
            raise IndeterminatePullbackError(
                f"denominator {f.den} vanishes along the arc{caveat}")
        shift = vd
    if vn is inf:
        bound = None if cn else num.trunc + 1 - shift
        return inf, cn, bound
    return vn - shift, True, None


def ideal_valuation_along_arc(fractional, arc, detailed=False):
    """Minimum generator valuation; inf when the arc sits inside the ideal.

    With detailed=True returns (value, certain): an uncertain value means
    an inexact arc left some generator zero out to its window, so the
    minimum is only bounded below, not decided.
    """
    best = inf
    bounds = []
    all_certain = True
    for g in fractional.generators:
        v, certain, bound = function_valuation_along_arc(g, arc)
        if v is inf:
            if not certain:
                all_certain = False
                bounds.append(bound)
            continue
        if v < best:
            best = v
    if best is inf:
        certain = all_certain
    else:
        certain = all(b >= best for b in bounds)
    return (best, certain) if detailed else best


# ---------------------------------------------------------------------------
# lifting

def lift_into_chart(arc, blowup_chart):
    """Lift the arc into one specific blowup chart, if divisions allow."""
    center = blowup_chart.center
    k = blowup_chart.generator_index
    gens = center.generators
    g_k = gens[k]
    num_k = evaluate_polynomial(g_k.num, arc)
    den_k = evaluate_polynomial(g_k.den, arc)
    new_components = list(arc.components)
    for j, g_j in enumerate(gens):
        if j == k:
            continue
        num = evaluate_polynomial(g_j.num, arc) * den_k
        den = evaluate_polynomial(g_j.den, arc) * num_k
        if den.valuation() is inf:
            raise NonLiftableDivisionError(
                "chart generator vanishes along the arc")
        new_components.append(num.divide(den))
    return Arc(blowup_chart.chart, new_components)


def lift_through_blowup(arc, charts):
    """Select the minimal-valuation chart and lift the arc into it.

    Ties break to the lowest generator index; the divisions all succeed by
    minimality.  An arc inside the center (every generator of infinite
    valuation) violates the lifting hypothesis.
    """
    if not charts:
        raise ValueError("no blowup charts supplied")
    center = charts[0].center
    vals = [function_valuation_along_arc(g, arc)
            for g in center.generators]
    finite = [(v, i) for i, (v, c, b) in enumerate(vals) if v is not inf]
    if not finite:
        if all(c for _, c, _ in vals):
            raise ArcInCenterError(
                "every center generator vanishes along the arc")
        raise InsufficientPrecisionError(
            "cannot separate the arc from the blowup center",
            required=int(arc.trunc) * 2)
    best_v, best_i = min(finite)
    if any(v is inf and not c and b < best_v for v, c, b in vals):
        raise InsufficientPrecisionError(
            "an undetermined center generator could undercut the minimum",
            required=best_v + int(arc.trunc))
    chart_by_index = {c.generator_index: c for c in charts}
    selected = chart_by_index[best_i]
    lifted = lift_into_chart(arc, selected)
    return selected, lifted


@dataclass
class TowerLiftStep:
    level: int
    path: str
    selected_index: int
    center_valuation: int
    trunc_before: object
    trunc_after: object

    def to_dict(self):
        return {
            "level": self.level,
            "path": self.path,
            "selected_generator": self.selected_index,
            "center_valuation": self.center_valuation,
            "window_before": _window_str(self.trunc_before),
            "window_after": _window_str(self.trunc_after),
        }


def _window_str(w):
    return "exact" if w is inf else int(w)


@dataclass
class TowerLiftReport:
    success: bool
    stabilized_level: object
    steps: list
    arc: object
    max_levels: int
    seed: int
    smooth_at_levels: list = field(default_factory=list)

    def to_dict(self):
        return {
            "success": self.success,
            "stabilized_level": self.stabilized_level,
            "steps": [s.to_dict() for s in self.steps],
            "lifted_arc": self.arc.component_strings(),
            "final_chart": self.arc.chart.path,
            "final_chart_vars": list(self.arc.chart.ctx.names),
            "max_levels": self.max_levels,
            "seed": self.seed,
            "smooth_at_levels": list(self.smooth_at_levels),
        }


def check_generic_point_smooth(arc):
    """The lifting hypothesis: the arc must leave the singular locus."""
    sing = singular_locus(arc.chart)
    any_uncertain = False
    for g in sing.generators:
        v, certain = _valuation(evaluate_polynomial(g, arc))
        if v is not inf:
            return
        if not certain:
            any_uncertain = True
    if any_uncertain:
        raise InsufficientPrecisionError(
            "cannot certify a nonsingular point on the arc image",
            required=int(arc.trunc) * 2)
    raise ArcInSingularLocusError(
        "the arc lies inside the singular locus")


def _tower_walk(arc, max_levels, seed):
    """Shared engine: lift level by level until smooth at the arc center."""
    if max_levels < 1:
        raise ValueError("max_levels must be at least 1")
    check_generic_point_smooth(arc)
    steps = []
    smooth_flags = []
    level = 0
    current = arc
    while True:
        point = current.center_point()
        smooth_here = is_smooth_at_point(current.chart, point)
        smooth_flags.append(smooth_here)
        if smooth_here:
            return True, level, steps, current, smooth_flags
        if level >= max_levels:
            return False, None, steps, current, smooth_flags
        charts = nash_blowup(current.chart, seed=seed)
        before = current.window()
        selected, lifted = lift_through_blowup(current, charts)
        v, _, _ = function_valuation_along_arc(
            selected.center.generators[selected.generator_index], current)
        steps.append(TowerLiftStep(level + 1, selected.chart.path,
                                   selected.generator_index, v,
                                   before, lifted.window()))
        current = lifted
        level += 1


def lift_through_tower(arc, max_levels=8, seed=0):
    """Iterate Nash blowup + lift until the arc center is a smooth point.

    Success produces the finite-level shadow of the lift to the limit:
    chart-selection determinism witnesses uniqueness, and the parent
    components of the lifted arc reproduce the input exactly.
    """
    success, lvl, steps, final, flags = _tower_walk(arc, max_levels, seed)
    return TowerLiftReport(success, lvl, steps, final, max_levels, seed,
                           flags)


@dataclass
class StableTransformReport:
    stable: bool
    stable_level: object
    levels: list  # per-level dicts: path, smooth_at_point
    arc: object
    max_levels: int
    seed: int

    def to_dict(self):
        return {
            "stable": self.stable,
            "stable_level": self.stable_level,
            "levels": list(self.levels),
            "transform_arc": self.arc.component_strings(),
            "final_chart": self.arc.chart.path,
            "max_levels": self.max_levels,
            "seed": self.seed,
        }


def stable_transform_probe(curve, max_levels=8, seed=0):
    """Track a parametrized curve through the tower, level by level.

    The curve must be given by polynomial (exact) components; the verdict
    records the first level at which its transform passes through a smooth
    point of its chart.
    """
    if not curve.exact:
        raise ValueError("the probe wants polynomial, non-truncated "
                         "components")
    success, lvl, steps, final, flags = _tower_walk(curve, max_levels, seed)
    levels = []
    paths = ["root"] + [s.path for s in steps]
    for i, smooth in enumerate(flags):
        levels.append({"level": i, "path": paths[i] if i < len(paths)
                       else final.chart.path, "smooth_at_point": smooth})
    return StableTransformReport(success, lvl, levels, final, max_levels,
                                 seed)


# ---------------------------------------------------------------------------
# the geometric criterion

@dataclass
class CriterionReport:
    n: int
    base: int
    depth: int
    valuations: list          # v_1 .. v_depth (ints or inf)
    base_valuation: object    # valuation of entry 0, informational
    verdict: str              # eventually-geometric | not-yet-determined |
                              # divergent-pattern
    ratio: object = None
    onset: object = None
    onset_value: object = None
    divergent_index: object = None
    truncation_adequate: bool = True

    def to_dict(self):
        def v_str(v):
            return "+inf" if v is inf else v

        return {
            "n": self.n,
            "base": self.base,
            "depth": self.depth,
            "valuations": [v_str(v) for v in self.valuations],
            "entry0_valuation": v_str(self.base_valuation),
            "verdict": self.verdict,
            "ratio": self.ratio,
            "onset": self.onset,
            "onset_value": v_str(self.onset_value)
            if self.onset_value is not None else None,
            "divergent_index": self.divergent_index,
            "truncation_adequate": self.truncation_adequate,
        }


def geometric_criterion_test(arc, ladder):
    """Is the valuation sequence eventually geometric with ratio dim+2?

    The verdict never extrapolates beyond the computed depth: it reports
    eventually-geometric only when some onset m has v_m > 0 and every
    later computed step multiplies exactly by the base.
    """
    base = ladder.base
    depth = ladder.depth
    v0, c0 = ideal_valuation_along_arc(ladder.entries[0], arc, detailed=True)
    vals = []
    adequate = c0
    for i in range(1, depth + 1):
        v, certain = ideal_valuation_along_arc(ladder.entries[i], arc,
                                               detailed=True)
        vals.append(v)
        adequate = adequate and certain
    report = CriterionReport(ladder.n, base, depth, vals, v0,
                             verdict="not-yet-determined",
                             truncation_adequate=adequate)
    for i, v in enumerate(vals):
        if v is inf:
            report.verdict = "divergent-pattern"
            report.divergent_index = i + 1
            return report
    if not adequate:
        return report
    for onset in range(1, depth):
        v_onset = vals[onset - 1]
        if v_onset <= 0:
            continue
        if all(vals[i] == base * vals[i - 1] for i in range(onset, depth)):
            report.verdict = "eventually-geometric"
            report.ratio = base
            report.onset = onset
            report.onset_value = v_onset
            return report
    return report
