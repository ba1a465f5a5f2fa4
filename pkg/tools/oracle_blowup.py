"""Independent CAS check of the blowup-tower milestones, using sympy only.

Blowup charts are computed by adjoining u_j with u_j*g_k = g_j, saturating
by g_k (one inverse variable + lex elimination), and testing smoothness by
the Jacobian criterion (singular ideal Groebner basis == [1]).  Centers here
use every codim-sized minor of the full Jacobian, which generates the same
module as the generic-row-reduced construction whenever the extra rows are
dependent modulo the ideal.

Run:  python3 tools/oracle_blowup.py
"""

import itertools

import sympy
from sympy import groebner, symbols


def saturate(gens, f, variables):
    w = sympy.Symbol("_w")
    gb = groebner([sympy.expand(g) for g in gens] + [w * f - 1],
                  w, *variables, order="lex")
    out = []
    for g in gb.exprs:
        if w not in g.free_symbols:
            out.append(sympy.expand(g))
    return out


def minors_ideal(gens, variables, size):
    jac = sympy.Matrix([[sympy.diff(g, v) for v in variables] for g in gens])
    out = []
    for rows in itertools.combinations(range(jac.rows), size):
        for cols in itertools.combinations(range(jac.cols), size):
            out.append(sympy.expand(jac[rows, cols].det()))
    return [m for m in out if m != 0]


def is_smooth(gens, variables, dim):
    codim = len(variables) - dim
    sing = list(gens) + minors_ideal(gens, variables, codim)
    gb = groebner([sympy.expand(g) for g in sing], *variables, order="grevlex")
    return list(gb.exprs) == [sympy.Integer(1)]


_FRESH = [0]


def blowup_charts(gens, variables, dim, center):
    charts = []
    for k, g_k in enumerate(center):
        _FRESH[0] += 1
        tag = _FRESH[0]
        new_vars = [sympy.Symbol(f"u{tag}_{j}")
                    for j in range(len(center)) if j != k]
        rel = []
        idx = 0
        for j, g_j in enumerate(center):
            if j == k:
                continue
            rel.append(new_vars[idx] * g_k - g_j)
            idx += 1
        allv = list(variables) + new_vars
        sat = saturate(list(gens) + rel, g_k, allv)
        charts.append((allv, sat))
    return charts


def minimalize_center(center, gens, variables):
    """Drop center generators lying in the ideal spanned by the others.

    Pure generator bookkeeping: the blowup only sees the module the center
    generates, so this changes nothing downstream.
    """
    kept = list(center)
    changed = True
    while changed:
        changed = False
        for i in range(len(kept) - 1, -1, -1):
            others = kept[:i] + kept[i + 1:]
            if not others:
                continue
            gb = groebner([sympy.expand(g) for g in list(gens) + others],
                          *variables, order="grevlex")
            if gb.reduce(kept[i])[1] == 0:
                kept.pop(i)
                changed = True
                break
    return kept


def nash_step(gens, variables, dim):
    center = minors_ideal(gens, variables, len(variables) - dim)
    # drop generators that are obviously proportional
    reduced = []
    for m in center:
        if not any(sympy.simplify(m * sympy.LC(u, list(variables))
                                  - u * sympy.LC(m, list(variables))) == 0
                   for u in reduced):
            reduced.append(m)
    reduced = minimalize_center(reduced, gens, variables)
    return blowup_charts(gens, variables, dim, reduced)


def resolve(gens, variables, dim, max_level, verbose=False):
    frontier = [(list(variables), [sympy.expand(g) for g in gens])]
    for level in range(max_level + 1):
        staying = []
        for vs, gs in frontier:
            if not is_smooth(gs, vs, dim):
                staying.append((vs, gs))
        if verbose:
            print(f"  level {level}: {len(frontier)} charts, "
                  f"{len(staying)} singular")
        if not staying:
            return level
        nxt = []
        for vs, gs in staying:
            nxt.extend(nash_step(gs, vs, dim))
        frontier = nxt
    return None


def main():
    x, y, z = symbols("x y z")

    lvl = resolve([y**2 - x**3], [x, y], 1, 3, verbose=True)
    print(f"cusp  y^2=x^3   smooth at level {lvl}")

    lvl = resolve([x * y - z**2], [x, y, z], 2, 3, verbose=True)
    print(f"cone  xy=z^2    smooth at level {lvl}")

    lvl = resolve([y**2 - x**5], [x, y], 1, 3, verbose=True)
    print(f"A4    y^2=x^5   smooth at level {lvl}")

    lvl = resolve([y**2 - x**3], [x, y, z], 2, 3, verbose=True)
    print(f"cusp cylinder   smooth at level {lvl}")

    # the distinguished cusp chart: u*y = x^2 gives the parametrizing line
    u = sympy.Symbol("u0")
    sat = saturate([y**2 - x**3, u * y - x**2], y, [x, y, u])
    gb = groebner(sat, x, y, u, order="grevlex")
    print(f"cusp chart (k = y): {list(gb.exprs)}")


if __name__ == "__main__":
    main()
