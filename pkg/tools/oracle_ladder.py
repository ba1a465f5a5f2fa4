"""Independent oracle for the divisor-ladder valuations along curated arcs.

Two routes, neither touching the package:

1. Lattice combinatorics.  On the curated monomial curves and the cone
   every ladder generator restricts to a monomial along the arc, so each
   ladder stage is a monomial module tracked by its exponent frontier.
   - Curve, frame basis {x}: a wedge of sections of distinct arc-orders
     d0 != d1 is a monomial of order d0 + d1 - ord(x); equal orders give
     proportional sections (wedge 0).  Orders are pruned modulo the value
     semigroup of the curve.
   - Cone xy = z^2, frame basis {x, y}, parametrized x = a^2, y = b^2,
     z = a b: a wedge of monomial sections with exponent pairs e0, e1, e2
     is a monomial of exponent e0 + e1 + e2 - (2, 2), nonzero exactly when
     the e_i are affinely independent.  Exponents are pruned modulo the
     even-degree semigroup <(2,0), (1,1), (0,2)>.

2. Symbolic (sympy) recomputation of the first ladder step from the
   parametrization, as a cross-check of route 1.

Run:  python3 tools/oracle_ladder.py
"""

import itertools


# ---------------------------------------------------------------------------
# route 1: curves

def numerical_semigroup(gens, bound):
    reach = {0}
    frontier = [0]
    while frontier:
        v = frontier.pop()
        for g in gens:
            w = v + g
            if w <= bound and w not in reach:
                reach.add(w)
                frontier.append(w)
    return reach


def curve_ladder(minor_orders, coord_orders, x_order, depth):
    """v_1..v_depth for a monomial curve arc (combinatorial route)."""
    semigroup = numerical_semigroup(coord_orders, 2000)

    def frontier(orders):
        orders = sorted(set(orders))
        kept = []
        for d in orders:
            if not any(d - f in semigroup for f in kept):
                kept.append(d)
        return kept

    entry = frontier(minor_orders)
    running = list(entry)
    vals = []
    for _ in range(depth):
        # sections are all coordinate multiples of the generators; only the
        # generator sets themselves may be reduced modulo the semigroup
        sections = sorted({d + k for d in running
                           for k in [0] + list(coord_orders)})
        wedges = {d0 + d1 - x_order
                  for d0, d1 in itertools.combinations(sections, 2)
                  if d0 != d1}
        entry = frontier(wedges)
        vals.append(entry[0])
        running = frontier(a + b for a in running for b in entry)
    return vals


# ---------------------------------------------------------------------------
# route 1: the cone

CONE_COORDS = [(2, 0), (0, 2), (1, 1)]  # x, y, z in the (a, b) chart


def cone_frontier(exps):
    def divides(f, e):
        u, v = e[0] - f[0], e[1] - f[1]
        return u >= 0 and v >= 0 and (u + v) % 2 == 0

    exps = sorted(set(exps), key=lambda e: (e[0] + e[1], e))
    kept = []
    for e in exps:
        if not any(divides(f, e) for f in kept):
            kept.append(e)
    return kept


def cone_ladder(depth):
    """v_1..v_depth for the cone xy = z^2 along (t, t, t)."""
    def indep(e0, e1, e2):
        return ((e1[0] - e0[0]) * (e2[1] - e0[1])
                - (e2[0] - e0[0]) * (e1[1] - e0[1])) != 0

    entry = cone_frontier(CONE_COORDS)  # Gauss ideal (x, y, z)
    running = list(entry)
    vals = []
    for _ in range(depth):
        sections = sorted({(e[0] + k[0], e[1] + k[1])
                           for e in running for k in [(0, 0)] + CONE_COORDS})
        wedges = set()
        for e0, e1, e2 in itertools.combinations(sections, 3):
            if indep(e0, e1, e2):
                wedges.add((e0[0] + e1[0] + e2[0] - 2,
                            e0[1] + e1[1] + e2[1] - 2))
        entry = cone_frontier(wedges)
        v = min(e[0] + e[1] for e in entry)
        assert v % 2 == 0
        vals.append(v // 2)
        running = cone_frontier((e[0] + f[0], e[1] + f[1])
                                for e in running for f in entry)
    return vals


# ---------------------------------------------------------------------------
# route 2: sympy cross-checks of the first step

def sympy_curve_first_step(x_exp, y_exp, minors):
    import sympy

    T = sympy.symbols("T")
    x = T ** x_exp
    y = T ** y_exp
    subs = {"x": x, "y": y}
    gens = [sympy.sympify(m).subs(subs) for m in minors]
    raw = [sympy.expand(t_j * f) for t_j in gens for f in (1, x, y)]
    sections = []
    for s in raw:
        if not any(sympy.simplify(s * sympy.LC(u, T) - u * sympy.LC(s, T)) == 0
                   for u in sections):
            sections.append(s)
    dx = sympy.diff(x, T)
    orders = set()
    for s0, s1 in itertools.combinations(sections, 2):
        w = sympy.cancel((s0 * sympy.diff(s1, T)
                          - s1 * sympy.diff(s0, T)) / dx)
        if w == 0:
            continue
        orders.add(min(m[0] for m in sympy.Poly(sympy.expand(w), T).monoms()))
    return min(orders), sorted(orders)


def sympy_cone_first_step():
    import sympy

    a, b, s = sympy.symbols("a b s")
    x, y, z = a * a, b * b, a * b
    gens = [y, x, -2 * z]
    sections = []
    for t_j in gens:
        for f in (1, x, y, z):
            sec = sympy.expand(t_j * f)
            if not any(sympy.simplify(sec * sympy.LC(u, [a, b])
                                      - u * sympy.LC(sec, [a, b])) == 0
                       for u in sections):
                sections.append(sec)
    best = None
    for s0, s1, s2 in itertools.combinations(sections, 3):
        rows = [[sec,
                 sympy.cancel(sympy.diff(sec, a) / (2 * a)),
                 sympy.cancel(sympy.diff(sec, b) / (2 * b))]
                for sec in (s0, s1, s2)]
        w = sympy.cancel(sympy.Matrix(rows).det())
        if w == 0:
            continue
        w_arc = sympy.cancel(w.subs({a: s, b: s}))
        if w_arc == 0:
            continue
        num, den = sympy.fraction(w_arc)
        ord_w = (min(m[0] for m in sympy.Poly(num, s).monoms())
                 - min(m[0] for m in sympy.Poly(den, s).monoms()))
        assert ord_w % 2 == 0
        best = ord_w // 2 if best is None else min(best, ord_w // 2)
    return best


def main():
    print("== combinatorial route ==")
    cusp = curve_ladder([4, 3], [2, 3], 2, 4)
    print(f"cusp  y^2=x^3, arc (t^2,t^3):   v = {cusp}")
    a4 = curve_ladder([8, 5], [2, 5], 2, 4)
    print(f"A4    y^2=x^5, arc (t^2,t^5):   v = {a4}")
    cone = cone_ladder(4)
    print(f"cone  xy=z^2,  arc (t,t,t):     v = {cone}")

    print("== sympy cross-check of the first step ==")
    v1, orders = sympy_curve_first_step(2, 3, ["-3*x**2", "2*y"])
    print(f"cusp  first entry min order {v1}, order set {orders}")
    v1, orders = sympy_curve_first_step(2, 5, ["-5*x**4", "2*y"])
    print(f"A4    first entry min order {v1}, order set {orders}")
    v1 = sympy_cone_first_step()
    print(f"cone  first entry min order {v1}")


if __name__ == "__main__":
    main()
