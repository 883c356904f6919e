"""Brute-force reference implementations used by the tests.

Nothing here imports gkzstab. Every routine works straight from the
definitions with exact rationals and is only meant for configurations of
dimension 1 or 2 with a handful of points.
"""

from fractions import Fraction
from itertools import combinations, permutations
from math import comb, factorial, gcd


def leibniz_det(rows):
    """Determinant by the permutation expansion."""
    n = len(rows)
    total = 0
    for perm in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = (-1) ** inversions
        for i in range(n):
            term *= rows[i][perm[i]]
        total += term
    return total


def simplex_det(points):
    """Signed determinant of the edge vectors from the first vertex."""
    base = points[0]
    return leibniz_det([[a - b for a, b in zip(p, base)] for p in points[1:]])


def full_simplices(points):
    """All (n+1)-subsets of point indices spanning a full-dimensional simplex,
    with their normalised volume |det|."""
    n = len(points[0])
    out = []
    for s in combinations(range(len(points)), n + 1):
        d = simplex_det([points[i] for i in s])
        if d != 0:
            out.append((s, abs(d)))
    return out


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def in_closed_simplex(points, s, x):
    """Whether x lies in the closed simplex on indices s (n = 1 or 2)."""
    if len(x) == 1:
        lo = min(points[i][0] for i in s)
        hi = max(points[i][0] for i in s)
        return lo <= x[0] <= hi
    a, b, c = (points[i] for i in s)
    d1, d2, d3 = _cross(a, b, x), _cross(b, c, x), _cross(c, a, x)
    neg = d1 < 0 or d2 < 0 or d3 < 0
    pos = d1 > 0 or d2 > 0 or d3 > 0
    return not (neg and pos)


def _interiors_disjoint(points, s, t):
    if len(points[0]) == 1:
        a = sorted(points[i][0] for i in s)
        b = sorted(points[i][0] for i in t)
        return a[1] <= b[0] or b[1] <= a[0]
    # separating axis: some edge line of s or t has the other simplex weakly
    # on its far side
    for p, q in ((s, t), (t, s)):
        tri = [points[i] for i in p]
        other = [points[i] for i in q]
        for k in range(3):
            a, b, c = tri[k], tri[(k + 1) % 3], tri[(k + 2) % 3]
            side = _cross(a, b, c)
            if all(_cross(a, b, o) * side <= 0 for o in other):
                return True
    return False


def compatible(points, s, t):
    """Interiors disjoint and neither simplex contains a foreign vertex."""
    if not _interiors_disjoint(points, s, t):
        return False
    for p, q in ((s, t), (t, s)):
        for v in p:
            if v not in q and in_closed_simplex(points, q, points[v]):
                return False
    return True


def brute_triangulations(points):
    """Every set of pairwise compatible full simplices whose volumes add up
    to the volume of the hull. Returned as sorted tuples of sorted cells."""
    simplices = full_simplices(points)
    total = hull_normalised_volume(points)
    m = len(simplices)
    ok = [[compatible(points, simplices[a][0], simplices[b][0]) for b in range(m)] for a in range(m)]
    found = []

    def grow(start, chosen, remaining):
        if remaining == 0:
            found.append(tuple(sorted(simplices[k][0] for k in chosen)))
            return
        for k in range(start, m):
            vol = simplices[k][1]
            if vol <= remaining and all(ok[k][c] for c in chosen):
                grow(k + 1, chosen + [k], remaining - vol)

    grow(0, [], total)
    return sorted(found)


def convex_polygon(points):
    """Hull vertices of planar points in counter-clockwise order (monotone
    chain, collinear points dropped)."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def chain(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and _cross(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower, upper = chain(pts), chain(reversed(pts))
    return lower[:-1] + upper[:-1]


def hull_normalised_volume(points):
    """n! vol(P) for n = 1 or 2."""
    if len(points[0]) == 1:
        xs = [p[0] for p in points]
        return max(xs) - min(xs)
    poly = convex_polygon(points)
    twice = sum(
        poly[k][0] * poly[(k + 1) % len(poly)][1] - poly[(k + 1) % len(poly)][0] * poly[k][1]
        for k in range(len(poly))
    )
    return abs(twice)


def polygon_measures(points):
    """(vol P, int_P x, vol dP, int_dP x) for a lattice polygon, boundary
    edges measured in lattice length. Shoelace and edge midpoints."""
    poly = convex_polygon(points)
    area = Fraction(hull_normalised_volume(points), 2)
    mx = my = Fraction(0)
    for k in range(len(poly)):
        (x0, y0), (x1, y1) = poly[k], poly[(k + 1) % len(poly)]
        c = x0 * y1 - x1 * y0
        mx += (x0 + x1) * c
        my += (y0 + y1) * c
    moment = (mx / 6, my / 6)  # counter-clockwise order, so no sign flip
    blen = Fraction(0)
    bx = by = Fraction(0)
    for k in range(len(poly)):
        (x0, y0), (x1, y1) = poly[k], poly[(k + 1) % len(poly)]
        length = gcd(abs(x1 - x0), abs(y1 - y0))
        blen += length
        bx += length * Fraction(x0 + x1, 2)
        by += length * Fraction(y0 + y1, 2)
    return area, moment, blen, (bx, by)


def gkz_by_definition(points, cells):
    out = [0] * len(points)
    for s in cells:
        vol = abs(simplex_det([points[i] for i in s]))
        for i in s:
            out[i] += vol
    return tuple(out)


def barycentric(points, s, x):
    """Barycentric coordinates of x in the full simplex s, by Cramer's rule."""
    verts = [points[i] for i in s]
    n = len(x)
    mat = [[Fraction(v[k]) for v in verts] for k in range(n)] + [[Fraction(1)] * (n + 1)]
    rhs = [Fraction(c) for c in x] + [Fraction(1)]
    d = leibniz_det(mat)
    out = []
    for col in range(n + 1):
        m = [row[:col] + [rhs[r]] + row[col + 1:] for r, row in enumerate(mat)]
        out.append(leibniz_det(m) / d)
    return out


def interpolate(points, s, heights, x):
    lam = barycentric(points, s, x)
    return sum((c * Fraction(heights[i]) for c, i in zip(lam, s)), Fraction(0))


def induces(points, cells, heights):
    """Whether the heights lift exactly the given triangulation to an upper
    hull: every point off a cell lies strictly below that cell's plane."""
    for s in cells:
        for j, p in enumerate(points):
            if j in s:
                continue
            if not interpolate(points, s, heights, p) > Fraction(heights[j]):
                return False
    return True


def upper_hull_value(points, heights, x):
    """max of the affine interpolation over every full simplex of A that
    contains x (Caratheodory reduces the upper hull to these)."""
    best = None
    for s, _ in full_simplices(points):
        if in_closed_simplex(points, s, x):
            v = interpolate(points, s, heights, x)
            if best is None or v > best:
                best = v
    return best


def pl_integral(points, cells, heights):
    """Integral over P of the function interpolating heights on each cell."""
    n = len(points[0])
    total = Fraction(0)
    for s in cells:
        vol = Fraction(abs(simplex_det([points[i] for i in s])), factorial(n))
        total += vol * sum(Fraction(heights[i]) for i in s) / (n + 1)
    return total


def lattice_points_in_polygon(vertices):
    poly = convex_polygon(vertices)
    xs = [p[0] for p in poly]
    ys = [p[1] for p in poly]
    out = []
    for x in range(min(xs), max(xs) + 1):
        for y in range(min(ys), max(ys) + 1):
            if all(_cross(poly[k], poly[(k + 1) % len(poly)], (x, y)) >= 0 for k in range(len(poly))):
                out.append((x, y))
    return out


def convex_combination_exists(p, vertices):
    """Membership of p in conv(vertices) by trying every affinely independent
    subset of at most d+1 vertices (Caratheodory) with an exact solve."""
    d = len(p)
    p = [Fraction(x) for x in p]
    for size in range(1, min(d + 1, len(vertices)) + 1):
        for sub in combinations(range(len(vertices)), size):
            lam = _solve_combination(p, [vertices[i] for i in sub])
            if lam is not None and all(c >= 0 for c in lam):
                return True
    return False


def _solve_combination(p, verts):
    # least-squares-free exact solve of sum lam_i v_i = p, sum lam_i = 1
    rows = [[Fraction(v[k]) for v in verts] + [p[k]] for k in range(len(p))]
    rows.append([Fraction(1)] * len(verts) + [Fraction(1)])
    m = len(verts)
    r = 0
    pivots = []
    for c in range(m):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            return None  # dependent columns: a smaller subset covers it
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    if any(row[-1] != 0 for row in rows[r:]):
        return None
    return [rows[i][-1] for i in range(m)]


def _on_segment(u, v, p):
    if _cross(u, v, p) != 0:
        return False
    return all(min(a, b) <= c <= max(a, b) for a, b, c in zip(u, v, p))


def boundary_pl_integrals(points, cells, heights):
    """{j: int over the codimension-j skeleton of P} for n = 1 or 2, each
    face measured in its own lattice (lattice length, counting measure)."""
    h = [Fraction(x) for x in heights]
    if len(points[0]) == 1:
        xs = [p[0] for p in points]
        ends = [xs.index(min(xs)), xs.index(max(xs))]
        return {1: sum(h[i] for i in ends)}
    poly = convex_polygon(points)
    index = {p: i for i, p in enumerate(points)}
    edges = {tuple(sorted((s[a], s[b]))) for s in cells for a in range(3) for b in range(a + 1, 3)}
    edge_total = Fraction(0)
    for k in range(len(poly)):
        u, v = poly[k], poly[(k + 1) % len(poly)]
        for a, b in edges:
            pa, pb = points[a], points[b]
            if _on_segment(u, v, pa) and _on_segment(u, v, pb):
                length = gcd(abs(pa[0] - pb[0]), abs(pa[1] - pb[1]))
                edge_total += length * (h[a] + h[b]) / 2
    return {1: edge_total, 2: sum(h[index[p]] for p in poly)}


def affine_rows(points):
    """{kind: (entry sum, point-weighted sum)} from closed-form measures of P
    for n = 1 or 2: Chow, Hurwitz and discriminant."""
    if len(points[0]) == 1:
        lo, hi = min(p[0] for p in points), max(p[0] for p in points)
        length, moment = Fraction(hi - lo), Fraction(hi * hi - lo * lo, 2)
        chow = (2 * length, (2 * moment,))
        other = (2 * length - 2, (2 * moment - lo - hi,))
        return {"chow": chow, "hurwitz": other, "discriminant": other}
    area, moment, blen, bmom = polygon_measures(points)
    poly = convex_polygon(points)
    vsum = tuple(sum(p[k] for p in poly) for k in range(2))
    return {
        "chow": (6 * area, tuple(6 * m for m in moment)),
        "hurwitz": (12 * area - 2 * blen, tuple(12 * m - 2 * b for m, b in zip(moment, bmom))),
        "discriminant": (6 * area - 2 * blen + len(poly),
                         tuple(6 * m - 2 * b + v for m, b, v in zip(moment, bmom, vsum))),
    }


def prism_discriminant_degree(points):
    """Alternating face sum for P x [0, 1] with P a lattice polygon: every
    face is a product F x G and its normalised volume is
    C(dim F + dim G, dim F) Vol(F) Vol(G)."""
    poly = convex_polygon(points)
    faces_p = [(2, hull_normalised_volume(points))]
    for k in range(len(poly)):
        (x0, y0), (x1, y1) = poly[k], poly[(k + 1) % len(poly)]
        faces_p.append((1, gcd(abs(x1 - x0), abs(y1 - y0))))
    faces_p += [(0, 1)] * len(poly)
    faces_i = [(1, 1), (0, 1), (0, 1)]
    total = 0
    for df, vf in faces_p:
        for dg, vg in faces_i:
            d = df + dg
            total += (-1) ** (3 - d) * (d + 1) * comb(d, df) * vf * vg
    return total
