"""Exact two-phase simplex method (Bland's rule) and the feasibility and
membership certificates built on top of it."""

from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "AffineFunctional",
    "LPResult",
    "Membership",
    "linprog_max",
    "lp_feasible_strict",
    "point_in_hull",
]


@dataclass(frozen=True)
class AffineFunctional:
    """x -> <gradient, x> + constant."""

    gradient: tuple
    constant: Fraction = Fraction(0)

    def __call__(self, x):
        if len(x) != len(self.gradient):
            raise ValueError("dimension mismatch")
        return sum((g * xi for g, xi in zip(self.gradient, x)), Fraction(0)) + self.constant


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    x: tuple = ()
    value: Fraction = None


def _pivot(T, basis, row, col):
    piv = T[row][col]
    T[row] = [v / piv for v in T[row]]
    for i, r in enumerate(T):
        if i != row and r[col] != 0:
            f = r[col]
            T[i] = [a - f * b for a, b in zip(r, T[row])]
    basis[row] = col


def _run(T, basis, cost, allowed):
    """Maximise ``cost`` over the tableau in place. Returns a status."""
    rhs = len(T[0]) - 1
    while True:
        entering = None
        for j in allowed:
            if j in basis:
                continue
            red = cost[j] - sum(cost[basis[i]] * T[i][j] for i in range(len(T)))
            if red > 0:
                entering = j
                break
        if entering is None:
            return "optimal"
        best = None
        for i, r in enumerate(T):
            if r[entering] > 0:
                key = (r[rhs] / r[entering], basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            return "unbounded"
        _pivot(T, basis, best[1], entering)


def linprog_max(c, A_ub=(), b_ub=(), A_eq=(), b_eq=()):
    """Maximise ``c @ y`` subject to ``A_ub @ y <= b_ub``, ``A_eq @ y == b_eq``
    and ``y >= 0``, in exact rational arithmetic.

    Bland's rule guarantees termination; the problems solved here have at
    most a few hundred rows, so no attempt is made at efficiency.
    """
    nvar = len(c)
    rows = [([Fraction(a) for a in row], Fraction(b), "ub") for row, b in zip(A_ub, b_ub)]
    rows += [([Fraction(a) for a in row], Fraction(b), "eq") for row, b in zip(A_eq, b_eq)]
    n_slack = sum(1 for r in rows if r[2] == "ub")
    need_art = [r[2] == "eq" or r[1] < 0 for r in rows]
    n_art = sum(need_art)
    width = nvar + n_slack + n_art
    T, basis = [], []
    slack_col, art_col = nvar, nvar + n_slack
    for (coeffs, b, kind), art in zip(rows, need_art):
        line = coeffs + [Fraction(0)] * (n_slack + n_art) + [b]
        own_slack = None
        if kind == "ub":
            line[slack_col] = Fraction(1)
            own_slack = slack_col
            slack_col += 1
        if b < 0:
            line = [-v for v in line]
        if art:
            line[art_col] = Fraction(1)
            basis.append(art_col)
            art_col += 1
        else:
            basis.append(own_slack)
        T.append(line)

    artificial = range(nvar + n_slack, width)
    if n_art:
        phase1 = [Fraction(0)] * width
        for j in artificial:
            phase1[j] = Fraction(-1)
        _run(T, basis, phase1, range(width))
        if any(T[i][-1] != 0 for i, b in enumerate(basis) if b in artificial):
            return LPResult("infeasible")
        # drive zero-level artificials out of the basis
        i = 0
        while i < len(T):
            if basis[i] in artificial:
                col = next((j for j in range(nvar + n_slack) if T[i][j] != 0), None)
                if col is None:
                    del T[i]
                    del basis[i]
                    continue
                _pivot(T, basis, i, col)
            i += 1

    cost = [Fraction(v) for v in c] + [Fraction(0)] * (width - nvar)
    status = _run(T, basis, cost, range(nvar + n_slack))
    if status == "unbounded":
        return LPResult("unbounded")
    y = [Fraction(0)] * width
    for i, b in enumerate(basis):
        y[b] = T[i][-1]
    x = tuple(y[:nvar])
    return LPResult("optimal", x, sum((a * b for a, b in zip(cost, y)), Fraction(0)))


def lp_feasible_strict(constraints, dim):
    """Find a rational point satisfying every constraint, or return None.

    ``constraints`` is a list of ``(functional, strict)`` pairs meaning
    ``functional(x) > 0`` when strict and ``>= 0`` otherwise. The system is
    homogenised with a scale variable ``t > 0`` and solved by maximising a
    common slack ``s`` under the gauge ``|x_i| <= 1, 0 <= t <= 1, s <= 1``;
    it is feasible iff the optimal slack is positive. The witness is ``x/t``.
    """
    # variables: u_0..u_{dim-1} (x = u - 1), t, v (s = v - 1)
    t_col, v_col = dim, dim + 1
    nv = dim + 2
    A, b = [], []

    def row_for(func, strict):
        # g.x + c t >= s   ->   -g.u - c t + s <= -g.1  (+ 0 after s shift)
        g = [Fraction(x) for x in func.gradient]
        if len(g) != dim:
            raise ValueError("dimension mismatch")
        r = [-x for x in g] + [-Fraction(func.constant), Fraction(0)]
        rhs = -sum(g, Fraction(0))
        if strict:
            r[v_col] = Fraction(1)
            rhs += 1
        return r, rhs

    for func, strict in constraints:
        r, rhs = row_for(func, strict)
        A.append(r)
        b.append(rhs)
    # t >= s
    r = [Fraction(0)] * nv
    r[t_col], r[v_col] = Fraction(-1), Fraction(1)
    A.append(r)
    b.append(Fraction(1))
    for k in range(dim):
        r = [Fraction(0)] * nv
        r[k] = Fraction(1)
        A.append(r)
        b.append(Fraction(2))
    for col, bound in ((t_col, 1), (v_col, 2)):
        r = [Fraction(0)] * nv
        r[col] = Fraction(1)
        A.append(r)
        b.append(Fraction(bound))
    c = [Fraction(0)] * nv
    c[v_col] = Fraction(1)
    res = linprog_max(c, A, b)
    if res.status != "optimal":
        raise RuntimeError(f"slack LP ended with status {res.status}")
    s = res.x[v_col] - 1
    if s <= 0:
        return None
    t = res.x[t_col]
    return tuple((res.x[k] - 1) / t for k in range(dim))


@dataclass(frozen=True)
class Membership:
    """Outcome of a hull-membership test, with its certificate.

    ``coefficients`` is a convex combination of the vertices reproducing the
    point when ``inside``; otherwise ``separator`` is positive at the point
    and nonpositive at every vertex.
    """

    inside: bool
    coefficients: tuple = None
    separator: AffineFunctional = None

    def __bool__(self):
        return self.inside


def point_in_hull(p, vertices):
    """Exact membership of ``p`` in conv(vertices), with a certificate.

    Large vertex lists are handled by column generation: solve against a
    small active subset; if the point is outside it, test the separator on
    every vertex and bring in the worst violator. The final answer is
    certified against the full list either way.
    """
    if not vertices:
        raise ValueError("empty vertex list")
    d = len(p)
    if any(len(v) != d for v in vertices):
        raise ValueError("dimension mismatch")
    p = tuple(Fraction(x) for x in p)
    k = len(vertices)
    if k <= 2 * (d + 2):
        return _membership(p, vertices, list(range(k)))
    guess = _float_support(p, vertices)
    if guess:
        res = _membership(p, vertices, guess)
        if res.inside:
            return res
    dist = sorted(range(k), key=lambda j: (sum(abs(a - b) for a, b in zip(vertices[j], p)), j))
    active = sorted(set(dist[: d + 2]) | set(guess or ()))
    while True:
        res = _membership(p, vertices, active)
        if res.inside:
            return res
        vals = [(res.separator(v), j) for j, v in enumerate(vertices)]
        worst = max(vals)
        if worst[0] <= 0:
            return res
        active = sorted(set(active) | {worst[1]})


def _membership(p, vertices, active):
    d = len(p)
    pts = [vertices[j] for j in active]
    A_eq = [[Fraction(1)] * len(pts)]
    b_eq = [Fraction(1)]
    for coord in range(d):
        A_eq.append([Fraction(v[coord]) for v in pts])
        b_eq.append(p[coord])
    res = linprog_max([0] * len(pts), A_eq=A_eq, b_eq=b_eq)
    if res.status == "optimal":
        coeffs = [Fraction(0)] * len(vertices)
        for j, c in zip(active, res.x):
            coeffs[j] = c
        return Membership(True, coefficients=tuple(coeffs))
    sep = _separator(p, pts)
    if sep is None:
        raise RuntimeError("membership LP infeasible but no separator found")
    return Membership(False, separator=sep)


def _separator(p, pts):
    """Maximise w.p + c subject to w.v + c <= 0 on ``pts`` and a box on
    (w, c). Every right-hand side is nonnegative, so the all-slack basis is
    feasible and no phase 1 is needed. Returns (w, c) when the optimum is
    positive, else None."""
    d = len(p)
    bound = 1 + sum(abs(x) for x in p) + max(sum(abs(x) for x in v) for v in pts)
    # variables: w+ (d), w- (d), c+, c-
    nv = 2 * d + 2
    A, b = [], []
    for v in pts:
        A.append([Fraction(x) for x in v] + [-Fraction(x) for x in v] + [Fraction(1), Fraction(-1)])
        b.append(Fraction(0))
    for k in range(nv):
        row = [Fraction(0)] * nv
        row[k] = Fraction(1)
        A.append(row)
        b.append(Fraction(1) if k < 2 * d else Fraction(bound))
    c = list(p) + [-x for x in p] + [Fraction(1), Fraction(-1)]
    res = linprog_max(c, A, b)
    if res.status != "optimal" or res.value <= 0:
        return None
    x = res.x
    w = tuple(x[k] - x[d + k] for k in range(d))
    return AffineFunctional(w, x[2 * d] - x[2 * d + 1])


def _float_support(p, vertices, tol=1e-9):
    """Heuristic only: indices carrying weight in a floating point solution
    of the membership LP, or None. Callers must confirm exactly."""
    d, k = len(p), len(vertices)
    rows = [[1.0] * k]
    rhs = [1.0]
    for coord in range(d):
        rows.append([float(v[coord]) for v in vertices])
        rhs.append(float(p[coord]))
    m = len(rows)
    T = []
    for i in range(m):
        sign = -1.0 if rhs[i] < 0 else 1.0
        T.append([sign * x for x in rows[i]] + [float(i == j) for j in range(m)] + [sign * rhs[i]])
    basis = [k + i for i in range(m)]
    width = k + m
    for _ in range(50 * width):
        # phase 1: maximise -sum(artificials); reduced cost of column j
        best, entering = tol, None
        for j in range(width):
            if j in basis:
                continue
            red = sum(T[i][j] for i in range(m) if basis[i] >= k) - (1.0 if j >= k else 0.0)
            if red > best:
                best, entering = red, j
        if entering is None:
            break
        ratios = [(T[i][-1] / T[i][entering], i) for i in range(m) if T[i][entering] > tol]
        if not ratios:
            return None
        _, row = min(ratios)
        piv = T[row][entering]
        T[row] = [x / piv for x in T[row]]
        for i in range(m):
            if i != row and abs(T[i][entering]) > 0:
                f = T[i][entering]
                T[i] = [a - f * b for a, b in zip(T[i], T[row])]
        basis[row] = entering
    if any(basis[i] >= k and T[i][-1] > 1e-7 for i in range(m)):
        return None
    return sorted(basis[i] for i in range(m) if basis[i] < k)
