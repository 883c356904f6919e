"""Exact rational and integer linear algebra on small dense matrices.

Matrices are lists of rows; entries are ints or Fractions. Everything here
is exact; the sizes we deal with are tiny (a handful of rows), so plain
Gaussian elimination is the right tool.
"""

from fractions import Fraction
from math import gcd


def to_fraction_rows(rows):
    return [[Fraction(x) for x in row] for row in rows]


def rref(rows):
    """Return ``(R, pivots)`` with R the reduced row echelon form."""
    m = to_fraction_rows(rows)
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows):
    return len(rref(rows)[1]) if rows else 0


def nullspace(rows, ncols=None):
    """Basis of {x : rows @ x = 0} as a list of Fraction vectors."""
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    ncols = len(rows[0])
    r, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -r[i][f]
        basis.append(v)
    return basis


def det(rows):
    m = to_fraction_rows(rows)
    n = len(m)
    result = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            result = -result
        result *= m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / m[c][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return result


def solve(rows, rhs):
    """Solve the square system ``rows @ x = rhs``; None if singular."""
    n = len(rows)
    aug = [list(row) + [b] for row, b in zip(rows, rhs)]
    r, pivots = rref(aug)
    if pivots != list(range(n)):
        return None
    return [r[i][n] for i in range(n)]


def solve_least(rows, rhs):
    """Solve a consistent (possibly overdetermined) system with independent
    columns. Returns None when inconsistent or underdetermined."""
    ncols = len(rows[0])
    aug = [list(row) + [b] for row, b in zip(rows, rhs)]
    r, pivots = rref(aug)
    if ncols in pivots or pivots != list(range(ncols)):
        return None
    return [r[i][ncols] for i in range(ncols)]


def affine_rank(points):
    """Dimension of the affine span of ``points`` (-1 for no points)."""
    if not points:
        return -1
    p0 = points[0]
    diffs = [[a - b for a, b in zip(p, p0)] for p in points[1:]]
    return rank(diffs) if diffs else 0


def primitive_integer(vec):
    """Scale a rational vector to the primitive integer vector on its ray."""
    fr = [Fraction(x) for x in vec]
    lcm = 1
    for x in fr:
        lcm = lcm * x.denominator // gcd(lcm, x.denominator)
    ints = [int(x * lcm) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g == 0:
        return ints
    return [x // g for x in ints]


def integer_row_basis(vectors):
    """Z-basis (echelon rows) of the lattice spanned by integer vectors."""
    rows = [list(map(int, v)) for v in vectors if any(v)]
    ncols = len(rows[0]) if rows else 0
    basis = []
    for col in range(ncols):
        active = [r for r in rows if r[col] != 0]
        rows = [r for r in rows if r[col] == 0]
        # Euclid on this column until one row carries it
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[col]))
            head = active[0]
            survivors = [head]
            for r in active[1:]:
                q = r[col] // head[col]
                r = [a - q * b for a, b in zip(r, head)]
                if r[col] != 0:
                    survivors.append(r)
                elif any(r):
                    rows.append(r)
            active = survivors
        if active:
            head = active[0]
            basis.append(head if head[col] > 0 else [-a for a in head])
    return basis


def lattice_coordinates(basis, vec):
    """Coordinates of ``vec`` in the lattice ``basis`` (rows). Exact; None
    if vec is not in the real span."""
    cols = [[row[k] for row in basis] for k in range(len(vec))]
    return solve_least(cols, list(vec))


def inverse(rows):
    """Inverse of a square matrix; None if singular."""
    n = len(rows)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(rows)]
    r, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        return None
    return [row[n:] for row in r]
