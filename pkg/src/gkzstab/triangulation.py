"""Triangulations of a point configuration and the height functions that
induce them.

Conventions: a height function assigns a rational to every point of A and is
lifted to the graph {(a, t) : t <= phi(a)}. The upper hull of the lifted
points projects onto the regular subdivision induced by phi, and the
piecewise linear function it traces is concave. A triangulation is regular
when some phi induces it in this way.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .errors import ScaleGuardError
from .hull import lattice_basis, simplex_lattice_volume
from .linalg import inverse, nullspace, primitive_integer, rank
from .lp import AffineFunctional, linprog_max, lp_feasible_strict

__all__ = [
    "Simplex",
    "Triangulation",
    "Regularity",
    "RegularSubdivision",
    "PLFunction",
    "TriangulationEngine",
    "engine",
    "enumerate_triangulations",
    "is_regular",
    "subdivision_from_heights",
    "refine_to_triangulation",
    "triangulation_from_heights",
    "pl_function",
    "upper_hull_value",
]

DEFAULT_MAX_TRIANGULATIONS = 100000


@dataclass(frozen=True, order=True)
class Simplex:
    vertices: tuple
    vol_z: Fraction = field(compare=False)


@dataclass(frozen=True)
class Triangulation:
    """Maximal simplices of a triangulation, sorted by vertex tuple."""

    simplices: tuple
    config: object = field(compare=False, repr=False, hash=False)

    @property
    def cells(self):
        return tuple(s.vertices for s in self.simplices)

    @property
    def used_vertices(self):
        return tuple(sorted({i for s in self.simplices for i in s.vertices}))

    def __len__(self):
        return len(self.simplices)

    def __iter__(self):
        return iter(self.simplices)


@dataclass(frozen=True)
class Regularity:
    """Regularity verdict with its certificate.

    A regular triangulation carries integer heights ``witness`` inducing it.
    A non-regular one carries ``farkas``: nonnegative multipliers, one per
    entry of ``constraints``, whose combination of the (homogeneous) folding
    constraints vanishes identically, so no heights can satisfy them all.
    """

    regular: bool
    witness: tuple = None
    farkas: tuple = None
    constraints: tuple = None

    def __bool__(self):
        return self.regular


@dataclass(frozen=True)
class RegularSubdivision:
    cells: tuple  # ((point indices), AffineFunctional) for each maximal cell
    heights: tuple
    config: object = field(compare=False, repr=False)

    @property
    def is_triangulation(self):
        n = self.config.dim
        return all(len(c) == n + 1 for c, _ in self.cells)


class PLFunction:
    """A function that is affine on each cell of a triangulation."""

    def __init__(self, config, pieces, triangulation=None, heights=None):
        self.config = config
        self.pieces = tuple(pieces)  # (vertices, AffineFunctional)
        self.triangulation = triangulation
        self.heights = heights
        self._inverses = {}

    def _barycentric(self, verts, x):
        inv = self._inverses.get(verts)
        if inv is None:
            inv = _barycentric_inverse([self.config.points[i] for i in verts])
            self._inverses[verts] = inv
        return _apply(inv, x)

    def cell_of(self, x):
        x = tuple(Fraction(v) for v in x)
        for verts, func in self.pieces:
            if all(c >= 0 for c in self._barycentric(verts, x)):
                return verts, func
        raise ValueError(f"point {x} is not covered by the triangulation")

    def __call__(self, x):
        return self.cell_of(x)[1](tuple(Fraction(v) for v in x))


def _barycentric_inverse(points):
    mat = [[Fraction(p[k]) for p in points] for k in range(len(points[0]))]
    mat.append([Fraction(1)] * len(points))
    inv = inverse(mat)
    if inv is None:
        raise AssertionError("degenerate simplex")
    return inv


def _apply(inv, x):
    vec = list(x) + [Fraction(1)]
    return [sum((a * b for a, b in zip(row, vec)), Fraction(0)) for row in inv]


def _interpolant(points, values):
    """Affine functional on R^n taking ``values`` at the simplex ``points``."""
    n = len(points[0])
    inv = _barycentric_inverse(points)
    # l(x) = sum_i values_i * lambda_i(x), lambda = inv @ (x, 1)
    grad = tuple(
        sum((Fraction(values[i]) * inv[i][k] for i in range(len(points))), Fraction(0))
        for k in range(n)
    )
    const = sum((Fraction(values[i]) * inv[i][n] for i in range(len(points))), Fraction(0))
    return AffineFunctional(grad, const)


class TriangulationEngine:
    """Precomputed combinatorics of a full dimensional configuration:
    its simplices, barycentric coordinates of every point in every simplex,
    circuits, and the pairwise compatibility of simplices."""

    def __init__(self, config):
        self.config = config
        pts = config.points
        n = config.dim
        self.n = n
        basis = lattice_basis(pts)
        self.simplices = []
        self.bary = []
        for combo in combinations(range(len(pts)), n + 1):
            verts = [pts[i] for i in combo]
            if rank([[a - b for a, b in zip(v, verts[0])] for v in verts[1:]]) < n:
                continue
            self.simplices.append(Simplex(combo, simplex_lattice_volume(verts, basis)))
            inv = _barycentric_inverse(verts)
            self.bary.append([_apply(inv, p) for p in pts])
        self.index = {s.vertices: k for k, s in enumerate(self.simplices)}
        self.total_vol_z = config.volume()[1]
        self._compat = None
        self._walls = None

    # -- combinatorics -------------------------------------------------

    def circuits(self):
        """Minimal affine dependences as ``(positive part, negative part)``."""
        pts = self.config.points
        out = []
        for k in range(3, self.n + 3):
            for combo in combinations(range(len(pts)), k):
                rows = [[Fraction(pts[i][c]) for i in combo] for c in range(self.n)]
                rows.append([Fraction(1)] * k)
                ns = nullspace(rows)
                if len(ns) != 1 or any(v == 0 for v in ns[0]):
                    continue
                pos = tuple(i for i, v in zip(combo, ns[0]) if v > 0)
                neg = tuple(i for i, v in zip(combo, ns[0]) if v < 0)
                out.append((pos, neg))
        return out

    @property
    def compatibility(self):
        """``compat[s]`` is a bitmask of simplices meeting simplex s properly."""
        if self._compat is None:
            m = len(self.simplices)
            masks = [sum(1 << i for i in s.vertices) for s in self.simplices]
            bad = [0] * m
            for pos, neg in self.circuits():
                pm = sum(1 << i for i in pos)
                nm = sum(1 << i for i in neg)
                with_pos = [k for k in range(m) if masks[k] & pm == pm]
                with_neg = [k for k in range(m) if masks[k] & nm == nm]
                neg_bits = sum(1 << k for k in with_neg)
                pos_bits = sum(1 << k for k in with_pos)
                for k in with_pos:
                    bad[k] |= neg_bits
                for k in with_neg:
                    bad[k] |= pos_bits
            full = (1 << m) - 1
            self._compat = [full & ~b for b in bad]
        return self._compat

    @property
    def walls(self):
        """For each (n-1)-simplex W of A: the simplices having W as a facet,
        with the side of W on which their apex lies, and whether W lies on
        the boundary of P."""
        if self._walls is None:
            walls = {}
            for k, s in enumerate(self.simplices):
                for q in s.vertices:
                    w = tuple(i for i in s.vertices if i != q)
                    walls.setdefault(w, []).append((k, q))
            table = {}
            pts = self.config.points
            for w, members in walls.items():
                func = self._wall_functional(w)
                sides = [_sign(func(p)) for p in pts]
                entries = tuple((k, sides[q]) for k, q in members)
                boundary = not (any(v > 0 for v in sides) and any(v < 0 for v in sides))
                table[w] = (entries, boundary)
            self._walls = table
        return self._walls

    def _wall_functional(self, w):
        pts = self.config.points
        p0 = pts[w[0]]
        diffs = [[Fraction(a - b) for a, b in zip(pts[i], p0)] for i in w[1:]]
        normal = nullspace(diffs, self.n)[0] if diffs else [Fraction(1)]
        const = -sum((a * b for a, b in zip(normal, p0)), Fraction(0))
        return AffineFunctional(tuple(normal), const)

    def generic_point(self):
        """An interior point of P lying on no facet of any simplex of A."""
        hull = self.config.hull
        verts = [hull.points[i] for i in hull.vertices]
        centre = [sum(v[k] for v in verts) / len(verts) for k in range(self.n)]
        for step in range(1, 200):
            t = Fraction(1, 7 * step + 3)
            x = tuple(c + t / (5 ** k) for k, c in enumerate(centre))
            if not all(f(x) > 0 for f in hull.inequalities.values()):
                continue
            if all(
                all(v != 0 for v in _apply(_barycentric_inverse(
                    [self.config.points[i] for i in s.vertices]), x))
                for s in self.simplices
            ):
                return x
        raise AssertionError("no generic point found")

    def seeds(self):
        x0 = self.generic_point()
        out = []
        for k, s in enumerate(self.simplices):
            inv = _barycentric_inverse([self.config.points[i] for i in s.vertices])
            if all(v > 0 for v in _apply(inv, x0)):
                out.append(k)
        return out

    # -- enumeration ---------------------------------------------------

    def search(self, seed, max_count=DEFAULT_MAX_TRIANGULATIONS):
        """All triangulations containing simplex ``seed``, as sorted tuples of
        simplex ids. Each is produced once: the wall to close next is a
        function of the partial complex, and a triangulation has exactly one
        simplex across each interior wall."""
        compat = self.compatibility
        walls = self.walls
        found = []

        def place(k, count, open_walls):
            count = dict(count)
            open_walls = set(open_walls)
            for q in self.simplices[k].vertices:
                w = tuple(i for i in self.simplices[k].vertices if i != q)
                c = count.get(w, 0) + 1
                count[w] = c
                if c == 1 and not walls[w][1]:
                    open_walls.add(w)
                elif c == 2:
                    open_walls.discard(w)
            return count, open_walls

        def grow(chosen, allowed, count, open_walls):
            if not open_walls:
                vol = sum(self.simplices[k].vol_z for k in chosen)
                if vol != self.total_vol_z:
                    raise AssertionError("closed complex does not cover P")
                found.append(tuple(sorted(chosen)))
                if len(found) > max_count:
                    raise ScaleGuardError(
                        f"more than {max_count} triangulations", max_count
                    )
                return
            w = min(open_walls)
            entries, _ = walls[w]
            inside = next(side for k, side in entries if k in chosen)
            for k, side in entries:
                if side == -inside and allowed >> k & 1:
                    c2, o2 = place(k, count, open_walls)
                    grow(chosen | {k}, allowed & compat[k], c2, o2)

        count, open_walls = place(seed, {}, set())
        grow(frozenset([seed]), compat[seed], count, open_walls)
        return found

    def triangulation(self, ids):
        cells = tuple(sorted(self.simplices[k] for k in ids))
        return Triangulation(cells, self.config)

    def enumerate(self, max_count=DEFAULT_MAX_TRIANGULATIONS, jobs=1):
        seeds = self.seeds()
        if jobs > 1 and len(seeds) > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                parts = list(pool.map(
                    _search_worker,
                    [(self.config.points, s, max_count) for s in seeds],
                ))
        else:
            parts = []
            total = 0
            for s in seeds:
                try:
                    part = self.search(s, max_count - total)
                except ScaleGuardError:
                    raise ScaleGuardError(
                        f"more than {max_count} triangulations", max_count
                    ) from None
                total += len(part)
                parts.append(part)
        found = sorted({ids for part in parts for ids in part})
        if len(found) > max_count:
            raise ScaleGuardError(f"more than {max_count} triangulations", max_count)
        tris = [self.triangulation(ids) for ids in found]
        return sorted(tris, key=lambda t: t.cells)

    # -- regularity ----------------------------------------------------

    def folding_constraints(self, tri, full=False):
        """Homogeneous linear forms c (one per constraint, c . phi > 0) whose
        joint positivity says that phi induces ``tri``.

        With ``full`` every pair (cell, point off the cell) contributes.
        Otherwise only the local conditions are used: strict folding across
        every interior wall, and every point that is not a vertex of the
        triangulation strictly below the cell containing it. For a piecewise
        linear function these are equivalent, since local concavity across
        every wall makes the function concave.
        """
        npts = len(self.config.points)
        rows = []

        def row(k, j):
            lam = self.bary[k][j]
            r = [Fraction(0)] * npts
            for i, c in zip(self.simplices[k].vertices, lam):
                r[i] += c
            r[j] -= 1
            return tuple(r)

        ids = [self.index[c] for c in tri.cells]
        if full:
            for k in ids:
                vs = set(self.simplices[k].vertices)
                rows.extend(row(k, j) for j in range(npts) if j not in vs)
            return rows
        by_wall = {}
        for k in ids:
            for q in self.simplices[k].vertices:
                w = tuple(i for i in self.simplices[k].vertices if i != q)
                by_wall.setdefault(w, []).append((k, q))
        for w, members in sorted(by_wall.items()):
            if len(members) == 2:
                (k, _), (_, q2) = members
                rows.append(row(k, q2))
        used = set(tri.used_vertices)
        for j in range(npts):
            if j in used:
                continue
            k = next(k for k in ids if all(c >= 0 for c in self.bary[k][j]))
            rows.append(row(k, j))
        return rows

    def is_regular(self, tri):
        rows = self.folding_constraints(tri)
        npts = len(self.config.points)
        cons = [(AffineFunctional(r), True) for r in rows]
        sol = lp_feasible_strict(cons, npts)
        if sol is not None:
            witness = self.normalise_heights(sol)
            full = self.folding_constraints(tri, full=True)
            if not all(_dot(r, witness) > 0 for r in full):
                raise AssertionError("regularity witness fails the full system")
            return Regularity(True, witness=witness)
        farkas = _gordan_certificate(rows, npts)
        return Regularity(False, farkas=farkas, constraints=tuple(rows))

    def normalise_heights(self, phi):
        """Subtract the affine function agreeing with phi on the first affine
        basis among the vertices of P, then scale to a primitive integer
        vector. Neither step changes the induced subdivision."""
        pts = self.config.points
        basis = _affine_basis(self.config, self.config.hull.vertices)
        aff = _interpolant([pts[i] for i in basis], [phi[i] for i in basis])
        shifted = [Fraction(v) - aff(p) for v, p in zip(phi, pts)]
        return tuple(primitive_integer(shifted))

    # -- height functions ----------------------------------------------

    def upper_cells(self, phi, perturb=False):
        """Maximal cells of the subdivision induced by ``phi``.

        With ``perturb`` the heights become phi_j - e_j, the e_j being
        infinitesimals that grow steeply along the lexicographic order of the
        points. Ties are then broken as if the points were placed one by one
        in that order, so the result is a triangulation refining the
        subdivision of phi and using every point of each of its cells.
        """
        phi = [Fraction(v) for v in phi]
        pts = self.config.points
        cells = set()
        for k, s in enumerate(self.simplices):
            lam = self.bary[k]
            on = []
            ok = True
            for j in range(len(phi)):
                if j in s.vertices:
                    continue
                d = sum((c * phi[i] for i, c in zip(s.vertices, lam[j])), Fraction(0)) - phi[j]
                if d < 0:
                    ok = False
                    break
                if d == 0:
                    if perturb:
                        # the infinitesimal of the lex-largest point decides
                        terms = [(pts[i], -c) for i, c in zip(s.vertices, lam[j]) if c != 0]
                        terms.append((pts[j], Fraction(1)))
                        if max(terms)[1] < 0:
                            ok = False
                            break
                    else:
                        on.append(j)
            if ok:
                cells.add(tuple(sorted(s.vertices + tuple(on))))
        return sorted(cells)


def _search_worker(args):
    points, seed, max_count = args
    from .config import PointConfiguration

    return TriangulationEngine(PointConfiguration(points)).search(seed, max_count)


def _regularity_worker(args):
    points, cells = args
    from .config import PointConfiguration

    eng = TriangulationEngine(PointConfiguration(points))
    tri = Triangulation(tuple(eng.simplices[eng.index[c]] for c in cells), eng.config)
    return eng.is_regular(tri)


def _sign(v):
    return (v > 0) - (v < 0)


def _dot(a, b):
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def _gordan_certificate(rows, npts):
    """y >= 0 with sum(y) = 1 and sum_k y_k rows_k = 0."""
    m = len(rows)
    A_eq = [[rows[k][j] for k in range(m)] for j in range(npts)]
    A_eq.append([Fraction(1)] * m)
    b_eq = [Fraction(0)] * npts + [Fraction(1)]
    res = linprog_max([0] * m, A_eq=A_eq, b_eq=b_eq)
    if res.status != "optimal":
        raise AssertionError("strict system infeasible but no Gordan certificate")
    return res.x


_ENGINES = {}


def engine(config):
    """Cached engine for a configuration."""
    key = id(config)
    hit = _ENGINES.get(key)
    if hit is None or hit.config is not config:
        hit = TriangulationEngine(config)
        _ENGINES[key] = hit
    return hit


def enumerate_triangulations(config, max_count=DEFAULT_MAX_TRIANGULATIONS, jobs=1):
    """Every triangulation of (P, A), in canonical order.

    Raises:
        ScaleGuardError: more than ``max_count`` triangulations exist.
    """
    return engine(config).enumerate(max_count=max_count, jobs=jobs)


def is_regular(tri, config=None, jobs=1):
    """Regularity verdict for one triangulation, or a list of verdicts when
    given a list (optionally computed in ``jobs`` processes)."""
    if isinstance(tri, Triangulation):
        return engine(config or tri.config).is_regular(tri)
    tris = list(tri)
    if not tris:
        return []
    config = config or tris[0].config
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(
                _regularity_worker, [(config.points, t.cells) for t in tris]
            ))
    eng = engine(config)
    return [eng.is_regular(t) for t in tris]


def subdivision_from_heights(config, phi):
    """Regular subdivision induced by ``phi`` (upper hull convention)."""
    if len(phi) != len(config.points):
        raise ValueError("height vector has the wrong length")
    phi = tuple(Fraction(v) for v in phi)
    cells = []
    for cell in engine(config).upper_cells(phi):
        basis = _affine_basis(config, cell)
        func = _interpolant([config.points[i] for i in basis], [phi[i] for i in basis])
        cells.append((cell, func))
    return RegularSubdivision(tuple(cells), phi, config)


def _affine_basis(config, cell):
    pts = config.points
    chosen = [cell[0]]
    for i in cell[1:]:
        trial = chosen + [i]
        if rank([[a - b for a, b in zip(pts[j], pts[trial[0]])] for j in trial[1:]]) == len(trial) - 1:
            chosen = trial
    return chosen


def triangulation_from_heights(config, phi):
    """The triangulation induced by phi after symbolic tie-breaking."""
    eng = engine(config)
    cells = eng.upper_cells(phi, perturb=True)
    return Triangulation(tuple(eng.simplices[eng.index[c]] for c in cells), config)


def refine_to_triangulation(subdivision):
    """A triangulation refining ``subdivision`` on whose cells the concave
    function of the subdivision is still affine."""
    return triangulation_from_heights(subdivision.config, subdivision.heights)


def pl_function(tri, phi):
    """The function interpolating ``phi`` affinely on each cell of ``tri``."""
    config = tri.config
    if len(phi) != len(config.points):
        raise ValueError("height vector has the wrong length")
    pieces = []
    for verts in tri.cells:
        pieces.append((verts, _interpolant(
            [config.points[i] for i in verts], [phi[i] for i in verts]
        )))
    return PLFunction(config, pieces, tri, tuple(Fraction(v) for v in phi))


def upper_hull_value(config, phi, x):
    """max{t : (x, t) in conv{(a_j, s) : s <= phi_j}}, by a direct LP over
    convex combinations. Independent of the subdivision machinery."""
    pts = config.points
    m = len(pts)
    A_eq = [[Fraction(1)] * m]
    b_eq = [Fraction(1)]
    for k in range(config.dim):
        A_eq.append([Fraction(p[k]) for p in pts])
        b_eq.append(Fraction(x[k]))
    res = linprog_max([Fraction(v) for v in phi], A_eq=A_eq, b_eq=b_eq)
    if res.status != "optimal":
        raise ValueError(f"point {tuple(x)} is outside P")
    return res.value
