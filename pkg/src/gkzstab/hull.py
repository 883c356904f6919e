"""Convex hulls as face lattices, and lattice-normalised volumes of faces.

Faces are identified by the set of input point indices lying on them, which
is what the rest of the package needs (massive simplices are detected by
asking whether a vertex set sits inside a face).
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import factorial

from .linalg import (
    affine_rank,
    det,
    integer_row_basis,
    lattice_coordinates,
    nullspace,
    primitive_integer,
    rref,
)
from .lp import AffineFunctional


@dataclass(frozen=True, order=True)
class Face:
    dim: int
    points: tuple  # sorted indices of input points on the face
    vertices: tuple = field(compare=False)

    def __contains__(self, idx):
        return idx in self.points

    def contains_all(self, indices):
        s = set(self.points)
        return all(i in s for i in indices)


class FaceLattice:
    """All nonempty faces of ``conv(points)``.

    Attributes:
        points: the input points, as tuples of Fractions.
        dim: dimension of the hull.
        faces: every nonempty face, sorted by (dim, point indices).
        inequalities: maps each facet to an inward functional, nonnegative on
            the hull and zero exactly on the facet. For integral full
            dimensional input the gradient is a primitive integer vector.
    """

    def __init__(self, points, dim, faces, inequalities):
        self.points = points
        self.dim = dim
        self.faces = tuple(sorted(faces))
        self.inequalities = inequalities
        self._by_points = {f.points: f for f in self.faces}

    @property
    def ambient_dim(self):
        return len(self.points[0])

    @property
    def top(self):
        return self.faces[-1]

    @property
    def vertices(self):
        return tuple(f.points[0] for f in self.faces if f.dim == 0)

    @property
    def facets(self):
        return self.faces_of_dim(self.dim - 1) if self.dim > 0 else ()

    def faces_of_dim(self, d):
        return tuple(f for f in self.faces if f.dim == d)

    def faces_of_codim(self, j):
        return self.faces_of_dim(self.dim - j)

    def face(self, indices):
        return self._by_points.get(tuple(sorted(indices)))

    def subfaces(self, face, d=None):
        """Faces contained in ``face`` (optionally of a given dimension)."""
        return tuple(
            g for g in self.faces
            if (d is None or g.dim == d) and g.dim <= face.dim and face.contains_all(g.points)
        )

    def smallest_face_containing(self, indices):
        for f in self.faces:
            if f.contains_all(indices):
                return f
        raise AssertionError("hull itself contains every point")

    def contains(self, x):
        """Exact membership test for a point of the ambient space."""
        x = tuple(Fraction(v) for v in x)
        if self.dim < self.ambient_dim:
            pts = [self.points[i] for i in self.top.points]
            if affine_rank(pts + [x]) > self.dim:
                return False
        return all(ineq(x) >= 0 for ineq in self.inequalities.values())

    def __repr__(self):
        counts = [len(self.faces_of_dim(d)) for d in range(self.dim + 1)]
        return f"FaceLattice(dim={self.dim}, f-vector={counts})"


def _coordinate_projection(points):
    """Coordinates on which projection is injective on the affine hull."""
    p0 = points[0]
    diffs = [[a - b for a, b in zip(p, p0)] for p in points[1:]]
    if not diffs:
        return []
    return rref(diffs)[1]


def convex_hull(points):
    """Face lattice of the convex hull of a nonempty list of points.

    Facets are found by brute force over affinely independent point subsets
    with exact sign tests; all other faces are intersections of facets.
    """
    if not points:
        raise ValueError("convex_hull needs at least one point")
    m = len(points[0])
    if any(len(p) != m for p in points):
        raise ValueError("points have mismatched dimensions")
    pts = tuple(tuple(Fraction(x) for x in p) for p in points)
    d = affine_rank(list(pts))
    coords = _coordinate_projection(list(pts))
    proj = [tuple(p[c] for c in coords) for p in pts]
    integral = all(x.denominator == 1 for p in pts for x in p)
    everything = tuple(range(len(pts)))

    if d == 0:
        top = Face(0, everything, everything)
        return FaceLattice(pts, 0, [top], {})

    distinct = sorted(set(range(len(pts))), key=lambda i: proj[i])
    seen = {}
    for combo in combinations(distinct, d):
        base = proj[combo[0]]
        diffs = [[a - b for a, b in zip(proj[i], base)] for i in combo[1:]]
        ns = nullspace(diffs, d) if diffs else nullspace([], d)
        if len(ns) != 1:
            continue
        normal = ns[0]
        offset = -sum((a * b for a, b in zip(normal, base)), Fraction(0))
        vals = [sum((a * b for a, b in zip(normal, q)), offset) for q in proj]
        if all(v >= 0 for v in vals):
            pass
        elif all(v <= 0 for v in vals):
            normal = [-a for a in normal]
            offset = -offset
            vals = [-v for v in vals]
        else:
            continue
        on = tuple(i for i, v in enumerate(vals) if v == 0)
        if on in seen:
            continue
        grad = [Fraction(0)] * m
        for c, a in zip(coords, normal):
            grad[c] = a
        if integral:
            g = primitive_integer(grad)
            k = next(k for k, a in enumerate(g) if a)
            offset *= g[k] / grad[k]
            grad = [Fraction(a) for a in g]
        seen[on] = AffineFunctional(tuple(grad), Fraction(offset))

    facet_sets = list(seen)
    faces = {everything}
    frontier = set(facet_sets)
    while frontier:
        faces |= frontier
        nxt = set()
        for f in frontier:
            fs = set(f)
            for g in facet_sets:
                inter = tuple(sorted(fs.intersection(g)))
                if inter and inter not in faces:
                    nxt.add(inter)
        frontier = nxt

    dims = {f: affine_rank([pts[i] for i in f]) for f in faces}
    vertex_sets = [f for f in faces if dims[f] == 0]
    out = []
    ineqs = {}
    for f in faces:
        verts = tuple(sorted(i for v in vertex_sets if set(v) <= set(f) for i in v))
        face = Face(dims[f], f, verts)
        out.append(face)
        if f in seen:
            ineqs[face] = seen[f]
    return FaceLattice(pts, d, out, ineqs)


def pulling_triangulation(lattice, face):
    """Triangulate a face by coning from its smallest vertex over the facets
    of the face that avoid it. Returns tuples of point indices."""
    if face.dim == 0:
        return [(face.vertices[0],)]
    apex = face.vertices[0]
    out = []
    for g in lattice.subfaces(face, face.dim - 1):
        if apex in g.points:
            continue
        for s in pulling_triangulation(lattice, g):
            out.append((apex,) + s)
    return out


def lattice_basis(points):
    """Z-basis of the affine lattice generated by integer ``points``."""
    p0 = points[0]
    return integer_row_basis([[int(a - b) for a, b in zip(p, p0)] for p in points[1:]])


def simplex_lattice_volume(vertices, basis):
    """Normalised volume ``vol_Z`` of a simplex measured in the lattice with
    the given basis (unimodular simplex -> 1)."""
    if len(vertices) == 1:
        return Fraction(1)
    v0 = vertices[0]
    rows = []
    for v in vertices[1:]:
        c = lattice_coordinates(basis, [a - b for a, b in zip(v, v0)])
        if c is None:
            raise ValueError("simplex is not in the span of the lattice")
        rows.append(c)
    if len(rows) != len(basis):
        raise ValueError("simplex dimension does not match the lattice rank")
    return abs(det(rows))


def lattice_volume(lattice, face):
    """Return ``(vol, vol_Z)`` of a face, measured in the lattice affinely
    generated by the input points lying on it.

    ``vol`` gives the unimodular d-simplex volume 1/d! and ``vol_Z = d! vol``.
    """
    if face is None or not face.points:
        raise ValueError("empty face")
    pts = [lattice.points[i] for i in face.points]
    if any(x.denominator != 1 for p in pts for x in p):
        raise ValueError("lattice volume needs integral points")
    basis = lattice_basis(pts)
    vol_z = sum(
        (simplex_lattice_volume([lattice.points[i] for i in s], basis)
         for s in pulling_triangulation(lattice, face)),
        Fraction(0),
    )
    return vol_z / factorial(face.dim), vol_z
