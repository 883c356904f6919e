"""Lattice point configurations (P, A): validation, dilation, face measures."""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from math import factorial

from .errors import DegenerateHullError, InputError
from .hull import (
    convex_hull,
    lattice_basis,
    lattice_volume,
    pulling_triangulation,
    simplex_lattice_volume,
)
from .linalg import det, integer_row_basis, primitive_integer

__all__ = [
    "FaceMeasure",
    "PointConfiguration",
    "DilatedConfiguration",
    "load_configuration",
    "dilate",
    "ehrhart_coefficients",
    "boundary_faces",
    "lattice_points",
    "product_with_simplex",
]


@dataclass(frozen=True)
class FaceMeasure:
    face: object
    vol: Fraction
    vol_z: Fraction
    integral_x: tuple  # exact integral of the coordinate functions over the face


class PointConfiguration:
    """A finite set A of integer points, kept in the given order, together
    with its convex hull P.

    ``saturated`` records whether A is every lattice point of P and
    ``generating`` whether the differences of A span Z^n over Z. Both are
    flags, not gates: GKZ constructions run regardless, stability verdicts
    refuse to.
    """

    def __init__(self, points, name=None):
        self.points = tuple(tuple(int(x) for x in p) for p in points)
        self.name = name
        self.dim = len(self.points[0])
        self.hull = convex_hull(self.points)
        self.saturated = len(lattice_points(self.hull)) == len(self.points)
        basis = integer_row_basis(
            [[a - b for a, b in zip(p, self.points[0])] for p in self.points[1:]]
        )
        self.generating = len(basis) == self.dim and abs(det(basis)) == 1
        self._index = {p: i for i, p in enumerate(self.points)}

    def __len__(self):
        return len(self.points)

    def __repr__(self):
        label = f"{self.name!r}, " if self.name else ""
        return f"PointConfiguration({label}n={self.dim}, N+1={len(self.points)})"

    def index(self, point):
        return self._index[tuple(point)]

    @property
    def admissible(self):
        return self.saturated and self.generating

    def volume(self, face=None):
        """``(vol, vol_Z)`` of a face of P (default: P itself)."""
        return self._measures[(face or self.hull.top).points][:2]

    def face_integral(self, face=None):
        return self._measures[(face or self.hull.top).points][2]

    @cached_property
    def _measures(self):
        out = {}
        for f in self.hull.faces:
            vol, vol_z = lattice_volume(self.hull, f)
            basis = lattice_basis([self.points[i] for i in f.points])
            moment = [Fraction(0)] * self.dim
            for s in pulling_triangulation(self.hull, f):
                verts = [self.points[i] for i in s]
                w = simplex_lattice_volume(verts, basis) / factorial(f.dim) / len(s)
                for v in verts:
                    for k in range(self.dim):
                        moment[k] += w * v[k]
            out[f.points] = (vol, vol_z, tuple(moment))
        return out

    def massive_volume(self, indices):
        """vol_Z of the simplex on ``indices`` when it lies in a face of P of
        its own dimension (measured in that face's lattice), else None."""
        key = tuple(sorted(indices))
        cache = self.__dict__.setdefault("_massive", {})
        if key not in cache:
            face = self.hull.smallest_face_containing(key)
            if face.dim != len(key) - 1:
                cache[key] = None
            else:
                cache[key] = simplex_lattice_volume(
                    [self.points[i] for i in key], self._face_basis(face)
                )
        return cache[key]

    def _face_basis(self, face):
        cache = self.__dict__.setdefault("_bases", {})
        if face.points not in cache:
            cache[face.points] = lattice_basis([self.points[i] for i in face.points])
        return cache[face.points]

    def boundary_volume(self, j=1):
        """vol(d^j P): total volume of the codimension-j faces."""
        return sum((self.volume(f)[0] for f in self.hull.faces_of_codim(j)), Fraction(0))

    def boundary_integral(self, j=1):
        total = [Fraction(0)] * self.dim
        for f in self.hull.faces_of_codim(j):
            for k, v in enumerate(self.face_integral(f)):
                total[k] += v
        return tuple(total)

    def is_delzant(self):
        """Every vertex cone is generated by a lattice basis."""
        for v in self.hull.vertices:
            edges = [
                e for e in self.hull.faces_of_dim(1) if v in e.vertices
            ]
            if len(edges) != self.dim:
                return False
            dirs = []
            for e in edges:
                w = e.vertices[1] if e.vertices[0] == v else e.vertices[0]
                dirs.append(primitive_integer(
                    [a - b for a, b in zip(self.points[w], self.points[v])]
                ))
            if abs(det(dirs)) != 1:
                return False
        return True


def lattice_points(hull, factor=1):
    """Integer points of ``factor * hull`` in lexicographic order."""
    verts = [hull.points[i] for i in hull.vertices]
    lo = [min(v[k] for v in verts) * factor for k in range(len(verts[0]))]
    hi = [max(v[k] for v in verts) * factor for k in range(len(verts[0]))]
    scaled = [(f.gradient, f.constant * factor) for f in hull.inequalities.values()]
    out = []
    ranges = [range(int(a), int(b) + 1) for a, b in zip(lo, hi)]
    for x in product(*ranges):
        if all(sum(g * c for g, c in zip(grad, x)) + const >= 0 for grad, const in scaled):
            out.append(x)
    if hull.dim < hull.ambient_dim:
        out = [x for x in out if hull.contains(tuple(Fraction(c, factor) for c in x))]
    return out


def load_configuration(raw, name=None):
    """Validate raw integer vectors and build a :class:`PointConfiguration`.

    Raises:
        InputError: empty input, ragged or non-integer vectors, duplicates.
        DegenerateHullError: the hull is not full dimensional.
    """
    raw = list(raw)
    if not raw:
        raise InputError("configuration has no points", field="points")
    dim = len(raw[0])
    if dim == 0:
        raise InputError("points must have positive dimension", field="points")
    pts = []
    for k, p in enumerate(raw):
        if len(p) != dim:
            raise InputError(f"point {k} has dimension {len(p)}, expected {dim}", field="points")
        try:
            q = tuple(_as_int(x) for x in p)
        except (TypeError, ValueError):
            raise InputError(f"point {k} has a non-integer coordinate", field="points") from None
        pts.append(q)
    if len(set(pts)) != len(pts):
        raise InputError("duplicate points in configuration", field="points")
    hull_dim = convex_hull(pts).dim
    if hull_dim != dim:
        raise DegenerateHullError(
            f"convex hull has dimension {hull_dim} in Z^{dim}", field="points"
        )
    return PointConfiguration(pts, name=name)


def _as_int(x):
    if isinstance(x, bool):
        raise TypeError(x)
    if isinstance(x, int):
        return x
    f = Fraction(x)
    if f.denominator != 1:
        raise ValueError(x)
    return int(f)


@dataclass(frozen=True)
class DilatedConfiguration:
    base: PointConfiguration
    factor: int
    config: PointConfiguration
    embedding: tuple  # base index -> index of factor * a in ``config``

    @property
    def points(self):
        return self.config.points

    @property
    def count(self):
        return len(self.config.points)


def dilate(config, i):
    """Lattice points of iP, re-indexed lexicographically."""
    if not isinstance(i, int) or i < 1:
        raise InputError(f"dilation factor must be a positive integer, got {i!r}", field="dilation")
    pts = lattice_points(config.hull, i)
    name = f"{config.name}*{i}" if config.name else None
    new = PointConfiguration(pts, name=name)
    embedding = tuple(new.index(tuple(i * x for x in p)) for p in config.points)
    return DilatedConfiguration(config, i, new, embedding)


def ehrhart_coefficients(config):
    """Leading and subleading Ehrhart coefficients ``(vol(P), vol(dP)/2)``."""
    return config.volume()[0], config.boundary_volume(1) / 2


def boundary_faces(config, j):
    """Codimension-j faces of P with their volumes and coordinate integrals."""
    if not 0 <= j <= config.dim:
        raise InputError(f"codimension must lie in [0, {config.dim}]")
    out = []
    for f in config.hull.faces_of_codim(j):
        vol, vol_z = config.volume(f)
        out.append(FaceMeasure(f, vol, vol_z, config.face_integral(f)))
    return out


def product_with_simplex(config, k):
    """The configuration A x vert(Delta_k) in Z^(n+k), with
    Delta_k = conv(0, e_1, ..., e_k)."""
    if k < 1:
        raise InputError("simplex dimension must be at least 1")
    simplex = [tuple(0 for _ in range(k))] + [
        tuple(int(r == c) for c in range(k)) for r in range(k)
    ]
    pts = [a + s for a in config.points for s in simplex]
    return load_configuration(pts, name=f"{config.name or 'P'} x Delta_{k}")
