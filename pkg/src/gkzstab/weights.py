"""GKZ, massive GKZ and Hurwitz vectors of triangulations; exact integrals of
piecewise linear functions over P and its boundary strata."""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import factorial

from .errors import InputError

__all__ = [
    "WeightVector",
    "gkz_vector",
    "massive_simplices",
    "massive_level",
    "massive_gkz_vector",
    "hurwitz_vector",
    "pair",
    "integrate_pl",
    "integrate_pl_moment",
    "d_classes",
]


@dataclass(frozen=True)
class WeightVector:
    kind: str
    entries: tuple

    def __post_init__(self):
        if any(Fraction(v).denominator != 1 for v in self.entries):
            raise AssertionError(f"{self.kind} vector is not integral: {self.entries}")
        object.__setattr__(self, "entries", tuple(int(v) for v in self.entries))

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, k):
        return self.entries[k]

    def __add__(self, other):
        return tuple(a + b for a, b in zip(self, other))

    def scaled(self, c):
        return tuple(c * v for v in self.entries)


def _accumulate(npts, simplices):
    out = [Fraction(0)] * npts
    for verts, vol in simplices:
        for i in verts:
            out[i] += vol
    return tuple(out)


def gkz_vector(tri):
    """Entry j: total vol_Z of the maximal simplices having a_j as a vertex."""
    npts = len(tri.config.points)
    return WeightVector("gkz", _accumulate(npts, ((s.vertices, s.vol_z) for s in tri)))


def massive_simplices(tri, j):
    """The j-simplices of ``tri`` lying in a j-face of P, with their lattice
    volumes measured in that face."""
    config = tri.config
    if not 0 <= j <= config.dim:
        raise InputError(f"level must lie in [0, {config.dim}]")
    faces = sorted({f for s in tri.cells for f in combinations(s, j + 1)})
    out = []
    for f in faces:
        vol = config.massive_volume(f)
        if vol is not None:
            out.append((f, vol))
    return out


def massive_level(tri, j):
    npts = len(tri.config.points)
    return WeightVector(f"massive_{j}", _accumulate(npts, massive_simplices(tri, j)))


def massive_gkz_vector(tri):
    n = tri.config.dim
    total = [Fraction(0)] * len(tri.config.points)
    for j in range(n + 1):
        sign = (-1) ** (n - j)
        for k, v in enumerate(massive_level(tri, j)):
            total[k] += sign * v
    return WeightVector("massive", tuple(total))


def hurwitz_vector(tri):
    n = tri.config.dim
    top = massive_level(tri, n)
    below = massive_level(tri, n - 1)
    return WeightVector("hurwitz", tuple(n * a - b for a, b in zip(top, below)))


def pair(phi, vec):
    phi, vec = tuple(phi), tuple(vec)
    if len(phi) != len(vec):
        raise InputError(f"cannot pair vectors of lengths {len(phi)} and {len(vec)}")
    return sum((a * b for a, b in zip(phi, vec)), 0)


def _strata(g, codim):
    tri = g.triangulation
    n = tri.config.dim
    if not 0 <= codim <= n:
        raise InputError(f"codimension must lie in [0, {n}]")
    d = n - codim
    simplices = massive_simplices(tri, d)
    covered = sum((v for _, v in simplices), Fraction(0))
    expected = sum(
        (tri.config.volume(f)[1] for f in tri.config.hull.faces_of_codim(codim)),
        Fraction(0),
    )
    if covered != expected:
        raise ValueError("massive simplices do not cover the boundary stratum")
    return d, simplices


def _vertex_values(g, verts):
    if g.heights is not None:
        return [g.heights[i] for i in verts]
    return [g(g.config.points[i]) for i in verts]


def integrate_pl(g, codim=0):
    """Integral of a piecewise linear function over the union of the
    codimension ``codim`` faces of P (codim 0: P itself), each face carrying
    its lattice-normalised measure. On a d-simplex C the integral of an
    affine function is vol_Z(C)/d! times the mean of its vertex values."""
    d, simplices = _strata(g, codim)
    total = Fraction(0)
    for verts, vol in simplices:
        vals = _vertex_values(g, verts)
        total += vol / factorial(d) * sum(vals, Fraction(0)) / (d + 1)
    return total


def integrate_pl_moment(g, codim=0):
    """Vector of integrals of x_k * g over the codimension ``codim`` strata.

    For affine f, h on a d-simplex of volume V,
    int f h = V / ((d+1)(d+2)) * (sum_i f_i h_i + sum_i f_i * sum_i h_i).
    """
    d, simplices = _strata(g, codim)
    pts = g.config.points
    out = [Fraction(0)] * g.config.dim
    for verts, vol in simplices:
        vals = _vertex_values(g, verts)
        scale = vol / factorial(d) / ((d + 1) * (d + 2))
        gsum = sum(vals, Fraction(0))
        for k in range(len(out)):
            xs = [pts[i][k] for i in verts]
            out[k] += scale * (sum(x * v for x, v in zip(xs, vals)) + sum(xs) * gsum)
    return tuple(out)


def d_classes(tris):
    """Group triangulations by their massive GKZ vector (D-equivalence).
    Returns ``(vector, [triangulations])`` pairs sorted by vector."""
    groups = {}
    for t in tris:
        groups.setdefault(massive_gkz_vector(t).entries, []).append(t)
    return sorted(groups.items())
