"""Weight polytopes of the Chow and Hurwitz forms, their degrees, and the
semistability tests built from them.

All verdicts are decided by exact LP membership and carry certificates:
a convex combination when a point lies in a hull, a separating
affine functional when it does not.
"""

import time
from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import comb, factorial

from .config import dilate, product_with_simplex
from .errors import InputError, ScaleGuardError
from .linalg import affine_rank
from .lp import AffineFunctional, point_in_hull
from .triangulation import (
    DEFAULT_MAX_TRIANGULATIONS,
    enumerate_triangulations,
    is_regular,
    pl_function,
    triangulation_from_heights,
)
from .weights import (
    d_classes,
    gkz_vector,
    hurwitz_vector,
    integrate_pl,
    massive_gkz_vector,
    pair,
)

__all__ = [
    "Certificate",
    "Verdict",
    "WeightPolytope",
    "Degrees",
    "FutakiPaul",
    "DilationAnalysis",
    "expected_affine_rows",
    "extreme_points",
    "build_weight_polytope",
    "degrees",
    "check_numerical_ss",
    "futaki_paul",
    "check_chow_ss",
    "check_barycenter_condition",
    "check_k_ss_functions",
    "regular_sweep",
    "verify_product_degree",
    "binomial_claim_holds",
    "analyze_dilation",
]

KINDS = ("chow", "discriminant", "hurwitz")


@dataclass(frozen=True)
class Certificate:
    """Membership evidence for ``point`` against the hull of ``vertices``."""

    point: tuple
    vertices: tuple
    coefficients: tuple = None
    separator: AffineFunctional = None

    @property
    def inside(self):
        return self.coefficients is not None

    def check(self):
        """Re-validate from the stored data alone."""
        if self.inside:
            if any(c < 0 for c in self.coefficients) or sum(self.coefficients) != 1:
                return False
            combo = [
                sum((c * v[k] for c, v in zip(self.coefficients, self.vertices)), Fraction(0))
                for k in range(len(self.point))
            ]
            return combo == [Fraction(x) for x in self.point]
        if self.separator is None:
            return False
        return self.separator(self.point) > 0 and all(
            self.separator(v) <= 0 for v in self.vertices
        )


def membership_certificate(point, vertices):
    point = tuple(Fraction(x) for x in point)
    vertices = tuple(tuple(Fraction(x) for x in v) for v in vertices)
    res = point_in_hull(point, vertices)
    if res.inside:
        return Certificate(point, vertices, coefficients=tuple(res.coefficients))
    return Certificate(point, vertices, separator=res.separator)


@dataclass(frozen=True)
class Verdict:
    name: str
    status: str  # "pass" | "fail" | "skipped"
    reason: str = ""
    certificates: tuple = ()
    witness: dict = field(default_factory=dict)

    @property
    def passed(self):
        return self.status == "pass"


# -- weight polytopes ----------------------------------------------------


def expected_affine_rows(config, kind):
    """The two linear conditions met by every generator of a weight
    polytope: the entry sum, and the sum of entries weighted by the points."""
    n = config.dim
    vol = config.volume()[0]
    moment = config.face_integral()
    if kind == "chow":
        c = factorial(n + 1)
        return c * vol, tuple(c * x for x in moment)
    if kind == "hurwitz":
        a, b = n * factorial(n + 1), factorial(n)
        bvol = config.boundary_volume(1)
        bmom = config.boundary_integral(1)
        return a * vol - b * bvol, tuple(a * x - b * y for x, y in zip(moment, bmom))
    if kind == "discriminant":
        total = Fraction(0)
        mom = [Fraction(0)] * n
        for f in config.hull.faces:
            c = (-1) ** (n - f.dim) * factorial(f.dim + 1)
            total += c * config.volume(f)[0]
            for k, x in enumerate(config.face_integral(f)):
                mom[k] += c * x
        return total, tuple(mom)
    raise InputError(f"unknown polytope kind {kind!r}")


def extreme_points(vectors, hints=()):
    """Vertices of conv(vectors), each with a certificate of extremality.

    A hint is a functional; if a single distinct vector maximises it, that
    vector is a vertex. Vectors not settled this way are tested against the
    hull of the remaining ones by LP.

    Returns ``(vertices, certificates)`` with certificates mapping each
    vertex to ``("functional", phi)`` or ``("separator", AffineFunctional)``.
    """
    distinct = sorted(set(tuple(v) for v in vectors))
    certs = {}
    for phi in hints:
        vals = [pair(phi, v) for v in distinct]
        best = max(vals)
        tops = [v for v, x in zip(distinct, vals) if x == best]
        if len(tops) == 1 and tops[0] not in certs:
            certs[tops[0]] = ("functional", tuple(phi))
    vertices = []
    for v in distinct:
        if v in certs:
            vertices.append(v)
            continue
        others = [w for w in distinct if w != v]
        if not others:
            certs[v] = ("functional", tuple(Fraction(0) for _ in v))
            vertices.append(v)
            continue
        res = point_in_hull(v, others)
        if not res.inside:
            certs[v] = ("separator", res.separator)
            vertices.append(v)
    return vertices, {v: certs[v] for v in vertices}


@dataclass
class WeightPolytope:
    kind: str
    generators: list  # WeightVector per triangulation, in enumeration order
    vertices: list
    vertex_certificates: dict
    expected_rows: tuple
    affine_dim: int

    @property
    def ambient_dim(self):
        return len(self.generators[0]) if self.generators else 0

    def max_pairing(self, phi):
        return max(pair(phi, g) for g in self.generators)


_VECTOR = {"chow": gkz_vector, "discriminant": massive_gkz_vector, "hurwitz": hurwitz_vector}


def build_weight_polytope(config, kind, tris=None, regularity=None,
                          max_triangulations=DEFAULT_MAX_TRIANGULATIONS, jobs=1):
    """Weight polytope of the given kind on (P, A), generated by all
    triangulations. Dilate the configuration first to work on iP."""
    if kind not in _VECTOR:
        raise InputError(f"unknown polytope kind {kind!r}")
    if tris is None:
        tris = enumerate_triangulations(config, max_triangulations, jobs)
    gens = [_VECTOR[kind](t) for t in tris]
    hints = [r.witness for r in (regularity or ()) if r.regular]
    vertices, certs = extreme_points([g.entries for g in gens], hints)
    rows = expected_affine_rows(config, kind)
    for g in gens:
        if not _satisfies_rows(config, g.entries, rows):
            raise AssertionError(f"{kind} generator {g.entries} violates its affine rows")
    dim = affine_rank([list(v) for v in vertices])
    n, big_n = config.dim, len(config.points) - 1
    if kind == "chow" and dim != big_n - n:
        raise AssertionError(f"secondary polytope has dimension {dim}, expected {big_n - n}")
    if dim > big_n - n:
        raise AssertionError(f"{kind} polytope has dimension {dim} > {big_n - n}")
    return WeightPolytope(kind, gens, vertices, certs, rows, dim)


def _satisfies_rows(config, vec, rows):
    total, moment = rows
    if sum(vec, Fraction(0)) != total:
        return False
    for k in range(config.dim):
        if sum((v * p[k] for v, p in zip(vec, config.points)), Fraction(0)) != moment[k]:
            return False
    return True


# -- degrees -------------------------------------------------------------


@dataclass(frozen=True)
class Degrees:
    chow: Fraction        # deg R
    hurwitz: Fraction     # deg Hu
    discriminant: Fraction  # deg Delta


def degrees(config, i=1):
    """Degrees of the Chow form, Hurwitz form and A-discriminant of iP."""
    c = dilate(config, i).config if i != 1 else config
    n = c.dim
    vol = c.volume()[0]
    deg_r = factorial(n + 1) * vol
    deg_hu = n * factorial(n + 1) * vol - factorial(n) * c.boundary_volume(1)
    deg_disc = expected_affine_rows(c, "discriminant")[0]
    for d in (deg_r, deg_hu, deg_disc):
        if d.denominator != 1:
            raise AssertionError("degree is not an integer")
    return Degrees(deg_r, deg_hu, deg_disc)


# -- Futaki-Paul ---------------------------------------------------------


@dataclass(frozen=True)
class FutakiPaul:
    value: Fraction            # F_P(i; g_phi), normalised to P
    value_on_dilate: Fraction  # the same functional evaluated on iP
    weight_form: Fraction      # deg Hu * max<phi,Ch> - deg R * max<phi,Hu>
    integral: Fraction
    boundary_integral: Fraction
    triangulation: object


def futaki_paul(config, i, phi, chow=None, hurwitz=None):
    """F_P(i; g_phi) for heights ``phi`` on the lattice points of iP.

    Heights are indexed by ``config.points`` when i = 1 and by
    ``dilate(config, i).points`` (lexicographic order) otherwise.

    ``phi`` is first concavified: g_phi is the upper hull function, realised
    on a triangulation refining the subdivision of phi. The weight form is
    evaluated on the supplied polytopes when given, and otherwise on the
    GKZ and Hurwitz vectors of that triangulation (where the maxima are
    attained). Their agreement with -(n+1)! n! i^(2n-1) F is asserted.
    """
    c = config if i == 1 else dilate(config, i).config
    if len(phi) != len(c.points):
        raise InputError(f"expected {len(c.points)} heights for dilation {i}, got {len(phi)}")
    n = c.dim
    tri = triangulation_from_heights(c, phi)
    g = pl_function(tri, phi)
    whole = integrate_pl(g, 0)
    bdry = integrate_pl(g, 1)
    on_dilate = c.boundary_volume(1) * whole - c.volume()[0] * bdry
    value = on_dilate / Fraction(i) ** (2 * n - 1)
    deg = degrees(c)
    max_ch = chow.max_pairing(phi) if chow else pair(phi, gkz_vector(tri))
    max_hu = hurwitz.max_pairing(phi) if hurwitz else pair(phi, hurwitz_vector(tri))
    weight = deg.hurwitz * max_ch - deg.chow * max_hu
    if weight != -factorial(n + 1) * factorial(n) * on_dilate:
        raise AssertionError("weight form disagrees with the Futaki-Paul functional")
    return FutakiPaul(value, on_dilate, weight, whole, bdry, tri)


# -- verdicts --------------------------------------------------------------


def _admissibility(config):
    if not config.saturated:
        return "configuration is not saturated (A is not all lattice points of P)"
    if not config.generating:
        return "configuration does not affinely generate the lattice"
    return None


def check_numerical_ss(config, chow, hurwitz, deg, i=1):
    """deg(Hu) Ch(iP) inside deg(R) Hu(iP), tested vertex by vertex.

    ``config`` is the configuration of iP and the polytopes are built on it.
    """
    reason = _admissibility(config)
    if reason:
        return Verdict("numerical_ss", "skipped", reason)
    if deg.hurwitz <= 0:
        return Verdict(
            "numerical_ss", "skipped",
            f"Hurwitz degree {deg.hurwitz} is nonpositive; the Hurwitz form is degenerate",
        )
    targets = [tuple(deg.chow * x for x in v) for v in hurwitz.vertices]
    certs = []
    for v in chow.vertices:
        cert = membership_certificate(tuple(deg.hurwitz * x for x in v), targets)
        certs.append(cert)
        if not cert.inside:
            phi = cert.separator.gradient
            fp = futaki_paul(config, 1, phi, chow, hurwitz)
            if not fp.value_on_dilate < 0:
                raise AssertionError("separating heights do not destabilise")
            return Verdict(
                "numerical_ss", "fail",
                "a scaled Chow vertex lies outside the scaled Hurwitz polytope",
                (cert,),
                {"heights": tuple(phi),
                 "futaki_paul": fp.value_on_dilate / Fraction(i) ** (2 * config.dim - 1)},
            )
    return Verdict("numerical_ss", "pass", "", tuple(certs))


def check_chow_ss(config, chow):
    """Whether c * (1, ..., 1) lies in the Chow polytope of iP, where
    c = (n+1)! vol(iP) / N_i."""
    reason = _admissibility(config)
    if reason:
        return Verdict("chow_ss", "skipped", reason)
    n = config.dim
    npts = len(config.points)
    c = factorial(n + 1) * config.volume()[0] / npts
    cert = membership_certificate((c,) * npts, chow.vertices)
    if cert.inside:
        return Verdict("chow_ss", "pass", "", (cert,), {"constant": c})
    return Verdict(
        "chow_ss", "fail", "the balanced point lies outside the Chow polytope",
        (cert,), {"constant": c, "heights": tuple(cert.separator.gradient)},
    )


def check_barycenter_condition(config):
    """vol(dP) * int_P x - vol(P) * int_dP x = 0. When it fails, the linear
    heights -<D, a> give a strictly negative Futaki-Paul value."""
    reason = _admissibility(config)
    if reason:
        return Verdict("barycenter_condition", "skipped", reason)
    vol, bvol = config.volume()[0], config.boundary_volume(1)
    inner, outer = config.face_integral(), config.boundary_integral(1)
    defect = tuple(bvol * a - vol * b for a, b in zip(inner, outer))
    if all(d == 0 for d in defect):
        return Verdict("barycenter_condition", "pass", "", (), {"defect": defect})
    phi = tuple(-sum((d * x for d, x in zip(defect, p)), Fraction(0)) for p in config.points)
    value = -sum((d * d for d in defect), Fraction(0))
    return Verdict(
        "barycenter_condition", "fail",
        "the boundary and interior barycenters differ",
        (), {"defect": defect, "heights": phi, "futaki_paul": value},
    )


def check_k_ss_functions(config, i, phis, chow=None, hurwitz=None):
    """Futaki-Paul values of user supplied heights on iP (after
    concavification). Returns a list of :class:`FutakiPaul`."""
    return [futaki_paul(config, i, phi, chow, hurwitz) for phi in phis]


def regular_sweep(config, tris, regularity, chow=None, hurwitz=None, factor=1):
    """Futaki-Paul values at the inducing heights of every regular
    triangulation of ``config`` (already dilated).

    A negative value disproves numerical semistability. Nonnegative values
    everywhere are only a necessary condition: the weight form is linear on
    each secondary cone, so one interior point per cone does not settle it.
    The LP inclusion test is the deciding check. ``factor`` is the dilation
    that produced ``config``; it only rescales the reported values.
    """
    scale = Fraction(factor) ** (2 * config.dim - 1)
    out = []
    for t, r in zip(tris, regularity):
        if r.regular:
            fp = futaki_paul(config, 1, r.witness, chow, hurwitz)
            out.append((t, replace(fp, value=fp.value_on_dilate / scale)))
    return out


# -- degree identities -----------------------------------------------------


def _binom(a, b):
    return comb(a, b) if 0 <= b <= a else 0


def binomial_claim_holds(n, m):
    """sum_{k=1}^n (-1)^(n-k) C(n,k) C(m+k, m+1) == C(m, n-1)."""
    lhs = sum((-1) ** (n - k) * _binom(n, k) * _binom(m + k, m + 1) for k in range(1, n + 1))
    return lhs == _binom(m, n - 1)


@dataclass(frozen=True)
class ProductDegree:
    face_sum: Fraction
    closed_form: Fraction

    @property
    def ok(self):
        return self.face_sum == self.closed_form

    def __bool__(self):
        return self.ok


def verify_product_degree(config):
    """Compare the Hurwitz degree n(n+1)! vol(P) - n! vol(dP) with the
    discriminant degree of Q = P x Delta_(n-1), computed as an alternating
    sum over all faces of Q."""
    n = config.dim
    if n >= 3:
        raise ScaleGuardError("product degree check is limited to n <= 2", 2)
    closed = n * factorial(n + 1) * config.volume()[0] - factorial(n) * config.boundary_volume(1)
    q = config if n == 1 else product_with_simplex(config, n - 1)
    face_sum = expected_affine_rows(q, "discriminant")[0]
    return ProductDegree(face_sum, closed)


# -- orchestration -----------------------------------------------------------


@dataclass
class DilationAnalysis:
    factor: int
    config: object
    triangulations: list
    regularity: list
    polytopes: dict
    degrees: Degrees
    d_classes: list
    verdicts: dict
    sweep: list
    seconds: float = 0.0

    @property
    def regular_count(self):
        return sum(1 for r in self.regularity if r.regular)


def analyze_dilation(config, i=1, max_triangulations=DEFAULT_MAX_TRIANGULATIONS,
                     jobs=1, sweep=True):
    """Everything the report needs for one dilation factor."""
    start = time.perf_counter()
    c = dilate(config, i).config
    tris = enumerate_triangulations(c, max_triangulations, jobs)
    regs = is_regular(tris, c, jobs=jobs)
    polys = {k: build_weight_polytope(c, k, tris, regs) for k in KINDS}
    deg = degrees(c)
    verdicts = {
        "barycenter_condition": check_barycenter_condition(c),
        "numerical_ss": check_numerical_ss(c, polys["chow"], polys["hurwitz"], deg, i),
        "chow_ss": check_chow_ss(c, polys["chow"]),
    }
    values = []
    if sweep and verdicts["numerical_ss"].status != "skipped":
        values = regular_sweep(c, tris, regs, polys["chow"], polys["hurwitz"], i)
    return DilationAnalysis(
        i, c, tris, regs, polys, deg, d_classes(tris), verdicts, values,
        time.perf_counter() - start,
    )
