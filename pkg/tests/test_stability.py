import random
from fractions import Fraction
from math import comb, factorial

import pytest
from conftest import CONIC, SEGMENT, SQUARE3, TRAPEZOID, UNIT_TRIANGLE
from oracles import brute_triangulations, pl_integral

from gkzstab.config import dilate, load_configuration, product_with_simplex
from gkzstab.errors import ScaleGuardError
from gkzstab.stability import (
    analyze_dilation,
    binomial_claim_holds,
    build_weight_polytope,
    check_barycenter_condition,
    check_chow_ss,
    check_k_ss_functions,
    check_numerical_ss,
    degrees,
    extreme_points,
    futaki_paul,
    membership_certificate,
    regular_sweep,
    verify_product_degree,
)
from gkzstab.triangulation import enumerate_triangulations, is_regular, pl_function, triangulation_from_heights
from gkzstab.weights import gkz_vector, integrate_pl, pair


def polytopes(c):
    tris = enumerate_triangulations(c)
    regs = is_regular(tris, c)
    return tris, regs, {k: build_weight_polytope(c, k, tris, regs) for k in ("chow", "discriminant", "hurwitz")}


def test_degrees():
    conic = load_configuration(CONIC)
    d = degrees(conic)
    assert (d.chow, d.hurwitz, d.discriminant) == (12, 12, 3)
    d = degrees(load_configuration(SEGMENT))
    assert (d.chow, d.hurwitz, d.discriminant) == (4, 2, 2)
    d = degrees(load_configuration(UNIT_TRIANGLE))
    assert d.hurwitz == 0
    assert degrees(load_configuration(UNIT_TRIANGLE), 2) == degrees(conic)


@pytest.mark.parametrize("pts", [SEGMENT, CONIC, TRAPEZOID])
def test_entry_sums_and_bijection(pts):
    c = load_configuration(pts)
    tris, regs, polys = polytopes(c)
    d = degrees(c)
    for kind, deg in (("chow", d.chow), ("hurwitz", d.hurwitz), ("discriminant", d.discriminant)):
        assert all(sum(g) == deg for g in polys[kind].generators)
    # the Chow vertices are exactly the GKZ vectors of regular triangulations
    regular = [gkz_vector(t).entries for t, r in zip(tris, regs) if r.regular]
    assert len(set(regular)) == len(regular)
    assert sorted(polys["chow"].vertices) == sorted(regular)
    assert polys["chow"].affine_dim == len(c.points) - 1 - c.dim


def test_vertex_certificates():
    c = load_configuration(CONIC)
    _, _, polys = polytopes(c)
    for p in polys.values():
        gens = sorted({g.entries for g in p.generators})
        for v, (kind, data) in p.vertex_certificates.items():
            if kind == "functional":
                vals = [pair(data, g) for g in gens]
                assert [g for g, x in zip(gens, vals) if x == max(vals)] == [v]
            else:
                assert data(v) > 0 and all(data(g) <= 0 for g in gens if g != v)


def test_extreme_points():
    square = [(0, 0), (2, 0), (0, 2), (2, 2), (1, 1), (1, 1)]
    verts, certs = extreme_points(square)
    assert verts == [(0, 0), (0, 2), (2, 0), (2, 2)]
    assert all(kind == "separator" for kind, _ in certs.values())
    verts, certs = extreme_points(square, hints=[(1, 1)])
    assert certs[(2, 2)][0] == "functional"
    assert extreme_points([(3, 3)])[0] == [(3, 3)]


def test_segment_verdicts():
    c = load_configuration(SEGMENT)
    _, _, polys = polytopes(c)
    assert sorted(polys["chow"].vertices) == [(1, 2, 1), (2, 0, 2)]
    assert sorted(polys["hurwitz"].vertices) == [(0, 2, 0), (1, 0, 1)]
    v = check_numerical_ss(c, polys["chow"], polys["hurwitz"], degrees(c))
    assert v.passed and all(cert.check() for cert in v.certificates)
    v = check_chow_ss(c, polys["chow"])
    assert v.passed and v.witness["constant"] == Fraction(4, 3)


def test_unit_triangle():
    c = load_configuration(UNIT_TRIANGLE)
    _, _, polys = polytopes(c)
    v = check_numerical_ss(c, polys["chow"], polys["hurwitz"], degrees(c))
    assert v.status == "skipped" and "nonpositive" in v.reason
    v = check_chow_ss(c, polys["chow"])
    assert v.passed and polys["chow"].vertices == [(1, 1, 1)] and v.witness["constant"] == 1
    a = analyze_dilation(c, 2)
    assert a.verdicts["numerical_ss"].passed
    assert a.verdicts["chow_ss"].passed


def test_conic_analysis():
    a = analyze_dilation(load_configuration(CONIC), 1)
    assert all(v.passed for v in a.verdicts.values())
    assert a.verdicts["chow_ss"].witness["constant"] == 2
    for v in a.verdicts.values():
        assert all(cert.check() for cert in v.certificates)
    assert a.regular_count == 14
    assert min(fp.value for _, fp in a.sweep) >= 0


def test_reflexive_square_passes():
    a = analyze_dilation(load_configuration(SQUARE3), 1)
    assert [v.status for v in a.verdicts.values()] == ["pass", "pass", "pass"]
    assert all(cert.check() for cert in a.verdicts["numerical_ss"].certificates)


def test_admissibility_gate():
    c = load_configuration([(0, 0), (2, 0), (0, 2)])
    tris = enumerate_triangulations(c)
    chow = build_weight_polytope(c, "chow", tris)
    hu = build_weight_polytope(c, "hurwitz", tris)
    assert check_chow_ss(c, chow).status == "skipped"
    assert check_numerical_ss(c, chow, hu, degrees(c)).status == "skipped"
    assert check_barycenter_condition(c).status == "skipped"


@pytest.mark.parametrize("pts", [TRAPEZOID, [(0, 0), (1, 0), (0, 1), (1, 1), (2, 1), (1, 2)]])
def test_barycenter_failure_forces_numerical_failure(pts):
    c = load_configuration(pts)
    bary = check_barycenter_condition(c)
    assert bary.status == "fail"
    fp = futaki_paul(c, 1, bary.witness["heights"])
    assert fp.value == bary.witness["futaki_paul"] < 0
    a = analyze_dilation(c, 1)
    num = a.verdicts["numerical_ss"]
    assert num.status == "fail"
    (cert,) = num.certificates
    assert not cert.inside and cert.check()
    assert num.witness["futaki_paul"] < 0
    # the witness is indexed by the lattice points of iP in lexicographic order
    assert futaki_paul(a.config, 1, num.witness["heights"]).value == num.witness["futaki_paul"]


def test_futaki_paul_examples():
    seg = load_configuration(SEGMENT)
    fp = futaki_paul(seg, 1, (0, 1, 0))
    assert fp.value == 2 and fp.integral == 1 and fp.boundary_integral == 0
    assert futaki_paul(seg, 1, (5, 5, 5)).value == 0
    conic = load_configuration(CONIC)
    assert futaki_paul(conic, 1, (7,) * 6).value == 0
    affine = [3 * p[0] - 2 * p[1] + 1 for p in conic.points]
    assert futaki_paul(conic, 1, affine).value == 0
    # (1, 1) lies on the hypotenuse, so the bump also has boundary mass
    bump = futaki_paul(conic, 1, (0, 0, 0, 0, 1, 0))
    assert (bump.integral, bump.boundary_integral, bump.value) == (Fraction(2, 3), 1, 2)
    # dilation rescales by i^(2n-1)
    bump2 = futaki_paul(conic, 2, [int(p == (2, 2)) for p in dilate(conic, 2).points])
    assert bump2.value == bump2.value_on_dilate / 8


def test_weight_form_identity():
    rng = random.Random(1)
    c = load_configuration(CONIC)
    _, _, polys = polytopes(c)
    n = c.dim
    for _ in range(20):
        phi = [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in c.points]
        fp = futaki_paul(c, 1, phi, polys["chow"], polys["hurwitz"])
        assert fp.weight_form == -factorial(n + 1) * factorial(n) * fp.value_on_dilate


def test_max_pairing_law():
    rng = random.Random(2)
    for pts in (CONIC, TRAPEZOID):
        c = load_configuration(pts)
        _, _, polys = polytopes(c)
        n = c.dim
        brute = brute_triangulations(c.points)
        for _ in range(15):
            phi = [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in c.points]
            t = triangulation_from_heights(c, phi)
            g = pl_function(t, phi)
            top = integrate_pl(g, 0)
            # independent: the concave envelope maximises the integral
            assert top == max(pl_integral(c.points, cells, phi) for cells in brute)
            expected = n * factorial(n + 1) * top - factorial(n) * integrate_pl(g, 1)
            assert polys["hurwitz"].max_pairing(phi) == expected
            assert polys["chow"].max_pairing(phi) == factorial(n + 1) * top


def test_sweep_and_chow_reduction_consistency():
    c = load_configuration(CONIC)
    tris, regs, polys = polytopes(c)
    sweep = regular_sweep(c, tris, regs, polys["chow"], polys["hurwitz"])
    assert len(sweep) == 14
    assert all(fp.value >= 0 for _, fp in sweep)
    vol, npts = c.volume()[0], len(c.points)
    for t, fp in sweep:
        r = is_regular(t)
        g = pl_function(t, r.witness)
        assert integrate_pl(g, 0) >= vol / npts * sum(Fraction(h) for h in r.witness)
    again = check_k_ss_functions(c, 1, [is_regular(t).witness for t, _ in sweep])
    assert [fp.value for fp in again] == [fp.value for _, fp in sweep]


def test_membership_certificate_round_trip():
    cert = membership_certificate((1, 1), [(0, 0), (2, 0), (0, 2), (2, 2)])
    assert cert.inside and cert.check()
    cert = membership_certificate((3, 3), [(0, 0), (2, 0), (0, 2), (2, 2)])
    assert not cert.inside and cert.check()


def test_binomial_claim():
    for m in range(9):
        for n in range(m + 1):
            assert binomial_claim_holds(n, m)
    # the identity is not vacuous: a perturbed right-hand side fails
    lhs = sum((-1) ** (3 - k) * comb(3, k) * comb(6 + k, 7) for k in range(1, 4))
    assert lhs == comb(6, 2) != comb(6, 3)


def test_product_degree():
    conic = load_configuration(CONIC)
    pd = verify_product_degree(conic)
    assert pd.ok and pd.face_sum == 12 == pd.closed_form
    pd = verify_product_degree(load_configuration(SEGMENT))
    assert pd.ok and pd.face_sum == 2
    assert verify_product_degree(load_configuration(TRAPEZOID)).ok
    cube = load_configuration([(a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1)])
    with pytest.raises(ScaleGuardError):
        verify_product_degree(cube)
    assert product_with_simplex(conic, 1).dim == 3


def test_sweep_is_not_sufficient():
    # every swept value is positive, yet the inclusion fails: the sweep only
    # sees one height vector per triangulation, and F is not invariant under
    # affine shifts when the barycenter condition fails
    a = analyze_dilation(load_configuration(TRAPEZOID), 1)
    assert all(fp.value > 0 for _, fp in a.sweep)
    assert a.verdicts["numerical_ss"].status == "fail"
    assert a.verdicts["numerical_ss"].witness["futaki_paul"] == Fraction(-2, 3)


def test_numerical_pass_implies_nonnegative_sweep():
    for pts in (CONIC, SEGMENT, [(0, 0), (1, 0), (0, 1), (1, 1)]):
        a = analyze_dilation(load_configuration(pts), 1)
        if a.verdicts["numerical_ss"].passed:
            assert all(fp.value >= 0 for _, fp in a.sweep)
