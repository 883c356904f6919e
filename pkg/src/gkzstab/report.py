"""Report documents: assembly, human rendering, and independent re-checking
of the certificates they carry."""

from fractions import Fraction

from .io import encode, parse_rational
from .linalg import det, integer_row_basis
from .lp import AffineFunctional
from .weights import gkz_vector, hurwitz_vector, massive_gkz_vector

SCHEMA = "gkzstab-report/1"

SCOPE = (
    "verdicts cover only the listed dilations; asymptotic and K-semistability "
    "are certified only through the finite sweep over regular triangulations"
)
CRITERION = (
    "numerical semistability is decided over all heights on the lattice points "
    "of iP (the full diagonal torus) by vertex-wise LP inclusion"
)

__all__ = [
    "SCHEMA",
    "configuration_section",
    "dilation_section",
    "triangulation_entries",
    "document",
    "overall_status",
    "render_human",
    "verify_document",
]


def configuration_section(config):
    return {
        "name": config.name,
        "dim": config.dim,
        "points": encode(config.points),
        "saturated": config.saturated,
        "generating": config.generating,
        "delzant": config.is_delzant(),
    }


def _cert_doc(cert, against, scale):
    doc = {"point": encode(cert.point), "against": against, "scale": encode(scale)}
    if cert.inside:
        doc["combination"] = [
            [k, encode(c)] for k, c in enumerate(cert.coefficients) if c != 0
        ]
    else:
        doc["separator"] = {
            "gradient": encode(cert.separator.gradient),
            "constant": encode(cert.separator.constant),
        }
    return doc


def _verdict_doc(verdict, against=None, scale=None):
    return {
        "status": verdict.status,
        "reason": verdict.reason,
        "certificates": [_cert_doc(c, against, scale) for c in verdict.certificates],
        "witness": encode(verdict.witness),
    }


def dilation_section(analysis, timing=False):
    c = analysis.config
    deg = analysis.degrees
    vol, bvol = c.volume()[0], c.boundary_volume(1)
    vsum = tuple(sum(c.points[v][k] for v in c.hull.vertices) for k in range(c.dim))
    polys = {}
    for kind, p in analysis.polytopes.items():
        polys[kind] = {
            "vertices": encode(p.vertices),
            "generators": len(p.generators),
            "affine_dim": p.affine_dim,
            "rows": {"sum": encode(p.expected_rows[0]), "moment": encode(p.expected_rows[1])},
        }
    v = analysis.verdicts
    verdicts = {
        "barycenter_condition": _verdict_doc(v["barycenter_condition"]),
        "numerical_ss": _verdict_doc(v["numerical_ss"], "hurwitz", deg.chow),
        "chow_ss": _verdict_doc(v["chow_ss"], "chow", 1),
    }
    sweep = [fp.value for _, fp in analysis.sweep]
    doc = {
        "factor": analysis.factor,
        "lattice_points": len(c.points),
        "points": encode(c.points),
        "measures": {
            "volume": encode(vol),
            "boundary_volume": encode(bvol),
            "integral_x": encode(c.face_integral()),
            "boundary_integral_x": encode(c.boundary_integral(1)),
            "vertex_sum": encode(vsum),
        },
        "degrees": {
            "chow": encode(deg.chow),
            "hurwitz": encode(deg.hurwitz),
            "discriminant": encode(deg.discriminant),
        },
        "counts": {
            "triangulations": len(analysis.triangulations),
            "regular": analysis.regular_count,
            "d_classes": len(analysis.d_classes),
        },
        "polytopes": polys,
        "verdicts": verdicts,
        "sweep": {
            "evaluated": len(sweep),
            "min_futaki_paul": encode(min(sweep)) if sweep else None,
            "negative": [k for k, x in enumerate(sweep) if x < 0],
        },
        "criterion": CRITERION,
    }
    if timing:
        doc["seconds"] = round(analysis.seconds, 3)
    return doc


def triangulation_entries(analysis):
    out = []
    for t, r in zip(analysis.triangulations, analysis.regularity):
        entry = {
            "cells": [list(s) for s in t.cells],
            "regular": r.regular,
            "gkz": encode(gkz_vector(t).entries),
            "massive_gkz": encode(massive_gkz_vector(t).entries),
            "hurwitz": encode(hurwitz_vector(t).entries),
        }
        if r.regular:
            entry["witness"] = encode(r.witness)
        else:
            entry["farkas"] = {
                "multipliers": encode(r.farkas),
                "constraints": encode(r.constraints),
            }
        out.append(entry)
    classes = []
    index = {t.cells: k for k, t in enumerate(analysis.triangulations)}
    for vec, members in analysis.d_classes:
        classes.append({"vector": encode(vec), "members": [index[t.cells] for t in members]})
    return out, classes


def document(command, config, sections, extra=None):
    doc = {
        "schema": SCHEMA,
        "command": command,
        "configuration": configuration_section(config),
        "scope": SCOPE,
        "dilations": sections,
    }
    if extra:
        doc.update(extra)
    doc["status"] = overall_status(doc)
    return doc


def overall_status(doc):
    statuses = [
        v["status"]
        for sec in doc.get("dilations", [])
        for v in sec.get("verdicts", {}).values()
    ]
    statuses += [c["status"] for c in doc.get("checks", [])]
    return "fail" if "fail" in statuses else "pass"


# -- human output ------------------------------------------------------------


def _vec(v):
    return "(" + ", ".join(str(x) for x in v) + ")"


def render_human(doc):
    cfg = doc["configuration"]
    flags = [k for k in ("saturated", "generating", "delzant") if cfg.get(k)]
    lines = [
        f"configuration {cfg['name'] or '<unnamed>'}: n = {cfg['dim']}, "
        f"{len(cfg['points'])} points" + (f", {', '.join(flags)}" if flags else "")
    ]
    for sec in doc.get("dilations", []):
        lines.append(f"dilation {sec['factor']}: {sec.get('lattice_points', '?')} lattice points")
        m = sec.get("measures")
        if m:
            lines.append(
                f"  vol(P) = {m['volume']}, vol(dP) = {m['boundary_volume']}, "
                f"int_P x = {_vec(m['integral_x'])}, int_dP x = {_vec(m['boundary_integral_x'])}, "
                f"vertex sum = {_vec(m['vertex_sum'])}"
            )
        d = sec.get("degrees")
        if d:
            lines.append(
                f"  degrees: Chow {d['chow']}, Hurwitz {d['hurwitz']}, discriminant {d['discriminant']}"
            )
        cnt = sec.get("counts")
        if cnt:
            text = f"  triangulations: {cnt['triangulations']}"
            if "regular" in cnt:
                text += f" ({cnt['regular']} regular)"
            if "d_classes" in cnt:
                text += f", D-classes: {cnt['d_classes']}"
            lines.append(text)
        for kind, p in sec.get("polytopes", {}).items():
            lines.append(
                f"  {kind} polytope: {len(p['vertices'])} vertices from {p['generators']} "
                f"generators, affine dimension {p['affine_dim']}"
            )
            if kind == "discriminant" and len(p["vertices"]) <= 12:
                for v in p["vertices"]:
                    lines.append(f"    {_vec(v)}")
        for name, v in sec.get("verdicts", {}).items():
            detail = f" ({v['reason']})" if v["reason"] else ""
            lines.append(f"  {name}: {v['status']}{detail}")
        sw = sec.get("sweep")
        if sw and sw["evaluated"]:
            lines.append(
                f"  regular sweep: {sw['evaluated']} heights, min Futaki-Paul {sw['min_futaki_paul']}"
            )
        for k, t in enumerate(sec.get("triangulations", [])):
            tag = "regular" if t["regular"] else "non-regular"
            lines.append(f"  T{k}: {' '.join(_vec(c) for c in t['cells'])} [{tag}]")
            lines.append(f"      gkz {_vec(t['gkz'])}  massive {_vec(t['massive_gkz'])}  hurwitz {_vec(t['hurwitz'])}")
        for entry in sec.get("k_check", []):
            lines.append(f"  heights {_vec(entry['heights'])}: F = {entry['futaki_paul']}")
        if "seconds" in sec:
            lines.append(f"  time: {sec['seconds']} s")
    for c in doc.get("checks", []):
        lines.append(f"{c['name']}: {c['status']}" + (f" ({c['detail']})" if c.get("detail") else ""))
    for f in doc.get("files", []):
        lines.append(f"wrote {f}")
    lines.append(f"note: {doc['scope']}")
    lines.append(f"status: {doc['status']}")
    return "\n".join(lines) + "\n"


# -- verification ------------------------------------------------------------


def _q(x):
    return parse_rational(x)


def _qv(v):
    return tuple(_q(x) for x in v)


def _check_membership(cert, vertices, expected_point):
    point = _qv(cert["point"])
    if expected_point is not None and point != tuple(expected_point):
        return False, "certificate point does not match the expected point"
    scale = _q(cert["scale"])
    scaled = [tuple(scale * x for x in v) for v in vertices]
    if "combination" in cert:
        total = Fraction(0)
        combo = [Fraction(0)] * len(point)
        for idx, coeff in cert["combination"]:
            c = _q(coeff)
            if c < 0 or not 0 <= idx < len(scaled):
                return False, "bad combination entry"
            total += c
            for k in range(len(point)):
                combo[k] += c * scaled[idx][k]
        if total != 1 or tuple(combo) != point:
            return False, "combination does not reproduce the point"
        return True, "inside"
    sep = cert.get("separator")
    if sep is None:
        return False, "certificate has neither combination nor separator"
    func = AffineFunctional(_qv(sep["gradient"]), _q(sep["constant"]))
    if func(point) <= 0 or any(func(v) > 0 for v in scaled):
        return False, "separator does not separate"
    return True, "outside"


def _verify_dilation(sec):
    results = []
    polys = {k: [_qv(v) for v in p["vertices"]] for k, p in sec.get("polytopes", {}).items()}
    deg = {k: _q(v) for k, v in sec.get("degrees", {}).items()}
    verdicts = sec.get("verdicts", {})
    tag = f"dilation {sec['factor']}"

    ns = verdicts.get("numerical_ss")
    if ns is not None and ns["status"] != "skipped":
        ok, why = True, ""
        certs = ns["certificates"]
        if ns["status"] == "pass":
            if len(certs) != len(polys["chow"]):
                ok, why = False, "one certificate per Chow vertex expected"
            for cert, v in zip(certs, polys["chow"]):
                good, msg = _check_membership(
                    cert, polys["hurwitz"], tuple(deg["hurwitz"] * x for x in v)
                )
                if not good or msg != "inside":
                    ok, why = False, msg
        else:
            cert = certs[0] if certs else None
            point = _qv(cert["point"]) if cert else None
            scaled = [tuple(deg["hurwitz"] * x for x in v) for v in polys["chow"]]
            if cert is None or point not in scaled:
                ok, why = False, "failing point is not a scaled Chow vertex"
            else:
                good, msg = _check_membership(cert, polys["hurwitz"], None)
                ok, why = good and msg == "outside", msg
        results.append((f"{tag} numerical_ss certificates", ok, why))

    cs = verdicts.get("chow_ss")
    if cs is not None and cs["status"] != "skipped":
        const = deg["chow"] / sec["lattice_points"]
        expected = (const,) * sec["lattice_points"]
        good, msg = _check_membership(cs["certificates"][0], polys["chow"], expected)
        want = "inside" if cs["status"] == "pass" else "outside"
        results.append((f"{tag} chow_ss certificate", good and msg == want, msg))

    bc = verdicts.get("barycenter_condition")
    if bc is not None and bc["status"] != "skipped":
        m = sec["measures"]
        defect = tuple(
            _q(m["boundary_volume"]) * a - _q(m["volume"]) * b
            for a, b in zip(_qv(m["integral_x"]), _qv(m["boundary_integral_x"]))
        )
        zero = all(d == 0 for d in defect)
        results.append((
            f"{tag} barycenter condition",
            zero == (bc["status"] == "pass"),
            "defect " + ", ".join(str(d) for d in defect),
        ))

    pts = [_qv(p) for p in sec.get("points", [])]
    for k, t in enumerate(sec.get("triangulations", [])):
        ok, why = _check_triangulation(t, pts)
        results.append((f"{tag} triangulation {k}", ok, why))
    return results


def _barycentric(cell, pts, x):
    """Barycentric coordinates of x in the simplex ``cell`` via Cramer's rule."""
    n = len(x)
    cols = [list(pts[i]) + [Fraction(1)] for i in cell]
    base = det([[cols[c][r] for c in range(n + 1)] for r in range(n + 1)])
    target = list(x) + [Fraction(1)]
    out = []
    for k in range(n + 1):
        mod = [list(col) for col in cols]
        mod[k] = target
        out.append(det([[mod[c][r] for c in range(n + 1)] for r in range(n + 1)]) / base)
    return out


def _check_triangulation(entry, pts):
    cells = [tuple(c) for c in entry["cells"]]
    n = len(pts[0])
    # GKZ entries from determinants, normalised by the index of the lattice
    # affinely spanned by the points
    index = abs(det(integer_row_basis(
        [[int(p[k] - pts[0][k]) for k in range(n)] for p in pts[1:]]
    )))
    gkz = [Fraction(0)] * len(pts)
    for cell in cells:
        rows = [[pts[i][k] - pts[cell[0]][k] for k in range(n)] for i in cell[1:]]
        vol = abs(det(rows)) / index
        for i in cell:
            gkz[i] += vol
    if tuple(gkz) != _qv(entry["gkz"]):
        return False, "GKZ vector does not match the cells"
    if entry["regular"]:
        phi = _qv(entry["witness"])
        for cell in cells:
            for j in range(len(pts)):
                if j in cell:
                    continue
                lam = _barycentric(cell, pts, pts[j])
                if sum(c * phi[i] for c, i in zip(lam, cell)) <= phi[j]:
                    return False, "witness heights do not fold strictly"
        return True, "regularity witness valid"
    far = entry["farkas"]
    y = _qv(far["multipliers"])
    rows = [_qv(r) for r in far["constraints"]]
    if any(v < 0 for v in y) or sum(y) != 1:
        return False, "multipliers must be a probability vector"
    for r in rows:
        if not _is_folding_row(r, cells, pts):
            return False, "constraint is not a folding condition of the triangulation"
    combo = [sum((yk * r[j] for yk, r in zip(y, rows)), Fraction(0)) for j in range(len(pts))]
    if any(combo):
        return False, "multipliers do not cancel the constraints"
    return True, "non-regularity certificate valid"


def _is_folding_row(row, cells, pts):
    negs = [j for j, v in enumerate(row) if v == -1]
    for j in negs:
        for cell in cells:
            if j in cell:
                continue
            lam = _barycentric(cell, pts, pts[j])
            expected = [Fraction(0)] * len(pts)
            for c, i in zip(lam, cell):
                expected[i] += c
            expected[j] -= 1
            if tuple(expected) == tuple(row):
                return True
    return False


def verify_document(doc):
    """Re-check every certificate in a report. Returns (name, ok, detail)."""
    if doc.get("schema") != SCHEMA:
        return [("schema", False, f"unsupported schema {doc.get('schema')!r}")]
    results = []
    for sec in doc.get("dilations", []):
        results.extend(_verify_dilation(sec))
    if not results:
        results.append(("content", False, "report holds nothing to verify"))
    return results
