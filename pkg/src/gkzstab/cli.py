"""Command line interface.

Exit codes: 0 every verdict passed (skipped verdicts do not count as
failures), 1 some verdict or check failed, 2 input error, 3 scale guard.
"""

import argparse
import json
import sys

from .config import dilate, ehrhart_coefficients
from .errors import InputError, ScaleGuardError
from .io import encode, parse_dilations, read_configuration, read_heights
from .report import (
    dilation_section,
    document,
    render_human,
    _verdict_doc,
    triangulation_entries,
    verify_document,
)
from .stability import (
    KINDS,
    DilationAnalysis,
    analyze_dilation,
    binomial_claim_holds,
    build_weight_polytope,
    check_chow_ss,
    check_k_ss_functions,
    degrees,
    regular_sweep,
    verify_product_degree,
)
from .svg import write_svgs
from .triangulation import DEFAULT_MAX_TRIANGULATIONS, enumerate_triangulations, is_regular
from .weights import d_classes

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_SCALE = 0, 1, 2, 3


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("input", help="configuration file (line or JSON object format)")
    common.add_argument("--dilation", type=str, default=None,
                        help="comma separated dilation factors i (default: from file, else 1)")
    common.add_argument("--format", choices=("human", "machine"), default="human")
    common.add_argument("--emit-svg", metavar="DIR", default=None,
                        help="write SVG figures (n = 2 only) into DIR")
    common.add_argument("--max-triangulations", type=int, default=DEFAULT_MAX_TRIANGULATIONS,
                        metavar="K", help="scale guard on the enumeration (default %(default)s)")
    common.add_argument("--jobs", type=int, default=1, metavar="M",
                        help="worker processes for enumeration and regularity")

    parser = argparse.ArgumentParser(
        prog="gkzstab",
        description="Exact weight polytopes and semistability checks for toric pairs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("analyze", parents=[common], help="full report per dilation")
    sub.add_parser("triangulations", parents=[common],
                   help="all triangulations with regularity certificates and weight vectors")
    sub.add_parser("polytopes", parents=[common], help="Chow, discriminant and Hurwitz polytopes")
    sub.add_parser("degrees", parents=[common], help="degree formulas and identities")
    sub.add_parser("chow-check", parents=[common], help="Chow semistability test")
    k = sub.add_parser("k-check", parents=[common],
                       help="Futaki-Paul values of given heights, or of the regular sweep")
    k.add_argument("--heights", metavar="PATH", default=None,
                   help="height vectors on the lattice points of iP")
    sub.add_parser("svg", parents=[common], help="SVG figures of P and its triangulations")
    v = sub.add_parser("verify", help="re-check the certificates in a machine report")
    v.add_argument("input", help="report produced with --format machine")
    v.add_argument("--format", choices=("human", "machine"), default="human")
    return parser


def _dilations(args, cf):
    if args.dilation:
        return parse_dilations(args.dilation)
    return cf.dilations or (1,)


def _stem(config, i):
    return f"{config.name or 'config'}-i{i}"


def _enumerate(c, args):
    tris = enumerate_triangulations(c, args.max_triangulations, args.jobs)
    regs = is_regular(tris, c, jobs=args.jobs)
    return tris, regs


def _svgs(args, base, i, c, tris, files):
    if args.emit_svg:
        if c.dim != 2:
            raise InputError("SVG output is only available for n = 2", field="--emit-svg")
        files.extend(write_svgs(args.emit_svg, c, tris, _stem(base, i)))


def cmd_analyze(args, cf):
    sections, files = [], []
    for i in _dilations(args, cf):
        a = analyze_dilation(cf.config, i, args.max_triangulations, args.jobs)
        sec = dilation_section(a, timing=args.format == "human")
        sec["triangulations"], sec["d_classes"] = triangulation_entries(a)
        sections.append(sec)
        _svgs(args, cf.config, i, a.config, a.triangulations, files)
    return document("analyze", cf.config, sections, {"files": files} if files else None)


def cmd_triangulations(args, cf):
    sections, files = [], []
    for i in _dilations(args, cf):
        c = dilate(cf.config, i).config
        tris, regs = _enumerate(c, args)
        stub = DilationAnalysis(i, c, tris, regs, {}, None, d_classes(tris), {}, [])
        entries, classes = triangulation_entries(stub)
        sections.append({
            "factor": i,
            "lattice_points": len(c.points),
            "points": encode(c.points),
            "counts": {"triangulations": len(tris), "regular": stub.regular_count,
                       "d_classes": len(classes)},
            "triangulations": entries,
            "d_classes": classes,
        })
        _svgs(args, cf.config, i, c, tris, files)
    return document("triangulations", cf.config, sections, {"files": files} if files else None)


def cmd_polytopes(args, cf):
    sections = []
    for i in _dilations(args, cf):
        c = dilate(cf.config, i).config
        tris, regs = _enumerate(c, args)
        polys = {}
        for kind in KINDS:
            p = build_weight_polytope(c, kind, tris, regs)
            polys[kind] = {
                "vertices": encode(p.vertices),
                "generators": len(p.generators),
                "affine_dim": p.affine_dim,
                "rows": {"sum": encode(p.expected_rows[0]), "moment": encode(p.expected_rows[1])},
            }
        sections.append({
            "factor": i,
            "lattice_points": len(c.points),
            "points": encode(c.points),
            "counts": {"triangulations": len(tris), "regular": sum(map(bool, regs)),
                       "d_classes": len(d_classes(tris))},
            "polytopes": polys,
        })
    return document("polytopes", cf.config, sections)


def cmd_degrees(args, cf):
    sections = []
    for i in _dilations(args, cf):
        c = dilate(cf.config, i).config
        deg = degrees(c)
        lead, sub = ehrhart_coefficients(c)
        sections.append({
            "factor": i,
            "lattice_points": len(c.points),
            "measures": {
                "volume": encode(c.volume()[0]),
                "boundary_volume": encode(c.boundary_volume(1)),
                "integral_x": encode(c.face_integral()),
                "boundary_integral_x": encode(c.boundary_integral(1)),
                "vertex_sum": encode(tuple(
                    sum(c.points[v][k] for v in c.hull.vertices) for k in range(c.dim)
                )),
            },
            "degrees": {"chow": encode(deg.chow), "hurwitz": encode(deg.hurwitz),
                        "discriminant": encode(deg.discriminant)},
            "ehrhart": {"leading": encode(lead), "subleading": encode(sub)},
        })
    checks = []
    if cf.config.dim <= 2:
        pd = verify_product_degree(cf.config)
        checks.append({
            "name": "product_degree",
            "status": "pass" if pd.ok else "fail",
            "detail": f"face sum {pd.face_sum}, closed form {pd.closed_form}",
        })
    ok = all(binomial_claim_holds(n, m) for m in range(9) for n in range(m + 1))
    checks.append({"name": "binomial_identity", "status": "pass" if ok else "fail",
                   "detail": "0 <= n <= m <= 8"})
    return document("degrees", cf.config, sections, {"checks": checks})


def cmd_chow_check(args, cf):
    sections = []
    for i in _dilations(args, cf):
        c = dilate(cf.config, i).config
        tris, regs = _enumerate(c, args)
        chow = build_weight_polytope(c, "chow", tris, regs)
        verdict = check_chow_ss(c, chow)
        deg = degrees(c)
        sections.append({
            "factor": i,
            "lattice_points": len(c.points),
            "degrees": {"chow": encode(deg.chow), "hurwitz": encode(deg.hurwitz),
                        "discriminant": encode(deg.discriminant)},
            "polytopes": {"chow": {"vertices": encode(chow.vertices),
                                   "generators": len(chow.generators),
                                   "affine_dim": chow.affine_dim}},
            "verdicts": {"chow_ss": _verdict_doc(verdict, "chow", 1)},
        })
    return document("chow-check", cf.config, sections)


def cmd_k_check(args, cf):
    dil = _dilations(args, cf)
    if args.heights and len(dil) != 1:
        raise InputError("--heights needs exactly one dilation", field="--dilation")
    sections = []
    negative = False
    for i in dil:
        c = dilate(cf.config, i).config
        if args.heights:
            # heights follow the input order at i = 1, else the points of iP
            if i == 1:
                c = cf.config
            phis = read_heights(args.heights, len(c.points))
            values = check_k_ss_functions(cf.config, i, phis)
        else:
            tris, regs = _enumerate(c, args)
            swept = regular_sweep(c, tris, regs, factor=i)
            phis = [r.witness for r in regs if r.regular]
            values = [fp for _, fp in swept]
        entries = []
        for phi, fp in zip(phis, values):
            negative |= fp.value < 0
            entries.append({"heights": encode(phi), "futaki_paul": encode(fp.value),
                            "weight_form": encode(fp.weight_form)})
        sections.append({"factor": i, "lattice_points": len(c.points),
                         "points": encode(c.points), "k_check": entries})
    checks = [{"name": "k_check", "status": "fail" if negative else "pass",
               "detail": "some Futaki-Paul value is negative" if negative else ""}]
    return document("k-check", cf.config, sections, {"checks": checks})


def cmd_svg(args, cf):
    if cf.config.dim != 2:
        raise InputError("SVG output is only available for n = 2")
    sections, files = [], []
    for i in _dilations(args, cf):
        c = dilate(cf.config, i).config
        tris = enumerate_triangulations(c, args.max_triangulations, args.jobs)
        _svgs(args, cf.config, i, c, tris, files)
        sections.append({"factor": i, "lattice_points": len(c.points),
                         "counts": {"triangulations": len(tris)}})
    return document("svg", cf.config, sections, {"files": files})


COMMANDS = {
    "analyze": cmd_analyze,
    "triangulations": cmd_triangulations,
    "polytopes": cmd_polytopes,
    "degrees": cmd_degrees,
    "chow-check": cmd_chow_check,
    "k-check": cmd_k_check,
    "svg": cmd_svg,
}


def _emit(doc, fmt, out):
    if fmt == "machine":
        out.write(json.dumps(doc, indent=2) + "\n")
    else:
        out.write(render_human(doc))


def cmd_verify(args, out):
    try:
        with open(args.input, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {args.input}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed report: {exc.msg}", line=exc.lineno) from None
    if not isinstance(doc, dict):
        raise InputError("report must be a JSON object")
    try:
        results = verify_document(doc)
    except (KeyError, TypeError, ValueError, IndexError, ZeroDivisionError) as exc:
        raise InputError(f"malformed report: {type(exc).__name__}: {exc}") from None
    ok = all(r[1] for r in results)
    if args.format == "machine":
        payload = {"status": "pass" if ok else "fail",
                   "checks": [{"name": n, "ok": g, "detail": d} for n, g, d in results]}
        out.write(json.dumps(payload, indent=2) + "\n")
    else:
        for name, good, detail in results:
            out.write(f"{'ok  ' if good else 'FAIL'} {name}: {detail}\n")
        out.write(f"{len(results)} checks, {'all valid' if ok else 'some invalid'}\n")
    return EXIT_OK if ok else EXIT_FAIL


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        if args.command == "verify":
            return cmd_verify(args, out)
        if args.jobs < 1 or args.max_triangulations < 1:
            raise InputError("--jobs and --max-triangulations must be positive")
        cf = read_configuration(args.input)
        doc = COMMANDS[args.command](args, cf)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ScaleGuardError as exc:
        print(f"error: too large: {exc} (raise --max-triangulations above {exc.bound})",
              file=sys.stderr)
        return EXIT_SCALE
    _emit(doc, args.format, out)
    return EXIT_FAIL if doc["status"] == "fail" else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
