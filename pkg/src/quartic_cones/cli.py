"""Command-line frontend.

Subcommands wrap the library pipelines and emit JSON (default) or text
reports.  Every mathematical claim in a report is accompanied by its
machine-checkable certificate: exact rational values, polynomial
witnesses, or both.  Rationals are printed as exact decimal strings
("num/den"), never floating point.

Exit codes: 0 success, 1 mathematical precondition failure, 2 input or
parse failure.  With a fixed --seed and fixed inputs the output bytes
are identical across runs.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction

from . import cone as cone_mod
from . import covariants as cov
from . import octad as octad_mod
from . import theta as theta_mod
from .polycore import PolyError, macaulay_resultant_ternary
from .polyio import (
    ParseError,
    parse_point,
    parse_points_file,
    parse_poly,
    print_poly,
    scan_identifiers,
)

FORMAT_ENV = "QUARTIC_CONES_FORMAT"

EXIT_OK = 0
EXIT_MATH = 1
EXIT_INPUT = 2


class InputError(Exception):
    pass


def _frac(value: Fraction) -> str:
    return str(Fraction(value))


def _point_json(coords) -> list:
    return [_frac(c) for c in coords]


def _matrix_json(matrix) -> list:
    """Row-major rational-string array."""
    return [_frac(v) for row in matrix for v in row]


def _render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True) + "\n"
    lines = []

    def walk(path, value):
        if isinstance(value, dict):
            for key in sorted(value):
                walk(f"{path}.{key}" if path else key, value[key])
        elif isinstance(value, list):
            lines.append(f"{path}: {json.dumps(value)}")
        else:
            lines.append(f"{path}: {value}")

    walk("", report)
    return "\n".join(lines) + "\n"


def _load_quartic(path: str):
    try:
        with open(path) as handle:
            text = handle.read()
    except OSError as err:
        raise InputError(f"cannot read {path}: {err}")
    text = "\n".join(line.split("#", 1)[0] for line in text.splitlines()).strip()
    idents = scan_identifiers(text)
    declared = tuple(dict.fromkeys(("x", "y", "z") + idents))
    poly = parse_poly(text, declared)
    curve = cov.QuarticCurve(poly)
    return curve, text


def _load_points(path: str, count_options) -> list:
    try:
        with open(path) as handle:
            text = handle.read()
    except OSError as err:
        raise InputError(f"cannot read {path}: {err}")
    points = parse_points_file(text, "P3")
    if len(points) not in count_options:
        raise InputError(f"expected {' or '.join(map(str, count_options))} points "
                         f"in {path}, found {len(points)}")
    return points


def _smoothness_report(curve: cov.QuarticCurve, rng) -> dict:
    if curve.parameters:
        return {"status": "not_evaluated_parametric",
                "parameters": sorted(curve.parameters)}
    res = macaulay_resultant_ternary(curve.poly.partial("x"), curve.poly.partial("y"),
                                     curve.poly.partial("z"), rng=rng)
    return {"status": "evaluated", "macaulay_resultant": _frac(res),
            "smooth": res != 0}


def cmd_covariants(args, rng) -> tuple:
    curve, text = _load_quartic(args.quartic)
    b = cov.line_restriction(curve)
    pair = cov.covariants(curve)
    cone = cone_mod.cone_equation(pair)
    dual = cov.dual_curve(pair)
    report = {
        "command": "covariants",
        "input": text,
        "b": [print_poly(bi) for bi in b],
        "g4": print_poly(pair.g4),
        "g6": print_poly(pair.g6),
        "cone": print_poly(cone.F),
        "dual_curve": print_poly(dual.G),
        "dual_degree": dual.G.homogeneous_degree(
            {**{v: 0 for v in dual.G.variables}, "s": 1, "t": 1, "u": 1}),
        "input_smoothness": _smoothness_report(curve, rng),
    }
    return report, EXIT_OK


def cmd_j(args, rng) -> tuple:
    curve, text = _load_quartic(args.quartic)
    if curve.parameters:
        raise InputError("j evaluation needs a parameter-free quartic")
    point = parse_point(args.point, "P2")
    pair = cov.covariants(curve)
    at = {"s": point.coordinates[0], "t": point.coordinates[1],
          "u": point.coordinates[2]}
    g4v = pair.g4.eval_at(at)
    g6v = pair.g6.eval_at(at)
    G = 4 * g4v ** 3 - 27 * g6v ** 2
    report = {
        "command": "j",
        "input": text,
        "point": _point_json(point.coordinates),
        "g4_value": _frac(g4v),
        "g6_value": _frac(g6v),
        "dual_curve_value": _frac(G),
    }
    try:
        value = cov.j_eval(pair, point)
        report["status"] = "ok"
        report["j"] = _frac(value)
    except cov.IndeterminateJ:
        report["status"] = "indeterminate"
    except cov.OnDualCurve:
        report["status"] = "on_dual_curve"
    return report, EXIT_OK


def _aronhold_json(rep: octad_mod.AronholdReport) -> dict:
    return {
        "coplanarity_determinants_computed": len(rep.coplanarity),
        "coplanar_quadruples": [list(q) for q in rep.coplanar_quadruples],
        "net_dimension": rep.net_dimension,
        "hessian_smooth": rep.hessian_smooth,
        "hessian_macaulay_resultant":
            None if rep.hessian_resultant is None else _frac(rep.hessian_resultant),
        "verdict": rep.verdict,
    }


def cmd_octad(args, rng) -> tuple:
    action = args.action
    if action in ("check", "net", "hessian", "eighth"):
        points = _load_points(args.points, (7,))
    else:
        points = _load_points(args.points, (7, 8))

    if action == "check":
        rep = octad_mod.aronhold_check(points, rng=rng)
        return {"command": "octad.check", **_aronhold_json(rep)}, EXIT_OK

    net = octad_mod.net_from_heptad(points[:7])
    if action == "net":
        return {"command": "octad.net",
                "dimension": 3,
                "matrices": [_matrix_json(m) for m in net.matrices]}, EXIT_OK
    if action == "hessian":
        hq = octad_mod.hessian_quartic(net, rng=rng)
        return {"command": "octad.hessian",
                "quartic": print_poly(hq.quartic),
                "smooth": hq.smooth,
                "macaulay_resultant": _frac(hq.resultant)}, EXIT_OK
    if action == "eighth":
        octad = octad_mod.eighth_point(net, rng=rng)
        verified = all(octad_mod.quadric_eval(m, octad.point(8)) == 0
                       for m in net.matrices)
        return {"command": "octad.eighth",
                "eighth_point": _point_json(octad.point(8)),
                "verified_on_generators": verified,
                "octad": [_point_json(p) for p in octad.points]}, EXIT_OK

    if len(points) == 8:
        net = octad_mod.net_from_heptad(points[:7])
        octad = octad_mod.Octad(points, net=net)
    else:
        octad = octad_mod.eighth_point(net, rng=rng)

    if action == "bitangents":
        certs = octad_mod.all_bitangents(octad, net, jobs=args.jobs)
        lines = {tuple(c.line) for c in certs}
        return {"command": "octad.bitangents",
                "count": len(certs),
                "distinct_lines": len(lines) == len(certs),
                "entries": [{
                    "pair": list(c.pair),
                    "line": _point_json(c.line),
                    "restriction": print_poly(c.restriction),
                    "square_root": print_poly(c.square_root),
                } for c in certs]}, EXIT_OK

    if action == "cremona":
        if not args.center:
            raise InputError("cremona needs --center i,j,k,l")
        try:
            center = tuple(int(part) for part in args.center.split(","))
        except ValueError:
            raise InputError(f"malformed --center {args.center!r}")
        result = octad_mod.cremona_octad(octad, center, net=net)
        old_h = result.normalized_source_net.symbol_matrix().det()
        new_h = result.net.symbol_matrix().det()
        label = theta_mod.ThetaChar.from_quadruple(*center).label()
        return {"command": "octad.cremona",
                "center": list(center),
                "center_theta_label": list(label) if isinstance(label, tuple) else label,
                "determinant_preserved": result.det_preserved,
                "hessian_scalar_equal": old_h == new_h,
                "new_octad": [_point_json(p) for p in result.octad.points],
                "new_net": [_matrix_json(m) for m in result.net.matrices],
                "normalized_source_net":
                    [_matrix_json(m) for m in result.normalized_source_net.matrices]}, EXIT_OK

    if action == "gale":
        rep = octad_mod.gale_transform(octad)
        return {"command": "octad.gale",
                "projected_points": [_point_json(p) for p in rep.points],
                "collinear_triples": [list(t) for t in rep.collinear_triples],
                "six_on_conic": [list(t) for t in rep.conic_six_tuples],
                "checks_pass": rep.ok}, EXIT_OK

    raise InputError(f"unknown octad action {action!r}")


def cmd_theta(args, rng) -> tuple:
    if args.action == "count":
        model = theta_mod.build_model()
        odd = sum(1 for c in model if c.is_odd())
        count = theta_mod.aronhold_enumerate("count", jobs=args.jobs)
        return {"command": "theta.count",
                "odd": odd, "even": len(model) - odd,
                "aronhold": count}, EXIT_OK
    if args.action == "aronhold":
        systems = theta_mod.aronhold_enumerate("list", jobs=args.jobs)
        hist = theta_mod.even_fiber_histogram(systems)
        report = {"command": "theta.aronhold",
                  "count": len(systems),
                  "fiber_sizes": sorted(set(hist.values())),
                  "fibers": len(hist)}
        if args.list:
            report["systems"] = [[list(p) for p in s.pair_labels()] for s in systems]
        return report, EXIT_OK
    raise InputError(f"unknown theta action {args.action!r}")


def cmd_s4(args, rng) -> tuple:
    raw = args.lam
    if raw != "symbolic":
        from .polyio import parse_rational

        raw = parse_rational(raw)
    family = cone_mod.s4_family(raw)
    report = {
        "command": "s4",
        "lambda": _frac(family.lam) if isinstance(family.lam, Fraction) else "symbolic",
        "g4": print_poly(family.pair.g4),
        "g6": print_poly(family.pair.g6),
        "cone": print_poly(family.cone.F),
        "branch_quartic": print_poly(family.branch_quartic),
        "identities": {
            "stu_squared": True,
            "branch_scaling_16": True,
        },
    }
    if family.gamma is not None:
        report["gamma"] = _frac(family.gamma)
        report["planes"] = [[print_poly(eq) for eq in plane] for plane in family.planes]
        report["identities"]["planes_in_cone"] = True
        report["W"] = print_poly(family.W)
    else:
        report["planes_omitted"] = family.planes_omitted_reason
    if family.lam == 0:
        fermat = cov.QuarticCurve(parse_poly("x^4+y^4+z^4", "xyz"))
        fermat_cone = cone_mod.cone_equation(cov.covariants(fermat))
        report["fermat_consistent"] = family.cone.F == fermat_cone.F
    return report, EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quartic-cones",
        description="Exact pipelines from plane quartics to sextic double cones, "
                    "nets of quadrics, Cayley octads, and theta characteristics.")
    parser.add_argument("--format", choices=("json", "text"),
                        default=os.environ.get(FORMAT_ENV, "json"),
                        help=f"output format (default from ${FORMAT_ENV}, else json)")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for randomized coordinate changes (default 0)")
    parser.add_argument("--jobs", type=int, default=1,
                        help="worker processes for bitangent sweeps and enumeration")
    parser.add_argument("-v", "--verbose", action="store_true",
                        help="timing notes on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("covariants", help="line restriction, g4/g6, cone, dual curve")
    p.add_argument("quartic", help="file with a quartic expression in x, y, z")
    p.set_defaults(func=cmd_covariants)

    p = sub.add_parser("j", help="exact j-value of the line section at a dual point")
    p.add_argument("quartic")
    p.add_argument("--point", required=True, help="s,t,u rationals")
    p.set_defaults(func=cmd_j)

    p = sub.add_parser("octad", help="net / Hessian / eighth point / bitangents / "
                                     "cremona / gale / check")
    p.add_argument("action", choices=("check", "net", "hessian", "eighth",
                                      "bitangents", "cremona", "gale"))
    p.add_argument("points", help="points file (7 or 8 points of P3)")
    p.add_argument("--center", help="four labels i,j,k,l for cremona")
    p.set_defaults(func=cmd_octad)

    p = sub.add_parser("theta", help="theta-characteristic counts and Aronhold systems")
    p.add_argument("action", choices=("count", "aronhold"))
    p.add_argument("--list", action="store_true", help="list the 288 systems")
    p.set_defaults(func=cmd_theta)

    p = sub.add_parser("s4", help="the symmetric quartic family and its special surfaces")
    p.add_argument("--lambda", dest="lam", required=True,
                   help='rational value or "symbolic"')
    p.set_defaults(func=cmd_s4)
    return parser


def main(argv=None) -> int:
    import time

    parser = build_parser()
    args = parser.parse_args(argv)
    rng = random.Random(args.seed)
    started = time.time()
    try:
        report, code = args.func(args, rng)
    except (InputError, ParseError, ValueError) as err:
        sys.stderr.write(f"input error: {err}\n")
        return EXIT_INPUT
    except PolyError as err:
        sys.stderr.write(f"error: {err}\n")
        return EXIT_MATH
    if args.verbose:
        sys.stderr.write(f"{report.get('command', args.command)}: "
                         f"{time.time() - started:.3f}s (seed {args.seed})\n")
    sys.stdout.write(_render(report, args.format))
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
