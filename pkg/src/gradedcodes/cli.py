"""Command-line entry point wiring the modules into pipelines.

Every subcommand is a thin composition of library operations; no logic
lives only here.  Output is deterministic: JSON is always emitted with
sorted keys, and nothing in the library uses randomness.

Exit codes: 0 success, 2 usage errors (including invalid domain inputs),
3 blown enumeration/distance budgets, 4 internal invariant violations.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import fixtures as fixtures_mod
from .chain import (
    height_filtration,
    homological_code,
    homology,
    load_complex,
    toric_complex,
)
from .errors import BudgetExceeded, GradedCodesError, InternalInvariantError
from .gf import parse_field_spec
from .gpoly import (
    GradedPolynomial,
    Hypersurface,
    affine_points,
    hypersurface_points,
    is_weighted_homogeneous,
    projective_solution_classes,
    space_counts,
    zeta_counts,
    zeta_series,
)
from .lincode import (
    DEFAULT_DISTANCE_BUDGET,
    InnerProduct,
    LinearCode,
    evaluation_code,
    is_self_orthogonal,
    min_distance,
    weight_distribution,
)
from .orbifold import bound_report
from .quantum import CssCode, css_from_pair, css_from_self_orthogonal, quantum_distance
from .wgeom import (
    DEFAULT_ENUM_BUDGET,
    OrbifoldData,
    WeightSystem,
    count_wp_points_formula,
    enumerate_wp_points,
)


def _weights(text: str) -> WeightSystem:
    return WeightSystem(int(w) for w in text.split(","))


def _emit(obj, as_json: bool, plain: str | None = None):
    if as_json:
        print(json.dumps(obj, indent=2, sort_keys=True))
    else:
        print(plain if plain is not None else json.dumps(obj, indent=2, sort_keys=True))


def _read_json(path: str) -> dict:
    if path == "-":
        return json.load(sys.stdin)
    with open(path) as handle:
        return json.load(handle)


def _write_json(obj: dict, path: str | None):
    text = json.dumps(obj, indent=2, sort_keys=True)
    if path:
        with open(path, "w") as handle:
            handle.write(text + "\n")
    else:
        print(text)


def _env_budget(name: str, fallback: int) -> int:
    value = os.environ.get(name)
    return int(value) if value else fallback


# --- subcommand implementations ----------------------------------------------------


def cmd_count(args) -> int:
    ws = _weights(args.weights)
    field = parse_field_spec(args.field)
    formula = count_wp_points_formula(ws, field.q)
    if args.enumerate:
        enumerated = len(enumerate_wp_points(ws, field, args.enum_budget))
        _emit(
            {
                "weights": list(ws),
                "field": field.spec_string(),
                "well_formed": ws.well_formed,
                "formula": formula,
                "enumerated": enumerated,
            },
            args.json,
            plain=f"{formula} (enumerated: {enumerated})",
        )
    else:
        _emit(
            {
                "weights": list(ws),
                "field": field.spec_string(),
                "well_formed": ws.well_formed,
                "formula": formula,
            },
            args.json,
            plain=str(formula),
        )
    return 0


def _points_document(ws, field, points) -> dict:
    return {
        "weights": list(ws),
        "field": field.spec_string(),
        "well_formed": ws.well_formed,
        "points": [p.to_json(ws, field) for p in points],
    }


def cmd_points(args) -> int:
    ws = _weights(args.weights)
    field = parse_field_spec(args.field)
    points = enumerate_wp_points(ws, field, args.enum_budget)
    doc = _points_document(ws, field, points)
    plain = "\n".join(
        "[" + ":".join(str(x) for x in p.rep) + "]" for p in points
    )
    _emit(doc, args.json, plain=plain)
    return 0


def cmd_surface(args) -> int:
    ws = _weights(args.weights)
    field = parse_field_spec(args.field)
    f = GradedPolynomial.parse(field, len(ws), args.poly)
    verdict = is_weighted_homogeneous(f, ws)
    doc: dict = {
        "weights": list(ws),
        "field": field.spec_string(),
        "well_formed": ws.well_formed,
        "poly": f.to_text(),
        "homogeneous": verdict.homogeneous,
        "degrees": list(verdict.degrees),
        "budget": args.enum_budget,
    }
    if args.affine:
        if args.chart is not None:
            surface = Hypersurface(ws, f, field)
            sols = hypersurface_points(
                surface, mode="affine", chart=args.chart, budget=args.enum_budget
            )
            doc["mode"] = f"affine_chart({args.chart})"
        else:
            sols = affine_points(f, args.enum_budget)
            doc["mode"] = "affine"
        doc["count"] = len(sols)
        if args.points:
            doc["solutions"] = [list(s) for s in sols]
        _emit(doc, args.json, plain=str(len(sols)) if not args.points else None)
        return 0
    doc["mode"] = "projective"
    points = projective_solution_classes(f, ws, args.enum_budget)
    doc["count"] = len(points)
    if not verdict.homogeneous:
        doc["note"] = (
            "polynomial is inhomogeneous; counting scaling classes of the "
            "zero set rather than orbits"
        )
    if args.points:
        doc["points"] = [p.to_json(ws, field) for p in points]
        _emit(doc, args.json)
    else:
        _emit(doc, args.json, plain=str(len(points)))
    return 0


def cmd_zeta(args) -> int:
    ws = _weights(args.weights)
    field = parse_field_spec(args.field)
    if args.space:
        counts = space_counts(ws, field.q, args.depth)
        subject = "space"
    else:
        f = GradedPolynomial.parse(field, len(ws), args.poly)
        counts = zeta_counts(f, ws, args.depth, args.enum_budget)
        subject = f.to_text()
    series = zeta_series(counts)
    doc = {
        "weights": list(ws),
        "field": field.spec_string(),
        "subject": subject,
        "depth": args.depth,
        "counts": list(counts),
        "series": [[z.numerator, z.denominator] for z in series],
    }
    plain = f"counts: {list(counts)}\nseries: {[str(Fraction(n, d)) for n, d in doc['series']]}"
    _emit(doc, args.json, plain=plain)
    return 0


def cmd_code_build(args) -> int:
    ws = _weights(args.weights)
    field = parse_field_spec(args.field)
    if args.surface:
        f = GradedPolynomial.parse(field, len(ws), args.surface)
        points = projective_solution_classes(f, ws, args.enum_budget)
    else:
        points = enumerate_wp_points(ws, field, args.enum_budget)
    code = evaluation_code(ws, args.degree, points, field)
    _write_json(code.to_json(), args.out)
    return 0


def cmd_code_analyze(args) -> int:
    code = LinearCode.from_json(_read_json(args.code))
    ip = InnerProduct(args.ip)
    dist = min_distance(code, args.distance_budget)
    doc = {
        "length": code.length,
        "dimension": code.k,
        "min_distance": dist.to_json(),
        "self_orthogonal": is_self_orthogonal(code, ip).ok,
        "inner_product": ip.value,
    }
    if code.field.q**code.k <= args.distance_budget:
        doc["weight_distribution"] = {
            str(w): c for w, c in sorted(weight_distribution(code, args.distance_budget).items())
        }
    _emit(doc, True)
    return 0


def cmd_css_lift(args) -> int:
    code = LinearCode.from_json(_read_json(args.code))
    lifted = css_from_self_orthogonal(code, InnerProduct(args.ip))
    quantum_distance(lifted, args.distance_budget)
    _write_json(lifted.to_json(), args.out)
    return 0


def cmd_css_pair(args) -> int:
    c1 = LinearCode.from_json(_read_json(args.c1))
    c2 = LinearCode.from_json(_read_json(args.c2))
    paired = css_from_pair(c1, c2)
    quantum_distance(paired, args.distance_budget)
    _write_json(paired.to_json(), args.out)
    return 0


def cmd_css_distance(args) -> int:
    code = CssCode.from_json(_read_json(args.css))
    info = quantum_distance(code, args.budget)
    _emit(
        {"n": code.n, "k": code.k, "distance": info.to_json()},
        args.json,
        plain=f"[[{code.n},{code.k}]] distance: {info.value} ({info.kind})",
    )
    return 0


def cmd_chain_validate(args) -> int:
    complex_ = load_complex(_read_json(args.complex))
    _emit(
        {
            "valid": True,
            "degrees": [complex_.lo, complex_.hi],
            "dims": {str(d): complex_.dim(d) for d in complex_.degrees()},
        },
        args.json,
        plain=f"valid complex, degrees [{complex_.lo}, {complex_.hi}]",
    )
    return 0


def cmd_chain_homology(args) -> int:
    report = homology(load_complex(_read_json(args.complex)))
    _emit(
        report.to_json(),
        args.json,
        plain="\n".join(f"H_{d} = {b}" for d, b in sorted(report.betti.items())),
    )
    return 0


def cmd_chain_code(args) -> int:
    complex_ = load_complex(_read_json(args.complex))
    code = homological_code(complex_, args.degree, args.distance_budget)
    _write_json(code.to_json(), args.out)
    return 0


def cmd_chain_toric(args) -> int:
    _write_json(toric_complex(args.L).to_json(), args.out)
    return 0


def cmd_chain_filter(args) -> int:
    doc = _read_json(args.points)
    ws = WeightSystem(doc["weights"])
    field = parse_field_spec(doc["field"])
    from .wgeom import point_from_canonical_rep

    points = [
        point_from_canonical_rep(tuple(rec["rep"]), ws, field)
        for rec in doc["points"]
    ]
    thresholds = [
        float("inf") if t in ("inf", "oo") else int(t)
        for t in args.thresholds.split(",")
    ]
    filtration = height_filtration(points, ws, field, thresholds)
    _emit(
        filtration.to_json(),
        args.json,
        plain="\n".join(
            f"h <= {lvl['threshold']}: dim {lvl['dim']}"
            for lvl in filtration.to_json()["levels"]
        ),
    )
    return 0


def cmd_bound(args) -> int:
    code = CssCode.from_json(_read_json(args.css))
    if code.distance.kind == "unknown":
        quantum_distance(code, args.distance_budget)
    census = eps = None
    if args.census:
        census = OrbifoldData.from_json(_read_json(args.census))
    elif args.epsilon is not None:
        eps = Fraction(args.epsilon)
    else:
        census = OrbifoldData([], "manual")  # no singular data -> eps = 0
    report = bound_report(code, census=census, eps=eps, chi=args.chi)
    _emit(report.to_json(), True)
    return 0


def cmd_fixtures(args) -> int:
    return fixtures_mod.run(names=args.names or None, update=args.update)


# --- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gradedcodes",
        description="Weighted projective point counts, graded evaluation codes, "
        "CSS lifts, chain-complex codes, and orbifold-corrected bounds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    enum_budget = _env_budget("GRADEDCODES_ENUM_BUDGET", DEFAULT_ENUM_BUDGET)
    dist_budget = _env_budget("GRADEDCODES_DISTANCE_BUDGET", DEFAULT_DISTANCE_BUDGET)

    def add_json(p):
        p.add_argument("--json", action="store_true", help="emit JSON")

    p = sub.add_parser("count", help="count rational points of WP(w)")
    p.add_argument("--weights", required=True)
    p.add_argument("--field", required=True)
    p.add_argument("--enumerate", action="store_true", help="also enumerate as a cross-check")
    p.add_argument("--enum-budget", type=int, default=enum_budget)
    add_json(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("points", help="enumerate canonical points of WP(w)")
    p.add_argument("--weights", required=True)
    p.add_argument("--field", required=True)
    p.add_argument("--enum-budget", type=int, default=enum_budget)
    add_json(p)
    p.set_defaults(func=cmd_points)

    p = sub.add_parser("surface", help="points of a hypersurface / zero set")
    p.add_argument("--weights", required=True)
    p.add_argument("--field", required=True)
    p.add_argument("--poly", required=True)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--count", action="store_true", help="print the point count (default)")
    group.add_argument("--points", action="store_true", help="list the points")
    p.add_argument("--affine", action="store_true", help="affine solutions instead of projective classes")
    p.add_argument("--chart", type=int, default=None, help="substitute x_chart = 1 (weight-1 chart)")
    p.add_argument("--enum-budget", type=int, default=enum_budget)
    add_json(p)
    p.set_defaults(func=cmd_surface)

    p = sub.add_parser("zeta", help="extension point counts and zeta series")
    p.add_argument("--weights", required=True)
    p.add_argument("--field", required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--poly")
    group.add_argument("--space", action="store_true", help="count the ambient space itself")
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--enum-budget", type=int, default=enum_budget)
    add_json(p)
    p.set_defaults(func=cmd_zeta)

    code_parser = sub.add_parser("code", help="classical evaluation codes")
    code_sub = code_parser.add_subparsers(dest="code_command", required=True)
    p = code_sub.add_parser("build", help="build an evaluation code")
    p.add_argument("--weights", required=True)
    p.add_argument("--field", required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--surface", help="restrict points to this hypersurface")
    p.add_argument("--enum-budget", type=int, default=enum_budget)
    p.add_argument("--out", help="output path (default: stdout)")
    p.set_defaults(func=cmd_code_build)
    p = code_sub.add_parser("analyze", help="distance / weights / self-orthogonality")
    p.add_argument("code", help="code JSON path or - for stdin")
    p.add_argument("--distance-budget", type=int, default=dist_budget)
    p.add_argument("--ip", choices=[i.value for i in InnerProduct], default="euclidean")
    p.set_defaults(func=cmd_code_analyze)

    css_parser = sub.add_parser("css", help="CSS quantum codes")
    css_sub = css_parser.add_subparsers(dest="css_command", required=True)
    p = css_sub.add_parser("lift", help="lift a self-orthogonal code")
    p.add_argument("code", help="code JSON path or -")
    p.add_argument("--ip", choices=[i.value for i in InnerProduct], default="euclidean")
    p.add_argument("--distance-budget", type=int, default=dist_budget)
    p.add_argument("--out")
    p.set_defaults(func=cmd_css_lift)
    p = css_sub.add_parser("pair", help="CSS code from a dual-containing pair")
    p.add_argument("c1")
    p.add_argument("c2")
    p.add_argument("--distance-budget", type=int, default=dist_budget)
    p.add_argument("--out")
    p.set_defaults(func=cmd_css_pair)
    p = css_sub.add_parser("distance", help="recompute a CSS distance")
    p.add_argument("css", help="CSS JSON path or -")
    p.add_argument("--budget", type=int, default=dist_budget)
    add_json(p)
    p.set_defaults(func=cmd_css_distance)

    chain_parser = sub.add_parser("chain", help="chain complexes and their codes")
    chain_sub = chain_parser.add_subparsers(dest="chain_command", required=True)
    p = chain_sub.add_parser("validate", help="validate a complex JSON")
    p.add_argument("complex", nargs="?", default="-")
    add_json(p)
    p.set_defaults(func=cmd_chain_validate)
    p = chain_sub.add_parser("homology", help="Betti numbers")
    p.add_argument("complex", nargs="?", default="-")
    add_json(p)
    p.set_defaults(func=cmd_chain_homology)
    p = chain_sub.add_parser("code", help="degree-d homological CSS code")
    p.add_argument("complex", nargs="?", default="-")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--distance-budget", type=int, default=dist_budget)
    p.add_argument("--out")
    p.set_defaults(func=cmd_chain_code)
    p = chain_sub.add_parser("toric", help="L x L toric complex over GF(2)")
    p.add_argument("--L", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_chain_toric)
    p = chain_sub.add_parser("filter", help="height filtration of a point set")
    p.add_argument("points", help="points JSON (from `points --json`) or -")
    p.add_argument("--thresholds", required=True, help="comma list of ints or inf")
    add_json(p)
    p.set_defaults(func=cmd_chain_filter)

    p = sub.add_parser("bound", help="plain and refined Singleton bound report")
    p.add_argument("--css", required=True, help="CSS JSON path or -")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--census", help="census JSON path")
    group.add_argument("--epsilon", help="epsilon as a rational like 1/2")
    p.add_argument("--chi", type=int, default=None, help="Euler characteristic input for chi_orb")
    p.add_argument("--distance-budget", type=int, default=dist_budget)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("fixtures", help="replay the committed example corpus")
    p.add_argument("names", nargs="*", help="fixture names (default: all)")
    p.add_argument("--update", action="store_true", help="rewrite the committed expectations")
    p.set_defaults(func=cmd_fixtures)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 3
    except InternalInvariantError as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return 4
    except AssertionError as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return 4
    except (GradedCodesError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
