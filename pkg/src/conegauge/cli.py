"""``conegauge`` command line.

Exit codes: 0 success, 2 bad input, 3 diagnostic disagreement or failed
verification, 4 solver did not converge.
"""

import argparse
import json
import sys

import numpy as np

from . import cones as cone_ops
from .descent import Termination, solve
from .exceptions import ConeError, DimensionError, UnsupportedError
from .gauge import (
    DEFAULT_SEED,
    FiniteGauge,
    canonical_gauge,
    classify_by_sign,
    evaluate,
    gauge_values,
    oriented_distance,
    verify_gauge_axioms,
)
from .jsonio import load_cone, load_gauge, load_problem, write_atomic
from .problems import get_problem

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_DISAGREE = 3
EXIT_NOT_CONVERGED = 4


class InputError(Exception):
    pass


def fmt(v):
    return format(float(v), ".17g")


def parse_point(text):
    try:
        return np.array([float(v) for v in text.split(",")])
    except ValueError:
        raise InputError(f"cannot parse point {text!r}") from None


def _emit(obj, out=None):
    text = json.dumps(obj, indent=2) + "\n"
    if out:
        write_atomic(out, text)
    else:
        sys.stdout.write(text)


def cmd_cone_check(args):
    cone = load_cone(args.cone)
    result = {"kind": cone.kind, "dim": cone.dim}
    if isinstance(cone, cone_ops.PolyhedralCone):
        result["pointed"] = cone_ops.is_pointed(cone, args.tol)
        result["nonempty_interior"] = cone_ops.has_nonempty_interior(cone, args.tol)
        result["dual_generators"] = cone.dual_generators.tolist()
    else:
        result["pointed"] = result["nonempty_interior"] = True
    _emit(result)
    return EXIT_OK if result["pointed"] and result["nonempty_interior"] else EXIT_DISAGREE


def cmd_gauge_eval(args):
    g = load_gauge(args.gauge)
    x = parse_point(args.point)
    result = {"point": x.tolist()}
    if isinstance(g, FiniteGauge):
        value, idx = evaluate(g, x, return_index=True)
        result.update(phi_value=value, index=idx)
    else:
        result["phi_value"] = gauge_values(g, x)
    _emit(result)
    return EXIT_OK


def cmd_classify(args):
    cone = load_cone(args.cone)
    x = parse_point(args.point)
    label = cone_ops.classify_dual(cone, x, args.tol)
    result = {"point": x.tolist(), "dual_score": cone_ops.dual_score(cone, x), "label": label.label}
    code = EXIT_OK
    if args.gauge:
        g = load_gauge(args.gauge)
        if g.cone.dim != cone.dim:
            raise DimensionError("gauge and cone dimensions differ")
        sign_label = classify_by_sign(g, x, args.tol)
        result.update(phi_value=gauge_values(g, x), sign_label=sign_label.label, agree=sign_label == label)
        if sign_label != label:
            code = EXIT_DISAGREE
    _emit(result)
    return code


def cmd_distance(args):
    cone = load_cone(args.cone)
    x = parse_point(args.point)
    _emit(
        {
            "point": x.tolist(),
            "oriented_distance": oriented_distance(cone, x),
            "projection": cone_ops.project_onto_minus_k(cone, x).tolist(),
            "in_minus_k": cone_ops.contains_minus_k(cone, x),
        }
    )
    return EXIT_OK


def levelset_rows(g, xmin, xmax, ymin, ymax, steps):
    xs = np.linspace(xmin, xmax, steps + 1)
    ys = np.linspace(ymin, ymax, steps + 1)
    pts = np.array([[x, y] for y in ys for x in xs])
    phi = gauge_values(g, pts)
    return [f"{fmt(p[0])},{fmt(p[1])},{fmt(v)}" for p, v in zip(pts, phi)]


def cmd_levelset(args):
    g = load_gauge(args.gauge)
    if g.cone.dim != 2:
        raise InputError("levelset needs a 2-dimensional cone")
    try:
        xmin, xmax, ymin, ymax, steps = args.grid.split(",")
        xmin, xmax, ymin, ymax, steps = float(xmin), float(xmax), float(ymin), float(ymax), int(steps)
    except ValueError:
        raise InputError(f"bad grid {args.grid!r}; expected xmin,xmax,ymin,ymax,steps") from None
    if steps < 2:
        raise InputError("grid steps must be >= 2")
    text = "x,y,phi\n" + "\n".join(levelset_rows(g, xmin, xmax, ymin, ymax, steps)) + "\n"
    if args.out:
        write_atomic(args.out, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_descend(args):
    name, x0, cone, dual_set, cfg = load_problem(args.problem)
    try:
        obj = get_problem(name, len(x0))
    except KeyError as exc:
        raise InputError(exc.args[0]) from None
    g = FiniteGauge(cone, dual_set) if dual_set is not None else canonical_gauge(cone)
    trace = solve(obj, g, x0, cfg)
    summary = f"iters={trace.n_iters} theta={fmt(trace.theta_values[-1])} term={trace.termination.value}"
    if args.out:
        _emit(trace.to_dict(), args.out)
        print(summary)
    else:
        _emit(trace.to_dict())
        print(summary, file=sys.stderr)
    return EXIT_OK if trace.termination is Termination.CONVERGED else EXIT_NOT_CONVERGED


def cmd_verify(args):
    if args.samples < 1:
        raise InputError("--samples must be >= 1")
    g = load_gauge(args.gauge)
    report = verify_gauge_axioms(g, args.samples, args.seed, args.tol)
    _emit(report.to_dict())
    return EXIT_OK if report.passed else EXIT_DISAGREE


def build_parser():
    parser = argparse.ArgumentParser(prog="conegauge", description="Cone gauges, oriented distance and K-descent.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cone-check", help="validate a cone file")
    p.add_argument("--cone", required=True)
    p.add_argument("--tol", type=float, default=cone_ops.DEFAULT_TOL)
    p.set_defaults(func=cmd_cone_check)

    p = sub.add_parser("gauge-eval", help="evaluate a gauge at a point")
    p.add_argument("--gauge", required=True)
    p.add_argument("--point", required=True, help='comma separated, e.g. --point="-1,2"')
    p.set_defaults(func=cmd_gauge_eval)

    p = sub.add_parser("classify", help="position of a point relative to -K")
    p.add_argument("--cone", required=True)
    p.add_argument("--point", required=True)
    p.add_argument("--gauge")
    p.add_argument("--tol", type=float, default=cone_ops.DEFAULT_TOL)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("distance", help="oriented distance to -K")
    p.add_argument("--cone", required=True)
    p.add_argument("--point", required=True)
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("levelset", help="sample a 2-D gauge on a grid (CSV)")
    p.add_argument("--gauge", required=True)
    p.add_argument("--grid", required=True, help="xmin,xmax,ymin,ymax,steps")
    p.add_argument("--out")
    p.set_defaults(func=cmd_levelset)

    p = sub.add_parser("descend", help="run K-steepest descent on a registered problem")
    p.add_argument("--problem", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_descend)

    p = sub.add_parser("verify", help="property-check a gauge")
    p.add_argument("--gauge", required=True)
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--tol", type=float, default=1e-10)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if getattr(args, "tol", 0) < 0:
            raise InputError("--tol must be nonnegative")
        return args.func(args)
    except (InputError, ConeError, DimensionError, UnsupportedError, ValueError, KeyError, OSError) as exc:
        print(f"conegauge {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
