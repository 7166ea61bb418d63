"""Command-line front end.

    conicangles figure N [--theta0 F ...] --format csv|json|svg [--out PATH]
    conicangles verify SUITE [--seed N] [--samples N]
    conicangles compute angle|gap|newton|limit [flags]

Exit status: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import math
import sys

from .conics import ConicSpec
from .errors import GeometryError
from .figures import emit_figure
from .kinematics import ObserverTrajectory, newtonian_collision_time, proper_time_gap
from .theorems import (
    InscribedConfig,
    expected_inscribed_angle,
    inscribed_angle,
    limit_scan,
    parabola_angle_measure,
)
from .verify import SUITES, run_verify

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

CONICS = {
    "circle": lambda a, c: ConicSpec.unit_circle(),
    "hyperbola": lambda a, c: ConicSpec.unit_hyperbola(),
    "rel-hyperbola": lambda a, c: ConicSpec.rel_hyperbola(a, c),
    "ellipse": lambda a, c: ConicSpec.ellipse(a, c),
}


def _num(v: float) -> str:
    return format(v, ".17g")


def _float_list(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _scenario_flags(p: argparse.ArgumentParser, defaults: bool) -> None:
    d = (lambda v: v) if defaults else (lambda v: None)
    p.add_argument("--theta0", type=float, default=d(0.7))
    p.add_argument("--theta1", type=float, default=d(1.0))
    p.add_argument("--theta2", type=float, default=d(-1.0))
    p.add_argument("--a", type=float, default=d(1.0))
    p.add_argument("--c", type=float, default=d(1.0))
    p.add_argument("--phiA", type=float, default=d(1.0))
    p.add_argument("--phiB", type=float, default=d(0.5))
    p.add_argument("--tauE", type=float, default=d(0.0))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="conicangles", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    fig = sub.add_parser("figure", help="write data for one of the six figures")
    fig.add_argument("figure_id", type=int, choices=range(1, 7), metavar="{1..6}")
    _scenario_flags(fig, defaults=False)
    fig.add_argument("--phi", type=float, default=None, help="isometry parameter for figures 3 and 4")
    fig.add_argument("--format", choices=("csv", "json", "svg"), required=True)
    fig.add_argument("--out", default=None, help="output path (default: stdout)")

    ver = sub.add_parser("verify", help="run seeded property batteries")
    ver.add_argument("suite", choices=("all",) + SUITES)
    ver.add_argument("--seed", type=int, default=42)
    ver.add_argument("--samples", type=int, default=1000)

    comp = sub.add_parser("compute", help="one-shot numeric result next to its closed form")
    comp.add_argument("quantity", choices=("angle", "gap", "newton", "limit"))
    _scenario_flags(comp, defaults=True)
    comp.add_argument("--conic", choices=tuple(CONICS) + ("parabola",), default="hyperbola")
    comp.add_argument("--alpha", type=float, default=3.0)
    comp.add_argument("--beta", type=float, default=1.0)
    comp.add_argument("--signature", choices=("minkowski", "euclidean"), default="minkowski")
    comp.add_argument("--c-list", type=_float_list, default=[10.0, 20.0, 40.0, 80.0, 160.0], dest="c_list")
    return parser


def _figure(args, out) -> int:
    keys = ("theta0", "theta1", "theta2", "a", "c", "phiA", "phiB", "tauE", "phi")
    params = {k: getattr(args, k) for k in keys if getattr(args, k) is not None}
    text = emit_figure(args.figure_id, params, args.format, args.out)
    if args.out is None:
        out.write(text)
    return EXIT_OK


def _compute(args, out) -> int:
    q = args.quantity
    if q == "angle":
        if args.conic == "parabola":
            numeric = parabola_angle_measure(args.a, args.theta0, args.theta1, args.theta2)
            closed = 0.5 * args.a * abs(args.theta1 - args.theta2)
            label = "parabola_angle_measure"
        else:
            cfg = InscribedConfig(CONICS[args.conic](args.a, args.c), args.theta0, args.theta1, args.theta2)
            numeric = inscribed_angle(cfg).value
            closed = expected_inscribed_angle(cfg)
            label = "inscribed_angle"
        out.write(f"{label} numeric={_num(numeric)} closed_form={_num(closed)}\n")
    elif q == "gap":
        traj = ObserverTrajectory(args.a, args.c)
        numeric = proper_time_gap(traj, args.tauE, args.phiA, args.phiB)
        closed = 2.0 * args.c / args.a * (args.phiA - args.phiB)
        out.write(f"proper_time_gap numeric={_num(numeric)} closed_form={_num(closed)}\n")
    elif q == "newton":
        if not args.a > 0:
            raise GeometryError("acceleration must be positive")
        numeric = newtonian_collision_time(args.a, args.alpha) - newtonian_collision_time(args.a, args.beta)
        closed = 2.0 * (args.alpha - args.beta) / args.a
        out.write(f"newtonian_collision_gap numeric={_num(numeric)} closed_form={_num(closed)}\n")
    else:
        scan = limit_scan(args.a, args.theta0, args.theta1, args.theta2, args.signature, args.c_list)
        out.write("c angle asymptote ratio\n")
        for c, ang, r in zip(scan.c_values, scan.angles, scan.asymptote_ratio):
            asym = args.a / (2.0 * c) * abs(args.theta1 - args.theta2)
            out.write(f"{_num(c)} {_num(ang)} {_num(asym)} {_num(r)}\n")
        order = scan.fitted_order
        out.write(f"fitted_order {'nan' if math.isnan(order) else _num(order)}\n")
    return EXIT_OK


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if args.command == "figure":
            return _figure(args, out)
        if args.command == "verify":
            if args.samples < 1:
                parser.error("--samples must be >= 1")
            report, ok = run_verify(args.suite, args.seed, args.samples)
            out.write(report)
            return EXIT_OK if ok else EXIT_FAIL
        return _compute(args, out)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    except (ValueError, OSError) as exc:
        print(f"conicangles: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def run() -> None:
    sys.exit(main())
