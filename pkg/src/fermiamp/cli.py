"""Command-line interface.

Angles are in radians. Handy values: pi/4 = 0.7853981634 (maximal
entanglement angle, and gamma at infinite acceleration), 1/sqrt(2) =
0.7071067812.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import asdict

from . import analysis, reduction, states, verify
from .states import StateParams

EXIT_OK, EXIT_VERIFY_FAILED, EXIT_BAD_CONFIG = 0, 1, 2

_FAMILY_NAMES = {name.replace("_", "-"): name for name in states.FAMILIES}


class ConfigError(ValueError):
    pass


def _num(x: float) -> str:
    return f"{x:.12g}"


def _float_list(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _params(args, weight: float | None = None, gamma: float = 0.0) -> StateParams:
    family = _FAMILY_NAMES[args.state]
    if weight is None:
        weight = args.alpha if family in states.PURE_FAMILIES else args.fidelity
    if weight is None:
        need = "--alpha" if family in states.PURE_FAMILIES else "--fidelity"
        raise ConfigError(f"state {args.state} requires {need}")
    try:
        if family in states.PURE_FAMILIES:
            return StateParams(gamma=gamma, q_r=args.qr, alpha=weight)
        return StateParams(gamma=gamma, q_r=args.qr, fidelity=weight)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _points_json(points) -> list[dict]:
    return [asdict(p) for p in points]


def cmd_curve(args) -> str:
    family = _FAMILY_NAMES[args.state]
    curve = analysis.negativity_curve(family, _params(args), args.grid)
    if args.format == "json":
        rows = [{"gamma": float(g), "negativity": float(v)} for g, v in zip(curve.grid, curve.values)]
        return json.dumps(rows) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["gamma", "negativity"])
    w.writerows((_num(g), _num(v)) for g, v in zip(curve.grid, curve.values))
    return buf.getvalue()


def cmd_matrix(args) -> str:
    family = _FAMILY_NAMES[args.state]
    params = _params(args, gamma=args.gamma)
    if args.source == "closed-form":
        if family not in reduction.CLOSED_FORM_KINDS:
            raise ConfigError(f"no closed form for {args.state}")
        red = reduction.closed_form_reduced(family, params)
    else:
        red = reduction.trace_out_region_II(states.joint_density(family, params))
    if args.format == "json":
        return json.dumps({
            "basis": list(reduction.REDUCED_BASIS),
            "provenance": red.provenance,
            "corrections": list(red.corrections),
            "matrix": red.matrix.tolist(),
        }) + "\n"
    return reduction.format_matrix(red)


def _variation(args, weight=None):
    family = _FAMILY_NAMES[args.state]
    curve = analysis.negativity_curve(family, _params(args, weight), args.grid)
    return analysis.variation_points(curve)


def cmd_variation(args) -> str:
    points = _variation(args)
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["gamma_star", "kind", "value"])
        w.writerows((_num(p.gamma_star), p.kind, _num(p.value)) for p in points)
        return buf.getvalue()
    return json.dumps(_points_json(points)) + "\n"


def cmd_threshold(args) -> str:
    family = _FAMILY_NAMES[args.state]
    if family not in states.PURE_FAMILIES:
        raise ConfigError("threshold search needs a pure state (phi-plus, phi-minus, phi-star)")
    res = analysis.amplification_threshold(args.qr, family, args.tol, args.grid)
    out = {"q_r": res.q_r, "status": res.status, "alpha_star": res.alpha_star, "tol": res.tol}
    if res.status == "non_monotone":
        out = {"q_r": res.q_r, "status": res.status, "non_monotone_bracket": list(res.bracket)}
    return json.dumps(out) + "\n"


def cmd_sweep(args) -> str:
    family = _FAMILY_NAMES[args.state]
    pure = family in states.PURE_FAMILIES
    values = args.alpha_list if pure else args.fidelity_list
    if not values:
        raise ConfigError(f"sweep over {args.state} requires {'--alpha' if pure else '--fidelity'} values")
    rows = [(v, _variation(args, v)) for v in values]
    if args.format == "json":
        return json.dumps([{"param": v, "points": _points_json(pts)} for v, pts in rows]) + "\n"
    width = max((len(pts) for _, pts in rows), default=0)
    header = ["param", "count"]
    for i in range(1, width + 1):
        header += [f"gamma_{i}", f"kind_{i}"]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for v, pts in rows:
        row = [_num(v), str(len(pts))]
        for p in pts:
            row += [_num(p.gamma_star), p.kind]
        w.writerow(row + [""] * (len(header) - len(row)))
    return buf.getvalue()


def cmd_verify(args) -> tuple[str, int]:
    results = verify.run_all()
    passed = all(r.passed for r in results)
    summary = {
        "passed": passed,
        "n_checks": len(results),
        "n_failed": sum(not r.passed for r in results),
        "checks": [asdict(r) for r in results],
    }
    return json.dumps(summary, indent=2) + "\n", EXIT_OK if passed else EXIT_VERIFY_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fermiamp",
        description="Negativity of fermionic Alice-Bob states with Bob uniformly accelerated.",
        epilog="Angles in radians: pi/4 = 0.7853981634, 1/sqrt(2) = 0.7071067812.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, weight_lists=False, default_format="csv", formats=("csv", "json")):
        p.add_argument("--state", choices=sorted(_FAMILY_NAMES), default="phi-plus")
        if weight_lists:
            p.add_argument("--alpha", dest="alpha_list", type=_float_list, default=None,
                           help="comma-separated entanglement angles (radians)")
            p.add_argument("--fidelity", dest="fidelity_list", type=_float_list, default=None,
                           help="comma-separated mixing fidelities")
        else:
            p.add_argument("--alpha", type=float, help="entanglement angle in [0, pi/2] (radians)")
            p.add_argument("--fidelity", type=float, help="mixing fidelity F in [0, 1]")
        p.add_argument("--qr", type=float, default=1.0,
                       help="right-mode Unruh weight q_R in [0, 1]; 1 is the single-mode approximation")
        p.add_argument("--grid", type=int, default=analysis.DEFAULT_GRID_N, help="gamma grid points")
        p.add_argument("--format", choices=formats, default=default_format)
        p.add_argument("-o", "--output", help="write here instead of standard output")

    common(sub.add_parser("curve", help="negativity against gamma on [0, pi/4]"))
    p = sub.add_parser("matrix", help="8x8 reduced state of Alice and Bob's region I")
    common(p, default_format="text", formats=("text", "json"))
    p.add_argument("--gamma", type=float, default=0.0, help="acceleration parameter in [0, pi/4]")
    p.add_argument("--source", choices=("oracle", "closed-form"), default="oracle")
    common(sub.add_parser("variation", help="interior extrema of the negativity curve"), default_format="json")
    p = sub.add_parser("threshold", help="smallest alpha showing amplification")
    common(p, default_format="json")
    p.add_argument("--tol", type=float, default=1e-4, help="bisection tolerance on alpha")
    common(sub.add_parser("sweep", help="variation points over several alpha or F values"), weight_lists=True)
    p = sub.add_parser("verify", help="run the invariant and cross-check suites")
    p.add_argument("-o", "--output")
    return parser


_COMMANDS = {
    "curve": cmd_curve,
    "matrix": cmd_matrix,
    "variation": cmd_variation,
    "threshold": cmd_threshold,
    "sweep": cmd_sweep,
}


def _validate(args):
    if getattr(args, "grid", 3) < 3:
        raise ConfigError(f"--grid must be at least 3, got {args.grid}")
    if getattr(args, "tol", 1.0) <= 0:
        raise ConfigError("--tol must be positive")
    if hasattr(args, "qr") and not 0.0 <= args.qr <= 1.0:
        raise ConfigError(f"--qr={args.qr} outside [0, 1]")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        _validate(args)
        if args.command == "verify":
            text, code = cmd_verify(args)
        else:
            text, code = _COMMANDS[args.command](args), EXIT_OK
    except ConfigError as exc:
        print(f"fermiamp: error: {exc}", file=sys.stderr)
        return EXIT_BAD_CONFIG
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
