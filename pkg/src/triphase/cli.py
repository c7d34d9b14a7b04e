"""Command-line front end.

Machine summaries go out as JSON lines, sampled curves as CSV with a
trailing '#' comment carrying the run summary.  All floats are printed
with 17 significant digits so doubles round-trip exactly, and output for
a fixed seed and flag set is byte-identical across runs.

Exit codes: 0 success, 1 failed invariant sweep, 2 bad parameter or
range violation, 3 orthogonal states where a phase or geodesic needs an
overlap, 4 unreadable or malformed input file.
"""

from __future__ import annotations

import argparse
import json
import sys
from itertools import combinations

import numpy as np

from . import checks, evolution, geodesics, phases, states
from .errors import (
    InvalidStep,
    NotNormalized,
    OrthogonalityError,
    OutOfRange,
    TriphaseError,
)


class _InputError(Exception):
    """Unreadable or malformed input file; carries the exit code 4."""


def _fmt(value):
    return format(float(value), ".17g")


def _render(obj):
    """Compact JSON with 17-significant-digit floats."""
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ",".join(f"{json.dumps(k)}:{_render(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(_render(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _emit(text, out):
    if out:
        with open(out, "w") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _load_json(path):
    try:
        with open(path) as handle:
            return json.load(handle)
    except OSError as exc:
        raise _InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise _InputError(f"malformed JSON in {path}: {exc}") from exc


def _state_from_obj(obj, source):
    try:
        psi = states.state_from_json(obj)
        states.assert_normalized(psi)
    except (ValueError, TypeError, NotNormalized) as exc:
        raise _InputError(f"bad state in {source}: {exc}") from exc
    return psi


def _load_state(path):
    return _state_from_obj(_load_json(path), path)


def _load_state_list(path, expect=None):
    data = _load_json(path)
    if not isinstance(data, list):
        raise _InputError(f"{path} must hold a JSON list of states")
    if expect is not None and len(data) != expect:
        raise _InputError(f"{path} must hold exactly {expect} states, got {len(data)}")
    return [_state_from_obj(obj, path) for obj in data]


def cmd_phase_triangle(args):
    params = phases.TriangleParams(args.xi, args.eta, args.zeta, args.chi2)
    lifts = phases.triangle_states(params)
    rhos = [states.density_of(psi) for psi in lifts]
    results = [
        phases.pancharatnam_phase(params),
        phases.bargmann_phase(list(lifts)),
        phases.pancharatnam_phase_from_n(*(states.n_vector_of(p) for p in lifts)),
        phases.triangle_line_integral_phase(*rhos),
    ]
    echo = {"xi": args.xi, "eta": args.eta, "zeta": args.zeta, "chi2": args.chi2}
    lines = [
        _render({"method": r.method, "phase": r.value, "params": echo})
        for r in results
    ]
    discrepancy = max(
        phases.phase_distance(a.value, b.value) for a, b in combinations(results, 2)
    )
    lines.append(_render({"max_discrepancy": discrepancy}))
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_phase_bargmann(args):
    psis = _load_state_list(args.file)
    result = phases.bargmann_phase(psis)
    line = _render(
        {"method": result.method, "phase": result.value, "params": {"vertices": len(psis)}}
    )
    _emit(line + "\n", args.out)
    return 0


def cmd_geodesic(args):
    if args.samples < 2:
        raise OutOfRange(f"samples = {args.samples}, need at least 2")
    psi1 = _load_state(args.state1)
    psi2 = _load_state(args.state2)
    curve = geodesics.geodesic_between(states.density_of(psi1), states.density_of(psi2))
    if curve.length == 0.0:
        grid = np.array([0.0])
        summary = {"length": 0.0, "degenerate": True}
    else:
        grid = np.linspace(0.0, curve.length, args.samples)
        summary = {"length": curve.length, "degenerate": False}
    ns = states.n_vectors_of(curve(grid))
    if len(ns) >= 4:
        planar, affine_rank = geodesics.planarity_test(ns)
        summary.update(
            planar=planar, affine_rank=affine_rank, span_rank=geodesics.span_rank(ns)
        )
    else:
        summary.update(planar=None, affine_rank=None, span_rank=None)
    lines = ["s," + ",".join(f"n{k}" for k in range(1, 9))]
    for s_val, row in zip(grid, ns):
        lines.append(",".join([_fmt(s_val)] + [_fmt(v) for v in row]))
    lines.append("# " + _render(summary))
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_evolve(args):
    psis = _load_state_list(args.file, expect=3)
    rhos = [states.density_of(psi) for psi in psis]
    trajectory, geometric, closure = evolution.evolve_triangle(*rhos, step=args.step)
    header = ["s"]
    for k in (1, 2, 3):
        header += [f"re{k}", f"im{k}"]
    header += [f"n{k}" for k in range(1, 9)]
    header += ["phi_p", "phi_dyn"]
    lines = [",".join(header)]
    for idx in range(len(trajectory.s)):
        row = [trajectory.s[idx]]
        for k in range(3):
            row += [trajectory.psi[idx, k].real, trajectory.psi[idx, k].imag]
        row += list(trajectory.n[idx])
        row += [trajectory.phi_p[idx], trajectory.phi_dyn[idx]]
        lines.append(",".join(_fmt(v) for v in row))
    summary = {
        "total_phase": phases.principal_branch(trajectory.phi_p[-1]),
        "dynamical_phase": trajectory.phi_dyn[-1],
        "geometric_phase": geometric.value,
        "closure_defect": closure,
        "step": args.step,
    }
    lines.append("# " + _render(summary))
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _parse_overrides(pairs):
    overrides = {}
    for pair in pairs:
        name, sep, value = pair.partition("=")
        if not sep or not name:
            raise OutOfRange(f"tolerance override {pair!r} is not name=value")
        try:
            overrides[name] = float(value)
        except ValueError as exc:
            raise OutOfRange(f"tolerance override {pair!r}: bad float") from exc
    return overrides


def cmd_check(args):
    if args.trials < 1:
        raise OutOfRange(f"trials = {args.trials}, need at least 1")
    overrides = _parse_overrides(args.tol)
    try:
        report = checks.run_all(seed=args.seed, trials=args.trials, overrides=overrides)
    except KeyError as exc:
        raise OutOfRange(exc.args[0]) from exc
    lines = []
    for r in report["results"]:
        lines.append(
            _render(
                {
                    "check": r.name,
                    "value": r.value,
                    "tolerance": r.tolerance,
                    "bound": "lower"
                    if r.lower_bound
                    else ("interval" if isinstance(r.tolerance, tuple) else "upper"),
                    "trials": r.trials,
                    "passed": r.passed,
                }
            )
        )
    lines.append(
        _render(
            {
                "seed": report["seed"],
                "trials": report["trials"],
                "checks": len(report["results"]),
                "all_passed": report["all_passed"],
            }
        )
    )
    _emit("\n".join(lines) + "\n", args.out)
    return 0 if report["all_passed"] else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="triphase",
        description="Geometry and geometric phases of three-level pure states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "phase-triangle",
        help="triangle phase from every oracle, angles in radians",
    )
    p.add_argument("--xi", type=float, required=True)
    p.add_argument("--eta", type=float, required=True)
    p.add_argument("--zeta", type=float, required=True)
    p.add_argument("--chi2", type=float, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_phase_triangle)

    p = sub.add_parser("phase-bargmann", help="polygon phase from a JSON state list")
    p.add_argument("file")
    p.add_argument("--out")
    p.set_defaults(func=cmd_phase_bargmann)

    p = sub.add_parser("geodesic", help="sample the geodesic between two states")
    p.add_argument("state1")
    p.add_argument("state2")
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--out")
    p.set_defaults(func=cmd_geodesic)

    p = sub.add_parser("evolve", help="integrate a triangle loop and dump the trajectory")
    p.add_argument("file")
    p.add_argument("--step", type=float, default=1e-3)
    p.add_argument("--out")
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("check", help="run the seeded invariant sweeps")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument(
        "--tol",
        action="append",
        default=[],
        metavar="NAME=VALUE",
        help="override one check tolerance (repeatable)",
    )
    p.add_argument("--out")
    p.set_defaults(func=cmd_check)

    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except OrthogonalityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (OutOfRange, InvalidStep) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except TriphaseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
