"""Command-line front end.

Subcommands run the solvers and experiments and emit machine-readable output:
JSON reports (validating against schemas/report.json) or CSV curve samples.
Exit codes: 0 success, 1 domain error (not causal, infeasible), 2 usage error.
All output is a deterministic function of the arguments.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from heislor import curvature, geodesics, measure, minkowski_iso, sr_metric
from heislor.geodesics import NotChronologicalError
from heislor.heisenberg_core import Event, NotCausalError
from heislor.minkowski_iso import IsoProblem, NoSolutionError


def _emit(text: str, path):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json(payload: dict, path):
    _emit(json.dumps(payload, sort_keys=True, indent=2) + "\n", path)


def _csv(header, rows, path):
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(repr(float(v)) for v in row))
    _emit("\n".join(lines) + "\n", path)


def _curve_rows(curve):
    pts = np.asarray(curve.points)
    return [(t, *pt) for t, pt in zip(curve.times, pts)]


def _cmd_iso_solve(args) -> int:
    prob = IsoProblem(args.a, args.b, args.c)
    sol = minkowski_iso.solve(prob)
    if args.format == "csv":
        if sol.case == minkowski_iso.CASE_EMPTY:
            raise NoSolutionError("no admissible curve to sample")
        curve = minkowski_iso.sample_solution(sol, prob, args.samples)
        _csv(("t", "x", "y"), _curve_rows(curve), args.output)
        return 0
    payload = {
        "kind": "iso-solve",
        "case": sol.case,
        "T": sol.T,
        "max_length": sol.max_length,
    }
    if sol.y_c is not None:
        payload["y_c"] = sol.y_c
    _json(payload, args.output)
    return 0


def _cmd_tau(args) -> int:
    value = geodesics.tau(Event(args.px, args.py, args.pz), Event(args.qx, args.qy, args.qz))
    _emit(repr(value) + "\n", args.output)
    return 0


def _cmd_geodesic(args) -> int:
    p = Event(args.px, args.py, args.pz)
    q = Event(args.qx, args.qy, args.qz)
    geo = geodesics.geodesic_between(p, q, n=args.samples)
    if isinstance(geo, geodesics.Geodesic):
        if args.format == "csv":
            ts = np.linspace(0.0, geo.t_max, args.samples)
            rows = []
            for t in ts:
                pt = geodesics.exp_point(geo.param, t)
                from heislor.heisenberg_core import group_mul

                pt = group_mul(geo.base, pt)
                rows.append((t, pt.x, pt.y, pt.z))
            _csv(("t", "x", "y", "z"), rows, args.output)
        else:
            payload = {
                "kind": "geodesic",
                "type": "timelike",
                "u": geo.param.u,
                "v": geo.param.v,
                "w": geo.param.w,
                "tau": geodesics.tau(p, q),
            }
            _json(payload, args.output)
        return 0
    # null case: sampled curve
    if args.format == "csv":
        _csv(("t", "x", "y", "z"), _curve_rows(geo), args.output)
    else:
        payload = {
            "kind": "geodesic",
            "type": "null",
            "tau": 0.0,
            "samples": int(len(geo.times)),
        }
        _json(payload, args.output)
    return 0


def _cmd_diamond_volume(args) -> int:
    p = Event(args.px, args.py, args.pz)
    q = Event(args.qx, args.qy, args.qz)
    payload = {
        "kind": "diamond-volume",
        "closed": measure.diamond_volume_closed(p, q),
    }
    if args.mc:
        est = measure.diamond_volume_mc(p, q, args.mc, args.seed)
        payload.update(
            {
                "mc": est.value,
                "stderr": est.stderr,
                "samples": est.samples,
                "seed": est.seed,
            }
        )
    _json(payload, args.output)
    return 0


def _cmd_hausdorff(args) -> int:
    center = Event(*args.center)
    rows = []
    probe = measure.dimension_probe(
        center,
        args.radius,
        (3, 4, 5),
        seed=args.seed,
        n_samples=args.samples,
        deltas=[args.delta, args.delta / 2.0, args.delta / 4.0],
    )
    for i, delta in enumerate(probe["deltas"]):
        lower, upper = measure.hausdorff_bounds(
            center, args.radius, delta, args.seed, n_samples=args.samples
        )
        rows.append(
            (
                delta,
                lower,
                upper,
                probe["dims"][3.0]["sums"][i],
                probe["dims"][4.0]["sums"][i],
                probe["dims"][5.0]["sums"][i],
            )
        )
    _csv(("delta", "lower", "upper", "sum_d3", "sum_d4", "sum_d5"), rows, args.output)
    return 0


def _cmd_diamond_box(args) -> int:
    p = Event(args.px, args.py, args.pz)
    q = Event(args.qx, args.qy, args.qz)
    report = sr_metric.diamond_in_box_check(p, q, args.samples, args.seed)
    rho = sr_metric.unit_diamond_inner_radius()
    payload = {
        "kind": "diamond-box",
        "inclusion_pass": bool(report["inclusion_pass"]),
        "samples": int(report["samples"]),
        "rho": rho,
        "D": 1.0 / rho,
        "C_estimate": _ball_box_constant(args.seed),
    }
    _json(payload, args.output)
    return 0


def _ball_box_constant(seed) -> float:
    # empirical upper ball-box constant: max of d(0,p) / max(|x|,|y|,sqrt|z|)
    rng = np.random.default_rng([seed, 999])
    pts = np.column_stack(
        [
            rng.uniform(-1.0, 1.0, 20000),
            rng.uniform(-1.0, 1.0, 20000),
            rng.uniform(-1.0, 1.0, 20000),
        ]
    )
    d = sr_metric._distance_from_origin(pts)
    norm = np.maximum(
        np.maximum(np.abs(pts[:, 0]), np.abs(pts[:, 1])), np.sqrt(np.abs(pts[:, 2]))
    )
    return float(np.max(d / norm))


def _cmd_curvature_check(args) -> int:
    numeric, analytic = curvature.midpoint_det_check()
    contradiction = curvature.juillet_contradiction()
    witnesses = []
    for t in (0.25, 0.5, 0.75):
        for N in (1, 2, 5, 10):
            if args.t is not None and t != args.t:
                continue
            if args.N is not None and N != args.N:
                continue
            witnesses.append(curvature.tmcp_violation_report(t, N, args.wmax))
    scan = curvature.appendix_limit_scan([0.0, 10.0, 20.0, 30.0, 40.0, 50.0])
    payload = {
        "kind": "curvature-check",
        "midpoint_det": numeric,
        "midpoint_det_analytic": analytic,
        "juillet_bound": contradiction["juillet_bound"],
        "bm_rhs": contradiction["bm_rhs"],
        "contradiction": contradiction["statement"],
        "tmcp_witnesses": witnesses,
        "appendix_scan": [[w, v] for w, v in scan],
    }
    _json(payload, args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="heislor",
        description="sub-Lorentzian Heisenberg geometry: solvers and experiments",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_common(sp):
        sp.add_argument("--output", default=None, help="write to file instead of stdout")
        sp.add_argument("--format", choices=("json", "csv"), default="json")
        sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("iso-solve", help="planar Lorentzian isoperimetric solver")
    sp.add_argument("a", type=float)
    sp.add_argument("b", type=float)
    sp.add_argument("c", type=float)
    sp.add_argument("--samples", type=int, default=1001)
    add_common(sp)
    sp.set_defaults(func=_cmd_iso_solve)

    sp = sub.add_parser("tau", help="time separation between two points")
    for name in ("px", "py", "pz", "qx", "qy", "qz"):
        sp.add_argument(name, type=float)
    add_common(sp)
    sp.set_defaults(func=_cmd_tau)

    sp = sub.add_parser("geodesic", help="maximizing geodesic between two points")
    for name in ("px", "py", "pz", "qx", "qy", "qz"):
        sp.add_argument(name, type=float)
    sp.add_argument("--samples", type=int, default=1001)
    add_common(sp)
    sp.set_defaults(func=_cmd_geodesic)

    sp = sub.add_parser("diamond-volume", help="volume of a causal diamond")
    for name in ("px", "py", "pz", "qx", "qy", "qz"):
        sp.add_argument(name, type=float)
    sp.add_argument("--mc", type=int, default=0, help="Monte Carlo sample count")
    add_common(sp)
    sp.set_defaults(func=_cmd_diamond_volume)

    sp = sub.add_parser("hausdorff", help="Hausdorff measure bounds for a CC ball")
    sp.add_argument("--center", type=float, nargs=3, default=(0.0, 0.0, 0.0))
    sp.add_argument("--radius", type=float, required=True)
    sp.add_argument("--delta", type=float, required=True)
    sp.add_argument("--samples", type=int, default=100000)
    add_common(sp)
    sp.set_defaults(func=_cmd_hausdorff)

    sp = sub.add_parser("diamond-box", help="diamond-in-box inclusion check")
    for name in ("px", "py", "pz", "qx", "qy", "qz"):
        sp.add_argument(name, type=float)
    sp.add_argument("--samples", type=int, default=100000)
    add_common(sp)
    sp.set_defaults(func=_cmd_diamond_box)

    sp = sub.add_parser("curvature-check", help="curvature-condition failure report")
    sp.add_argument("--t", type=float, default=None)
    sp.add_argument("--N", type=float, default=None)
    sp.add_argument("--wmax", type=float, default=200.0)
    add_common(sp)
    sp.set_defaults(func=_cmd_curvature_check)

    return parser


def run(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (
        NotCausalError,
        NotChronologicalError,
        NoSolutionError,
        ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
