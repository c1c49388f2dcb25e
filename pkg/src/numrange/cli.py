"""Command line front end.

Subcommands: ``boundary``, ``curvature``, ``classify``, ``verify`` and
``demo-epigraph``.  Exit codes: 0 success / suites pass, 1 a theorem
suite failed, 2 usage or parse error, 3 numerical non-convergence.
Diagnostics go to stderr; data goes to stdout.  Identical arguments and
seed produce byte-identical output (pass ``--no-timestamp`` to strip the
one volatile field from JSON reports).
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from datetime import datetime, timezone

import numpy as np

from .boundary import boundary_curve
from .config import RunConfig
from .curvature import (
    classify_normalized,
    classify_point,
    curvature_estimate,
    epigraph_body,
    epigraph_exact_ratio,
)
from .errors import NonConvergenceError, ResolutionError, ValidationError
from .matrixio import parse_matrix
from .theorems import (
    ellipse_suite_report,
    find_corners,
    generator_suite,
    verify_donoghue,
    verify_hubner_upper,
    verify_thm3_corollary,
)

EXIT_OK = 0
EXIT_SUITE_FAIL = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3


def _config_from_args(args) -> RunConfig:
    return RunConfig(refine_tol=args.refine_tol, num_scales=args.scales,
                     divergence_growth=args.divergence_growth,
                     divergence_floor=args.divergence_floor,
                     angular_tol=args.angular_tol,
                     seed=getattr(args, "seed", 0))


def _add_config_flags(p: argparse.ArgumentParser) -> None:
    defaults = RunConfig()
    p.add_argument("--refine-tol", type=float, default=defaults.refine_tol,
                   help="relative boundary refinement tolerance")
    p.add_argument("--scales", type=int, default=defaults.num_scales,
                   help="number of dyadic curvature scales")
    p.add_argument("--divergence-growth", type=float,
                   default=defaults.divergence_growth,
                   help="per-scale ratio growth declaring divergence")
    p.add_argument("--divergence-floor", type=float,
                   default=defaults.divergence_floor,
                   help="minimum finest-scale ratio declaring divergence")
    p.add_argument("--angular-tol", type=float, default=defaults.angular_tol,
                   help="minimal normal-cone width counting as a corner")
    p.add_argument("--no-timestamp", action="store_true",
                   help="omit the timestamp field from JSON reports")


def _load_matrix(path: str):
    with open(path, "rb") as fh:
        return parse_matrix(fh.read())


def _maybe_timestamp(obj: dict, args) -> dict:
    if not args.no_timestamp:
        obj["timestamp"] = datetime.now(timezone.utc).isoformat()
    return obj


def _cmd_boundary(args) -> int:
    doc = _load_matrix(args.matrix)
    curve = boundary_curve(doc.matrix, refine_tol=args.refine_tol)
    if args.format == "csv":
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(["theta", "support", "re", "im"])
        for s in curve.samples:
            w.writerow([repr(s.theta), repr(s.support_value),
                        repr(s.point.real), repr(s.point.imag)])
    else:
        rows = [{"theta": s.theta, "support": s.support_value,
                 "re": s.point.real, "im": s.point.imag}
                for s in curve.samples]
        obj = _maybe_timestamp({"name": doc.name,
                                "matrix_norm": curve.matrix_norm,
                                "samples": rows}, args)
        json.dump(obj, sys.stdout, indent=2)
        sys.stdout.write("\n")
    return EXIT_OK


def _estimate_rows(est):
    rows = []
    for side, xs, ys, rs in (("right", est.right_x, est.right_y, est.right_ratios),
                             ("left", est.left_x, est.left_y, est.left_ratios)):
        for k, scale in enumerate(est.scales):
            if np.isnan(rs[k]):
                continue
            rows.append((side, float(scale), float(xs[k]), float(ys[k]),
                         float(rs[k])))
    return rows


def _write_estimate(est, verdict: str | None = None) -> None:
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["side", "scale", "x", "y", "ratio"])
    for side, scale, x, y, ratio in _estimate_rows(est):
        w.writerow([side, repr(scale), repr(x), repr(y), repr(ratio)])
    w.writerow(["gamma_l_est", repr(float(est.gamma_l_est))])
    w.writerow(["gamma_u_est", repr(float(est.gamma_u_est))])
    w.writerow(["right_diverged", est.right_diverged])
    w.writerow(["left_diverged", est.left_diverged])
    w.writerow(["growth_threshold", repr(est.growth_threshold)])
    w.writerow(["floor_threshold", repr(est.floor_threshold)])
    if verdict is not None:
        w.writerow(["verdict", verdict])


def _cmd_curvature(args) -> int:
    doc = _load_matrix(args.matrix)
    cfg = _config_from_args(args)
    curve = boundary_curve(doc.matrix, refine_tol=cfg.refine_tol)
    cls = classify_point(curve, args.theta, num_scales=cfg.num_scales,
                         growth=cfg.divergence_growth,
                         floor=cfg.divergence_floor,
                         angular_tol=cfg.angular_tol)
    _write_estimate(cls.estimate, verdict=cls.verdict)
    return EXIT_OK


def _classification_dict(cls) -> dict:
    est = cls.estimate
    return {
        "theta": cls.theta,
        "point": [cls.point.real, cls.point.imag],
        "verdict": cls.verdict,
        "normal_cone_width": cls.normal_cone_width,
        "ratio_tail": {
            "right": [float(v) for v in est.tail("right")],
            "left": [float(v) for v in est.tail("left")],
        },
    }


def _cmd_classify(args) -> int:
    doc = _load_matrix(args.matrix)
    cfg = _config_from_args(args)
    curve = boundary_curve(doc.matrix, refine_tol=cfg.refine_tol)
    kwargs = dict(num_scales=cfg.num_scales, growth=cfg.divergence_growth,
                  floor=cfg.divergence_floor, angular_tol=cfg.angular_tol)
    if args.all:
        thetas = [center for _, _, center in find_corners(curve, cfg)]
        thetas.extend((np.arange(8) * np.pi / 4 + 0.0503) % (2 * np.pi))
    else:
        thetas = [args.theta]
    out = [_classification_dict(classify_point(curve, t, **kwargs))
           for t in thetas]
    json.dump(out, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return EXIT_OK


_SUITES = {
    "donoghue": verify_donoghue,
    "hubner": verify_hubner_upper,
    "thm3": verify_thm3_corollary,
    "ellipse": ellipse_suite_report,
}


def _worker_count() -> int:
    env = os.environ.get("NUMRANGE_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            print(f"ignoring malformed NUMRANGE_THREADS={env!r}", file=sys.stderr)
    return min(4, os.cpu_count() or 1)


def _cmd_verify(args) -> int:
    cfg = _config_from_args(args)
    names = list(_SUITES) if args.suite == "all" else [args.suite]
    corpus = generator_suite(args.seed)

    def run_one(item):
        matrix_id, matrix = item
        return [_SUITES[name](matrix, matrix_id=matrix_id, config=cfg)
                for name in names]

    workers = _worker_count()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            per_matrix = list(pool.map(run_one, corpus))
    else:
        per_matrix = [run_one(item) for item in corpus]

    reports = [r for group in per_matrix for r in group]
    ok = all(r.passed for r in reports)
    obj = _maybe_timestamp({
        "seed": args.seed,
        "suites": names,
        "verdict": "pass" if ok else "fail",
        "reports": [r.to_dict() for r in reports],
    }, args)
    json.dump(obj, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return EXIT_OK if ok else EXIT_SUITE_FAIL


def _cmd_demo_epigraph(args) -> int:
    n = args.scales
    body = epigraph_body(2 * (n + 2) + 1)
    est = curvature_estimate(body, n)
    verdict, _ = classify_normalized(body, n)
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["k", "side", "x", "y", "ratio", "exact_ratio"])
    for side, xs, rs in (("right", est.right_x, est.right_ratios),
                         ("left", est.left_x, est.left_ratios)):
        sign = 1.0 if side == "right" else -1.0
        for k in range(est.scales.shape[0]):
            if np.isnan(rs[k]):
                continue
            x = sign * float(xs[k])
            y = abs(x) ** 1.5 if x > 0 else x ** 4
            w.writerow([k + 1, side, repr(x), repr(float(y)),
                        repr(float(rs[k])),
                        repr(epigraph_exact_ratio(x))])
    w.writerow(["gamma_l_est", repr(float(est.gamma_l_est))])
    w.writerow(["gamma_u_est", repr(float(est.gamma_u_est))])
    w.writerow(["right_diverged", est.right_diverged])
    w.writerow(["left_diverged", est.left_diverged])
    w.writerow(["verdict", verdict])
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="numrange",
        description="Numerical range boundaries, curvature and "
                    "spectral-inclusion checks for complex matrices")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("boundary", help="sample the boundary of W(A)")
    p.add_argument("--matrix", required=True, help="matrix JSON document")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    _add_config_flags(p)
    p.set_defaults(func=_cmd_boundary)

    p = sub.add_parser("curvature", help="dyadic curvature ratios at an angle")
    p.add_argument("--matrix", required=True)
    p.add_argument("--theta", type=float, required=True,
                   help="outward-normal angle of the boundary point")
    _add_config_flags(p)
    p.set_defaults(func=_cmd_curvature)

    p = sub.add_parser("classify", help="classify boundary points")
    p.add_argument("--matrix", required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--all", action="store_true",
                       help="classify detected corners plus a spread of angles")
    group.add_argument("--theta", type=float,
                       help="outward-normal angle of one boundary point")
    _add_config_flags(p)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("verify", help="run theorem suites on generated matrices")
    p.add_argument("--suite", choices=(*_SUITES, "all"), default="all")
    p.add_argument("--seed", type=int, default=0)
    _add_config_flags(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("demo-epigraph",
                       help="curvature table of the analytic epigraph body")
    p.add_argument("--scales", type=int, default=20)
    p.set_defaults(func=_cmd_demo_epigraph)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_USAGE
    try:
        return args.func(args)
    except (ValidationError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NonConvergenceError, ResolutionError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    raise SystemExit(main())
