"""Command-line harness.

Subcommands: validate, scan-theta, chsh, sample, signal, uncertainty,
bb84, cloning.  Angles are taken in degrees on the command line and
converted to radians internally; direction flags (--a, --a-prime) are
normalized.  All output is a pure function of the flags (plus --seed for
the stochastic subcommands): reruns are byte-identical.

Exit codes: 0 success, 1 domain violation (inadmissible parameters or a
failed assertion), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from .correlations import (
    chsh_value,
    joint_correlations,
    optimal_settings,
    sharp_chsh_reference,
)
from .errors import SpinJointError
from .joint import (
    JointSpec,
    bound_lhs,
    general_effect_min_eigenvalues,
    general_joint_povm,
    is_admissible,
    max_symmetric_alpha,
    product_form_check,
)
from .povm import validate as validate_povm
from .qubit import norm3, state_from_bloch, vec3
from .sampling import (
    SeededStream,
    sample_povm,
    sample_two_party,
    signalling_experiment,
    tally_to_csv,
)
from .scenarios import CLONER_ETA_MAX, bb84_eve, cloning_joint, min_cloning_gap
from .uncertainty import evaluate_all, product_form

SLACK_FLOOR = -1e-10


def _direction(text: str) -> np.ndarray:
    try:
        v = vec3([float(part) for part in text.split(",")])
    except (ValueError, TypeError) as exc:
        raise argparse.ArgumentTypeError(f"not a 3-vector: {text!r}") from exc
    n = norm3(v)
    if n < 1e-12:
        raise argparse.ArgumentTypeError("direction must be nonzero")
    return v / n


def _bloch(text: str) -> np.ndarray:
    try:
        return vec3([float(part) for part in text.split(",")])
    except (ValueError, TypeError) as exc:
        raise argparse.ArgumentTypeError(f"not a 3-vector: {text!r}") from exc


def _alpha(text: str):
    if text == "optimal-symmetric":
        return text
    try:
        return float(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(
            f"expected a number or 'optimal-symmetric', got {text!r}"
        ) from exc


def _add_spec_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--a", type=_direction, default=np.array([0.0, 0.0, 1.0]),
                     help="first direction, comma-separated floats (normalized)")
    sub.add_argument("--a-prime", type=_direction, default=None,
                     help="second direction (alternative to --theta-deg)")
    sub.add_argument("--theta-deg", type=float, default=None,
                     help="angle between directions; places a' in the plane "
                          "of a and the x axis (default 90)")
    sub.add_argument("--alpha", type=_alpha, default="optimal-symmetric",
                     help="sharpness of the first observable, or "
                          "'optimal-symmetric' (default)")
    sub.add_argument("--alpha-prime", type=_alpha, default=None,
                     help="sharpness of the second observable "
                          "(default: same as --alpha)")


def _add_output_flags(sub: argparse.ArgumentParser, default_format: str) -> None:
    sub.add_argument("--out", type=Path, default=None, help="output path (default stdout)")
    sub.add_argument("--format", choices=("csv", "json"), default=default_format)


def _resolve_spec(parser: argparse.ArgumentParser, args) -> JointSpec:
    if args.a_prime is not None and args.theta_deg is not None:
        parser.error("--a-prime and --theta-deg are mutually exclusive")
    if args.a_prime is not None:
        theta = math.acos(float(np.clip(args.a @ args.a_prime, -1.0, 1.0)))
    else:
        theta_deg = 90.0 if args.theta_deg is None else args.theta_deg
        if not 0.0 <= theta_deg <= 180.0:
            parser.error("--theta-deg must lie in [0, 180]")
        theta = math.radians(theta_deg)
    alpha = args.alpha
    alpha_prime = args.alpha_prime if args.alpha_prime is not None else alpha
    if alpha == "optimal-symmetric" or alpha_prime == "optimal-symmetric":
        alpha = alpha_prime = max_symmetric_alpha(theta)
    if args.a_prime is not None:
        return JointSpec(args.a, args.a_prime, alpha, alpha_prime)
    return JointSpec.from_angle(theta, alpha, alpha_prime, a=args.a)


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.17g}"
    if value is None:
        return ""
    return str(value)


def _emit(args, text: str) -> None:
    if args.out is not None:
        args.out.write_text(text)
    else:
        sys.stdout.write(text)


def _emit_rows(args, rows: list[dict]) -> None:
    if args.format == "json":
        _emit(args, json.dumps(rows, indent=2) + "\n")
        return
    header = ",".join(rows[0].keys())
    lines = [header]
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row.values()))
    _emit(args, "\n".join(lines) + "\n")


def _emit_record(args, record: dict) -> None:
    if args.format == "json":
        _emit(args, json.dumps(record, indent=2) + "\n")
    else:
        _emit_rows(args, [record])


def cmd_validate(parser, args) -> int:
    spec = _resolve_spec(parser, args)
    eigs = general_effect_min_eigenvalues(spec)
    admissible = is_admissible(spec)
    record = {
        "admissible": admissible,
        "bound_lhs": bound_lhs(spec),
        "product_form": product_form_check(spec),
        "min_eig_pp": eigs[0],
        "min_eig_mm": eigs[1],
        "min_eig_pm": eigs[2],
        "min_eig_mp": eigs[3],
        "completeness_defect": None,
        "error": "",
    }
    if admissible:
        report = validate_povm(general_joint_povm(spec))
        record["completeness_defect"] = report.completeness_defect
        if report.passes:
            _emit_record(args, record)
            return 0
        record["error"] = "; ".join(report.failures)
    else:
        record["error"] = f"BoundViolated: effect eigenvalue {min(eigs)} < 0"
    _emit_record(args, record)
    return 1


def cmd_scan_theta(parser, args) -> int:
    points = args.points
    if points < 2:
        parser.error("--points must be >= 2")
    rows = []
    for i in range(points):
        theta = i * math.pi / (points - 1)
        alpha = max_symmetric_alpha(theta)
        spec = JointSpec.from_angle(theta, alpha, alpha)
        rows.append(
            {
                "theta_deg": i * 180.0 / (points - 1),
                "alpha_max": alpha,
                "boundary_slack": product_form(spec).slack,
                "cloning_gap": alpha - CLONER_ETA_MAX,
            }
        )
    _emit_rows(args, rows)
    return 0


def cmd_chsh(parser, args) -> int:
    spec = _resolve_spec(parser, args)
    settings = optimal_settings(spec)
    corr = joint_correlations(spec, settings)
    value = chsh_value(corr)
    _, sharp_ref = sharp_chsh_reference()
    record = {
        "chsh": value,
        "e_ab": corr.e_ab,
        "e_apb": corr.e_apb,
        "e_abp": corr.e_abp,
        "e_apbp": corr.e_apbp,
        "b": ",".join(_fmt(x) for x in settings.b),
        "b_prime": ",".join(_fmt(x) for x in settings.b_prime),
        "sharp_reference": sharp_ref,
    }
    if args.n is not None:
        stream = SeededStream(args.seed)
        povm = general_joint_povm(spec)
        first = lambda l: 1.0 if l[0] == "+" else -1.0
        second = lambda l: 1.0 if l[1] == "+" else -1.0
        tally_b = sample_two_party(povm, settings.b, args.n, stream)
        tally_bp = sample_two_party(povm, settings.b_prime, args.n, stream, offset=args.n)
        emp = (
            tally_b.correlation(first).mean,
            tally_b.correlation(second).mean,
            tally_bp.correlation(first).mean,
            tally_bp.correlation(second).mean,
        )
        record["chsh_empirical"] = abs(emp[0] + emp[1]) + abs(emp[2] - emp[3])
        record["n"] = args.n
        record["seed"] = args.seed
    _emit_record(args, record)
    return 0 if value <= 2.0 + 1e-10 else 1


def cmd_sample(parser, args) -> int:
    spec = _resolve_spec(parser, args)
    state = state_from_bloch(args.bloch)
    povm = general_joint_povm(spec)
    stream = SeededStream(args.seed)
    stats = sample_povm(povm, state, args.n, stream)
    meta = stream.metadata(args.n)
    if args.format == "json":
        _emit(args, json.dumps(
            {
                "metadata": meta,
                "counts": stats.counts,
                "mean": stats.mean,
                "variance": stats.variance,
                "stderr": stats.stderr,
            },
            indent=2,
        ) + "\n")
    else:
        _emit(args, tally_to_csv(stats, meta))
    return 0


def cmd_signal(parser, args) -> int:
    spec = _resolve_spec(parser, args)
    settings = optimal_settings(spec)
    result = signalling_experiment(spec, settings, args.n, SeededStream(args.seed))
    record = {
        "p_same_b": result.stats_b.mean,
        "p_same_b_prime": result.stats_b_prime.mean,
        "z_score": result.z_score,
        "n": args.n,
        "seed": args.seed,
        "generator": "Philox",
    }
    _emit_record(args, record)
    return 0 if abs(result.z_score) < 5.0 else 1


def _random_bloch(u1: float, u2: float, u3: float) -> np.ndarray:
    # uniform in the unit ball
    r = u1 ** (1.0 / 3.0)
    cos_t = 2.0 * u2 - 1.0
    sin_t = math.sqrt(max(0.0, 1.0 - cos_t * cos_t))
    phi = 2.0 * math.pi * u3
    return r * np.array([sin_t * math.cos(phi), sin_t * math.sin(phi), cos_t])


def cmd_uncertainty(parser, args) -> int:
    spec = _resolve_spec(parser, args)
    if spec.alpha == 0.0 or spec.alpha_prime == 0.0:
        parser.error("uncertainty relations need nonzero sharpness factors")
    stream = SeededStream(args.seed)
    u = stream.uniforms(0, 3 * args.samples)
    rows = []
    worst = math.inf
    for k in range(args.samples):
        state = state_from_bloch(_random_bloch(u[3 * k], u[3 * k + 1], u[3 * k + 2]))
        for report in evaluate_all(spec, state):
            rows.append(
                {
                    "relation_id": report.relation_id,
                    "lhs": report.lhs,
                    "rhs": report.rhs,
                    "slack": report.slack,
                }
            )
            worst = min(worst, report.slack)
    _emit_rows(args, rows)
    return 0 if worst >= SLACK_FLOOR else 1


def cmd_bb84(parser, args) -> int:
    thetas = [math.pi / 2, math.pi / 4]
    if args.theta_deg is not None:
        thetas = [math.radians(args.theta_deg)]
    rows = []
    for k, theta in enumerate(thetas):
        report = bb84_eve(args.n, SeededStream(args.seed, stream_id=k), theta=theta)
        p = report.guess_success_prob_after_announcement
        stderr = math.sqrt(p * (1.0 - p) / report.n_trials) if 0.0 < p < 1.0 else 0.0
        deviation = (
            abs(report.empirical_success - p) / stderr if stderr > 0.0 else 0.0
        )
        rows.append(
            {
                "theta_deg": math.degrees(report.theta),
                "alpha": report.alpha,
                "analytic_success": p,
                "empirical_success": report.empirical_success,
                "n_trials": report.n_trials,
                "deviation_sigma": deviation,
                "seed": args.seed,
            }
        )
    _emit_rows(args, rows)
    return 0


def cmd_cloning(parser, args) -> int:
    theta = math.radians(args.theta_deg if args.theta_deg is not None else 90.0)
    scenario = cloning_joint(theta, args.eta)
    worst = min_cloning_gap(args.eta)
    record = {
        "theta_deg": math.degrees(scenario.theta),
        "eta": scenario.eta,
        "alpha_clone": scenario.alpha_clone,
        "alpha_optimal": scenario.alpha_optimal,
        "gap": scenario.gap,
        "min_gap": worst.gap,
        "min_gap_theta_deg": math.degrees(worst.theta),
    }
    _emit_record(args, record)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinjoint",
        description="Joint unsharp measurements of two spin-1/2 components: "
                    "validation, scans, correlations, sampling and scenario studies.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("validate", help="check admissibility and the generated measurement")
    _add_spec_flags(p)
    _add_output_flags(p, "json")
    p.set_defaults(func=cmd_validate)

    p = subs.add_parser("scan-theta", help="sweep the angle; optimal sharpness and gaps")
    p.add_argument("--points", type=int, default=181)
    _add_output_flags(p, "csv")
    p.set_defaults(func=cmd_scan_theta)

    p = subs.add_parser("chsh", help="CHSH-type combination at optimal settings")
    _add_spec_flags(p)
    p.add_argument("--n", type=int, default=None, help="also sample empirically")
    p.add_argument("--seed", type=int, default=0)
    _add_output_flags(p, "json")
    p.set_defaults(func=cmd_chsh)

    p = subs.add_parser("sample", help="draw outcomes of the joint measurement")
    _add_spec_flags(p)
    p.add_argument("--bloch", type=_bloch, default=np.zeros(3),
                   help="Bloch vector of the measured state (default mixed)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    _add_output_flags(p, "csv")
    p.set_defaults(func=cmd_sample)

    p = subs.add_parser("signal", help="Monte Carlo no-signalling experiment")
    _add_spec_flags(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    _add_output_flags(p, "json")
    p.set_defaults(func=cmd_signal)

    p = subs.add_parser("uncertainty", help="evaluate all variance bounds on random states")
    _add_spec_flags(p)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    _add_output_flags(p, "csv")
    p.set_defaults(func=cmd_uncertainty)

    p = subs.add_parser("bb84", help="joint-measurement eavesdropper study")
    p.add_argument("--theta-deg", type=float, default=None,
                   help="basis angle on the Bloch sphere (default: run 90 and 45)")
    p.add_argument("--n", type=int, required=True, help="trials per basis/bit cell")
    p.add_argument("--seed", type=int, required=True)
    _add_output_flags(p, "csv")
    p.set_defaults(func=cmd_bb84)

    p = subs.add_parser("cloning", help="cloning sharpness versus the admissible optimum")
    p.add_argument("--theta-deg", type=float, default=None)
    p.add_argument("--eta", type=float, default=CLONER_ETA_MAX)
    _add_output_flags(p, "json")
    p.set_defaults(func=cmd_cloning)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(parser, args)
    except SpinJointError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
