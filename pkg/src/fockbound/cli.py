"""Command-line front end: seeded batch verification and report emission.

Reports are deterministic for a fixed configuration: the seed fixes every
random draw (counter-based Philox streams, one per trial), checks are sorted
by check_id, and the timestamp lives only in the report header.

Exit codes: 0 all checks passed, 1 verification failure, 2 validation error,
3 resource error.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import math
import os
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import bounds, converse, gaussian, quadratics
from .fock import ResourceError, make_space, verify_car
from .rng import complex_matrix, skew_matrix, trial_rng

OUTPUT_DIR_ENV = "FOCKBOUND_OUTPUT_DIR"

EXIT_OK = 0
EXIT_VERIFICATION_FAILURE = 1
EXIT_VALIDATION_ERROR = 2
EXIT_RESOURCE_ERROR = 3


@dataclass(frozen=True)
class RunConfig:
    command: str
    m: int | None = None
    r_list: tuple = ()
    trials: int = 25
    seed: int = 0
    tolerance: float | None = None
    output: str | None = None
    fmt: str = "json"
    extra: dict = field(default_factory=dict)


def parse_r(text: str) -> float:
    if text.lower() in ("inf", "infinity"):
        return math.inf
    try:
        return float(Fraction(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"cannot parse exponent {text!r}") from exc


def _digest(payload) -> str:
    blob = json.dumps(payload, sort_keys=True, default=str).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


def _check(check_id: str, statement: str, inputs, metric: float,
           tolerance: float, passed: bool) -> dict:
    return {
        "check_id": check_id,
        "statement": statement,
        "inputs_digest": _digest(inputs),
        "metric": float(metric),
        "tolerance": float(tolerance),
        "pass": bool(passed),
    }


def _load_matrix(path: str) -> np.ndarray:
    """Square complex matrix from JSON: rows of [re, im] pairs, row-major."""
    with open(path) as fh:
        raw = json.load(fh)
    arr = np.asarray(raw, dtype=float)
    if arr.ndim != 3 or arr.shape[0] != arr.shape[1] or arr.shape[2] != 2:
        raise ValueError(f"matrix file {path} must hold an n x n array of [re, im] pairs")
    return arr[..., 0] + 1j * arr[..., 1]


def _resolve_operator(cfg: RunConfig, skew: bool, rng) -> np.ndarray:
    if cfg.extra.get("diag") is not None:
        mat = np.diag(np.asarray(cfg.extra["diag"], dtype=complex))
    elif cfg.extra.get("matrix_file") is not None:
        mat = _load_matrix(cfg.extra["matrix_file"])
    elif skew:
        return skew_matrix(rng, cfg.m)
    else:
        return complex_matrix(rng, cfg.m)
    if mat.shape != (cfg.m, cfg.m):
        raise ValueError(f"operator is {mat.shape[0]}x{mat.shape[1]} but --m is {cfg.m}")
    return mat


def run_verify_car(cfg: RunConfig) -> list[dict]:
    space = make_space(cfg.m)
    report = verify_car(space, trials=cfg.trials, seed=cfg.seed)
    inputs = {"m": cfg.m, "trials": cfg.trials, "seed": cfg.seed}
    checks = []
    for key, residual in sorted(report.residuals.items()):
        # pass/fail is decided inside verify_car with per-trial scale factors;
        # the tolerance column shows the unscaled base
        tol = 1e-10 if key == "norm_identity" else 1e-12
        checks.append(_check(
            f"car/m={cfg.m}/{key}",
            f"anticommutation-relation residual: {key}",
            {**inputs, "residual": key}, residual, tol, report.passed))
    return checks


def run_verify_bounds(cfg: RunConfig) -> list[dict]:
    which = cfg.extra["which"]
    space = make_space(cfg.m)
    explicit = cfg.extra.get("diag") is not None or cfg.extra.get("matrix_file") is not None
    skew = which not in ("dGamma", "literature_dGamma")
    checks = []
    for r in cfg.r_list:
        spec = bounds.BoundSpec(which, r)
        n_trials = 1 if explicit else cfg.trials
        for t in range(n_trials):
            rng = trial_rng(cfg.seed, t)
            X = _resolve_operator(cfg, skew, rng)
            if skew:
                X = quadratics.require_skew(X, "operator")
            verdict = bounds.verify_bound(space, spec, X, tol=cfg.tolerance)
            checks.append(_check(
                f"bounds/{which}/m={cfg.m}/r={r}/trial={t:03d}",
                f"{which} bound at r={r}: slack_min of RHS - Q*Q",
                {"which": which, "m": cfg.m, "r": str(r), "trial": t,
                 "seed": cfg.seed, "explicit": explicit},
                verdict.slack_min, verdict.tolerance, verdict.passed))
    return checks


def run_verify_algebra(cfg: RunConfig) -> list[dict]:
    space = make_space(cfg.m)
    worst = {"commutator": 0.0, "adjoint_dgamma": 0.0, "adjoint_delta": 0.0}
    grading_ok = True
    for t in range(cfg.trials):
        rng = trial_rng(cfg.seed, t)
        B = complex_matrix(rng, cfg.m)
        A = skew_matrix(rng, cfg.m)
        C = skew_matrix(rng, cfg.m)
        rep = quadratics.check_commutator(space, A, C)
        worst["commutator"] = max(worst["commutator"], rep.residual / rep.scale)
        dg = quadratics.d_gamma(space, B)
        worst["adjoint_dgamma"] = max(worst["adjoint_dgamma"], float(np.abs(
            dg.dagger().matrix - quadratics.d_gamma(space, B.conj().T).matrix).max()))
        da = quadratics.delta(space, A)
        worst["adjoint_delta"] = max(worst["adjoint_delta"], float(np.abs(
            da.dagger().matrix
            - quadratics.delta_plus(space, A.conj().T).matrix).max()))
        for op in (dg, da, quadratics.delta_plus(space, C)):
            grading_ok = grading_ok and quadratics.check_grading(op)
    inputs = {"m": cfg.m, "trials": cfg.trials, "seed": cfg.seed}
    tols = {"commutator": 1e-10, "adjoint_dgamma": 1e-13 * (1 + 4 * cfg.m),
            "adjoint_delta": 1e-13 * (1 + 4 * cfg.m)}
    checks = [
        _check(f"algebra/m={cfg.m}/{key}", f"quadratic-operator identity: {key}",
               {**inputs, "identity": key}, val, tols[key], val <= tols[key])
        for key, val in sorted(worst.items())
    ]
    checks.append(_check(
        f"algebra/m={cfg.m}/grading", "declared sector shifts hold entrywise",
        {**inputs, "identity": "grading"}, 0.0 if grading_ok else 1.0, 0.5, grading_ok))
    return checks


def run_gaussian_check(cfg: RunConfig) -> list[dict]:
    space = make_space(cfg.m)
    worst_diff = 0.0
    zeros_ok = True
    convention_ok = True
    for t in range(cfg.trials):
        rng = trial_rng(cfg.seed, t)
        C = skew_matrix(rng, cfg.m)
        rep = gaussian.gaussian_report(space, C)
        rel = rep.max_abs_diff / (1.0 + float(np.abs(rep.series_values).max()))
        worst_diff = max(worst_diff, rel)
        zeros_ok = zeros_ok and rep.zeros_matched
        convention_ok = convention_ok and rep.convention == gaussian.DEFAULT_CONVENTION
    inputs = {"m": cfg.m, "trials": cfg.trials, "seed": cfg.seed}
    checks = [
        _check(f"gaussian/m={cfg.m}/series_vs_determinant",
               "overlap series equals calibrated determinant formula",
               inputs, worst_diff, 1e-10, worst_diff <= 1e-10),
        _check(f"gaussian/m={cfg.m}/zeros",
               "formula zeros match companion-matrix polynomial roots",
               inputs, 0.0 if zeros_ok else 1.0, 0.5, zeros_ok),
        _check(f"gaussian/m={cfg.m}/convention",
               "calibration selects the square-root determinant convention",
               inputs, 0.0 if convention_ok else 1.0, 0.5, convention_ok),
    ]
    for r in (1.0, 1.5, 2.0):
        n = np.arange(200)
        coeffs = np.exp(-(2.0 / r) * np.array([math.lgamma(k + 1) for k in n]))
        est = gaussian.exp_order_estimate(coeffs, degree_step=2)
        err = abs(est.order - r)
        checks.append(_check(
            f"gaussian/order/r={r}",
            "growth-order estimator recovers r on factorial-power coefficients",
            {"r": r, "terms": 200}, err, 0.05, err <= 0.05))
    return checks


def run_sweep_sharpness(cfg: RunConfig) -> list[dict]:
    s = cfg.extra["s"]
    n_max = cfg.extra.get("n_max", 100_000)
    sweep = converse.sharpness_sweep(s, n_max=n_max)
    err = abs(sweep.slope - sweep.slope_target)
    checks = [_check(
        f"sweep/power_decay/s={s}",
        f"sector-norm growth exponent fits s/2 on n in {sweep.fit_window}",
        {"s": s, "n_max": n_max}, sweep.slope, converse.SLOPE_TOL, sweep.passed)]
    recovery = converse.schatten_recovery_check(s, [0.0, 0.1])
    for eps, cert in sorted(recovery.certificates.items()):
        checks.append(_check(
            f"sweep/recovery/s={s}/eps={eps}",
            "integral-test certificate: divergent at eps=0, convergent beyond",
            {"s": s, "eps": eps, "j_max": cert.j_max},
            cert.partial_sum, math.inf, cert.converges == (eps > 0)))
    return checks


def run_report_merge(cfg: RunConfig) -> list[dict]:
    checks = []
    for path in cfg.extra["inputs"]:
        with open(path) as fh:
            body = json.load(fh)
        checks.extend(body.get("checks", []))
    return checks


RUNNERS = {
    "verify-car": run_verify_car,
    "verify-bounds": run_verify_bounds,
    "verify-algebra": run_verify_algebra,
    "gaussian-check": run_gaussian_check,
    "sweep-sharpness": run_sweep_sharpness,
    "report": run_report_merge,
}


def build_report(cfg: RunConfig) -> dict:
    checks = sorted(RUNNERS[cfg.command](cfg), key=lambda c: c["check_id"])
    return {
        "header": {
            "command": cfg.command,
            "config": {
                "m": cfg.m, "r": [str(r) for r in cfg.r_list],
                "trials": cfg.trials, "seed": cfg.seed,
                "tolerance": cfg.tolerance, "format": cfg.fmt,
                **{k: v for k, v in cfg.extra.items() if k != "inputs"},
            },
            "timestamp": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
        },
        "checks": checks,
        "all_pass": all(c["pass"] for c in checks),
    }


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["check_id", "statement", "inputs_digest", "metric",
                     "tolerance", "pass"])
    for c in report["checks"]:
        writer.writerow([c["check_id"], c["statement"], c["inputs_digest"],
                         repr(c["metric"]), repr(c["tolerance"]), c["pass"]])
    return buf.getvalue()


def _resolve_output(path: str | None) -> str | None:
    if path is None:
        return None
    if not os.path.isabs(path):
        base = os.environ.get(OUTPUT_DIR_ENV)
        if base:
            return os.path.join(base, path)
    return path


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fockbound",
        description="Verify operator identities and number-operator bounds "
                    "on a finite fermionic Fock space.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, trials_default=25):
        p.add_argument("--m", type=int, required=True, help="number of modes")
        p.add_argument("--trials", type=int, default=trials_default)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--tolerance", type=float, default=None)
        output(p)

    def output(p):
        p.add_argument("--output", default=None, help="report file (stdout if omitted)")
        p.add_argument("--format", choices=("json", "csv"), default="json")

    common(sub.add_parser("verify-car", help="anticommutation-relation suite"),
           trials_default=50)

    p = sub.add_parser("verify-bounds", help="number-operator bound suite")
    common(p)
    p.add_argument("--which", required=True, choices=bounds.WHICH)
    p.add_argument("--r", nargs="+", required=True,
                   help="Schatten exponents, e.g. 1 4/3 2 inf")
    p.add_argument("--diag", nargs="+", type=float, default=None,
                   help="use this diagonal one-body operator instead of random draws")
    p.add_argument("--matrix-file", default=None,
                   help="JSON file with rows of [re, im] pairs")

    common(sub.add_parser("verify-algebra",
                          help="commutator, adjoint, and grading identities"))

    common(sub.add_parser("gaussian-check",
                          help="overlap series vs determinant, zeros, growth order"),
           trials_default=20)

    p = sub.add_parser("sweep-sharpness", help="growth-exponent sweep for decay families")
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--n-max", type=int, default=100_000)
    output(p)

    p = sub.add_parser("report", help="merge previously emitted JSON reports")
    p.add_argument("inputs", nargs="+")
    output(p)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    extra = {}
    for key in ("which", "diag", "matrix_file", "s", "n_max", "inputs"):
        if getattr(args, key, None) is not None:
            extra[key] = getattr(args, key)
    return RunConfig(
        command=args.command,
        m=getattr(args, "m", None),
        r_list=tuple(parse_r(r) for r in getattr(args, "r", []) or ()),
        trials=getattr(args, "trials", 25),
        seed=getattr(args, "seed", 0),
        tolerance=getattr(args, "tolerance", None),
        output=args.output,
        fmt=args.format,
        extra=extra,
    )


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = config_from_args(args)
        report = build_report(cfg)
        text = render(report, cfg.fmt)
    except ResourceError as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE_ERROR
    except (ValueError, OSError) as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION_ERROR
    out_path = _resolve_output(cfg.output)
    if out_path is None:
        sys.stdout.write(text)
    else:
        try:
            with open(out_path, "w") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"validation error: cannot write {out_path}: {exc}", file=sys.stderr)
            return EXIT_VALIDATION_ERROR
    return EXIT_OK if report["all_pass"] else EXIT_VERIFICATION_FAILURE


if __name__ == "__main__":
    sys.exit(main())
