"""Command-line interface: ``betagraph {generate,estimate,experiment,validate}``.

Exit codes: 0 success, 2 usage, 3 validation (bad input, degenerate
statistics or a failed diagnostic), 4 non-convergence, 5 I/O.
"""
import argparse
import os
import sys

import numpy as np

from .errors import ConvergenceError, DomainError, ValidationError
from .estimator import MONOTONE_RTOL, EstimatorConfig, compute_M, estimate, init_params, iterate_step
from .generator import GeneratorConfig, draw_true_params, generate_graph, make_rng, recovery_experiment
from .ingest import atomic_write, load_matrix, normalize_counts, save_matrix, write_params
from .model import stats_bound_margin, sufficient_stats
from .special import LN2

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VALIDATION = 3
EXIT_NONCONVERGENCE = 4
EXIT_IO = 5


def _err(msg):
    print(f"betagraph: {msg}", file=sys.stderr)


def _estimator_config(args):
    return EstimatorConfig(tol=args.tol, max_iters=args.max_iters)


def _load_weights(path, fmt):
    data = load_matrix(path, fmt)
    if fmt == "counts":
        data = normalize_counts(data)
    return data


def cmd_generate(args):
    config = GeneratorConfig(args.n, args.param_low, args.param_high, args.seed)
    rng = make_rng(config.seed)
    truth = draw_true_params(config, rng)
    W = generate_graph(truth.a, truth.b, rng)
    save_matrix(args.out_matrix, W)
    if args.out_params:
        write_params(args.out_params, truth)
    print(f"wrote {config.n}x{config.n} weight matrix to {args.out_matrix}")
    return EXIT_OK


def cmd_estimate(args):
    W = _load_weights(args.input, args.format)
    report = estimate(sufficient_stats(W), _estimator_config(args))
    write_params(args.out, report.theta_hat, W.labels, report)
    print(
        f"converged in {report.iterations} iterations; "
        f"residual {report.final_residual:.3g}, jacobian L1 {report.jacobian_l1:.6f}"
    )
    return EXIT_OK


def cmd_experiment(args):
    os.makedirs(args.out, exist_ok=True)
    est_config = _estimator_config(args)
    rows = []
    failures = []
    for seed in range(args.seed_base, args.seed_base + args.seeds):
        config = GeneratorConfig(args.n, args.param_low, args.param_high, seed)
        try:
            res = recovery_experiment(config, est_config)
        except (ConvergenceError, DomainError) as exc:
            _err(f"seed {seed}: {exc}")
            failures.append(exc)
            continue
        for name, true, est in (
            ("a", res.true_params.a, res.theta_hat.a),
            ("b", res.true_params.b, res.theta_hat.b),
        ):
            lines = ["true estimated"] + [f"{t:.17g} {e:.17g}" for t, e in zip(true, est)]
            atomic_write(os.path.join(args.out, f"seed_{seed}_{name}.txt"), "\n".join(lines) + "\n")
        rows.append((seed, res.mse_a, res.mse_b, res.report.iterations))
        print(f"seed {seed}: MSE_a={res.mse_a:.6g} MSE_b={res.mse_b:.6g}")

    lines = ["seed,mse_a,mse_b,iterations"]
    lines += [f"{s},{a:.17g},{b:.17g},{k}" for s, a, b, k in rows]
    if rows:
        med_a = float(np.median([r[1] for r in rows]))
        med_b = float(np.median([r[2] for r in rows]))
        lines.append(f"median,{med_a:.17g},{med_b:.17g},")
        print(f"median: MSE_a={med_a:.6g} MSE_b={med_b:.6g}")
    atomic_write(os.path.join(args.out, "summary.csv"), "\n".join(lines) + "\n")
    if any(isinstance(exc, ConvergenceError) for exc in failures):
        return EXIT_NONCONVERGENCE
    return EXIT_VALIDATION if failures else EXIT_OK


def run_diagnostics(W, config=None):
    """Estimate from ``W`` and evaluate every diagnostic check.

    Returns ``(values, failures)``: a dict of scalar diagnostics and a list
    of human-readable failure descriptions (empty when all checks pass).
    """
    stats = sufficient_stats(W)
    n = stats.n
    values = {"n": n, "bound_margin": stats_bound_margin(stats)}
    failures = []
    if not values["bound_margin"] > 0:
        failures.append(
            "statistic bound holds with equality (every weight is 1/2): "
            "no finite ML estimate"
        )
    try:
        theta0 = init_params(stats)
    except DomainError as exc:
        values["M"] = compute_M(stats)
        failures.append(f"degenerate input: M = {values['M']:.17g} <= ln 2 = {LN2:.17g} ({exc})")
        return values, failures

    first = iterate_step(theta0, stats)
    floor = theta0.as_vector() * (1 - MONOTONE_RTOL)
    values["start_dominated"] = bool(np.all(first.as_vector() >= floor))
    if not values["start_dominated"]:
        failures.append("f(eps 1) >= eps 1 violated")
    try:
        report = estimate(stats, config or EstimatorConfig())
    except ConvergenceError as exc:
        report = exc.report
        failures.append(f"no convergence after {report.iterations} iterations")
    values.update(
        M=report.M,
        epsilon=report.epsilon,
        iterations=report.iterations,
        monotone=report.monotone,
        final_residual=report.final_residual,
        jacobian_l1=report.jacobian_l1,
        contraction=report.jacobian_l1 < 1,
        lower_bound=bool(np.all(report.theta_hat.as_vector() >= report.epsilon * (1 - MONOTONE_RTOL))),
    )
    if not report.monotone:
        failures.append("iterates were not coordinatewise nondecreasing")
    if not values["contraction"]:
        failures.append(f"jacobian L1 norm {report.jacobian_l1:.6g} >= 1")
    if not values["lower_bound"]:
        failures.append("estimate below eps 1")
    return values, failures


def cmd_validate(args):
    W = _load_weights(args.input, args.format)
    values, failures = run_diagnostics(W, _estimator_config(args))
    for key, value in values.items():
        if isinstance(value, float):
            value = f"{value:.10g}"
        print(f"{key}: {value}")
    for msg in failures:
        _err(f"check failed: {msg}")
    print("all checks passed" if not failures else f"{len(failures)} check(s) failed")
    return EXIT_OK if not failures else EXIT_VALIDATION


def _add_estimator_flags(p):
    p.add_argument("--tol", type=float, default=1e-10, help="sup-norm step tolerance")
    p.add_argument("--max-iters", type=int, default=100_000)


def _add_param_range(p):
    p.add_argument("--n", type=int, required=True, help="number of vertices (>= 2)")
    p.add_argument("--param-low", type=float, default=1.0)
    p.add_argument("--param-high", type=float, default=5.0)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="betagraph",
        description="ML estimation for directed graphs with beta-distributed edge weights.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="sample a weight matrix from random true parameters")
    _add_param_range(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-matrix", required=True)
    p.add_argument("--out-params")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("estimate", help="estimate parameters from a matrix file")
    p.add_argument("--input", required=True)
    p.add_argument("--format", choices=("weights", "counts"), default="weights")
    p.add_argument("--out", required=True)
    _add_estimator_flags(p)
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("experiment", help="parameter-recovery runs over several seeds")
    _add_param_range(p)
    p.add_argument("--seeds", type=int, default=10, help="number of seeds")
    p.add_argument("--seed-base", type=int, default=0)
    p.add_argument("--out", required=True, help="output directory")
    _add_estimator_flags(p)
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("validate", help="estimate and report every convergence diagnostic")
    p.add_argument("--input", required=True)
    p.add_argument("--format", choices=("weights", "counts"), default="weights")
    _add_estimator_flags(p)
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "n", 2) < 2:
        parser.error("--n must be at least 2")
    if getattr(args, "seeds", 1) < 1:
        parser.error("--seeds must be at least 1")
    if getattr(args, "max_iters", 1) < 1:
        parser.error("--max-iters must be at least 1")
    if hasattr(args, "tol") and not args.tol > 0:
        parser.error("--tol must be positive")
    try:
        return args.func(args)
    except ConvergenceError as exc:
        _err(str(exc))
        return EXIT_NONCONVERGENCE
    except (ValidationError, DomainError) as exc:
        _err(str(exc))
        return EXIT_VALIDATION
    except OSError as exc:
        _err(str(exc))
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
