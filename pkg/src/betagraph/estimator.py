"""Fixed-point maximum-likelihood estimator.

The likelihood equations are rewritten as ``theta = f(theta)`` with

    g_i(a, b) = psi^-1[(R_i + sum_{j!=i} psi(a_i + b_j)) / (n-1)]
    h_j(a, b) = psi^-1[(C_j + sum_{i!=j} psi(a_i + b_j)) / (n-1)]

and iterated synchronously from ``eps * 1``, where ``eps`` solves
``psi(2 eps) - psi(eps) = M``.  From that start the iterates increase
coordinatewise towards the unique solution, which is also a lower bound for
the start.
"""
import logging
from dataclasses import dataclass, field

import numpy as np

from .errors import ConvergenceError, DegenerateStatsError, DivergenceError
from .model import Params, _check_sizes, _pair_digamma, ml_residuals
from .special import inverse_digamma, solve_epsilon, trigamma

__all__ = [
    "EstimatorConfig",
    "EstimationReport",
    "compute_M",
    "init_params",
    "iterate_step",
    "estimate",
    "jacobian_column_sums",
    "jacobian_l1_norm",
    "PARAM_CAP",
    "MONOTONE_RTOL",
]

log = logging.getLogger(__name__)

PARAM_CAP = 1e8
# Rounding slack when checking that consecutive iterates never decrease.
MONOTONE_RTOL = 1e-12


@dataclass(frozen=True)
class EstimatorConfig:
    tol: float = 1e-10
    residual_tol: float = 1e-8
    max_iters: int = 100_000
    record_trace: bool = False

    def __post_init__(self):
        if not self.tol > 0 or not self.residual_tol > 0:
            raise ValueError("tol and residual_tol must be positive")
        if int(self.max_iters) < 1:
            raise ValueError("max_iters must be at least 1")


@dataclass
class EstimationReport:
    """Outcome of :func:`estimate`.

    ``trace`` holds the sup-norm change of every step when the config asks
    for it.  ``monotone`` records whether each iterate dominated the previous
    one coordinatewise (up to ``MONOTONE_RTOL``).
    """

    theta_hat: Params
    iterations: int
    final_step: float
    final_residual: float
    jacobian_l1: float
    converged: bool
    epsilon: float
    M: float
    monotone: bool = True
    trace: list = field(default=None, repr=False)


def compute_M(stats):
    """Largest of ``-R_i / (n-1)`` and ``-C_j / (n-1)``."""
    n = stats.n
    return float(max(np.max(-stats.R), np.max(-stats.C)) / (n - 1))


def init_params(stats):
    """Starting point ``eps * 1``; a componentwise lower bound on the estimate.

    Raises :class:`~betagraph.errors.DegenerateStatsError` when ``M <= ln 2``
    and for two vertices: there each pair ``(a_i, b_j)`` is fitted to a single
    weight ``w``, the statistics satisfy ``exp(R_i) + exp(C_j) = 1`` and the
    likelihood grows without bound along ``a/(a+b) = w``.
    """
    if stats.n == 2:
        raise DegenerateStatsError(
            "no finite ML estimate for n = 2: every edge weight is the only "
            "observation of its beta distribution"
        )
    eps = solve_epsilon(compute_M(stats))
    return Params.constant(stats.n, eps)


def iterate_step(theta, stats):
    """One synchronous application of the fixed-point map to ``theta``."""
    _check_sizes(stats, theta)
    n = stats.n
    s = _pair_digamma(theta)
    a = inverse_digamma((stats.R + s.sum(axis=1)) / (n - 1), x0=theta.a)
    b = inverse_digamma((stats.C + s.sum(axis=0)) / (n - 1), x0=theta.b)
    return Params(a, b)


def jacobian_column_sums(theta_hat):
    """Column sums of the Jacobian of the fixed-point map at a solution.

    Entry ``j`` (for ``a_j``) is

        1/(n-1) sum_{s!=j} psi'(a_j + b_s) (1/psi'(a_j) + 1/psi'(b_s))

    and entry ``n + j`` (for ``b_j``) is the same with the roles of the
    indices swapped.  The closed form substitutes the likelihood equations,
    so it is only meaningful when ``theta_hat`` solves them.
    """
    n = theta_hat.n
    t = trigamma(theta_hat.a[:, None] + theta_hat.b[None, :])
    np.fill_diagonal(t, 0.0)
    inv_a = 1.0 / trigamma(theta_hat.a)
    inv_b = 1.0 / trigamma(theta_hat.b)
    col_a = (t * (inv_a[:, None] + inv_b[None, :])).sum(axis=1) / (n - 1)
    col_b = (t * (inv_a[:, None] + inv_b[None, :])).sum(axis=0) / (n - 1)
    return np.concatenate([col_a, col_b])


def jacobian_l1_norm(theta_hat):
    """Induced L1 norm of the Jacobian at ``theta_hat``; below 1 at a solution."""
    return float(jacobian_column_sums(theta_hat).max())


def _sup_residual(stats, theta):
    rho_a, rho_b = ml_residuals(stats, theta)
    return float(max(np.abs(rho_a).max(), np.abs(rho_b).max()))


def estimate(stats, config=None):
    """Maximum-likelihood estimate of ``(a, b)`` from sufficient statistics.

    Iterates until the sup-norm change is at most ``config.tol`` and the
    sup-norm of the likelihood-equation residuals is at most
    ``config.residual_tol``.

    Raises
    ------
    DegenerateStatsError
        If the statistics admit no finite estimate (``M <= ln 2``).
    ConvergenceError
        If ``max_iters`` runs out; the partial report is attached.
    DivergenceError
        If an iterate exceeds ``PARAM_CAP``.
    """
    config = config or EstimatorConfig()
    M = compute_M(stats)
    theta = init_params(stats)
    eps = float(theta.a[0])

    trace = [] if config.record_trace else None
    monotone = True
    converged = False
    step = np.inf
    residual = np.nan
    it = 0
    vec = theta.as_vector()
    while it < config.max_iters:
        it += 1
        new = iterate_step(theta, stats)
        new_vec = new.as_vector()
        if new_vec.max() > PARAM_CAP:
            raise DivergenceError(
                f"iterate exceeded {PARAM_CAP:g} at iteration {it}",
                report=_report(theta, it, step, np.nan, False, eps, M, monotone, trace),
            )
        if np.any(new_vec < vec - MONOTONE_RTOL * np.maximum(1.0, vec)):
            monotone = False
        step = float(np.abs(new_vec - vec).max())
        theta, vec = new, new_vec
        if trace is not None:
            trace.append(step)
        if step <= config.tol:
            residual = _sup_residual(stats, theta)
            if residual <= config.residual_tol:
                converged = True
                break

    if not converged:
        residual = _sup_residual(stats, theta)
    report = _report(theta, it, step, residual, converged, eps, M, monotone, trace)
    if not converged:
        raise ConvergenceError(
            f"no convergence after {it} iterations "
            f"(last step {step:.3g}, residual {residual:.3g})",
            report=report,
        )
    log.debug("converged after %d iterations, residual %.3g", it, residual)
    return report


def _report(theta, it, step, residual, converged, eps, M, monotone, trace):
    return EstimationReport(
        theta_hat=theta,
        iterations=it,
        final_step=float(step),
        final_residual=float(residual),
        jacobian_l1=jacobian_l1_norm(theta),
        converged=converged,
        epsilon=eps,
        M=M,
        monotone=monotone,
        trace=trace,
    )
