"""Seeded sampling of beta-weighted directed graphs and recovery experiments.

Random streams come from numpy's ``PCG64`` bit generator
(``numpy.random.default_rng(seed)``).  Gamma variates use the
Marsaglia-Tsang squeeze method, with ``G(k) = G(k + 1) U^(1/k)`` for shapes
below one; a beta variate is ``X / (X + Y)`` for independent gammas.  Edge
weights are drawn one at a time in row-major order over ``i != j``, so the
matrix is a pure function of the seed and the parameters.
"""
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ValidationError
from .estimator import EstimatorConfig, estimate
from .model import EdgeWeightMatrix, Params, sufficient_stats

__all__ = [
    "GeneratorConfig",
    "ExperimentResult",
    "make_rng",
    "sample_gamma",
    "sample_beta",
    "generate_graph",
    "draw_true_params",
    "recovery_experiment",
]


def make_rng(seed):
    """PCG64 generator; an existing ``Generator`` is passed through."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def sample_gamma(shape, rng):
    """One draw from gamma(shape, 1)."""
    if not shape > 0 or not math.isfinite(shape):
        raise DomainError(f"gamma shape must be positive, got {shape!r}")
    if shape < 1.0:
        u = rng.random()
        return sample_gamma(shape + 1.0, rng) * u ** (1.0 / shape)
    d = shape - 1.0 / 3.0
    c = 1.0 / math.sqrt(9.0 * d)
    while True:
        x = rng.standard_normal()
        v = 1.0 + c * x
        if v <= 0.0:
            continue
        v = v * v * v
        u = rng.random()
        if u < 1.0 - 0.0331 * x ** 4:
            return d * v
        if math.log(u) < 0.5 * x * x + d * (1.0 - v + math.log(v)):
            return d * v


def sample_beta(a, b, rng):
    """One draw from beta(a, b), strictly inside (0, 1).

    Draws that round to 0 or 1 (possible for tiny shapes) are discarded.
    """
    a = float(a)
    b = float(b)
    if not (a > 0 and b > 0):
        raise DomainError(f"beta shapes must be positive, got ({a!r}, {b!r})")
    while True:
        x = sample_gamma(a, rng)
        y = sample_gamma(b, rng)
        if x + y == 0.0:
            continue
        w = x / (x + y)
        if 0.0 < w < 1.0:
            return w


def generate_graph(a, b, seed=None, labels=None):
    """Sample a weight matrix with ``w_ij ~ beta(a_i, b_j)`` for ``i != j``."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.ndim != 1 or a.shape != b.shape:
        raise ValidationError("a and b must be 1-d vectors of equal length")
    if a.size < 2:
        raise ValidationError("need at least 2 vertices")
    if np.any(~(a > 0)) or np.any(~(b > 0)):
        raise ValidationError("beta parameters must be strictly positive")
    rng = make_rng(seed)
    n = a.size
    w = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            if i != j:
                w[i, j] = sample_beta(a[i], b[j], rng)
    return EdgeWeightMatrix(w, labels)


@dataclass(frozen=True)
class GeneratorConfig:
    n: int
    param_low: float = 1.0
    param_high: float = 5.0
    seed: int = 0

    def __post_init__(self):
        if int(self.n) < 2:
            raise ValidationError("n must be at least 2")
        if not 0 < self.param_low <= self.param_high:
            raise ValidationError("need 0 < param_low <= param_high")
        if not 0 <= int(self.seed) < 2 ** 64:
            raise ValidationError("seed must be an unsigned 64-bit integer")


@dataclass
class ExperimentResult:
    true_params: Params
    report: object
    mse_a: float
    mse_b: float

    @property
    def theta_hat(self):
        return self.report.theta_hat


def draw_true_params(config, rng):
    """Uniform draws on ``[param_low, param_high]``: all of ``a``, then all of ``b``."""
    a = rng.uniform(config.param_low, config.param_high, config.n)
    b = rng.uniform(config.param_low, config.param_high, config.n)
    return Params(a, b)


def recovery_experiment(config, est_config=None):
    """Draw true parameters, sample one graph from them and re-estimate.

    A single stream seeded with ``config.seed`` feeds the parameter draw and
    then the graph.
    """
    rng = make_rng(config.seed)
    truth = draw_true_params(config, rng)
    W = generate_graph(truth.a, truth.b, rng)
    report = estimate(sufficient_stats(W), est_config or EstimatorConfig())
    mse_a = float(np.mean((report.theta_hat.a - truth.a) ** 2))
    mse_b = float(np.mean((report.theta_hat.b - truth.b) ** 2))
    return ExperimentResult(truth, report, mse_a, mse_b)
