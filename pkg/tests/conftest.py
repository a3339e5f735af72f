import numpy as np
import pytest

from betagraph.estimator import EstimatorConfig, estimate
from betagraph.generator import GeneratorConfig, generate_graph, recovery_experiment
from betagraph.model import Params, sufficient_stats

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_params(rng, n, low=1.0, high=5.0):
    return Params(rng.uniform(low, high, n), rng.uniform(low, high, n))


def random_weights(rng, n):
    w = rng.uniform(0.02, 0.98, (n, n))
    np.fill_diagonal(w, 0.0)
    return w


@pytest.fixture(scope="session")
def converged_instance():
    """A generated n=25 graph with its converged estimate."""
    theta = Params(np.linspace(1, 5, 25), np.linspace(5, 1, 25) ** 0.9)
    W = generate_graph(theta.a, theta.b, seed=99)
    stats = sufficient_stats(W)
    report = estimate(stats, EstimatorConfig(record_trace=True))
    return stats, report


@pytest.fixture(scope="session")
def recovery_runs():
    """Ten recovery experiments at n=100 with parameters uniform on [1, 5]."""
    cfg = EstimatorConfig(record_trace=True)
    return [recovery_experiment(GeneratorConfig(100, 1.0, 5.0, seed), cfg) for seed in range(10)]
