import math

import numpy as np
import pytest
from scipy import stats as sps

from betagraph.errors import DomainError, ValidationError
from betagraph.model import (
    EdgeWeightMatrix,
    Params,
    SufficientStats,
    check_stats_bound,
    log_likelihood,
    mean_map,
    ml_residuals,
    stats_bound_margin,
    sufficient_stats,
)
from betagraph.special import LN2, digamma

from conftest import random_params, random_weights


def loop_stats(w):
    n = len(w)
    R = [sum(math.log(w[i][j]) for j in range(n) if j != i) for i in range(n)]
    C = [sum(math.log(1 - w[i][j]) for i in range(n) if i != j) for j in range(n)]
    return np.array(R), np.array(C)


def product_loglik(w, theta):
    n = len(w)
    return sum(
        sps.beta.logpdf(w[i, j], theta.a[i], theta.b[j])
        for i in range(n)
        for j in range(n)
        if i != j
    )


def fd_gradient(f, x, h=1e-6):
    g = np.empty_like(x)
    for k in range(x.size):
        e = np.zeros_like(x)
        e[k] = h * max(1.0, abs(x[k]))
        g[k] = (f(x + e) - f(x - e)) / (2 * e[k])
    return g


class TestEdgeWeightMatrix:
    def test_rejects_boundary_weight(self):
        w = np.array([[0, 0.0, 0.3], [0.2, 0, 0.5], [0.4, 0.6, 0]])
        with pytest.raises(ValidationError) as exc:
            EdgeWeightMatrix(w)
        assert exc.value.index == (1, 2)

    @pytest.mark.parametrize("value", [1.0, -0.1, 1.5, np.nan])
    def test_rejects_outside_unit_interval(self, value):
        w = np.array([[0, 0.5], [value, 0]])
        with pytest.raises(ValidationError) as exc:
            EdgeWeightMatrix(w)
        assert exc.value.index == (2, 1)

    def test_rejects_nonzero_diagonal(self):
        with pytest.raises(ValidationError):
            EdgeWeightMatrix([[0.1, 0.5], [0.5, 0]])

    def test_rejects_non_square_and_tiny(self):
        with pytest.raises(ValidationError):
            EdgeWeightMatrix(np.zeros((2, 3)))
        with pytest.raises(ValidationError):
            EdgeWeightMatrix([[0.0]])

    def test_read_only(self):
        W = EdgeWeightMatrix([[0, 0.5], [0.5, 0]])
        with pytest.raises(ValueError):
            W.w[0, 1] = 0.3

    def test_log_matrices(self, rng):
        w = random_weights(rng, 4)
        W = EdgeWeightMatrix(w)
        off = ~np.eye(4, dtype=bool)
        np.testing.assert_allclose(W.log_weights[off], np.log(w[off]))
        np.testing.assert_allclose(W.log_complements[off], np.log(1 - w[off]))
        assert np.all(np.diag(W.log_weights) == 0)


class TestSufficientStats:
    def test_half_weights(self):
        s = sufficient_stats([[0, 0.5], [0.5, 0]])
        np.testing.assert_allclose(s.R, [-LN2, -LN2], rtol=0, atol=1e-15)
        np.testing.assert_allclose(s.C, [-LN2, -LN2], rtol=0, atol=1e-15)

    def test_matches_double_loop(self, rng):
        w = random_weights(rng, 3)
        R, C = loop_stats(w.tolist())
        s = sufficient_stats(w)
        np.testing.assert_allclose(s.R, R, rtol=0, atol=1e-14)
        np.testing.assert_allclose(s.C, C, rtol=0, atol=1e-14)

    def test_zero_weight_rejected(self):
        w = np.array([[0, 0.0, 0.3], [0.2, 0, 0.5], [0.4, 0.6, 0]])
        with pytest.raises(ValidationError) as exc:
            sufficient_stats(w)
        assert exc.value.index == (1, 2)

    def test_permutation_equivariance(self, rng):
        w = random_weights(rng, 6)
        perm = rng.permutation(6)
        s = sufficient_stats(w)
        sp = sufficient_stats(w[np.ix_(perm, perm)])
        np.testing.assert_allclose(sp.R, s.R[perm], atol=1e-13)
        np.testing.assert_allclose(sp.C, s.C[perm], atol=1e-13)

    def test_invariants(self, rng):
        s = sufficient_stats(random_weights(rng, 8))
        assert np.all(s.R < 0) and np.all(s.C < 0)
        assert check_stats_bound(s)

    def test_validation(self):
        with pytest.raises(ValidationError):
            SufficientStats([-1.0, 0.5], [-1.0, -1.0])
        with pytest.raises(ValidationError):
            SufficientStats([-1.0, -1.0], [-1.0])


class TestLogLikelihood:
    def test_uniform_is_zero(self, rng):
        s = sufficient_stats(random_weights(rng, 2))
        assert log_likelihood(s, Params.constant(2, 1.0)) == pytest.approx(0.0, abs=1e-13)

    def test_matches_product_formula(self, rng):
        for _ in range(5):
            w = random_weights(rng, 3)
            theta = random_params(rng, 3, 0.3, 6.0)
            expected = product_loglik(w, theta)
            assert log_likelihood(sufficient_stats(w), theta) == pytest.approx(expected, abs=1e-10)

    def test_domain(self, rng):
        s = sufficient_stats(random_weights(rng, 3))
        with pytest.raises(DomainError):
            log_likelihood(s, Params([1, 1, -1], [1, 1, 1]))

    def test_finite_over_wide_range(self, rng):
        s = sufficient_stats(random_weights(rng, 5))
        for value in (1e-6, 1e-3, 1.0, 1e3, 1e6):
            assert np.isfinite(log_likelihood(s, Params.constant(5, value)))


class TestResiduals:
    def test_vanish_at_mean_map_preimage(self, rng):
        theta = random_params(rng, 7, 0.3, 8.0)
        rho_a, rho_b = ml_residuals(mean_map(theta).as_stats(), theta)
        np.testing.assert_allclose(rho_a, 0, atol=1e-10)
        np.testing.assert_allclose(rho_b, 0, atol=1e-10)

    def test_two_vertex_value(self):
        stats = SufficientStats([-1.0, -1.0], [-1.0, -1.0])
        rho_a, rho_b = ml_residuals(stats, Params.constant(2, 1.0))
        # psi(2) - psi(1) - 1 = 0
        np.testing.assert_allclose(rho_a, 0, atol=1e-14)
        np.testing.assert_allclose(rho_b, 0, atol=1e-14)

    def test_gradient_check(self, rng):
        for _ in range(10):
            s = sufficient_stats(random_weights(rng, 4))
            theta = random_params(rng, 4, 0.5, 5.0)
            rho = np.concatenate(ml_residuals(s, theta))
            fd = fd_gradient(lambda v: log_likelihood(s, Params.from_vector(v)), theta.as_vector())
            np.testing.assert_allclose(rho, fd, atol=1e-6)

    def test_size_mismatch(self, rng):
        s = sufficient_stats(random_weights(rng, 3))
        with pytest.raises(ValidationError):
            ml_residuals(s, Params.constant(4, 1.0))


class TestMeanMap:
    def test_symmetric(self):
        n, c = 6, 2.3
        mp = mean_map(Params.constant(n, c))
        expected = (n - 1) * (digamma(c) - digamma(2 * c))
        np.testing.assert_allclose(mp.A, expected, rtol=1e-14)
        np.testing.assert_allclose(mp.B, expected, rtol=1e-14)

    def test_negative(self, rng):
        mp = mean_map(random_params(rng, 10, 1e-3, 1e3))
        assert np.all(mp.A < 0) and np.all(mp.B < 0)

    def test_monte_carlo(self):
        # numpy's own beta sampler keeps the oracle independent of betagraph.generator
        gen = np.random.default_rng(2024)
        theta = Params([1.5, 3.0, 0.7], [2.0, 0.8, 4.0])
        n, reps = 3, 100_000
        mp = mean_map(theta)
        for i in range(n):
            R = sum(np.log(gen.beta(theta.a[i], theta.b[j], reps)) for j in range(n) if j != i)
            C = sum(np.log1p(-gen.beta(theta.a[j], theta.b[i], reps)) for j in range(n) if j != i)
            for sample, target in ((R, mp.A[i]), (C, mp.B[i])):
                se = sample.std(ddof=1) / math.sqrt(reps)
                assert abs(sample.mean() - target) < 3 * se

    def test_increasing_in_own_parameter(self, rng):
        for _ in range(10):
            theta = random_params(rng, 5, 0.2, 10.0)
            h = 1e-4
            a = theta.a.copy()
            a[2] += h
            up = mean_map(Params(a, theta.b))
            b = theta.b.copy()
            b[3] += h
            upb = mean_map(Params(theta.a, b))
            base = mean_map(theta)
            assert up.A[2] > base.A[2]
            assert upb.B[3] > base.B[3]

    def test_finite_outputs(self):
        for value in (1e-6, 1e6):
            mp = mean_map(Params.constant(50, value))
            assert np.all(np.isfinite(mp.A)) and np.all(np.isfinite(mp.B))


class TestStatsBound:
    def test_all_half_equality(self):
        for n in (2, 3, 7):
            w = np.full((n, n), 0.5)
            np.fill_diagonal(w, 0)
            s = sufficient_stats(w)
            assert check_stats_bound(s)
            assert stats_bound_margin(s) == pytest.approx(0.0, abs=1e-12 * n * n)

    def test_skewed_pair(self):
        s = sufficient_stats([[0, 0.9], [0.9, 0]])
        assert s.R.sum() + s.C.sum() == pytest.approx(2 * math.log(0.09))
        assert 2 * math.log(0.09) < -4 * LN2
        assert check_stats_bound(s)
        assert stats_bound_margin(s) > 0
