"""Directed random graph with beta-distributed edge weights.

The weight of the edge ``i -> j`` follows ``beta(a[i], b[j])``; ``a`` holds the
out-potentials and ``b`` the in-resistances of the vertices.  The row sums of
``ln w`` and the column sums of ``ln(1 - w)`` are sufficient for ``(a, b)``,
so everything downstream of :func:`sufficient_stats` works on those alone.
"""
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ValidationError
from .special import LN2, digamma, lgamma

__all__ = [
    "EdgeWeightMatrix",
    "SufficientStats",
    "Params",
    "MeanParams",
    "sufficient_stats",
    "log_likelihood",
    "ml_residuals",
    "mean_map",
    "stats_bound_margin",
    "check_stats_bound",
]


def _offdiag_mask(n):
    return ~np.eye(n, dtype=bool)


@dataclass(frozen=True)
class EdgeWeightMatrix:
    """Observed weight matrix with zero diagonal and off-diagonal entries in (0, 1).

    The constructor validates; a copy of ``w`` is stored read-only.
    """

    w: np.ndarray
    labels: tuple = None

    def __post_init__(self):
        w = np.array(self.w, dtype=float)
        if w.ndim != 2 or w.shape[0] != w.shape[1]:
            raise ValidationError(f"weight matrix must be square, got shape {w.shape}")
        n = w.shape[0]
        if n < 2:
            raise ValidationError("weight matrix needs at least 2 vertices")
        if np.any(np.diag(w) != 0):
            i = int(np.flatnonzero(np.diag(w) != 0)[0])
            raise ValidationError(
                f"diagonal entry ({i + 1},{i + 1}) is {w[i, i]!r}, must be 0",
                index=(i + 1, i + 1),
            )
        off = _offdiag_mask(n)
        bad = off & ~((w > 0) & (w < 1))
        if bad.any():
            i, j = (int(k) for k in np.argwhere(bad)[0])
            raise ValidationError(
                f"weight at ({i + 1},{j + 1}) is {w[i, j]!r}, must lie strictly in (0, 1)",
                index=(i + 1, j + 1),
            )
        w.setflags(write=False)
        object.__setattr__(self, "w", w)
        if self.labels is not None:
            labels = tuple(str(s) for s in self.labels)
            if len(labels) != n:
                raise ValidationError(f"expected {n} labels, got {len(labels)}")
            if len(set(labels)) != n:
                raise ValidationError("labels must be unique")
            object.__setattr__(self, "labels", labels)

    @property
    def n(self):
        return self.w.shape[0]

    @property
    def log_weights(self):
        """Matrix of ln w_ij with zero diagonal."""
        u = np.zeros_like(self.w)
        off = _offdiag_mask(self.n)
        u[off] = np.log(self.w[off])
        return u

    @property
    def log_complements(self):
        """Matrix of ln(1 - w_ij) with zero diagonal."""
        v = np.zeros_like(self.w)
        off = _offdiag_mask(self.n)
        v[off] = np.log1p(-self.w[off])
        return v


@dataclass(frozen=True)
class SufficientStats:
    """Row sums ``R`` of ln w and column sums ``C`` of ln(1 - w)."""

    R: np.ndarray
    C: np.ndarray

    def __post_init__(self):
        R = np.array(self.R, dtype=float)
        C = np.array(self.C, dtype=float)
        if R.ndim != 1 or R.shape != C.shape:
            raise ValidationError("R and C must be 1-d vectors of equal length")
        if R.size < 2:
            raise ValidationError("need at least 2 vertices")
        if not (np.all(np.isfinite(R)) and np.all(np.isfinite(C))):
            raise ValidationError("statistics must be finite")
        if np.any(R >= 0) or np.any(C >= 0):
            raise ValidationError("every R_i and C_j must be negative")
        R.setflags(write=False)
        C.setflags(write=False)
        object.__setattr__(self, "R", R)
        object.__setattr__(self, "C", C)

    @property
    def n(self):
        return self.R.size

    def permuted(self, perm):
        perm = np.asarray(perm)
        return SufficientStats(self.R[perm], self.C[perm])


@dataclass(frozen=True)
class Params:
    """Beta shape parameters: ``a`` (out-potentials) and ``b`` (in-resistances)."""

    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        a = np.array(self.a, dtype=float)
        b = np.array(self.b, dtype=float)
        if a.ndim != 1 or a.shape != b.shape:
            raise DomainError("a and b must be 1-d vectors of equal length")
        if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
            raise DomainError("parameters must be finite")
        if np.any(a <= 0) or np.any(b <= 0):
            raise DomainError("parameters must be strictly positive")
        a.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def n(self):
        return self.a.size

    def as_vector(self):
        """Concatenation ``(a, b)`` of length 2n."""
        return np.concatenate([self.a, self.b])

    @classmethod
    def from_vector(cls, theta):
        theta = np.asarray(theta, dtype=float)
        n = theta.size // 2
        return cls(theta[:n], theta[n:])

    @classmethod
    def constant(cls, n, value):
        return cls(np.full(n, float(value)), np.full(n, float(value)))


@dataclass(frozen=True)
class MeanParams:
    """Expected sufficient statistics ``(A, B)`` under given parameters."""

    A: np.ndarray
    B: np.ndarray

    def as_stats(self):
        return SufficientStats(self.A, self.B)


def _as_weights(W):
    return W if isinstance(W, EdgeWeightMatrix) else EdgeWeightMatrix(W)


def _check_sizes(stats, theta):
    if stats.n != theta.n:
        raise ValidationError(
            f"statistics have n={stats.n} but parameters have n={theta.n}"
        )


def _pair_digamma(theta):
    """psi(a_i + b_j) with the diagonal zeroed."""
    s = digamma(theta.a[:, None] + theta.b[None, :])
    np.fill_diagonal(s, 0.0)
    return s


def sufficient_stats(W):
    """Compute ``R_i = sum_{j!=i} ln w_ij`` and ``C_j = sum_{i!=j} ln(1 - w_ij)``.

    ``W`` may be an :class:`EdgeWeightMatrix` or anything array-like; the latter
    is validated first.
    """
    W = _as_weights(W)
    return SufficientStats(W.log_weights.sum(axis=1), W.log_complements.sum(axis=0))


def log_likelihood(stats, theta):
    """Log-likelihood of ``theta`` given the sufficient statistics."""
    _check_sizes(stats, theta)
    n = stats.n
    g = lgamma(theta.a[:, None] + theta.b[None, :])
    np.fill_diagonal(g, 0.0)
    norm = g.sum() - (n - 1) * (lgamma(theta.a).sum() + lgamma(theta.b).sum())
    return float(norm + np.dot(theta.a - 1, stats.R) + np.dot(theta.b - 1, stats.C))


def ml_residuals(stats, theta):
    """Gradient of the log-likelihood with respect to ``(a, b)``.

    Returns ``(rho_a, rho_b)`` where

        rho_a[i] = sum_{j!=i} psi(a_i + b_j) - (n-1) psi(a_i) + R_i
        rho_b[j] = sum_{i!=j} psi(a_i + b_j) - (n-1) psi(b_j) + C_j

    Both vanish exactly at the ML estimate.
    """
    _check_sizes(stats, theta)
    n = stats.n
    s = _pair_digamma(theta)
    rho_a = s.sum(axis=1) - (n - 1) * digamma(theta.a) + stats.R
    rho_b = s.sum(axis=0) - (n - 1) * digamma(theta.b) + stats.C
    return rho_a, rho_b


def mean_map(theta):
    """Expected value of the sufficient statistics under ``theta``.

    Uses ``E ln w = psi(a) - psi(a + b)`` and ``E ln(1 - w) = psi(b) - psi(a + b)``
    for ``w ~ beta(a, b)``.
    """
    n = theta.n
    s = _pair_digamma(theta)
    A = (n - 1) * digamma(theta.a) - s.sum(axis=1)
    B = (n - 1) * digamma(theta.b) - s.sum(axis=0)
    return MeanParams(A, B)


def stats_bound_margin(stats):
    """``-2 ln2 n(n-1) - (sum R + sum C)``; nonnegative for any valid input."""
    n = stats.n
    return float(-2.0 * LN2 * n * (n - 1) - (stats.R.sum() + stats.C.sum()))


def check_stats_bound(stats):
    """True iff ``sum R + sum C <= -2 ln2 n(n-1)``.

    The bound is attained only when every weight equals 1/2, so a relative
    slack of 1e-12 absorbs rounding in that case.
    """
    n = stats.n
    return stats_bound_margin(stats) >= -1e-12 * 2.0 * LN2 * n * (n - 1)
