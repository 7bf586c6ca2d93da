"""Ground-truth constructors and synthetic samplers.

Truth matrices come in three flavors: Toeplitz precision (geometric
decay away from the diagonal), block-diagonal "diamond" precision (a
4x4 motif that violates the irrepresentable condition for graphical
lasso while staying positive definite), and correlation-of-inverse
conversions used by the rank-based and matrix-variate scenarios.

Samplers cover Gaussian, heavy-tailed multivariate t, Gaussian-copula
(nonparanormal) and matrix-normal data.  Every sampler takes a ``seed``
argument accepted by :func:`numpy.random.default_rng`, and replication
streams are split with :func:`replication_rng` so runs parallelize
without changing results.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.integrate
import scipy.linalg
import scipy.stats

from .exceptions import (
    BadDimension,
    NotCorrelation,
    NuTooSmall,
    RhoOutOfRange,
)
from .linalg import cholesky, invert_spd, kronecker, matrix_norm, symmetrize

#: Bit generator used by every sampler; recorded in experiment metadata.
RNG_ALGORITHM = "numpy PCG64 via default_rng"

#: Gaussian-CDF transform defaults for the nonparanormal sampler.
MU_G0_DEFAULT = 0.05
SIGMA_G0_DEFAULT = 0.4


def replication_rng(seed: int, rep: int) -> np.random.Generator:
    """Independent stream for one replication of an experiment.

    Streams are split from the root seed with a spawn key, so the data
    seen by replication ``rep`` does not depend on how many other
    replications run, or in what order, or on which thread.
    """
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(rep,)))


def make_toeplitz_precision(p: int, rho: float) -> np.ndarray:
    """Toeplitz precision matrix with entries rho^|i-j|."""
    if p < 1:
        raise BadDimension(f"dimension must be at least 1, got {p}")
    if not -1.0 < rho < 1.0:
        raise RhoOutOfRange(f"toeplitz decay rho must lie in (-1, 1), got {rho}")
    # integer exponents keep negative rho exact (no float-power NaN)
    return scipy.linalg.toeplitz(rho ** np.arange(p))


def diamond_block(rho: float) -> np.ndarray:
    """The 4x4 covariance block whose inverse forms the diamond precision."""
    r2 = 2.0 * rho * rho
    return np.array(
        [
            [1.0, rho, rho, r2],
            [rho, 1.0, 0.0, rho],
            [rho, 0.0, 1.0, rho],
            [r2, rho, rho, 1.0],
        ]
    )


def make_diamond_precision(p: int, rho: float) -> np.ndarray:
    """Block-diagonal precision built from inverted 4x4 diamond blocks.

    The covariance is exactly block diagonal with the displayed block,
    so the precision is the same layout with the block inverted.  The
    block stays positive definite only for |rho| < 1/sqrt(2).
    """
    if p < 4 or p % 4 != 0:
        raise BadDimension(f"diamond construction needs p divisible by 4, got {p}")
    if not abs(rho) < 1.0 / math.sqrt(2.0):
        raise RhoOutOfRange(
            f"diamond rho must lie in (-1/sqrt2, 1/sqrt2) for positive definiteness, got {rho}"
        )
    block_inv = invert_spd(diamond_block(rho))
    return kronecker(np.eye(p // 4), block_inv)


def correlation_of_inverse(omega0: np.ndarray) -> np.ndarray:
    """Correlation matrix of the inverse of ``omega0``.

    Inverts, then rescales to unit diagonal: D^{-1/2} omega0^{-1} D^{-1/2}.
    """
    inv = invert_spd(omega0)
    root = np.sqrt(np.diag(inv))
    c = symmetrize(inv / np.outer(root, root))
    np.fill_diagonal(c, 1.0)
    return c


@dataclass(frozen=True)
class TruthSpec:
    """Recipe for a ground-truth (precision, covariance) pair."""

    constructor: str
    p: int
    rho: float

    def build(self):
        """Return (omega, sigma) with sigma the exact inverse of omega."""
        if self.constructor == "toeplitz":
            omega = make_toeplitz_precision(self.p, self.rho)
            return omega, invert_spd(omega)
        if self.constructor == "diamond_block":
            omega = make_diamond_precision(self.p, self.rho)
            sigma = kronecker(np.eye(self.p // 4), diamond_block(self.rho))
            return omega, sigma
        if self.constructor == "correlation_of_inverse":
            sigma = correlation_of_inverse(make_toeplitz_precision(self.p, self.rho))
            return invert_spd(sigma), sigma
        raise ValueError(f"unknown truth constructor {self.constructor!r}")


def sample_gaussian(n: int, sigma: np.ndarray, seed) -> np.ndarray:
    """n rows from N(0, sigma)."""
    if n < 1:
        raise BadDimension("need at least one sample")
    lower = cholesky(sigma)
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((n, sigma.shape[0]))
    return z @ lower.T


def sample_mvt(n: int, sigma: np.ndarray, nu: float, seed) -> np.ndarray:
    """n rows from a multivariate t with population covariance sigma.

    The scale matrix is ((nu - 2) / nu) * sigma, which cancels the
    t-distribution's variance inflation nu / (nu - 2), so error curves
    against the target covariance are meaningful.

    Raises
    ------
    NuTooSmall
        If nu <= 2, where the covariance does not exist.
    """
    if n < 1:
        raise BadDimension("need at least one sample")
    if nu <= 2.0:
        raise NuTooSmall(f"degrees of freedom must exceed 2 for a finite covariance, got {nu}")
    lower = cholesky(sigma * ((nu - 2.0) / nu))
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((n, sigma.shape[0]))
    w = rng.chisquare(nu, size=n)
    return (z @ lower.T) / np.sqrt(w / nu)[:, None]


@functools.lru_cache(maxsize=32)
def _gauss_cdf_moments(mu_g0: float, sigma_g0: float):
    """Mean and standard deviation of PHI((Z - mu)/sigma) for Z ~ N(0,1).

    Computed by adaptive quadrature against the normal density; cached
    because every sample call with the same transform reuses them.
    """
    phi = scipy.stats.norm.pdf
    cdf = scipy.stats.norm.cdf

    def first(z):
        return cdf((z - mu_g0) / sigma_g0) * phi(z)

    def second(z):
        return cdf((z - mu_g0) / sigma_g0) ** 2 * phi(z)

    m1, _ = scipy.integrate.quad(first, -np.inf, np.inf, epsabs=1e-10, epsrel=1e-12)
    m2, _ = scipy.integrate.quad(second, -np.inf, np.inf, epsabs=1e-10, epsrel=1e-12)
    var = m2 - m1 * m1
    if var <= 0:
        raise ValueError("degenerate CDF transform; check mu_g0 and sigma_g0")
    return m1, math.sqrt(var)


def sample_nonparanormal(
    n: int,
    sigma: np.ndarray,
    mu_g0: float = MU_G0_DEFAULT,
    sigma_g0: float = SIGMA_G0_DEFAULT,
    seed=None,
) -> np.ndarray:
    """Gaussian-copula sample: latent N(0, sigma), marginals distorted.

    Each latent coordinate z maps through the strictly increasing
    transform PHI((z - mu_g0) / sigma_g0), centered and scaled to zero
    mean and unit variance.  Rank statistics of the output therefore
    coincide with those of the latent Gaussian sample.

    ``sigma`` must be a correlation matrix; anything with a non-unit
    diagonal raises NotCorrelation.
    """
    sigma = np.asarray(sigma, dtype=float)
    if np.max(np.abs(np.diag(sigma) - 1.0)) > 1e-12:
        raise NotCorrelation("nonparanormal sampling needs a unit-diagonal correlation matrix")
    if sigma_g0 <= 0:
        raise ValueError("sigma_g0 must be positive")
    z = sample_gaussian(n, sigma, seed)
    m1, sd = _gauss_cdf_moments(float(mu_g0), float(sigma_g0))
    return (scipy.stats.norm.cdf((z - mu_g0) / sigma_g0) - m1) / sd


def sample_matrix_normal(n: int, a: np.ndarray, b: np.ndarray, seed) -> np.ndarray:
    """n matrix-normal samples with cov(vec X) = A kron B (column-major vec).

    Each sample is L_B G L_A' for a fresh f-by-m standard normal G,
    where A = L_A L_A' is the m-by-m column covariance and B = L_B L_B'
    the f-by-f row covariance.  Returned stacked as an (n, f, m) array.
    """
    if n < 1:
        raise BadDimension("need at least one sample")
    lower_a = cholesky(a)
    lower_b = cholesky(b)
    m = a.shape[0]
    f = b.shape[0]
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((n, f, m))
    return np.einsum("ij,tjk,lk->til", lower_b, g, lower_a)


@dataclass(frozen=True)
class SparsitySummary:
    """Weak-sparsity quantities of a precision matrix at exponent q."""

    q: float
    s_p: float
    M_p: float
    s_p_limit: Optional[float] = None


def column_lq_norms(omega: np.ndarray, q: float) -> np.ndarray:
    """Per-column sums of |entry|^q, with |x|^0 counting nonzeros."""
    a = np.abs(np.asarray(omega, dtype=float))
    if q == 0.0:
        return (a != 0.0).sum(axis=0).astype(float)
    return (a**q).sum(axis=0)


def toeplitz_sparsity_limit(rho: float, q: float) -> float:
    """Large-p limit (1 + rho^q) / (1 - rho^q) of the Toeplitz column sums."""
    r = 0.0 if rho == 0.0 else abs(rho) ** q
    if r >= 1.0:
        return math.inf
    return (1.0 + r) / (1.0 - r)


def sparsity_summary(
    omega: np.ndarray, q: float, toeplitz_rho: Optional[float] = None
) -> SparsitySummary:
    """Compute s_p (max column lq quasi-norm) and M_p (matrix L1 norm).

    Pass ``toeplitz_rho`` when the matrix is a Toeplitz truth to record
    the closed-form infinite-p limit of s_p alongside the exact value.
    """
    if not 0.0 <= q < 1.0:
        raise ValueError(f"sparsity exponent q must lie in [0, 1), got {q}")
    s_p = float(column_lq_norms(omega, q).max())
    m_p = matrix_norm(omega, "l1")
    limit = None if toeplitz_rho is None else toeplitz_sparsity_limit(toeplitz_rho, q)
    return SparsitySummary(q=q, s_p=s_p, M_p=m_p, s_p_limit=limit)
