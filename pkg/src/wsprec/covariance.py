"""Pilot covariance estimators feeding the precision-matrix solver.

Four families are provided, matching the regimes the package supports:

* :func:`sample_covariance` for light-tailed data,
* :func:`huber_covariance` for heavy-tailed data, built from robust
  location estimates of first and second moments,
* :func:`rank_correlation_matrix` for nonparanormal data, built from
  Spearman or Kendall correlations mapped through sine transforms,
* :func:`gemini_covariances` for matrix-variate data with a Kronecker
  covariance, one normalized Gram pilot per axis.

The robust and rank-based pilots are not positive semidefinite in
general, so both are passed through :func:`psd_project`, the sup-norm
projection onto the cone of matrices with smallest eigenvalue at least
``epsilon``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.stats

from .exceptions import (
    BadDimension,
    ConvergenceFailure,
    DegenerateAxis,
    DegenerateColumn,
    DimensionMismatch,
)
from .linalg import as_symmetric, symmetrize

#: Default multiplier for the Huber truncation level H = K (n / log p)^(1/2).
HUBER_K_DEFAULT = 2.0

#: Default eigenvalue floor for the cone projection.
EPSILON_DEFAULT = 1e-3

_BISECT_MAX_ITER = 200
_BISECT_WIDTH = 1e-12

_ADMM_RHO = 1.0
_ADMM_TOL = 1e-6
_ADMM_MAX_ITER = 2000


@dataclass(frozen=True)
class CovarianceEstimate:
    """A pilot covariance matrix plus provenance metadata.

    Attributes
    ----------
    matrix : ndarray
        Symmetric p-by-p estimate.
    kind : str
        One of ``sample``, ``huber``, ``spearman``, ``kendall``,
        ``gemini_A``, ``gemini_B``.
    huber_H : float, optional
        The truncation level used, for the Huber kind only.
    projected : bool
        True when the cone projection was applied.
    epsilon : float, optional
        The eigenvalue floor used by the projection, when applied.
    """

    matrix: np.ndarray
    kind: str
    huber_H: Optional[float] = None
    projected: bool = False
    epsilon: Optional[float] = None

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def as_data_matrix(x: np.ndarray, name: str = "data") -> np.ndarray:
    """Validate an n-by-p data matrix (rows are observations).

    Requires at least two rows, at least one column and finite entries.
    """
    x = np.asarray(x, dtype=float)
    if x.ndim != 2:
        raise DimensionMismatch(f"{name} must be a 2-d array, got shape {x.shape}")
    n, p = x.shape
    if n < 2:
        raise BadDimension(f"{name} needs at least 2 observations, got {n}")
    if p < 1:
        raise BadDimension(f"{name} needs at least 1 variable")
    if not np.all(np.isfinite(x)):
        raise ValueError(f"{name} contains non-finite entries")
    return x


def sample_covariance(data: np.ndarray) -> CovarianceEstimate:
    """Mean-centered sample covariance with 1/n normalization."""
    x = as_data_matrix(data)
    centered = x - x.mean(axis=0)
    s = symmetrize(centered.T @ centered / x.shape[0])
    return CovarianceEstimate(matrix=s, kind="sample")


def huber_psi(x, H: float):
    """Huber influence function: clamp of ``x`` to ``[-H, H]``.

    Accepts scalars or arrays and clamps elementwise.
    """
    if H <= 0:
        raise ValueError("Huber truncation level H must be positive")
    return np.clip(x, -H, H)


def _bisect_locations(values: np.ndarray, H: float) -> np.ndarray:
    """Roots of the Huber estimating equation, one per column of ``values``.

    For each column v the function f(m) = sum_k clamp(v_k - m, -H, H) is
    continuous and nonincreasing with f(min v - H) = nH > 0 and
    f(max v + H) = -nH < 0, so bisection cannot fail.  Flat stretches
    (every residual clamped) resolve to the midpoint of the final
    bracket.  All columns are bisected in lockstep; each stops moving
    once its own bracket collapses.
    """
    lo = values.min(axis=0) - H
    hi = values.max(axis=0) + H
    for _ in range(_BISECT_MAX_ITER):
        mid = 0.5 * (lo + hi)
        fmid = np.clip(values - mid[None, :], -H, H).sum(axis=0)
        above = fmid > 0.0
        lo = np.where(above, mid, lo)
        hi = np.where(above, hi, mid)
        if np.max(hi - lo) <= _BISECT_WIDTH:
            break
    return 0.5 * (lo + hi)


def huber_location(x: np.ndarray, H: float) -> float:
    """Robust location: the root of ``sum_k clamp(x_k - m, -H, H) = 0``.

    Parameters
    ----------
    x : array_like
        One-dimensional sample, length at least 1.
    H : float
        Positive truncation level.  Large H recovers the sample mean;
        small H behaves like the median.
    """
    if H <= 0:
        raise ValueError("Huber truncation level H must be positive")
    x = np.asarray(x, dtype=float).ravel()
    if x.size < 1:
        raise BadDimension("huber_location needs at least one observation")
    if not np.all(np.isfinite(x)):
        raise ValueError("huber_location requires finite values")
    return float(_bisect_locations(x[:, None], H)[0])


def huber_pilot_matrix(data: np.ndarray, k_const: float = HUBER_K_DEFAULT):
    """Robust moment matrix before any cone projection.

    Sets H = k_const (n / log p)^(1/2), estimates each mean mu_i by
    Huber location, then solves the second-moment estimating equation
    sum_k clamp(X_ki X_kj - (s_ij + mu_i mu_j)) = 0 for every pair.
    The pairwise equation is just a Huber location problem on the
    products, shifted by mu_i mu_j afterward.

    Returns
    -------
    (ndarray, float)
        The symmetric pilot matrix and the truncation level H.
    """
    x = as_data_matrix(data)
    n, p = x.shape
    if p < 2:
        raise BadDimension("the Huber pilot needs p >= 2 so that log p is positive")
    if k_const <= 0:
        raise ValueError("k_const must be positive")
    H = k_const * math.sqrt(n / math.log(p))
    mu = _bisect_locations(x, H)
    rows, cols = np.triu_indices(p)
    products = x[:, rows] * x[:, cols]
    theta = _bisect_locations(products, H)
    sig = theta - mu[rows] * mu[cols]
    s = np.zeros((p, p))
    s[rows, cols] = sig
    s[cols, rows] = sig
    return s, H


def huber_covariance(
    data: np.ndarray,
    k_const: float = HUBER_K_DEFAULT,
    epsilon: float = EPSILON_DEFAULT,
) -> CovarianceEstimate:
    """Huber-robust covariance pilot, projected onto the PD cone."""
    raw, H = huber_pilot_matrix(data, k_const)
    projected = psd_project(raw, epsilon)
    return CovarianceEstimate(
        matrix=projected, kind="huber", huber_H=H, projected=True, epsilon=epsilon
    )


def _reject_constant_columns(x: np.ndarray) -> None:
    spans = x.max(axis=0) - x.min(axis=0)
    flat = np.nonzero(spans == 0.0)[0]
    if flat.size:
        raise DegenerateColumn(
            f"column {int(flat[0])} is constant; rank correlation is undefined"
        )


def spearman_rho_matrix(data: np.ndarray) -> np.ndarray:
    """Spearman correlation matrix: Pearson correlation of mid-ranks."""
    x = as_data_matrix(data)
    _reject_constant_columns(x)
    ranks = scipy.stats.rankdata(x, method="average", axis=0)
    rho = np.atleast_2d(np.corrcoef(ranks, rowvar=False))
    return symmetrize(rho)


def kendall_tau_matrix(data: np.ndarray) -> np.ndarray:
    """Kendall tau matrix by the O(n^2) pairwise sign definition.

    tau_ij = 2 / (n (n-1)) * sum over pairs k < k' of
    sign((X_ki - X_k'i)(X_kj - X_k'j)).  Accumulated one observation at
    a time so memory stays O(np) rather than O(n^2 p).
    """
    x = as_data_matrix(data)
    _reject_constant_columns(x)
    n, p = x.shape
    acc = np.zeros((p, p))
    for k in range(n):
        d = np.sign(x[k] - x)
        acc += d.T @ d
    return symmetrize(acc / (n * (n - 1)))


def rank_pilot_matrix(data: np.ndarray, method: str) -> np.ndarray:
    """Sine-transformed rank correlation matrix, unit diagonal, unprojected."""
    if method == "spearman":
        s = 2.0 * np.sin(np.pi * spearman_rho_matrix(data) / 6.0)
    elif method == "kendall":
        s = np.sin(np.pi * kendall_tau_matrix(data) / 2.0)
    else:
        raise ValueError(f"unknown rank method {method!r}; expected spearman or kendall")
    np.fill_diagonal(s, 1.0)
    return s


def rank_correlation_matrix(
    data: np.ndarray, method: str, epsilon: float = EPSILON_DEFAULT
) -> CovarianceEstimate:
    """Rank-based correlation pilot, projected onto the PD cone.

    Spearman correlations map through 2 sin(pi r / 6) and Kendall
    correlations through sin(pi t / 2); both transforms are the
    consistency corrections for nonparanormal data.  The result depends
    on the data only through column ranks, so any strictly increasing
    marginal distortion leaves it bit-for-bit unchanged.
    """
    raw = rank_pilot_matrix(data, method)
    projected = psd_project(raw, epsilon)
    return CovarianceEstimate(
        matrix=projected, kind=method, projected=True, epsilon=epsilon
    )


def _project_l1_ball(v: np.ndarray, radius: float) -> np.ndarray:
    """Euclidean projection of a flat vector onto the l1-ball of given radius.

    Sorting-based: find the soft-threshold level theta so that the
    shrunken vector has l1 norm exactly ``radius``.
    """
    a = np.abs(v)
    if a.sum() <= radius:
        return v.copy()
    u = np.sort(a)[::-1]
    c = np.cumsum(u)
    idx = np.arange(1, u.size + 1)
    k = int(idx[u - (c - radius) / idx > 0][-1])
    theta = (c[k - 1] - radius) / k
    return np.sign(v) * np.maximum(a - theta, 0.0)


def _clip_to_cone(s: np.ndarray, floor: float) -> np.ndarray:
    """Eigenvalue clipping onto {Z : Z >= floor * I} in the Frobenius metric."""
    w, vec = np.linalg.eigh(symmetrize(s))
    return symmetrize((vec * np.maximum(w, floor)) @ vec.T)


def psd_project(s_tilde: np.ndarray, epsilon: float) -> np.ndarray:
    """Sup-norm projection onto matrices with smallest eigenvalue >= epsilon.

    Solves argmin over Sigma >= epsilon I of max_ij |Sigma_ij - S_ij| by
    ADMM on the splitting Sigma = Z.  The Sigma update is the proximal
    map of the sup-norm distance (computed exactly through an l1-ball
    projection of the residual), the Z update is eigenvalue clipping.
    Input already satisfying the floor is returned unchanged.

    Raises
    ------
    ConvergenceFailure
        If the residuals have not both dropped below tolerance after
        2000 iterations; raise the budget rather than trust the output.
    """
    s = as_symmetric(s_tilde, name="pilot matrix")
    if epsilon <= 0:
        raise ValueError("projection floor epsilon must be positive")
    if np.linalg.eigvalsh(s)[0] >= epsilon:
        return s
    z = _clip_to_cone(s, epsilon)
    u = np.zeros_like(s)
    tol = _ADMM_TOL * max(1.0, float(np.linalg.norm(s, "fro")))
    for _ in range(_ADMM_MAX_ITER):
        v = z - u - s
        sigma = s + _sup_norm_prox(v, 1.0 / _ADMM_RHO)
        z_prev = z
        z = _clip_to_cone(sigma + u, epsilon)
        u = u + sigma - z
        primal = np.linalg.norm(sigma - z, "fro")
        dual = _ADMM_RHO * np.linalg.norm(z - z_prev, "fro")
        if primal <= tol and dual <= tol:
            return z
    raise ConvergenceFailure(
        f"cone projection stalled after {_ADMM_MAX_ITER} ADMM iterations"
    )


def _sup_norm_prox(v: np.ndarray, t: float) -> np.ndarray:
    """Proximal map of t * sup-norm via the Moreau decomposition."""
    return v - _project_l1_ball(v.ravel(), t).reshape(v.shape)


def _as_matrix_samples(samples) -> np.ndarray:
    try:
        arr = np.asarray(samples, dtype=float)
    except ValueError as err:
        raise DimensionMismatch("matrix samples must share a common shape") from err
    if arr.ndim != 3:
        raise DimensionMismatch(
            f"expected a stack of 2-d samples, got an array of ndim {arr.ndim}"
        )
    if min(arr.shape) < 1:
        raise BadDimension("matrix samples need n >= 1 and positive dimensions")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix samples contain non-finite entries")
    return arr


def _normalize_gram(gram: np.ndarray, axis_name: str) -> np.ndarray:
    d = np.diag(gram).copy()
    if np.any(d <= 0):
        raise DegenerateAxis(
            f"a {axis_name} is identically zero across all samples; cannot normalize"
        )
    root = np.sqrt(d)
    c = symmetrize(gram / np.outer(root, root))
    np.clip(c, -1.0, 1.0, out=c)
    np.fill_diagonal(c, 1.0)
    return c


def gemini_covariances(samples) -> tuple:
    """Normalized Gram pilots for Kronecker-structured matrix data.

    Parameters
    ----------
    samples : sequence of ndarray
        n matrices, each f-by-m, or an (n, f, m) array.  No centering
        is applied; the model is zero-mean.

    Returns
    -------
    (CovarianceEstimate, CovarianceEstimate)
        The m-by-m column-axis estimate (kind ``gemini_A``) and the
        f-by-f row-axis estimate (kind ``gemini_B``).  Both have unit
        diagonal and entries in [-1, 1].
    """
    arr = _as_matrix_samples(samples)
    gram_a = np.tensordot(arr, arr, axes=([0, 1], [0, 1]))
    gram_b = np.tensordot(arr, arr, axes=([0, 2], [0, 2]))
    est_a = CovarianceEstimate(matrix=_normalize_gram(gram_a, "column"), kind="gemini_A")
    est_b = CovarianceEstimate(matrix=_normalize_gram(gram_b, "row"), kind="gemini_B")
    return est_a, est_b
