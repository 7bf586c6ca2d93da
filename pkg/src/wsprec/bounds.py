"""Error reporting and non-asymptotic bound checking.

The two theorems behind this package give deterministic guarantees for
the penalized column solver whenever two hypotheses hold: the penalty
dominates the pilot's elementwise error (lam >= 3 M_p |S - Sigma|_inf)
and the weak-sparsity mass is small enough (M_p^{-q} lam^{1-q} s_p
<= 1/2).  :func:`check_bounds` evaluates both hypotheses and all four
bound inequalities on a concrete instance; when the hypotheses hold the
inequalities must hold, and the test suite asserts exactly that.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .exceptions import DimensionMismatch, EmptyPath
from .linalg import matrix_norm
from .simulate import sparsity_summary
from .solver import LambdaPath, scio_estimate


@dataclass(frozen=True)
class ErrorReport:
    """Five norms of an (estimate - truth) difference."""

    elementwise_inf: float
    spectral: float
    l1: float
    frobenius: float
    scaled_frobenius: float

    def by_kind(self, kind: str) -> float:
        try:
            return getattr(self, kind)
        except AttributeError as err:
            raise ValueError(f"unknown norm kind {kind!r}") from err


def error_report(estimate: np.ndarray, truth: np.ndarray) -> ErrorReport:
    """All five error norms of the difference matrix."""
    estimate = np.asarray(estimate, dtype=float)
    truth = np.asarray(truth, dtype=float)
    if estimate.shape != truth.shape:
        raise DimensionMismatch(
            f"estimate has shape {estimate.shape}, truth has shape {truth.shape}"
        )
    diff = estimate - truth
    return ErrorReport(
        elementwise_inf=matrix_norm(diff, "elementwise_inf"),
        spectral=matrix_norm(diff, "spectral"),
        l1=matrix_norm(diff, "l1"),
        frobenius=matrix_norm(diff, "frobenius"),
        scaled_frobenius=matrix_norm(diff, "scaled_frobenius"),
    )


@dataclass(frozen=True)
class BoundLine:
    """One inequality: its computed sides and whether it held."""

    name: str
    lhs: float
    rhs: float
    satisfied: bool


@dataclass(frozen=True)
class BoundCheck:
    """Hypotheses and bound inequalities evaluated on one instance.

    ``lines`` holds the two per-column bounds (worst column reported)
    and the two whole-matrix bounds.  When ``hypotheses_hold`` is true
    every line must be satisfied; that implication is a theorem, so a
    counterexample means a solver bug.
    """

    lam: float
    q: float
    s_p: float
    M_p: float
    sigma_gap: float
    hypothesis_lambda: bool
    hypothesis_sparsity: bool
    lines: Tuple[BoundLine, ...]

    @property
    def hypotheses_hold(self) -> bool:
        return self.hypothesis_lambda and self.hypothesis_sparsity

    @property
    def all_satisfied(self) -> bool:
        return all(line.satisfied for line in self.lines)


def check_bounds(
    truth_omega: np.ndarray,
    sigma_hat: np.ndarray,
    sigma_true: np.ndarray,
    lam: float,
    q: float,
) -> BoundCheck:
    """Solve at one penalty and compare against the theorem bounds.

    Parameters
    ----------
    truth_omega : ndarray
        The true precision matrix (columns are the solver's targets).
    sigma_hat : ndarray
        Pilot covariance handed to the solver.
    sigma_true : ndarray
        Population covariance, used only for the hypothesis on the
        pilot's elementwise error.
    lam, q : float
        Penalty and weak-sparsity exponent.
    """
    est = scio_estimate(sigma_hat, lam)
    return evaluate_bounds(truth_omega, sigma_hat, sigma_true, est, q)


def evaluate_bounds(
    truth_omega: np.ndarray,
    sigma_hat: np.ndarray,
    sigma_true: np.ndarray,
    est,
    q: float,
) -> BoundCheck:
    """Bound check against an estimate that was already solved.

    Useful when the same solve is audited at several sparsity
    exponents; :func:`check_bounds` is the solve-and-evaluate wrapper.
    """
    lam = est.lam
    truth_omega = np.asarray(truth_omega, dtype=float)
    if truth_omega.shape != np.shape(sigma_hat) or truth_omega.shape != np.shape(sigma_true):
        raise DimensionMismatch("truth, pilot and population matrices must share a shape")
    summary = sparsity_summary(truth_omega, q)
    s_p, m_p = summary.s_p, summary.M_p
    gap = matrix_norm(np.asarray(sigma_hat, dtype=float) - sigma_true, "elementwise_inf")
    hyp_lambda = lam >= 3.0 * m_p * gap
    hyp_sparsity = m_p ** (-q) * lam ** (1.0 - q) * s_p <= 0.5

    b = est.beta_matrix()
    col_diff = b - truth_omega
    worst_l1 = float(np.abs(col_diff).sum(axis=0).max())
    worst_inf = float(np.abs(col_diff).max())
    rhs_col_l1 = 16.0 * m_p ** (1.0 - q) * s_p * lam ** (1.0 - q)
    rhs_inf = 4.0 * m_p * lam

    mat_diff = est.omega_tilde - truth_omega
    mat_inf = matrix_norm(mat_diff, "elementwise_inf")
    mat_l1 = matrix_norm(mat_diff, "l1")
    rhs_mat_l1 = 66.0 * (lam * m_p) ** (1.0 - q) * s_p

    lines = (
        BoundLine("column_l1", worst_l1, rhs_col_l1, worst_l1 <= rhs_col_l1),
        BoundLine("column_inf", worst_inf, rhs_inf, worst_inf <= rhs_inf),
        BoundLine("matrix_inf", mat_inf, rhs_inf, mat_inf <= rhs_inf),
        BoundLine("matrix_l1", mat_l1, rhs_mat_l1, mat_l1 <= rhs_mat_l1),
    )
    return BoundCheck(
        lam=lam,
        q=q,
        s_p=s_p,
        M_p=m_p,
        sigma_gap=gap,
        hypothesis_lambda=bool(hyp_lambda),
        hypothesis_sparsity=bool(hyp_sparsity),
        lines=lines,
    )


def oracle_tune(path: LambdaPath, truth: np.ndarray, norm_kind: str = "frobenius"):
    """Pick the grid point minimizing the chosen error norm against truth.

    Ties go to the larger penalty (the sparser estimate).  Returns the
    winning penalty and its full :class:`ErrorReport`.
    """
    if len(path) == 0:
        raise EmptyPath("cannot tune over an empty penalty path")
    order = np.argsort(path.grid)[::-1]
    best_lam = None
    best_report = None
    best_value = np.inf
    for k in order:
        report = error_report(path.estimates[int(k)].omega_tilde, truth)
        value = report.by_kind(norm_kind)
        if value < best_value:
            best_value = value
            best_lam = float(path.grid[int(k)])
            best_report = report
    return best_lam, best_report
