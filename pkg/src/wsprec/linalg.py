"""Dense symmetric linear-algebra kernels shared by the whole package.

Everything here operates on plain ``numpy`` arrays.  Symmetric matrices
are stored fully (both triangles); :func:`symmetrize` mirrors the two
triangles so that ``a[i, j] == a[j, i]`` holds exactly, and every
routine that returns a symmetric matrix applies it before returning.

The heavy lifting (factorizations, eigendecompositions, singular
values) is delegated to LAPACK through ``numpy.linalg`` / ``scipy``;
this module pins down the error contracts on top.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .exceptions import (
    ConvergenceFailure,
    DimensionMismatch,
    DimensionOverflow,
    NotPositiveDefinite,
)

#: Largest row/column count a Kronecker product is allowed to produce.
DEFAULT_KRON_CAP = 10_000

NORM_KINDS = ("elementwise_inf", "l1", "spectral", "frobenius", "scaled_frobenius")


def symmetrize(a: np.ndarray) -> np.ndarray:
    """Mirror the triangles of ``a``: returns ``(a + a.T) / 2``.

    The result is exactly symmetric in floating point because the
    averaged expression is invariant under swapping ``i`` and ``j``.
    """
    a = np.asarray(a, dtype=float)
    return (a + a.T) / 2.0


def as_symmetric(a: np.ndarray, tol: float = 1e-8, name: str = "matrix") -> np.ndarray:
    """Validate that ``a`` is a finite square symmetric matrix.

    Asymmetry up to ``tol`` (relative to the largest entry) is repaired
    by mirroring; anything worse raises :class:`DimensionMismatch`.
    """
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"{name} must be square, got shape {a.shape}")
    if a.shape[0] < 1:
        raise DimensionMismatch(f"{name} must have dimension >= 1")
    if not np.all(np.isfinite(a)):
        raise ValueError(f"{name} contains non-finite entries")
    scale = max(1.0, float(np.max(np.abs(a))))
    if np.max(np.abs(a - a.T)) > tol * scale:
        raise DimensionMismatch(f"{name} is not symmetric within tolerance {tol}")
    return symmetrize(a)


def cholesky(s: np.ndarray) -> np.ndarray:
    """Lower-triangular factor ``L`` with ``L @ L.T == s``.

    Raises
    ------
    NotPositiveDefinite
        If a pivot is non-positive, i.e. ``s`` is not positive definite.
        Callers are expected to project or regularize and retry.
    """
    s = as_symmetric(s)
    try:
        return np.linalg.cholesky(s)
    except np.linalg.LinAlgError as err:
        raise NotPositiveDefinite(f"matrix of dimension {s.shape[0]} is not positive definite") from err


def is_spd(s: np.ndarray) -> bool:
    """True when the symmetric matrix ``s`` admits a Cholesky factor."""
    try:
        cholesky(s)
    except NotPositiveDefinite:
        return False
    return True


@dataclass(frozen=True)
class EigenDecomp:
    """Eigendecomposition of a symmetric matrix.

    Attributes
    ----------
    eigenvalues : ndarray
        Real eigenvalues in ascending order.
    eigenvectors : ndarray
        Orthonormal eigenvectors as columns, aligned with ``eigenvalues``.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        """Recompose ``V diag(w) V.T``."""
        v = self.eigenvectors
        return symmetrize((v * self.eigenvalues) @ v.T)


def sym_eigen(s: np.ndarray) -> EigenDecomp:
    """Full eigendecomposition of a symmetric matrix.

    Raises
    ------
    ConvergenceFailure
        If the underlying QR iteration fails to converge (pathological
        input such as NaN-free but extremely scaled matrices).
    """
    s = as_symmetric(s)
    try:
        w, v = np.linalg.eigh(s)
    except np.linalg.LinAlgError as err:
        raise ConvergenceFailure("symmetric eigendecomposition did not converge") from err
    return EigenDecomp(eigenvalues=w, eigenvectors=v)


def matrix_norm(a: np.ndarray, kind: str) -> float:
    """Matrix norm of ``a``.

    Supported kinds: ``elementwise_inf`` (max absolute entry), ``l1``
    (max absolute column sum), ``spectral`` (largest singular value),
    ``frobenius``, and ``scaled_frobenius`` (squared Frobenius norm
    divided by the row count).
    """
    a = np.asarray(a, dtype=float)
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix_norm requires finite entries")
    if a.ndim != 2:
        raise DimensionMismatch(f"matrix_norm expects a 2-d array, got shape {a.shape}")
    if kind == "elementwise_inf":
        return float(np.max(np.abs(a)))
    if kind == "l1":
        return float(np.max(np.sum(np.abs(a), axis=0)))
    if kind == "spectral":
        return float(np.linalg.norm(a, 2))
    if kind == "frobenius":
        return float(np.linalg.norm(a, "fro"))
    if kind == "scaled_frobenius":
        return float(np.linalg.norm(a, "fro") ** 2 / a.shape[0])
    raise ValueError(f"unknown norm kind {kind!r}; expected one of {NORM_KINDS}")


def kronecker(a: np.ndarray, b: np.ndarray, cap: int = DEFAULT_KRON_CAP) -> np.ndarray:
    """Kronecker product ``a (x) b`` with a guard on the product dimension.

    Raises
    ------
    DimensionOverflow
        If the product would have more than ``cap`` rows or columns.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
        raise ValueError("kronecker requires finite entries")
    rows = a.shape[0] * b.shape[0]
    cols = a.shape[1] * b.shape[1]
    if max(rows, cols) > cap:
        raise DimensionOverflow(
            f"kronecker product would be {rows}x{cols}, exceeding the cap of {cap}"
        )
    return np.kron(a, b)


def invert_spd(s: np.ndarray) -> np.ndarray:
    """Inverse of a symmetric positive definite matrix, symmetrized.

    Computed through the Cholesky factor so that non-SPD input is
    rejected with :class:`NotPositiveDefinite` rather than silently
    producing a wrong inverse.
    """
    s = as_symmetric(s)
    lower = cholesky(s)
    inv = scipy.linalg.cho_solve((lower, True), np.eye(s.shape[0]))
    return symmetrize(inv)
