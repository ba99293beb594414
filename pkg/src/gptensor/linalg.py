"""Dense complex matrix kernels: minimum-norm least squares, SVD, Schur.

Thin contracts over LAPACK-backed routines so the rest of the pipeline never
touches raw factorizations.  All functions are pure and deterministic for a
fixed input bit pattern.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

__all__ = ["SchurPair", "lstsq_min_norm", "svd", "schur", "NumericalError", "DEFAULT_RCOND"]

DEFAULT_RCOND = 1e-12


class NumericalError(RuntimeError):
    """A factorization failed to converge."""


@dataclass(frozen=True)
class SchurPair:
    """Unitary Q and upper-triangular T with Q T Q* equal to the input."""

    Q: np.ndarray
    T: np.ndarray

    @property
    def eigenvalues(self) -> np.ndarray:
        return np.diag(self.T)


def lstsq_min_norm(A: np.ndarray, b: np.ndarray, rcond: float = DEFAULT_RCOND) -> np.ndarray:
    """Minimum-norm least-squares solution x = pinv(A) b.

    Singular values below rcond * sigma_max are treated as zero.  `b` may be a
    vector or a matrix of stacked right-hand sides.
    """
    A = np.asarray(A, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    if A.ndim != 2:
        raise ValueError("A must be a matrix")
    if A.shape[0] != b.shape[0]:
        raise ValueError(f"dimension mismatch: A is {A.shape}, b has leading size {b.shape[0]}")
    if not 0 < rcond < 1:
        raise ValueError(f"rcond must be in (0, 1), got {rcond}")
    try:
        x, *_ = np.linalg.lstsq(A, b, rcond=rcond)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"least-squares SVD did not converge: {exc}") from exc
    return x


def svd(A: np.ndarray):
    """Full SVD A = U diag(s) V*; returns (U, s, V) with s nonincreasing."""
    A = np.asarray(A, dtype=np.complex128)
    if A.size == 0:
        raise ValueError("svd of an empty matrix")
    try:
        U, s, Vh = np.linalg.svd(A, full_matrices=True)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"SVD did not converge: {exc}") from exc
    return U, s, Vh.conj().T


def schur(M: np.ndarray) -> SchurPair:
    """Complex Schur decomposition M = Q T Q* with T exactly upper triangular.

    No eigenvalue reordering is applied; diag(T) lists the eigenvalues in
    whatever order the factorization produces.
    """
    M = np.asarray(M, dtype=np.complex128)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"schur requires a square matrix, got shape {M.shape}")
    try:
        T, Q = scipy.linalg.schur(M, output="complex")
    except Exception as exc:  # scipy raises LinAlgError on QR iteration failure
        raise NumericalError(f"Schur decomposition failed: {exc}") from exc
    return SchurPair(Q=Q, T=np.triu(T))
