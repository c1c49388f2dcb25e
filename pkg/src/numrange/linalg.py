"""Dense complex linear algebra substrate.

Hermitian and general eigendecompositions, smallest-singular-value
witnesses and compressions, all on top of LAPACK (via numpy): the
Hermitian path is tridiagonalization + implicit QL/QR, the general path
is Hessenberg reduction + shifted QR, which is exactly the accuracy
class the boundary computations downstream rely on.

All functions are pure and operate on immutable inputs; they are safe to
call concurrently.
"""

from __future__ import annotations

import numpy as np

from ._validation import (
    as_square_matrix,
    check_hermitian,
    check_orthonormal,
)
from .errors import NonConvergenceError

__all__ = [
    "hermitian_part",
    "hermitian_extremal_eig",
    "spectrum",
    "min_residual_witness",
    "compress",
]


def hermitian_part(a, theta: float = 0.0) -> np.ndarray:
    """Hermitian part of e^{-i theta} A, i.e. (e^{-i theta}A + e^{i theta}A*)/2.

    Its largest eigenvalue is the support value of the numerical range in
    direction e^{i theta}.
    """
    arr = as_square_matrix(a)
    ph = np.exp(-1j * float(theta))
    m = ph * arr
    return 0.5 * (m + m.conj().T)


def hermitian_extremal_eig(h, hermitian_tol: float = 1e-12) -> tuple[float, np.ndarray]:
    """Largest eigenvalue and a unit eigenvector of a Hermitian matrix.

    Rejects non-Hermitian input. With a degenerate top eigenspace any unit
    eigenvector may be returned; callers treat that as the flat-segment /
    corner signal.
    """
    arr = check_hermitian(h, tol=hermitian_tol)
    try:
        w, v = np.linalg.eigh(arr)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK rarely fails here
        raise NonConvergenceError(f"Hermitian eigensolver failed: {exc}") from exc
    return float(w[-1]), np.ascontiguousarray(v[:, -1])


def spectrum(a) -> np.ndarray:
    """All eigenvalues of ``a`` with algebraic multiplicity.

    Non-convergence of the QR iteration is reported explicitly, never
    silently.
    """
    arr = as_square_matrix(a)
    try:
        return np.linalg.eigvals(arr)
    except np.linalg.LinAlgError as exc:
        raise NonConvergenceError(f"eigenvalue iteration failed: {exc}") from exc


def eigenpairs(a) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues and (column) eigenvector witnesses of ``a``."""
    arr = as_square_matrix(a)
    try:
        w, v = np.linalg.eig(arr)
    except np.linalg.LinAlgError as exc:
        raise NonConvergenceError(f"eigenvalue iteration failed: {exc}") from exc
    return w, v


def min_residual_witness(a, lam: complex) -> tuple[float, np.ndarray]:
    """Smallest singular value of A - lam*I and the minimizing unit vector.

    ``sigma_min`` vanishes exactly when ``lam`` is an eigenvalue, and the
    witness ``u`` satisfies ||(A - lam) u|| = sigma_min: the exact
    finite-dimensional form of an approximate-eigenvector sequence.
    """
    arr = as_square_matrix(a)
    shifted = arr - complex(lam) * np.eye(arr.shape[0])
    try:
        _, s, vh = np.linalg.svd(shifted)
    except np.linalg.LinAlgError as exc:
        raise NonConvergenceError(f"SVD failed for residual witness: {exc}") from exc
    return float(s[-1]), np.ascontiguousarray(vh[-1].conj())


def compress(a, basis, orthonormal_tol: float = 1e-10) -> np.ndarray:
    """Compression B of A onto an orthonormal basis: B[j, k] = <A b_k, b_j>.

    The basis must be pairwise orthonormal within ``orthonormal_tol``.
    """
    arr = as_square_matrix(a)
    v = check_orthonormal(basis, tol=orthonormal_tol)
    if v.shape[0] != arr.shape[0]:
        raise ValueError(
            f"basis vectors have dimension {v.shape[0]}, matrix has {arr.shape[0]}")
    return v.conj().T @ arr @ v


def eig_residuals(a) -> float:
    """Largest eigenpair residual ||A v - lam v|| over all returned witnesses."""
    arr = as_square_matrix(a)
    w, v = eigenpairs(arr)
    res = arr @ v - v * w[np.newaxis, :]
    norms = np.linalg.norm(v, axis=0)
    return float(np.max(np.linalg.norm(res, axis=0) / np.maximum(norms, 1e-300)))


def random_unit_vectors(dim: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """(count, dim) array of uniformly distributed complex unit vectors."""
    g = rng.standard_normal((count, dim)) + 1j * rng.standard_normal((count, dim))
    return g / np.linalg.norm(g, axis=1, keepdims=True)
