"""Input validation helpers.

Every public entry point funnels array input through these checks so the
numerical code can assume square, finite, complex128 data.
"""

from __future__ import annotations

import numpy as np

from .errors import ValidationError

UNIT_NORM_TOL = 1e-12


def as_square_matrix(a, name: str = "matrix") -> np.ndarray:
    """Validate and return ``a`` as a (n, n) complex128 array.

    Rejects non-square shapes and non-finite entries.
    """
    arr = np.asarray(a, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValidationError(f"{name} must be a square 2-d array, got shape {arr.shape}")
    if arr.shape[0] < 1:
        raise ValidationError(f"{name} must have dimension >= 1")
    if not np.all(np.isfinite(arr.real)) or not np.all(np.isfinite(arr.imag)):
        raise ValidationError(f"{name} contains non-finite entries")
    return arr


def as_unit_vector(f, dim: int | None = None, name: str = "vector",
                   tol: float = UNIT_NORM_TOL) -> np.ndarray:
    """Validate and return ``f`` as a unit-norm complex128 vector."""
    vec = np.asarray(f, dtype=np.complex128).ravel()
    if dim is not None and vec.shape[0] != dim:
        raise ValidationError(
            f"{name} has dimension {vec.shape[0]}, expected {dim}")
    if not np.all(np.isfinite(vec.real)) or not np.all(np.isfinite(vec.imag)):
        raise ValidationError(f"{name} contains non-finite entries")
    nrm = np.linalg.norm(vec)
    if abs(nrm - 1.0) > tol:
        raise ValidationError(f"{name} is not unit norm: ||f|| = {nrm!r}")
    return vec


def check_hermitian(h, tol: float = 1e-12, name: str = "matrix") -> np.ndarray:
    """Validate that ``h`` is Hermitian within ``tol`` relative to its norm."""
    arr = as_square_matrix(h, name=name)
    scale = max(np.linalg.norm(arr, 2), 1.0)
    dev = np.max(np.abs(arr - arr.conj().T))
    if dev > tol * scale:
        raise ValidationError(
            f"{name} is not Hermitian: max asymmetry {dev:.3e} exceeds "
            f"{tol:.1e} * {scale:.3e}")
    return arr


def check_orthonormal(vectors, tol: float = 1e-10) -> np.ndarray:
    """Stack ``vectors`` as columns and check pairwise orthonormality."""
    cols = [np.asarray(v, dtype=np.complex128).ravel() for v in vectors]
    if not cols:
        raise ValidationError("basis must contain at least one vector")
    dim = cols[0].shape[0]
    for j, c in enumerate(cols):
        if c.shape[0] != dim:
            raise ValidationError(f"basis vector {j} has mismatched dimension")
    v = np.column_stack(cols)
    gram = v.conj().T @ v
    dev = np.max(np.abs(gram - np.eye(v.shape[1])))
    if dev > tol:
        raise ValidationError(
            f"basis is not orthonormal: max Gram deviation {dev:.3e} > {tol:.1e}")
    return v


def spectral_norm(a: np.ndarray) -> float:
    """Largest singular value of ``a``."""
    return float(np.linalg.norm(a, 2))


def tolerance_scale(a: np.ndarray) -> float:
    """Scale used by relative tolerances: ||A|| with a floor of 1 for A = 0."""
    nrm = spectral_norm(a)
    return nrm if nrm > 0.0 else 1.0
