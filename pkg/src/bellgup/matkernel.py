"""Dense complex matrix kernel for small operator algebra.

Everything is plain numpy underneath: matrices are complex128 arrays frozen
after construction, operations are pure functions, and dimensions stay tiny
(2 to 9), so the priority is exactness and predictable floating point, not
asymptotics.  Identity checks elsewhere in the package use Frobenius-norm
tolerances around 1e-12.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "matrix",
    "state",
    "identity",
    "kron",
    "dagger",
    "commutator",
    "complex_anticommutator",
    "expectation",
    "spectral_residual",
    "frobenius",
]

STATE_NORM_TOL = 1e-12


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


def matrix(entries) -> np.ndarray:
    """Validated square complex matrix (complex128, read-only)."""
    arr = np.array(entries, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix entries must be finite")
    return _frozen(arr)


def state(amplitudes, tol: float = STATE_NORM_TOL) -> np.ndarray:
    """Validated normalized state vector (complex128, read-only)."""
    arr = np.array(amplitudes, dtype=np.complex128)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError(f"expected a 1-d amplitude vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("state amplitudes must be finite")
    norm = np.linalg.norm(arr)
    if abs(norm - 1.0) > tol:
        raise ValueError(f"state norm is {norm!r}, expected 1 within {tol}")
    return _frozen(arr)


def identity(dim: int) -> np.ndarray:
    return _frozen(np.eye(dim, dtype=np.complex128))


def _require_same_dim(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product; entry ((i*db+k),(j*db+l)) = a[i,j]*b[k,l]."""
    return _frozen(np.kron(a, b))


def dagger(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return _frozen(a.conj().T.copy())


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """a@b - b@a."""
    _require_same_dim(a, b)
    return _frozen(a @ b - b @ a)


def complex_anticommutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """a@b^dag + b@a^dag; Hermitian for any pair of inputs."""
    _require_same_dim(a, b)
    return _frozen(a @ b.conj().T + b @ a.conj().T)


def expectation(a: np.ndarray, psi: np.ndarray) -> complex:
    """<psi|a|psi>."""
    if a.shape[0] != psi.shape[0]:
        raise ValueError(f"dimension mismatch: operator {a.shape} vs state {psi.shape}")
    return complex(np.vdot(psi, a @ psi))


def spectral_residual(op: np.ndarray, roots) -> float:
    """Frobenius norm of the product of (op - r*I) over the given roots.

    Zero exactly when the spectrum is contained in ``roots`` and the
    operator is diagonalizable, so it certifies a known finite spectrum
    without a general eigensolver.
    """
    dim = op.shape[0]
    prod = np.eye(dim, dtype=np.complex128)
    for r in roots:
        prod = prod @ (op - r * np.eye(dim, dtype=np.complex128))
    return float(np.linalg.norm(prod))


def frobenius(a: np.ndarray) -> float:
    """Frobenius norm."""
    return float(np.linalg.norm(a))
