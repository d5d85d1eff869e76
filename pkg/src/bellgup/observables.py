"""Measurement operators: qubit spin observables along unit directions and
qutrit observables carrying a fixed three-outcome spectrum.

Two outcome conventions exist for the three-outcome observables because the
complex anticommutator a@b^dag + b@a^dag is only nontrivial when daggering
does something: HERMITIAN_012 realizes outcomes {0,1,2} on a Hermitian
operator, UNITARY_ROOTS realizes {1, w, w^2} (w = exp(2*pi*i/3)) on a
unitary one.  Downstream code carries both and reports results per
convention.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import matkernel

__all__ = [
    "Direction",
    "OutcomeSpectrum",
    "QutritObservable",
    "qubit_observable",
    "qutrit_observable",
    "unitary_from_params",
    "random_direction",
    "PAULI",
    "GELL_MANN",
    "OMEGA",
]

UNIT_TOL = 1e-12
UNITARY_TOL = 1e-12

OMEGA = complex(np.exp(2j * np.pi / 3))

PAULI_X = matkernel.matrix([[0, 1], [1, 0]])
PAULI_Y = matkernel.matrix([[0, -1j], [1j, 0]])
PAULI_Z = matkernel.matrix([[1, 0], [0, -1]])
PAULI = (PAULI_X, PAULI_Y, PAULI_Z)

# Standard Gell-Mann matrices, in the usual ordering.
GELL_MANN = (
    matkernel.matrix([[0, 1, 0], [1, 0, 0], [0, 0, 0]]),
    matkernel.matrix([[0, -1j, 0], [1j, 0, 0], [0, 0, 0]]),
    matkernel.matrix([[1, 0, 0], [0, -1, 0], [0, 0, 0]]),
    matkernel.matrix([[0, 0, 1], [0, 0, 0], [1, 0, 0]]),
    matkernel.matrix([[0, 0, -1j], [0, 0, 0], [1j, 0, 0]]),
    matkernel.matrix([[0, 0, 0], [0, 0, 1], [0, 1, 0]]),
    matkernel.matrix([[0, 0, 0], [0, 0, -1j], [0, 1j, 0]]),
    matkernel.matrix(np.diag([1, 1, -2]) / math.sqrt(3)),
)

_PAULI_STACK = np.stack(PAULI)
_GELL_MANN_STACK = np.stack(GELL_MANN)
_PAULI_STACK.setflags(write=False)
_GELL_MANN_STACK.setflags(write=False)


@dataclass(frozen=True)
class Direction:
    """Unit 3-vector defining a qubit measurement axis."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        n2 = self.x * self.x + self.y * self.y + self.z * self.z
        if not math.isfinite(n2) or abs(n2 - 1.0) > UNIT_TOL:
            raise ValueError(f"direction ({self.x}, {self.y}, {self.z}) is not unit length")

    @classmethod
    def from_angles(cls, theta: float, phi: float) -> "Direction":
        st = math.sin(theta)
        return cls(st * math.cos(phi), st * math.sin(phi), math.cos(theta))

    @classmethod
    def normalized(cls, x: float, y: float, z: float) -> "Direction":
        norm = math.sqrt(x * x + y * y + z * z)
        if norm == 0.0 or not math.isfinite(norm):
            raise ValueError("cannot normalize a zero or non-finite vector")
        return cls(x / norm, y / norm, z / norm)

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])


class OutcomeSpectrum(Enum):
    """Outcome convention for three-outcome observables."""

    HERMITIAN_012 = "hermitian"
    UNITARY_ROOTS = "unitary"

    @property
    def values(self) -> np.ndarray:
        if self is OutcomeSpectrum.HERMITIAN_012:
            return np.array([0.0, 1.0, 2.0], dtype=np.complex128)
        return np.array([1.0, OMEGA, OMEGA**2], dtype=np.complex128)


@dataclass(frozen=True)
class QutritObservable:
    """Unitary-conjugated diagonal operator: basis @ diag(spectrum) @ basis^dag."""

    basis: np.ndarray
    spectrum: OutcomeSpectrum

    def __post_init__(self):
        u = np.array(self.basis, dtype=np.complex128)
        if u.shape != (3, 3):
            raise ValueError(f"basis must be 3x3, got {u.shape}")
        if not np.all(np.isfinite(u)):
            raise ValueError("basis entries must be finite")
        if np.linalg.norm(u @ u.conj().T - np.eye(3)) > UNITARY_TOL:
            raise ValueError("basis is not unitary within tolerance")
        u.setflags(write=False)
        object.__setattr__(self, "basis", u)


def qubit_observable(n: Direction) -> np.ndarray:
    """Spin observable n.sigma, a 2x2 Hermitian with spectrum {+1, -1}."""
    return matkernel.matrix(n.x * PAULI_X + n.y * PAULI_Y + n.z * PAULI_Z)


def qutrit_observable(obs: QutritObservable) -> np.ndarray:
    """Realize basis @ diag(spectrum) @ basis^dag.

    Hermitian for HERMITIAN_012, unitary for UNITARY_ROOTS.
    """
    u = obs.basis
    return matkernel.matrix(u @ np.diag(obs.spectrum.values) @ u.conj().T)


def _expm_scaled_taylor(m: np.ndarray) -> np.ndarray:
    """Matrix exponential by scaling-and-squaring with a Taylor kernel.

    Accepts a single (d, d) matrix or a stacked (..., d, d) batch; accurate
    to better than 1e-13 for the small matrices used here.  Avoids any
    eigensolver dependency.
    """
    m = np.asarray(m, dtype=np.complex128)
    d = m.shape[-1]
    one_norm = float(np.max(np.abs(m).sum(axis=-2))) if m.size else 0.0
    squarings = 0
    if one_norm > 0.5:
        squarings = int(math.ceil(math.log2(one_norm / 0.5)))
    a = m / (2.0**squarings)
    eye = np.zeros(m.shape, dtype=np.complex128)
    eye[..., range(d), range(d)] = 1.0
    result = eye.copy()
    term = eye.copy()
    # 16 terms after scaling to 1-norm <= 0.5: remainder < 1e-17.
    for k in range(1, 17):
        term = term @ a / k
        result = result + term
    for _ in range(squarings):
        result = result @ result
    return result


def unitary_from_params(theta, d: int) -> np.ndarray:
    """exp(i * sum_k theta_k G_k) over the fixed traceless Hermitian basis.

    G_k are the Pauli matrices for d=2 and the Gell-Mann matrices for d=3,
    in standard order, so parameter vectors are portable.
    """
    if d not in (2, 3):
        raise ValueError(f"d must be 2 or 3, got {d}")
    theta = np.asarray(theta, dtype=np.float64)
    if theta.shape != (d * d - 1,):
        raise ValueError(f"expected {d * d - 1} parameters for d={d}, got shape {theta.shape}")
    basis = _PAULI_STACK if d == 2 else _GELL_MANN_STACK
    h = np.tensordot(theta, basis, axes=1)
    return matkernel.matrix(_expm_scaled_taylor(1j * h))


def random_direction(rng: np.random.Generator) -> Direction:
    """Uniform direction on the unit sphere from a normalized Gaussian draw.

    ``rng`` is a seedable 64-bit generator (numpy PCG64); split streams via
    SeedSequence.spawn for concurrent use.
    """
    v = rng.standard_normal(3)
    return Direction.normalized(v[0], v[1], v[2])
