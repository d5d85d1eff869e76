"""Minimal-length deformations of the spin algebra and their effect on the
squared Bell operators.

The deformation enters as a scalar rescaling of commutator/anticommutator
structure: with canonical momentum p, deformed momentum P = p (1 + f(p)) and
f(p) = alpha p + beta p^2, every deformed pair correlator picks up the ratio

    g(p) = (1 + f(P)) / (1 + f(p))

per particle (momentum is treated as a plane-wave label, which keeps all
operators finite dimensional).  EXACT evaluation uses the unexpanded ratio;
SERIES2 reproduces the second-order truncations 8 a^2 p^2 + 16 b^2 p^4
(qubit) and 4 b^2 p^4 <G> (qutrit), so the truncation error itself is
measurable.  Only the dimensionless combinations alpha*p and beta*p^2 are
physical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import matkernel
from .chsh import ChshSettings, chsh_operator
from .cglmp import CglmpSettings, c223_square_rhs, g_correlator
from .observables import PAULI

__all__ = [
    "DeformationModel",
    "GupParams",
    "Kinematics",
    "EvalMode",
    "f_of_p",
    "capital_P",
    "g_factor",
    "cross_correlator_operator",
    "deformed_b2",
    "deformed_c223_sq",
    "relative_deviation",
    "spin_commutator_residual",
]


class DeformationModel(Enum):
    QUADRATIC = "quadratic"
    LINEAR_QUADRATIC = "linear_quadratic"


@dataclass(frozen=True)
class GupParams:
    """Deformation model plus alpha (1/momentum) and beta (1/momentum^2)."""

    model: DeformationModel
    alpha: float = 0.0
    beta: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.alpha) and math.isfinite(self.beta)):
            raise ValueError("alpha and beta must be finite")
        if self.alpha < 0.0 or self.beta < 0.0:
            raise ValueError("alpha and beta must be nonnegative")
        if self.model is DeformationModel.QUADRATIC and self.alpha != 0.0:
            raise ValueError("the quadratic model has no linear term: alpha must be 0")

    @classmethod
    def quadratic(cls, beta: float) -> "GupParams":
        return cls(DeformationModel.QUADRATIC, 0.0, beta)

    @classmethod
    def linear_quadratic(cls, alpha: float, beta: float) -> "GupParams":
        return cls(DeformationModel.LINEAR_QUADRATIC, alpha, beta)


@dataclass(frozen=True)
class Kinematics:
    """Momentum magnitude per particle (natural units)."""

    p1: float
    p2: float

    def __post_init__(self):
        for p in (self.p1, self.p2):
            if not math.isfinite(p) or p < 0.0:
                raise ValueError("momenta must be finite and nonnegative")

    @classmethod
    def equal(cls, p: float) -> "Kinematics":
        return cls(p, p)


class EvalMode(Enum):
    EXACT = "exact"
    SERIES2 = "series2"


def f_of_p(p: float, params: GupParams) -> float:
    """f(p) = alpha p + beta p^2."""
    return params.alpha * p + params.beta * p * p


def capital_P(p: float, params: GupParams) -> float:
    """Deformed momentum P = p (1 + f(p))."""
    return p * (1.0 + f_of_p(p, params))


def g_factor(p: float, params: GupParams) -> float:
    """Commutator rescaling (1 + f(P)) / (1 + f(p)), >= 1 for nonnegative params."""
    return (1.0 + f_of_p(capital_P(p, params), params)) / (1.0 + f_of_p(p, params))


def cross_correlator_operator(s: ChshSettings) -> np.ndarray:
    """(sum_ij a_i a'_j eps_ijk sigma_k) (x) (sum_lm b_l b'_m eps_lmn sigma_n).

    This is the commutator content of the squared CHSH operator: the exact
    identity reads B^2 = 4*I + 4 * (this operator).
    """
    u = np.cross(s.a.as_array(), s.a_prime.as_array())
    v = np.cross(s.b.as_array(), s.b_prime.as_array())
    su = u[0] * PAULI[0] + u[1] * PAULI[1] + u[2] * PAULI[2]
    sv = v[0] * PAULI[0] + v[1] * PAULI[1] + v[2] * PAULI[2]
    return matkernel.matrix(np.kron(su, sv))


def deformed_b2(state: np.ndarray, s: ChshSettings, kin: Kinematics,
                params: GupParams, mode: EvalMode) -> float:
    """<B^2> for spin observables obeying the deformed algebra.

    EXACT returns 4 + 4 g(p1) g(p2) <T> with T the cross correlator; SERIES2
    returns <B^2_undeformed> + (8 alpha^2 p^2 + 16 beta^2 p^4) <T> and
    requires equal momenta, since the truncation assumes them.
    """
    op = chsh_operator(s)
    base = matkernel.expectation(op @ op, state).real
    t = matkernel.expectation(cross_correlator_operator(s), state).real
    if mode is EvalMode.EXACT:
        # Anchored to the undeformed matrix value (base = 4 + 4<T> exactly as
        # an operator identity) so zero deformation reduces bit-exactly.
        g12 = g_factor(kin.p1, params) * g_factor(kin.p2, params)
        return base + 4.0 * (g12 - 1.0) * t
    if mode is EvalMode.SERIES2:
        if kin.p1 != kin.p2:
            raise ValueError("the second-order series assumes equal momenta")
        p = kin.p1
        coeff = 8.0 * params.alpha**2 * p**2 + 16.0 * params.beta**2 * p**4
        return base + coeff * t
    raise ValueError(f"unknown evaluation mode {mode!r}")


def deformed_c223_sq(state: np.ndarray, s: CglmpSettings, kin: Kinematics,
                     params: GupParams, mode: EvalMode) -> float:
    """<square object> with each party's anticommutator rescaled by g(p_i)^2.

    EXACT evaluates 3 + <(I + h1 {{A,A'}}) (x) (I + h2 {{B,B'}})> with
    h_i = ((1 + beta P_i^2)/(1 + beta p_i^2))^2; SERIES2 returns the
    undeformed value plus 4 beta^2 p^4 <G>.  Only the quadratic model is
    defined for three-outcome observables.
    """
    if params.model is not DeformationModel.QUADRATIC:
        raise ValueError("three-outcome deformation is defined for the quadratic model only")
    a, ap, b, bp = s.matrices()
    ka = matkernel.complex_anticommutator(a, ap)
    kb = matkernel.complex_anticommutator(b, bp)
    i3 = np.eye(3, dtype=np.complex128)
    base = matkernel.expectation(c223_square_rhs(s), state).real
    ea = matkernel.expectation(np.kron(ka, i3), state).real
    eb = matkernel.expectation(np.kron(i3, kb), state).real
    eab = matkernel.expectation(np.kron(ka, kb), state).real
    if mode is EvalMode.EXACT:
        h1 = g_factor(kin.p1, params) ** 2
        h2 = g_factor(kin.p2, params) ** 2
        return base + (h1 - 1.0) * ea + (h2 - 1.0) * eb + (h1 * h2 - 1.0) * eab
    if mode is EvalMode.SERIES2:
        if kin.p1 != kin.p2:
            raise ValueError("the second-order series assumes equal momenta")
        p = kin.p1
        return base + 4.0 * params.beta**2 * p**4 * g_correlator(s, state)
    raise ValueError(f"unknown evaluation mode {mode!r}")


def relative_deviation(p: float, params: GupParams) -> float:
    """Leading-order |<(B^2_deformed - B^2)/B^2>| = alpha^2 p^2 + 2 beta^2 p^4.

    This is the combination the experimental bounds are built from.
    """
    return params.alpha**2 * p**2 + 2.0 * params.beta**2 * p**4


def spin_commutator_residual(beta: float, p: float) -> float:
    """Mismatch of the deformed spin algebra at first order.

    With S_k = (1 + beta p^2) sigma_k / 2 and P the deformed momentum, the
    residual max_ij || [S_i, S_j] - i eps_ijk S_k (1 + beta P^2) ||_2 equals
    |beta p^2 ((1 + beta p^2)^2 - 1)| (1 + beta p^2) / 2 and is O(beta^2).
    """
    if beta < 0.0 or p < 0.0:
        raise ValueError("beta and p must be nonnegative")
    params = GupParams.quadratic(beta)
    big_p = capital_P(p, params)
    scale_p = 1.0 + beta * p * p
    scale_bigp = 1.0 + beta * big_p * big_p
    spins = [scale_p * sigma / 2.0 for sigma in PAULI]
    eps = np.zeros((3, 3, 3))
    eps[0, 1, 2] = eps[1, 2, 0] = eps[2, 0, 1] = 1.0
    eps[0, 2, 1] = eps[2, 1, 0] = eps[1, 0, 2] = -1.0
    worst = 0.0
    for i in range(3):
        for j in range(3):
            if i == j:
                continue
            lhs = spins[i] @ spins[j] - spins[j] @ spins[i]
            rhs = 1j * scale_bigp * sum(eps[i, j, k] * spins[k] for k in range(3))
            worst = max(worst, float(np.linalg.norm(lhs - rhs, 2)))
    return worst
