"""Three-outcome two-setting Bell operator C223, its square object, and the
pair-anticommutator correlator G.

The operator is assembled term by term exactly as printed in its polynomial
form (single-party terms tensored with the other party's identity, scalar 2
entering as 2*I).  The "square object"

    3*I + (I + {{A, A'}}) (x) (I + {{B, B'}}),     {{X, Y}} = X Y^dag + Y X^dag

is deliberately kept as an independent construction and never assumed equal
to the literal square of C223: scalar substitution (all observables the
identity) already yields 4*I versus 12*I, so ``square_gap`` measures the
mismatch instead of asserting it away.  All deformation work downstream uses
the square object.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numba
import numpy as np

from . import matkernel, optimize
from .observables import (
    OutcomeSpectrum,
    QutritObservable,
    _GELL_MANN_STACK,
    qutrit_observable,
    unitary_from_params,
)

__all__ = [
    "CglmpSettings",
    "CglmpMaxResult",
    "OPTIMAL_GAMMA",
    "QUOTED_MAX",
    "c223_operator",
    "c223_operator_from_matrices",
    "c223_square_rhs",
    "c223_square_rhs_from_matrices",
    "square_gap",
    "square_gap_from_matrices",
    "optimal_state",
    "g_correlator",
    "g_correlator_from_matrices",
    "cglmp_max",
]

CLASSICAL_BOUND = 2.0

# gamma of the quoted optimal state and the quoted maximum 2*(5 - gamma^2)/3.
OPTIMAL_GAMMA = (math.sqrt(11.0) - math.sqrt(3.0)) / 2.0
QUOTED_MAX = 2.0 * (5.0 - OPTIMAL_GAMMA**2) / 3.0

_I3 = np.eye(3, dtype=np.complex128)
_I9 = np.eye(9, dtype=np.complex128)


@dataclass(frozen=True)
class CglmpSettings:
    A: QutritObservable
    A_prime: QutritObservable
    B: QutritObservable
    B_prime: QutritObservable

    def __post_init__(self):
        kinds = {obs.spectrum for obs in (self.A, self.A_prime, self.B, self.B_prime)}
        if len(kinds) != 1:
            raise ValueError("all four observables must share one outcome spectrum")

    @property
    def spectrum(self) -> OutcomeSpectrum:
        return self.A.spectrum

    def matrices(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        return (
            qutrit_observable(self.A),
            qutrit_observable(self.A_prime),
            qutrit_observable(self.B),
            qutrit_observable(self.B_prime),
        )


def c223_operator_from_matrices(a, ap, b, bp) -> np.ndarray:
    """C223 built from raw 3x3 operators (useful for scalar substitutions)."""
    a2, ap2, b2, bp2 = a @ a, ap @ ap, b @ b, bp @ bp
    kron = np.kron
    op = 2.0 * _I9
    op = op - 3.0 * (kron(a2, _I3) + kron(_I3, bp2))
    op = op + 0.75 * (
        kron(a, b) + kron(a2, b) - kron(ap, b) - kron(ap2, b)
        - kron(a, b2) + kron(ap, b2)
        + kron(a, bp) - kron(a2, bp) + kron(ap, bp) + kron(ap2, bp)
        + kron(a, bp2) - kron(ap, bp2)
    )
    op = op + 2.25 * (kron(a2, b2) - kron(ap2, b2) + kron(a2, bp2) + kron(ap2, bp2))
    return matkernel.matrix(op)


def c223_operator(s: CglmpSettings) -> np.ndarray:
    """The 9x9 three-outcome Bell operator for the given settings."""
    return c223_operator_from_matrices(*s.matrices())


def c223_square_rhs_from_matrices(a, ap, b, bp) -> np.ndarray:
    """Square object 3*I + (I + {{a,a'}}) (x) (I + {{b,b'}})."""
    ka = matkernel.complex_anticommutator(a, ap)
    kb = matkernel.complex_anticommutator(b, bp)
    return matkernel.matrix(3.0 * _I9 + np.kron(_I3 + ka, _I3 + kb))


def c223_square_rhs(s: CglmpSettings) -> np.ndarray:
    return c223_square_rhs_from_matrices(*s.matrices())


def square_gap_from_matrices(a, ap, b, bp) -> float:
    """Frobenius norm of C223^2 minus the square object (a diagnostic)."""
    op = c223_operator_from_matrices(a, ap, b, bp)
    return matkernel.frobenius(op @ op - c223_square_rhs_from_matrices(a, ap, b, bp))


def square_gap(s: CglmpSettings) -> float:
    return square_gap_from_matrices(*s.matrices())


def optimal_state(gamma: float) -> np.ndarray:
    """(|00> + gamma |11> + |22>) / sqrt(2 + gamma^2) as a 9-vector."""
    if not math.isfinite(gamma):
        raise ValueError("gamma must be finite")
    amp = np.zeros(9, dtype=np.complex128)
    norm = math.sqrt(2.0 + gamma * gamma)
    amp[0] = 1.0 / norm
    amp[4] = gamma / norm
    amp[8] = 1.0 / norm
    return matkernel.state(amp)


def g_correlator_from_matrices(a, ap, b, bp, psi: np.ndarray) -> float:
    """<{{a,a'}} (x) I + I (x) {{b,b'}} + 2 {{a,a'}} (x) {{b,b'}}>, a real number."""
    ka = matkernel.complex_anticommutator(a, ap)
    kb = matkernel.complex_anticommutator(b, bp)
    g = np.kron(ka, _I3) + np.kron(_I3, kb) + 2.0 * np.kron(ka, kb)
    return matkernel.expectation(g, psi).real


def g_correlator(s: CglmpSettings, psi: np.ndarray) -> float:
    return g_correlator_from_matrices(*s.matrices(), psi)


# --- maximization -----------------------------------------------------------

# Coefficients of <X_u (x) Y_v> in <C223>, rows indexed by (I, A, A', A^2, A'^2)
# and columns by (I, B, B', B^2, B'^2).
_COEF = np.zeros((5, 5))
_COEF[0, 0] = 2.0
_COEF[3, 0] = -3.0
_COEF[0, 4] = -3.0
for _row, _col, _sign in (
    (1, 1, +1), (3, 1, +1), (2, 1, -1), (4, 1, -1),
    (1, 3, -1), (2, 3, +1),
    (1, 2, +1), (3, 2, -1), (2, 2, +1), (4, 2, +1),
    (1, 4, +1), (2, 4, -1),
):
    _COEF[_row, _col] += 0.75 * _sign
for _row, _col, _sign in ((3, 3, +1), (4, 3, -1), (3, 4, +1), (4, 4, +1)):
    _COEF[_row, _col] += 2.25 * _sign
_COEF.setflags(write=False)


def _pair_expectations(sx: np.ndarray, sy: np.ndarray, m: np.ndarray) -> np.ndarray:
    # <psi| X (x) Y |psi> for stacked X, Y with psi reshaped to the 3x3 matrix m:
    # E[u, v] = sum_ik (X_u)_ik (conj(m) Y_v m^T)_ik
    w = np.matmul(np.matmul(m.conj(), sy), m.T)
    return np.einsum("uik,vik->uv", sx, w)


def _fast_c223_expectation(obs: np.ndarray, m: np.ndarray) -> complex:
    sq = np.matmul(obs, obs)
    sx = np.concatenate((_I3[None], obs[0:2], sq[0:2]))
    sy = np.concatenate((_I3[None], obs[2:4], sq[2:4]))
    return complex(np.sum(_COEF * _pair_expectations(sx, sy, m)))


def _state_matrix(gamma: float) -> np.ndarray:
    norm = math.sqrt(2.0 + gamma * gamma)
    return np.diag([1.0 / norm, gamma / norm, 1.0 / norm]).astype(np.complex128)


# The optimizer objective is evaluated a few million times per search, so the
# whole chain (Gell-Mann combination, Taylor expm, conjugation, expectation)
# is compiled; it must agree with the numpy path, which the tests check.
@numba.njit(cache=True)
def _jit_c223_value(angles: np.ndarray, diag_vals: np.ndarray, gamma: float) -> float:
    gell = _GELL_MANN_STACK
    coef = _COEF
    norm = math.sqrt(2.0 + gamma * gamma)
    m0 = 1.0 / norm
    m1 = gamma / norm

    obs = np.empty((4, 3, 3), dtype=np.complex128)
    work = np.empty((3, 3), dtype=np.complex128)
    term = np.empty((3, 3), dtype=np.complex128)
    new = np.empty((3, 3), dtype=np.complex128)
    for k in range(4):
        # a = i * sum_b theta_b G_b, then exp(a) by scaling-and-squaring Taylor
        a = np.zeros((3, 3), dtype=np.complex128)
        for b in range(8):
            c = angles[8 * k + b]
            for i in range(3):
                for j in range(3):
                    a[i, j] += 1j * c * gell[b, i, j]
        one_norm = 0.0
        for j in range(3):
            col = abs(a[0, j]) + abs(a[1, j]) + abs(a[2, j])
            if col > one_norm:
                one_norm = col
        squarings = 0
        if one_norm > 0.5:
            squarings = int(math.ceil(math.log2(one_norm / 0.5)))
        scale = 2.0**squarings
        for i in range(3):
            for j in range(3):
                a[i, j] /= scale
        u = np.zeros((3, 3), dtype=np.complex128)
        for i in range(3):
            u[i, i] = 1.0
            for j in range(3):
                term[i, j] = u[i, j]
        for order in range(1, 17):
            inv = 1.0 / order
            for i in range(3):
                for j in range(3):
                    acc = term[i, 0] * a[0, j] + term[i, 1] * a[1, j] + term[i, 2] * a[2, j]
                    new[i, j] = acc * inv
            for i in range(3):
                for j in range(3):
                    term[i, j] = new[i, j]
                    u[i, j] += new[i, j]
        for _ in range(squarings):
            for i in range(3):
                for j in range(3):
                    new[i, j] = u[i, 0] * u[0, j] + u[i, 1] * u[1, j] + u[i, 2] * u[2, j]
            for i in range(3):
                for j in range(3):
                    u[i, j] = new[i, j]
        # obs = u diag u^dag
        for i in range(3):
            for j in range(3):
                work[i, j] = u[i, j] * diag_vals[j]
        for i in range(3):
            for j in range(3):
                obs[k, i, j] = (work[i, 0] * np.conj(u[j, 0])
                                + work[i, 1] * np.conj(u[j, 1])
                                + work[i, 2] * np.conj(u[j, 2]))

    sx = np.empty((5, 3, 3), dtype=np.complex128)
    sy = np.empty((5, 3, 3), dtype=np.complex128)
    for i in range(3):
        for j in range(3):
            one = 1.0 + 0.0j if i == j else 0.0 + 0.0j
            sx[0, i, j] = one
            sy[0, i, j] = one
            sx[1, i, j] = obs[0, i, j]
            sx[2, i, j] = obs[1, i, j]
            sy[1, i, j] = obs[2, i, j]
            sy[2, i, j] = obs[3, i, j]
    for src, dst in ((0, 3), (1, 4)):
        for i in range(3):
            for j in range(3):
                sx[dst, i, j] = (obs[src, i, 0] * obs[src, 0, j]
                                 + obs[src, i, 1] * obs[src, 1, j]
                                 + obs[src, i, 2] * obs[src, 2, j])
    for src, dst in ((2, 3), (3, 4)):
        for i in range(3):
            for j in range(3):
                sy[dst, i, j] = (obs[src, i, 0] * obs[src, 0, j]
                                 + obs[src, i, 1] * obs[src, 1, j]
                                 + obs[src, i, 2] * obs[src, 2, j])

    # E[u, v] = sum_ik (X_u)_ik conj(m)_i (Y_v)_ik m_k for diagonal m
    mdiag = (m0, m1, m0)
    value = 0.0
    for uu in range(5):
        for vv in range(5):
            c = coef[uu, vv]
            if c == 0.0:
                continue
            acc = 0.0 + 0.0j
            for i in range(3):
                for k in range(3):
                    acc += sx[uu, i, k] * mdiag[i] * sy[vv, i, k] * mdiag[k]
            value += c * acc.real
    return value


@dataclass
class CglmpMaxResult:
    value: float
    settings: CglmpSettings
    gamma: float
    convention: OutcomeSpectrum
    flagged: bool
    evals: int
    seed: int


def cglmp_max(convention: OutcomeSpectrum,
              config: optimize.OptimizerConfig | None = None, seed: int = 0, *,
              pin_gamma: float | None = None) -> CglmpMaxResult:
    """Maximize Re <C223> over four 8-parameter unitaries and gamma.

    Each observable is U diag(spectrum) U^dag with U = exp(i theta . G) over
    the Gell-Mann basis; the state is pinned to the (|00> + gamma |11> +
    |22>)-family, with gamma either optimized (default) or fixed by
    ``pin_gamma``.  The best restart wins, ties to the lowest index.  A best
    value that never exceeds the classical bound 2 comes back ``flagged``.
    """
    diag_vals = convention.values
    n = 32 if pin_gamma is not None else 33

    if pin_gamma is not None:
        def objective(x):
            return _jit_c223_value(np.ascontiguousarray(x), diag_vals, float(pin_gamma))
    else:
        def objective(x):
            return _jit_c223_value(np.ascontiguousarray(x[:32]), diag_vals, float(x[32]))

    result = optimize.maximize(objective, n, config, seed)
    best = result.best_point
    gamma = float(pin_gamma if pin_gamma is not None else best[32])
    unitaries = [unitary_from_params(best[8 * k:8 * (k + 1)], 3) for k in range(4)]
    settings = CglmpSettings(*(QutritObservable(u, convention) for u in unitaries))
    psi = optimal_state(gamma)
    value = matkernel.expectation(c223_operator(settings), psi)
    if convention is OutcomeSpectrum.HERMITIAN_012:
        assert abs(value.imag) <= 1e-10
    flagged = value.real <= CLASSICAL_BOUND
    return CglmpMaxResult(value.real, settings, gamma, convention, flagged,
                          result.evals, seed)
