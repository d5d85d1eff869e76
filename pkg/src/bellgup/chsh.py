"""CHSH Bell operator, its square identity, and the quantum maximum.

The two-party two-setting operator A(x)B + A(x)B' + A'(x)B - A'(x)B' obeys the
exact operator identity

    B_chsh^2 = 4*I - [A, A'] (x) [B, B'],

so commuting settings give B^2 = 4*I (classical bound 2) while optimal
noncommuting settings reach <B^2> = 8, i.e. <B> = 2*sqrt(2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import matkernel, optimize
from .observables import Direction, qubit_observable

__all__ = [
    "ChshSettings",
    "BellStateKind",
    "SquareIdentity",
    "ChshMaxResult",
    "bell_state",
    "chsh_operator",
    "chsh_square_identity",
    "optimal_settings",
    "tsirelson_max",
    "CLASSICAL_BOUND",
    "TSIRELSON_BOUND",
]

CLASSICAL_BOUND = 2.0
TSIRELSON_BOUND = 2.0 * math.sqrt(2.0)


@dataclass(frozen=True)
class ChshSettings:
    a: Direction
    a_prime: Direction
    b: Direction
    b_prime: Direction


class BellStateKind(Enum):
    PHI_PLUS = "phi_plus"
    PHI_MINUS = "phi_minus"
    PSI_PLUS = "psi_plus"
    PSI_MINUS = "psi_minus"


_INV_SQRT2 = 1.0 / math.sqrt(2.0)
_BELL_AMPLITUDES = {
    BellStateKind.PHI_PLUS: (_INV_SQRT2, 0.0, 0.0, _INV_SQRT2),
    BellStateKind.PHI_MINUS: (_INV_SQRT2, 0.0, 0.0, -_INV_SQRT2),
    BellStateKind.PSI_PLUS: (0.0, _INV_SQRT2, _INV_SQRT2, 0.0),
    BellStateKind.PSI_MINUS: (0.0, _INV_SQRT2, -_INV_SQRT2, 0.0),
}


def bell_state(kind: BellStateKind) -> np.ndarray:
    """Maximally entangled two-qubit state of the given kind."""
    return matkernel.state(_BELL_AMPLITUDES[kind])


def chsh_operator(s: ChshSettings) -> np.ndarray:
    """A(x)B + A(x)B' + A'(x)B - A'(x)B' with A = a.sigma and so on."""
    a = qubit_observable(s.a)
    ap = qubit_observable(s.a_prime)
    b = qubit_observable(s.b)
    bp = qubit_observable(s.b_prime)
    op = np.kron(a, b) + np.kron(a, bp) + np.kron(ap, b) - np.kron(ap, bp)
    return matkernel.matrix(op)


@dataclass(frozen=True)
class SquareIdentity:
    direct: np.ndarray
    rhs: np.ndarray
    gap: float


def chsh_square_identity(s: ChshSettings) -> SquareIdentity:
    """Direct square of the Bell operator, the commutator form, and their gap."""
    op = chsh_operator(s)
    direct = matkernel.matrix(op @ op)
    comm_a = matkernel.commutator(qubit_observable(s.a), qubit_observable(s.a_prime))
    comm_b = matkernel.commutator(qubit_observable(s.b), qubit_observable(s.b_prime))
    rhs = matkernel.matrix(4.0 * np.eye(4) - np.kron(comm_a, comm_b))
    gap = matkernel.frobenius(direct - rhs)
    return SquareIdentity(direct, rhs, gap)


def optimal_settings() -> ChshSettings:
    """Canonical settings attaining <B> = 2*sqrt(2) on the PHI_PLUS state."""
    s = _INV_SQRT2
    return ChshSettings(
        a=Direction(0.0, 0.0, 1.0),
        a_prime=Direction(1.0, 0.0, 0.0),
        b=Direction(s, 0.0, s),
        b_prime=Direction(-s, 0.0, s),
    )


# --- maximization -----------------------------------------------------------

def _obs_from_angles(theta: float, phi: float) -> np.ndarray:
    ct = math.cos(theta)
    st = math.sin(theta)
    nx = st * math.cos(phi)
    ny = st * math.sin(phi)
    return np.array([[ct, nx - 1j * ny], [nx + 1j * ny, -ct]])


def _operator_from_angles(x: np.ndarray, commuting_alice: bool) -> np.ndarray:
    a = _obs_from_angles(x[0], x[1])
    ap = a if commuting_alice else _obs_from_angles(x[2], x[3])
    k = 0 if commuting_alice else 2
    b = _obs_from_angles(x[2 + k], x[3 + k])
    bp = _obs_from_angles(x[4 + k], x[5 + k])
    return np.kron(a, b + bp) + np.kron(ap, b - bp)


def _settings_from_angles(x: np.ndarray, commuting_alice: bool) -> ChshSettings:
    a = Direction.from_angles(x[0], x[1])
    ap = a if commuting_alice else Direction.from_angles(x[2], x[3])
    k = 0 if commuting_alice else 2
    return ChshSettings(
        a=a,
        a_prime=ap,
        b=Direction.from_angles(x[2 + k], x[3 + k]),
        b_prime=Direction.from_angles(x[4 + k], x[5 + k]),
    )


def _pure_state_from_params(params: np.ndarray) -> np.ndarray:
    # 6 parameters after gauge fixing: 3 magnitude angles, 3 relative phases.
    t1, t2, t3, p1, p2, p3 = params
    mags = np.array([
        math.cos(t1),
        math.sin(t1) * math.cos(t2),
        math.sin(t1) * math.sin(t2) * math.cos(t3),
        math.sin(t1) * math.sin(t2) * math.sin(t3),
    ])
    phases = np.exp(1j * np.array([0.0, p1, p2, p3]))
    return mags * phases


@dataclass
class ChshMaxResult:
    value: float
    settings: ChshSettings
    state: np.ndarray
    bell_kind: BellStateKind | None
    flagged: bool
    evals: int
    seed: int


def tsirelson_max(config: optimize.OptimizerConfig | None = None, seed: int = 0, *,
                  commuting_alice: bool = False,
                  full_state_search: bool = False) -> ChshMaxResult:
    """Maximize <B_chsh> over the four measurement directions and the state.

    Directions are parametrized by spherical angles; the state ranges over
    the four Bell states by default, or over all pure two-qubit states
    (6 gauge-fixed parameters) when ``full_state_search`` is set.  With
    ``commuting_alice`` the second Alice setting is tied to the first, which
    collapses the quantum advantage back to the classical bound 2.

    A result that never improves past the classical bound is returned with
    ``flagged=True`` rather than silently.
    """
    n_angles = 6 if commuting_alice else 8
    n = n_angles + (6 if full_state_search else 0)
    bell_states = np.stack([bell_state(kind) for kind in BellStateKind])

    if full_state_search:
        def objective(x):
            op = _operator_from_angles(x[:n_angles], commuting_alice)
            psi = _pure_state_from_params(x[n_angles:])
            return float(np.vdot(psi, op @ psi).real)
    else:
        def objective(x):
            op = _operator_from_angles(x, commuting_alice)
            vals = np.einsum("sd,de,se->s", bell_states.conj(), op, bell_states).real
            return float(vals.max())

    result = optimize.maximize(objective, n, config, seed)
    best = result.best_point
    settings = _settings_from_angles(best[:n_angles], commuting_alice)
    op = chsh_operator(settings)
    if full_state_search:
        psi = matkernel.state(_pure_state_from_params(best[n_angles:]))
        kind = None
        value = matkernel.expectation(op, psi).real
    else:
        vals = [matkernel.expectation(op, bell_states[i]).real
                for i in range(len(BellStateKind))]
        pick = int(np.argmax(vals))
        kind = list(BellStateKind)[pick]
        psi = matkernel.state(bell_states[pick])
        value = vals[pick]
    flagged = value <= CLASSICAL_BOUND
    return ChshMaxResult(value, settings, psi, kind, flagged, result.evals, seed)
