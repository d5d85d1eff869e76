import numpy as np
import pytest

from bellgup import matkernel
from bellgup.chsh import (
    CLASSICAL_BOUND,
    TSIRELSON_BOUND,
    BellStateKind,
    ChshSettings,
    bell_state,
    chsh_operator,
    chsh_square_identity,
    optimal_settings,
    tsirelson_max,
)
from bellgup.observables import Direction, qubit_observable, random_direction
from bellgup.optimize import OptimizerConfig

SMALL = OptimizerConfig(restarts=8, max_evals_per_restart=4000)


def random_settings(rng):
    return ChshSettings(random_direction(rng), random_direction(rng),
                        random_direction(rng), random_direction(rng))


def random_state(rng, dim=4):
    amp = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return matkernel.state(amp / np.linalg.norm(amp))


# --- operator -------------------------------------------------------------------

def test_operator_commuting_settings():
    z = Direction(0.0, 0.0, 1.0)
    op = chsh_operator(ChshSettings(z, z, z, z))
    sz = qubit_observable(z)
    assert np.allclose(op, 2.0 * np.kron(sz, sz), atol=0)


def test_operator_optimal_settings_reach_tsirelson():
    value = matkernel.expectation(chsh_operator(optimal_settings()),
                                  bell_state(BellStateKind.PHI_PLUS)).real
    assert value == pytest.approx(TSIRELSON_BOUND, abs=1e-12)


def test_operator_hermitian_for_random_settings():
    rng = np.random.default_rng(0)
    for _ in range(25):
        op = chsh_operator(random_settings(rng))
        assert matkernel.frobenius(op - op.conj().T) <= 1e-12


# --- square identity -------------------------------------------------------------

def test_square_identity_random_settings():
    rng = np.random.default_rng(1)
    for _ in range(200):
        assert chsh_square_identity(random_settings(rng)).gap <= 1e-12


def test_square_identity_commuting_gives_4i():
    rng = np.random.default_rng(2)
    a = random_direction(rng)
    ident = chsh_square_identity(ChshSettings(a, a, random_direction(rng), random_direction(rng)))
    assert np.allclose(ident.rhs, 4.0 * np.eye(4), atol=1e-15)
    assert matkernel.frobenius(ident.direct - 4.0 * np.eye(4)) <= 1e-12


def test_square_at_optimum_has_eigenvalue_8_on_optimizer_state():
    ident = chsh_square_identity(optimal_settings())
    psi = bell_state(BellStateKind.PHI_PLUS)
    assert np.linalg.norm(ident.direct @ psi - 8.0 * psi) <= 1e-9
    assert matkernel.expectation(ident.direct, psi).real == pytest.approx(8.0, abs=1e-9)


def test_square_spectrum_and_variance_bounds():
    rng = np.random.default_rng(3)
    for _ in range(100):
        s = random_settings(rng)
        sq = chsh_square_identity(s).direct
        op = chsh_operator(s)
        psi = random_state(rng)
        b2 = matkernel.expectation(sq, psi).real
        b1 = matkernel.expectation(op, psi).real
        assert -1e-9 <= b2 <= 8.0 + 1e-9
        assert b1 * b1 <= b2 + 1e-9


# --- bell states ------------------------------------------------------------------

def test_phi_plus_amplitudes():
    psi = bell_state(BellStateKind.PHI_PLUS)
    assert np.allclose(psi, np.array([1, 0, 0, 1]) / np.sqrt(2), atol=0)
    assert np.linalg.norm(psi) == pytest.approx(1.0, abs=1e-15)


def test_phi_plus_zz_correlator():
    sz = qubit_observable(Direction(0.0, 0.0, 1.0))
    value = matkernel.expectation(np.kron(sz, sz), bell_state(BellStateKind.PHI_PLUS))
    assert value.real == pytest.approx(1.0, abs=1e-12)


def test_singlet_correlator_oracle():
    # <Psi-| (n.sigma)(x)(m.sigma) |Psi-> = -n.m
    rng = np.random.default_rng(4)
    psi = bell_state(BellStateKind.PSI_MINUS)
    for _ in range(25):
        n = random_direction(rng)
        m = random_direction(rng)
        op = np.kron(qubit_observable(n), qubit_observable(m))
        expected = -(n.x * m.x + n.y * m.y + n.z * m.z)
        assert matkernel.expectation(op, psi).real == pytest.approx(expected, abs=1e-12)


# --- maximization -------------------------------------------------------------------

def test_tsirelson_max_reaches_bound():
    result = tsirelson_max(SMALL, seed=7)
    assert result.value == pytest.approx(TSIRELSON_BOUND, abs=1e-6)
    assert not result.flagged
    assert result.bell_kind is not None


def test_tsirelson_max_commuting_returns_classical_bound():
    result = tsirelson_max(SMALL, seed=7, commuting_alice=True)
    assert result.value == pytest.approx(CLASSICAL_BOUND, abs=1e-6)
    assert result.settings.a == result.settings.a_prime
    # the optimizer never beats the classical bound here, which is flagged
    assert result.flagged


def test_tsirelson_max_full_state_search():
    result = tsirelson_max(OptimizerConfig(restarts=12, max_evals_per_restart=6000),
                           seed=3, full_state_search=True)
    assert result.bell_kind is None
    assert result.value == pytest.approx(TSIRELSON_BOUND, abs=1e-5)


def test_tsirelson_max_deterministic():
    first = tsirelson_max(SMALL, seed=11)
    second = tsirelson_max(SMALL, seed=11)
    assert first.value == second.value
    assert first.settings == second.settings
    assert np.array_equal(first.state, second.state)
    assert first.evals == second.evals
