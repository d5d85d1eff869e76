"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest -s tests/test_acceptance.py`` to see the per-criterion
report.  Tolerances are fixed here, not calibrated.
"""

import json
import math

import numpy as np
import pytest

from bellgup import matkernel
from bellgup.bounds import ExperimentSpec, gup_bounds, reproduce_paper_table
from bellgup.cglmp import (
    QUOTED_MAX,
    CglmpSettings,
    c223_square_rhs,
    cglmp_max,
    g_correlator,
    optimal_state,
)
from bellgup.chsh import (
    TSIRELSON_BOUND,
    BellStateKind,
    ChshSettings,
    bell_state,
    chsh_operator,
    chsh_square_identity,
    optimal_settings,
    tsirelson_max,
)
from bellgup.cli import run as cli_run
from bellgup.gup import EvalMode, GupParams, Kinematics, deformed_b2, deformed_c223_sq, spin_commutator_residual
from bellgup.observables import OutcomeSpectrum, QutritObservable, random_direction
from bellgup.optimize import OptimizerConfig

PHI_PLUS = bell_state(BellStateKind.PHI_PLUS)
OPT_SETTINGS = optimal_settings()
MAX_ENTANGLED = optimal_state(1.0)


def report(number, name, ok, detail):
    status = "PASS" if ok else "FAIL"
    print(f"{status} criterion-{number:02d} {name}: {detail}")
    assert ok, f"criterion {number} ({name}): {detail}"


def random_chsh_settings(rng):
    return ChshSettings(random_direction(rng), random_direction(rng),
                        random_direction(rng), random_direction(rng))


def lz_settings():
    obs = QutritObservable(np.eye(3), OutcomeSpectrum.HERMITIAN_012)
    return CglmpSettings(obs, obs, obs, obs)


def loglog_slope(xs, ys):
    return float(np.polyfit(np.log10(xs), np.log10(ys), 1)[0])


def test_criterion_01_square_identity():
    rng = np.random.default_rng(101)
    max_gap = max(chsh_square_identity(random_chsh_settings(rng)).gap for _ in range(1000))
    report(1, "chsh-square-identity", max_gap <= 1e-12,
           f"max Frobenius gap {max_gap:.3e} over 1000 random settings (tol 1e-12)")


def test_criterion_02_tsirelson_bound():
    result = tsirelson_max(OptimizerConfig(), seed=2026)
    op = chsh_operator(result.settings)
    b2 = matkernel.expectation(op @ op, result.state).real
    ok = abs(result.value - TSIRELSON_BOUND) <= 1e-6 and abs(b2 - 8.0) <= 1e-9
    report(2, "tsirelson-maximum", ok,
           f"value {result.value:.9f} vs 2*sqrt(2) {TSIRELSON_BOUND:.9f}; <B^2> {b2:.12f}")


def test_criterion_03_commuting_settings_classical():
    rng = np.random.default_rng(103)
    worst = 0.0
    for _ in range(100):
        a = random_direction(rng)
        s = ChshSettings(a, a, random_direction(rng), random_direction(rng))
        worst = max(worst, matkernel.frobenius(chsh_square_identity(s).direct - 4.0 * np.eye(4)))
    result = tsirelson_max(OptimizerConfig(), seed=2027, commuting_alice=True)
    ok = worst <= 1e-12 and abs(result.value - 2.0) <= 1e-6
    report(3, "commuting-settings-classical", ok,
           f"max ||B^2 - 4I|| {worst:.3e}; constrained optimum {result.value:.9f}")


def test_criterion_04_deformed_qubit_series():
    kin = Kinematics.equal(1.0)
    betas = np.logspace(-5, -2, 13)
    gaps = [abs(deformed_b2(PHI_PLUS, OPT_SETTINGS, kin, GupParams.quadratic(b), EvalMode.EXACT)
                - (8.0 + 16.0 * b * b)) for b in betas]
    slope = loglog_slope(betas, gaps)
    correction = deformed_b2(PHI_PLUS, OPT_SETTINGS, kin, GupParams.quadratic(1e-3),
                             EvalMode.EXACT) - 8.0
    ok = slope >= 2.9 and abs(correction - 16e-6) <= 0.01 * 16e-6
    report(4, "deformed-qubit-series", ok,
           f"slope {slope:.3f} (>=2.9); correction at beta*p^2=1e-3 is {correction:.6e} "
           f"vs 16e-6 within 1%")


def test_criterion_05_linear_model_leading_order():
    kin = Kinematics.equal(1.0)
    alphas = np.logspace(-4, -2, 9)
    diffs = [deformed_b2(PHI_PLUS, OPT_SETTINGS, kin, GupParams.linear_quadratic(a, 0.0),
                         EvalMode.EXACT) - 8.0 for a in alphas]
    slope, intercept = np.polyfit(np.log10(alphas), np.log10(diffs), 1)
    coeff = 10.0**intercept
    ok = abs(slope - 2.0) <= 0.1 and abs(coeff - 8.0) <= 0.05 * 8.0
    report(5, "linear-model-leading-order", ok,
           f"slope {slope:.4f} (2 +/- 0.1); coefficient {coeff:.4f} (8 +/- 5%)")


def test_criterion_06_pair_correlator_52():
    value = g_correlator(lz_settings(), MAX_ENTANGLED)
    ok = abs(value - 52.0) <= 1e-10
    report(6, "pair-correlator-52", ok, f"<G> = {value!r} (target 52, tol 1e-10)")


def test_criterion_07_undeformed_qutrit_square():
    # independently coded brute-force oracle: explicit anticommutators,
    # explicit kron loops, explicit expectation
    a = np.diag([0.0, 1.0, 2.0]).astype(complex)
    ka = a @ a.conj().T + a @ a.conj().T
    block = np.eye(3, dtype=complex) + ka
    oracle_matrix = np.zeros((9, 9), dtype=complex)
    for i in range(3):
        for j in range(3):
            for k in range(3):
                for m in range(3):
                    oracle_matrix[3 * i + k, 3 * j + m] = block[i, j] * block[k, m]
    oracle_matrix += 3.0 * np.eye(9)
    amp = np.zeros(9, dtype=complex)
    amp[[0, 4, 8]] = 1.0 / math.sqrt(3.0)
    oracle = (amp.conj() @ oracle_matrix @ amp).real

    value = matkernel.expectation(c223_square_rhs(lz_settings()), MAX_ENTANGLED).real
    quoted = 32.7
    ok = abs(value - oracle) <= 1e-10 and abs(value - 100.0 / 3.0) <= 1e-10
    report(7, "undeformed-qutrit-square", ok,
           f"value {value:.12f} vs brute-force {oracle:.12f} (=100/3); quoted {quoted} "
           f"differs by {value - quoted:.3f} (documented discrepancy)")


def test_criterion_08_qutrit_series():
    kin = Kinematics.equal(1.0)
    beta = 1e-3
    exact = deformed_c223_sq(MAX_ENTANGLED, lz_settings(), kin,
                             GupParams.quadratic(beta), EvalMode.EXACT)
    ratio = (exact - 100.0 / 3.0) / (4.0 * beta**2 * 52.0)
    betas = np.logspace(-5, -2, 13)
    residuals = [abs(deformed_c223_sq(MAX_ENTANGLED, lz_settings(), kin,
                                      GupParams.quadratic(b), EvalMode.EXACT)
                     - deformed_c223_sq(MAX_ENTANGLED, lz_settings(), kin,
                                        GupParams.quadratic(b), EvalMode.SERIES2))
                 for b in betas]
    slope = loglog_slope(betas, residuals)
    ok = abs(ratio - 1.0) <= 0.01 and slope >= 2.9
    report(8, "deformed-qutrit-series", ok,
           f"(exact - 100/3)/(4 b^2 p^4 * 52) = {ratio:.6f} (1 +/- 1%); residual slope {slope:.3f}")


def test_criterion_09_bounds():
    coarse = gup_bounds(ExperimentSpec(p_squared=2.8e-26, epsilon=0.1))
    log_alpha = math.log10(coarse.alpha0_max)
    log_beta = math.log10(coarse.beta0_max)
    table = {row.epsilon: row for row in reproduce_paper_table().rows}
    fine = table[1e-3]
    ok = (abs(log_alpha - 13.09) <= 0.5 and abs(log_beta - 26.53) <= 0.6
          and abs(fine.alpha0_max / 1.2e12 - 1.0) <= 0.05
          and abs(fine.beta0_max / 3.4e25 - 1.0) <= 0.05
          and fine.alpha_discrepant and fine.beta_discrepant)
    report(9, "stern-gerlach-bounds", ok,
           f"log10(alpha0)={log_alpha:.3f} (13.09 +/- 0.5), log10(beta0)={log_beta:.3f} "
           f"(26.53 +/- 0.6); eps=1e-3 row DISCREPANT flags "
           f"({fine.alpha0_max:.2e} vs quoted 1e11, {fine.beta0_max:.2e} vs quoted 1e24)")


def test_criterion_10_cglmp_optimum():
    config = OptimizerConfig(restarts=200, max_evals_per_restart=4000,
                             simplex_tolerance=1e-6)
    results = {}
    for convention in (OutcomeSpectrum.UNITARY_ROOTS, OutcomeSpectrum.HERMITIAN_012):
        results[convention.value] = cglmp_max(convention, config, seed=2028)
    violations_ok = all(res.value > 2.0 for res in results.values())
    within = {name: abs(res.value - QUOTED_MAX) <= 0.05 for name, res in results.items()}
    detail = "; ".join(f"{name}: M={res.value:.4f} (gamma={res.gamma:.4f})"
                       for name, res in results.items())
    if any(within.values()):
        report(10, "cglmp-optimum", violations_ok,
               f"{detail}; quoted {QUOTED_MAX:.4f} reproduced within 0.05")
    else:
        # documented-discrepancy path: the suite passes only with the best
        # value per convention attached
        discrepancy_report = {
            "quoted_maximum": QUOTED_MAX,
            "tolerance": 0.05,
            "best_per_convention": {name: res.value for name, res in results.items()},
            "gamma_per_convention": {name: res.gamma for name, res in results.items()},
            "note": "free maximization of the printed operator exceeds the quoted "
                    "maximum under both outcome conventions; violation (>2) holds",
        }
        print("DISCREPANCY-REPORT " + json.dumps(discrepancy_report, sort_keys=True))
        ok = violations_ok and len(discrepancy_report["best_per_convention"]) == 2
        report(10, "cglmp-optimum", ok,
               f"{detail}; quoted {QUOTED_MAX:.4f} NOT met within 0.05 by either "
               f"convention, discrepancy report attached")


def test_criterion_11_spin_algebra_residual():
    betas = np.logspace(-5, -3, 9)
    residuals = [spin_commutator_residual(b, 1.0) for b in betas]
    slope = loglog_slope(betas, residuals)
    ok = abs(slope - 2.0) <= 0.1
    report(11, "spin-algebra-residual", ok, f"log-log slope {slope:.4f} (2 +/- 0.1)")


def test_criterion_12_zero_deformation_reduction():
    rng = np.random.default_rng(112)
    zero = GupParams.quadratic(0.0)
    worst = 0.0
    for _ in range(100):
        s = random_chsh_settings(rng)
        amp = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        psi = matkernel.state(amp / np.linalg.norm(amp))
        op = chsh_operator(s)
        base = matkernel.expectation(op @ op, psi).real
        kin = Kinematics.equal(float(rng.uniform(0.0, 3.0)))
        for mode in EvalMode:
            value = deformed_b2(psi, s, kin, zero, mode)
            worst = max(worst, abs(value - base) / abs(base))
    # qutrit side on the reference configuration
    base3 = matkernel.expectation(c223_square_rhs(lz_settings()), MAX_ENTANGLED).real
    for mode in EvalMode:
        value = deformed_c223_sq(MAX_ENTANGLED, lz_settings(), Kinematics.equal(1.0), zero, mode)
        worst = max(worst, abs(value - base3) / abs(base3))
    ok = worst <= 1e-15
    report(12, "zero-deformation-reduction", ok,
           f"max relative difference {worst:.3e} over 100 random configurations (tol 1e-15)")


def test_criterion_13_cli_determinism(capsys):
    commands = [
        ["bounds", "--p2", "2.8e-26", "--eps", "0.001"],
        ["gup-sweep", "--beta-grid", "1e-5:1e-2:8", "--p", "1"],
        ["gup-qutrit-sweep", "--beta-grid", "1e-4:1e-2:5", "--p", "1"],
        ["tsirelson", "--seed", "5", "--restarts", "4"],
        ["cglmp", "--convention", "unitary", "--seed", "3", "--restarts", "2",
         "--max-evals", "500"],
        ["identity-check", "--seed", "11", "--samples", "10"],
    ]

    def canonical(text):
        lines = []
        for line in text.split("\n"):
            if line.startswith("# manifest:"):
                manifest = json.loads(line[len("# manifest: "):])
                manifest.pop("timestamp")
                lines.append("# manifest: " + json.dumps(manifest, sort_keys=True))
            elif '"timestamp"' in line:
                continue
            else:
                lines.append(line)
        return "\n".join(lines)

    ok = True
    failing = []
    for argv in commands:
        cli_run(argv)
        first = capsys.readouterr().out
        cli_run(argv)
        second = capsys.readouterr().out
        if canonical(first) != canonical(second):
            ok = False
            failing.append(" ".join(argv))
    with capsys.disabled():
        report(13, "cli-determinism", ok,
               f"{len(commands)} commands byte-identical modulo timestamp"
               + (f"; failing: {failing}" if failing else ""))
