"""Command-line front end: every reproduction as a subcommand with
machine-readable output.

JSON goes to stdout (or --out); sweep commands default to CSV.  Every output
embeds the run manifest (command, resolved options, master seed, version,
timestamp); outputs are byte-identical across reruns with the same seed once
the timestamp field is excluded.  Numeric fields are serialized with 17
significant digits, which round-trips doubles exactly.

Exit codes: 0 success, 1 when the computation raised flags (optimizer below
the classical bound, FLAG lines in paper-table), 2 usage error.
"""

from __future__ import annotations

import argparse
import math
import sys
from datetime import datetime, timezone

import numpy as np

from . import __version__, bounds, cglmp, chsh, gup, matkernel, optimize
from .observables import (
    OutcomeSpectrum,
    QutritObservable,
    random_direction,
    unitary_from_params,
)

__all__ = ["run", "main"]


# --- canonical serialization -------------------------------------------------

def _fmt_float(x: float) -> str:
    return format(float(x), ".17g")


def _canonical_json(obj, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = ",\n".join(
            f'{pad}  "{key}": {_canonical_json(value, indent + 1)}'
            for key, value in obj.items()
        )
        return "{\n" + items + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if len(obj) == 0:
            return "[]"
        items = ",\n".join(f"{pad}  {_canonical_json(v, indent + 1)}" for v in obj)
        return "[\n" + items + "\n" + pad + "]"
    if isinstance(obj, bool) or isinstance(obj, np.bool_):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(obj)
    if isinstance(obj, str):
        escaped = obj.replace("\\", "\\\\").replace('"', '\\"')
        return f'"{escaped}"'
    raise TypeError(f"cannot serialize {type(obj)!r}")


def _compact_json(obj) -> str:
    return " ".join(line.strip() for line in _canonical_json(obj).split("\n"))


def _complex_pairs(mat: np.ndarray) -> list:
    arr = np.asarray(mat, dtype=np.complex128)
    if arr.ndim == 1:
        return [[float(z.real), float(z.imag)] for z in arr]
    return [[[float(z.real), float(z.imag)] for z in row] for row in arr]


def _manifest(command: str, options: dict, seed: int | None) -> dict:
    return {
        "command": command,
        "options": options,
        "seed": seed,
        "version": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(),
    }


def _emit(payload: dict, rows: list[dict] | None, fmt: str, out: str | None) -> None:
    if fmt == "json":
        text = _canonical_json(payload) + "\n"
    else:
        header = list(rows[0].keys()) if rows else []
        lines = ["# manifest: " + _compact_json(payload["manifest"])]
        lines.append(",".join(header))
        for row in rows or []:
            cells = []
            for key in header:
                value = row[key]
                if isinstance(value, bool):
                    cells.append("true" if value else "false")
                elif isinstance(value, (float, np.floating)):
                    cells.append(_fmt_float(value))
                else:
                    cells.append(str(value))
            lines.append(",".join(cells))
        text = "\n".join(lines) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


# --- shared argument plumbing -------------------------------------------------

def _log_grid(text: str) -> np.ndarray:
    try:
        start_s, stop_s, count_s = text.split(":")
        start, stop, count = float(start_s), float(stop_s), int(count_s)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(
            f"grid must be start:stop:count, got {text!r}") from exc
    if start <= 0.0 or stop <= 0.0 or count < 1:
        raise argparse.ArgumentTypeError("grid endpoints must be positive, count >= 1")
    return np.logspace(math.log10(start), math.log10(stop), count)


def _positive_float(text: str) -> float:
    value = float(text)
    if not math.isfinite(value) or value <= 0.0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text!r}")
    return value


def _seed(text: str) -> int:
    value = int(text)
    if value < 0 or value >= 2**64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return value


_CONVENTIONS = {
    "hermitian": OutcomeSpectrum.HERMITIAN_012,
    "unitary": OutcomeSpectrum.UNITARY_ROOTS,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bellgup",
        description="Bell operators, their squares, and minimal-length deformations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, *, seed=False, fmt_default="json"):
        if seed:
            p.add_argument("--seed", type=_seed, default=0)
        p.add_argument("--out", default=None, help="write output to this path")
        p.add_argument("--format", choices=("json", "csv"), default=fmt_default)

    p = sub.add_parser("identity-check",
                       help="survey the CHSH square identity and the C223 square gap")
    p.add_argument("--samples", type=int, default=100)
    add_common(p, seed=True)

    p = sub.add_parser("tsirelson", help="maximize the CHSH expectation")
    p.add_argument("--restarts", type=int, default=None)
    p.add_argument("--max-evals", type=int, default=None)
    p.add_argument("--commuting", action="store_true",
                   help="tie the second Alice setting to the first (classical case)")
    p.add_argument("--full-state", action="store_true",
                   help="search all pure two-qubit states, not just the Bell family")
    add_common(p, seed=True)

    p = sub.add_parser("cglmp", help="maximize the three-outcome Bell expectation")
    p.add_argument("--convention", choices=sorted(_CONVENTIONS), required=True)
    p.add_argument("--gamma", type=float, default=None,
                   help="pin the state parameter instead of optimizing it")
    p.add_argument("--restarts", type=int, default=None)
    p.add_argument("--max-evals", type=int, default=None)
    add_common(p, seed=True)

    p = sub.add_parser("gup-sweep",
                       help="qubit squared-operator deformation, exact vs series")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--beta-grid", type=_log_grid, default=None,
                       help="quadratic model: sweep beta over start:stop:count (log spaced)")
    group.add_argument("--alpha-grid", type=_log_grid, default=None,
                       help="linear-quadratic model: sweep alpha over start:stop:count")
    p.add_argument("--beta", type=float, default=0.0,
                   help="fixed beta for --alpha-grid sweeps")
    p.add_argument("--p", type=_positive_float, default=1.0)
    add_common(p, fmt_default="csv")

    p = sub.add_parser("gup-qutrit-sweep",
                       help="qutrit square-object deformation, exact vs series")
    p.add_argument("--beta-grid", type=_log_grid, required=True)
    p.add_argument("--p", type=_positive_float, default=1.0)
    add_common(p, fmt_default="csv")

    p = sub.add_parser("bounds", help="deformation-parameter bounds from an experiment")
    p.add_argument("--p2", type=_positive_float, required=True,
                   help="momentum squared, (kg m/s)^2")
    p.add_argument("--eps", type=_positive_float, required=True,
                   help="splitting accuracy")
    add_common(p)

    p = sub.add_parser("paper-table",
                       help="run every reproduction and print PASS/FLAG lines")
    p.add_argument("--restarts", type=int, default=64,
                   help="restarts for the CHSH maximizations")
    p.add_argument("--cglmp-restarts", type=int, default=200)
    p.add_argument("--cglmp-max-evals", type=int, default=4000)
    add_common(p, seed=True)

    return parser


def _options_dict(args: argparse.Namespace) -> dict:
    options = {}
    for key, value in sorted(vars(args).items()):
        if key in ("command", "out", "format"):
            continue
        if isinstance(value, np.ndarray):
            value = [float(v) for v in value]
        options[key] = value
    return options


def _config(args, default_restarts=None) -> optimize.OptimizerConfig:
    base = optimize.OptimizerConfig()
    return optimize.OptimizerConfig(
        restarts=args.restarts or default_restarts or base.restarts,
        max_evals_per_restart=getattr(args, "max_evals", None) or base.max_evals_per_restart,
        simplex_tolerance=base.simplex_tolerance,
        init_scale=base.init_scale,
    )


# --- subcommand handlers ------------------------------------------------------

def _random_chsh_settings(rng) -> chsh.ChshSettings:
    return chsh.ChshSettings(
        a=random_direction(rng),
        a_prime=random_direction(rng),
        b=random_direction(rng),
        b_prime=random_direction(rng),
    )


def _cmd_identity_check(args):
    rng = np.random.default_rng(args.seed)
    max_gap = 0.0
    for _ in range(args.samples):
        max_gap = max(max_gap, chsh.chsh_square_identity(_random_chsh_settings(rng)).gap)
    square_stats = {}
    for name, convention in sorted(_CONVENTIONS.items()):
        gaps = []
        for _ in range(args.samples):
            obs = [QutritObservable(unitary_from_params(rng.standard_normal(8), 3),
                                    convention)
                   for _ in range(4)]
            gaps.append(cglmp.square_gap(cglmp.CglmpSettings(*obs)))
        gaps = np.array(gaps)
        square_stats[name] = {
            "samples": args.samples,
            "min": float(gaps.min()),
            "max": float(gaps.max()),
            "mean": float(gaps.mean()),
        }
    flags = []
    if max_gap > 1e-12:
        flags.append("chsh-square-identity-gap")
    params = gup.GupParams.quadratic(1e-3)
    result = {
        "chsh_identity": {
            "samples": args.samples,
            "max_gap": max_gap,
            "tolerance": 1e-12,
        },
        "c223_square_gap": square_stats,
        # The printed anticommutator scaling is h = g(p)^2; normalizing the
        # deformed operator by its rescaled eigenvalue instead cancels the
        # deformation entirely (h = 1), so both readings are recorded.
        "qutrit_scaling_readings": {
            "beta": 1e-3,
            "p": 1.0,
            "applied_h_minus_1": gup.g_factor(1.0, params) ** 2 - 1.0,
            "normalized_alternative_h_minus_1": 0.0,
        },
    }
    return result, None, flags


def _direction_triplet(d) -> list:
    return [d.x, d.y, d.z]


def _cmd_tsirelson(args):
    result = chsh.tsirelson_max(
        _config(args), args.seed,
        commuting_alice=args.commuting,
        full_state_search=args.full_state,
    )
    flags = ["below-classical-bound"] if result.flagged else []
    payload = {
        "value": result.value,
        "bell_state": result.bell_kind.value if result.bell_kind else None,
        "settings": {
            "a": _direction_triplet(result.settings.a),
            "a_prime": _direction_triplet(result.settings.a_prime),
            "b": _direction_triplet(result.settings.b),
            "b_prime": _direction_triplet(result.settings.b_prime),
        },
        "state": _complex_pairs(result.state),
        "evals": result.evals,
        "flagged": result.flagged,
    }
    return payload, None, flags


def _cmd_cglmp(args):
    convention = _CONVENTIONS[args.convention]
    result = cglmp.cglmp_max(convention, _config(args), args.seed, pin_gamma=args.gamma)
    flags = ["below-classical-bound"] if result.flagged else []
    payload = {
        "value": result.value,
        "gamma": result.gamma,
        "convention": args.convention,
        "quoted_target": cglmp.QUOTED_MAX,
        "unitaries": {
            "A": _complex_pairs(result.settings.A.basis),
            "A_prime": _complex_pairs(result.settings.A_prime.basis),
            "B": _complex_pairs(result.settings.B.basis),
            "B_prime": _complex_pairs(result.settings.B_prime.basis),
        },
        "evals": result.evals,
        "flagged": result.flagged,
    }
    return payload, None, flags


def _cmd_gup_sweep(args):
    psi = chsh.bell_state(chsh.BellStateKind.PHI_PLUS)
    settings = chsh.optimal_settings()
    kin = gup.Kinematics.equal(args.p)
    rows = []
    if args.beta_grid is not None:
        grid = [(0.0, beta) for beta in args.beta_grid]
        model = gup.DeformationModel.QUADRATIC
    else:
        grid = [(alpha, args.beta) for alpha in args.alpha_grid]
        model = gup.DeformationModel.LINEAR_QUADRATIC
    undeformed = gup.deformed_b2(psi, settings, kin,
                                 gup.GupParams.quadratic(0.0), gup.EvalMode.EXACT)
    for index, (alpha, beta) in enumerate(grid):
        params = gup.GupParams(model, alpha, beta)
        exact = gup.deformed_b2(psi, settings, kin, params, gup.EvalMode.EXACT)
        series = gup.deformed_b2(psi, settings, kin, params, gup.EvalMode.SERIES2)
        rows.append({
            "index": index,
            "alpha": alpha,
            "beta": beta,
            "p": args.p,
            "undeformed": undeformed,
            "exact": exact,
            "series2": series,
            "exact_minus_series2": exact - series,
            "predicted_relative_deviation": gup.relative_deviation(args.p, params),
        })
    return {"rows": rows}, rows, []


def _cmd_gup_qutrit_sweep(args):
    lz = QutritObservable(np.eye(3), OutcomeSpectrum.HERMITIAN_012)
    settings = cglmp.CglmpSettings(lz, lz, lz, lz)
    psi = cglmp.optimal_state(1.0)
    kin = gup.Kinematics.equal(args.p)
    g_value = cglmp.g_correlator(settings, psi)
    undeformed = matkernel.expectation(cglmp.c223_square_rhs(settings), psi).real
    rows = []
    for index, beta in enumerate(args.beta_grid):
        params = gup.GupParams.quadratic(float(beta))
        exact = gup.deformed_c223_sq(psi, settings, kin, params, gup.EvalMode.EXACT)
        series = gup.deformed_c223_sq(psi, settings, kin, params, gup.EvalMode.SERIES2)
        rows.append({
            "index": index,
            "beta": float(beta),
            "p": args.p,
            "undeformed": undeformed,
            "pair_correlator": g_value,
            "exact": exact,
            "series2": series,
            "exact_minus_series2": exact - series,
            "applied_scaling_h": gup.g_factor(args.p, params) ** 2,
            "normalized_alternative_h": 1.0,
        })
    return {"rows": rows}, rows, []


def _cmd_bounds(args):
    spec = bounds.ExperimentSpec(p_squared=args.p2, epsilon=args.eps)
    result = bounds.gup_bounds(spec)
    payload = {
        "p_squared": args.p2,
        "epsilon": args.eps,
        "alpha_max": result.alpha_max,
        "alpha0_max": result.alpha0_max,
        "beta_max": result.beta_max,
        "beta0_max": result.beta0_max,
    }
    return payload, None, []


# --- paper-table ---------------------------------------------------------------

def _fit_loglog(xs, ys):
    slope, intercept = np.polyfit(np.log10(xs), np.log10(ys), 1)
    return float(slope), float(10.0**intercept)


def _line(status: str, name: str, detail: str) -> dict:
    return {"status": status, "name": name, "detail": detail}


def _cmd_paper_table(args):
    seed = args.seed
    lines = []
    psi = chsh.bell_state(chsh.BellStateKind.PHI_PLUS)
    opt_settings = chsh.optimal_settings()

    # 1: exact operator identity for the CHSH square
    rng = np.random.default_rng(seed)
    max_gap = max(chsh.chsh_square_identity(_random_chsh_settings(rng)).gap
                  for _ in range(1000))
    lines.append(_line("PASS" if max_gap <= 1e-12 else "FLAG", "chsh-square-identity",
                       f"max_gap={max_gap:.3e} over 1000 samples, tol 1e-12"))

    # 2: quantum maximum 2*sqrt(2) and <B^2> = 8
    res = chsh.tsirelson_max(_config(args), seed)
    b = chsh.chsh_operator(res.settings)
    b2 = matkernel.expectation(b @ b, res.state).real
    ok = abs(res.value - chsh.TSIRELSON_BOUND) <= 1e-6 and abs(b2 - 8.0) <= 1e-9
    lines.append(_line("PASS" if ok else "FLAG", "chsh-quantum-max",
                       f"value={res.value:.10f} target={chsh.TSIRELSON_BOUND:.10f} b2={b2:.12f}"))

    # 3: commuting settings collapse to the classical bound
    rng = np.random.default_rng(seed + 1)
    worst = 0.0
    for _ in range(100):
        a = random_direction(rng)
        s = chsh.ChshSettings(a, a, random_direction(rng), random_direction(rng))
        ident = chsh.chsh_square_identity(s)
        worst = max(worst, matkernel.frobenius(ident.direct - 4.0 * np.eye(4)))
    res_c = chsh.tsirelson_max(_config(args), seed, commuting_alice=True)
    ok = worst <= 1e-12 and abs(res_c.value - 2.0) <= 1e-6
    lines.append(_line("PASS" if ok else "FLAG", "chsh-commuting-classical",
                       f"square_vs_4I={worst:.3e} optimizer={res_c.value:.10f}"))

    # 4: quadratic-model correction 16 beta^2 p^4
    kin = gup.Kinematics.equal(1.0)
    betas = np.logspace(-5, -2, 13)
    gaps = [abs(gup.deformed_b2(psi, opt_settings, kin, gup.GupParams.quadratic(b_), gup.EvalMode.EXACT)
                - (8.0 + 16.0 * b_**2)) for b_ in betas]
    slope, _ = _fit_loglog(betas, gaps)
    corr = gup.deformed_b2(psi, opt_settings, kin, gup.GupParams.quadratic(1e-3),
                           gup.EvalMode.EXACT) - 8.0
    ok = slope >= 2.9 and abs(corr - 16e-6) <= 0.01 * 16e-6
    lines.append(_line("PASS" if ok else "FLAG", "qubit-quadratic-series",
                       f"slope={slope:.3f} correction={corr:.6e} target=1.6e-05"))

    # 5: linear-model leading order 8 alpha^2 p^2
    alphas = np.logspace(-4, -2, 9)
    diffs = [gup.deformed_b2(psi, opt_settings, kin, gup.GupParams.linear_quadratic(a_, 0.0),
                             gup.EvalMode.EXACT) - 8.0 for a_ in alphas]
    slope, coeff = _fit_loglog(alphas, diffs)
    ok = abs(slope - 2.0) <= 0.1 and abs(coeff - 8.0) <= 0.4
    lines.append(_line("PASS" if ok else "FLAG", "qubit-linear-leading-order",
                       f"slope={slope:.3f} coefficient={coeff:.3f}"))

    # 6 and 7: pair correlator 52 and square object 100/3 (quoted value 32.7)
    lz = QutritObservable(np.eye(3), OutcomeSpectrum.HERMITIAN_012)
    cset = cglmp.CglmpSettings(lz, lz, lz, lz)
    psi3 = cglmp.optimal_state(1.0)
    g_val = cglmp.g_correlator(cset, psi3)
    lines.append(_line("PASS" if abs(g_val - 52.0) <= 1e-10 else "FLAG",
                       "qutrit-pair-correlator", f"value={g_val:.12f} target=52"))
    sq = matkernel.expectation(cglmp.c223_square_rhs(cset), psi3).real
    ok = abs(sq - 100.0 / 3.0) <= 1e-10
    lines.append(_line("PASS" if ok else "FLAG", "qutrit-square-undeformed",
                       f"value={sq:.12f} target=33.333333333333 "
                       f"(quoted 32.7 differs by {sq - 32.7:.3f}, documented discrepancy)"))

    # 8: qutrit series 4 beta^2 p^4 <G>
    ratios = []
    for b_ in (1e-3,):
        exact = gup.deformed_c223_sq(psi3, cset, kin, gup.GupParams.quadratic(b_), gup.EvalMode.EXACT)
        ratios.append((exact - 100.0 / 3.0) / (4.0 * b_**2 * 52.0))
    resid = [abs(gup.deformed_c223_sq(psi3, cset, kin, gup.GupParams.quadratic(b_), gup.EvalMode.EXACT)
                 - gup.deformed_c223_sq(psi3, cset, kin, gup.GupParams.quadratic(b_), gup.EvalMode.SERIES2))
             for b_ in betas]
    slope, _ = _fit_loglog(betas, resid)
    ok = abs(ratios[0] - 1.0) <= 0.01 and slope >= 2.9
    lines.append(_line("PASS" if ok else "FLAG", "qutrit-series-ratio",
                       f"ratio={ratios[0]:.6f} residual_slope={slope:.3f}"))

    # 9: bounds table with quoted decades
    report = bounds.reproduce_paper_table()
    for row in report.rows:
        discrepant = row.alpha_discrepant or row.beta_discrepant
        if row.epsilon == 1e-1:
            ok = abs(row.alpha_log10_gap) <= 0.5 and abs(row.beta_log10_gap) <= 0.6
            status = "PASS" if ok else "FLAG"
            note = "matches quoted decades"
        else:
            status = "FLAG" if discrepant else "PASS"
            note = "DISCREPANT vs quoted decades (documented)"
        lines.append(_line(status, f"bounds-eps-{row.epsilon:g}",
                           f"alpha0={row.alpha0_max:.3e} (quoted 1e{row.quoted_alpha0_decade}) "
                           f"beta0={row.beta0_max:.3e} (quoted 1e{row.quoted_beta0_decade}) {note}"))

    # 10: free maximum of the printed three-outcome operator, both conventions
    cfg = optimize.OptimizerConfig(
        restarts=args.cglmp_restarts,
        max_evals_per_restart=args.cglmp_max_evals,
        simplex_tolerance=1e-6,
    )
    bests = {}
    for name, convention in sorted(_CONVENTIONS.items()):
        bests[name] = cglmp.cglmp_max(convention, cfg, seed)
    within = {name: abs(res.value - cglmp.QUOTED_MAX) <= 0.05 for name, res in bests.items()}
    detail = " ".join(f"{name}:M={res.value:.4f}(gamma={res.gamma:.3f})"
                      for name, res in bests.items())
    if any(within.values()):
        lines.append(_line("PASS", "cglmp-quantum-max",
                           f"{detail} quoted={cglmp.QUOTED_MAX:.4f}"))
    else:
        lines.append(_line("FLAG", "cglmp-quantum-max",
                           f"{detail} quoted={cglmp.QUOTED_MAX:.4f}; no convention within 0.05 "
                           f"(documented discrepancy, violation>2 holds)"))

    # 11: deformed spin algebra residual is second order
    resid = [gup.spin_commutator_residual(b_, 1.0) for b_ in np.logspace(-5, -3, 9)]
    slope, _ = _fit_loglog(np.logspace(-5, -3, 9), resid)
    ok = abs(slope - 2.0) <= 0.1
    lines.append(_line("PASS" if ok else "FLAG", "spin-algebra-residual",
                       f"slope={slope:.3f}"))

    # 12: zero deformation reduces exactly
    rng = np.random.default_rng(seed + 2)
    worst = 0.0
    zero_q = gup.GupParams.quadratic(0.0)
    for _ in range(100):
        s = _random_chsh_settings(rng)
        state = chsh.bell_state(chsh.BellStateKind.PHI_PLUS)
        base = matkernel.expectation(chsh.chsh_operator(s) @ chsh.chsh_operator(s), state).real
        val = gup.deformed_b2(state, s, gup.Kinematics.equal(rng.uniform(0.1, 3.0)),
                              zero_q, gup.EvalMode.EXACT)
        worst = max(worst, abs(val - base) / abs(base))
    ok = worst <= 1e-15
    lines.append(_line("PASS" if ok else "FLAG", "zero-deformation-reduction",
                       f"max_relative={worst:.3e}"))

    flags = [f"paper-table:{line['name']}" for line in lines if line["status"] == "FLAG"]
    for line in lines:
        print(f"{line['status']:<5} {line['name']:<28} {line['detail']}")
    result = {
        "lines": lines,
        "bounds_table": report.as_dict(),
        "cglmp_best": {name: {"value": res.value, "gamma": res.gamma,
                              "quoted_target": cglmp.QUOTED_MAX}
                       for name, res in bests.items()},
    }
    return result, None, flags


_HANDLERS = {
    "identity-check": _cmd_identity_check,
    "tsirelson": _cmd_tsirelson,
    "cglmp": _cmd_cglmp,
    "gup-sweep": _cmd_gup_sweep,
    "gup-qutrit-sweep": _cmd_gup_qutrit_sweep,
    "bounds": _cmd_bounds,
    "paper-table": _cmd_paper_table,
}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 2
    if args.format == "csv" and args.command not in ("gup-sweep", "gup-qutrit-sweep"):
        sys.stderr.write(f"{args.command} does not produce tabular output; use --format json\n")
        return 2
    result, rows, flags = _HANDLERS[args.command](args)
    payload = {
        "manifest": _manifest(args.command, _options_dict(args), getattr(args, "seed", None)),
        "result": result,
        "flags": flags,
    }
    # paper-table already reports on stdout; the structured payload is
    # written only when a path is given.
    if args.command != "paper-table" or args.out is not None:
        _emit(payload, rows, args.format, args.out)
    return 1 if flags else 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
