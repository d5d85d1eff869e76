"""Deterministic multistart derivative-free maximizer.

Nelder-Mead with the standard coefficients (reflection 1, expansion 2,
contraction 0.5, shrink 0.5) run on the negated objective from a number of
random restarts.  Restart streams are split from the master seed with
SeedSequence.spawn, so the whole search is bit-reproducible; the merged
result is the best restart, ties broken by lowest restart index.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = ["OptimizerConfig", "MaximizeResult", "NonFiniteObjectiveError", "maximize"]


class NonFiniteObjectiveError(ValueError):
    """Objective returned NaN or infinity; the offending point is attached."""

    def __init__(self, point: np.ndarray, value: float):
        self.point = np.array(point)
        super().__init__(f"objective returned non-finite value {value!r} at point {self.point.tolist()!r}")


@dataclass(frozen=True)
class OptimizerConfig:
    restarts: int = 64
    max_evals_per_restart: int = 20000
    simplex_tolerance: float = 1e-10
    init_scale: float = 0.5

    def __post_init__(self):
        if self.restarts <= 0 or self.max_evals_per_restart <= 0:
            raise ValueError("restarts and max_evals_per_restart must be positive")
        if self.simplex_tolerance <= 0 or self.init_scale <= 0:
            raise ValueError("simplex_tolerance and init_scale must be positive")


@dataclass
class MaximizeResult:
    best_value: float
    best_point: np.ndarray
    evals: int
    best_restart: int
    # Per-restart running best value per iteration, when recorded.
    traces: list[np.ndarray] | None = field(default=None, repr=False)


def _nelder_mead_min(f, simplex, fvals, tol, max_evals, budget):
    """Minimize f starting from the given simplex; returns (points, values, evals).

    ``budget`` counts the evaluations already spent on the initial simplex.
    The best vertex is never discarded, so min(fvals) is nonincreasing.
    """
    n = simplex.shape[1]
    evals = budget
    trace = [float(np.min(fvals))]
    while evals < max_evals:
        order = np.argsort(fvals, kind="stable")
        simplex = simplex[order]
        fvals = fvals[order]
        if fvals[-1] - fvals[0] < tol:
            break
        centroid = simplex[:-1].mean(axis=0)
        xr = centroid + (centroid - simplex[-1])
        fr = f(xr)
        evals += 1
        if fr < fvals[0]:
            xe = centroid + 2.0 * (centroid - simplex[-1])
            fe = f(xe)
            evals += 1
            if fe < fr:
                simplex[-1], fvals[-1] = xe, fe
            else:
                simplex[-1], fvals[-1] = xr, fr
        elif fr < fvals[-2]:
            simplex[-1], fvals[-1] = xr, fr
        else:
            if fr < fvals[-1]:
                xc = centroid + 0.5 * (xr - centroid)
                fc = f(xc)
                evals += 1
                if fc <= fr:
                    simplex[-1], fvals[-1] = xc, fc
                else:
                    simplex, fvals, evals = _shrink(f, simplex, fvals, evals)
            else:
                xc = centroid - 0.5 * (centroid - simplex[-1])
                fc = f(xc)
                evals += 1
                if fc < fvals[-1]:
                    simplex[-1], fvals[-1] = xc, fc
                else:
                    simplex, fvals, evals = _shrink(f, simplex, fvals, evals)
        trace.append(float(np.min(fvals)))
    return simplex, fvals, evals, np.array(trace)


def _shrink(f, simplex, fvals, evals):
    best = simplex[0]
    for i in range(1, simplex.shape[0]):
        simplex[i] = best + 0.5 * (simplex[i] - best)
        fvals[i] = f(simplex[i])
        evals += 1
    return simplex, fvals, evals


def maximize(objective, n: int, config: OptimizerConfig | None = None, seed: int = 0,
             record_traces: bool = False) -> MaximizeResult:
    """Maximize ``objective`` over R^n with multistart Nelder-Mead.

    The objective must be total on R^n (parametrizations are unconstrained)
    and finite everywhere it is evaluated; a non-finite value raises
    NonFiniteObjectiveError naming the point.  Deterministic given ``seed``.
    """
    config = config or OptimizerConfig()

    def f(x):
        value = float(objective(x))
        if not np.isfinite(value):
            raise NonFiniteObjectiveError(x, value)
        return -value

    streams = np.random.SeedSequence(seed).spawn(config.restarts)
    best_value = -np.inf
    best_point = None
    best_restart = -1
    total_evals = 0
    traces: list[np.ndarray] | None = [] if record_traces else None
    for index, stream in enumerate(streams):
        rng = np.random.Generator(np.random.PCG64(stream))
        center = rng.standard_normal(n)
        simplex = np.empty((n + 1, n))
        simplex[0] = center
        simplex[1:] = center + config.init_scale * rng.standard_normal((n, n))
        fvals = np.array([f(v) for v in simplex])
        simplex, fvals, evals, trace = _nelder_mead_min(
            f, simplex, fvals, config.simplex_tolerance,
            config.max_evals_per_restart, budget=n + 1)
        total_evals += evals
        value = -float(np.min(fvals))
        if traces is not None:
            traces.append(-trace)
        if value > best_value:
            best_value = value
            best_point = simplex[int(np.argmin(fvals))].copy()
            best_restart = index
    return MaximizeResult(best_value, best_point, total_evals, best_restart, traces)
