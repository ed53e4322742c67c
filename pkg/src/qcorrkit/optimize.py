"""Search for the reversal strength that best restores entanglement.

The objective is the concurrence of the full measurement/channel/reversal
pipeline as a function of the reversal strength r at fixed damping,
memory, and measurement strength.  The search is a dense coarse grid
(the state after measurement and channel is fixed, so the grid reduces
to an entrywise rescale and is evaluated in one batch) followed by
golden-section refinement of the bracketed maximum.  Everything is
deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channels import (
    ChannelParams,
    WmrMode,
    WmrParams,
    apply_cad,
    apply_wm,
    qmr_diagonal,
    wmr_pipeline,
)
from .exceptions import DegenerateMeasurementError, OptimizationError
from .measures import concurrence
from .states import StateFamily, make_state

_R_MAX = 1.0 - 1e-6
_INV_PHI = (np.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class OptimizationResult:
    """Best reversal strength and the pipeline quality reached there."""

    r_star: float
    concurrence_at_star: float
    success_probability: float
    evaluations: int


def optimal_qmr(
    family: StateFamily,
    ch: ChannelParams,
    q: float,
    mode: WmrMode,
    grid_step: float = 1e-3,
    refine_tol: float = 1e-8,
) -> OptimizationResult:
    """Maximize pipeline concurrence over the reversal strength r.

    Coarse grid of the given step over [0, 1 - 1e-6], then golden-section
    refinement of the best bracket down to ``refine_tol`` in r.  Ties and
    all-zero plateaus (entanglement already dead everywhere) resolve to
    the smallest admissible r.
    """
    if mode is WmrMode.NONE:
        raise ValueError("reversal optimization needs a measurement mode")
    if not 0.0 <= q < 1.0:
        raise ValueError(f"q={q} outside [0, 1)")

    rho0 = make_state(family)
    measured, _ = apply_wm(rho0, q, mode)
    sigma = apply_cad(measured, ch)

    grid = np.arange(0.0, _R_MAX, grid_step)
    if grid[-1] < _R_MAX:
        grid = np.append(grid, _R_MAX)

    diags = np.stack([qmr_diagonal(r, mode) for r in grid])
    sandwiched = sigma[None, :, :] * (diags[:, :, None] * diags[:, None, :])
    traces = np.einsum("gii->g", sandwiched).real
    valid = traces > 1e-14
    if not valid.any():
        raise OptimizationError("every reversal strength annihilates the state")
    values = np.full(len(grid), -np.inf)
    values[valid] = concurrence(sandwiched[valid] / traces[valid, None, None])
    evaluations = int(valid.sum())

    best = int(values.argmax())  # argmax takes the first index, i.e. smallest r

    def objective(r: float) -> float:
        try:
            out = wmr_pipeline(rho0, ch, WmrParams(q, r, mode))
        except DegenerateMeasurementError:
            return -np.inf
        return float(concurrence(out.state))

    if values[best] <= 0.0:
        # plateau: no r recovers any entanglement; report the smallest one
        r_star = float(grid[np.flatnonzero(valid)[0]])
        c_star = max(values[valid][0], 0.0)
    else:
        lo = grid[best - 1] if best > 0 else grid[best]
        hi = grid[best + 1] if best + 1 < len(grid) else grid[best]
        r_star, c_star, extra = _golden_max(objective, float(lo), float(hi), refine_tol)
        evaluations += extra
        # refinement must never lose to the best coarse candidate, and a
        # tie (flat or boundary maximum) resolves to the smaller r
        if c_star < values[best] or (c_star - values[best] <= 1e-12 and grid[best] < r_star):
            r_star, c_star = float(grid[best]), float(values[best])

    out = wmr_pipeline(rho0, ch, WmrParams(q, float(r_star), mode))
    return OptimizationResult(
        r_star=float(r_star),
        concurrence_at_star=float(c_star),
        success_probability=out.success_probability,
        evaluations=evaluations,
    )


def _golden_max(f, a: float, b: float, tol: float) -> tuple[float, float, int]:
    """Golden-section maximization on [a, b]; assumes unimodality there.

    Returns (argmax, max, evaluation count).  On ties the midpoint rule of
    the shrinking bracket drifts left, so equal maxima resolve to the
    smaller argument.
    """
    evals = 0
    h = b - a
    if h <= tol:
        return a, f(a), 1
    c = b - _INV_PHI * h
    d = a + _INV_PHI * h
    fc, fd = f(c), f(d)
    evals += 2
    while h > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            h = b - a
            c = b - _INV_PHI * h
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            h = b - a
            d = a + _INV_PHI * h
            fd = f(d)
        evals += 1
    x = a if fc >= fd else b
    candidates = [(f(x), x), (fc, c), (fd, d)]
    evals += 1
    best_val = max(v for v, _ in candidates)
    best_x = min(x for v, x in candidates if v >= best_val - 1e-15)
    return best_x, best_val, evals
