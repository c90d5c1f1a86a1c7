# -*- coding: utf-8 -*-
# solver/dirichlet.py
"""
Monotone fixed-point solver for det D²v = g v^q χ_{v>0}, v = φ on ∂Ω.

Each Jacobi sweep replaces every interior node by the root of its own scalar equation
MA_h = g · v0^q (q = 0: g · 1{v0 > h²}) with the neighbours frozen, then clamps v >= 0.
The node map is nondecreasing in the neighbours and strictly decreasing in the node's own
right-hand side, so the sweeps cannot alternate the way a frozen right-hand side does.
Outer iterations are blocks of sweeps; the outer change is the sup-norm change per block.
"""
from __future__ import annotations

import logging
import time
from typing import Callable, Optional, Tuple

import numpy as np
from scipy import ndimage
from scipy.interpolate import RegularGridInterpolator

from errors import ProblemError
from geometry.grid import Grid, ScalarField, boundary_layer, make_grid
from solver.operator import StencilPlan, build_plan, coupled_solve, local_solve, ma_values, second_differences
from solver.problem import ProblemSpec, SolveReport, coincidence_threshold
from solver.stencils import build_stencil

logger = logging.getLogger(__name__)

__all__ = ["solve_dirichlet", "rhs_values", "residual_values"]

NodeMap = Callable[[np.ndarray], np.ndarray]


def rhs_values(v: np.ndarray, g: np.ndarray, q: float, eps_pos: float) -> np.ndarray:
    if q == 0:
        return g * (v > eps_pos)
    return g * np.power(np.maximum(v, 0.0), q)


def residual_values(V: np.ndarray, plan: StencilPlan, g: np.ndarray, q: float, eps_pos: float) -> np.ndarray:
    return ma_values(V, plan) - rhs_values(V[plan.nodes], g, q, eps_pos)


def _sweeps(V: np.ndarray, node_map: NodeMap, plan: StencilPlan, damping: float, tol: float,
            max_sweeps: int) -> Tuple[int, bool]:
    """Damped Jacobi sweeps in place; returns (sweeps used, converged)."""
    nodes = plan.nodes
    for sweep in range(1, max_sweeps + 1):
        vstar = node_map(V)
        old = V[nodes]
        new = np.maximum(old + damping * (vstar - old), 0.0)
        V[nodes] = new
        if float(np.max(np.abs(new - old), initial=0.0)) < tol:
            return sweep, True
    return max_sweeps, False


def _nearest_fill(values: np.ndarray, mask: np.ndarray) -> np.ndarray:
    idx = ndimage.distance_transform_edt(~mask, return_distances=False, return_indices=True)
    return values[tuple(idx)]


def _prolong(coarse: ScalarField, fine: Grid, where: np.ndarray) -> np.ndarray:
    filled = _nearest_fill(coarse.values, coarse.mask)
    interp = RegularGridInterpolator(coarse.grid.axes(), filled, bounds_error=False, fill_value=None)
    out = np.zeros(fine.shape)
    out[where] = interp(fine.points()[where])
    return out


def _nonincreasing(history, skip: int = 3) -> bool:
    tail = np.asarray(history[skip:], dtype=float)
    if tail.size < 2:
        return True
    return bool(np.all(tail[1:] <= tail[:-1] * (1.0 + 1e-6) + 1e-12))


def solve_dirichlet(
    problem: ProblemSpec,
    initial: Optional[str] = None,
    callback: Optional[Callable[[int, float], None]] = None,
) -> Tuple[ScalarField, SolveReport]:
    t0 = time.perf_counter()
    cfg = problem.settings
    mode = initial or cfg.initial
    grid, mask = make_grid(problem.domain, problem.res)
    stencil = build_stencil(problem.n, problem.stencil_width)
    plan = build_plan(grid, mask, stencil)
    bl = boundary_layer(mask)
    pts = grid.points()

    phi = np.asarray(problem.dirichlet(pts[bl]), dtype=float)
    if not np.all(np.isfinite(phi)):
        raise ProblemError("boundary data must be finite at every boundary node")
    if phi.size and float(phi.min()) < 0.0:
        raise ProblemError("boundary data must be nonnegative", min_value=float(phi.min()),
                           negative_nodes=int(np.count_nonzero(phi < 0)))
    g = problem.g_at(pts.reshape(-1, grid.n)[plan.nodes])
    q = problem.q
    eps_pos = grid.hmax**2 if q == 0 else 0.0
    report = SolveReport(eps_pos=eps_pos, initial=mode, width=stencil.width)

    V = np.zeros(grid.shape)
    V[bl] = phi
    interior = plan.interior
    if mode == "upper":
        V[interior] = float(phi.max(initial=0.0))
    elif mode == "coarse":
        coarse_problem = problem.coarsened()
        if coarse_problem is not None:
            coarse, _ = solve_dirichlet(coarse_problem, initial="coarse")
            V[interior] = np.maximum(_prolong(coarse, grid, interior)[interior], 0.0)
            report.flags.append(f"coarse start from res {list(np.atleast_1d(coarse_problem.res))}")
        else:
            mode = "envelope"
    V = V.reshape(-1)
    budget = cfg.max_inner

    if mode == "envelope":
        zero = np.zeros(len(plan.nodes))
        used, _ = _sweeps(V, lambda W: local_solve(W, zero, plan), plan, cfg.damping, cfg.tol_inner,
                          min(cfg.inner_per_outer, budget))
        report.inner_sweeps += used

    def node_map(W: np.ndarray) -> np.ndarray:
        return coupled_solve(W, g, q, eps_pos, plan)

    for m in range(1, cfg.max_outer + 1):
        prev = V[plan.nodes].copy()
        remaining = budget - report.inner_sweeps
        if remaining <= 0:
            report.flags.append("inner sweep budget exhausted")
            break
        used, inner_ok = _sweeps(V, node_map, plan, cfg.damping, cfg.tol_inner, min(cfg.inner_per_outer, remaining))
        report.inner_sweeps += used
        change = float(np.max(np.abs(V[plan.nodes] - prev), initial=0.0))
        report.history.append(change)
        report.residual_history.append(float(np.max(np.abs(residual_values(V, plan, g, q, eps_pos)), initial=0.0)))
        report.outer_iterations = m
        report.last_change = change
        logger.debug("outer %d: change=%.3e sweeps=%d inner_ok=%s", m, change, used, inner_ok)
        if callback is not None:
            callback(m, change)
        if change < cfg.tol_outer:
            report.converged = True
            break
    else:
        report.flags.append("outer iteration cap reached")

    report.residual_nonincreasing = _nonincreasing(report.residual_history)
    if not report.residual_nonincreasing:
        report.flags.append("residual history increased")
        report.converged = False

    res = residual_values(V, plan, g, q, eps_pos)
    report.residual_inf = float(np.max(np.abs(res), initial=0.0))
    values = V.reshape(grid.shape)
    report.min_value = float(values[mask].min(initial=np.inf))
    report.K_cells = int(np.count_nonzero(
        mask & (values < coincidence_threshold(grid.hmax, grid.n, q, report.last_change))))
    dmin = float(np.nanmin(second_differences(V, plan), initial=np.inf))
    report.comparison_flags = {
        "nonnegative": report.min_value >= 0.0,
        "discretely_convex": dmin >= -10.0 * report.residual_inf ** (1.0 / grid.n),
    }
    report.wall_time = time.perf_counter() - t0
    field = ScalarField(grid, values, mask, q, {"width": stencil.width, "eps_pos": eps_pos, "label": problem.label})
    if report.converged:
        logger.info(
            "solve %s res=%s: converged in %d outer / %d sweeps, residual %.3e (%.2fs)",
            problem.label or "-", list(grid.res), report.outer_iterations, report.inner_sweeps,
            report.residual_inf, report.wall_time,
        )
    else:
        logger.warning(
            "solve %s res=%s: not converged after %d outer / %d sweeps (last change %.3e) %s",
            problem.label or "-", list(grid.res), report.outer_iterations, report.inner_sweeps,
            report.last_change, report.flags,
        )
    return field, report
