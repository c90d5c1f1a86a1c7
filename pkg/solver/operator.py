# -*- coding: utf-8 -*-
# solver/operator.py
"""
Wide-stencil Monge-Ampère operator

    MA_h[v](x) = min over frames F of  prod_{e in F} max(Δ_e v(x), 0),
    Δ_e v(x)   = (v(x + e∘h) + v(x - e∘h) - 2 v(x)) / |e∘h|²,

and its pointwise inverse: the node value v0 solving MA_h = R with the neighbours frozen.
Writing Δ_e = p_e (b_e - v0) with p_e = 2/|e∘h|² and b_e the neighbour average, each
frame gives prod p_i (b_i - v0) = R; the node value is the minimum over frames.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from geometry.grid import Grid, ScalarField, interior_nodes
from solver.stencils import StencilSet, build_stencil

__all__ = [
    "StencilPlan", "build_plan", "ma_operator", "ma_values", "local_solve", "coupled_solve",
    "second_differences", "default_width",
]

NEWTON_STEPS = 60


def default_width(n: int) -> int:
    return 2 if n == 2 else 1


@dataclass(eq=False)
class StencilPlan:
    grid: Grid
    mask: np.ndarray
    stencil: StencilSet
    nodes: np.ndarray        # flat indices of interior nodes (I,)
    plus: np.ndarray         # (D, I) flat index of x + e, -1 when unusable
    minus: np.ndarray        # (D, I)
    coef: np.ndarray         # (D,) p_e = 2 / |e∘h|²
    frame_ok: np.ndarray     # (F, I)

    @property
    def interior(self) -> np.ndarray:
        out = np.zeros(self.grid.size, dtype=bool)
        out[self.nodes] = True
        return out.reshape(self.grid.shape)


def build_plan(grid: Grid, mask: np.ndarray, stencil: Optional[StencilSet] = None) -> StencilPlan:
    stencil = stencil or build_stencil(grid.n, default_width(grid.n))
    inner = interior_nodes(mask)
    idx = np.argwhere(inner)                      # (I, n)
    shape = np.asarray(grid.shape)
    flat_mask = mask.reshape(-1)
    D = stencil.size
    plus = np.full((D, len(idx)), -1, dtype=np.intp)
    minus = np.full((D, len(idx)), -1, dtype=np.intp)
    for j, e in enumerate(stencil.directions):
        for sign, out in ((1, plus), (-1, minus)):
            nb = idx + sign * e
            inside = np.all((nb >= 0) & (nb < shape), axis=1)
            flat = np.full(len(idx), -1, dtype=np.intp)
            flat[inside] = np.ravel_multi_index(tuple(nb[inside].T), grid.shape)
            ok = flat >= 0
            ok[ok] = flat_mask[flat[ok]]
            out[j] = np.where(ok, flat, -1)
    L2 = np.sum((stencil.directions * grid.h) ** 2, axis=1)
    coef = 2.0 / L2
    frame_ok = np.empty((len(stencil.frames), len(idx)), dtype=bool)
    for f, dirs in enumerate(stencil.frames):
        d = list(dirs)
        frame_ok[f] = np.all(plus[d] >= 0, axis=0) & np.all(minus[d] >= 0, axis=0)
    nodes = np.ravel_multi_index(tuple(idx.T), grid.shape)
    return StencilPlan(grid, mask, stencil, nodes, plus, minus, coef, frame_ok)


def _averages(V: np.ndarray, plan: StencilPlan) -> np.ndarray:
    """Neighbour averages b_e, shape (D, I); nan where a neighbour is unusable."""
    vp = np.where(plan.plus >= 0, V[plan.plus], np.nan)
    vm = np.where(plan.minus >= 0, V[plan.minus], np.nan)
    return 0.5 * (vp + vm)


def ma_values(V: np.ndarray, plan: StencilPlan) -> np.ndarray:
    """MA_h at the interior nodes of a flat value array."""
    v0 = V[plan.nodes]
    lap = plan.coef[:, None] * (_averages(V, plan) - v0)
    pos = np.maximum(lap, 0.0)
    out = np.full(len(plan.nodes), np.inf)
    for f, dirs in enumerate(plan.stencil.frames):
        prod = np.prod(pos[list(dirs)], axis=0)
        out = np.where(plan.frame_ok[f], np.minimum(out, prod), out)
    return out


def ma_operator(v: ScalarField, stencil: Optional[StencilSet] = None, plan: Optional[StencilPlan] = None) -> np.ndarray:
    """MA_h[v] on the grid; nan off the interior."""
    plan = plan or build_plan(v.grid, v.mask, stencil)
    out = np.full(v.grid.size, np.nan)
    out[plan.nodes] = ma_values(v.values.reshape(-1), plan)
    return out.reshape(v.grid.shape)


def _frame_shift(d: np.ndarray, R: np.ndarray) -> np.ndarray:
    """
    t >= 0 with prod_i (t + d_i) = R, for d (n, I) >= 0 with min_i d_i = 0.
    Closed form in 2D; Newton from t0 = R^{1/n} (above the root, monotone) otherwise.
    """
    n = d.shape[0]
    if n == 2:
        s = d[0] + d[1]
        return 0.5 * (np.sqrt(np.square(d[0] - d[1]) + 4.0 * R) - s)
    t = np.power(R, 1.0 / n)
    for _ in range(NEWTON_STEPS):
        terms = t[None, :] + d
        g = np.prod(terms, axis=0) - R
        dg = np.zeros_like(t)
        for i in range(n):
            dg += np.prod(np.delete(terms, i, axis=0), axis=0)
        step = np.where(dg > 0, g / np.where(dg > 0, dg, 1.0), 0.0)
        t = np.maximum(t - step, 0.0)
        if np.all(np.abs(step) <= 1e-15 * np.maximum(t, 1.0)):
            break
    return t


def local_solve(V: np.ndarray, rhs: np.ndarray, plan: StencilPlan) -> np.ndarray:
    """Per-node value v0 with MA_h = rhs when all neighbours are held fixed."""
    b = _averages(V, plan)
    best = np.full(len(plan.nodes), np.inf)
    for f, dirs in enumerate(plan.stencil.frames):
        ok = plan.frame_ok[f]
        if not ok.any():
            continue
        d_idx = list(dirs)
        bf = b[d_idx][:, ok]
        pf = plan.coef[d_idx]
        R = rhs[ok] / np.prod(pf)
        bmin = bf.min(axis=0)
        t = _frame_shift(bf - bmin, R)
        cand = np.full(len(plan.nodes), np.inf)
        cand[ok] = bmin - t
        best = np.minimum(best, cand)
    return best


def second_differences(V: np.ndarray, plan: StencilPlan) -> np.ndarray:
    """Δ_e v at the interior nodes, shape (D, I); nan where a neighbour is unusable."""
    return plan.coef[:, None] * (_averages(V, plan) - V[plan.nodes])


def _frame_root(b: np.ndarray, P: float, G: np.ndarray, q: float) -> np.ndarray:
    """
    v in [0, min b] with P · prod_i (b_i - v) = G · v^q, q > 0.
    The left side decreases and the right side increases in v, so the root is unique;
    safeguarded Newton inside the bracket, started from the frozen-right-hand-side value.
    """
    top = b.min(axis=0)
    out = top.copy()
    pos = top > 0
    if not pos.any():
        return out
    b, top, G = b[:, pos], top[pos], G[pos]
    v = np.maximum(top - _frame_shift(b - top, G * np.power(top, q) / P), 0.0)
    lo, up = v.copy(), top.copy()
    with np.errstate(divide="ignore", invalid="ignore"):
        for _ in range(NEWTON_STEPS):
            terms = b - v[None, :]
            f = P * np.prod(terms, axis=0) - G * np.power(v, q)
            dprod = np.zeros_like(v)
            for i in range(terms.shape[0]):
                dprod += np.prod(np.delete(terms, i, axis=0), axis=0)
            df = -P * dprod - G * np.where(v > 0, q * np.power(v, q - 1.0), np.inf)
            lo = np.where(f > 0, v, lo)
            up = np.where(f <= 0, v, up)
            newton = v - f / df
            inside = np.isfinite(newton) & (newton > lo) & (newton < up)
            new = np.where(f == 0, v, np.where(inside, newton, 0.5 * (lo + up)))
            done = np.max(np.abs(new - v)) <= 1e-15 * max(1.0, float(top.max()))
            v = new
            if done:
                break
    out[pos] = v
    return out


def coupled_solve(V: np.ndarray, g: np.ndarray, q: float, eps_pos: float, plan: StencilPlan) -> np.ndarray:
    """
    Per-node v0 solving the node equation with the right-hand side evaluated at v0 itself:
    MA_h = g · v0^q (q > 0) or MA_h = g · 1{v0 > eps_pos} (q = 0), neighbours held fixed.
    Nondecreasing in every neighbour value.
    """
    if q == 0:
        active = local_solve(V, g, plan)
        flat = local_solve(V, np.zeros_like(g), plan)
        return np.where(active > eps_pos, active, np.minimum(flat, eps_pos))
    b = _averages(V, plan)
    best = np.full(len(plan.nodes), np.inf)
    for f, dirs in enumerate(plan.stencil.frames):
        ok = plan.frame_ok[f]
        if not ok.any():
            continue
        d_idx = list(dirs)
        cand = np.full(len(plan.nodes), np.inf)
        cand[ok] = _frame_root(b[d_idx][:, ok], float(np.prod(plan.coef[d_idx])), g[ok], q)
        best = np.minimum(best, cand)
    return best
