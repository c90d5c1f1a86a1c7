# -*- coding: utf-8 -*-
# experiments/common.py
"""Shared plumbing for the experiment runners."""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor, as_completed
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from analytic.calibration import subsolution_residual
from analytic.families import AnalyticExample
from experiments.checks import Result, passed_if
from experiments.config import ExperimentConfig, solver_settings
from geometry.domains import ConvexDomain
from geometry.grid import Grid, ScalarField, make_grid
from geometry.measure import CellSet
from geometry.subspace import AffineSubspace
from settings import worker_count
from solver.dirichlet import solve_dirichlet
from solver.problem import ProblemSpec, SolveReport

logger = logging.getLogger(__name__)

__all__ = [
    "sample_field",
    "sample_on",
    "problem_for",
    "solve_many",
    "near_subspace",
    "out_dir_for",
    "growth_settings",
    "default_delta_list",
    "printed_gamma_check",
    "subsolution_check",
]

Solved = Tuple[ScalarField, SolveReport]


def sample_field(fn: Callable[[np.ndarray], np.ndarray], grid: Grid, mask: np.ndarray,
                 q: Optional[float] = None) -> ScalarField:
    """Evaluate a function at the masked nodes; 0 elsewhere."""
    values = np.zeros(grid.shape)
    values[mask] = np.asarray(fn(grid.points()[mask]), dtype=float)
    return ScalarField(grid, values, mask, q)


def sample_on(fn: Callable[[np.ndarray], np.ndarray], domain: ConvexDomain, res, q: Optional[float] = None) -> ScalarField:
    grid, mask = make_grid(domain, res)
    return sample_field(fn, grid, mask, q)


def problem_for(cfg: ExperimentConfig, domain: ConvexDomain, data, res=None, label: str = "",
                q: Optional[float] = None) -> ProblemSpec:
    return ProblemSpec(
        n=domain.n,
        q=cfg.q if q is None else q,
        domain=domain,
        dirichlet=data,
        res=cfg.res if res is None else res,
        settings=solver_settings(cfg.solver),
        label=label or cfg.name,
    )


def solve_many(problems: Sequence[ProblemSpec]) -> List[Solved]:
    """Solve independent problems on MAOB_WORKERS threads; results keep input order."""
    workers = min(worker_count(), max(1, len(problems)))
    if workers == 1:
        return [solve_dirichlet(p) for p in problems]
    out: Dict[int, Solved] = {}
    with ThreadPoolExecutor(max_workers=workers) as ex:
        futs = {ex.submit(solve_dirichlet, p): i for i, p in enumerate(problems)}
        for fut in as_completed(futs):
            out[futs[fut]] = fut.result()
    return [out[i] for i in range(len(problems))]


def near_subspace(v: ScalarField, L: AffineSubspace, tol: Optional[float] = None) -> CellSet:
    """Masked nodes within `tol` (default half a cell) of an affine subspace."""
    tol = 0.5 * v.grid.hmax if tol is None else tol
    pts = v.grid.points()
    return CellSet(v.grid, v.mask & (L.distance(pts) <= tol + 1e-12))


def out_dir_for(cfg: ExperimentConfig) -> Path:
    p = Path(cfg.out_dir) / cfg.name
    p.mkdir(parents=True, exist_ok=True)
    return p


def growth_settings(cfg: ExperimentConfig, theory: float, grid: Grid, diam: float) -> Dict[str, object]:
    tol = cfg.analysis.growth_tol
    if tol is None:
        tol = 0.1 if theory == 1.0 else 0.15
    win = cfg.analysis.growth_window
    window = (float(win[0]), float(win[1])) if win else (3.0 * grid.hmax, diam / 4.0)
    return {"theory": theory, "tol": tol, "window": window}


def default_delta_list(cfg: ExperimentConfig, h: float, top: float = 0.5, count: int = 6) -> List[float]:
    """Decreasing collar widths from `top` down to three cells."""
    if cfg.delta_list:
        return sorted((float(d) for d in cfg.delta_list), reverse=True)
    return np.geomspace(top, 3.0 * h, count).tolist()


def printed_gamma_check(disc: Dict[str, Any]) -> Result:
    """The printed family-b exponent fails the determinant oracle exactly when q != n - k."""
    expected = abs(float(disc["q"]) - (disc["n"] - disc["k"])) < 1e-12
    return passed_if("gamma-printed-discrepancy", disc["printed_consistent"] == expected,
                     expected_consistent=expected, **disc)


def subsolution_check(example: AnalyticExample, points: np.ndarray, check_id: str = "subsolution-residual") -> Result:
    """det D²w >= c_sub · w^q on the calibration sample, up to roundoff relative to c_sub."""
    rep = subsolution_residual(example, points)
    floor = -1e-10 * max(1.0, rep["c_sub"])
    return passed_if(check_id, rep["min"] >= floor, floor=floor, family=example.family, **rep)
