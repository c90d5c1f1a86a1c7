# -*- coding: utf-8 -*-
# freeboundary/fits.py
"""
Log-log fits: growth of v away from K, and volume scaling of sublevel sets.
Shell statistics are medians per shell (pandas groupby), slopes from scipy linregress.
"""
from __future__ import annotations

import logging
from dataclasses import asdict, dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from scipy.stats import linregress

from errors import InsufficientRangeError
from geometry.grid import ScalarField
from geometry.measure import CellSet, sublevel_volume
from settings import defaults

logger = logging.getLogger(__name__)

__all__ = ["FitReport", "growth_exponent", "section_scaling", "default_levels"]

Region = Optional[Callable[[np.ndarray], np.ndarray]]


@dataclass
class FitReport:
    kind: str
    slope: float
    intercept: float
    r2: float
    x: List[float]
    y: List[float]
    theory: Optional[float] = None
    tol: Optional[float] = None
    passed: Optional[bool] = None
    window: Tuple[float, float] = (float("nan"), float("nan"))
    notes: List[str] = field(default_factory=list)

    def as_dict(self) -> Dict[str, Any]:
        d = asdict(self)
        d["window"] = list(self.window)
        return d


def _fit(kind: str, x: np.ndarray, y: np.ndarray, window, theory, tol, one_sided: bool) -> FitReport:
    lx, ly = np.log(x), np.log(y)
    reg = linregress(lx, ly)
    slope = float(reg.slope)
    passed = None
    if theory is not None and tol is not None:
        passed = bool(slope >= theory - tol) if one_sided else bool(abs(slope - theory) <= tol)
    return FitReport(kind, slope, float(reg.intercept), float(reg.rvalue**2), lx.tolist(), ly.tolist(),
                     theory, tol, passed, (float(window[0]), float(window[1])))


def growth_exponent(
    v: ScalarField,
    K: CellSet,
    shells: Optional[Sequence[float]] = None,
    theory: Optional[float] = None,
    tol: Optional[float] = None,
    window: Optional[Tuple[float, float]] = None,
    region: Region = None,
) -> FitReport:
    """
    Slope of log median(v) against log median(dist(x, K)) over distance shells.
    Default window [3h, diam/4]; default shells geometric inside the window.
    """
    cfg = defaults().analysis
    grid = v.grid
    dist = K.distance_map()
    sel = v.mask & ~K.members & (v.values > 0) & np.isfinite(dist)
    if region is not None:
        sel &= np.asarray(region(grid.points()), dtype=bool)
    diam = float(np.linalg.norm(np.asarray(grid.hi) - np.asarray(grid.lo)))
    lo, hi = window if window is not None else (3.0 * grid.hmax, diam / 4.0)
    if shells is None:
        edges = np.geomspace(lo, hi, cfg.shells + 1)
    else:
        edges = np.asarray(shells, dtype=float)
    df = pd.DataFrame({"d": dist[sel], "v": v.values[sel]})
    df = df[(df.d >= edges[0]) & (df.d <= edges[-1])].copy()
    df["shell"] = pd.cut(df.d, edges, include_lowest=True)
    med = df.groupby("shell", observed=True).agg(d=("d", "median"), v=("v", "median"), count=("d", "size"))
    med = med[(med["count"] >= 3) & (med.v > 0)]
    if len(med) < cfg.min_shells:
        raise InsufficientRangeError(len(med), cfg.min_shells)
    rep = _fit("growth", med.d.to_numpy(), med.v.to_numpy(), (edges[0], edges[-1]), theory, tol, one_sided=False)
    logger.debug("growth_exponent: slope=%.4f r2=%.4f shells=%d", rep.slope, rep.r2, len(med))
    return rep


def default_levels(v: ScalarField, count: int = 8) -> np.ndarray:
    """Levels from the one holding ~10·2^n cells to the one holding a quarter of the domain."""
    vals = np.sort(v.values[v.mask])
    vals = vals[vals > 1e-12 * max(float(vals[-1]), 1e-300)]
    if vals.size < 2:
        raise InsufficientRangeError(int(vals.size), 2)
    i_lo = min(len(vals) - 1, 10 * 2**v.grid.n)
    i_hi = len(vals) // 4
    lo = max(vals[i_lo], np.finfo(float).tiny)
    hi = vals[i_hi]
    if not hi > lo:
        raise InsufficientRangeError(0, 2)
    return np.geomspace(lo, hi, count)


def section_scaling(
    v: ScalarField,
    h_list: Optional[Sequence[float]] = None,
    restrict: Region = None,
    theory: Optional[float] = None,
    tol: float = 0.15,
) -> FitReport:
    """
    Slope of log |S_h| against log h, S_h = {v < h} ∩ restrict; the bound is one-sided:
    pass when slope >= theory - tol (theory defaults to (n - q)/2).
    """
    levels = np.asarray(h_list if h_list is not None else default_levels(v), dtype=float)
    vols = np.array([sublevel_volume(v, h, restrict) for h in levels])
    keep = vols > 0
    if keep.sum() < defaults().analysis.min_shells:
        raise InsufficientRangeError(int(keep.sum()), defaults().analysis.min_shells)
    if theory is None and v.q is not None:
        theory = (v.grid.n - v.q) / 2.0
    rep = _fit("section", levels[keep], vols[keep], (levels[keep][0], levels[keep][-1]), theory, tol, one_sided=True)
    logger.debug("section_scaling: slope=%.4f theory=%s", rep.slope, theory)
    return rep
