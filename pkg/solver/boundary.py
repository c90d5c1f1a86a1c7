# -*- coding: utf-8 -*-
# solver/boundary.py
"""
Dirichlet data. Every variant is a callable on points (m, n) -> (m,), sampled at
the boundary-layer nodes of the grid.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Optional, Union

import numpy as np
import pandas as pd
from scipy.interpolate import RegularGridInterpolator
from scipy.spatial import cKDTree

from geometry.grid import ScalarField

__all__ = [
    "BoundaryData",
    "ExpressionData",
    "SampledData",
    "ShiftedData",
    "as_boundary_data",
]

BoundaryData = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class ExpressionData:
    """Arithmetic in x0..x{n-1} and r = |x| (pandas eval: sqrt, exp, log, abs, ...)."""

    expr: str

    def __call__(self, points: np.ndarray) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(points, float))
        cols = {f"x{i}": pts[:, i] for i in range(pts.shape[1])}
        cols["r"] = np.linalg.norm(pts, axis=1)
        df = pd.DataFrame(cols)
        out = df.eval(self.expr, engine="python")
        return np.broadcast_to(np.asarray(out, dtype=float), (len(pts),)).copy()

    def __str__(self) -> str:
        return self.expr


class SampledData:
    """Multilinear interpolation of node values (all nodes must be finite)."""

    def __init__(self, field: ScalarField):
        vals = np.asarray(field.values, float)
        if not np.all(np.isfinite(vals)):
            raise ValueError("sampled boundary data must be finite on every grid node")
        self.field = field
        self._interp = RegularGridInterpolator(field.grid.axes(), vals, bounds_error=False, fill_value=None)

    def __call__(self, points: np.ndarray) -> np.ndarray:
        return self._interp(np.atleast_2d(np.asarray(points, float)))


class ShiftedData:
    """
    base + t * bump with bump one of
      constant   1
      distance   dist(x, E) for a point set E
      point      |x - x0|
    """

    def __init__(self, base: BoundaryData, t: float, bump: str = "constant", target: Optional[np.ndarray] = None):
        if bump not in ("constant", "distance", "point"):
            raise ValueError(f"unknown perturbation '{bump}'")
        if bump != "constant" and target is None:
            raise ValueError(f"perturbation '{bump}' needs a target")
        self.base, self.t, self.bump = base, float(t), bump
        self.target = None if target is None else np.atleast_2d(np.asarray(target, float))
        self._tree = cKDTree(self.target) if bump == "distance" else None

    def _bump(self, pts: np.ndarray) -> np.ndarray:
        if self.bump == "constant":
            return np.ones(len(pts))
        if self.bump == "point":
            return np.linalg.norm(pts - self.target[0], axis=1)
        d, _ = self._tree.query(pts)
        return d

    def __call__(self, points: np.ndarray) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(points, float))
        return self.base(pts) + self.t * self._bump(pts)


def as_boundary_data(obj: Union[str, ScalarField, Callable[..., Any]]) -> BoundaryData:
    if isinstance(obj, str):
        return ExpressionData(obj)
    if isinstance(obj, ScalarField):
        return SampledData(obj)
    if callable(obj):
        return obj
    raise TypeError(f"cannot use {type(obj).__name__} as boundary data")
