# -*- coding: utf-8 -*-
# geometry/grid.py
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple, Union

import numpy as np
from scipy import ndimage

from errors import DegenerateDomainError
from geometry.domains import ConvexDomain

__all__ = ["Grid", "ScalarField", "make_grid", "boundary_layer", "interior_nodes"]


@dataclass(frozen=True)
class Grid:
    """Uniform tensor grid on [lo, hi]; `res` counts cells per axis, nodes are res + 1."""

    lo: Tuple[float, ...]
    hi: Tuple[float, ...]
    res: Tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.res)

    @property
    def h(self) -> np.ndarray:
        return (np.asarray(self.hi, float) - np.asarray(self.lo, float)) / np.asarray(self.res, float)

    @property
    def hmax(self) -> float:
        return float(self.h.max())

    @property
    def shape(self) -> Tuple[int, ...]:
        return tuple(int(r) + 1 for r in self.res)

    @property
    def size(self) -> int:
        return int(np.prod(self.shape))

    @property
    def cell_volume(self) -> float:
        return float(np.prod(self.h))

    def axes(self):
        return [np.linspace(self.lo[i], self.hi[i], self.res[i] + 1) for i in range(self.n)]

    def points(self) -> np.ndarray:
        """Node coordinates, shape (*shape, n)."""
        return np.stack(np.meshgrid(*self.axes(), indexing="ij"), axis=-1)

    def index_points(self, idx: np.ndarray) -> np.ndarray:
        """Coordinates of integer node indices shaped (m, n)."""
        return np.asarray(self.lo, float) + np.asarray(idx, float) * self.h

    def scaled(self, factor: float) -> "Grid":
        return Grid(tuple(float(v) * factor for v in self.lo), tuple(float(v) * factor for v in self.hi), self.res)

    def describe(self) -> dict:
        return {"lo": list(self.lo), "hi": list(self.hi), "res": list(self.res)}


def _full_structure(n: int) -> np.ndarray:
    return np.ones((3,) * n, dtype=bool)


def interior_nodes(mask: np.ndarray) -> np.ndarray:
    """Masked nodes whose whole 3^n neighbourhood is masked."""
    return ndimage.binary_erosion(mask, structure=_full_structure(mask.ndim), border_value=0)


def boundary_layer(mask: np.ndarray) -> np.ndarray:
    """Masked nodes with at least one unmasked neighbour; Dirichlet data live here."""
    return mask & ~interior_nodes(mask)


def make_grid(domain: ConvexDomain, res: Union[int, Sequence[int]]) -> Tuple[Grid, np.ndarray]:
    n = domain.n
    if np.isscalar(res):
        res_t = (int(res),) * n
    else:
        res_t = tuple(int(r) for r in res)
    if len(res_t) != n:
        raise ValueError(f"res has {len(res_t)} entries for a {n}-dimensional domain")
    if min(res_t) < 3:
        raise ValueError(f"res must be >= 3 per axis, got {res_t}")
    lo, hi = domain.bbox()
    if np.any(hi - lo <= 0):
        raise DegenerateDomainError("flat bounding box")
    grid = Grid(tuple(float(v) for v in lo), tuple(float(v) for v in hi), res_t)
    # relative tolerance keeps nodes lying exactly on the boundary
    tol = 1e-12 * max(1.0, float(np.abs(np.concatenate([lo, hi])).max()))
    mask = domain.contains(grid.points(), tol=tol)
    if not interior_nodes(mask).any():
        raise DegenerateDomainError("no interior nodes at this resolution", res=list(res_t))
    return grid, mask


@dataclass
class ScalarField:
    """Node values on a grid; entries outside `mask` are meaningless and dumped as nan."""

    grid: Grid
    values: np.ndarray
    mask: np.ndarray
    q: Optional[float] = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        self.mask = np.asarray(self.mask, dtype=bool)
        if self.values.shape != self.grid.shape or self.mask.shape != self.grid.shape:
            raise ValueError(f"field shape {self.values.shape} does not match grid {self.grid.shape}")

    @property
    def interior(self) -> np.ndarray:
        return interior_nodes(self.mask)

    @property
    def boundary(self) -> np.ndarray:
        return boundary_layer(self.mask)

    def masked(self) -> np.ndarray:
        return np.where(self.mask, self.values, np.nan)

    def with_values(self, values: np.ndarray) -> "ScalarField":
        return ScalarField(self.grid, values, self.mask.copy(), self.q, dict(self.meta))

    def sup_diff(self, other: "ScalarField", where: Optional[np.ndarray] = None) -> float:
        sel = self.mask & other.mask if where is None else where
        if not sel.any():
            return 0.0
        return float(np.max(np.abs(self.values[sel] - other.values[sel])))
