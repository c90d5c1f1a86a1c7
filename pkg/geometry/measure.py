# -*- coding: utf-8 -*-
# geometry/measure.py
"""
Cell sets and the measurements taken on them.

A cell is the dual cell of a grid node (volume = product of the spacings), so a
CellSet is a boolean node array. Volumes count cells.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Union

import numpy as np
from scipy import ndimage
from scipy.spatial.distance import directed_hausdorff

from geometry.grid import Grid, ScalarField

__all__ = ["CellSet", "sublevel_volume", "masked_volume", "hausdorff_distance"]

Restriction = Optional[Callable[[np.ndarray], np.ndarray]]


@dataclass
class CellSet:
    grid: Grid
    members: np.ndarray

    def __post_init__(self):
        self.members = np.asarray(self.members, dtype=bool)
        if self.members.shape != self.grid.shape:
            raise ValueError("cell set does not match grid shape")

    @property
    def count(self) -> int:
        return int(self.members.sum())

    @property
    def volume(self) -> float:
        return self.count * self.grid.cell_volume

    def is_empty(self) -> bool:
        return not self.members.any()

    def indices(self) -> np.ndarray:
        return np.argwhere(self.members)

    def centers(self) -> np.ndarray:
        return self.grid.index_points(self.indices())

    def eroded(self, steps: int = 1) -> "CellSet":
        st = np.ones((3,) * self.grid.n, dtype=bool)
        out = self.members
        for _ in range(steps):
            out = ndimage.binary_erosion(out, structure=st, border_value=0)
        return CellSet(self.grid, out)

    def shell(self, thickness: int = 1) -> "CellSet":
        return CellSet(self.grid, self.members & ~self.eroded(thickness).members)

    def distance_map(self) -> np.ndarray:
        """Euclidean distance of every node to the nearest member (inf when empty)."""
        if self.is_empty():
            return np.full(self.grid.shape, np.inf)
        return ndimage.distance_transform_edt(~self.members, sampling=self.grid.h)

    def __and__(self, other: "CellSet") -> "CellSet":
        return CellSet(self.grid, self.members & other.members)

    def __or__(self, other: "CellSet") -> "CellSet":
        return CellSet(self.grid, self.members | other.members)


def masked_volume(field: ScalarField) -> float:
    return float(field.mask.sum()) * field.grid.cell_volume


def sublevel_volume(field: ScalarField, level: float, restrict: Restriction = None) -> float:
    """Volume of {v < level} ∩ restrict, counted in dual cells of masked nodes."""
    if not level > 0:
        raise ValueError(f"sublevel_volume needs a positive level, got {level}")
    sel = field.mask & (field.values < level)
    if restrict is not None and sel.any():
        pts = field.grid.points()
        sel &= np.asarray(restrict(pts), dtype=bool)
    return float(sel.sum()) * field.grid.cell_volume


def _as_points(A: Union[CellSet, np.ndarray]) -> np.ndarray:
    if isinstance(A, CellSet):
        return A.centers()
    return np.atleast_2d(np.asarray(A, dtype=float)).reshape(-1, np.shape(A)[-1]) if np.size(A) else np.zeros((0, 1))


def hausdorff_distance(A: Union[CellSet, np.ndarray], B: Union[CellSet, np.ndarray]) -> float:
    """Symmetric Hausdorff distance between cell-centre sets; 0 for two empty sets, inf for one."""
    a, b = _as_points(A), _as_points(B)
    if len(a) == 0 and len(b) == 0:
        return 0.0
    if len(a) == 0 or len(b) == 0:
        return float("inf")
    return float(max(directed_hausdorff(a, b)[0], directed_hausdorff(b, a)[0]))
