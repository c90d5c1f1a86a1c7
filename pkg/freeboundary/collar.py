# -*- coding: utf-8 -*-
# freeboundary/collar.py
from __future__ import annotations

from typing import Any, Dict, List, Sequence, Union

import numpy as np

from errors import BelowResolutionError
from geometry.faces import Face
from geometry.grid import ScalarField, interior_nodes
from geometry.measure import CellSet

__all__ = ["discrete_laplacian", "collar_integral", "collar_profile"]


def discrete_laplacian(v: ScalarField) -> np.ndarray:
    """Axis second differences summed, on interior nodes; 0 elsewhere."""
    vals = np.where(v.mask, v.values, 0.0)
    lap = np.zeros(v.grid.shape)
    for ax, h in enumerate(v.grid.h):
        fwd = np.roll(vals, -1, axis=ax)
        bwd = np.roll(vals, 1, axis=ax)
        lap += (fwd + bwd - 2.0 * vals) / h**2
    return np.where(interior_nodes(v.mask), lap, 0.0)


def collar_integral(v: ScalarField, face: Union[Face, CellSet], delta_list: Sequence[float]) -> List[float]:
    """∫ over {dist(x, face) < δ} of |Δ_h v|, for each δ (each >= 3 cells)."""
    cells = face.cells if isinstance(face, Face) else face
    h = v.grid.hmax
    for d in delta_list:
        if d < 3.0 * h - 1e-12:
            raise BelowResolutionError(float(d), 3.0 * h)
    dist = cells.distance_map()
    lap = np.abs(discrete_laplacian(v))
    vol = v.grid.cell_volume
    return [float(lap[dist < d].sum() * vol) for d in delta_list]


def collar_profile(values: Sequence[float]) -> Dict[str, Any]:
    """Plateau vs decay summary of a collar sequence ordered by decreasing δ."""
    vals = np.asarray(values, float)
    if vals.size == 0 or vals[0] == 0:
        return {"first": 0.0, "last": 0.0, "ratio": 0.0}
    return {"first": float(vals[0]), "last": float(vals[-1]), "ratio": float(vals[-1] / vals[0])}
