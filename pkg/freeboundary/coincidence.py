# -*- coding: utf-8 -*-
# freeboundary/coincidence.py
from __future__ import annotations

import logging
from typing import Any, Dict, Optional

import numpy as np
from scipy.stats import linregress

from errors import EmptySetError
from geometry.domains import ConvexDomain
from geometry.faces import LABEL_DOMAIN, LABEL_NSC, LABEL_SC, Face, FaceDecomposition, exposed_faces, flat_rank
from geometry.grid import ScalarField
from geometry.measure import CellSet
from settings import defaults
from solver.problem import SolveReport, coincidence_threshold

logger = logging.getLogger(__name__)

__all__ = [
    "default_eps_k",
    "coincidence_set",
    "classify_gamma",
    "flat_dimension",
    "dichotomy",
    "union_dimension",
]


def default_eps_k(v: ScalarField, last_change: float = 0.0, q: Optional[float] = None) -> float:
    """max((max h / c)^α, 2 · last outer change), α = 2n/(n-q)."""
    qq = v.q if q is None else q
    return coincidence_threshold(v.grid.hmax, v.grid.n, qq or 0.0, last_change)


def coincidence_set(
    v: ScalarField, eps_K: Optional[float] = None, report: Optional[SolveReport] = None
) -> CellSet:
    """Masked nodes with v < eps_K (node-dual cells)."""
    if eps_K is None:
        eps_K = default_eps_k(v, report.last_change if report is not None else 0.0)
    members = v.mask & (v.values < eps_K)
    K = CellSet(v.grid, members)
    logger.debug("coincidence_set: eps_K=%.3e cells=%d", eps_K, K.count)
    return K


def dichotomy(K: CellSet) -> Dict[str, Any]:
    """|K| measured on the one-cell erosion of K; positive iff it holds more than 2^n cells."""
    eroded = K.eroded(1)
    threshold = 2 ** K.grid.n
    return {
        "cells": K.count,
        "eroded_cells": eroded.count,
        "threshold": threshold,
        "positive_measure": bool(eroded.count > threshold),
        "volume": eroded.volume,
    }


def classify_gamma(
    K: CellSet,
    domain: ConvexDomain,
    tol_face: Optional[float] = None,
    reach_tol: Optional[float] = None,
) -> FaceDecomposition:
    if K.is_empty():
        raise EmptySetError("no coincidence set")
    cfg = defaults().analysis
    h = K.grid.hmax
    tol_face = cfg.tol_face_cells * h if tol_face is None else tol_face
    reach_tol = cfg.reach_cells * h if reach_tol is None else reach_tol
    dec = exposed_faces(K, domain, tol_face, reach_tol, cfg.flat_keep_ratio)
    for f in dec.faces:
        if f.normal is not None and f.on_domain_boundary:
            f.label = LABEL_DOMAIN
        elif f.affine_dim >= 1 and f.reaches_boundary:
            f.label = LABEL_NSC
        else:
            f.label = LABEL_SC
    dich = dichotomy(K)
    dec.positive_measure = dich["positive_measure"]
    if dec.positive_measure:
        dec.kind = "positive-measure"
    elif dec.k_dim == 0:
        dec.kind = "singleton"
    else:
        dec.kind = "nsc"
    logger.info("classify_gamma: %s", dec.summary())
    return dec


def flat_dimension(face: Face, tol: Optional[float] = None) -> int:
    """Affine dimension of a face at tolerance `tol` (default 1.5 cells)."""
    grid = face.cells.grid
    tol = defaults().analysis.tol_face_cells * grid.hmax if tol is None else float(tol)
    pts = face.points()
    if len(pts) == 0:
        return 0
    if face.normal is None:
        d, _ = flat_rank(pts, None, tol)
        return d
    depth = -(pts @ face.normal + face.offset)
    d, _ = flat_rank(pts[depth <= tol], pts[depth <= tol / 4.0], tol, defaults().analysis.flat_keep_ratio)
    return d


def union_dimension(cells: CellSet, levels: int = 4) -> Dict[str, float]:
    """Box-counting dimension of a cell set over box sides 2h, 4h, ..."""
    pts = cells.centers()
    if len(pts) < 2:
        return {"slope": 0.0, "dimension": 0}
    lo = np.asarray(cells.grid.lo, float)
    sizes, counts = [], []
    for j in range(1, levels + 1):
        eps = cells.grid.hmax * 2**j
        boxes = np.unique(np.floor((pts - lo) / eps).astype(np.int64), axis=0)
        sizes.append(eps)
        counts.append(len(boxes))
    fit = linregress(np.log(1.0 / np.asarray(sizes)), np.log(np.asarray(counts, float)))
    return {"slope": float(fit.slope), "dimension": int(round(fit.slope))}
