# -*- coding: utf-8 -*-
# geometry/faces.py
"""
Exposed faces of a discrete convex set K.

Lower-dimensional K is its own single exposed face. Otherwise faces come from the
supporting hyperplanes of the convex hull of K's outer cells: each plane collects the
cells of K within `tol_face` of it. A direction of a face counts as flat when it is
longer than `tol_face` and keeps `keep_ratio` of its length when the membership
tolerance is cut by four; flat pieces keep their extent, curved caps shrink like sqrt(tol).
"""
from __future__ import annotations

import hashlib
import logging
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np
from scipy.spatial import ConvexHull

from errors import EmptySetError
from geometry.domains import ConvexDomain
from geometry.grid import Grid
from geometry.measure import CellSet

logger = logging.getLogger(__name__)

__all__ = ["Face", "FaceDecomposition", "exposed_faces", "principal_frame", "flat_rank"]

LABEL_SC = "strictly-convex-point"
LABEL_NSC = "non-strictly-convex-face"
LABEL_DOMAIN = "domain-boundary"


@dataclass
class Face:
    cells: CellSet
    affine_dim: int
    flat_dirs: np.ndarray
    normal: Optional[np.ndarray] = None
    offset: Optional[float] = None
    extreme_points: np.ndarray = field(default_factory=lambda: np.zeros((0, 0)))
    reaches_boundary: bool = False
    on_domain_boundary: bool = False
    label: str = "unclassified"

    @property
    def count(self) -> int:
        return self.cells.count

    def points(self) -> np.ndarray:
        return self.cells.centers()

    def summary(self) -> dict:
        return {
            "cells": self.count,
            "affine_dim": int(self.affine_dim),
            "reaches_boundary": bool(self.reaches_boundary),
            "label": self.label,
        }


@dataclass
class FaceDecomposition:
    grid: Grid
    faces: List[Face]
    k_dim: int
    positive_measure: Optional[bool] = None
    kind: str = "unclassified"

    def by_label(self, label: str) -> List[Face]:
        return [f for f in self.faces if f.label == label]

    def nsc_faces(self) -> List[Face]:
        return self.by_label(LABEL_NSC)

    def union(self, label: Optional[str] = None) -> CellSet:
        members = np.zeros(self.grid.shape, dtype=bool)
        for f in self.faces:
            if label is None or f.label == label:
                members |= f.cells.members
        return CellSet(self.grid, members)

    def summary(self) -> dict:
        counts: dict = {}
        for f in self.faces:
            counts[f.label] = counts.get(f.label, 0) + 1
        return {
            "k_dim": int(self.k_dim),
            "positive_measure": self.positive_measure,
            "kind": self.kind,
            "faces": len(self.faces),
            "labels": counts,
            "nsc_dims": sorted({int(f.affine_dim) for f in self.nsc_faces()}),
        }


def principal_frame(points: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Centre, principal directions (rows) and extents along them."""
    pts = np.asarray(points, dtype=float)
    c = pts.mean(axis=0)
    if len(pts) < 2:
        n = pts.shape[1]
        return c, np.eye(n), np.zeros(n)
    _, _, vt = np.linalg.svd(pts - c, full_matrices=True)
    proj = (pts - c) @ vt.T
    return c, vt, np.ptp(proj, axis=0)


def flat_rank(
    loose: np.ndarray,
    tight: Optional[np.ndarray],
    tol: float,
    keep_ratio: float = 0.75,
) -> Tuple[int, np.ndarray]:
    if len(loose) == 0:
        return 0, np.zeros((0, 0))
    _, dirs, ext = principal_frame(loose)
    flat = []
    for j, u in enumerate(dirs):
        if ext[j] <= tol:
            continue
        if tight is not None:
            t_ext = float(np.ptp(tight @ u)) if len(tight) else 0.0
            if t_ext < keep_ratio * ext[j]:
                continue
        flat.append(u)
    dims = np.array(flat) if flat else np.zeros((0, loose.shape[1]))
    return len(flat), dims


def _extreme_points(points: np.ndarray, dirs: np.ndarray) -> np.ndarray:
    if len(dirs) == 0 or len(points) == 0:
        return points[:1]
    coords = (points - points.mean(axis=0)) @ dirs.T
    if dirs.shape[0] >= 2 and len(points) > dirs.shape[0] + 1:
        try:
            return points[ConvexHull(coords).vertices]
        except Exception:
            pass
    idx = set()
    for j in range(coords.shape[1]):
        idx.add(int(np.argmin(coords[:, j])))
        idx.add(int(np.argmax(coords[:, j])))
    return points[sorted(idx)]


def _finish(face: Face, pts: np.ndarray, domain: ConvexDomain, reach_tol: float) -> Face:
    bd = domain.boundary_distance(pts)
    face.on_domain_boundary = bool(np.all(bd <= reach_tol))
    ext = _extreme_points(pts, face.flat_dirs)
    face.extreme_points = ext
    face.reaches_boundary = bool(face.affine_dim >= 1 and np.all(domain.boundary_distance(ext) <= reach_tol))
    return face


def exposed_faces(
    K: CellSet,
    domain: ConvexDomain,
    tol_face: Optional[float] = None,
    reach_tol: Optional[float] = None,
    keep_ratio: float = 0.75,
) -> FaceDecomposition:
    grid = K.grid
    tol_face = 1.5 * grid.hmax if tol_face is None else float(tol_face)
    reach_tol = 2.0 * grid.hmax if reach_tol is None else float(reach_tol)
    if K.is_empty():
        raise EmptySetError("no coincidence set")

    pts = K.centers()
    _, dirs, ext = principal_frame(pts)
    k_dim = int((ext > tol_face).sum())
    if k_dim < grid.n:
        flat = dirs[ext > tol_face]
        face = Face(CellSet(grid, K.members.copy()), k_dim, flat)
        return FaceDecomposition(grid, [_finish(face, pts, domain, reach_tol)], k_dim=k_dim)

    shell = K.shell(2)
    sidx = shell.indices()
    sp = grid.index_points(sidx)
    try:
        hull = ConvexHull(sp)
    except Exception:
        hull = ConvexHull(sp, qhull_options="QJ")
    eqs = hull.equations
    _, first = np.unique(np.round(eqs, 8), axis=0, return_index=True)

    faces: List[Face] = []
    seen = set()
    for i in sorted(first):
        normal, off = eqs[i, :-1], float(eqs[i, -1])
        depth = -(sp @ normal + off)
        loose = depth <= tol_face
        key = hashlib.sha1(np.packbits(loose).tobytes()).hexdigest()
        if key in seen:
            continue
        seen.add(key)
        tight = depth <= tol_face / 4.0
        d, flat = flat_rank(sp[loose], sp[tight], tol_face, keep_ratio)
        members = np.zeros(grid.shape, dtype=bool)
        members[tuple(sidx[loose].T)] = True
        face = Face(CellSet(grid, members), d, flat, normal=normal.copy(), offset=off)
        faces.append(_finish(face, sp[loose], domain, reach_tol))
    logger.debug("exposed_faces: %d hull planes -> %d faces", len(first), len(faces))
    return FaceDecomposition(grid, faces, k_dim=k_dim)
