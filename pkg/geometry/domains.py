# -*- coding: utf-8 -*-
# geometry/domains.py
"""
Bounded convex domains: Ball, Box, Polytope (halfspaces) and Hull (convex hull of points).

Every domain answers `signed_distance(points)` (negative inside, exact for interior
points), `contains(points)` and `bbox()`. Points are arrays shaped (..., n).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np
from scipy.optimize import linprog
from scipy.spatial import ConvexHull, HalfspaceIntersection

from errors import DegenerateDomainError

__all__ = ["ConvexDomain", "Ball", "Box", "Polytope", "Halfspace", "hull_domain", "domain_from_dict"]


class ConvexDomain:
    n: int

    def signed_distance(self, points: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def bbox(self) -> Tuple[np.ndarray, np.ndarray]:
        raise NotImplementedError

    def contains(self, points: np.ndarray, tol: float = 1e-12) -> np.ndarray:
        return self.signed_distance(points) <= tol

    def boundary_distance(self, points: np.ndarray) -> np.ndarray:
        return np.abs(self.signed_distance(points))

    def diameter(self) -> float:
        lo, hi = self.bbox()
        return float(np.linalg.norm(hi - lo))

    def describe(self) -> dict:
        return {"kind": type(self).__name__.lower(), "n": self.n}


@dataclass(frozen=True)
class Ball(ConvexDomain):
    center: Tuple[float, ...]
    radius: float

    def __post_init__(self):
        if not np.all(np.isfinite(self.center)) or not (self.radius > 0):
            raise DegenerateDomainError("ball radius must be positive", radius=self.radius)
        if len(self.center) < 2:
            raise DegenerateDomainError("dimension must be at least 2", n=len(self.center))

    @property
    def n(self) -> int:
        return len(self.center)

    def signed_distance(self, points):
        x = np.asarray(points, dtype=float)
        return np.linalg.norm(x - np.asarray(self.center), axis=-1) - self.radius

    def bbox(self):
        c = np.asarray(self.center, dtype=float)
        return c - self.radius, c + self.radius

    def describe(self):
        return {"kind": "ball", "center": list(self.center), "radius": self.radius}


@dataclass(frozen=True)
class Box(ConvexDomain):
    lo: Tuple[float, ...]
    hi: Tuple[float, ...]

    def __post_init__(self):
        lo, hi = np.asarray(self.lo, float), np.asarray(self.hi, float)
        if lo.shape != hi.shape or lo.size < 2 or not np.all(hi > lo):
            raise DegenerateDomainError("box needs hi > lo on every axis", lo=list(self.lo), hi=list(self.hi))

    @property
    def n(self) -> int:
        return len(self.lo)

    def signed_distance(self, points):
        x = np.asarray(points, dtype=float)
        lo, hi = np.asarray(self.lo, float), np.asarray(self.hi, float)
        c, half = (lo + hi) / 2, (hi - lo) / 2
        d = np.abs(x - c) - half
        outside = np.linalg.norm(np.maximum(d, 0.0), axis=-1)
        inside = np.minimum(d.max(axis=-1), 0.0)
        return outside + inside

    def bbox(self):
        return np.asarray(self.lo, float), np.asarray(self.hi, float)

    def describe(self):
        return {"kind": "box", "lo": list(self.lo), "hi": list(self.hi)}


@dataclass(frozen=True)
class Halfspace:
    """Open halfspace {x : normal·x > offset}; used to restrict measurements."""

    normal: Tuple[float, ...]
    offset: float = 0.0

    def __call__(self, points: np.ndarray) -> np.ndarray:
        return np.asarray(points, float) @ np.asarray(self.normal, float) > self.offset


def _chebyshev_center(A: np.ndarray, b: np.ndarray) -> Tuple[np.ndarray, float]:
    # max s  s.t.  a_i·x + |a_i| s <= b_i ; rows of A are unit vectors
    m, n = A.shape
    c = np.zeros(n + 1)
    c[-1] = -1.0
    A_ub = np.hstack([A, np.ones((m, 1))])
    res = linprog(c, A_ub=A_ub, b_ub=b, bounds=[(None, None)] * n + [(0, None)], method="highs")
    if res.status == 3:
        raise DegenerateDomainError("unbounded polytope")
    if not res.success:
        raise DegenerateDomainError("infeasible polytope")
    return res.x[:n], float(res.x[-1])


@dataclass(frozen=True, eq=False)
class Polytope(ConvexDomain):
    """{x : A x <= b}; rows are normalised on construction."""

    A: np.ndarray
    b: np.ndarray
    _center: np.ndarray = field(init=False, repr=False, compare=False)
    _inradius: float = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        A = np.atleast_2d(np.asarray(self.A, dtype=float))
        b = np.asarray(self.b, dtype=float).reshape(-1)
        if A.shape[0] != b.size or A.shape[1] < 2:
            raise DegenerateDomainError("halfspace arrays do not match", shape=list(A.shape))
        norms = np.linalg.norm(A, axis=1)
        if np.any(norms == 0):
            raise DegenerateDomainError("zero normal")
        A, b = A / norms[:, None], b / norms
        center, radius = _chebyshev_center(A, b)
        if radius <= 1e-12:
            raise DegenerateDomainError("empty interior", inradius=radius)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "_center", center)
        object.__setattr__(self, "_inradius", radius)

    @property
    def n(self) -> int:
        return self.A.shape[1]

    @property
    def interior_point(self) -> np.ndarray:
        return self._center.copy()

    def signed_distance(self, points):
        x = np.asarray(points, dtype=float)
        return (x @ self.A.T - self.b).max(axis=-1)

    def bbox(self):
        n = self.n
        lo, hi = np.empty(n), np.empty(n)
        for i in range(n):
            c = np.zeros(n)
            c[i] = 1.0
            r_lo = linprog(c, A_ub=self.A, b_ub=self.b, bounds=[(None, None)] * n, method="highs")
            r_hi = linprog(-c, A_ub=self.A, b_ub=self.b, bounds=[(None, None)] * n, method="highs")
            if not (r_lo.success and r_hi.success):
                raise DegenerateDomainError("unbounded polytope")
            lo[i], hi[i] = r_lo.fun, -r_hi.fun
        return lo, hi

    def vertices(self) -> np.ndarray:
        hs = HalfspaceIntersection(np.hstack([self.A, -self.b[:, None]]), self._center)
        v = hs.intersections
        # merge numerically repeated vertices
        keep: list = []
        for p in v:
            if not any(np.linalg.norm(p - q) < 1e-9 for q in keep):
                keep.append(p)
        return np.array(keep)

    def transformed(self, scale: float, shift: np.ndarray) -> "Polytope":
        """Image under x -> scale * x + shift."""
        shift = np.asarray(shift, float)
        return Polytope(self.A, scale * self.b + self.A @ shift)

    def describe(self):
        return {"kind": "polytope", "A": self.A.tolist(), "b": self.b.tolist()}


def hull_domain(points: np.ndarray) -> Polytope:
    """Convex hull of a point cloud as a Polytope."""
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[0] <= pts.shape[1]:
        raise DegenerateDomainError("too few points for a hull", count=int(pts.shape[0]) if pts.ndim == 2 else 0)
    try:
        hull = ConvexHull(pts)
    except Exception as e:  # qhull raises on flat input
        raise DegenerateDomainError(f"{type(e).__name__}") from e
    eq = hull.equations
    # normal·x + offset <= 0 ; merge coplanar simplices
    _, idx = np.unique(np.round(eq, 10), axis=0, return_index=True)
    eq = eq[np.sort(idx)]
    return Polytope(eq[:, :-1], -eq[:, -1])


def domain_from_dict(spec: dict, n: Optional[int] = None) -> ConvexDomain:
    kind = str(spec.get("kind", "")).lower()
    if kind == "ball":
        center = spec.get("center") or [0.0] * int(n or 2)
        return Ball(tuple(float(c) for c in center), float(spec.get("radius", 1.0)))
    if kind == "box":
        return Box(tuple(map(float, spec["lo"])), tuple(map(float, spec["hi"])))
    if kind == "polytope":
        return Polytope(np.asarray(spec["A"], float), np.asarray(spec["b"], float))
    if kind == "hull":
        return hull_domain(np.asarray(spec["points"], float))
    raise DegenerateDomainError(f"unknown domain kind '{kind}'")
