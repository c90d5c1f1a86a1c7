# -*- coding: utf-8 -*-
# analytic/polytope.py
"""
Subsolutions vanishing exactly on a polytope P.

Every k-dimensional face E_i of P carries a family-a block Φ_i whose zero set is the
affine hull of E_i, and a linear ℓ_i vanishing on E_i with P ⊂ {ℓ_i <= 0}. Then
    w = M2 · max_i (Φ_i + M1 ℓ_i)_+
vanishes on P for M1 large and is a subsolution once M2^{n-q} · inf det/w^q >= 1.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from analytic.calibration import quasi_random_box
from analytic.families import AnalyticExample, family_a
from analytic.profiles import symmetric_det
from errors import ConstructionError, DegenerateDomainError, OutsideValidityError
from geometry.domains import ConvexDomain, Polytope
from geometry.subspace import AffineSubspace

logger = logging.getLogger(__name__)

__all__ = [
    "PolytopeFace",
    "PolytopeSubsolution",
    "polytope_faces",
    "skeleton_domain",
    "polytope_subsolution",
    "named_polytope",
]


@dataclass(eq=False)
class PolytopeFace:
    vertices: np.ndarray
    plane: AffineSubspace
    facets: Tuple[int, ...]
    ell_normal: np.ndarray
    ell_offset: float

    def ell(self, x: np.ndarray) -> np.ndarray:
        return np.asarray(x, float) @ self.ell_normal - self.ell_offset


def named_polytope(name: str, n: int, half_width: float = 0.5) -> Polytope:
    name = name.lower()
    if name in ("square", "cube", "hypercube"):
        A = np.vstack([np.eye(n), -np.eye(n)])
        return Polytope(A, np.full(2 * n, half_width))
    if name in ("simplex", "triangle"):
        # regular-ish simplex: x_i >= -h, sum x_i <= h
        A = np.vstack([-np.eye(n), np.ones((1, n))])
        return Polytope(A, np.r_[np.full(n, half_width), half_width])
    raise DegenerateDomainError(f"unknown polytope '{name}'")


def _affine_dim(points: np.ndarray, tol: float = 1e-9) -> int:
    if len(points) < 2:
        return 0
    sv = np.linalg.svd(points - points.mean(axis=0), compute_uv=False)
    return int((sv > tol * max(1.0, sv.max())).sum())


def polytope_faces(P: Polytope, k: int) -> List[PolytopeFace]:
    n = P.n
    if not (0 <= k <= n - 1):
        raise ValueError(f"face dimension must be in [0, n-1], got {k}")
    V = P.vertices()
    inc = np.abs(V @ P.A.T - P.b) < 1e-9  # (vertices, facets)
    faces: List[PolytopeFace] = []
    seen = set()
    for combo in itertools.combinations(range(P.A.shape[0]), n - k):
        common = np.all(inc[:, combo], axis=1)
        if common.sum() < k + 1:
            continue
        key = tuple(np.flatnonzero(common))
        if key in seen:
            continue
        verts = V[common]
        if _affine_dim(verts) != k:
            continue
        seen.add(key)
        facets = tuple(int(j) for j in np.flatnonzero(np.all(inc[common], axis=0)))
        nu = P.A[list(facets)].sum(axis=0)
        nu /= np.linalg.norm(nu)
        c = verts.mean(axis=0)
        if k > 0:
            _, _, vt = np.linalg.svd(verts - c)
            basis = vt[:k]
        else:
            basis = np.zeros((0, n))
        faces.append(PolytopeFace(verts, AffineSubspace(c, basis), facets, nu, float(nu @ verts[0])))
    return faces


def skeleton_domain(P: Polytope, radius: float) -> Tuple[Polytope, Polytope, float, np.ndarray]:
    """
    Ω = ∩_p {ν_p·x <= ν_p·p} over the vertices p of P, ν_p the normalised sum of the
    facet normals at p. Ω meets P only at its vertices. P and Ω are moved so that
    Ω ⊂ B_radius around the origin. Returns (P', Ω', scale, shift) with x' = scale x + shift.
    """
    V = P.vertices()
    inc = np.abs(V @ P.A.T - P.b) < 1e-9
    nus = []
    for i, p in enumerate(V):
        nu = P.A[inc[i]].sum(axis=0)
        nus.append(nu / np.linalg.norm(nu))
    nus = np.array(nus)
    omega = Polytope(nus, np.einsum("ij,ij->i", nus, V))
    c = V.mean(axis=0)
    far = np.max(np.linalg.norm(omega.vertices() - c, axis=1))
    scale = radius / far
    shift = -scale * c
    return P.transformed(scale, shift), omega.transformed(scale, shift), float(scale), shift


@dataclass(eq=False)
class PolytopeSubsolution:
    n: int
    k: int
    q: float
    block: AnalyticExample
    faces: List[PolytopeFace]
    M1: float
    M2: float = 1.0
    c_sub: Optional[float] = None
    family: str = field(default="polytope", init=False)

    def pieces(self, x: np.ndarray) -> np.ndarray:
        """Φ_i + M1 ℓ_i, shape (faces, ...)."""
        x = np.asarray(x, float)
        out = []
        for f in self.faces:
            rho = f.plane.distance(x)
            r = np.linalg.norm(f.plane.coordinates(x), axis=-1)
            if r.size and float(r.max()) > self.block.tau * (1 + 1e-9):
                raise OutsideValidityError(self.block.tau, float(r.max()))
            out.append(self.block.profile.value(rho, r) + self.M1 * f.ell(x))
        return np.array(out)

    def __call__(self, x: np.ndarray) -> np.ndarray:
        return self.M2 * np.maximum(self.pieces(x).max(axis=0), 0.0)

    def det(self, x: np.ndarray, margin: float = 0.0) -> np.ndarray:
        """det D²w where a single piece is active by `margin`; nan at kinks and axes."""
        x = np.asarray(x, float)
        pc = self.pieces(x)
        top = np.argmax(pc, axis=0)
        srt = np.sort(pc, axis=0)
        unique = (srt[-1] - srt[-2] > margin) if len(self.faces) > 1 else np.ones(top.shape, bool)
        out = np.full(top.shape, np.nan)
        out[srt[-1] <= 0] = 0.0
        for i, f in enumerate(self.faces):
            sel = (top == i) & unique & (srt[-1] > 0)
            if not sel.any():
                continue
            rho = f.plane.distance(x[sel])
            r = np.linalg.norm(f.plane.coordinates(x[sel]), axis=-1)
            ok = (rho > 0) & (r > 0)
            vals = np.full(rho.shape, np.nan)
            if ok.any():
                vals[ok] = symmetric_det(self.block.profile, rho[ok], r[ok])
            out[sel] = self.M2**self.n * vals
        return out

    def zero_set_outside(self, x: np.ndarray, tol: float = 1e-12) -> np.ndarray:
        """Points of x where w = 0 although some ℓ_i > tol; empty when {w=0} ⊂ ∩{ℓ_i <= 0}."""
        x = np.atleast_2d(np.asarray(x, float))
        ell = np.array([f.ell(x) for f in self.faces]).max(axis=0)
        return x[(self(x) <= 0) & (ell > tol)]

    def describe(self) -> dict:
        return {
            "family": "polytope",
            "n": self.n,
            "k": self.k,
            "q": self.q,
            "faces": len(self.faces),
            "M1": self.M1,
            "M2": self.M2,
            "c_sub": self.c_sub,
            "tau": self.block.tau,
        }


def polytope_subsolution(
    P: Polytope,
    domain: ConvexDomain,
    k: int,
    q: float,
    M1: float = 1.0,
    M2: Optional[float] = None,
    M1_cap: float = 1e4,
    count: int = 8000,
    seed: int = 0,
) -> PolytopeSubsolution:
    n = P.n
    block = family_a(n, k, q)
    faces = polytope_faces(P, k)
    if not faces:
        raise ConstructionError(f"polytope has no {k}-dimensional faces", k=k)
    lo, hi = domain.bbox()
    pts = quasi_random_box(lo, hi, count, seed)
    pts = pts[domain.contains(pts)]
    in_P = np.vstack([pts[P.contains(pts)], P.vertices()])

    sub = PolytopeSubsolution(n, k, q, block, faces, float(M1))
    while sub.pieces(in_P).max() > 1e-12:
        sub.M1 *= 2.0
        if sub.M1 > M1_cap:
            raise ConstructionError("increase M1", M1_cap=M1_cap)
    logger.info("polytope_subsolution: %d faces, M1=%g", len(faces), sub.M1)

    d = sub.det(pts, margin=1e-9)
    w = sub(pts)
    keep = np.isfinite(d) & (w > 0)
    if not keep.any():
        raise ConstructionError("subsolution vanishes on the whole sample")
    c_raw = float(np.min(d[keep] / np.power(w[keep], q)))
    if c_raw <= 0:
        raise ConstructionError("subsolution is not strictly convex on its support", c=c_raw)
    sub.M2 = float(M2) if M2 is not None else c_raw ** (-1.0 / (n - q))
    # det scales by M2^n, w^q by M2^q
    sub.c_sub = c_raw * sub.M2 ** (n - q)
    stray = sub.zero_set_outside(pts)
    if len(stray):
        raise ConstructionError("zero set of the subsolution leaves the face half-spaces",
                                points=len(stray), first=stray[0].tolist())
    return sub
