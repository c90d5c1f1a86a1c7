# -*- coding: utf-8 -*-
# geometry/subspace.py
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

__all__ = ["AffineSubspace", "dist_to_subspace"]


@dataclass(frozen=True, eq=False)
class AffineSubspace:
    """point + span(basis); basis rows are orthonormal (checked to 1e-12)."""

    point: np.ndarray
    basis: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.point, dtype=float).reshape(-1)
        B = np.asarray(self.basis, dtype=float).reshape(-1, p.size) if np.size(self.basis) else np.zeros((0, p.size))
        if B.shape[0] > p.size:
            raise ValueError("more basis vectors than ambient dimension")
        if B.shape[0] and np.max(np.abs(B @ B.T - np.eye(B.shape[0]))) > 1e-12:
            raise ValueError("basis is not orthonormal")
        object.__setattr__(self, "point", p)
        object.__setattr__(self, "basis", B)

    @classmethod
    def spanned_by(cls, point: Sequence[float], vectors: Sequence[Sequence[float]]) -> "AffineSubspace":
        V = np.atleast_2d(np.asarray(vectors, dtype=float))
        Q, R = np.linalg.qr(V.T)
        keep = np.abs(np.diag(R)) > 1e-12
        return cls(np.asarray(point, float), Q[:, keep].T)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def n(self) -> int:
        return self.point.size

    def coordinates(self, x: np.ndarray) -> np.ndarray:
        """In-plane coordinates of x relative to `point`, shape (..., dim)."""
        return (np.asarray(x, float) - self.point) @ self.basis.T

    def project(self, x: np.ndarray) -> np.ndarray:
        return self.point + self.coordinates(x) @ self.basis

    def distance(self, x: np.ndarray) -> np.ndarray:
        d = np.asarray(x, float) - self.point
        return np.linalg.norm(d - (d @ self.basis.T) @ self.basis, axis=-1)


def dist_to_subspace(x: np.ndarray, L: AffineSubspace) -> np.ndarray:
    return L.distance(x)
