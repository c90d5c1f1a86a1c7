# -*- coding: utf-8 -*-
# solver/stencils.py
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple

import numpy as np

__all__ = ["StencilSet", "build_stencil"]


@dataclass(frozen=True, eq=False)
class StencilSet:
    """
    Primitive lattice directions with sup-norm <= width (one per ± pair) and the
    orthogonal frames (n mutually orthogonal directions) they form. Frame 0 is the
    coordinate frame.
    """

    n: int
    width: int
    directions: np.ndarray           # (D, n) int
    frames: Tuple[Tuple[int, ...], ...]
    narrow: Tuple[bool, ...]         # frame uses only sup-norm-1 directions

    @property
    def size(self) -> int:
        return len(self.directions)

    def describe(self) -> dict:
        return {"n": self.n, "width": self.width, "directions": int(self.size), "frames": len(self.frames)}


def _canonical(v: Tuple[int, ...]) -> bool:
    for c in v:
        if c != 0:
            return c > 0
    return False


@lru_cache(maxsize=16)
def build_stencil(n: int, width: int) -> StencilSet:
    if n < 2 or width < 1:
        raise ValueError(f"need n >= 2 and width >= 1, got n={n}, width={width}")
    dirs = []
    for v in itertools.product(range(-width, width + 1), repeat=n):
        if not _canonical(v):
            continue
        if math.gcd(*[abs(c) for c in v]) != 1:
            continue
        dirs.append(v)
    # coordinate directions first, then by length
    dirs.sort(key=lambda v: (max(abs(c) for c in v), sum(c * c for c in v), tuple(-c for c in v)))
    D = np.array(dirs, dtype=int)
    G = D @ D.T
    frames = []
    for combo in itertools.combinations(range(len(D)), n):
        if all(G[i, j] == 0 for i, j in itertools.combinations(combo, 2)):
            frames.append(combo)
    frames.sort(key=lambda f: (int(np.abs(D[list(f)]).max()), f))
    narrow = tuple(bool(np.abs(D[list(f)]).max() == 1) for f in frames)
    return StencilSet(n, width, D, tuple(frames), narrow)
