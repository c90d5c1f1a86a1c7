# -*- coding: utf-8 -*-
# analytic/calibration.py
from __future__ import annotations

import logging
import math
from typing import Any, Callable, Dict, Optional, Tuple

import numpy as np
from scipy.stats import qmc

from analytic.families import AnalyticExample
from analytic.profiles import hessian_eigen_ok
from errors import ConstructionError

logger = logging.getLogger(__name__)

__all__ = [
    "quasi_random_box",
    "quasi_random_ball",
    "subsolution_residual",
    "calibrate_c",
    "choose_tau",
    "solve_data",
    "cylinder_sampler",
]

Sampler = Callable[[float], np.ndarray]


def quasi_random_box(lo, hi, count: int, seed: int) -> np.ndarray:
    lo, hi = np.asarray(lo, float), np.asarray(hi, float)
    sob = qmc.Sobol(d=lo.size, scramble=True, seed=seed)
    m = int(math.ceil(math.log2(max(count, 2))))
    pts = sob.random_base2(m)[:count]
    return qmc.scale(pts, lo, hi)


def quasi_random_ball(n: int, count: int, radius: float, seed: int) -> np.ndarray:
    # oversample the cube and keep the ball
    cube = quasi_random_box(-np.ones(n), np.ones(n), 4 * count * (2 ** max(n - 2, 0)), seed)
    pts = cube[np.linalg.norm(cube, axis=1) <= 1.0][:count]
    return radius * pts


def cylinder_sampler(n: int, count: int, seed: int) -> Sampler:
    def _sample(tau: float) -> np.ndarray:
        lo = np.r_[-np.ones(n - 1), -tau]
        hi = np.r_[np.ones(n - 1), tau]
        return quasi_random_box(lo, hi, count, seed)

    return _sample


def subsolution_residual(example: AnalyticExample, points: np.ndarray) -> Dict[str, Any]:
    """
    min over the sample of det D²w - c_sub · w^q · 1{w > 0}, with its argmin. Points on the symmetry
    axes (undefined determinant) are skipped; a calibrated example gives min >= 0 up to roundoff.
    """
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    if pts.size == 0:
        raise ValueError("subsolution_residual needs a nonempty sample")
    if example.c_sub is None:
        raise ConstructionError("example is not calibrated", family=example.family)
    w = example(pts)
    det = example.det(pts)
    keep = np.isfinite(det)
    if not keep.any():
        raise ConstructionError("every sample point lies on a symmetry axis", family=example.family)
    res = np.full(len(pts), np.inf)
    wk = w[keep]
    rhs = np.where(wk > 0, np.power(np.maximum(wk, 0.0), example.q), 0.0)
    res[keep] = det[keep] - example.c_sub * rhs
    i = int(np.argmin(res))
    return {"min": float(res[i]), "argmin": pts[i].tolist(), "index": i, "used": int(keep.sum()),
            "c_sub": float(example.c_sub)}


def _usable(example: AnalyticExample, points: np.ndarray):
    w = example(points)
    det = example.det(points)
    keep = np.isfinite(det) & (w > 0)
    return w[keep], det[keep], keep


def calibrate_c(example: AnalyticExample, points: np.ndarray) -> float:
    """inf over the sample of det D²w / w^q."""
    w, det, keep = _usable(example, points)
    if not keep.any():
        raise ConstructionError("calibration sample has no point with w > 0 off the symmetry axes")
    return float(np.min(det / np.power(w, example.q)))


def _psd_ok(example: AnalyticExample, points: np.ndarray) -> bool:
    z = example.zoom * np.asarray(points, float)
    rho, r = example.profile.split(z)
    off = (rho > 0) & (r > 0)
    return bool(np.all(hessian_eigen_ok(example.profile, rho[off], r[off], tol=1e-12)))


def choose_tau(
    example: AnalyticExample,
    sampler: Optional[Sampler] = None,
    count: int = 8000,
    seed: int = 0,
    max_power: int = 12,
) -> Tuple[AnalyticExample, float]:
    """
    Largest tau in {2^-j} for which the example is convex with det D²w >= c w^q, c > 0,
    on the sample. Returns the example carrying tau and c, and tau.
    """
    free = example.with_(tau=math.inf)
    if sampler is None:
        def sampler(t: float) -> np.ndarray:
            return quasi_random_ball(example.n, count, t, seed)

    for j in range(1, max_power + 1):
        tau = 2.0 ** (-j)
        pts = sampler(tau)
        if not _psd_ok(free, pts):
            continue
        try:
            c = calibrate_c(free, pts)
        except ConstructionError:
            continue
        if c > 0 and math.isfinite(c):
            logger.info("choose_tau %s: tau=2^-%d c=%.6g", example.family, j, c)
            return example.with_(tau=tau, c_sub=c), tau
    raise ConstructionError(f"no tau in 2^-1..2^-{max_power} gives a convex subsolution", family=example.family)


def solve_data(example: AnalyticExample) -> AnalyticExample:
    """c^{1/(q-n)} w, which satisfies det D²W >= W^q when det D²w >= c w^q; its c_sub is 1."""
    if example.c_sub is None or example.c_sub <= 0:
        raise ConstructionError("example is not calibrated", family=example.family)
    factor = example.c_sub ** (1.0 / (example.q - example.n))
    return example.with_(amplitude=example.amplitude * factor, c_sub=1.0)
