# -*- coding: utf-8 -*-
# analytic/profiles.py
"""
Profiles u(ρ, r) of functions w(y, z) = u(|y|, |z|) on R^{n-k} x R^k.

For such a w the Hessian determinant is
    (u_ρ/ρ)^{n-k-1} (u_r/r)^{k-1} (u_ρρ u_rr - u_ρr²)
away from the two symmetry axes {ρ = 0} and {r = 0}.
"""
from __future__ import annotations

from typing import Callable, Tuple

import numpy as np

from errors import OnSymmetryAxisError

__all__ = [
    "SymmetricProfile",
    "QuadraticProfile",
    "ProductProfile",
    "FamilyAProfile",
    "FamilyBProfile",
    "CylinderProfile",
    "RadialPowerProfile",
    "symmetric_det",
    "hessian_eigen_ok",
    "fd_hessian",
    "fd_det",
    "lifted_derivatives",
]

Derivs = Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray, np.ndarray]


class SymmetricProfile:
    name = "profile"

    def __init__(self, n: int, k: int):
        if not (1 <= k <= n - 1):
            raise ValueError(f"need 1 <= k <= n-1, got n={n}, k={k}")
        self.n, self.k = int(n), int(k)

    def value(self, rho, r) -> np.ndarray:
        raise NotImplementedError

    def derivatives(self, rho, r) -> Derivs:
        """(u_ρ, u_r, u_ρρ, u_rr, u_ρr)."""
        raise NotImplementedError

    def split(self, x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        x = np.asarray(x, dtype=float)
        m = self.n - self.k
        return np.linalg.norm(x[..., :m], axis=-1), np.linalg.norm(x[..., m:], axis=-1)

    def __call__(self, x: np.ndarray) -> np.ndarray:
        return self.value(*self.split(x))


class QuadraticProfile(SymmetricProfile):
    name = "quadratic"

    def value(self, rho, r):
        return 0.5 * (np.square(rho) + np.square(r))

    def derivatives(self, rho, r):
        rho, r = np.asarray(rho, float), np.asarray(r, float)
        one = np.ones(np.broadcast(rho, r).shape)
        return rho * one, r * one, one, one, 0.0 * one


class ProductProfile(SymmetricProfile):
    """u = ρ r; not convex, used to exercise the determinant formula."""

    name = "product"

    def value(self, rho, r):
        return np.asarray(rho, float) * np.asarray(r, float)

    def derivatives(self, rho, r):
        rho, r = np.broadcast_arrays(np.asarray(rho, float), np.asarray(r, float))
        z = np.zeros_like(rho)
        return r, rho, z, z, np.ones_like(rho)


def _f(r):
    return 1.0 + 0.5 * np.square(r)


class FamilyAProfile(SymmetricProfile):
    """u = ρ + ρ^β f(r), β = (n-k+1+q)/(k+1)."""

    name = "family-a"

    def __init__(self, n: int, k: int, beta: float):
        super().__init__(n, k)
        self.beta = float(beta)

    def value(self, rho, r):
        return rho + np.power(rho, self.beta) * _f(r)

    def derivatives(self, rho, r):
        b = self.beta
        rho, r = np.broadcast_arrays(np.asarray(rho, float), np.asarray(r, float))
        f = _f(r)
        with np.errstate(divide="ignore", invalid="ignore"):
            u_rho = 1.0 + b * np.power(rho, b - 1) * f
            u_r = np.power(rho, b) * r
            u_rhorho = b * (b - 1) * np.power(rho, b - 2) * f
            u_rr = np.power(rho, b)
            u_rhor = b * np.power(rho, b - 1) * r
        return u_rho, u_r, u_rhorho, u_rr, u_rhor


class FamilyBProfile(SymmetricProfile):
    """u = ρ^s + ρ^γ f(r)."""

    name = "family-b"

    def __init__(self, n: int, k: int, s: float, gamma: float):
        super().__init__(n, k)
        self.s, self.gamma = float(s), float(gamma)

    def value(self, rho, r):
        return np.power(rho, self.s) + np.power(rho, self.gamma) * _f(r)

    def derivatives(self, rho, r):
        s, g = self.s, self.gamma
        rho, r = np.broadcast_arrays(np.asarray(rho, float), np.asarray(r, float))
        f = _f(r)
        with np.errstate(divide="ignore", invalid="ignore"):
            u_rho = s * np.power(rho, s - 1) + g * np.power(rho, g - 1) * f
            u_r = np.power(rho, g) * r
            u_rhorho = s * (s - 1) * np.power(rho, s - 2) + g * (g - 1) * np.power(rho, g - 2) * f
            u_rr = np.power(rho, g)
            u_rhor = g * np.power(rho, g - 1) * r
        return u_rho, u_r, u_rhorho, u_rr, u_rhor


class CylinderProfile(SymmetricProfile):
    """u = d + d^s f(r), d = max(ρ - 1/2, 0), k = 1; vanishes on the solid cylinder ρ <= 1/2."""

    name = "cylinder"

    def __init__(self, n: int, s: float, radius: float = 0.5):
        super().__init__(n, 1)
        self.s, self.radius = float(s), float(radius)

    def _d(self, rho):
        return np.maximum(np.asarray(rho, float) - self.radius, 0.0)

    def value(self, rho, r):
        d = self._d(rho)
        return d + np.power(d, self.s) * _f(r)

    def derivatives(self, rho, r):
        s = self.s
        rho, r = np.broadcast_arrays(np.asarray(rho, float), np.asarray(r, float))
        d = self._d(rho)
        f = _f(r)
        pos = d > 0
        with np.errstate(divide="ignore", invalid="ignore"):
            u_rho = np.where(pos, 1.0 + s * np.power(d, s - 1) * f, 0.0)
            u_r = np.power(d, s) * r
            u_rhorho = np.where(pos, s * (s - 1) * np.power(d, s - 2) * f, 0.0)
            u_rr = np.power(d, s)
            u_rhor = np.where(pos, s * np.power(d, s - 1) * r, 0.0)
        return u_rho, u_r, u_rhorho, u_rr, u_rhor


class RadialPowerProfile(SymmetricProfile):
    """u = c |x|^α written in (ρ, r) with k = 1."""

    name = "radial-power"

    def __init__(self, n: int, alpha: float, c: float):
        super().__init__(n, 1)
        self.alpha, self.c = float(alpha), float(c)

    def value(self, rho, r):
        R2 = np.square(rho) + np.square(r)
        return self.c * np.power(R2, self.alpha / 2)

    def derivatives(self, rho, r):
        a, c = self.alpha, self.c
        rho, r = np.broadcast_arrays(np.asarray(rho, float), np.asarray(r, float))
        R2 = np.square(rho) + np.square(r)
        with np.errstate(divide="ignore", invalid="ignore"):
            p2 = np.power(R2, (a - 2) / 2)
            p4 = np.power(R2, (a - 4) / 2)
        u_rho = c * a * p2 * rho
        u_r = c * a * p2 * r
        u_rhorho = c * a * (p2 + (a - 2) * p4 * rho * rho)
        u_rr = c * a * (p2 + (a - 2) * p4 * r * r)
        u_rhor = c * a * (a - 2) * p4 * rho * r
        return u_rho, u_r, u_rhorho, u_rr, u_rhor


def symmetric_det(profile: SymmetricProfile, rho, r) -> np.ndarray:
    rho = np.asarray(rho, dtype=float)
    r = np.asarray(r, dtype=float)
    on_axis = (rho == 0) | (r == 0)
    if np.any(on_axis):
        raise OnSymmetryAxisError(int(np.count_nonzero(on_axis)))
    u_rho, u_r, u_rhorho, u_rr, u_rhor = profile.derivatives(rho, r)
    n, k = profile.n, profile.k
    block = u_rhorho * u_rr - np.square(u_rhor)
    return np.power(u_rho / rho, n - k - 1) * np.power(u_r / r, k - 1) * block


def hessian_eigen_ok(profile: SymmetricProfile, rho, r, tol: float = 0.0) -> np.ndarray:
    """Pointwise positive semidefiniteness of D²w from the symmetric eigenstructure."""
    u_rho, u_r, u_rhorho, u_rr, u_rhor = profile.derivatives(rho, r)
    n, k = profile.n, profile.k
    ok = (u_rhorho >= -tol) & (u_rr >= -tol) & (u_rhorho * u_rr - np.square(u_rhor) >= -tol)
    with np.errstate(divide="ignore", invalid="ignore"):
        if n - k - 1 > 0:
            ok &= u_rho / rho >= -tol
        if k - 1 > 0:
            ok &= u_r / r >= -tol
    return ok


def fd_hessian(func: Callable[[np.ndarray], np.ndarray], x: np.ndarray, step: float) -> np.ndarray:
    """Dense centred finite-difference Hessian of a vectorised scalar function at points x (m, n)."""
    x = np.atleast_2d(np.asarray(x, dtype=float))
    m, n = x.shape
    H = np.empty((m, n, n))
    f0 = func(x)
    E = np.eye(n) * step
    for i in range(n):
        fp, fm = func(x + E[i]), func(x - E[i])
        H[:, i, i] = (fp - 2 * f0 + fm) / step**2
        for j in range(i + 1, n):
            fpp = func(x + E[i] + E[j])
            fpm = func(x + E[i] - E[j])
            fmp = func(x - E[i] + E[j])
            fmm = func(x - E[i] - E[j])
            H[:, i, j] = H[:, j, i] = (fpp - fpm - fmp + fmm) / (4 * step**2)
    return H


def fd_det(func: Callable[[np.ndarray], np.ndarray], x: np.ndarray, step: float) -> np.ndarray:
    return np.linalg.det(fd_hessian(func, x, step))


def _unit_rows(v: np.ndarray, norm: np.ndarray) -> np.ndarray:
    """Rows v/|v|; e1 where the row vanishes (a representative direction on the axis)."""
    out = np.zeros_like(v)
    out[:, 0] = 1.0
    nz = norm > 0
    out[nz] = v[nz] / norm[nz, None]
    return out


def lifted_derivatives(profile: SymmetricProfile, x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    Gradient (m, n) and Hessian (m, n, n) of u(ρ, r) lifted to R^n, with x = (y, z), ρ = |y|, r = |z|:

        D²u = u_ρρ ŷŷᵀ + (u_ρ/ρ)(I - ŷŷᵀ)  ⊕  u_rr ẑẑᵀ + (u_r/r)(I - ẑẑᵀ),   off-diagonal u_ρr ŷẑᵀ.

    On an axis the tangential coefficient takes its radial limit (u_ρρ resp. u_rr).
    """
    x = np.atleast_2d(np.asarray(x, dtype=float))
    n, k = profile.n, profile.k
    m = n - k
    rho, r = profile.split(x)
    u_rho, u_r, u_rhorho, u_rr, u_rhor = profile.derivatives(rho, r)
    yhat = _unit_rows(x[:, :m], rho)
    zhat = _unit_rows(x[:, m:], r)
    with np.errstate(divide="ignore", invalid="ignore"):
        t_rho = np.where(rho > 0, u_rho / np.where(rho > 0, rho, 1.0), u_rhorho)
        t_r = np.where(r > 0, u_r / np.where(r > 0, r, 1.0), u_rr)

    grad = np.concatenate([u_rho[:, None] * yhat, u_r[:, None] * zhat], axis=1)
    Pyy = yhat[:, :, None] * yhat[:, None, :]
    Pzz = zhat[:, :, None] * zhat[:, None, :]
    H = np.zeros((len(x), n, n))
    H[:, :m, :m] = u_rhorho[:, None, None] * Pyy + t_rho[:, None, None] * (np.eye(m) - Pyy)
    H[:, m:, m:] = u_rr[:, None, None] * Pzz + t_r[:, None, None] * (np.eye(k) - Pzz)
    H[:, :m, m:] = u_rhor[:, None, None] * yhat[:, :, None] * zhat[:, None, :]
    H[:, m:, :m] = np.transpose(H[:, :m, m:], (0, 2, 1))
    return grad, H
