# -*- coding: utf-8 -*-
# analytic/families.py
"""
Closed-form convex (sub)solutions of det D²w = w^q.

  family-a      w = ρ + ρ^β f(r)                     zero set R^k, linear growth
  family-b      w = ρ^s + ρ^γ f(r)                   zero set R^k, growth ρ^s, 1 < s <= 2(n-k)/(n-q)
  cylinder      w = d + d^s f(r), d = (ρ - 1/2)_+     zero set a solid cylinder, s = (q+2)/2
  radial-power  w = c_α |x|^α, α = 2n/(n-q)           zero set {0}, an exact solution
  quadratic     w = |x|²/2                            det = 1, the q = 0 solution with g = 1

f(r) = 1 + r²/2. Examples are registered in FAMILY_MAP; `make_example(name, **params)`
dispatches on the family name the same way configs refer to it.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field, replace
from typing import Any, Callable, Dict, List, NamedTuple, Optional

import numpy as np

from analytic.profiles import (
    CylinderProfile,
    FamilyAProfile,
    FamilyBProfile,
    ProductProfile,
    QuadraticProfile,
    RadialPowerProfile,
    SymmetricProfile,
    fd_det,
    lifted_derivatives,
    symmetric_det,
)
from errors import InadmissibleParametersError, OutsideValidityError

logger = logging.getLogger(__name__)

__all__ = [
    "AnalyticExample",
    "ExampleEval",
    "FAMILY_MAP",
    "alpha_exponent",
    "family_exponents",
    "make_example",
    "eval_example",
    "closed_form_det",
    "gamma_discrepancy",
    "family_a",
    "family_b",
    "cylinder",
    "radial_power",
    "quadratic",
]


def alpha_exponent(n: int, q: float) -> float:
    return 2.0 * n / (n - q)


def _pow2_below(bound: float) -> float:
    """Largest 2^-j strictly below `bound` (j >= 1)."""
    if not math.isfinite(bound):
        return math.inf
    j = 1
    while 2.0 ** (-j) >= bound:
        j += 1
    return 2.0 ** (-j)


@dataclass(frozen=True, eq=False)
class AnalyticExample:
    """A profile lifted to R^n, times `amplitude`, evaluated at `zoom * x`."""

    family: str
    n: int
    k: int
    q: float
    s: float
    profile: SymmetricProfile = field(repr=False)
    exponents: Dict[str, Any] = field(default_factory=dict)
    tau: float = math.inf
    amplitude: float = 1.0
    zoom: float = 1.0
    c_sub: Optional[float] = None

    @property
    def alpha(self) -> float:
        return alpha_exponent(self.n, self.q)

    def with_(self, **changes) -> "AnalyticExample":
        return replace(self, **changes)

    def _zoomed(self, x: np.ndarray) -> np.ndarray:
        z = self.zoom * np.asarray(x, dtype=float)
        if math.isfinite(self.tau):
            _, r = self.profile.split(z)
            if r.size and float(r.max()) > self.tau * (1 + 1e-9):
                raise OutsideValidityError(self.tau, float(r.max()))
        return z

    def __call__(self, x: np.ndarray) -> np.ndarray:
        return self.amplitude * self.profile(self._zoomed(x))

    def det(self, x: np.ndarray) -> np.ndarray:
        """Hessian determinant; nan on the symmetry axes."""
        z = self._zoomed(x)
        rho, r = self.profile.split(z)
        out = np.full(rho.shape, np.nan)
        ok = (rho > 0) & (r > 0)
        if ok.any():
            out[ok] = symmetric_det(self.profile, rho[ok], r[ok])
        return self.amplitude**self.n * self.zoom ** (2 * self.n) * out

    def describe(self) -> dict:
        return {
            "family": self.family,
            "n": self.n,
            "k": self.k,
            "q": self.q,
            "s": self.s,
            "tau": self.tau if math.isfinite(self.tau) else None,
            "amplitude": self.amplitude,
            "zoom": self.zoom,
            "c_sub": self.c_sub,
            **{k: v for k, v in self.exponents.items() if isinstance(v, (int, float, bool, str))},
        }


class ExampleEval(NamedTuple):
    value: np.ndarray        # (m,)
    gradient: np.ndarray     # (m, n)
    hessian: np.ndarray      # (m, n, n), symmetric
    det: np.ndarray          # (m,), nan on the symmetry axes


def eval_example(example: AnalyticExample, x: np.ndarray) -> ExampleEval:
    """Value, gradient, Hessian and determinant at x; raises outside {r <= tau}."""
    x = np.atleast_2d(np.asarray(x, dtype=float))
    z = example._zoomed(x)
    grad, hess = lifted_derivatives(example.profile, z)
    A, Z = example.amplitude, example.zoom
    return ExampleEval(example(x), A * Z * grad, A * Z * Z * hess, example.det(x))


# ---------- exponents & admissibility ----------

def family_exponents(n: int, k: int, q: float, s: float = 1.0, family: Optional[str] = None) -> Dict[str, Any]:
    """Exponents and admissibility of the dimension examples (family-a when s = 1, else family-b)."""
    n, k, q, s = int(n), int(k), float(q), float(s)
    fam = family or ("family-a" if s == 1.0 else "family-b")
    reasons: List[str] = []
    if not (0 <= q < n):
        reasons.append("requires 0 <= q < n")
    if fam in ("family-a", "family-b") and not (1 <= k <= n - 1):
        reasons.append("requires 1 <= k <= n-1")
    out: Dict[str, Any] = {"family": fam, "n": n, "k": k, "q": q, "s": s}
    if q < n:
        out["alpha"] = alpha_exponent(n, q)
        out["dim_bound"] = math.ceil((n + q) / 2) - 1
        out["nsc_excluded_above"] = 2.0 * (n - 1) / (n - q)
        out["nsc_excluded"] = bool(s > out["nsc_excluded_above"])
    if fam == "family-a":
        beta = (n - k + 1 + q) / (k + 1)
        out["beta"] = beta
        if n + q <= 2:
            reasons.append("requires n+q>2")
        if not (k < (n + q) / 2):
            reasons.append("requires k < (n+q)/2")
        if beta > 1:
            out["r_max"] = math.sqrt(2 * (beta - 1) / (beta + 1))
    elif fam == "family-b":
        if q < n:
            s_max = 2.0 * (n - k) / (n - q)
            out["s_max"] = s_max
            if not (1 < s <= s_max + 1e-12):
                reasons.append(f"requires 1 < s <= 2(n-k)/(n-q) = {s_max:g}")
            out["face_dim_bound"] = n - (n - q) * s / 2
        if k >= 1:
            out["gamma"] = (2 * (n - k) + (k - n + q) * s) / k
            out["gamma_printed"] = (n - k + q + (k - n + q) * s) / k
    elif fam == "cylinder":
        out["k"] = 1
        out["s"] = (q + 2) / 2
        if q <= 0:
            reasons.append("requires q > 0")
        else:
            s_c = out["s"]
            out["r_max"] = math.sqrt(2 * (s_c - 1) / (s_c + 1))
    elif fam == "radial-power":
        if q < n and n >= 2:
            a = alpha_exponent(n, q)
            out["c_alpha"] = (a**n * (a - 1)) ** (-1.0 / (n - q))
    out["admissible"] = not reasons
    out["reasons"] = reasons
    return out


def _require(info: Dict[str, Any]) -> None:
    if not info["admissible"]:
        raise InadmissibleParametersError("; ".join(info["reasons"]), **{k: info[k] for k in ("n", "k", "q", "s")})


# ---------- constructors (FAMILY_MAP) ----------

def family_a(n: int, k: int, q: float, **_) -> AnalyticExample:
    info = family_exponents(n, k, q, 1.0, "family-a")
    _require(info)
    prof = FamilyAProfile(n, k, info["beta"])
    return AnalyticExample("family-a", n, k, q, 1.0, prof, info, tau=_pow2_below(info["r_max"]))


def family_b(n: int, k: int, q: float, s: float, gamma: str = "balanced", **_) -> AnalyticExample:
    info = family_exponents(n, k, q, s, "family-b")
    _require(info)
    g = info["gamma_printed"] if gamma == "printed" else info["gamma"]
    prof = FamilyBProfile(n, k, s, g)
    return AnalyticExample("family-b", n, k, q, float(s), prof, {**info, "gamma_used": g})


def cylinder(n: int, q: float, **_) -> AnalyticExample:
    info = family_exponents(n, 1, q, 1.0, "cylinder")
    _require(info)
    prof = CylinderProfile(n, info["s"])
    return AnalyticExample("cylinder", n, 1, q, info["s"], prof, info, tau=_pow2_below(info["r_max"]))


def radial_power(n: int, q: float, **_) -> AnalyticExample:
    info = family_exponents(n, 1, q, 1.0, "radial-power")
    _require(info)
    prof = RadialPowerProfile(n, info["alpha"], info["c_alpha"])
    return AnalyticExample("radial-power", n, 1, q, info["alpha"], prof, info)


def quadratic(n: int, q: float = 0.0, **_) -> AnalyticExample:
    info = {"family": "quadratic", "n": n, "k": 1, "q": q, "admissible": True, "reasons": []}
    return AnalyticExample("quadratic", n, 1, q, 2.0, QuadraticProfile(n, 1), info)


def product(n: int, k: int = 1, **_) -> AnalyticExample:
    info = {"family": "product", "n": n, "k": k, "q": 0.0, "admissible": True, "reasons": []}
    return AnalyticExample("product", n, k, 0.0, 2.0, ProductProfile(n, k), info)


FAMILY_MAP: Dict[str, Callable[..., AnalyticExample]] = {
    "family-a": family_a,
    "family-b": family_b,
    "cylinder": cylinder,
    "radial-power": radial_power,
    "quadratic": quadratic,
    "product": product,
}


def make_example(family: str, **params) -> AnalyticExample:
    fn = FAMILY_MAP.get(family)
    if fn is None:
        raise InadmissibleParametersError(f"unknown family '{family}'", family=family)
    return fn(**params)


# ---------- displayed determinant formulas ----------

def closed_form_det(example: AnalyticExample, rho, r, gamma: Optional[float] = None) -> np.ndarray:
    """
    Determinant written in closed form with the ρ-power collapsed to ρ^q (family-a)
    or ρ^{qs} (family-b). Exact only when the exponents balance.
    """
    rho, r = np.asarray(rho, float), np.asarray(r, float)
    n, k, q = example.n, example.k, example.q
    f = 1.0 + 0.5 * r * r
    if example.family == "family-a":
        b = example.profile.beta
        return rho**q * (1 + b * rho ** (b - 1) * f) ** (n - k - 1) * (b * (b - 1) * f - b * b * r * r)
    if example.family == "family-b":
        s = example.s
        g = example.profile.gamma if gamma is None else float(gamma)
        t = rho ** (g - s)
        return rho ** (q * s) * (s + g * t * f) ** (n - k - 1) * (s * (s - 1) + g * (g - 1) * t * f - g * g * t * r * r)
    if example.family == "cylinder":
        s = example.s
        d = np.maximum(rho - 0.5, 0.0)
        return ((1 + s * d ** (s - 1) * f) / rho) ** (n - 2) * d ** (2 * s - 2) * (s * (s - 1) * f - s * s * r * r)
    raise InadmissibleParametersError(f"no closed form for '{example.family}'", family=example.family)


def _sample_points(n: int, k: int, count: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    rho = rng.uniform(0.1, 0.4, count)
    r = rng.uniform(0.05, 0.3, count)
    y = rng.normal(size=(count, n - k))
    z = rng.normal(size=(count, k))
    y *= (rho / np.linalg.norm(y, axis=1))[:, None]
    z *= (r / np.linalg.norm(z, axis=1))[:, None]
    return np.hstack([y, z])


def gamma_discrepancy(n: int, k: int, q: float, s: float, count: int = 200, seed: int = 0) -> Dict[str, Any]:
    """
    Compare the closed-form family-b determinant against finite differences for the
    power-balanced γ and for the printed γ. They agree iff q = n - k.
    """
    info = family_exponents(n, k, q, s, "family-b")
    _require(info)
    x = _sample_points(n, k, count, seed)
    out: Dict[str, Any] = {"n": n, "k": k, "q": q, "s": s}
    for tag in ("balanced", "printed"):
        ex = family_b(n, k, q, s, gamma=tag)
        rho, r = ex.profile.split(x)
        exact = fd_det(ex.profile, x, 1e-4)
        closed = closed_form_det(ex, rho, r)
        err = float(np.max(np.abs(closed - exact) / np.maximum(np.abs(exact), 1e-12)))
        out[f"gamma_{tag}"] = ex.profile.gamma
        out[f"rel_err_{tag}"] = err
    out["gammas_agree"] = bool(abs(out["gamma_balanced"] - out["gamma_printed"]) < 1e-12)
    out["printed_consistent"] = bool(out["rel_err_printed"] <= 1e-4)
    if not out["gammas_agree"]:
        logger.warning(
            "family-b gamma mismatch n=%d k=%d q=%g s=%g: balanced %.6g vs printed %.6g",
            n, k, q, s, out["gamma_balanced"], out["gamma_printed"],
        )
    return out
