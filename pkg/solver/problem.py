# -*- coding: utf-8 -*-
# solver/problem.py
from __future__ import annotations

import logging
from dataclasses import asdict, dataclass, field, replace
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from errors import ConfigError
from geometry.domains import ConvexDomain
from settings import SolverDefaults, defaults
from solver.boundary import BoundaryData, as_boundary_data

logger = logging.getLogger(__name__)

__all__ = ["ProblemSpec", "SolveReport", "coincidence_threshold"]

Source = Union[float, Callable[[np.ndarray], np.ndarray]]


@dataclass
class ProblemSpec:
    """det D²v = g v^q χ_{v>0} in Ω, v = φ on ∂Ω."""

    n: int
    q: float
    domain: ConvexDomain
    dirichlet: BoundaryData
    res: Union[int, Sequence[int]]
    g: Source = 1.0
    g_bounds: Optional[Tuple[float, float]] = None
    width: Optional[int] = None
    settings: SolverDefaults = field(default_factory=lambda: defaults().solver.model_copy())
    label: str = ""

    def __post_init__(self):
        self.dirichlet = as_boundary_data(self.dirichlet)
        self.validate()

    def validate(self) -> None:
        if self.n < 2:
            raise ConfigError("dimension must be at least 2", n=self.n)
        if not (0.0 <= float(self.q) < self.n):
            raise ConfigError(f"exponent q must satisfy 0 <= q < n, got q={self.q}", q=self.q, n=self.n)
        if self.domain.n != self.n:
            raise ConfigError("domain dimension does not match n", n=self.n, domain_n=self.domain.n)
        if self.g_bounds is not None:
            lam, Lam = self.g_bounds
            if not (0 < lam <= Lam):
                raise ConfigError("need 0 < lambda <= Lambda", g_bounds=list(self.g_bounds))
        if not callable(self.g) and not float(self.g) > 0:
            raise ConfigError("g must be positive", g=self.g)

    @property
    def stencil_width(self) -> int:
        return int(self.width or self.settings.width_for(self.n))

    def g_at(self, points: np.ndarray) -> np.ndarray:
        if callable(self.g):
            vals = np.asarray(self.g(points), dtype=float)
        else:
            vals = np.full(len(points), float(self.g))
        lam, Lam = self.g_bounds or (float(np.min(vals, initial=np.inf)), float(np.max(vals, initial=-np.inf)))
        if vals.size and (np.any(vals < lam - 1e-12) or np.any(vals > Lam + 1e-12) or np.any(vals <= 0)):
            raise ConfigError("g leaves its bounds [lambda, Lambda]", g_bounds=[lam, Lam])
        return vals

    def with_(self, **changes) -> "ProblemSpec":
        return replace(self, **changes)

    def coarsened(self) -> Optional["ProblemSpec"]:
        res = np.atleast_1d(self.res) if not np.isscalar(self.res) else np.full(self.n, int(self.res))
        if np.any(res % 2) or np.any(res // 2 < self.settings.coarse_min_res):
            return None
        return replace(self, res=tuple(int(r) // 2 for r in res))

    def describe(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "q": self.q,
            "res": list(np.atleast_1d(self.res).tolist()),
            "domain": self.domain.describe(),
            "dirichlet": str(getattr(self.dirichlet, "expr", type(self.dirichlet).__name__)),
            "g": self.g if not callable(self.g) else "callable",
            "width": self.stencil_width,
            "label": self.label,
        }


def coincidence_threshold(hmax: float, n: int, q: float, last_change: float = 0.0) -> float:
    """max((max h / c)^α, 2 · last outer change), α = 2n/(n-q)."""
    alpha = 2.0 * n / (n - float(q or 0.0))
    base = (hmax / defaults().analysis.eps_k_cells) ** alpha
    lc = float(last_change) if np.isfinite(last_change) else 0.0
    return max(base, 2.0 * lc)


@dataclass
class SolveReport:
    outer_iterations: int = 0
    inner_sweeps: int = 0
    residual_inf: float = float("nan")
    converged: bool = False
    last_change: float = float("nan")
    min_value: float = float("nan")
    K_cells: int = 0
    residual_history: List[float] = field(default_factory=list)
    residual_nonincreasing: bool = True
    comparison_flags: Dict[str, bool] = field(default_factory=dict)
    eps_pos: float = 0.0
    initial: str = ""
    width: int = 0
    history: List[float] = field(default_factory=list)
    flags: List[str] = field(default_factory=list)
    wall_time: float = 0.0

    def as_dict(self, timing: bool = False) -> Dict[str, Any]:
        d = asdict(self)
        if not timing:
            d.pop("wall_time", None)
        return d
