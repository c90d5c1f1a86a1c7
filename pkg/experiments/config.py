# -*- coding: utf-8 -*-
# experiments/config.py
"""
Experiment and solve configs: YAML mappings validated by pydantic models that
reject unknown keys. Sections override the global defaults key by key.
"""
from __future__ import annotations

import math
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Union

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from errors import ConfigError
from settings import SolverDefaults, defaults

__all__ = [
    "ExperimentConfig",
    "SolveConfig",
    "SolverSection",
    "load_experiment_config",
    "load_solve_config",
    "solver_settings",
    "EXPERIMENT_NAMES",
]

EXPERIMENT_NAMES = ("dim-optimality", "cylinder", "polytope", "stability", "smp-failure", "solver-validation")


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


class SolverSection(_Strict):
    tol_outer: Optional[float] = None
    tol_inner: Optional[float] = None
    max_outer: Optional[int] = None
    max_inner: Optional[int] = None
    inner_per_outer: Optional[int] = None
    damping: Optional[float] = Field(None, gt=0.0, le=1.0)
    width_2d: Optional[int] = None
    width_3d: Optional[int] = None
    initial: Optional[Literal["zero", "envelope", "upper", "coarse"]] = None
    coarse_min_res: Optional[int] = None


class AnalysisSection(_Strict):
    eps_K: Optional[float] = None
    growth_tol: Optional[float] = None
    growth_window: Optional[List[float]] = None
    section_tol: float = 0.15


class PolytopeSection(_Strict):
    shape: str = "square"
    half_width: float = 0.5
    vertices: Optional[List[List[float]]] = None
    M1: float = 1.0
    M1_cap: float = 1.0e4
    M2: Optional[float] = None


class StabilitySection(_Strict):
    base: Literal["polytope", "radial", "segment"] = "polytope"


class SmpSection(_Strict):
    base: Literal["family-a", "cylinder"] = "family-a"


class ValidationSection(_Strict):
    res_2d: Optional[List[int]] = None
    res_3d: Optional[List[int]] = None
    comparison_pairs: Optional[int] = None
    comparison_res: Optional[int] = None
    error_constant: float = 5.0
    ratio_max: float = 0.75


class ExperimentConfig(_Strict):
    name: Literal["dim-optimality", "cylinder", "polytope", "stability", "smp-failure", "solver-validation"]
    n: int = 2
    q: float = 0.0
    k: Optional[int] = None
    s: float = 1.0
    res: int = 64
    t_list: List[float] = [0.1, 0.05, 0.025, 0.0125]
    delta_list: Optional[List[float]] = None
    seed: int = 0
    out_dir: str = "out"
    solver: SolverSection = SolverSection()
    analysis: AnalysisSection = AnalysisSection()
    polytope: PolytopeSection = PolytopeSection()
    stability: StabilitySection = StabilitySection()
    smp: SmpSection = SmpSection()
    validation: ValidationSection = ValidationSection()

    @model_validator(mode="after")
    def _check(self) -> "ExperimentConfig":
        if self.n < 2:
            raise ValueError("n must be at least 2")
        if not (0.0 <= self.q < self.n):
            raise ValueError("q must satisfy 0 <= q < n")
        if self.res < 3:
            raise ValueError("res must be at least 3")
        if any(t <= 0 for t in self.t_list):
            raise ValueError("t_list entries must be positive")
        return self

    @property
    def k_default(self) -> int:
        return self.k if self.k is not None else max(1, math.ceil((self.n + self.q) / 2) - 1)


class ProblemSection(_Strict):
    n: int = 2
    q: float = 0.0
    res: Union[int, List[int]] = 64
    domain: Dict[str, Any] = {"kind": "ball", "radius": 1.0}
    dirichlet: Union[str, Dict[str, Any]] = "0.5 * r**2"
    g: float = 1.0


class SolveConfig(_Strict):
    problem: ProblemSection = ProblemSection()
    solver: SolverSection = SolverSection()
    out_dir: str = "out"
    label: str = "solve"


def solver_settings(section: SolverSection) -> SolverDefaults:
    return defaults().solver.model_copy(update=section.model_dump(exclude_none=True))


def _read_yaml(path: Union[str, Path]) -> Dict[str, Any]:
    p = Path(path)
    if not p.exists():
        raise FileNotFoundError(f"[LAB] config not found at {p}")
    try:
        with p.open("r", encoding="utf-8") as f:
            raw = yaml.safe_load(f) or {}
    except yaml.YAMLError as e:
        raise ConfigError(f"malformed config {p}: {e}") from e
    if not isinstance(raw, dict):
        raise ConfigError(f"config {p} must be a mapping")
    return raw


def load_experiment_config(path: Union[str, Path], name: Optional[str] = None) -> ExperimentConfig:
    raw = _read_yaml(path)
    if name is not None:
        if raw.get("name") not in (None, name):
            raise ConfigError(f"config is for '{raw.get('name')}', not '{name}'")
        raw["name"] = name
    try:
        return ExperimentConfig.model_validate(raw)
    except ValidationError as e:
        raise ConfigError(f"invalid experiment config {path}: {e}") from e


def load_solve_config(path: Union[str, Path]) -> SolveConfig:
    raw = _read_yaml(path)
    try:
        return SolveConfig.model_validate(raw)
    except ValidationError as e:
        raise ConfigError(f"invalid solve config {path}: {e}") from e
