# -*- coding: utf-8 -*-
# settings.py
"""
Global defaults and environment.

Numerical defaults live in config/defaults.yaml; `MAOB_DEFAULTS` points at an
alternative file. `.env` is honoured through python-dotenv.
"""
from __future__ import annotations

import logging
import os
from functools import lru_cache
from pathlib import Path
from typing import List, Literal, Optional

import yaml
from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field

load_dotenv()

HERE = Path(__file__).resolve().parent
DEFAULTS_PATH = HERE / "config" / "defaults.yaml"

InitialGuess = Literal["zero", "envelope", "upper", "coarse"]


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


class SolverDefaults(_Strict):
    tol_outer: float = 1e-7
    tol_inner: float = 1e-10
    max_outer: int = 500
    max_inner: int = 50000
    inner_per_outer: int = 4000
    damping: float = Field(0.9, gt=0.0, le=1.0)
    width_2d: int = 2
    width_3d: int = 1
    initial: InitialGuess = "coarse"
    coarse_min_res: int = 8

    def width_for(self, n: int) -> int:
        return self.width_2d if n == 2 else self.width_3d


class AnalysisDefaults(_Strict):
    tol_face_cells: float = 1.5
    reach_cells: float = 2.0
    flat_keep_ratio: float = 0.75
    eps_k_cells: float = 3.0
    shells: int = 10
    min_shells: int = 4


class SamplingDefaults(_Strict):
    seed: int = 20240611
    points: int = 8000
    tau_max_power: int = 12


class ValidationDefaults(_Strict):
    res_2d: List[int] = [32, 64, 128]
    res_3d: List[int] = [16, 32]
    comparison_pairs: int = 10
    comparison_res: int = 16


class LabDefaults(_Strict):
    solver: SolverDefaults = SolverDefaults()
    analysis: AnalysisDefaults = AnalysisDefaults()
    sampling: SamplingDefaults = SamplingDefaults()
    validation: ValidationDefaults = ValidationDefaults()


def load_defaults(path: Optional[str | Path] = None) -> LabDefaults:
    p = Path(path or os.getenv("MAOB_DEFAULTS") or DEFAULTS_PATH)
    if not p.exists():
        raise FileNotFoundError(f"[LAB] defaults file not found at {p}")
    with p.open("r", encoding="utf-8") as f:
        raw = yaml.safe_load(f) or {}
    return LabDefaults.model_validate(raw)


@lru_cache(maxsize=1)
def defaults() -> LabDefaults:
    return load_defaults()


def worker_count() -> int:
    try:
        return max(1, int(os.getenv("MAOB_WORKERS", "1")))
    except ValueError:
        return 1


def setup_logging(level: Optional[str] = None) -> None:
    lvl = (level or os.getenv("MAOB_LOG_LEVEL") or "INFO").upper()
    logging.basicConfig(
        level=getattr(logging, lvl, logging.INFO),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
