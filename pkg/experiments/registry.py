# -*- coding: utf-8 -*-
# experiments/registry.py
from __future__ import annotations

import logging
import time
from typing import Callable, Dict

from errors import ConfigError, InadmissibleParametersError, LabError
from experiments import cylinder, dim_optimality, polytope, smp, stability, validation
from experiments.config import ExperimentConfig
from experiments.report import ENGINE, ExperimentReport, write_report
from experiments.scoring import aggregate_checks

logger = logging.getLogger(__name__)

__all__ = ["EXPERIMENT_MAP", "run_experiment"]

Runner = Callable[[ExperimentConfig], ExperimentReport]

EXPERIMENT_MAP: Dict[str, Runner] = {
    "dim-optimality": dim_optimality.run,
    "cylinder": cylinder.run,
    "polytope": polytope.run,
    "stability": stability.run,
    "smp-failure": smp.run,
    "solver-validation": validation.run,
}


def run_experiment(cfg: ExperimentConfig, write: bool = True) -> ExperimentReport:
    """
    Dispatch by name and write <out_dir>/<name>/report.json.
    Bad parameters propagate; any other lab error becomes a failed report with the error in meta.
    """
    runner = EXPERIMENT_MAP.get(cfg.name)
    if runner is None:
        raise ConfigError(f"unknown experiment '{cfg.name}'")
    t0 = time.perf_counter()
    try:
        report = runner(cfg)
    except (ConfigError, InadmissibleParametersError):
        raise
    except LabError as e:
        logger.error("experiment %s failed: %s: %s", cfg.name, type(e).__name__, e)
        report = ExperimentReport(
            cfg.name, cfg.model_dump(), [], aggregate_checks([]), {"error_details": e.details}, [],
            {"engine": ENGINE, "status": "error", "error": f"{type(e).__name__}: {e}"},
        )
    logger.info("experiment %s: %s in %.1fs", cfg.name, report.meta.get("status"), time.perf_counter() - t0)
    if write:
        write_report(report, f"{cfg.out_dir}/{cfg.name}")
    return report
