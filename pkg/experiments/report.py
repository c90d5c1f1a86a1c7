# -*- coding: utf-8 -*-
# experiments/report.py
from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import numpy as np
import pandas as pd

from experiments.checks import Result, plain
from experiments.scoring import aggregate_checks
from freeboundary.fits import FitReport

logger = logging.getLogger(__name__)

__all__ = ["ExperimentReport", "build_report", "write_report", "write_plot_data", "write_table", "dumps"]

ENGINE = "maob-lab"


@dataclass
class ExperimentReport:
    name: str
    config: Dict[str, Any]
    checks: List[Result]
    summary: Dict[str, Any]
    results: Dict[str, Any] = field(default_factory=dict)
    artifacts: List[str] = field(default_factory=list)
    meta: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return bool(self.summary.get("passed"))

    def as_dict(self) -> Dict[str, Any]:
        return plain({
            "name": self.name,
            "config": self.config,
            "checks": self.checks,
            "summary": self.summary,
            "results": self.results,
            "artifacts": sorted(self.artifacts),
            "meta": self.meta,
        })


def build_report(
    name: str,
    config: Dict[str, Any],
    checks: List[Result],
    results: Optional[Dict[str, Any]] = None,
    artifacts: Optional[List[str]] = None,
) -> ExperimentReport:
    summary = aggregate_checks(checks)
    meta = {"engine": ENGINE, "status": "ok" if summary["passed"] else "checks_failed", "error": None}
    return ExperimentReport(name, config, checks, summary, results or {}, list(artifacts or []), meta)


def dumps(payload: Dict[str, Any]) -> str:
    return json.dumps(plain(payload), indent=2, sort_keys=True, ensure_ascii=False)


def write_report(report: Union[ExperimentReport, Dict[str, Any]], out_dir: Union[str, Path],
                 filename: str = "report.json") -> Path:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    payload = report.as_dict() if isinstance(report, ExperimentReport) else report
    path = out / filename
    path.write_text(dumps(payload) + "\n", encoding="utf-8")
    logger.info("report written to %s", path)
    return path


def write_plot_data(fit: FitReport, path: Union[str, Path]) -> Path:
    """Two columns (log x, log y) with the fitted line in the header."""
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    header = (f"{fit.kind} slope={fit.slope:.10g} intercept={fit.intercept:.10g} r2={fit.r2:.10g}"
              f" theory={fit.theory if fit.theory is not None else 'none'}")
    np.savetxt(p, np.column_stack([fit.x, fit.y]), fmt="%.17g", header=header)
    return p


def write_table(df: pd.DataFrame, path: Union[str, Path]) -> Path:
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    df.to_csv(p, index=False, float_format="%.10g")
    return p
