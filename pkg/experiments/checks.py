# -*- coding: utf-8 -*-
"""
Check records for experiment reports.

Return schema for every check:
  { "id": str, "status": "pass|fail|skipped", "score": float, "severity": "block|info", "details": {...} }

Every check that ran decides the verdict; severity only weights the aggregate score.
"""
from __future__ import annotations

import logging
import math
from typing import Any, Callable, Dict, List, Sequence

import numpy as np

from errors import LabError

logger = logging.getLogger(__name__)

Result = Dict[str, Any]

__all__ = ["Result", "_res", "passed_if", "skipped", "guarded", "guarded_all", "plain"]


def plain(obj: Any) -> Any:
    """numpy scalars/arrays and non-finite floats to JSON-ready builtins."""
    if isinstance(obj, dict):
        return {str(k): plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return plain(obj.tolist())
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        f = float(obj)
        return f if math.isfinite(f) else None
    return obj


def _res(check_id: str, status: str, severity: str = "block", **details) -> Result:
    score = {"pass": 1.0, "skipped": 0.0, "fail": 0.0}[status]
    return {"id": check_id, "status": status, "score": score, "severity": severity, "details": plain(details)}


def passed_if(check_id: str, ok: bool, severity: str = "block", **details) -> Result:
    res = _res(check_id, "pass" if ok else "fail", severity, **details)
    log = logger.info if ok else logger.warning
    log("check %s: %s", check_id, res["status"])
    return res


def skipped(check_id: str, reason: str, severity: str = "block") -> Result:
    logger.info("check %s: skipped (%s)", check_id, reason)
    return _res(check_id, "skipped", severity, reason=reason)


def guarded(check_id: str, fn: Callable[[], Result], severity: str = "block") -> Result:
    """Run a check body; a LabError turns into a failed record carrying the error."""
    try:
        return fn()
    except LabError as e:
        logger.warning("check %s: %s: %s", check_id, type(e).__name__, e)
        return _res(check_id, "fail", severity, error=f"{type(e).__name__}: {e}", **e.details)


def guarded_all(check_ids: Sequence[str], fn: Callable[[], List[Result]], severity: str = "block") -> List[Result]:
    """
    Run a body that yields several checks. Every id in `check_ids` appears exactly once in
    the output: a LabError, or an id the body did not produce, becomes a failed record.
    """
    try:
        produced = {r["id"]: r for r in fn()}
    except LabError as e:
        logger.warning("checks %s: %s: %s", ", ".join(check_ids), type(e).__name__, e)
        return [_res(cid, "fail", severity, error=f"{type(e).__name__}: {e}", **e.details) for cid in check_ids]
    out = []
    for cid in check_ids:
        if cid in produced:
            out.append(produced[cid])
        else:
            logger.warning("check %s: not produced", cid)
            out.append(_res(cid, "fail", severity, error="check not produced"))
    return out
