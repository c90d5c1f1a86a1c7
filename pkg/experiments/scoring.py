# -*- coding: utf-8 -*-
# experiments/scoring.py
from __future__ import annotations

from collections import Counter
from typing import Any, Dict, List

# weight of a check in the aggregate score
SEVERITY_WEIGHTS = {
    "block": 1.0,
    "info": 0.3,
}


def severity_weight(severity: str) -> float:
    return SEVERITY_WEIGHTS.get(str(severity).lower(), 0.5)


def aggregate_checks(results: List[Dict[str, Any]]) -> Dict[str, Any]:
    """
    Severity-weighted mean score over the checks that ran, plus the verdict:
    passed iff no check failed and at least one passed. Severity weights the score only;
    skipped checks are listed but carry no weight.
    """
    ran = [r for r in results if r["status"] != "skipped"]
    weights = [severity_weight(r.get("severity", "block")) for r in ran]
    total = sum(weights)
    score = sum(w * float(r["score"]) for w, r in zip(weights, ran)) / total if total else 0.0

    counts = Counter({"pass": 0, "fail": 0, "skipped": 0})
    counts.update(r["status"] for r in results)
    return {
        "passed": counts["fail"] == 0 and counts["pass"] > 0,
        "aggregate_score": float(score),
        "counts": dict(counts),
        "skipped": [r["id"] for r in results if r["status"] == "skipped"],
        "failed": [r["id"] for r in results if r["status"] == "fail"],
        "breakdown": [
            {"id": r.get("id"), "severity": r.get("severity"), "status": r["status"], "score": float(r["score"])}
            for r in results
        ],
    }
