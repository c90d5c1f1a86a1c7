# -*- coding: utf-8 -*-
# errors.py
from __future__ import annotations

from typing import Any, Dict, Optional


class LabError(Exception):
    """Base for every error raised by the lab. Carries an optional details dict."""

    def __init__(self, message: str, **details: Any):
        super().__init__(message)
        self.message = message
        self.details: Dict[str, Any] = details

    def as_dict(self) -> Dict[str, Any]:
        return {"error": type(self).__name__, "message": self.message, **self.details}


class DegenerateDomainError(LabError, ValueError):
    def __init__(self, reason: str = "", **details: Any):
        super().__init__("degenerate domain" + (f": {reason}" if reason else ""), **details)


class OnSymmetryAxisError(LabError, ValueError):
    def __init__(self, count: int):
        super().__init__("on symmetry axis", count=int(count))
        self.count = int(count)


class OutsideValidityError(LabError, ValueError):
    def __init__(self, tau: float, r_max: float):
        super().__init__(f"outside {{r <= tau}} (tau={tau:g}, r={r_max:g})", tau=tau, r_max=r_max)
        self.tau = tau
        self.r_max = r_max


class InadmissibleParametersError(LabError, ValueError):
    def __init__(self, reason: str, **params: Any):
        super().__init__(f"inadmissible parameters: {reason}", **params)
        self.reason = reason


class HypothesesNotMetError(LabError):
    def __init__(self, reason: str, **details: Any):
        super().__init__(f"hypotheses not met: {reason}", **details)
        self.reason = reason


class InsufficientRangeError(LabError):
    def __init__(self, usable: int, needed: int = 4, decades: Optional[float] = None):
        super().__init__("insufficient dynamic range", usable=usable, needed=needed, decades=decades)
        self.usable = usable


class BelowResolutionError(LabError, ValueError):
    def __init__(self, delta: float, minimum: float):
        super().__init__(f"below resolution (delta={delta:g} < {minimum:g})", delta=delta, minimum=minimum)


class EmptySetError(LabError):
    pass


class ConstructionError(LabError):
    """A construction step (subsolution, domain, perturbation) could not be completed."""


class ConfigError(LabError, ValueError):
    pass


class ProblemError(LabError, ValueError):
    """A problem statement the solver cannot accept (e.g. negative boundary data)."""
