# -*- coding: utf-8 -*-
# analytic/rescale.py
from __future__ import annotations

from typing import Optional, Union

from analytic.families import AnalyticExample, alpha_exponent
from geometry.grid import ScalarField

__all__ = ["rescale_solution"]


def rescale_solution(
    obj: Union[ScalarField, AnalyticExample], tau: float, q: Optional[float] = None
) -> Union[ScalarField, AnalyticExample]:
    """
    x -> tau^{-2n/(n-q)} v(tau x): solutions of det D²v = v^q on Ω map to solutions on Ω/tau.
    Fields get a grid scaled by 1/tau; examples get amplitude and zoom adjusted.
    """
    if not tau > 0:
        raise ValueError("tau must be positive")
    if isinstance(obj, AnalyticExample):
        a = alpha_exponent(obj.n, obj.q)
        return obj.with_(amplitude=obj.amplitude * tau ** (-a), zoom=obj.zoom * tau)
    qq = obj.q if q is None else q
    if qq is None:
        raise ValueError("field carries no exponent q; pass q")
    a = alpha_exponent(obj.grid.n, qq)
    out = ScalarField(obj.grid.scaled(1.0 / tau), obj.values * tau ** (-a), obj.mask.copy(), qq, dict(obj.meta))
    out.meta["rescaled_by"] = tau
    return out
