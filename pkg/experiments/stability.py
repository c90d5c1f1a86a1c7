# -*- coding: utf-8 -*-
# experiments/stability.py
"""
Stability of the coincidence set under boundary perturbations.

  polytope  |K| > 0, data w + t        K_t -> K in Hausdorff distance
  radial    K = {0}, data v + t        K_t empty for every t > 0
  segment   K a flat segment, data v + t|x - x0| with x0 an end of K on ∂Ω: K_t empty
"""
from __future__ import annotations

import logging
from typing import Any, Callable, Dict, Tuple

import numpy as np
import pandas as pd

from analytic.calibration import choose_tau, solve_data
from analytic.families import family_a, radial_power
from errors import EmptySetError
from experiments.checks import passed_if
from experiments.common import out_dir_for, problem_for, solve_many
from experiments.config import ExperimentConfig
from experiments.polytope import build_subsolution
from experiments.report import ExperimentReport, build_report, write_table
from freeboundary.coincidence import coincidence_set, default_eps_k, dichotomy
from geometry.domains import Ball, ConvexDomain
from geometry.measure import hausdorff_distance
from settings import defaults
from solver.boundary import ShiftedData
from solver.dirichlet import solve_dirichlet

logger = logging.getLogger(__name__)

Base = Tuple[ConvexDomain, Callable[[np.ndarray], np.ndarray], Dict[str, Any]]


def _polytope_base(cfg: ExperimentConfig) -> Base:
    _, omega, sub, _ = build_subsolution(cfg)
    return omega, sub, {"bump": "constant", "describe": sub.describe()}


def _radial_base(cfg: ExperimentConfig) -> Base:
    ex = radial_power(cfg.n, cfg.q)
    return Ball((0.0,) * cfg.n, 1.0), ex, {"bump": "constant", "describe": ex.describe()}


def _segment_base(cfg: ExperimentConfig) -> Base:
    smp = defaults().sampling
    ex, tau = choose_tau(family_a(cfg.n, 1, cfg.q), count=smp.points, seed=cfg.seed, max_power=smp.tau_max_power)
    x0 = np.zeros(cfg.n)
    x0[-1] = tau
    return Ball((0.0,) * cfg.n, tau), solve_data(ex), {"bump": "point", "target": x0, "describe": ex.describe()}


BASES: Dict[str, Callable[[ExperimentConfig], Base]] = {
    "polytope": _polytope_base,
    "radial": _radial_base,
    "segment": _segment_base,
}


def run(cfg: ExperimentConfig) -> ExperimentReport:
    out = out_dir_for(cfg)
    checks, artifacts = [], []
    branch = cfg.stability.base
    domain, data, extra = BASES[branch](cfg)

    v, rep = solve_dirichlet(problem_for(cfg, domain, data, label=f"stability-{branch}-base"))
    checks.append(passed_if("solver-converged", rep.converged, **rep.as_dict()))
    eps = cfg.analysis.eps_K or default_eps_k(v, rep.last_change)
    K = coincidence_set(v, eps)
    if K.is_empty():
        raise EmptySetError("nothing to perturb")
    dich = dichotomy(K)
    h = v.grid.hmax
    results: Dict[str, Any] = {"branch": branch, "base": extra["describe"], "dichotomy": dich, "eps_K": eps}

    # t = 0 reruns the base problem unchanged
    v0, _ = solve_dirichlet(problem_for(cfg, domain, data, label=f"stability-{branch}-t0"))
    same = bool(np.array_equal(coincidence_set(v0, eps).members, K.members))
    checks.append(passed_if("identity-control", same, t=0.0))

    ts = sorted(cfg.t_list, reverse=True)
    target = extra.get("target")
    problems = [
        problem_for(cfg, domain, ShiftedData(data, t, extra["bump"], target), label=f"stability-{branch}-t{t:g}")
        for t in ts
    ]
    rows = []
    for t, (vt, rt) in zip(ts, solve_many(problems)):
        Kt = coincidence_set(vt, eps)
        rows.append({
            "t": t,
            "cells": Kt.count,
            "empty": Kt.is_empty(),
            "hausdorff": hausdorff_distance(Kt, K),
            "converged": rt.converged,
            "min_value": float(np.min(vt.values[vt.mask])),
        })
    table = pd.DataFrame(rows)
    artifacts.append(write_table(table, out / "stability.csv").name)
    results["sweep"] = table.to_dict(orient="records")

    if dich["positive_measure"]:
        d = table["hausdorff"].to_numpy()
        # one cell of grid noise between neighbouring t
        monotone = bool(np.all(np.isfinite(d)) and np.all(np.diff(d) <= h + 1e-12))
        checks.append(passed_if("stable-coincidence", bool(monotone and d[-1] <= 2.0 * h),
                                distances=d, h=h, monotone=monotone))
    else:
        vanished = bool(table["empty"].all())
        checks.append(passed_if("coincidence-vanishes", vanished, cells=table["cells"].tolist(), k_kind=branch))
    checks.append(passed_if("perturbed-solves-converged", bool(table["converged"].all())))
    return build_report(cfg.name, cfg.model_dump(), checks, results, artifacts)
