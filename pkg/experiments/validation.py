# -*- coding: utf-8 -*-
# experiments/validation.py
"""
Solver regression suite: convergence against exact solutions, the discrete comparison
principle on random ordered data, a wrong-exponent negative control, the determinant
oracle, and run-to-run determinism.
"""
from __future__ import annotations

import logging
from typing import Any, Dict, List, Tuple

import numpy as np
import pandas as pd

from analytic.calibration import choose_tau, cylinder_sampler, quasi_random_ball, quasi_random_box
from analytic.families import AnalyticExample, cylinder, family_a, family_b, gamma_discrepancy, quadratic, radial_power
from analytic.profiles import RadialPowerProfile, fd_det
from experiments.checks import guarded, passed_if
from experiments.common import out_dir_for, printed_gamma_check, problem_for, sample_on, solve_many, subsolution_check
from experiments.config import ExperimentConfig
from experiments.report import ExperimentReport, build_report, write_table
from geometry.domains import Ball
from settings import defaults
from solver.comparison import check_comparison, residual_norm
from solver.dirichlet import solve_dirichlet

logger = logging.getLogger(__name__)

# (label, n, q); exact solutions on the unit ball
CASES: List[Tuple[str, int, float]] = [
    ("quadratic", 2, 0.0),
    ("radial-power", 2, 1.0),
    ("radial-power", 2, 0.5),
    ("radial-power", 3, 1.0),
]

ERROR_FLOOR = 1e-8


def _exact(label: str, n: int, q: float) -> AnalyticExample:
    return quadratic(n, q) if label == "quadratic" else radial_power(n, q)


def convergence_table(cfg: ExperimentConfig) -> pd.DataFrame:
    val = defaults().validation
    res_by_n = {2: cfg.validation.res_2d or val.res_2d, 3: cfg.validation.res_3d or val.res_3d}
    unit = {n: Ball((0.0,) * n, 1.0) for n in (2, 3)}
    jobs, problems = [], []
    for label, n, q in CASES:
        ex = _exact(label, n, q)
        for res in res_by_n[n]:
            jobs.append((label, n, q, res, ex))
            problems.append(problem_for(cfg, unit[n], ex, res=res, q=q, label=f"{label}-n{n}-q{q:g}-r{res}"))
    rows = []
    for (label, n, q, res, ex), (v, rep) in zip(jobs, solve_many(problems)):
        exact = ex(v.grid.points()[v.mask])
        rows.append({
            "case": f"{label}-n{n}-q{q:g}",
            "n": n,
            "q": q,
            "res": res,
            "h": v.grid.hmax,
            "error": float(np.max(np.abs(v.values[v.mask] - exact))),
            "converged": rep.converged,
            "outer": rep.outer_iterations,
            "sweeps": rep.inner_sweeps,
            "residual": rep.residual_inf,
        })
    df = pd.DataFrame(rows).sort_values(["case", "res"], kind="stable").reset_index(drop=True)
    df["ratio"] = df.groupby("case")["error"].transform(lambda e: e / e.shift(1))
    return df


def _oracle_points(ex: AnalyticExample, count: int, seed: int) -> np.ndarray:
    n = ex.n
    if ex.family == "cylinder":
        pts = quasi_random_box(np.r_[-np.ones(n - 1), -0.9 * ex.tau], np.r_[np.ones(n - 1), 0.9 * ex.tau], 8 * count, seed)
        rho, r = ex.profile.split(pts)
        keep = (rho > ex.profile.radius + 0.05) & (r > 0.02)
    else:
        R = min(ex.tau, 0.5) * 0.9 / np.sqrt(n)
        pts = quasi_random_box(-R * np.ones(n), R * np.ones(n), 8 * count, seed)
        rho, r = ex.profile.split(pts)
        keep = (rho > 0.05 * R) & (r > 0.05 * R)
    return pts[keep][:count]


def determinant_oracle(seed: int, count: int = 200) -> Dict[str, Any]:
    examples = [
        family_a(3, 1, 0.0),
        family_b(3, 1, 0.0, 1.25),
        cylinder(3, 1.0),
        radial_power(2, 1.0),
    ]
    out = {}
    for ex in examples:
        if not np.isfinite(ex.tau):
            ex = ex.with_(tau=0.5)
        x = _oracle_points(ex, count, seed)
        exact = fd_det(ex, x, 1e-4)
        det = ex.det(x)
        out[ex.family] = float(np.max(np.abs(det - exact) / np.maximum(np.abs(exact), 1e-6)))
    return out


def subsolution_examples(seed: int, count: int = 1000) -> List[Tuple[AnalyticExample, np.ndarray]]:
    """Calibrated examples paired with their calibration sample."""
    out = []
    for ex in (family_a(3, 1, 0.0), family_b(3, 1, 0.0, 1.25)):
        cal, tau = choose_tau(ex, count=count, seed=seed)
        out.append((cal, quasi_random_ball(ex.n, count, tau, seed)))
    sampler = cylinder_sampler(3, count, seed)
    cal, tau = choose_tau(cylinder(3, 1.0), sampler=sampler)
    out.append((cal, sampler(tau)))
    return out


def comparison_pairs(cfg: ExperimentConfig) -> List[Dict[str, Any]]:
    """
    For every exact case: random ordered data φ <= φ + a + b·x (|b| <= a) around the exact
    solution, each pair solved and checked for the pointwise ordering.
    """
    val = defaults().validation
    pairs = cfg.validation.comparison_pairs or val.comparison_pairs
    res = cfg.validation.comparison_res or val.comparison_res
    rng = np.random.default_rng(cfg.seed)
    jobs, problems = [], []
    for label, n, q in CASES:
        case = f"{label}-n{n}-q{q:g}"
        base = _exact(label, n, q)
        dom = Ball((0.0,) * n, 1.0)
        problems.append(problem_for(cfg, dom, base, res=res, q=q, label=f"comparison-{case}-base"))
        jobs.append((case, q, None))
        for i in range(pairs):
            a = float(rng.uniform(0.01, 0.1))
            b = rng.normal(size=n)
            b *= a * float(rng.uniform(0.0, 1.0)) / np.linalg.norm(b)
            problems.append(problem_for(cfg, dom, _Affine(base, a, b), res=res, q=q, label=f"comparison-{case}-{i}"))
            jobs.append((case, q, {"a": a, "b": b.tolist()}))
    out, lower = [], None
    for (case, q, shift), (v, _) in zip(jobs, solve_many(problems)):
        if shift is None:
            lower = v
            continue
        cmp = check_comparison(lower, v, q)
        out.append({"case": case, **shift, "holds": cmp.holds, "min_gap": cmp.min_gap, "slack": cmp.slack})
    return out


class _Affine:
    def __init__(self, base, a: float, b: np.ndarray):
        self.base, self.a, self.b = base, a, np.asarray(b, float)

    def __call__(self, x: np.ndarray) -> np.ndarray:
        return self.base(x) + self.a + np.asarray(x, float) @ self.b


def wrong_exponent(res: int = 32) -> Dict[str, float]:
    """Residual of the exact radial field against one with the exponent raised by 2."""
    n, q = 2, 1.0
    ex = radial_power(n, q)
    wrong_prof = RadialPowerProfile(n, ex.profile.alpha + 2.0, ex.profile.c)
    dom = Ball((0.0,) * n, 1.0)
    right = sample_on(ex, dom, res, q)
    wrong = sample_on(wrong_prof, dom, res, q)
    return {"correct": residual_norm(right, q), "wrong": residual_norm(wrong, q)}


def run(cfg: ExperimentConfig) -> ExperimentReport:
    out = out_dir_for(cfg)
    checks, artifacts = [], []
    sec = cfg.validation
    results: Dict[str, Any] = {}

    table = convergence_table(cfg)
    artifacts.append(write_table(table, out / "convergence.csv").name)
    results["convergence"] = table.to_dict(orient="records")
    for case, g in table.groupby("case", sort=True):
        err = g["error"].to_numpy()
        ratios = g["ratio"].to_numpy()[1:]
        at_floor = err[1:] < ERROR_FLOOR
        ratio_ok = bool(np.all((ratios <= sec.ratio_max) | at_floor))
        bound_ok = bool(np.all(err <= sec.error_constant * g["h"].to_numpy()))
        checks.append(passed_if(f"convergence-{case}", ratio_ok and bound_ok and bool(g["converged"].all()),
                                errors=err, ratios=ratios, ratio_max=sec.ratio_max, bound_ok=bound_ok))

    def _pairs():
        pairs = comparison_pairs(cfg)
        results["comparison_pairs"] = pairs
        return passed_if("comparison-principle", all(p["holds"] for p in pairs), pairs=len(pairs))

    checks.append(guarded("comparison-principle", _pairs))

    wrong = wrong_exponent()
    results["wrong_exponent"] = wrong
    checks.append(passed_if("wrong-exponent-flagged", wrong["wrong"] > 5.0 * wrong["correct"], **wrong))

    oracle = determinant_oracle(cfg.seed)
    results["determinant_oracle"] = oracle
    checks.append(passed_if("determinant-oracle", max(oracle.values()) <= 1e-4, **oracle))

    for ex, pts in subsolution_examples(cfg.seed):
        checks.append(guarded(f"subsolution-residual-{ex.family}", lambda ex=ex, pts=pts: subsolution_check(
            ex, pts, check_id=f"subsolution-residual-{ex.family}")))

    disc = gamma_discrepancy(3, 1, 0.0, 1.25, seed=cfg.seed)
    results["gamma"] = disc
    checks.append(passed_if("gamma-balanced-det", disc["rel_err_balanced"] <= 1e-4, **disc))
    checks.append(printed_gamma_check(disc))

    dom = Ball((0.0, 0.0), 1.0)
    a, _ = solve_dirichlet(problem_for(cfg, dom, quadratic(2), res=16, q=0.0, label="determinism-a"))
    b, _ = solve_dirichlet(problem_for(cfg, dom, quadratic(2), res=16, q=0.0, label="determinism-b"))
    checks.append(passed_if("deterministic", bool(np.array_equal(a.values, b.values))))
    return build_report(cfg.name, cfg.model_dump(), checks, results, artifacts)
