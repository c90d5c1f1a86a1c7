# -*- coding: utf-8 -*-
# experiments/cylinder.py
"""
Cylinder example: w = d + d^s f(r), d = (|x'| - 1/2)_+, s = (q+2)/2, on the box
[-1, 1]^{n-1} x [-tau, tau]. The solution is only Lipschitz across |x'| = 1/2, and the
collar integral of |Δ_h v| around that surface levels off instead of vanishing.
"""
from __future__ import annotations

import logging

import numpy as np

from analytic.calibration import choose_tau, cylinder_sampler, solve_data
from analytic.families import cylinder, family_exponents
from errors import ConstructionError
from experiments.checks import guarded, guarded_all, passed_if
from experiments.common import default_delta_list, growth_settings, out_dir_for, problem_for, sample_field
from experiments.config import ExperimentConfig
from experiments.field_io import dump_field
from experiments.report import ExperimentReport, build_report, write_plot_data
from freeboundary.coincidence import classify_gamma, coincidence_set, union_dimension
from freeboundary.collar import collar_integral, collar_profile
from freeboundary.fits import growth_exponent, section_scaling
from geometry.domains import Box
from geometry.faces import LABEL_NSC
from geometry.measure import CellSet, hausdorff_distance
from settings import defaults
from solver.comparison import check_comparison
from solver.dirichlet import solve_dirichlet

logger = logging.getLogger(__name__)

RADIUS = 0.5


def _rho(points: np.ndarray) -> np.ndarray:
    return np.linalg.norm(points[..., :-1], axis=-1)


def run(cfg: ExperimentConfig) -> ExperimentReport:
    smp = defaults().sampling
    n, q = cfg.n, cfg.q
    if q <= 0:
        raise ConstructionError("cylinder example requires q > 0", q=q)
    out = out_dir_for(cfg)
    checks, artifacts = [], []
    info = family_exponents(n, 1, q, family="cylinder")
    s = info["s"]

    base = cylinder(n, q)
    example, tau = choose_tau(base, cylinder_sampler(n, smp.points, cfg.seed), max_power=smp.tau_max_power)
    data = solve_data(example)
    domain = Box((-1.0,) * (n - 1) + (-tau,), (1.0,) * (n - 1) + (tau,))
    res = (cfg.res,) * (n - 1) + (max(4, int(round(cfg.res * tau))),)
    v, rep = solve_dirichlet(problem_for(cfg, domain, data, res=res, label="cylinder"))
    checks.append(passed_if("solver-converged", rep.converged, **rep.as_dict()))
    results = {"example": example.describe(), "tau": tau, "solve": rep.as_dict()}

    W = sample_field(data, v.grid, v.mask, q)

    def _below():
        cmp = check_comparison(W, v, q)
        return passed_if("subsolution-below", cmp.holds, **cmp.as_dict())

    checks.append(guarded("subsolution-below", _below))

    K = coincidence_set(v, cfg.analysis.eps_K, rep)
    h = v.grid.hmax
    pts = v.grid.points()
    target = CellSet(v.grid, v.mask & (_rho(pts) <= RADIUS + 1e-9))
    dist = hausdorff_distance(K, target)
    checks.append(passed_if("coincidence-is-cylinder", dist <= 2.0 * h, hausdorff=dist, h=h, cells=K.count))

    nsc = {}

    def _faces():
        dec = classify_gamma(K, domain)
        results["gamma"] = dec.summary()
        nsc["cells"] = dec.union(LABEL_NSC)
        dims = [f.affine_dim for f in dec.nsc_faces()]
        bound = info["dim_bound"]
        ud = union_dimension(nsc["cells"])
        results["nsc_union"] = ud
        return [
            passed_if("face-dim-bound", bool(dims) and max(dims) <= bound, dims=dims, bound=bound),
            passed_if("nsc-dimension", ud["dimension"] == n - 1, expected=n - 1, **ud),
        ]

    checks.extend(guarded_all(["face-dim-bound", "nsc-dimension"], _faces))

    def _growth():
        gs = growth_settings(cfg, 1.0, v.grid, 1.0)
        fit = growth_exponent(v, K, **gs)
        artifacts.append(write_plot_data(fit, out / "growth.dat").name)
        results["growth"] = fit.as_dict()
        return passed_if("growth-lipschitz", bool(fit.passed), slope=fit.slope, theory=1.0, tol=gs["tol"], r2=fit.r2)

    checks.append(guarded("growth-lipschitz", _growth))

    def _sections():
        fit = section_scaling(v, restrict=lambda x: _rho(x) > RADIUS, tol=cfg.analysis.section_tol)
        artifacts.append(write_plot_data(fit, out / "sections.dat").name)
        results["sections"] = fit.as_dict()
        return passed_if("section-volume", bool(fit.passed), slope=fit.slope, theory=fit.theory, tol=fit.tol)

    checks.append(guarded("section-volume", _sections))

    def _collar():
        face = nsc.get("cells")
        if face is None or face.is_empty():
            face = target.shell(1)
        deltas = default_delta_list(cfg, h)
        vals = collar_integral(v, face, deltas)
        control = sample_field(lambda x: 0.5 * np.sum(x * x, axis=-1), v.grid, v.mask, q)
        ctrl = collar_integral(control, face, deltas)
        # first width is the transient
        prof = collar_profile(vals[1:] if len(vals) >= 3 else vals)
        cprof = collar_profile(ctrl)
        ctrl_limit = max(0.1, 1.5 * deltas[-1] / deltas[0])
        results["collar"] = {"delta": deltas, "solution": vals, "control": ctrl, "control_limit": ctrl_limit}
        monotone = bool(np.all(np.diff(vals) <= 1e-12 * max(abs(vals[0]), 1.0)))
        return [
            passed_if("collar-plateau", prof["ratio"] >= 0.5 and prof["last"] > 0 and monotone,
                      monotone=monotone, **prof),
            passed_if("collar-control-decays", cprof["ratio"] <= ctrl_limit, limit=ctrl_limit, **cprof),
        ]

    checks.extend(guarded_all(["collar-plateau", "collar-control-decays"], _collar))

    artifacts.append(dump_field(v, out / "solution.field").name)
    return build_report(cfg.name, cfg.model_dump(), checks, results, artifacts)
