# -*- coding: utf-8 -*-
# experiments/polytope.py
"""
Coincidence sets containing a given polytope P. The subsolution
w = M2 · max_i (Φ_i + M1 ℓ_i)_+ over the k-faces of P vanishes on P, so the solution
with data w does too; its non-strictly convex free boundary sits on the k-skeleton.
"""
from __future__ import annotations

import logging
import math

import numpy as np
from scipy.spatial.distance import directed_hausdorff

from analytic.families import family_a, family_exponents
from analytic.polytope import named_polytope, polytope_faces, polytope_subsolution, skeleton_domain
from errors import InadmissibleParametersError
from experiments.checks import guarded, guarded_all, passed_if, skipped
from experiments.common import growth_settings, out_dir_for, problem_for, sample_field
from experiments.config import ExperimentConfig
from experiments.field_io import dump_field
from experiments.report import ExperimentReport, build_report, write_plot_data
from freeboundary.coincidence import classify_gamma, coincidence_set, dichotomy
from freeboundary.fits import growth_exponent
from geometry.domains import Polytope, hull_domain
from geometry.faces import LABEL_NSC, LABEL_SC
from geometry.grid import ScalarField
from geometry.measure import CellSet
from settings import defaults
from solver.comparison import check_comparison
from solver.dirichlet import solve_dirichlet

logger = logging.getLogger(__name__)


def skeleton_k(n: int, q: float) -> int:
    return math.ceil((n + q) / 2) - 1


def base_polytope(cfg: ExperimentConfig) -> Polytope:
    sec = cfg.polytope
    if sec.vertices:
        return hull_domain(np.asarray(sec.vertices, float))
    return named_polytope(sec.shape, cfg.n, sec.half_width)


def skeleton_cells(v: ScalarField, P: Polytope, k: int) -> CellSet:
    """Masked nodes within half a cell of some k-face of P."""
    h = v.grid.hmax
    pts = v.grid.points()
    near_P = P.signed_distance(pts) <= 0.5 * h + 1e-12
    members = np.zeros(v.grid.shape, dtype=bool)
    for f in polytope_faces(P, k):
        members |= f.plane.distance(pts) <= 0.5 * h + 1e-12
    return CellSet(v.grid, members & near_P & v.mask)


def _directed(a: np.ndarray, b: np.ndarray) -> float:
    if len(a) == 0:
        return 0.0
    if len(b) == 0:
        return math.inf
    return float(directed_hausdorff(a, b)[0])


def build_subsolution(cfg: ExperimentConfig):
    """(P', Ω', subsolution, k) placed so that Ω' sits inside the validity ball of the blocks."""
    smp = defaults().sampling
    n, q = cfg.n, cfg.q
    k = cfg.k if cfg.k is not None else skeleton_k(n, q)
    info = family_exponents(n, k, q, 1.0, "family-a")
    if not info["admissible"]:
        raise InadmissibleParametersError("; ".join(info["reasons"]), n=n, k=k, q=q)
    block = family_a(n, k, q)
    P, omega, _, _ = skeleton_domain(base_polytope(cfg), block.tau / 2.0)
    sec = cfg.polytope
    sub = polytope_subsolution(P, omega, k, q, M1=sec.M1, M2=sec.M2, M1_cap=sec.M1_cap,
                               count=smp.points, seed=cfg.seed)
    return P, omega, sub, k


def run(cfg: ExperimentConfig) -> ExperimentReport:
    n, q = cfg.n, cfg.q
    out = out_dir_for(cfg)
    checks, artifacts = [], []
    P, omega, sub, k = build_subsolution(cfg)
    results = {"subsolution": sub.describe(), "k": k, "domain": omega.describe(), "polytope": P.describe()}
    checks.append(passed_if("subsolution-calibrated", sub.c_sub >= 1.0 - 1e-9, c_sub=sub.c_sub))

    v, rep = solve_dirichlet(problem_for(cfg, omega, sub, label="polytope"))
    checks.append(passed_if("solver-converged", rep.converged, **rep.as_dict()))
    results["solve"] = rep.as_dict()
    h = v.grid.hmax
    pts = v.grid.points()

    W = sample_field(sub, v.grid, v.mask, q)

    def _below():
        cmp = check_comparison(W, v, q)
        return passed_if("subsolution-below", cmp.holds, **cmp.as_dict())

    checks.append(guarded("subsolution-below", _below))

    K = coincidence_set(v, cfg.analysis.eps_K, rep)
    P_cells = CellSet(v.grid, v.mask & P.contains(pts, tol=1e-12 * max(1.0, h)))
    miss = _directed(P_cells.centers(), K.centers())
    checks.append(passed_if("polytope-in-coincidence", miss <= 1.5 * h, directed=miss, h=h,
                            p_cells=P_cells.count, k_cells=K.count))

    dich = dichotomy(K)
    results["dichotomy"] = dich
    checks.append(passed_if("positive-measure", dich["positive_measure"], **dich))

    def _skeleton():
        dec = classify_gamma(K, omega)
        results["gamma"] = dec.summary()
        nsc = dec.union(LABEL_NSC)
        skel = skeleton_cells(v, P, k)
        to_nsc = _directed(skel.centers(), nsc.centers())
        from_nsc = _directed(nsc.centers(), skel.centers())
        exact = k == n - 1
        ok = to_nsc <= 2.0 * h and (from_nsc <= 2.0 * h or not exact)
        on_skeleton = passed_if("nsc-on-skeleton", ok, skeleton_to_nsc=to_nsc, nsc_to_skeleton=from_nsc,
                                h=h, exact_match=exact)
        if exact:
            both = skipped("both-classes", "k = n - 1: the skeleton is the whole non-strictly-convex part")
        else:
            both = passed_if("both-classes", bool(dec.by_label(LABEL_SC)) and bool(dec.nsc_faces()),
                             labels=dec.summary()["labels"])
        return [on_skeleton, both]

    checks.extend(guarded_all(["nsc-on-skeleton", "both-classes"], _skeleton))

    def _growth():
        lo, hi = omega.bbox()
        gs = growth_settings(cfg, 1.0, v.grid, float(np.linalg.norm(hi - lo)) / 2.0)
        fit = growth_exponent(v, K, **gs)
        artifacts.append(write_plot_data(fit, out / "growth.dat").name)
        results["growth"] = fit.as_dict()
        return passed_if("growth-lipschitz", bool(fit.passed), slope=fit.slope, theory=1.0, tol=gs["tol"], r2=fit.r2)

    checks.append(guarded("growth-lipschitz", _growth))

    artifacts.append(dump_field(v, out / "solution.field").name)
    return build_report(cfg.name, cfg.model_dump(), checks, results, artifacts)
