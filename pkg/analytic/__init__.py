# analytic/__init__.py
from analytic.calibration import calibrate_c, choose_tau, solve_data, subsolution_residual
from analytic.families import (
    FAMILY_MAP,
    AnalyticExample,
    closed_form_det,
    eval_example,
    family_exponents,
    gamma_discrepancy,
    make_example,
)
from analytic.polytope import PolytopeSubsolution, polytope_faces, polytope_subsolution, skeleton_domain
from analytic.profiles import fd_det, fd_hessian, symmetric_det
from analytic.rescale import rescale_solution

__all__ = [
    "calibrate_c", "choose_tau", "solve_data", "subsolution_residual",
    "FAMILY_MAP", "AnalyticExample", "closed_form_det", "eval_example", "family_exponents",
    "gamma_discrepancy", "make_example",
    "PolytopeSubsolution", "polytope_faces", "polytope_subsolution", "skeleton_domain",
    "fd_det", "fd_hessian", "symmetric_det",
    "rescale_solution",
]
