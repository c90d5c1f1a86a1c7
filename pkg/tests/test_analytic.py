# -*- coding: utf-8 -*-
import math

import numpy as np
import pytest

from analytic.calibration import (
    calibrate_c,
    choose_tau,
    quasi_random_ball,
    quasi_random_box,
    solve_data,
    subsolution_residual,
)
from analytic.families import (
    closed_form_det,
    cylinder,
    eval_example,
    family_a,
    family_b,
    family_exponents,
    gamma_discrepancy,
    make_example,
    product,
    quadratic,
    radial_power,
)
from analytic.polytope import named_polytope, polytope_subsolution, skeleton_domain
from analytic.profiles import fd_det, fd_hessian, symmetric_det
from analytic.rescale import rescale_solution
from errors import ConstructionError, InadmissibleParametersError, OnSymmetryAxisError, OutsideValidityError

OFF_AXIS_2D = np.array([[0.3, 0.4], [0.5, -0.2], [-0.25, 0.1]])


def test_family_a_exponents():
    info = family_exponents(3, 1, 0.0)
    assert info["admissible"]
    assert info["beta"] == pytest.approx(1.5)
    assert info["r_max"] == pytest.approx(math.sqrt(0.4))
    assert info["alpha"] == pytest.approx(2.0)
    assert info["dim_bound"] == 1


def test_family_a_tau_is_power_of_two_below_r_max():
    assert family_a(3, 1, 0.0).tau == 0.5


@pytest.mark.parametrize("n,k,q", [(2, 1, 0.0), (3, 2, 0.0), (3, 0, 0.0)])
def test_family_a_rejects_inadmissible(n, k, q):
    with pytest.raises(InadmissibleParametersError):
        family_a(n, k, q)


def test_family_b_window_on_s():
    with pytest.raises(InadmissibleParametersError):
        family_b(3, 1, 0.0, 1.0)
    ex = family_b(3, 1, 0.0, 1.25)
    assert ex.exponents["s_max"] == pytest.approx(4.0 / 3.0)
    # balanced γ = (2(n-k) + (k-n+q)s)/k
    assert ex.profile.gamma == pytest.approx(4.0 - 2.0 * 1.25)


def test_cylinder_exponent_and_q_requirement():
    assert cylinder(3, 1.0).s == pytest.approx(1.5)
    with pytest.raises(InadmissibleParametersError):
        cylinder(3, 0.0)


def test_radial_power_constant():
    ex = radial_power(2, 1.0)
    assert ex.profile.alpha == pytest.approx(4.0)
    assert ex.profile.c == pytest.approx(1.0 / 48.0)
    # det D²v = v on the punctured plane
    assert np.allclose(ex.det(OFF_AXIS_2D), ex(OFF_AXIS_2D), rtol=1e-10)


def test_product_profile_is_saddle():
    assert np.allclose(product(2).det(OFF_AXIS_2D), -1.0)


def test_quadratic_profile_has_unit_determinant():
    assert np.allclose(quadratic(3).det(np.array([[0.1, 0.2, 0.3]])), 1.0)


def test_make_example_unknown_family():
    with pytest.raises(InadmissibleParametersError):
        make_example("torus", n=2)


def test_symmetric_det_on_axis():
    with pytest.raises(OnSymmetryAxisError):
        symmetric_det(radial_power(2, 1.0).profile, np.array([0.0, 0.2]), np.array([0.5, 0.5]))


def test_closed_form_matches_symmetric_det_family_a():
    ex = family_a(3, 1, 0.0)
    rho = np.array([0.1, 0.2, 0.3])
    r = np.array([0.05, 0.2, 0.4])
    assert np.allclose(closed_form_det(ex, rho, r), symmetric_det(ex.profile, rho, r), rtol=1e-10)


@pytest.mark.parametrize("factory", [lambda: radial_power(2, 1.0), lambda: family_a(3, 1, 0.0)])
def test_finite_difference_oracle(factory):
    ex = factory()
    n = ex.n
    x = quasi_random_box(-0.3 * np.ones(n), 0.3 * np.ones(n), 64, seed=1)
    rho, r = ex.profile.split(x)
    x = x[(rho > 0.05) & (r > 0.05)]
    exact = fd_det(ex, x, 1e-4)
    assert np.allclose(ex.det(x), exact, rtol=1e-4, atol=1e-8)


def test_gamma_discrepancy_flags_printed_formula():
    out = gamma_discrepancy(3, 1, 0.0, 1.25)
    assert out["rel_err_balanced"] <= 1e-4
    assert not out["gammas_agree"]
    assert not out["printed_consistent"]


def test_outside_validity_radius():
    ex = family_a(3, 1, 0.0)
    with pytest.raises(OutsideValidityError):
        ex(np.array([[0.0, 0.0, 0.9]]))


def test_calibrate_quadratic():
    pts = quasi_random_ball(2, 200, 0.9, seed=0)
    assert calibrate_c(quadratic(2), pts) == pytest.approx(1.0)


def test_choose_tau_and_solve_data():
    ex, tau = choose_tau(family_a(3, 1, 0.0), count=512, seed=0)
    assert tau in [2.0 ** -j for j in range(1, 13)]
    assert ex.c_sub > 0
    data = solve_data(ex)
    pts = quasi_random_ball(3, 512, tau, seed=0)
    w = data(pts)
    d = data.det(pts)
    ok = np.isfinite(d) & (w > 0)
    assert ok.any()
    # det D²W >= W^q with q = 0
    assert np.all(d[ok] >= 1.0 - 1e-6)


def test_solve_data_needs_calibration():
    with pytest.raises(ConstructionError):
        solve_data(family_a(3, 1, 0.0))


def test_rescale_fixes_radial_power():
    ex = radial_power(2, 1.0)
    scaled = rescale_solution(ex, 0.5)
    assert np.allclose(scaled(OFF_AXIS_2D), ex(OFF_AXIS_2D), rtol=1e-12)


def test_rescale_rejects_bad_factor():
    with pytest.raises(ValueError):
        rescale_solution(radial_power(2, 1.0), 0.0)


def test_polytope_subsolution_vanishes_on_polytope():
    P, omega, _, _ = skeleton_domain(named_polytope("square", 2), 0.25)
    sub = polytope_subsolution(P, omega, k=1, q=1.0, count=1024, seed=0)
    assert sub.c_sub == pytest.approx(1.0)
    assert np.allclose(sub(P.vertices()), 0.0)
    pts = quasi_random_box(*omega.bbox(), 256, seed=3)
    pts = pts[omega.contains(pts)]
    assert np.all(sub(pts) >= 0.0)


def test_family_b_upper_end_of_window_is_admissible():
    assert family_exponents(3, 1, 0.0, 4.0 / 3.0, "family-b")["admissible"]
    assert not family_exponents(3, 1, 0.0, 1.4, "family-b")["admissible"]


DERIVATIVE_CASES = [
    lambda: family_a(3, 1, 0.0),
    lambda: family_b(3, 1, 0.0, 1.25),
    lambda: radial_power(2, 1.0).with_(amplitude=2.0, zoom=1.5),
]


def _interior_sample(ex, count=128, shrink=0.9):
    if ex.family == "radial-power":
        radius = 0.5
    else:
        ex, radius = choose_tau(ex, count=count, seed=0)
    pts = quasi_random_ball(ex.n, count, shrink * radius, seed=0)
    rho, r = ex.profile.split(ex.zoom * pts)
    keep = (rho > 0.1 * radius * ex.zoom) & (r > 0.1 * radius * ex.zoom)
    assert keep.sum() > 10
    return ex, pts[keep]


@pytest.mark.parametrize("factory", DERIVATIVE_CASES)
def test_eval_example_hessian_symmetric_and_convex(factory):
    ex, x = _interior_sample(factory(), shrink=1.0)
    out = eval_example(ex, x)
    assert out.gradient.shape == x.shape
    assert out.hessian.shape == (len(x), ex.n, ex.n)
    assert np.allclose(out.hessian, np.swapaxes(out.hessian, 1, 2))
    eig = np.linalg.eigvalsh(out.hessian)
    trace = np.trace(out.hessian, axis1=1, axis2=2)
    assert np.all(eig[:, 0] >= -1e-8 * np.maximum(trace, 1.0))
    scale = max(1.0, float(np.abs(out.hessian).max())) ** ex.n
    assert np.allclose(np.linalg.det(out.hessian), out.det, rtol=1e-6, atol=1e-9 * scale)
    assert np.allclose(out.value, ex(x))


@pytest.mark.parametrize("factory", DERIVATIVE_CASES)
def test_eval_example_gradient_matches_finite_differences(factory):
    ex, x = _interior_sample(factory())
    step = 1e-6
    fd = np.stack([(ex(x + step * e) - ex(x - step * e)) / (2 * step) for e in np.eye(ex.n)], axis=1)
    grad = eval_example(ex, x).gradient
    assert np.allclose(grad, fd, rtol=1e-5, atol=1e-7 * max(1.0, float(np.abs(fd).max())))


@pytest.mark.parametrize("factory", DERIVATIVE_CASES)
def test_eval_example_hessian_matches_finite_differences(factory):
    ex, x = _interior_sample(factory())
    fd = fd_hessian(ex, x, 1e-4)
    H = eval_example(ex, x).hessian
    assert np.allclose(H, fd, rtol=1e-4, atol=1e-5 * max(1.0, float(np.abs(fd).max())))


def test_subsolution_residual_nonnegative_after_calibration():
    ex, tau = choose_tau(family_a(3, 1, 0.0), count=1000, seed=0)
    pts = quasi_random_ball(3, 1000, tau, seed=0)
    rep = subsolution_residual(ex, pts)
    assert rep["min"] >= -1e-10 * max(1.0, ex.c_sub)
    assert rep["used"] > 0
    assert rep["argmin"] == pts[rep["index"]].tolist()


def test_subsolution_residual_locates_violation():
    ex, tau = choose_tau(family_a(3, 1, 0.0), count=512, seed=0)
    pts = quasi_random_ball(3, 512, tau, seed=0)
    rep = subsolution_residual(ex.with_(c_sub=1e6), pts)
    assert rep["min"] < 0
    assert len(rep["argmin"]) == 3
    det = ex.det(pts)
    assert rep["min"] == pytest.approx(np.nanmin(det - 1e6 * (ex(pts) > 0)))


def test_subsolution_residual_rejects_empty_sample():
    ex, _ = choose_tau(family_a(3, 1, 0.0), count=256, seed=0)
    with pytest.raises(ValueError):
        subsolution_residual(ex, np.empty((0, 3)))


def test_subsolution_residual_needs_calibration():
    with pytest.raises(ConstructionError):
        subsolution_residual(family_a(3, 1, 0.0), quasi_random_ball(3, 64, 0.25, seed=0))


def test_solve_data_is_a_unit_subsolution():
    ex, tau = choose_tau(family_a(3, 1, 0.0), count=512, seed=0)
    data = solve_data(ex)
    assert data.c_sub == 1.0
    rep = subsolution_residual(data, quasi_random_ball(3, 512, tau, seed=0))
    assert rep["min"] >= -1e-8


def test_polytope_subsolution_zero_set_inside_face_half_spaces():
    P, omega, _, _ = skeleton_domain(named_polytope("square", 2), 0.25)
    sub = polytope_subsolution(P, omega, k=1, q=1.0, count=1024, seed=0)
    pts = quasi_random_box(*omega.bbox(), 512, seed=5)
    pts = pts[omega.contains(pts)]
    assert len(sub.zero_set_outside(pts)) == 0


def test_polytope_subsolution_rejects_zero_set_outside_faces():
    P, omega, _, _ = skeleton_domain(named_polytope("square", 2), 0.25)
    # M2 = 0 makes w vanish on all of Ω, well beyond P
    with pytest.raises(ConstructionError, match="face half-spaces"):
        polytope_subsolution(P, omega, k=1, q=1.0, M2=0.0, count=1024, seed=0)
