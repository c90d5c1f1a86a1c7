# -*- coding: utf-8 -*-
import numpy as np
import pytest

from analytic.families import radial_power
from errors import ConfigError, HypothesesNotMetError, ProblemError
from experiments.common import sample_on
from geometry.domains import Ball, Box
from geometry.grid import boundary_layer
from settings import defaults
from solver.boundary import ExpressionData, ShiftedData, as_boundary_data
from solver.comparison import check_comparison, residual_norm
from solver.dirichlet import solve_dirichlet
from solver.problem import ProblemSpec


def _problem(data, res=16, q=1.0, **kw):
    return ProblemSpec(2, q, Ball((0.0, 0.0), 1.0), data, res, **kw)


@pytest.mark.parametrize("q", [-0.5, 2.0, 3.0])
def test_problem_rejects_exponent(q):
    with pytest.raises(ConfigError):
        _problem("0.5 * r**2", q=q)


def test_problem_rejects_dimension_mismatch():
    with pytest.raises(ConfigError):
        ProblemSpec(3, 0.0, Ball((0.0, 0.0), 1.0), "r", 8)


def test_problem_rejects_bad_source():
    with pytest.raises(ConfigError):
        _problem("r", g=-1.0)
    with pytest.raises(ConfigError):
        _problem("r", g_bounds=(2.0, 1.0))


def test_coarsening_chain():
    assert _problem("r", res=16).coarsened().res == (8, 8)
    assert _problem("r", res=12).coarsened() is None


def test_expression_data():
    data = as_boundary_data("x0 + 2 * x1 + r**2")
    assert isinstance(data, ExpressionData)
    assert np.allclose(data(np.array([[1.0, 1.0], [0.0, -1.0]])), [5.0, -1.0])


def test_shifted_data_variants():
    base = ExpressionData("0 * x0")
    pts = np.array([[0.0, 0.0], [3.0, 4.0]])
    assert np.allclose(ShiftedData(base, 0.5)(pts), 0.5)
    assert np.allclose(ShiftedData(base, 2.0, "point", np.zeros(2))(pts), [0.0, 10.0])
    assert np.allclose(ShiftedData(base, 1.0, "distance", np.array([[3.0, 0.0]]))(pts), [3.0, 4.0])
    with pytest.raises(ValueError):
        ShiftedData(base, 1.0, "distance")


def test_solve_matches_radial_power():
    ex = radial_power(2, 1.0)
    v, rep = solve_dirichlet(_problem(ex, res=16))
    pts = v.grid.points()
    bl = boundary_layer(v.mask)
    assert np.allclose(v.values[bl], ex(pts[bl]))
    assert np.all(v.values[v.mask] >= 0.0)
    err = np.max(np.abs(v.values[v.mask] - ex(pts[v.mask])))
    assert err <= 10.0 * v.grid.hmax
    assert rep.converged
    assert rep.last_change < defaults().solver.tol_outer
    assert rep.residual_nonincreasing
    assert rep.min_value >= 0.0
    assert rep.comparison_flags["nonnegative"]
    assert rep.comparison_flags["discretely_convex"]
    d = rep.as_dict()
    assert "wall_time" not in d
    assert len(d["residual_history"]) == rep.outer_iterations
    assert isinstance(d["K_cells"], int)


@pytest.mark.parametrize("initial", ["zero", "upper", "envelope", "coarse"])
def test_radial_power_converges_from_every_start(initial):
    v, rep = solve_dirichlet(_problem(radial_power(2, 1.0), res=16), initial=initial)
    assert rep.converged, rep.flags
    assert rep.history[-1] < defaults().solver.tol_outer


def test_fixed_point_does_not_depend_on_start():
    tight = defaults().solver.model_copy(update={"tol_inner": 1e-13})
    a, ra = solve_dirichlet(_problem(radial_power(2, 1.0), res=12, settings=tight), initial="zero")
    b, rb = solve_dirichlet(_problem(radial_power(2, 1.0), res=12, settings=tight), initial="envelope")
    assert ra.converged and rb.converged
    assert np.max(np.abs(a.values - b.values)) <= 10.0 * tight.tol_outer


def test_negative_boundary_data_rejected():
    with pytest.raises(ProblemError) as err:
        solve_dirichlet(_problem("-1.0", res=8))
    assert err.value.details["min_value"] == pytest.approx(-1.0)


def test_zero_boundary_data_gives_zero_solution():
    v, rep = solve_dirichlet(_problem("0 * x0", res=8))
    assert np.all(v.values[v.mask] == 0.0)
    assert rep.converged
    assert rep.K_cells == int(v.mask.sum())


def test_solve_is_deterministic():
    a, _ = solve_dirichlet(_problem("0.5 * r**2", res=12, q=0.0))
    b, _ = solve_dirichlet(_problem("0.5 * r**2", res=12, q=0.0))
    assert np.array_equal(a.values, b.values)


def test_discrete_comparison_on_ordered_data():
    ex = radial_power(2, 1.0)
    low, _ = solve_dirichlet(_problem(ex, res=12))
    high, _ = solve_dirichlet(_problem(ShiftedData(ex, 0.05), res=12))
    cmp = check_comparison(low, high, 1.0)
    assert cmp.holds
    assert cmp.min_gap > -cmp.slack - 1e-12


def test_comparison_needs_ordered_boundary():
    ex = radial_power(2, 1.0)
    dom = Ball((0.0, 0.0), 1.0)
    v = sample_on(ex, dom, 12, 1.0)
    lower = v.with_values(v.values - 0.1)
    with pytest.raises(HypothesesNotMetError):
        check_comparison(v, lower)


def test_comparison_needs_same_grid():
    ex = radial_power(2, 1.0)
    a = sample_on(ex, Ball((0.0, 0.0), 1.0), 12, 1.0)
    b = sample_on(ex, Box((-1.0, -1.0), (1.0, 1.0)), 12, 1.0)
    with pytest.raises(HypothesesNotMetError):
        check_comparison(a, b)


def test_residual_separates_wrong_exponent():
    ex = radial_power(2, 1.0)
    dom = Ball((0.0, 0.0), 1.0)
    right = residual_norm(sample_on(ex, dom, 32, 1.0))
    wrong = residual_norm(sample_on(lambda x: ex.profile.c * np.sum(x * x, axis=-1) ** 3, dom, 32, 1.0))
    assert wrong > 5.0 * right
