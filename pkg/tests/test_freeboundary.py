# -*- coding: utf-8 -*-
import numpy as np
import pytest

from errors import BelowResolutionError, EmptySetError, InsufficientRangeError
from experiments.common import sample_on
from freeboundary.coincidence import (
    classify_gamma,
    coincidence_set,
    default_eps_k,
    dichotomy,
    flat_dimension,
    union_dimension,
)
from freeboundary.collar import collar_integral, collar_profile
from freeboundary.fits import growth_exponent, section_scaling
from geometry.faces import LABEL_DOMAIN, LABEL_NSC, LABEL_SC
from geometry.measure import CellSet


@pytest.fixture
def half_plane_field(square):
    """max(x0, 0)^1.5 on [-1, 1]^2: zero on the left half, growth exponent 1.5."""
    return sample_on(lambda x: np.maximum(x[:, 0], 0.0) ** 1.5, square, 64, 0.0)


def test_default_eps_k(quadratic_field):
    base = (quadratic_field.grid.hmax / 3.0) ** 2
    assert default_eps_k(quadratic_field) == pytest.approx(base)
    assert default_eps_k(quadratic_field, last_change=1e-3) == pytest.approx(max(base, 2e-3))
    assert default_eps_k(quadratic_field, last_change=float("nan")) == pytest.approx(base)


def test_coincidence_set_thresholds(quadratic_field):
    K = coincidence_set(quadratic_field, 1e-12)
    assert K.count == 1
    assert np.allclose(K.centers(), [[0.0, 0.0]])
    assert not dichotomy(K)["positive_measure"]


def test_dichotomy_positive_measure(half_plane_field):
    K = coincidence_set(half_plane_field, 1e-12)
    d = dichotomy(K)
    assert d["positive_measure"]
    assert d["eroded_cells"] > d["threshold"] == 4


def test_classify_empty(box_grid, square):
    with pytest.raises(EmptySetError):
        classify_gamma(CellSet(box_grid, np.zeros(box_grid.shape, bool)), square)


def test_classify_singleton(box_grid, square, cells_where):
    K = cells_where(box_grid, lambda p: np.all(np.abs(p) < 1e-12, axis=-1))
    dec = classify_gamma(K, square)
    assert dec.kind == "singleton"
    assert len(dec.faces) == 1 and dec.faces[0].affine_dim == 0
    assert dec.faces[0].label == LABEL_SC


def test_classify_segment_through_domain(box_grid, square, cells_where):
    K = cells_where(box_grid, lambda p: np.abs(p[..., 1]) < 1e-12)
    dec = classify_gamma(K, square)
    assert dec.kind == "nsc"
    assert dec.k_dim == 1
    assert [f.label for f in dec.faces] == [LABEL_NSC]


def test_classify_interior_segment_is_not_nsc(box_grid, square, cells_where):
    K = cells_where(box_grid, lambda p: (np.abs(p[..., 1]) < 1e-12) & (np.abs(p[..., 0]) <= 0.5))
    dec = classify_gamma(K, square)
    assert dec.nsc_faces() == []


def test_classify_square_block(box_grid, square, cells_where):
    K = cells_where(box_grid, lambda p: np.all(np.abs(p) <= 0.5, axis=-1))
    dec = classify_gamma(K, square)
    assert dec.kind == "positive-measure"
    assert len(dec.faces) == 4
    assert all(f.affine_dim == 1 for f in dec.faces)
    assert dec.nsc_faces() == []


def test_classify_strip_faces(box_grid, square, cells_where):
    K = cells_where(box_grid, lambda p: np.abs(p[..., 0]) <= 0.5)
    dec = classify_gamma(K, square)
    nsc = dec.nsc_faces()
    assert len(nsc) == 2
    assert len(dec.by_label(LABEL_DOMAIN)) == 2
    assert all(flat_dimension(f) == 1 for f in nsc)
    assert union_dimension(dec.union(LABEL_NSC))["dimension"] == 1


def test_union_dimension(box_grid, cells_where):
    line = cells_where(box_grid, lambda p: np.abs(p[..., 1]) < 1e-12)
    full = CellSet(box_grid, np.ones(box_grid.shape, bool))
    assert union_dimension(line)["dimension"] == 1
    assert union_dimension(full)["dimension"] == 2


def test_growth_exponent(half_plane_field):
    K = coincidence_set(half_plane_field, 1e-12)
    fit = growth_exponent(half_plane_field, K, theory=1.5, tol=0.05)
    assert fit.slope == pytest.approx(1.5, abs=0.03)
    assert fit.passed
    assert fit.as_dict()["kind"] == "growth"


def test_growth_needs_a_coincidence_set(half_plane_field):
    empty = CellSet(half_plane_field.grid, np.zeros(half_plane_field.grid.shape, bool))
    with pytest.raises(InsufficientRangeError):
        growth_exponent(half_plane_field, empty)


def test_section_scaling_of_quadratic(unit_disc):
    v = sample_on(lambda x: 0.5 * np.sum(x * x, axis=-1), unit_disc, 64, 0.0)
    fit = section_scaling(v)
    assert fit.theory == pytest.approx(1.0)
    assert fit.passed


def test_collar_below_resolution(half_plane_field):
    K = coincidence_set(half_plane_field, 1e-12)
    with pytest.raises(BelowResolutionError):
        collar_integral(half_plane_field, K, [0.5, 0.01])


def test_collar_decays_for_smooth_growth(half_plane_field):
    K = coincidence_set(half_plane_field, 1e-12)
    h = half_plane_field.grid.hmax
    vals = collar_integral(half_plane_field, K, [0.5, 0.25, 3.0 * h])
    assert vals[0] > vals[1] > vals[2] > 0
    assert collar_profile(vals)["ratio"] < 0.85


def test_collar_profile_of_zero_sequence():
    assert collar_profile([]) == {"first": 0.0, "last": 0.0, "ratio": 0.0}
