# -*- coding: utf-8 -*-
import numpy as np
import pytest

from analytic.polytope import named_polytope, polytope_faces, skeleton_domain
from errors import DegenerateDomainError, EmptySetError
from geometry.domains import Ball, Box, Polytope, domain_from_dict, hull_domain
from geometry.faces import exposed_faces
from geometry.grid import Grid, boundary_layer, interior_nodes, make_grid
from geometry.measure import CellSet, hausdorff_distance, sublevel_volume
from geometry.subspace import AffineSubspace


def test_ball_signed_distance(unit_disc):
    d = unit_disc.signed_distance(np.array([[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]]))
    assert np.allclose(d, [-1.0, 0.0, 1.0])
    assert unit_disc.contains(np.array([[0.6, 0.8]])).all()


def test_box_rejects_flat_extent():
    with pytest.raises(DegenerateDomainError):
        Box((0.0, 0.0), (1.0, 0.0))


def test_hull_domain_of_square_corners():
    P = hull_domain(np.array([[0, 0], [1, 0], [1, 1], [0, 1], [0.5, 0.5]], float))
    assert P.contains(np.array([[0.5, 0.5], [0.0, 1.0]])).all()
    assert not P.contains(np.array([[1.1, 0.5]])).any()
    lo, hi = P.bbox()
    assert np.allclose(lo, 0.0) and np.allclose(hi, 1.0)


def test_hull_domain_rejects_flat_cloud():
    with pytest.raises(DegenerateDomainError):
        hull_domain(np.array([[0, 0], [1, 1], [2, 2], [3, 3]], float))


def test_domain_from_dict():
    assert isinstance(domain_from_dict({"kind": "ball", "radius": 0.5}, 3), Ball)
    assert isinstance(domain_from_dict({"kind": "box", "lo": [0, 0], "hi": [1, 2]}), Box)
    with pytest.raises(DegenerateDomainError):
        domain_from_dict({"kind": "torus"})


def test_grid_shape_and_spacing():
    g = Grid((-1.0, 0.0), (1.0, 1.0), (8, 4))
    assert g.shape == (9, 5)
    assert np.allclose(g.h, [0.25, 0.25])
    assert g.points().shape == (9, 5, 2)
    assert g.cell_volume == pytest.approx(1.0 / 16)


def test_make_grid_resolution_limits(unit_disc):
    with pytest.raises(ValueError):
        make_grid(unit_disc, 2)
    with pytest.raises(DegenerateDomainError):
        make_grid(unit_disc, 3)
    grid, mask = make_grid(unit_disc, 4)
    assert grid.shape == (5, 5)
    assert interior_nodes(mask).any()


def test_boundary_layer_splits_mask(unit_disc):
    _, mask = make_grid(unit_disc, 16)
    bl = boundary_layer(mask)
    assert not np.any(bl & interior_nodes(mask))
    assert np.array_equal(bl | interior_nodes(mask), mask)


def test_cellset_erosion_and_shell(box_grid, cells_where):
    h = box_grid.hmax
    block = cells_where(box_grid, lambda p: np.all(np.abs(p) <= 2 * h + 1e-12, axis=-1))
    assert block.count == 25
    assert block.eroded(1).count == 9
    assert block.shell(1).count == 16
    assert (block & block.eroded(1)).count == 9


def test_distance_map_empty_is_infinite(box_grid):
    empty = CellSet(box_grid, np.zeros(box_grid.shape, bool))
    assert empty.is_empty()
    assert np.all(np.isinf(empty.distance_map()))


def test_hausdorff_conventions(box_grid, cells_where):
    empty = CellSet(box_grid, np.zeros(box_grid.shape, bool))
    line = cells_where(box_grid, lambda p: np.abs(p[..., 1]) < 1e-12)
    shifted = cells_where(box_grid, lambda p: np.abs(p[..., 1] - 0.25) < 1e-12)
    assert hausdorff_distance(empty, empty) == 0.0
    assert hausdorff_distance(line, empty) == float("inf")
    assert hausdorff_distance(line, shifted) == pytest.approx(0.25)


def test_sublevel_volume_is_monotone(quadratic_field):
    levels = [0.01, 0.05, 0.1, 0.3]
    vols = [sublevel_volume(quadratic_field, t) for t in levels]
    assert all(a <= b for a, b in zip(vols, vols[1:]))
    upper = sublevel_volume(quadratic_field, 0.3, restrict=lambda p: p[..., 0] > 0)
    assert 0 < upper < vols[-1]


@pytest.mark.parametrize("level", [0.0, -0.1])
def test_sublevel_volume_rejects_nonpositive_level(quadratic_field, level):
    with pytest.raises(ValueError):
        sublevel_volume(quadratic_field, level)


def test_exposed_faces_of_empty_set(box_grid, square):
    empty = CellSet(box_grid, np.zeros(box_grid.shape, bool))
    with pytest.raises(EmptySetError, match="no coincidence set"):
        exposed_faces(empty, square)


def test_affine_subspace_distance():
    L = AffineSubspace.spanned_by([0.0, 0.0, 1.0], [[1.0, 1.0, 0.0]])
    assert L.dim == 1
    x = np.array([[2.0, 2.0, 1.0], [1.0, -1.0, 1.0]])
    assert np.allclose(L.distance(x), [0.0, np.sqrt(2.0)])
    assert np.allclose(np.abs(L.coordinates(x[:1])), [np.sqrt(8.0)])


def test_affine_subspace_requires_orthonormal_basis():
    with pytest.raises(ValueError):
        AffineSubspace(np.zeros(2), np.array([[1.0, 1.0]]))


@pytest.mark.parametrize("name,n,k,count", [
    ("square", 2, 1, 4),
    ("square", 2, 0, 4),
    ("cube", 3, 1, 12),
    ("cube", 3, 2, 6),
    ("cube", 3, 0, 8),
    ("simplex", 3, 1, 6),
])
def test_polytope_face_counts(name, n, k, count):
    faces = polytope_faces(named_polytope(name, n), k)
    assert len(faces) == count
    assert all(f.plane.dim == k for f in faces)


def test_polytope_face_linear_form_supports_polytope():
    P = named_polytope("square", 2)
    V = P.vertices()
    for f in polytope_faces(P, 1):
        assert np.all(f.ell(V) <= 1e-9)
        assert np.allclose(f.ell(f.vertices), 0.0)


def test_skeleton_domain_touches_polytope_at_vertices():
    P, omega, scale, shift = skeleton_domain(named_polytope("square", 2), 0.25)
    assert isinstance(omega, Polytope)
    assert np.all(np.linalg.norm(omega.vertices(), axis=1) <= 0.25 + 1e-9)
    # the vertices of P lie on the boundary of Ω
    assert np.allclose(omega.signed_distance(P.vertices()), 0.0, atol=1e-9)
