# -*- coding: utf-8 -*-
import numpy as np
import pytest

from experiments.common import sample_on
from geometry.domains import Ball, Box
from geometry.grid import Grid
from geometry.measure import CellSet


@pytest.fixture
def unit_disc():
    return Ball((0.0, 0.0), 1.0)


@pytest.fixture
def square():
    return Box((-1.0, -1.0), (1.0, 1.0))


@pytest.fixture
def quadratic_field(unit_disc):
    """|x|²/2 sampled on the unit disc, 16 cells per axis."""
    return sample_on(lambda x: 0.5 * np.sum(np.square(x), axis=-1), unit_disc, 16, 0.0)


@pytest.fixture
def box_grid():
    return Grid((-1.0, -1.0), (1.0, 1.0), (32, 32))


@pytest.fixture
def cells_where():
    """CellSet of the nodes whose coordinates satisfy a predicate on (..., n) points."""
    def _make(grid, pred):
        return CellSet(grid, pred(grid.points()))

    return _make
