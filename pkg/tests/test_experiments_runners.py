# -*- coding: utf-8 -*-
import json

import numpy as np
import pytest

from errors import ConfigError, EmptySetError, HypothesesNotMetError
from experiments import registry
from experiments.common import sample_on
from experiments.config import ExperimentConfig
from experiments.dim_optimality import axis_subspace
from experiments.polytope import base_polytope, build_subsolution, skeleton_cells, skeleton_k
from experiments.smp import pick_face
from experiments.validation import CASES, comparison_pairs
from geometry.faces import Face
from geometry.measure import CellSet


@pytest.mark.parametrize("n,q,k", [(2, 0.0, 0), (2, 1.0, 1), (3, 0.0, 1), (3, 1.0, 1), (3, 2.5, 2)])
def test_skeleton_dimension(n, q, k):
    assert skeleton_k(n, q) == k


def test_axis_subspace_is_last_coordinates():
    L = axis_subspace(3, 1)
    assert np.allclose(L.distance(np.array([[0.0, 0.0, 0.7], [0.3, 0.4, 0.0]])), [0.0, 0.5])


def test_base_polytope_from_vertices():
    cfg = ExperimentConfig(name="polytope", polytope={"vertices": [[0, 0], [1, 0], [0, 1]]})
    P = base_polytope(cfg)
    assert len(P.vertices()) == 3


def test_polytope_subsolution_for_square():
    cfg = ExperimentConfig(name="polytope", n=2, q=1.0)
    P, omega, sub, k = build_subsolution(cfg)
    assert k == 1
    assert sub.c_sub == pytest.approx(1.0)
    v = sample_on(sub, omega, 32, 1.0)
    sk = skeleton_cells(v, P, k)
    assert not sk.is_empty()
    # the skeleton of a square is its boundary: no cell deep inside P
    assert np.all(P.signed_distance(sk.centers()) >= -v.grid.hmax)


def test_pick_face_requires_a_boundary_face(box_grid):
    with pytest.raises(HypothesesNotMetError):
        pick_face([])
    cells = CellSet(box_grid, np.zeros(box_grid.shape, bool))
    small = Face(cells, 1, np.zeros((1, 2)), reaches_boundary=True)
    flat = Face(cells, 1, np.zeros((1, 2)), reaches_boundary=False)
    assert pick_face([flat, small]) is small


def test_registry_turns_lab_errors_into_error_reports(tmp_path, monkeypatch):
    def boom(cfg):
        raise EmptySetError("nothing to perturb", cells=0)

    monkeypatch.setitem(registry.EXPERIMENT_MAP, "stability", boom)
    cfg = ExperimentConfig(name="stability", out_dir=str(tmp_path))
    rep = registry.run_experiment(cfg)
    assert rep.meta["status"] == "error"
    assert "EmptySetError" in rep.meta["error"]
    assert not rep.passed
    written = json.loads((tmp_path / "stability" / "report.json").read_text(encoding="utf-8"))
    assert written["meta"]["status"] == "error"


def test_registry_propagates_config_errors(tmp_path, monkeypatch):
    def bad(cfg):
        raise ConfigError("broken")

    monkeypatch.setitem(registry.EXPERIMENT_MAP, "cylinder", bad)
    with pytest.raises(ConfigError):
        registry.run_experiment(ExperimentConfig(name="cylinder", out_dir=str(tmp_path)), write=False)


def test_comparison_pairs_cover_every_case(tmp_path):
    cfg = ExperimentConfig(name="solver-validation", out_dir=str(tmp_path),
                           validation={"comparison_pairs": 2, "comparison_res": 8})
    pairs = comparison_pairs(cfg)
    cases = [f"{label}-n{n}-q{q:g}" for label, n, q in CASES]
    assert len(pairs) == 2 * len(CASES)
    assert sorted({p["case"] for p in pairs}) == sorted(cases)
    assert all(p["holds"] for p in pairs)
