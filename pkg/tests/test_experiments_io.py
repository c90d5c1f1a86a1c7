# -*- coding: utf-8 -*-
import json
from pathlib import Path

import numpy as np
import pandas as pd
import pytest

from errors import ConfigError, EmptySetError
from experiments.checks import guarded, guarded_all, passed_if, plain, skipped
from experiments.common import default_delta_list, growth_settings, printed_gamma_check, solve_many
from experiments.config import ExperimentConfig, load_experiment_config, load_solve_config, solver_settings
from experiments.field_io import MAGIC, dump_field, load_field
from experiments.report import build_report, dumps, write_report, write_table
from experiments.scoring import aggregate_checks
from geometry.domains import Ball
from geometry.grid import Grid
from solver.problem import ProblemSpec


def _write(path, text):
    path.write_text(text, encoding="utf-8")
    return path


def test_experiment_config_defaults(tmp_path):
    cfg = load_experiment_config(_write(tmp_path / "c.yaml", "name: cylinder\nn: 3\nq: 1\nres: 16\n"))
    assert cfg.name == "cylinder"
    assert cfg.k_default == 1
    assert cfg.t_list == [0.1, 0.05, 0.025, 0.0125]


def test_experiment_config_rejects_unknown_keys(tmp_path):
    with pytest.raises(ConfigError):
        load_experiment_config(_write(tmp_path / "c.yaml", "name: cylinder\nresolution: 16\n"))
    with pytest.raises(ConfigError):
        load_experiment_config(_write(tmp_path / "c.yaml", "name: cylinder\nsolver: {dampening: 0.5}\n"))


@pytest.mark.parametrize("body", ["name: polytope\nq: 2\n", "name: polytope\nres: 2\n", "name: smp-failure\nt_list: [0.1, -0.1]\n"])
def test_experiment_config_rejects_bad_values(tmp_path, body):
    with pytest.raises(ConfigError):
        load_experiment_config(_write(tmp_path / "c.yaml", body))


def test_experiment_config_name_mismatch(tmp_path):
    path = _write(tmp_path / "c.yaml", "name: cylinder\n")
    with pytest.raises(ConfigError):
        load_experiment_config(path, "polytope")
    assert load_experiment_config(_write(tmp_path / "d.yaml", "n: 2\n"), "polytope").name == "polytope"


def test_missing_and_malformed_configs(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_experiment_config(tmp_path / "absent.yaml")
    with pytest.raises(ConfigError):
        load_solve_config(_write(tmp_path / "bad.yaml", "problem: [1, 2\n"))
    with pytest.raises(ConfigError):
        load_solve_config(_write(tmp_path / "list.yaml", "- 1\n- 2\n"))


def test_solver_section_overrides_defaults(tmp_path):
    cfg = load_solve_config(_write(tmp_path / "s.yaml", "solver: {damping: 0.5, initial: upper}\n"))
    settings = solver_settings(cfg.solver)
    assert settings.damping == 0.5
    assert settings.initial == "upper"
    assert settings.tol_outer == pytest.approx(1e-7)


def test_k_default_follows_dimension_bound():
    assert ExperimentConfig(name="polytope", n=3, q=1.0).k_default == 1
    assert ExperimentConfig(name="polytope", n=3, q=1.0, k=2).k_default == 2
    assert ExperimentConfig(name="polytope", n=2, q=0.0).k_default == 1


def test_field_dump_and_load(tmp_path, quadratic_field):
    path = dump_field(quadratic_field, tmp_path / "sub" / "quad.field")
    assert path.read_text(encoding="utf-8").splitlines()[0] == MAGIC
    back = load_field(path)
    assert back.grid == quadratic_field.grid
    assert back.q == 0.0
    assert np.array_equal(back.mask, quadratic_field.mask)
    assert np.array_equal(back.values[back.mask], quadratic_field.values[quadratic_field.mask])


def test_load_field_rejects_foreign_files(tmp_path, quadratic_field):
    with pytest.raises(ConfigError):
        load_field(_write(tmp_path / "x.field", "hello\n1 0\n"))
    good = dump_field(quadratic_field, tmp_path / "q.field").read_text(encoding="utf-8").splitlines()
    with pytest.raises(ConfigError):
        load_field(_write(tmp_path / "short.field", "\n".join(good[:-5]) + "\n"))


def test_plain_converts_numpy_and_non_finite():
    out = plain({"a": np.float64(1.5), "b": np.array([1, 2]), "c": float("inf"), "d": np.bool_(True), 3: (np.int64(4),)})
    assert out == {"a": 1.5, "b": [1, 2], "c": None, "d": True, "3": [4]}
    json.dumps(out)


def test_check_records():
    ok = passed_if("growth", True, slope=np.float64(1.49))
    assert ok == {"id": "growth", "status": "pass", "score": 1.0, "severity": "block", "details": {"slope": 1.49}}
    assert passed_if("x", False, severity="info")["status"] == "fail"
    assert skipped("y", "no face")["details"] == {"reason": "no face"}


def test_guarded_turns_lab_errors_into_failures():
    def body():
        raise EmptySetError("nothing to perturb", cells=0)

    res = guarded("stability", body)
    assert res["status"] == "fail"
    assert res["details"]["cells"] == 0
    assert "EmptySetError" in res["details"]["error"]


def test_guarded_lets_other_errors_through():
    def body():
        raise KeyError("bug")

    with pytest.raises(KeyError):
        guarded("x", body)


def test_guarded_all_registers_every_id():
    def body():
        raise EmptySetError("no coincidence set")

    out = guarded_all(["face-dim-bound", "nsc-dimension"], body)
    assert [r["id"] for r in out] == ["face-dim-bound", "nsc-dimension"]
    assert all(r["status"] == "fail" for r in out)

    partial = guarded_all(["a", "b"], lambda: [passed_if("b", True)])
    assert [(r["id"], r["status"]) for r in partial] == [("a", "fail"), ("b", "pass")]


def test_printed_gamma_check_expects_discrepancy_off_the_balanced_case():
    disc = {"n": 3, "k": 1, "q": 0.0, "printed_consistent": False}
    assert printed_gamma_check(disc)["status"] == "pass"
    assert printed_gamma_check({**disc, "printed_consistent": True})["status"] == "fail"
    assert printed_gamma_check({"n": 3, "k": 1, "q": 2.0, "printed_consistent": True})["status"] == "pass"


def test_aggregate_verdict_rules():
    block_ok = passed_if("a", True)
    block_bad = passed_if("b", False)
    info_bad = passed_if("c", False, severity="info")
    skip = skipped("d", "n/a")

    assert aggregate_checks([block_ok, skip])["passed"]
    assert not aggregate_checks([block_ok, info_bad, skip])["passed"]
    assert not aggregate_checks([block_ok, block_bad])["passed"]
    assert not aggregate_checks([skip])["passed"]
    assert not aggregate_checks([])["passed"]

    s = aggregate_checks([block_ok, info_bad, skip])
    assert s["skipped"] == ["d"]
    assert s["failed"] == ["c"]
    assert s["counts"] == {"pass": 1, "fail": 1, "skipped": 1}
    assert s["aggregate_score"] == pytest.approx(1.0 / 1.3)


def test_report_envelope(tmp_path):
    rep = build_report("cylinder", {"n": 3}, [passed_if("a", True)], {"x": np.arange(3)}, ["b.dat", "a.csv"])
    assert rep.passed
    assert rep.meta == {"engine": "maob-lab", "status": "ok", "error": None}
    payload = rep.as_dict()
    assert payload["artifacts"] == ["a.csv", "b.dat"]
    path = write_report(rep, tmp_path / "cylinder")
    assert json.loads(path.read_text(encoding="utf-8")) == json.loads(dumps(payload))

    failed = build_report("cylinder", {}, [passed_if("a", False)])
    assert failed.meta["status"] == "checks_failed"


def test_write_table(tmp_path):
    path = write_table(pd.DataFrame({"t": [0.1, 0.05], "C_t": [1.0, 1.1]}), tmp_path / "t.csv")
    assert pd.read_csv(path)["C_t"].tolist() == [1.0, 1.1]


def test_solve_many_keeps_order(monkeypatch):
    monkeypatch.setenv("MAOB_WORKERS", "2")
    dom = Ball((0.0, 0.0), 1.0)
    problems = [ProblemSpec(2, 0.0, dom, f"{a} + 0.5 * r**2", 8, label=f"p{a}") for a in (0.0, 1.0, 2.0)]
    solved = solve_many(problems)
    assert [v.meta["label"] for v, _ in solved] == ["p0.0", "p1.0", "p2.0"]


def test_growth_settings_and_deltas():
    cfg = ExperimentConfig(name="cylinder", n=3, q=1.0)
    grid = Grid((-1.0, -1.0), (1.0, 1.0), (32, 32))
    assert growth_settings(cfg, 1.0, grid, 2.0)["tol"] == 0.1
    assert growth_settings(cfg, 1.5, grid, 2.0)["window"] == (3.0 * grid.hmax, 0.5)
    deltas = default_delta_list(cfg, grid.hmax)
    assert deltas[0] == pytest.approx(0.5) and deltas[-1] == pytest.approx(3.0 * grid.hmax)
    assert default_delta_list(cfg.model_copy(update={"delta_list": [0.1, 0.3]}), grid.hmax) == [0.3, 0.1]


CONFIG_DIR = Path(__file__).resolve().parents[1] / "config" / "experiments"


@pytest.mark.parametrize("path", sorted(CONFIG_DIR.glob("*.yaml")), ids=lambda p: p.stem)
def test_shipped_configs_load(path):
    if path.stem.startswith("solve-"):
        assert load_solve_config(path).problem.dirichlet
    else:
        cfg = load_experiment_config(path)
        assert path.stem.startswith(cfg.name)


def test_shipped_polytope_and_radial_stability_configs():
    assert load_experiment_config(CONFIG_DIR / "polytope.yaml").q == pytest.approx(1.5)
    assert load_experiment_config(CONFIG_DIR / "polytope-q1.yaml").q == pytest.approx(1.0)
    cfg = load_experiment_config(CONFIG_DIR / "stability-radial.yaml")
    assert cfg.name == "stability"
    assert cfg.stability.base == "radial"
