# -*- coding: utf-8 -*-
import json

import pytest

import run_lab


def _run(tmp_path, *argv):
    out = tmp_path / "out.json"
    code = run_lab.main(["--output", str(out), *argv])
    return code, json.loads(out.read_text(encoding="utf-8"))


def test_example_reports_exponents(tmp_path):
    code, payload = _run(tmp_path, "example", "family-a", "n=3", "k=1", "q=0")
    assert code == 0
    assert payload["meta"]["status"] == "ok"
    assert payload["exponents"]["beta"] == pytest.approx(1.5)
    assert payload["exponents"]["admissible"] is True


def test_inadmissible_example_exits_with_config_code(tmp_path):
    code, payload = _run(tmp_path, "example", "family-a", "n=2", "k=1", "q=0")
    assert code == 2
    assert payload["meta"]["status"] == "config_error"
    assert "InadmissibleParametersError" in payload["meta"]["error"]


def test_bad_param_syntax(tmp_path):
    code, _ = _run(tmp_path, "example", "family-a", "n3")
    assert code == 2


def test_missing_experiment_config(tmp_path):
    code, payload = _run(tmp_path, "experiment", "cylinder", str(tmp_path / "absent.yaml"))
    assert code == 2
    assert "FileNotFoundError" in payload["meta"]["error"]


def test_emit_and_analyze(tmp_path):
    field = tmp_path / "rp.field"
    code, payload = _run(tmp_path, "example", "radial-power", "n=2", "q=1", "--emit-grid", "16",
                         "--field-out", str(field))
    assert code == 0
    assert field.exists()
    assert payload["example"]["family"] == "radial-power"

    code, payload = _run(tmp_path, "analyze", str(field))
    assert code == 0
    assert payload["cells"] == 1
    assert payload["dichotomy"]["positive_measure"] is False
    assert payload["gamma"]["kind"] == "singleton"


def test_solve_from_config(tmp_path):
    cfg = tmp_path / "solve.yaml"
    cfg.write_text(
        "problem:\n"
        "  n: 2\n"
        "  q: 1\n"
        "  res: 12\n"
        "  dirichlet: {family: radial-power}\n"
        f"out_dir: {tmp_path.as_posix()}\n"
        "label: rp\n",
        encoding="utf-8",
    )
    code, payload = _run(tmp_path, "solve", str(cfg))
    assert code in (0, 1)
    assert payload["meta"]["status"] in ("ok", "not_converged")
    assert (tmp_path / "rp.field").exists()
    assert payload["problem"]["q"] == 1.0


def test_solve_config_rejects_unknown_keys(tmp_path):
    cfg = tmp_path / "solve.yaml"
    cfg.write_text("problem: {n: 2, resolution: 12}\n", encoding="utf-8")
    code, _ = _run(tmp_path, "solve", str(cfg))
    assert code == 2


@pytest.mark.parametrize("command", ["solve", "experiment", "validate"])
def test_help_names_yaml_configs(command, capsys):
    with pytest.raises(SystemExit) as exc:
        run_lab.main([command, "--help"])
    assert exc.value.code == 0
    assert "YAML" in capsys.readouterr().out


def test_experiment_end_to_end(tmp_path):
    cfg = tmp_path / "polytope.yaml"
    cfg.write_text(
        "name: polytope\n"
        "n: 2\n"
        "q: 1.5\n"
        "res: 16\n"
        f"out_dir: {tmp_path.as_posix()}\n"
        "polytope: {shape: square}\n",
        encoding="utf-8",
    )
    code, payload = _run(tmp_path, "experiment", "polytope", str(cfg))
    assert code in (0, 1)
    assert payload["meta"]["status"] in ("ok", "checks_failed")
    written = json.loads((tmp_path / "polytope" / "report.json").read_text(encoding="utf-8"))
    assert written["summary"] == payload["summary"]
    by_id = {c["id"]: c for c in payload["checks"]}
    assert {"subsolution-calibrated", "solver-converged", "nsc-on-skeleton", "both-classes"} <= set(by_id)
    assert by_id["solver-converged"]["status"] == "pass"
    assert payload["summary"]["passed"] == (code == 0)
