# -*- coding: utf-8 -*-
import sys
import argparse
import logging
import math
from pathlib import Path
from typing import Any, Dict, List

import numpy as np

# --- Make local modules importable no matter how this script is launched ---
HERE = Path(__file__).resolve().parent
if str(HERE) not in sys.path:
    sys.path.insert(0, str(HERE))

from analytic.calibration import choose_tau, solve_data
from analytic.families import family_exponents, make_example
from errors import ConfigError, DegenerateDomainError, EmptySetError, InadmissibleParametersError, LabError, ProblemError
from experiments.common import sample_on
from experiments.config import EXPERIMENT_NAMES, ExperimentConfig, load_experiment_config, load_solve_config, solver_settings
from experiments.field_io import dump_field, load_field
from experiments.registry import run_experiment
from experiments.report import ENGINE, dumps
from freeboundary.coincidence import classify_gamma, coincidence_set, dichotomy
from freeboundary.collar import collar_integral, collar_profile
from freeboundary.fits import growth_exponent, section_scaling
from geometry.domains import Ball, Box, domain_from_dict, hull_domain
from geometry.faces import LABEL_NSC
from settings import setup_logging
from solver.dirichlet import solve_dirichlet
from solver.problem import ProblemSpec

logger = logging.getLogger("run_lab")

EXIT_OK, EXIT_CHECKS, EXIT_CONFIG = 0, 1, 2
FITS = {"s": "growth", "growth": "growth", "volume": "section", "section": "section", "collar": "collar"}


def _meta(status: str = "ok", error: str = None) -> Dict[str, Any]:
    return {"engine": ENGINE, "status": status, "error": error}


def _parse_params(items: List[str]) -> Dict[str, Any]:
    """key=value pairs; values parsed as int, then float, else kept as text."""
    out: Dict[str, Any] = {}
    for it in items:
        if "=" not in it:
            raise ConfigError(f"expected key=value, got '{it}'")
        k, v = it.split("=", 1)
        for cast in (int, float):
            try:
                out[k] = cast(v)
                break
            except ValueError:
                continue
        else:
            out[k] = v
    return out


def _dirichlet(spec, n: int, q: float):
    if isinstance(spec, str):
        return spec
    params = dict(spec)
    family = params.pop("family", None)
    if family is None:
        raise ConfigError("dirichlet mapping needs a 'family'")
    calibrate = bool(params.pop("calibrate", False))
    params.setdefault("n", n)
    params.setdefault("q", q)
    ex = make_example(family, **params)
    if calibrate:
        ex, _ = choose_tau(ex)
        ex = solve_data(ex)
    return ex


def cmd_solve(args) -> Dict[str, Any]:
    cfg = load_solve_config(args.config)
    pb = cfg.problem
    domain = domain_from_dict(pb.domain, pb.n)
    problem = ProblemSpec(pb.n, pb.q, domain, _dirichlet(pb.dirichlet, pb.n, pb.q), pb.res, g=pb.g,
                          settings=solver_settings(cfg.solver), label=cfg.label)
    v, rep = solve_dirichlet(problem)
    path = dump_field(v, Path(cfg.out_dir) / f"{cfg.label}.field")
    status = "ok" if rep.converged else "not_converged"
    return {"meta": _meta(status), "problem": problem.describe(), "report": rep.as_dict(), "field": str(path)}


def _example_domain(ex):
    n = ex.n
    tau = ex.tau if math.isfinite(ex.tau) else 1.0
    if ex.family == "cylinder":
        return Box((-1.0,) * (n - 1) + (-tau,), (1.0,) * (n - 1) + (tau,))
    return Ball((0.0,) * n, tau)


def cmd_example(args) -> Dict[str, Any]:
    params = _parse_params(args.params)
    n = int(params.get("n", 2))
    info = family_exponents(n, int(params.get("k", 1)), float(params.get("q", 0.0)),
                            float(params.get("s", 1.0)), args.family)
    payload: Dict[str, Any] = {"meta": _meta(), "exponents": info}
    if args.emit_grid:
        ex = make_example(args.family, **params)
        field = sample_on(ex, _example_domain(ex), args.emit_grid, ex.q)
        out = Path(args.field_out or f"{args.family}.field")
        payload["example"] = ex.describe()
        payload["field"] = str(dump_field(field, out))
    elif not info["admissible"]:
        raise InadmissibleParametersError("; ".join(info["reasons"]), family=args.family)
    return payload


def cmd_analyze(args) -> Dict[str, Any]:
    v = load_field(args.field)
    K = coincidence_set(v, args.eps)
    payload: Dict[str, Any] = {"meta": _meta(), "cells": K.count, "dichotomy": dichotomy(K)}
    domain = hull_domain(v.grid.points()[v.mask])
    nsc = None
    try:
        dec = classify_gamma(K, domain)
        payload["gamma"] = dec.summary()
        nsc = dec.union(LABEL_NSC)
    except EmptySetError as e:
        payload["gamma"] = {"kind": "empty", "note": str(e)}
    fit = FITS.get(args.fit) if args.fit else None
    if fit == "growth":
        payload["fit"] = growth_exponent(v, K, theory=args.theory, tol=args.tol).as_dict()
    elif fit == "section":
        payload["fit"] = section_scaling(v, theory=args.theory, tol=args.tol or 0.15).as_dict()
    elif fit == "collar":
        face = nsc if nsc is not None and not nsc.is_empty() else K.shell(1)
        deltas = args.delta or np.geomspace(0.5, 3.0 * v.grid.hmax, 6).tolist()
        vals = collar_integral(v, face, deltas)
        payload["fit"] = {"kind": "collar", "delta": deltas, "values": vals, **collar_profile(vals)}
    return payload


def cmd_experiment(args) -> Dict[str, Any]:
    cfg = load_experiment_config(args.config, args.name)
    report = run_experiment(cfg)
    return report.as_dict()


def cmd_validate(args) -> Dict[str, Any]:
    if args.config:
        cfg = load_experiment_config(args.config, "solver-validation")
    else:
        cfg = ExperimentConfig(name="solver-validation", out_dir=args.out_dir)
    return run_experiment(cfg).as_dict()


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(description="Monge-Ampère obstacle lab. Configs are YAML files.")
    ap.add_argument("--log-level", default=None, help="DEBUG/INFO/WARNING (default: MAOB_LOG_LEVEL or INFO)")
    ap.add_argument("--output", default=None, help="Optional JSON output path")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="Solve a Dirichlet problem from a YAML config")
    p.add_argument("config", help="YAML file with a problem: block")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("example", help="Exponents of an analytic family; optionally sample it on a grid")
    p.add_argument("family")
    p.add_argument("params", nargs="*", help="key=value (n, k, q, s, ...)")
    p.add_argument("--emit-grid", type=int, default=None, metavar="RES", help="Sample on a grid with RES cells per axis")
    p.add_argument("--field-out", default=None, help="Field dump path (default: <family>.field)")
    p.set_defaults(func=cmd_example)

    p = sub.add_parser("analyze", help="Coincidence set, faces and fits of a dumped field")
    p.add_argument("field")
    p.add_argument("--fit", choices=sorted(FITS), default=None)
    p.add_argument("--theory", type=float, default=None)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--eps", type=float, default=None, help="Coincidence threshold (default from grid and q)")
    p.add_argument("--delta", type=float, nargs="*", default=None, help="Collar widths, decreasing")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("experiment", help="Run a named experiment")
    p.add_argument("name", choices=EXPERIMENT_NAMES)
    p.add_argument("config", help="YAML experiment config (see config/experiments/)")
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("validate", help="Run the solver regression suite")
    p.add_argument("--config", default=None, help="YAML experiment config (default: built-in settings)")
    p.add_argument("--out-dir", default="out")
    p.set_defaults(func=cmd_validate)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    setup_logging(args.log_level)

    code = EXIT_OK
    try:
        payload = args.func(args)
        status = payload.get("meta", {}).get("status", "ok")
        code = EXIT_OK if status == "ok" else EXIT_CHECKS
    except (ConfigError, InadmissibleParametersError, DegenerateDomainError, ProblemError, FileNotFoundError) as e:
        payload = {"meta": _meta("config_error", f"{type(e).__name__}: {e}")}
        code = EXIT_CONFIG
    except LabError as e:
        payload = {"meta": _meta("error", f"{type(e).__name__}: {e}"), "details": e.details}
        code = EXIT_CHECKS

    text = dumps(payload)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
