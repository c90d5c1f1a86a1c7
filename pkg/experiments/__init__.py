# -*- coding: utf-8 -*-
from experiments.config import ExperimentConfig, SolveConfig, load_experiment_config, load_solve_config
from experiments.field_io import dump_field, load_field
from experiments.registry import EXPERIMENT_MAP, run_experiment
from experiments.report import ExperimentReport, write_plot_data, write_report

__all__ = [
    "ExperimentConfig", "SolveConfig", "load_experiment_config", "load_solve_config",
    "dump_field", "load_field",
    "EXPERIMENT_MAP", "run_experiment",
    "ExperimentReport", "write_plot_data", "write_report",
]
