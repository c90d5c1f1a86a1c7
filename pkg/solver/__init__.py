# solver/__init__.py
from solver.boundary import ExpressionData, SampledData, ShiftedData, as_boundary_data
from solver.comparison import ComparisonResult, check_comparison, comparison_slack, residual_norm
from solver.dirichlet import solve_dirichlet
from solver.operator import build_plan, default_width, local_solve, ma_operator
from solver.problem import ProblemSpec, SolveReport
from solver.stencils import StencilSet, build_stencil

__all__ = [
    "ExpressionData", "SampledData", "ShiftedData", "as_boundary_data",
    "ComparisonResult", "check_comparison", "comparison_slack", "residual_norm",
    "solve_dirichlet",
    "build_plan", "default_width", "local_solve", "ma_operator",
    "ProblemSpec", "SolveReport",
    "StencilSet", "build_stencil",
]
