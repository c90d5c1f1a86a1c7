# freeboundary/__init__.py
from freeboundary.coincidence import (
    classify_gamma,
    coincidence_set,
    default_eps_k,
    dichotomy,
    flat_dimension,
    union_dimension,
)
from freeboundary.collar import collar_integral, collar_profile, discrete_laplacian
from freeboundary.fits import FitReport, growth_exponent, section_scaling

__all__ = [
    "classify_gamma", "coincidence_set", "default_eps_k", "dichotomy", "flat_dimension", "union_dimension",
    "collar_integral", "collar_profile", "discrete_laplacian",
    "FitReport", "growth_exponent", "section_scaling",
]
