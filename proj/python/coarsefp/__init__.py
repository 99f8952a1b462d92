"""Fixed-point and spectral-gap computations (C++ core)."""

from ._core import (
    ConvergenceError,
    InputError,
    InvariantViolation,
    NumericalError,
    ResourceError,
    chebyshev_centre,
    cocycle_growth,
    expander_check,
    fixed_point_search,
    gaussian_embedding,
    homeo_certificate,
    mean_centre,
    spectral_report,
)

__version__ = "0.1.0"
