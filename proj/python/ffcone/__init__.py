"""Finite-field cone averaging laboratory.

Thin wrapper around the compiled extension. The heavy lifting (field
tables, fast transforms, ratio scans) happens in C++; from here all
functions take and return numpy arrays indexed by the base-q point
encoding.
"""

from ._ffcone import (
    ConeOperator,
    Field,
    __version__,
    build_variety,
    convolve,
    fourier_hat,
    hull_classify,
    inverse_fourier,
    known_checks,
    lp_norm,
    max_subspace_in_cone,
    regularity_report,
    verify,
)

__all__ = [
    "ConeOperator",
    "Field",
    "__version__",
    "build_variety",
    "convolve",
    "fourier_hat",
    "hull_classify",
    "inverse_fourier",
    "known_checks",
    "lp_norm",
    "max_subspace_in_cone",
    "regularity_report",
    "verify",
]
