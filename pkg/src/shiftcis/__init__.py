"""Completeness of sample sets ``N0 ∪ alpha + N^-`` for shift-invariant spaces.

Submodules:

* :mod:`shiftcis.exactset`: exact admissible-shift regions for transversal generators;
* :mod:`shiftcis.symbolcurve`: the symbol curve and its winding number;
* :mod:`shiftcis.splinekernel`: B-splines, ``G_m``, Euler-Frobenius polynomials, zero counts;
* :mod:`shiftcis.lerch`: Lerch-type series and zero-free scans;
* :mod:`shiftcis.operatorlab`: spline classification, finite sections, reconstruction;
* :mod:`shiftcis.cli`: batch command-line front end.
"""

__version__ = "0.1.0"

from .errors import NumericalDiagnosticError, ShiftCISError, ValidationError
from .exactset import (
    AlphaRegion,
    CongruenceData,
    IntervalQ,
    TransversalSet,
    admissible_region,
    analyze,
    congruence_decompose,
    index_formula,
    validate_transversal,
)
from .splinekernel import PolyR, gm_poly, zero_split
from .symbolcurve import build_symbol_curve, curve_index, numeric_winding
from .operatorlab import SplineConfig, cis_classify_spline, spline_index

__all__ = [
    "AlphaRegion",
    "CongruenceData",
    "IntervalQ",
    "NumericalDiagnosticError",
    "PolyR",
    "ShiftCISError",
    "SplineConfig",
    "TransversalSet",
    "ValidationError",
    "admissible_region",
    "analyze",
    "build_symbol_curve",
    "cis_classify_spline",
    "congruence_decompose",
    "curve_index",
    "gm_poly",
    "index_formula",
    "numeric_winding",
    "spline_index",
    "validate_transversal",
    "zero_split",
]
