"""Exact arithmetic for flat plumbing basket presentations of links."""

from .codes import (
    FlatBasketCode,
    SurfaceStats,
    UnderlyingDiagram,
    boundary_components,
    canonicalize,
    parse_code,
    parse_matching,
    relabel,
    surface_stats,
    underlying,
)
from .invariants import (
    AlexanderPolynomial,
    IntPolynomial,
    alexander,
    arf,
    knot_determinant,
    normalize_alexander,
    parse_polynomial,
    pencil_determinant,
    signature,
)
from .seifert import SeifertMatrix, seifert_matrix, symmetrized

__version__ = "0.1.0"

__all__ = [
    "FlatBasketCode",
    "UnderlyingDiagram",
    "SurfaceStats",
    "SeifertMatrix",
    "IntPolynomial",
    "AlexanderPolynomial",
    "parse_code",
    "parse_matching",
    "parse_polynomial",
    "underlying",
    "boundary_components",
    "surface_stats",
    "canonicalize",
    "relabel",
    "seifert_matrix",
    "symmetrized",
    "pencil_determinant",
    "normalize_alexander",
    "alexander",
    "knot_determinant",
    "arf",
    "signature",
    "__version__",
]
