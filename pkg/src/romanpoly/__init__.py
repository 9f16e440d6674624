"""Romanovski polynomials: exact construction, orthogonality checks and applications."""
from .polycore import DensePolynomial, parse_scalar
from .romanovski import (FamilyParams, RomanovskiPoly, build_recurrence, build_rodrigues,
                         eigenvalue, q_poly, romanovski)

__version__ = "0.1.0"

__all__ = [
    "DensePolynomial", "FamilyParams", "RomanovskiPoly", "build_recurrence",
    "build_rodrigues", "eigenvalue", "parse_scalar", "q_poly", "romanovski",
]
