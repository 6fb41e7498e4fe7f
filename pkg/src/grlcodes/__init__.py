"""Generalized Roth-Lempel codes over finite fields.

The package builds GRL codes (generalized Reed-Solomon generators extended
by a small nonsingular block), decides their MDS/AMDS/NMDS status both by
enumeration and by closed-form criteria, constructs four families of
Hermitian self-orthogonal GRL codes and derives quantum code parameters
from them.
"""

from __future__ import annotations

from .code import InfeasibleError, LinearCode, classify, min_distance_exact
from .families import FamilyParams, construct
from .field import FieldSpec, QuadraticExtension, make_field, quadratic_extension
from .grl import GrlSpec, build_grl_generator
from .linalg import Matrix
from .quantum import QuantumParams, css_from_hermitian_so, qgrl_parameters

__all__ = [
    "FieldSpec",
    "QuadraticExtension",
    "make_field",
    "quadratic_extension",
    "Matrix",
    "LinearCode",
    "InfeasibleError",
    "classify",
    "min_distance_exact",
    "GrlSpec",
    "build_grl_generator",
    "FamilyParams",
    "construct",
    "QuantumParams",
    "css_from_hermitian_so",
    "qgrl_parameters",
]

__version__ = "0.1.0"
