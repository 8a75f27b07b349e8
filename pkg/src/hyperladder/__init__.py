"""Exact ladder operators and factorizations for the classical orthogonal
polynomials of hypergeometric type, continuous and on uniform lattices."""

__version__ = "0.1.0"

from .errors import DegreeError, DomainError, HyperladderError, InvariantError, KindError, ParameterError
from .families import FAMILY_NAMES, FamilySpec, default_family, make_family

__all__ = [
    "__version__",
    "FAMILY_NAMES",
    "FamilySpec",
    "default_family",
    "make_family",
    "HyperladderError",
    "ParameterError",
    "DegreeError",
    "DomainError",
    "KindError",
    "InvariantError",
]
