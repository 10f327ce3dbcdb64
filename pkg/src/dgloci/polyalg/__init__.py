"""Exact multivariate polynomial arithmetic and Groebner bases."""

from .field import FieldSpec
from .ideal import (
    Ideal,
    eliminate,
    groebner,
    ideal_quotient,
    intersect,
    krull_dimension,
    normal_form,
    radical_membership,
)
from .matrix import Matrix, Submodule, kernel_mod, syzygies
from .parsing import parse_polynomial
from .ring import PolyRing, Polynomial

__all__ = [
    "FieldSpec",
    "Ideal",
    "Matrix",
    "PolyRing",
    "Polynomial",
    "Submodule",
    "eliminate",
    "groebner",
    "ideal_quotient",
    "intersect",
    "kernel_mod",
    "krull_dimension",
    "normal_form",
    "parse_polynomial",
    "radical_membership",
    "syzygies",
]
