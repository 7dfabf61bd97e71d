"""Exact verification of a 5-dimensional unitary representation of the
amalgam GL(2,3) *_{D8} S4 over Z[1/sqrt(-2)] and of its reductions mod p."""

__version__ = "0.1.0"

from .fields import FieldElem, PrimeField, QuadExt, legendre_minus_two, sqrt_mod
from .linalg import CharPoly, MatrixR, builtin_generators, char_poly, element_order, is_self_reciprocal
from .reduction import ReductionContext, check_unitary_form, make_context, reduce_matrix
from .ring import RingElem

__all__ = [
    "CharPoly", "FieldElem", "MatrixR", "PrimeField", "QuadExt", "ReductionContext", "RingElem",
    "builtin_generators", "char_poly", "check_unitary_form", "element_order", "is_self_reciprocal",
    "legendre_minus_two", "make_context", "reduce_matrix", "sqrt_mod",
]
