"""Exact scalar, polynomial and matrix arithmetic over Q and GF(p)."""

from .fields import GF, QQ, FieldSpec, Scalar
from .linalg import Echelon, express, intersect, kernel, rank, rref
from .matrix import Matrix
from .poly import MultiPoly, PolyRing, poly_is_zero

__all__ = [
    "GF", "QQ", "FieldSpec", "Scalar",
    "Echelon", "express", "intersect", "kernel", "rank", "rref",
    "Matrix", "MultiPoly", "PolyRing", "poly_is_zero",
]
