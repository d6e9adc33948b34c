"""Exact computations with finite-dimensional superalgebras given by structure constants."""

from __future__ import annotations

__version__ = "0.1.0"

from .algebra import Element, SuperAlgebra, associator, mul, validate
from .arith import GF, QQ, FieldSpec, Matrix
from .corpus import build as build_corpus
from .engine.certificates import certificate_json, verify_certificate
from .engine.chain import ChainCertificate, engel_chain
from .engine.corollaries import corollary_associative_gradednil, corollary_oddnil2
from .engine.jordan import PipelineCertificate, plus_functor, special_jordan_pipeline
from .engine.qideal import verify_qideal
from .engine.search import counterexample_search, shestakov_support
from .identities import (
    check_alternative_super,
    check_jordan_super,
    check_superassociative,
    check_supercommutative,
    check_via_envelope,
)
from .io import algebra_from_json, algebra_to_json, parse_algebra
from .operators import check_operator_identities, engel_check
from .structure import SubSuperspace, derived_series, graded_nil_check, power_series

__all__ = [
    "__version__", "Element", "SuperAlgebra", "associator", "mul", "validate",
    "GF", "QQ", "FieldSpec", "Matrix", "build_corpus",
    "certificate_json", "verify_certificate", "ChainCertificate", "engel_chain",
    "corollary_associative_gradednil", "corollary_oddnil2",
    "PipelineCertificate", "plus_functor", "special_jordan_pipeline", "verify_qideal",
    "counterexample_search", "shestakov_support",
    "check_alternative_super", "check_jordan_super", "check_superassociative",
    "check_supercommutative", "check_via_envelope",
    "algebra_from_json", "algebra_to_json", "parse_algebra",
    "check_operator_identities", "engel_check",
    "SubSuperspace", "derived_series", "graded_nil_check", "power_series",
]
