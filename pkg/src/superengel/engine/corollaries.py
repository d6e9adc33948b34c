"""Nilpotency criteria that follow from the Engel chain, checked on concrete algebras."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..algebra import SuperAlgebra
from ..errors import InconsistencyError
from ..identities import check_alternative_super, check_superassociative
from ..operators import engel_check
from ..structure import DEFAULT_BUDGET, graded_nil_check, power_series


@dataclass(frozen=True)
class CorollaryResult:
    name: str
    applicable: bool
    verdict: bool | None  # None when not applicable
    reasons: tuple[str, ...] = ()  # failed hypotheses
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "name": self.name, "applicable": self.applicable, "verdict": self.verdict,
            "reasons": list(self.reasons), "details": dict(self.details),
        }


def odd_squares_vanish(A: SuperAlgebra) -> bool:
    """x x = 0 for every odd x, via f_i f_i = 0 and f_i f_j + f_j f_i = 0."""
    f = A.field
    odd = A.odd_indices
    for n, i in enumerate(odd):
        if A.product_of_basis(i, i):
            return False
        for j in odd[n + 1:]:
            ij, ji = A.product_of_basis(i, j), A.product_of_basis(j, i)
            for k in set(ij) | set(ji):
                if f.add(ij.get(k, f.zero), ji.get(k, f.zero)) != 0:
                    return False
    return True


def corollary_oddnil2(A: SuperAlgebra, backend: str = "auto", budget: int = DEFAULT_BUDGET) -> CorollaryResult:
    """Alternative, graded-nil, odd squares zero, char != 3 implies nilpotent."""
    name = "odd-nil-index-2"
    reasons = []
    if A.field.characteristic == 3:
        reasons.append("characteristic 3")
    if not check_alternative_super(A).verdict:
        reasons.append("not alternative")
    if not odd_squares_vanish(A):
        reasons.append("some odd element does not square to zero")
    if not reasons:
        gn = graded_nil_check(A, backend, budget)
        if not gn.verdict:
            reasons.append("not graded-nil")
    if reasons:
        return CorollaryResult(name, False, None, tuple(reasons))
    series = power_series(A)
    eng = engel_check(A, "RNilpotencyOnly", backend, budget)
    if not (series.reaches_zero and eng.verdict):
        raise InconsistencyError(f"{A.name} meets the hypotheses but is not nilpotent")
    return CorollaryResult(name, True, True, (), {"index": series.index, "r_index": eng.index})


def corollary_associative_gradednil(A: SuperAlgebra, backend: str = "auto", budget: int = DEFAULT_BUDGET) -> CorollaryResult:
    """Associative and graded-nil implies nilpotent."""
    name = "associative-graded-nil"
    reasons = []
    if not check_superassociative(A).verdict:
        reasons.append("not associative")
    elif not graded_nil_check(A, backend, budget).verdict:
        reasons.append("not graded-nil")
    if reasons:
        return CorollaryResult(name, False, None, tuple(reasons))
    series = power_series(A)
    if not series.reaches_zero:
        raise InconsistencyError(f"{A.name} meets the hypotheses but is not nilpotent")
    return CorollaryResult(name, True, True, (), {"index": series.index})


__all__ = ["CorollaryResult", "corollary_oddnil2", "corollary_associative_gradednil", "odd_squares_vanish"]
