"""Exhaustive search over structure constants on a fixed sparse support over GF(p)."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from ..algebra import SuperAlgebra
from ..arith.fields import GF
from ..errors import BadParams, BudgetExceeded, NotGraded
from ..identities import check_alternative_super
from ..operators import engel_check
from ..structure import DEFAULT_BUDGET, graded_nil_check, power_series


@dataclass(frozen=True)
class SearchTemplate:
    """Basis parities and the positions (i, j, k) carrying an unknown coefficient of e_k in e_i e_j."""

    parity: tuple[int, ...]
    names: tuple[str, ...]
    support: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        d = len(self.parity)
        if len(self.names) != d:
            raise BadParams("one name per basis vector")
        for i, j, k in self.support:
            if not all(0 <= t < d for t in (i, j, k)):
                raise BadParams(f"support position {(i, j, k)} out of range")
            if (self.parity[i] + self.parity[j]) % 2 != self.parity[k]:
                raise NotGraded(f"support position {(i, j, k)} breaks the grading")

    def instantiate(self, p: int, coeffs) -> SuperAlgebra:
        f = GF(p)
        products: dict = {}
        for (i, j, k), c in zip(self.support, coeffs):
            if c % p:
                products.setdefault((i, j), {})[k] = c
        label = ",".join(str(c) for c in coeffs)
        return SuperAlgebra.from_products(f"search[{label}]", f, self.parity, products, self.names)


def shestakov_support() -> SearchTemplate:
    # e1 f2, f2 e1 -> f1; f1 f2, f2 f1, f2 f2 -> e1
    return SearchTemplate(
        (0, 1, 1), ("e1", "f1", "f2"),
        ((0, 2, 1), (2, 0, 1), (1, 2, 0), (2, 1, 0), (2, 2, 0)),
    )


@dataclass(frozen=True)
class SearchHit:
    coeffs: tuple[int, ...]
    algebra: SuperAlgebra
    graded_nil: bool
    r_nilpotent: bool
    nilpotent: bool

    def to_dict(self) -> dict:
        return {"coeffs": list(self.coeffs), "graded_nil": self.graded_nil,
                "r_nilpotent": self.r_nilpotent, "nilpotent": self.nilpotent}


@dataclass
class SearchResult:
    p: int
    examined: int = 0
    alternative: int = 0
    hits: list[SearchHit] = field(default_factory=list)  # alternative, graded-nil, not nilpotent
    violations: list[SearchHit] = field(default_factory=list)  # alternative, R-nilpotent, not nilpotent

    def to_dict(self) -> dict:
        return {
            "p": self.p, "examined": self.examined, "alternative": self.alternative,
            "hits": [h.to_dict() for h in self.hits],
            "violations": [h.to_dict() for h in self.violations],
        }


def counterexample_search(template: SearchTemplate, p: int, budget: int = DEFAULT_BUDGET) -> SearchResult:
    """Classify every coefficient assignment on the support.

    Hits are alternative, graded-nil and not nilpotent.  Violations are
    alternative with every R_a nilpotent yet not nilpotent; engel_chain
    proves such algebras nilpotent, so a nonempty list signals a bug.
    """
    total = p ** len(template.support)
    if total > budget:
        raise BudgetExceeded(f"{total} assignments exceed the budget {budget}")
    out = SearchResult(p)
    for coeffs in itertools.product(range(p), repeat=len(template.support)):
        out.examined += 1
        A = template.instantiate(p, coeffs)
        if not check_alternative_super(A).verdict:
            continue
        out.alternative += 1
        nilpotent = power_series(A).reaches_zero
        if nilpotent:
            continue
        gn = graded_nil_check(A, "enumerate", budget).verdict
        rn = engel_check(A, "RNilpotencyOnly", "enumerate", budget).verdict
        hit = SearchHit(coeffs, A, gn, rn, nilpotent)
        if gn:
            out.hits.append(hit)
        if rn:
            out.violations.append(hit)
    return out


__all__ = ["SearchTemplate", "SearchHit", "SearchResult", "shestakov_support", "counterexample_search"]
