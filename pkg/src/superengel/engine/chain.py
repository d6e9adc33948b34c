"""Build a chain 0 = B_0 < B_1 < ... < A of subsuperalgebras with nilpotent B_i*.

Each step picks a homogeneous a normalizing B, derives v (a power of a, a
itself, or a power of a.a) with C = B + Fv and C.C in B, and certifies that
C* is nilpotent through the Q-ideal inclusion.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..algebra import Element, SuperAlgebra, mul
from ..errors import PreconditionFailed
from ..operators import R, engel_check, mult_superalgebra, algebra_nilpotency, stable_rank_power
from ..structure import (
    DEFAULT_BUDGET,
    SubSuperspace,
    graded_normalizer,
    power_series,
)
from .qideal import QIdealCheck, RvWitness, verify_qideal


@dataclass
class ChainStep:
    B_before: SubSuperspace
    normalizer: SubSuperspace
    chosen_a: Element
    case: str  # EvenPower, OddDirect, OddViaSquare
    k: int | None
    v: Element
    C: SubSuperspace
    cstar_nilindex: int
    qideal: QIdealCheck

    def to_dict(self) -> dict:
        return {
            "B_before": self.B_before.to_strings(),
            "normalizer": self.normalizer.to_strings(),
            "a": self.chosen_a.to_strings(),
            "a_name": str(self.chosen_a),
            "case": self.case,
            "k": self.k,
            "v": self.v.to_strings(),
            "v_name": str(self.v),
            "C": self.C.to_strings(),
            "cstar_index": self.cstar_nilindex,
            "qideal": self.qideal.to_dict(),
        }


@dataclass(frozen=True)
class FailureWitness:
    reason: str  # RvNotNilpotent, NormalizerStuck, HypothesisFailed
    element: Element | None = None
    subspace: SubSuperspace | None = None
    power: int | None = None  # minimal p with rank(R^p) = rank(R^{p+1}) > 0
    rank: int | None = None
    detail: str = ""

    def recheck(self) -> bool:
        if self.reason in ("RvNotNilpotent", "HypothesisFailed") and self.power is not None:
            return RvWitness(self.element, self.power, self.rank).recheck()
        if self.reason == "NormalizerStuck":
            return graded_normalizer(self.subspace) == self.subspace
        return True

    def to_dict(self) -> dict:
        out = {"reason": self.reason, "detail": self.detail}
        if self.element is not None:
            out["element"] = self.element.to_strings()
            out["element_name"] = str(self.element)
        if self.subspace is not None:
            out["subspace"] = self.subspace.to_strings()
        if self.power is not None:
            out["power"] = self.power
            out["rank"] = self.rank
        return out


@dataclass
class ChainCertificate:
    algebra: SuperAlgebra
    steps: list[ChainStep] = field(default_factory=list)
    outcome: str = "Nilpotent"  # or "Failed"
    astar_index: int | None = None
    a_index: int | None = None  # from the operator route: 1 + min{j : (A*)^j (A) = 0}
    power_series_index: int | None = None
    failure: FailureWitness | None = None
    warnings: list[str] = field(default_factory=list)

    @property
    def nilpotent(self) -> bool:
        return self.outcome == "Nilpotent"

    def to_dict(self) -> dict:
        out = {
            "kind": "chain",
            "algebra": self.algebra.name,
            "outcome": self.outcome,
            "steps": [s.to_dict() for s in self.steps],
        }
        if self.nilpotent:
            out["astar_index"] = self.astar_index
            out["a_index"] = self.a_index
            out["power_series_index"] = self.power_series_index
        else:
            out["failure"] = self.failure.to_dict()
        if self.warnings:
            out["warnings"] = list(self.warnings)
        return out


def operator_route_index(A: SuperAlgebra) -> int:
    """1 + min{j : (A*)^j (A) = 0}, via V_0 = A, V_j = A V_{j-1} + V_{j-1} A."""
    V = SubSuperspace.whole(A)
    W = V
    j = 0
    while not V.is_zero():
        nxt = (W * V) + (V * W)
        if nxt == V:
            raise ValueError("operator images stabilise; A* is not nilpotent")
        V = nxt
        j += 1
    return j + 1


def _normalizes(x: dict, B: SubSuperspace) -> bool:
    A = B.algebra
    for _, b in B.homogeneous_basis():
        if not B.contains(A.mul_sparse(x, b)) or not B.contains(A.mul_sparse(b, x)):
            return False
    return True


def _candidate(N: SubSuperspace, B: SubSuperspace) -> Element | None:
    for _, vec in N.homogeneous_basis():  # even rows first
        if not B.contains(vec):
            return Element.from_sparse(N.algebra, vec)
    return None


def _rv_failure(x: Element, detail: str) -> FailureWitness:
    p, r = stable_rank_power(R(x))
    return FailureWitness("RvNotNilpotent", element=x, power=p, rank=r, detail=detail)


def _even_power(a: Element, B: SubSuperspace):
    """Minimal k >= 2 with a^[k] in B and the power a^[k-1], or a failure."""
    d = a.algebra.dim
    x = a
    for k in range(2, d + 3):
        if not _normalizes(x.sparse(), B):
            return None, None, FailureWitness(
                "HypothesisFailed", element=x,
                detail=f"the power a^[{k - 1}] of {a} does not normalize B",
            )
        nxt = mul(x, a)
        if nxt in B:
            return k, x, None
        x = nxt
    if R(a).nilpotency_index() is None:
        return None, None, _rv_failure(a, "powers of an even normalizing element never enter B")
    return None, None, FailureWitness("HypothesisFailed", element=a, detail="powers never enter B")


def _hypothesis_failure(A: SuperAlgebra, budget: int) -> FailureWitness | None:
    res = engel_check(A, "RNilpotencyOnly", "auto", budget)
    if res.verdict:
        return None
    p, r = stable_rank_power(R(res.witness))
    return FailureWitness("HypothesisFailed", element=res.witness, power=p, rank=r,
                          detail="R of this homogeneous element is not nilpotent")


def engel_chain(A: SuperAlgebra, budget: int = DEFAULT_BUDGET) -> ChainCertificate:
    from ..identities import check_alternative_super

    cert = ChainCertificate(A)
    if not check_alternative_super(A).verdict:
        cert.warnings.append("input is not alternative; the construction runs without its guarantee")
    B = SubSuperspace.zero(A)
    whole = SubSuperspace.whole(A)

    def fail(w: FailureWitness) -> ChainCertificate:
        cert.outcome = "Failed"
        cert.failure = w
        return cert

    while B != whole:
        N = graded_normalizer(B)
        if N == B:
            return fail(_hypothesis_failure(A, budget) or FailureWitness("NormalizerStuck", subspace=B))
        a = _candidate(N, B)
        case, k = None, None
        if a.parity == 0:
            k, v, w = _even_power(a, B)
            if w:
                return fail(w)
            case = "EvenPower"
        else:
            sq = mul(a, a)
            if sq in B:
                case, v = "OddDirect", a
            else:
                k, v, w = _even_power(sq, B)
                if w:
                    return fail(w)
                case = "OddViaSquare"
        try:
            q = verify_qideal(B, v)
        except PreconditionFailed as exc:
            if exc.reason == "Rv-not-nilpotent":
                wit = exc.witness
                return fail(FailureWitness("RvNotNilpotent", element=wit.element, power=wit.power,
                                           rank=wit.rank, detail=str(exc)))
            return fail(FailureWitness("HypothesisFailed", element=v, detail=str(exc)))
        if not q.ok:
            return fail(FailureWitness("HypothesisFailed", element=v,
                                       detail="Q-ideal inclusion or nilpotency of C* failed"))
        C = q.B
        cert.steps.append(ChainStep(B, N, a, case, k, v, C, q.bstar_index, q))
        B = C

    cert.astar_index = cert.steps[-1].cstar_nilindex if cert.steps else algebra_nilpotency(mult_superalgebra(B)).index
    cert.a_index = operator_route_index(A)
    cert.power_series_index = power_series(A).index
    return cert


__all__ = ["ChainStep", "ChainCertificate", "FailureWitness", "engel_chain", "operator_route_index"]
