"""The ideal Q = I* + I* B* for B = I + Fv with B^2 in I.

If (B*)^{2n-1} lies in Q for an even n with R_v^n = 0, the nilpotency of I*
carries over to B*.  Every inclusion is decided by exact span computations.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..algebra import Element
from ..errors import PreconditionFailed
from ..operators import (
    L,
    OperatorSpace,
    R,
    algebra_nilpotency,
    generate_operator_algebra,
    stable_rank_power,
)
from ..structure import SubSuperspace


@dataclass(frozen=True)
class RvWitness:
    """Certificate that R_v is not nilpotent: rank(R_v^p) = rank(R_v^{p+1}) = rank > 0."""

    element: Element
    power: int
    rank: int

    def recheck(self) -> bool:
        M = R(self.element)
        P = M ** self.power
        return P.rank() == self.rank > 0 and (P @ M).rank() == self.rank

    def to_dict(self) -> dict:
        return {"element": self.element.to_strings(), "element_name": str(self.element), "power": self.power, "rank": self.rank}


@dataclass
class QIdealCheck:
    I: SubSuperspace
    B: SubSuperspace
    v: Element
    n: int  # smallest even n with R_v^n = 0
    Q: OperatorSpace
    inclusion_verdict: bool
    word_budget_used: int
    bstar_index: int | None
    istar_index: int
    power_dim: int  # dim (B*)^{2n-1}
    pair_products_in_Q: bool  # S_v S_a in Q for a in the basis of I
    v_words_in_Q: bool  # words in R_v, L_v of length 2n-1
    two_sided: bool  # Q is a two-sided ideal of B*
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.inclusion_verdict and self.bstar_index is not None

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "q_dim": self.Q.dim,
            "inclusion": self.inclusion_verdict,
            "bstar_index": self.bstar_index,
            "istar_index": self.istar_index,
            "power_dim": self.power_dim,
            "pair_products_in_q": self.pair_products_in_Q,
            "v_words_in_q": self.v_words_in_Q,
            "two_sided": self.two_sided,
            "word_budget_used": self.word_budget_used,
        }


class _Counter:
    def __init__(self):
        self.products = 0

    def times(self, S: OperatorSpace, gens) -> OperatorSpace:
        out = OperatorSpace(S.field, S.d)
        for X in S.basis():
            for G in gens:
                self.products += 1
                P = X @ G
                if not P.is_zero():
                    out.add(P)
        return out

    def left_times(self, gens, S: OperatorSpace) -> OperatorSpace:
        out = OperatorSpace(S.field, S.d)
        for G in gens:
            for X in S.basis():
                self.products += 1
                P = G @ X
                if not P.is_zero():
                    out.add(P)
        return out


def _generators(S: SubSuperspace):
    out = []
    for b in S.basis():
        out += [R(b), L(b)]
    return [g for g in out if not g.is_zero()]


def verify_qideal(I: SubSuperspace, v: Element) -> QIdealCheck:
    A = I.algebra
    f, d = A.field, A.dim
    if v.parity is None:
        raise PreconditionFailed("v-not-homogeneous", f"{v} is zero or not homogeneous", v)
    if not I.is_subalgebra():
        raise PreconditionFailed("I-not-subalgebra", "I.I is not contained in I")
    if v in I:
        raise PreconditionFailed("v-in-I", f"{v} already lies in I", v)
    B = I.with_element(v)
    if not (B * B) <= I:
        raise PreconditionFailed("B-square-not-in-I", "B.B is not contained in I", v)
    Rv = R(v)
    idx = Rv.nilpotency_index()
    if idx is None:
        p, r = stable_rank_power(Rv)
        raise PreconditionFailed("Rv-not-nilpotent", f"R_{{{v}}} is not nilpotent", RvWitness(v, p, r))
    n = max(2, idx + (idx % 2))

    gens_I = _generators(I)
    gens_B = gens_I + [g for g in (Rv, L(v)) if not g.is_zero()]
    Istar = generate_operator_algebra(f, d, gens_I)
    ires = algebra_nilpotency(Istar)
    if not ires.nilpotent:
        raise PreconditionFailed("I-star-not-nilpotent", "the operator algebra of I is not nilpotent")
    Bstar = generate_operator_algebra(f, d, gens_B)

    c = _Counter()
    Q = Istar.space + c.times(Istar.space, Bstar.space.basis())

    # words S_v S_a with a in I
    pair_ok = True
    for Sv in (Rv, L(v)):
        for Sa in gens_I:
            c.products += 1
            if (Sv @ Sa) not in Q:
                pair_ok = False
    # Q is a two-sided ideal of B*
    two_sided = c.times(Q, gens_B) <= Q and c.left_times(gens_B, Q) <= Q
    # words in R_v, L_v alone
    vgens = [g for g in (Rv, L(v)) if not g.is_zero()]
    words = OperatorSpace(f, d, vgens)
    for _ in range(2 * n - 2):
        if words.is_zero():
            break
        words = c.times(words, vgens)
    v_words_ok = words <= Q
    # (B*)^{2n-1}: products of 2n-1 elements of B*, i.e. words of length >= 2n-1
    power = Bstar.space
    for _ in range(2 * n - 2):
        if power.is_zero():
            break
        power = c.times(power, gens_B)
    inclusion = power <= Q
    bres = algebra_nilpotency(Bstar)
    return QIdealCheck(
        I=I, B=B, v=v, n=n, Q=Q, inclusion_verdict=inclusion, word_budget_used=c.products,
        bstar_index=bres.index, istar_index=ires.index, power_dim=power.dim,
        pair_products_in_Q=pair_ok, v_words_in_Q=v_words_ok, two_sided=two_sided,
        details={"rv_index": idx, "bstar_dim": Bstar.dim, "istar_dim": Istar.dim},
    )
