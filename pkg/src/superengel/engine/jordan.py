"""Supersymmetrized products and the nilpotency pipeline for special Jordan superalgebras."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..algebra import Element, SuperAlgebra
from ..arith.linalg import express
from ..errors import CharTwoUnsupported, HypothesisViolated, NotAssociative, NotPlusClosed
from ..identities import check_jordan_super, check_superassociative
from ..operators import (
    WeaklyClosedSet,
    engel_check,
    generate_operator_algebra,
    jacobson_nilpotency,
    plain_R,
    span_nilpotent,
    weakly_closed_verify,
)
from ..structure import DEFAULT_BUDGET, SubSuperspace, generate_subalgebra_in, power_series
from .chain import ChainCertificate, engel_chain


def _require_plus_ready(A: SuperAlgebra):
    if A.field.characteristic == 2:
        raise CharTwoUnsupported("the supersymmetric product needs 1/2")
    if not check_superassociative(A).verdict:
        raise NotAssociative(f"{A.name} is not associative")


def circle(A: SuperAlgebra, x: dict, y: dict, px: int, py: int) -> dict:
    """a o b = 1/2 (ab + (-1)^{|a||b|} ba) on sparse homogeneous vectors."""
    f = A.field
    half = f.inv(f.from_int(2))
    s = f.sign(px * py)
    ab, ba = A.mul_sparse(x, y), A.mul_sparse(y, x)
    out = {}
    for k in set(ab) | set(ba):
        v = f.mul(half, f.add(ab.get(k, f.zero), f.mul(s, ba.get(k, f.zero))))
        if v != 0:
            out[k] = v
    return out


def plus_functor(A: SuperAlgebra) -> SuperAlgebra:
    """A+ : same basis and grading, product a o b."""
    _require_plus_ready(A)
    f = A.field
    one = f.one
    products = {}
    for i in range(A.dim):
        for j in range(A.dim):
            w = circle(A, {i: one}, {j: one}, A.parity[i], A.parity[j])
            if w:
                products[(i, j)] = w
    return SuperAlgebra.from_products(f"{A.name}+", f, A.parity, products, A.basis_names)


def restrict_algebra(A: SuperAlgebra, S: SubSuperspace, product, name: str) -> tuple[SuperAlgebra, list[dict]]:
    """The subspace S as an algebra in its own homogeneous echelon basis.

    ``product(x, y, px, py)`` is the multiplication on sparse vectors of A;
    S must be closed under it.
    """
    f = A.field
    basis = S.homogeneous_basis()
    vecs = [v for _, v in basis]
    pars = [p for p, _ in basis]
    products = {}
    for i, (pi, x) in enumerate(basis):
        for j, (pj, y) in enumerate(basis):
            w = product(x, y, pi, pj)
            if not w:
                continue
            coeffs = express(f, vecs, w, A.dim)
            if coeffs is None:
                raise NotPlusClosed(f"product of basis vectors {i}, {j} leaves the subspace")
            out = {k: c for k, c in enumerate(coeffs) if c != 0}
            if out:
                products[(i, j)] = out
    names = tuple(f"b{k + 1}" for k in range(len(vecs)))
    return SuperAlgebra.from_products(name, f, tuple(pars), products, names), vecs


def is_plus_closed(J: SubSuperspace) -> bool:
    A = J.algebra
    basis = J.homogeneous_basis()
    for pa, a in basis:
        for pb, b in basis:
            if not J.contains(circle(A, a, b, pa, pb)):
                return False
    return True


def plus_power_chain(J: SubSuperspace):
    """Power series of J under the supersymmetric product."""
    A = J.algebra
    Jalg, _ = restrict_algebra(A, J, lambda x, y, px, py: circle(A, x, y, px, py), "J+")
    return Jalg, power_series(Jalg)


@dataclass
class StageResult:
    stage: int
    name: str
    ok: bool
    detail: dict = field(default_factory=dict)
    witness: object = None

    def to_dict(self) -> dict:
        out = {"stage": self.stage, "name": self.name, "ok": self.ok, "detail": self.detail}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


STAGES = (
    "jordan-closure", "engelian", "even-case", "odd-case",
    "generated-subalgebra", "weak-closure", "chain", "nilpotent",
)


@dataclass
class PipelineCertificate:
    ambient: SuperAlgebra
    J: SubSuperspace
    stages: list[StageResult] = field(default_factory=list)
    Jprime: SubSuperspace | None = None
    RJprime_equals_RJ: bool | None = None
    weakly_closed: bool | None = None
    RJ_nilpotent_index: int | None = None
    Jprime_chain: ChainCertificate | None = None
    J_nilpotent_index: int | None = None

    @property
    def passed(self) -> bool:
        return len(self.stages) == len(STAGES) and all(s.ok for s in self.stages)

    @property
    def failed_stage(self) -> StageResult | None:
        for s in self.stages:
            if not s.ok:
                return s
        return None

    def to_dict(self) -> dict:
        out = {
            "kind": "pipeline",
            "ambient": self.ambient.name,
            "J": self.J.to_strings(),
            "outcome": "Passed" if self.passed else "Failed",
            "stages": [s.to_dict() for s in self.stages],
        }
        if self.Jprime is not None:
            out["Jprime"] = self.Jprime.to_strings()
        for key in ("RJprime_equals_RJ", "weakly_closed", "RJ_nilpotent_index", "J_nilpotent_index"):
            val = getattr(self, key)
            if val is not None:
                out[key] = val
        if self.Jprime_chain is not None:
            out["Jprime_chain"] = self.Jprime_chain.to_dict()
        fs = self.failed_stage
        if fs is not None:
            out["failed_stage"] = fs.stage
        return out


def _R_algebra(A: SuperAlgebra, S: SubSuperspace):
    """R(S): operator algebra generated by the plain right multiplications by elements of S."""
    gens = [plain_R(b) for b in S.basis()]
    return generate_operator_algebra(A.field, A.dim, gens)


def special_jordan_pipeline(
    A: SuperAlgebra, J: SubSuperspace, backend: str = "auto", budget: int = DEFAULT_BUDGET,
) -> PipelineCertificate:
    _require_plus_ready(A)
    if not is_plus_closed(J):
        raise NotPlusClosed("J is not closed under the supersymmetric product")
    f = A.field
    cert = PipelineCertificate(A, J)

    def stage(name: str, ok: bool, detail=None, witness=None) -> bool:
        cert.stages.append(StageResult(len(cert.stages) + 1, name, ok, detail or {}, witness))
        return ok

    # 1. J with the supersymmetric product is a Jordan superalgebra
    Jalg, Jvecs = restrict_algebra(A, J, lambda x, y, px, py: circle(A, x, y, px, py), f"J+ in {A.name}")
    rep = check_jordan_super(Jalg)
    if not stage("jordan-closure", rep.verdict, {"dim": Jalg.dim, "report": rep.to_dict(Jalg)}):
        return cert

    # 2. Engelian hypothesis: R+_a restricted to J is nilpotent for homogeneous a in J
    eng = engel_check(Jalg, "RNilpotencyOnly", backend, budget)
    witness = None
    if not eng.verdict:
        w = eng.witness
        amb = Element.from_sparse(A, _combine(f, Jvecs, w.coords))
        witness = {"element": amb.to_strings(), "element_name": str(amb)}
    if not stage("engelian", eng.verdict, {"backend": eng.backend, "index": eng.index}, witness):
        return cert

    basis = J.homogeneous_basis()
    even = [Element.from_sparse(A, v) for p, v in basis if p == 0]
    odd = [Element.from_sparse(A, v) for p, v in basis if p == 1]

    # 3. even a: plain R_a nilpotent; phi(a) = R_a respects the Jordan product on J0
    res = span_nilpotent([plain_R(a) for a in even], f) if even else None
    phi_ok = True
    for x in even:
        for y in even:
            xy = Element.from_sparse(A, circle(A, x.sparse(), y.sparse(), 0, 0))
            Rx, Ry = plain_R(x), plain_R(y)
            if plain_R(xy) != (Rx @ Ry + Ry @ Rx).scale(f.inv(f.from_int(2))):
                phi_ok = False
    even_ok = (res is None or res.nilpotent) and phi_ok
    if not stage("even-case", even_ok, {"R_index": res.index if res else 1, "phi_homomorphism": phi_ok},
                 None if even_ok or res is None or res.nilpotent else {"coefficients": [f.format(c) for c in res.witness]}):
        return cert

    # 4. odd a: R_a^2 = R_{a^2}, and R_a nilpotent
    sq_ok = all(plain_R(a) @ plain_R(a) == plain_R(a * a) for a in odd)
    res_odd = span_nilpotent([plain_R(a) for a in odd], f) if odd else None
    odd_ok = sq_ok and (res_odd is None or res_odd.nilpotent)
    if not stage("odd-case", odd_ok, {"square_identity": sq_ok, "R_index": res_odd.index if res_odd else 1}):
        return cert

    # 5. J' generated by J inside A, and R(J') = R(J)
    Jp = generate_subalgebra_in(A, J.basis())
    cert.Jprime = Jp
    RJ = _R_algebra(A, J)
    RJp = _R_algebra(A, Jp)
    cert.RJprime_equals_RJ = RJ.space == RJp.space
    if not stage("generated-subalgebra", cert.RJprime_equals_RJ,
                 {"J_dim": J.dim, "Jprime_dim": Jp.dim, "Jprime_equals_J": Jp == J, "RJ_dim": RJ.dim}):
        return cert

    # 6. W = {R_a : a homogeneous in J} is weakly closed; alg<W> = R(J) is nilpotent
    members = even + odd
    W = WeaklyClosedSet(f, A.dim, [plain_R(a) for a in members], [0] * len(even) + [1] * len(odd),
                        [f"R[{a}]" for a in members])
    wc = weakly_closed_verify(W)
    two_circle_ok = True
    for i, a in enumerate(members):
        for j, b in enumerate(members):
            pa, pb = W.parities[i], W.parities[j]
            lhs = W.elements[i] @ W.elements[j] + (W.elements[j] @ W.elements[i]).scale(f.sign(pa * pb))
            # R_a R_b + g R_b R_a = R_{ba + g ab} = g R_{2(a o b)} with g = (-1)^{|a||b|}
            c2 = Element.from_sparse(A, circle(A, a.sparse(), b.sparse(), pa, pb)).scale(2)
            if lhs != plain_R(c2).scale(f.sign(pa * pb)):
                two_circle_ok = False
    cert.weakly_closed = wc.verdict and two_circle_ok
    detail = {"pairs": len(wc.witnesses), "lands_on": "(-1)^{|a||b|} R[2(a o b)]", "lands_on_ok": two_circle_ok}
    if not cert.weakly_closed:
        stage("weak-closure", False, detail, {"failing_pair": list(wc.failing_pair) if wc.failing_pair else None})
        return cert
    try:
        jac = jacobson_nilpotency(W)
    except HypothesisViolated as exc:
        stage("weak-closure", False, detail, {"hypothesis": str(exc)})
        return cert
    cert.RJ_nilpotent_index = jac.index
    detail.update({"alg_W_dim": jac.dim, "alg_W_equals_RJ": jac.dim == RJ.dim, "index": jac.index})
    if not stage("weak-closure", jac.nilpotent and jac.dim == RJ.dim, detail):
        return cert

    # 7. the chain construction on J' (associative, hence alternative)
    Jp_alg, _ = restrict_algebra(A, Jp, lambda x, y, px, py: A.mul_sparse(x, y), f"J' in {A.name}")
    chain = engel_chain(Jp_alg, budget)
    cert.Jprime_chain = chain
    if not stage("chain", chain.nilpotent, {"steps": len(chain.steps), "index": chain.power_series_index},
                 None if chain.nilpotent else chain.failure.to_dict()):
        return cert

    # 8. J is nilpotent under the supersymmetric product
    series = power_series(Jalg)
    cert.J_nilpotent_index = series.index
    stage("nilpotent", series.reaches_zero, {"index": series.index, "dims": series.dims()})
    return cert


def _combine(f, vecs, coeffs) -> dict:
    out: dict = {}
    for c, v in zip(coeffs, vecs):
        if c == 0:
            continue
        for k, x in v.items():
            out[k] = f.add(out.get(k, f.zero), f.mul(c, x))
    return {k: x for k, x in out.items() if x != 0}


__all__ = [
    "plus_functor", "circle", "is_plus_closed", "restrict_algebra", "plus_power_chain",
    "special_jordan_pipeline", "PipelineCertificate", "StageResult", "STAGES",
]
