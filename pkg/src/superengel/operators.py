"""Multiplication operators, operator algebras, Engel checks and weakly closed sets.

Matrices act on column coordinate vectors: column j of an operator is the
image of basis vector j, and a product ``S @ T`` applies T first.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable

from .algebra import Element, SuperAlgebra, mul, require_homogeneous
from .arith.fields import FieldSpec
from .arith.linalg import Echelon, express
from .arith.matrix import Matrix
from .arith.poly import MultiPoly, PolyRing
from .errors import (
    HypothesisViolated,
    InconsistencyError,
    NotAssociative,
    SymbolicInconclusive,
    UnsupportedMode,
)
from .structure import (
    DEFAULT_BUDGET,
    SubSuperspace,
    homogeneous_elements,
    resolve_backend,
)

KINDS = ("RightSigned", "LeftSigned", "RightPlain", "LeftPlain")


# single operators ------------------------------------------------------------

def _operator_matrix(a: Element, right: bool, signed: bool) -> Matrix:
    A = a.algebra
    f = A.field
    d = A.dim
    if a.is_zero():
        return Matrix(f, d, d)
    rows_by_basis = A.plain_right_rows if right else A.plain_left_rows
    pa = a.parity if signed else 0
    if signed and pa is None:
        pa = require_homogeneous(a)
    par = A.parity
    acc: dict = {}
    for i, ai in a.sparse().items():
        for k, row in rows_by_basis[i].items():
            out = acc.setdefault(k, {})
            for j, c in row.items():
                v = ai * c
                if right and pa and par[j]:
                    v = -v
                out[j] = out.get(j, 0) + v
    entries = {}
    for k, row in acc.items():
        for j, v in row.items():
            v = f.norm(v)
            if v != 0:
                entries[(k, j)] = v
    return Matrix(f, d, d, entries)


@dataclass(frozen=True, eq=False)
class MultOperator:
    kind: str
    source: Element
    matrix: Matrix
    parity: int

    @property
    def label(self) -> str:
        sym = "R" if self.kind.startswith("Right") else "L"
        plain = "" if self.kind.endswith("Signed") else "+"
        return f"{sym}{plain}[{self.source}]"

    def regenerate(self) -> Matrix:
        return _operator_matrix(self.source, self.kind.startswith("Right"), self.kind.endswith("Signed"))


def right_mult(a: Element, signed: bool = True) -> MultOperator:
    """Signed: y -> (-1)^{|a||y|} y a.  Plain: y -> y a."""
    p = require_homogeneous(a) if signed else (a.parity or 0)
    return MultOperator("RightSigned" if signed else "RightPlain", a, _operator_matrix(a, True, signed), p)


def left_mult(a: Element, signed: bool = True) -> MultOperator:
    """y -> a y (the left action carries no sign in either convention)."""
    p = require_homogeneous(a) if signed else (a.parity or 0)
    return MultOperator("LeftSigned" if signed else "LeftPlain", a, _operator_matrix(a, False, signed), p)


def R(a: Element) -> Matrix:
    return _operator_matrix(a, True, True)


def L(a: Element) -> Matrix:
    return _operator_matrix(a, False, False)


def plain_R(a: Element) -> Matrix:
    return _operator_matrix(a, True, False)


# operator spaces ---------------------------------------------------------------

def _flatten(M: Matrix) -> dict:
    n = M.ncols
    return {r * n + c: v for (r, c), v in M.entries().items()}


class OperatorSpace:
    """A subspace of End(A) = d x d matrices, kept in reduced echelon form on d^2 coordinates."""

    __slots__ = ("field", "d", "echelon", "_mats")

    def __init__(self, field_: FieldSpec, d: int, matrices=()):
        self.field = field_
        self.d = d
        self.echelon = Echelon(field_, d * d)
        self._mats = None
        for M in matrices:
            self.add(M)

    def add(self, M: Matrix) -> bool:
        grew = self.echelon.add(_flatten(M))
        if grew:
            self._mats = None
        return grew

    def copy(self) -> OperatorSpace:
        s = OperatorSpace(self.field, self.d)
        s.echelon = self.echelon.copy()
        return s

    @property
    def dim(self) -> int:
        return self.echelon.rank

    def is_zero(self) -> bool:
        return self.dim == 0

    def contains(self, M: Matrix) -> bool:
        return self.echelon.contains(_flatten(M))

    __contains__ = contains

    def basis(self) -> list[Matrix]:
        if self._mats is None:
            d = self.d
            self._mats = [
                Matrix(self.field, d, d, {divmod(k, d): v for k, v in row.items()})
                for row in self.echelon.basis()
            ]
        return self._mats

    def times(self, other) -> OperatorSpace:
        """span{S T : S in self, T in other} (other: a space or a list of matrices)."""
        right = other.basis() if isinstance(other, OperatorSpace) else list(other)
        out = OperatorSpace(self.field, self.d)
        for S in self.basis():
            for T in right:
                P = S @ T
                if not P.is_zero():
                    out.add(P)
        return out

    def __add__(self, other: OperatorSpace) -> OperatorSpace:
        out = self.copy()
        for M in other.basis():
            out.add(M)
        return out

    def __le__(self, other: OperatorSpace) -> bool:
        return other.echelon.contains_span(self.echelon)

    def __eq__(self, other):
        if not isinstance(other, OperatorSpace):
            return NotImplemented
        return self.d == other.d and self.echelon == other.echelon

    def __hash__(self):
        return hash((self.d, self.dim))

    def __repr__(self):
        return f"OperatorSpace(dim {self.dim} in End of dim {self.d})"


@dataclass(eq=False)
class OperatorAlgebra:
    """Associative algebra of operators generated by labelled matrices."""

    space: OperatorSpace
    generators: list[Matrix]
    labels: list[str] = field(default_factory=list)

    @property
    def dim(self) -> int:
        return self.space.dim

    def verify_closure(self) -> bool:
        return self.space.times(self.space) <= self.space

    @cached_property
    def nilpotency(self) -> NilpotencyResult:
        return algebra_nilpotency(self)


def generate_operator_algebra(field_: FieldSpec, d: int, generators, labels=()) -> OperatorAlgebra:
    """Span of all nonempty words in the generators: V <- V + V.G until stable."""
    gens = [g for g in generators]
    V = OperatorSpace(field_, d, gens)
    live = [g for g in gens if not g.is_zero()]
    frontier = V.copy()
    while not frontier.is_zero():
        new = OperatorSpace(field_, d)
        for S in frontier.basis():
            for T in live:
                P = S @ T
                if not P.is_zero() and V.add(P):
                    new.add(P)
        frontier = new
    return OperatorAlgebra(V, gens, list(labels))


def mult_superalgebra(B: SubSuperspace) -> OperatorAlgebra:
    """B*_s: generated by signed R_b and L_b over the homogeneous echelon basis of B."""
    A = B.algebra
    gens, labels = [], []
    for b in B.basis():
        gens += [R(b), L(b)]
        labels += [f"R[{b}]", f"L[{b}]"]
    return generate_operator_algebra(A.field, A.dim, gens, labels)


@dataclass(frozen=True)
class NilpotencyResult:
    nilpotent: bool
    index: int | None
    dims: tuple[int, ...]  # dims of W, W^2, ...


def algebra_nilpotency(W: OperatorAlgebra) -> NilpotencyResult:
    """W^1 = W, W^{k+1} = W^k G; nilpotent of index n when W^n = 0 and W^{n-1} != 0."""
    cur = W.space
    dims = [cur.dim]
    if cur.is_zero():
        return NilpotencyResult(True, 1, tuple(dims))
    gens = [g for g in W.generators if not g.is_zero()]
    k = 1
    while True:
        nxt = cur.times(gens)
        k += 1
        dims.append(nxt.dim)
        if nxt.is_zero():
            return NilpotencyResult(True, k, tuple(dims))
        if nxt == cur:
            return NilpotencyResult(False, None, tuple(dims))
        cur = nxt


def space_power(generators: OperatorSpace, n: int) -> OperatorSpace:
    """span of all products of n elements of the given space."""
    cur = generators
    for _ in range(n - 1):
        if cur.is_zero():
            break
        cur = cur.times(generators)
    return cur


# nilpotency of single matrices and of whole spans -------------------------------

def matrix_nilpotency_index(M: Matrix) -> int | None:
    return M.nilpotency_index()


def stable_rank_power(M: Matrix) -> tuple[int, int]:
    """Minimal p with rank(M^p) = rank(M^{p+1}), and that rank."""
    P = M
    r = P.rank()
    p = 1
    while True:
        Q = P @ M
        r2 = Q.rank()
        if r2 == r:
            return p, r
        P, r, p = Q, r2, p + 1


@dataclass(frozen=True)
class SpanNilpotency:
    nilpotent: bool
    index: int | None  # smallest k with every combination's k-th power zero
    witness: tuple | None = None  # coefficients of a non-nilpotent combination


def generic_combination(matrices: list[Matrix], field_: FieldSpec, prefix: str = "c") -> tuple[PolyRing, Matrix]:
    ring = PolyRing(field_, tuple(f"{prefix}{i}" for i in range(len(matrices))))
    d = matrices[0].nrows
    acc: dict = {}
    for n, M in enumerate(matrices):
        for rc, v in M.entries().items():
            t = acc.setdefault(rc, {})
            t[(n,)] = v
    return ring, Matrix(ring, d, matrices[0].ncols, {rc: MultiPoly(ring, t) for rc, t in acc.items()})


def span_nilpotent(matrices: list[Matrix], field_: FieldSpec) -> SpanNilpotency:
    """Is every linear combination of the matrices nilpotent?

    Exact: the generic combination M(c) satisfies M(c)^d = 0 as a polynomial
    identity iff every specialisation is nilpotent.  A failing case returns a
    rational specialisation when one exists, else raises SymbolicInconclusive.
    """
    mats = [M for M in matrices if not M.is_zero()]
    if not mats:
        return SpanNilpotency(True, 1)
    d = mats[0].nrows
    ring, G = generic_combination(mats, field_)
    P = G
    for k in range(1, d + 1):
        if P.is_zero():
            return SpanNilpotency(True, k)
        if k == d:
            break
        P = P @ G
    # not nilpotent generically
    for v in P.entries().values():
        point = v.nonvanishing_point()
        if point is not None:
            coeffs = tuple(point[i] if i < len(point) else field_.zero for i in range(len(mats)))
            return SpanNilpotency(False, None, _lift_coeffs(matrices, mats, coeffs, field_))
    raise SymbolicInconclusive("generic combination is not nilpotent but no rational witness was found")


def _lift_coeffs(all_mats, used, coeffs, f):
    out = []
    it = iter(coeffs)
    for M in all_mats:
        out.append(f.zero if M.is_zero() else next(it))
    return tuple(out)


# operator identities ---------------------------------------------------------------

OPERATOR_IDENTITIES = ("RR", "LL", "LR-left", "LR-right")


@dataclass(frozen=True)
class OperatorIdentityReport:
    verdict: bool
    failed: str | None = None
    pair: tuple[int, int] | None = None  # basis indices (y, z)
    defect: Matrix | None = None
    expected_to_fail: bool = False

    def replay(self, A: SuperAlgebra) -> Matrix | None:
        if self.verdict:
            return None
        y, z = (A.basis_element(i) for i in self.pair)
        return operator_identity_defects(y, z)[self.failed]


def operator_identity_defects(y: Element, z: Element) -> dict[str, Matrix]:
    """Left side minus right side of the four operator identities for homogeneous y, z."""
    f = y.algebra.field
    s = f.sign(require_homogeneous(y) * require_homogeneous(z))
    zy, yz = mul(z, y), mul(y, z)
    Ry, Rz, Ly, Lz = R(y), R(z), L(y), L(z)
    Rzy, Ryz, Lzy, Lyz = R(zy), R(yz), L(zy), L(yz)
    return {
        "RR": Rz @ Ry - (Rzy + (Ryz - Ry @ Rz).scale(s)),
        "LL": Lz @ Ly - (Lzy + (Lyz - Ly @ Lz).scale(s)),
        "LR-left": Ly @ Rz - ((Rz @ Ly).scale(s) + Lyz - Ly @ Lz),
        "LR-right": Ly @ Rz - ((Rz @ Ly + Rz @ Ry).scale(s) - Ryz),
    }


def check_operator_identities(A: SuperAlgebra) -> OperatorIdentityReport:
    """The four operator identities of alternative superalgebras on all basis pairs."""
    from .identities import check_alternative_super

    expected_fail = not check_alternative_super(A).verdict
    d = A.dim
    for yi in range(d):
        y = A.basis_element(yi)
        for zi in range(d):
            z = A.basis_element(zi)
            defects = operator_identity_defects(y, z)
            for name in OPERATOR_IDENTITIES:
                if not defects[name].is_zero():
                    return OperatorIdentityReport(False, name, (yi, zi), defects[name], expected_fail)
    return OperatorIdentityReport(True, expected_to_fail=expected_fail)


# Engel checks -------------------------------------------------------------------

@dataclass(frozen=True)
class EngelElementResult:
    engelian: bool
    index: int | None
    dim: int


def engel_element_check(a: Element) -> EngelElementResult:
    """Nilpotency of the operator algebra generated by signed R_a and L_a."""
    A = a.algebra
    W = generate_operator_algebra(A.field, A.dim, [R(a), L(a)], [f"R[{a}]", f"L[{a}]"])
    res = algebra_nilpotency(W)
    return EngelElementResult(res.nilpotent, res.index, W.dim)


@dataclass(frozen=True)
class EngelResult:
    verdict: bool
    mode: str
    backend: str
    witness: Element | None = None
    index: int | None = None  # max nilpotency index of R_a (or of the Engel algebra)

    def to_dict(self) -> dict:
        out = {"verdict": self.verdict, "mode": self.mode, "backend": self.backend, "index": self.index}
        if self.witness is not None:
            out["witness"] = str(self.witness)
            out["witness_coords"] = self.witness.to_strings()
        return out


MODES = ("RNilpotencyOnly", "FullEngel")


def _norm_mode(mode: str) -> str:
    for m in MODES:
        if m.lower() == mode.lower().replace("-", "").replace("_", ""):
            return m
    aliases = {"r": "RNilpotencyOnly", "rnil": "RNilpotencyOnly", "full": "FullEngel"}
    if mode.lower() in aliases:
        return aliases[mode.lower()]
    raise ValueError(f"unknown Engel mode {mode!r}")


def engel_check(
    A: SuperAlgebra,
    mode: str = "RNilpotencyOnly",
    backend: str = "auto",
    budget: int = DEFAULT_BUDGET,
) -> EngelResult:
    mode = _norm_mode(mode)
    if mode == "FullEngel" and backend.lower() == "symbolic":
        raise UnsupportedMode("FullEngel is only decided by enumeration")
    which = resolve_backend(A, backend, budget)
    if mode == "FullEngel" and which == "symbolic":
        raise UnsupportedMode("FullEngel is only decided by enumeration; no finite enumeration fits")

    if which == "enumerate":
        worst = 1
        witness = None
        for par in (0, 1):
            for a in homogeneous_elements(A, par):
                if mode == "RNilpotencyOnly":
                    idx = R(a).nilpotency_index()
                else:
                    idx = engel_element_check(a).index
                if idx is None:
                    if witness is None or a.coords < witness.coords:
                        witness = a
                    break
                worst = max(worst, idx)
        if witness is not None:
            return EngelResult(False, mode, which, witness)
        return EngelResult(True, mode, which, None, worst)

    # symbolic: signed R of a generic even and a generic odd element
    d = A.dim
    worst = 1
    witnesses = []
    for par in (0, 1):
        idx = A.indices_of_parity(par)
        if not idx:
            continue
        mats = [R(A.basis_element(i)) for i in idx]
        res = span_nilpotent(mats, A.field)
        if res.nilpotent:
            worst = max(worst, res.index)
        else:
            witnesses.append(Element.from_sparse(A, {i: c for i, c in zip(idx, res.witness) if c != 0}))
    if witnesses:
        return EngelResult(False, mode, which, min(witnesses, key=lambda e: e.coords))
    return EngelResult(True, mode, which, None, worst if d else 1)


# weakly closed sets ---------------------------------------------------------------

def super_gamma(pa: int, pb: int, f: FieldSpec):
    return f.sign(pa * pb)


@dataclass
class WeaklyClosedSet:
    """Labelled operators with parities and a scalar rule gamma(parity a, parity b).

    Membership of ab + gamma ba is tested in the span of the members whose
    parity is |a| + |b|; a single parity class reduces to the usual span test.
    """

    field: FieldSpec
    d: int
    elements: list[Matrix]
    parities: list[int]
    labels: list[str]
    gamma: Callable = super_gamma
    closure_witnesses: dict = field(default_factory=dict)

    def span(self, parity: int | None = None) -> list[Matrix]:
        return [M for M, p in zip(self.elements, self.parities) if parity is None or p == parity]


@dataclass(frozen=True)
class WeakClosureResult:
    verdict: bool
    failing_pair: tuple[int, int] | None = None
    witnesses: dict = field(default_factory=dict)


def weakly_closed_verify(W: WeaklyClosedSet) -> WeakClosureResult:
    f, d = W.field, W.d
    n = len(W.elements)
    witnesses = {}
    spans = {}
    for p in set(W.parities):
        target = [M for M, q in zip(W.elements, W.parities) if q == p]
        spans[p] = target
    for i in range(n):
        for j in range(i, n):
            a, b = W.elements[i], W.elements[j]
            pa, pb = W.parities[i], W.parities[j]
            g = f.coerce(W.gamma(pa, pb, f))
            S = a @ b + (b @ a).scale(g)
            pc = (pa + pb) % 2
            members = spans.get(pc, [])
            if S.is_zero():
                witnesses[(i, j)] = ()
                continue
            coeffs = express(f, [_flatten(M) for M in members], _flatten(S), d * d) if members else None
            if coeffs is None:
                return WeakClosureResult(False, (i, j), witnesses)
            idx = [k for k, q in enumerate(W.parities) if q == pc]
            witnesses[(i, j)] = tuple((idx[t], c) for t, c in enumerate(coeffs) if c != 0)
    W.closure_witnesses = witnesses
    return WeakClosureResult(True, None, witnesses)


@dataclass(frozen=True)
class JacobsonResult:
    nilpotent: bool
    index: int | None
    dim: int


def jacobson_nilpotency(W: WeaklyClosedSet, check_span: bool = True) -> JacobsonResult:
    """alg<W> for a weakly closed set of nilpotent operators; nilpotent by Jacobson's theorem.

    Hypotheses are checked: weak closure, and nilpotency of every member
    (each parity class is a subspace, so the generic combination is tested).
    """
    wc = weakly_closed_verify(W)
    if not wc.verdict:
        raise HypothesisViolated("set is not weakly closed", witness=wc.failing_pair)
    for n, M in enumerate(W.elements):
        if M.nilpotency_index() is None:
            raise HypothesisViolated(f"member {W.labels[n] if n < len(W.labels) else n} is not nilpotent", witness=n)
    if check_span:
        for p in sorted(set(W.parities)):
            res = span_nilpotent(W.span(p), W.field)
            if not res.nilpotent:
                raise HypothesisViolated(f"a parity-{p} combination is not nilpotent", witness=res.witness)
    alg = generate_operator_algebra(W.field, W.d, W.elements, W.labels)
    res = algebra_nilpotency(alg)
    if not res.nilpotent:
        raise InconsistencyError("weakly closed set of nilpotent operators generates a non-nilpotent algebra")
    return JacobsonResult(True, res.index, alg.dim)


# plain right multiplications in associative algebras -------------------------------

@dataclass(frozen=True)
class PowerIdentityResult:
    holds: bool
    failing_k: int | None = None


def plain_R_power_identity(a: Element) -> PowerIdentityResult:
    """Plain R_a^k = R_{a^k} for k = 1..dim (so in particular R_a^2 = R_{a^2})."""
    from .identities import check_superassociative

    A = a.algebra
    if not check_superassociative(A).verdict:
        raise NotAssociative(f"{A.name} is not associative")
    Ra = plain_R(a)
    P = Ra
    x = a
    for k in range(1, max(A.dim, 2) + 1):
        if P != plain_R(x):
            return PowerIdentityResult(False, k)
        P = P @ Ra
        x = mul(x, a)
    return PowerIdentityResult(True)


def plain_R_product_identity(elements: list[Element]) -> bool:
    """R_{a1 a2 ... ak} = R_{ak} ... R_{a2} R_{a1} for plain operators."""
    prod = elements[0]
    for e in elements[1:]:
        prod = mul(prod, e)
    rhs = plain_R(elements[0])
    for e in elements[1:]:
        rhs = plain_R(e) @ rhs
    return plain_R(prod) == rhs


__all__ = [
    "MultOperator", "right_mult", "left_mult", "R", "L", "plain_R", "OperatorSpace", "OperatorAlgebra",
    "generate_operator_algebra", "mult_superalgebra", "algebra_nilpotency", "NilpotencyResult",
    "space_power", "stable_rank_power", "span_nilpotent", "SpanNilpotency", "check_operator_identities",
    "operator_identity_defects", "OperatorIdentityReport", "engel_element_check", "engel_check",
    "EngelResult", "WeaklyClosedSet", "weakly_closed_verify", "jacobson_nilpotency",
    "plain_R_power_identity", "plain_R_product_identity",
]
