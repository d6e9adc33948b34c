"""Graded subspaces, power and derived series, normalizers, element nilpotency."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct

from .algebra import Element, SuperAlgebra, generic_element, mul, right_power, specialize
from .arith.linalg import Echelon, dense, intersect, kernel, sparse
from .arith.poly import MultiPoly
from .errors import (
    AlgebraMismatch,
    BudgetExceeded,
    NotASubalgebra,
    NotGraded,
    SymbolicInconclusive,
)

DEFAULT_BUDGET = 10**6


class SubSuperspace:
    """A graded subspace, kept as one reduced-echelon basis per parity."""

    __slots__ = ("algebra", "even", "odd")

    def __init__(self, algebra: SuperAlgebra, even: Echelon, odd: Echelon):
        self.algebra = algebra
        self.even = even
        self.odd = odd

    # constructors
    @classmethod
    def zero(cls, algebra: SuperAlgebra) -> SubSuperspace:
        f, d = algebra.field, algebra.dim
        return cls(algebra, Echelon(f, d), Echelon(f, d))

    @classmethod
    def whole(cls, algebra: SuperAlgebra) -> SubSuperspace:
        one = algebra.field.one
        return cls.graded_hull(algebra, [{i: one} for i in range(algebra.dim)])

    @classmethod
    def graded_hull(cls, algebra: SuperAlgebra, vectors) -> SubSuperspace:
        """Span of the homogeneous components of the given vectors."""
        s = cls.zero(algebra)
        for v in vectors:
            s._insert(v)
        return s

    @classmethod
    def from_vectors(cls, algebra: SuperAlgebra, vectors) -> SubSuperspace:
        """Span of the vectors; raises NotGraded if that span is not graded."""
        vecs = [_as_sparse(v) for v in vectors]
        span = Echelon(algebra.field, algebra.dim, vecs)
        par = algebra.parity
        for v in vecs:
            ev = {i: x for i, x in v.items() if par[i] == 0}
            if not span.contains(ev):
                raise NotGraded(
                    f"span is not graded: the even part of {dense(v, algebra.dim)} is not in it",
                    vector=v,
                )
        return cls.graded_hull(algebra, vecs)

    @classmethod
    def span_of(cls, algebra: SuperAlgebra, elements) -> SubSuperspace:
        return cls.graded_hull(algebra, [e.sparse() for e in elements])

    def _insert(self, v) -> bool:
        v = _as_sparse(v)
        par = self.algebra.parity
        ev = {i: x for i, x in v.items() if par[i] == 0}
        od = {i: x for i, x in v.items() if par[i] == 1}
        grew = False
        if ev:
            grew |= self.even.add(ev)
        if od:
            grew |= self.odd.add(od)
        return grew

    def copy(self) -> SubSuperspace:
        return SubSuperspace(self.algebra, self.even.copy(), self.odd.copy())

    # views
    @property
    def dim(self) -> int:
        return self.even.rank + self.odd.rank

    @property
    def dims(self) -> tuple[int, int]:
        return (self.even.rank, self.odd.rank)

    def is_zero(self) -> bool:
        return self.dim == 0

    @property
    def even_basis(self) -> tuple[tuple, ...]:
        return self.even.dense_basis()

    @property
    def odd_basis(self) -> tuple[tuple, ...]:
        return self.odd.dense_basis()

    def homogeneous_basis(self) -> list[tuple[int, dict]]:
        """(parity, sparse vector) pairs: even echelon rows first, then odd."""
        return [(0, r) for r in self.even.basis()] + [(1, r) for r in self.odd.basis()]

    def basis(self) -> list[Element]:
        return [Element.from_sparse(self.algebra, v) for _, v in self.homogeneous_basis()]

    def contains(self, x) -> bool:
        v = x.sparse() if isinstance(x, Element) else _as_sparse(x)
        par = self.algebra.parity
        ev = {i: a for i, a in v.items() if par[i] == 0}
        od = {i: a for i, a in v.items() if par[i] == 1}
        return self.even.contains(ev) and self.odd.contains(od)

    __contains__ = contains

    def reduce(self, x) -> dict:
        """Remainder modulo the subspace (canonical representative)."""
        v = x.sparse() if isinstance(x, Element) else _as_sparse(x)
        par = self.algebra.parity
        ev = self.even.reduce({i: a for i, a in v.items() if par[i] == 0})
        ev.update(self.odd.reduce({i: a for i, a in v.items() if par[i] == 1}))
        return ev

    def _check(self, other: SubSuperspace):
        if other.algebra is not self.algebra and other.algebra != self.algebra:
            raise AlgebraMismatch("subspaces of different algebras")

    # lattice operations
    def __add__(self, other: SubSuperspace) -> SubSuperspace:
        self._check(other)
        out = self.copy()
        for _, v in other.homogeneous_basis():
            out._insert(v)
        return out

    def __and__(self, other: SubSuperspace) -> SubSuperspace:
        self._check(other)
        f, d = self.algebra.field, self.algebra.dim
        return SubSuperspace(
            self.algebra,
            intersect(f, self.even.basis(), other.even.basis(), d),
            intersect(f, self.odd.basis(), other.odd.basis(), d),
        )

    def __mul__(self, other: SubSuperspace) -> SubSuperspace:
        """U.V: span of u v over homogeneous basis pairs."""
        self._check(other)
        A = self.algebra
        out = SubSuperspace.zero(A)
        right = other.homogeneous_basis()
        for pu, u in self.homogeneous_basis():
            for pv, v in right:
                w = A.mul_sparse(u, v)
                if w:
                    (out.odd if (pu + pv) % 2 else out.even).add(w)
        return out

    def __le__(self, other: SubSuperspace) -> bool:
        self._check(other)
        return other.even.contains_span(self.even) and other.odd.contains_span(self.odd)

    def __eq__(self, other):
        if not isinstance(other, SubSuperspace):
            return NotImplemented
        return self.even == other.even and self.odd == other.odd

    def __hash__(self):
        return hash((self.even_basis, self.odd_basis))

    def is_subalgebra(self) -> bool:
        return (self * self) <= self

    def with_element(self, x) -> SubSuperspace:
        out = self.copy()
        out._insert(x.sparse() if isinstance(x, Element) else x)
        return out

    def to_strings(self) -> dict:
        f = self.algebra.field
        return {
            "even": [[f.format(c) for c in row] for row in self.even_basis],
            "odd": [[f.format(c) for c in row] for row in self.odd_basis],
        }

    def __repr__(self):
        names = ", ".join(str(e) for e in self.basis())
        return f"SubSuperspace({self.dims[0]}|{self.dims[1]}: {{{names}}})"


def _as_sparse(v) -> dict:
    if isinstance(v, dict):
        return {i: x for i, x in v.items() if x != 0}
    if isinstance(v, Element):
        return v.sparse()
    return sparse(v)


# series

@dataclass(frozen=True)
class SeriesReport:
    kind: str  # "PowerSeries" or "DerivedSeries"
    start: int  # index of chain[0]: 1 for powers, 0 for derived
    chain: tuple[SubSuperspace, ...]
    verdict: str  # "ReachesZero" or "Stabilizes"
    index: int | None  # n with chain term n zero, when ReachesZero

    @property
    def reaches_zero(self) -> bool:
        return self.verdict == "ReachesZero"

    def term(self, n: int) -> SubSuperspace:
        return self.chain[n - self.start]

    @property
    def stable(self) -> SubSuperspace | None:
        return None if self.reaches_zero else self.chain[-1]

    def dims(self) -> list[int]:
        return [s.dim for s in self.chain]


def power_chain(V: SubSuperspace, kind: str = "PowerSeries") -> SeriesReport:
    """V^1 = V, V^k = sum_{i+j=k} V^i V^j, until zero or a stable run.

    Equal consecutive terms do not suffice without associativity.  If
    V^m = ... = V^{2m}, every summand V^i V^{2m-i} of V^{2m} has a factor
    inside the constant run, so V^{2m+1} = V^{2m} and the chain is constant.
    """
    powers = [None, V]
    if V.is_zero():
        return SeriesReport(kind, 1, (V,), "ReachesZero", 1)
    k = 1
    run_start = 1
    while True:
        k += 1
        nxt = SubSuperspace.zero(V.algebra)
        for i in range(1, k):
            nxt = nxt + powers[i] * powers[k - i]
        powers.append(nxt)
        if nxt.is_zero():
            return SeriesReport(kind, 1, tuple(powers[1:]), "ReachesZero", k)
        if nxt != powers[k - 1]:
            run_start = k
        elif k >= 2 * run_start:
            return SeriesReport(kind, 1, tuple(powers[1:]), "Stabilizes", None)


def power_series(A: SuperAlgebra) -> SeriesReport:
    return power_chain(SubSuperspace.whole(A))


def derived_series(A: SuperAlgebra) -> SeriesReport:
    cur = SubSuperspace.whole(A)
    chain = [cur]
    if cur.is_zero():
        return SeriesReport("DerivedSeries", 0, tuple(chain), "ReachesZero", 0)
    while True:
        nxt = cur * cur
        chain.append(nxt)
        if nxt.is_zero():
            return SeriesReport("DerivedSeries", 0, tuple(chain), "ReachesZero", len(chain) - 1)
        if nxt == cur:
            return SeriesReport("DerivedSeries", 0, tuple(chain), "Stabilizes", None)
        cur = nxt


def is_nilpotent(A: SuperAlgebra) -> bool:
    return power_series(A).reaches_zero


def nilpotency_index(A: SuperAlgebra) -> int | None:
    return power_series(A).index


# normalizer and generated subalgebras

def graded_normalizer(B: SubSuperspace) -> SubSuperspace:
    """N(B) = {x : xB in B and Bx in B}, solved per parity as a linear system."""
    A = B.algebra
    if not B.is_subalgebra():
        raise NotASubalgebra("the normalizer is only defined here for subsuperalgebras")
    f = A.field
    basis = [v for _, v in B.homogeneous_basis()]
    out = SubSuperspace.zero(A)
    for par in (0, 1):
        idx = A.indices_of_parity(par)
        if not idx:
            continue
        columns = []
        for i in idx:
            xi = {i: f.one}
            col: dict = {}
            for n, b in enumerate(basis):
                for side, w in enumerate((A.mul_sparse(xi, b), A.mul_sparse(b, xi))):
                    for k, c in B.reduce(w).items():
                        col[(n, side, k)] = c
            columns.append(col)
        keys = sorted({key for col in columns for key in col})
        rows = [[col.get(key, f.zero) for col in columns] for key in keys]
        if rows:
            sols = kernel(f, rows, len(idx))
        else:
            sols = [tuple(f.one if t == s else f.zero for t in range(len(idx))) for s in range(len(idx))]
        for sol in sols:
            out._insert({i: c for i, c in zip(idx, sol) if c != 0})
    return out


def generate_subalgebra(elements) -> SubSuperspace | None:
    """Smallest product-closed graded subspace containing the elements."""
    elements = list(elements)
    if not elements:
        raise ValueError("need the ambient algebra; use generate_subalgebra_in")
    return generate_subalgebra_in(elements[0].algebra, elements)


def generate_subalgebra_in(A: SuperAlgebra, elements) -> SubSuperspace:
    V = SubSuperspace.span_of(A, elements)
    return close_under_product(V)


def close_under_product(V: SubSuperspace) -> SubSuperspace:
    """Fixpoint of V <- V + V.V."""
    while True:
        P = V * V
        if P <= V:
            return V
        V = V + P


# element nilpotency

@dataclass(frozen=True)
class ElementNilpotency:
    nilpotent: bool
    subalgebra_index: int | None  # None means infinity
    right_power_index: int | None


def right_power_index(a: Element) -> int | None:
    """Smallest k with a^[k] = 0; a^[k+1] = R_a^k a, so k <= dim + 1 or never."""
    d = a.algebra.dim
    x = a
    for k in range(1, d + 2):
        if x.is_zero():
            return k
        x = mul(x, a)
    return None


def element_nilpotent(a: Element) -> ElementNilpotency:
    S = generate_subalgebra_in(a.algebra, [a])
    series = power_chain(S)
    return ElementNilpotency(series.reaches_zero, series.index, right_power_index(a))


def homogeneous_elements(A: SuperAlgebra, parity: int):
    """All nonzero homogeneous elements of one parity, in lexicographic coordinate order."""
    f = A.field
    idx = A.indices_of_parity(parity)
    for values in iproduct(f.elements(), repeat=len(idx)):
        if any(values):
            yield Element.from_sparse(A, {i: v for i, v in zip(idx, values) if v != 0})


def enumeration_size(A: SuperAlgebra) -> int:
    p = A.field.p
    return p ** len(A.even_indices) + p ** len(A.odd_indices)


def resolve_backend(A: SuperAlgebra, backend: str, budget: int) -> str:
    backend = backend.lower()
    if backend == "auto":
        if A.field.is_finite and enumeration_size(A) <= budget:
            return "enumerate"
        return "symbolic"
    if backend == "enumerate":
        if not A.field.is_finite:
            raise BudgetExceeded("enumeration needs a finite field")
        if enumeration_size(A) > budget:
            raise BudgetExceeded(f"{enumeration_size(A)} homogeneous elements exceed budget {budget}")
        return "enumerate"
    if backend == "symbolic":
        return "symbolic"
    raise ValueError(f"unknown backend {backend!r}")


@dataclass(frozen=True)
class GradedNilResult:
    verdict: bool
    index: int | None  # max nilpotency index over homogeneous elements when graded-nil
    witness: Element | None
    backend: str
    flag: str = ""


def graded_nil_check(A: SuperAlgebra, backend: str = "auto", budget: int = DEFAULT_BUDGET) -> GradedNilResult:
    which = resolve_backend(A, backend, budget)
    if which == "enumerate":
        worst = 1
        witness = None
        for par in (0, 1):
            for a in homogeneous_elements(A, par):
                res = element_nilpotent(a)
                if not res.nilpotent:
                    if witness is None or a.coords < witness.coords:
                        witness = a
                    break  # later elements of this parity are lexicographically larger
                worst = max(worst, res.subalgebra_index)
        if witness is not None:
            return GradedNilResult(False, None, witness, which)
        return GradedNilResult(True, worst if A.dim else 2, None, which)

    # symbolic: right powers of a generic even and a generic odd element
    d = A.dim
    worst = 1
    witnesses = []
    for par in (0, 1):
        if not A.indices_of_parity(par):
            continue
        ring, X = generic_element(A, par)
        P = X
        index = None
        for k in range(1, d + 2):
            if not P:
                index = k
                break
            P = A.mul_poly(P, X)
        if index is None:
            point = None
            for t in P.values():
                point = MultiPoly._raw(ring, t).nonvanishing_point()
                if point is not None:
                    break
            if point is None:
                raise SymbolicInconclusive(
                    f"generic parity-{par} element has non-vanishing right powers, "
                    f"but no {A.field}-rational specialisation was found"
                )
            witnesses.append(specialize(A, ring, X, point))
        else:
            worst = max(worst, index)
    if witnesses:
        w = min(witnesses, key=lambda e: e.coords)
        return GradedNilResult(False, None, w, which, "symbolic-right-power")
    return GradedNilResult(True, max(worst, 2), None, which, "symbolic-right-power")


__all__ = [
    "SubSuperspace", "SeriesReport", "power_chain", "power_series", "derived_series",
    "graded_normalizer", "generate_subalgebra", "generate_subalgebra_in", "close_under_product",
    "ElementNilpotency", "element_nilpotent", "right_power", "right_power_index",
    "homogeneous_elements", "graded_nil_check", "GradedNilResult", "is_nilpotent",
    "nilpotency_index", "resolve_backend", "enumeration_size", "DEFAULT_BUDGET",
]
