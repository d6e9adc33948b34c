"""Finite-dimensional superalgebras given by structure constants."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .arith.fields import FieldSpec
from .arith.poly import MultiPoly, PolyRing, mul_terms_into, normalize_terms
from .errors import AlgebraMismatch, NotHomogeneous, ValidationError


@dataclass(frozen=True)
class Issue:
    kind: str  # GradingViolation, DuplicateEntry, ZeroCoefficient, BadIndex, Shape
    entry: tuple | None
    message: str

    def __str__(self):
        return f"{self.kind}: {self.message}"


@dataclass(frozen=True)
class ValidationReport:
    issues: tuple[Issue, ...]

    @property
    def ok(self) -> bool:
        return not self.issues

    def kinds(self) -> set[str]:
        return {i.kind for i in self.issues}

    def raise_if_invalid(self):
        if self.issues:
            raise ValidationError(self.issues)


@dataclass(frozen=True, eq=False)
class SuperAlgebra:
    """A = A0 + A1 with basis x_0..x_{d-1}; ``table`` holds (i, j, k, c) for x_i x_j += c x_k.

    Construction does not validate; call :meth:`validate` (the file parser and
    the corpus builders do).
    """

    name: str
    field: FieldSpec
    parity: tuple[int, ...]
    table: tuple[tuple[int, int, int, object], ...] = ()
    basis_names: tuple[str, ...] | None = None
    meta: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "parity", tuple(int(p) for p in self.parity))
        f = self.field
        table = tuple(
            (int(i), int(j), int(k), f.coerce(c)) for (i, j, k, c) in self.table
        )
        object.__setattr__(self, "table", table)
        if self.basis_names is None:
            object.__setattr__(self, "basis_names", tuple(f"x{i}" for i in range(len(self.parity))))
        else:
            object.__setattr__(self, "basis_names", tuple(self.basis_names))

    @classmethod
    def from_products(cls, name, field, parity, products: dict, basis_names=None) -> SuperAlgebra:
        """Build from {(i, j): {k: c}} keeping only nonzero coefficients."""
        table = []
        for (i, j), out in sorted(products.items()):
            for k, c in sorted(out.items()):
                c = field.coerce(c)
                if c != 0:
                    table.append((i, j, k, c))
        return cls(name, field, tuple(parity), tuple(table), basis_names)

    @property
    def dim(self) -> int:
        return len(self.parity)

    @cached_property
    def even_indices(self) -> tuple[int, ...]:
        return tuple(i for i, p in enumerate(self.parity) if p == 0)

    @cached_property
    def odd_indices(self) -> tuple[int, ...]:
        return tuple(i for i, p in enumerate(self.parity) if p == 1)

    def indices_of_parity(self, p: int) -> tuple[int, ...]:
        return self.odd_indices if p else self.even_indices

    def with_name(self, name: str) -> SuperAlgebra:
        return SuperAlgebra(name, self.field, self.parity, self.table, self.basis_names, dict(self.meta))

    # validation
    def validate(self) -> ValidationReport:
        issues = []
        d = self.dim
        if any(p not in (0, 1) for p in self.parity):
            issues.append(Issue("Shape", None, "parity entries must be 0 or 1"))
        if len(self.basis_names) != d:
            issues.append(Issue("Shape", None, f"{len(self.basis_names)} basis names for dimension {d}"))
        seen = set()
        for entry in self.table:
            i, j, k, c = entry
            key = (i, j, k)
            if not all(0 <= t < d for t in key):
                issues.append(Issue("BadIndex", key, f"index out of range in {key}"))
                continue
            if key in seen:
                issues.append(Issue("DuplicateEntry", key, f"entry {key} given twice"))
            seen.add(key)
            if c == 0:
                issues.append(Issue("ZeroCoefficient", key, f"zero coefficient at {key}"))
            if self.parity[k] != (self.parity[i] + self.parity[j]) % 2:
                ni, nj, nk = (self.basis_names[t] if t < len(self.basis_names) else str(t) for t in key)
                issues.append(Issue(
                    "GradingViolation", key,
                    f"{ni}*{nj} has a component on {nk} of the wrong parity",
                ))
        return ValidationReport(tuple(issues))

    # products
    @cached_property
    def _left(self) -> dict[int, dict[int, list[tuple[int, object]]]]:
        left: dict = {}
        f = self.field
        for i, j, k, c in self.table:
            row = left.setdefault(i, {}).setdefault(j, [])
            for n, (k2, c2) in enumerate(row):
                if k2 == k:
                    row[n] = (k, f.add(c2, c))
                    break
            else:
                row.append((k, c))
        return left

    def product_of_basis(self, i: int, j: int) -> dict:
        return {k: c for k, c in self._left.get(i, {}).get(j, ()) if c != 0}

    def mul_sparse(self, x: dict, y: dict) -> dict:
        """Product of two sparse coordinate vectors."""
        f = self.field
        left = self._left
        acc: dict = {}
        for i, a in x.items():
            li = left.get(i)
            if not li:
                continue
            for j, b in y.items():
                outs = li.get(j)
                if outs:
                    ab = f.mul(a, b)
                    for k, c in outs:
                        acc[k] = acc.get(k, 0) + ab * c
        return _normalize(acc, f)

    def mul_poly(self, x: dict, y: dict) -> dict:
        """Product of vectors whose coordinates are raw polynomial term dicts."""
        f = self.field
        left = self._left
        acc: dict[int, dict] = {}
        for i, a in x.items():
            li = left.get(i)
            if not li:
                continue
            for j, b in y.items():
                outs = li.get(j)
                if outs:
                    for k, c in outs:
                        mul_terms_into(acc.setdefault(k, {}), a, b, c, f)
        out = {}
        for k, terms in acc.items():
            t = normalize_terms(terms, f)
            if t:
                out[k] = t
        return out

    @cached_property
    def plain_left_rows(self) -> tuple[dict, ...]:
        """Row dicts of plain L_{x_i}: entry (k, j) is the x_k-coefficient of x_i x_j."""
        out = []
        for i in range(self.dim):
            rows: dict = {}
            for j, outs in self._left.get(i, {}).items():
                for k, c in outs:
                    if c != 0:
                        rows.setdefault(k, {})[j] = c
            out.append(rows)
        return tuple(out)

    @cached_property
    def plain_right_rows(self) -> tuple[dict, ...]:
        """Row dicts of plain R_{x_i}: entry (k, j) is the x_k-coefficient of x_j x_i."""
        out = [dict() for _ in range(self.dim)]
        for j, lj in self._left.items():
            for i, outs in lj.items():
                for k, c in outs:
                    if c != 0:
                        out[i].setdefault(k, {})[j] = c
        return tuple(out)

    # elements
    def element(self, coords) -> Element:
        return Element(self, coords)

    def basis_element(self, i: int) -> Element:
        return Element.from_sparse(self, {i: self.field.one})

    def basis(self) -> list[Element]:
        return [self.basis_element(i) for i in range(self.dim)]

    def by_name(self, name: str) -> Element:
        return self.basis_element(self.basis_names.index(name))

    def zero(self) -> Element:
        return Element.from_sparse(self, {})

    def parse_element(self, text: str) -> Element:
        """Parse "2*e1 + f2 - 1/2*f1" style expressions over the basis names."""
        f = self.field
        acc: dict = {}
        s = text.replace("-", "+-").split("+")
        for term in s:
            term = term.strip()
            if not term:
                continue
            neg = term.startswith("-")
            term = term.lstrip("-").strip()
            if "*" in term:
                coef, name = term.rsplit("*", 1)
                c = f.parse(coef.strip())
            else:
                name, c = term, f.one
            name = name.strip()
            if name not in self.basis_names:
                raise ValueError(f"unknown basis name {name!r}")
            if neg:
                c = f.neg(c)
            i = self.basis_names.index(name)
            acc[i] = f.add(acc.get(i, f.zero), c)
        return Element.from_sparse(self, acc)

    def key(self) -> tuple:
        return (self.field, self.parity, tuple(sorted((i, j, k, c) for i, j, k, c in self.table)), self.basis_names)

    def __eq__(self, other):
        if not isinstance(other, SuperAlgebra):
            return NotImplemented
        return self.name == other.name and self.key() == other.key()

    def __hash__(self):
        return hash((self.name, self.key()))

    def __str__(self):
        return f"{self.name} over {self.field} (dim {self.dim}: {len(self.even_indices)}|{len(self.odd_indices)})"


def _normalize(acc: dict, f: FieldSpec) -> dict:
    if f.is_finite:
        p = f.p
        return {k: v % p for k, v in acc.items() if v % p}
    return {k: f.norm(v) for k, v in acc.items() if v != 0}


class Element:
    """An element of a superalgebra, stored as a dense tuple of raw coordinates."""

    __slots__ = ("algebra", "coords")

    def __init__(self, algebra: SuperAlgebra, coords):
        f = algebra.field
        coords = tuple(f.coerce(c) for c in coords)
        if len(coords) != algebra.dim:
            raise ValueError(f"{len(coords)} coordinates for dimension {algebra.dim}")
        self.algebra = algebra
        self.coords = coords

    @classmethod
    def from_sparse(cls, algebra: SuperAlgebra, vec: dict) -> Element:
        e = cls.__new__(cls)
        z = algebra.field.zero
        c = [z] * algebra.dim
        for i, v in vec.items():
            c[i] = v
        e.algebra = algebra
        e.coords = tuple(c)
        return e

    def sparse(self) -> dict:
        return {i: v for i, v in enumerate(self.coords) if v != 0}

    def _same(self, other: Element):
        if not isinstance(other, Element):
            raise TypeError("expected an Element")
        if other.algebra is not self.algebra and other.algebra != self.algebra:
            raise AlgebraMismatch(f"{self.algebra.name} vs {other.algebra.name}")

    def __add__(self, other: Element) -> Element:
        self._same(other)
        f = self.algebra.field
        return Element.from_sparse(self.algebra, _nz({i: f.add(a, b) for i, (a, b) in enumerate(zip(self.coords, other.coords))}))

    def __sub__(self, other: Element) -> Element:
        return self + (-other)

    def __neg__(self) -> Element:
        f = self.algebra.field
        return Element.from_sparse(self.algebra, {i: f.neg(v) for i, v in self.sparse().items()})

    def scale(self, c) -> Element:
        f = self.algebra.field
        c = f.coerce(c)
        return Element.from_sparse(self.algebra, _nz({i: f.mul(c, v) for i, v in self.sparse().items()}))

    def __mul__(self, other):
        if isinstance(other, Element):
            return mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def __bool__(self):
        return not self.is_zero()

    @property
    def parity(self) -> int | None:
        """0 or 1 for a nonzero homogeneous element, None otherwise."""
        ps = {self.algebra.parity[i] for i, c in enumerate(self.coords) if c != 0}
        return ps.pop() if len(ps) == 1 else None

    def homogeneous_parts(self) -> tuple[Element, Element]:
        par = self.algebra.parity
        s = self.sparse()
        return (
            Element.from_sparse(self.algebra, {i: v for i, v in s.items() if par[i] == 0}),
            Element.from_sparse(self.algebra, {i: v for i, v in s.items() if par[i] == 1}),
        )

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        if self.coords != other.coords:
            return False
        return self.algebra is other.algebra or self.algebra.key() == other.algebra.key()

    def __hash__(self):
        return hash(self.coords)

    def to_strings(self) -> list[str]:
        f = self.algebra.field
        return [f.format(c) for c in self.coords]

    def __str__(self):
        f = self.algebra.field
        names = self.algebra.basis_names
        parts = []
        for i, c in self.sparse().items():
            cs = f.format(c)
            if f.kind == "Q" and cs.endswith("/1"):
                cs = cs[:-2]
            parts.append(names[i] if cs == "1" else f"{cs}*{names[i]}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"Element({self})"


def _nz(d: dict) -> dict:
    return {k: v for k, v in d.items() if v != 0}


def require_homogeneous(x: Element) -> int:
    p = x.parity
    if p is None:
        raise NotHomogeneous(f"{x} is zero or not homogeneous")
    return p


def mul(x: Element, y: Element) -> Element:
    x._same(y)
    return Element.from_sparse(x.algebra, x.algebra.mul_sparse(x.sparse(), y.sparse()))


def associator(x: Element, y: Element, z: Element) -> Element:
    """(xy)z - x(yz)."""
    return mul(mul(x, y), z) - mul(x, mul(y, z))


def right_power(a: Element, k: int) -> Element:
    """Right-normed power: a^[1] = a, a^[k+1] = a^[k] a."""
    if k < 1:
        raise ValueError("right powers start at k = 1")
    out = a
    for _ in range(k - 1):
        out = mul(out, a)
    return out


def validate(algebra: SuperAlgebra) -> ValidationReport:
    return algebra.validate()


def generic_element(algebra: SuperAlgebra, parity: int, prefix: str = "t") -> tuple[PolyRing, dict]:
    """Generic homogeneous element: one indeterminate per basis vector of the parity.

    Returns the polynomial ring and the coordinate dict {basis index: raw term dict}.
    """
    idx = algebra.indices_of_parity(parity)
    ring = PolyRing(algebra.field, tuple(f"{prefix}{algebra.basis_names[i]}" for i in idx))
    one = algebra.field.one
    return ring, {i: {(n,): one} for n, i in enumerate(idx)}


def poly_vector(ring: PolyRing, x: dict) -> dict[int, MultiPoly]:
    return {k: MultiPoly._raw(ring, t) for k, t in x.items()}


def specialize(algebra: SuperAlgebra, ring: PolyRing, x: dict, point) -> Element:
    vec = {}
    for k, t in x.items():
        v = MultiPoly._raw(ring, t).evaluate(point)
        if v != 0:
            vec[k] = v
    return Element.from_sparse(algebra, vec)


__all__ = [
    "Issue", "ValidationReport", "SuperAlgebra", "Element", "mul", "associator",
    "right_power", "validate", "require_homogeneous", "generic_element",
]
