"""Sparse multivariate polynomials over a :class:`FieldSpec`.

A monomial is stored as the sorted tuple of its variable indices with
repetition, so ``x0**2 * x3`` is ``(0, 0, 3)``; products are a tuple
concatenation plus sort.  Exponent vectors are derived on demand for
display and ordering (graded lexicographic, ``x0 > x1 > ...``).

Zero-testing is identical vanishing of every coefficient, never vanishing
as a function: over GF(3) the polynomial ``x**3 - x`` is nonzero.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import product as iproduct

from ..errors import RingMismatch
from .fields import FieldSpec


@dataclass(frozen=True)
class PolyRing:
    field: FieldSpec
    variables: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))

    @classmethod
    def with_count(cls, field: FieldSpec, n: int, prefix: str = "t") -> PolyRing:
        return cls(field, tuple(f"{prefix}{i}" for i in range(n)))

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def gen(self, i: int) -> MultiPoly:
        return MultiPoly(self, {(i,): self.field.one})

    def gens(self) -> list[MultiPoly]:
        return [self.gen(i) for i in range(self.nvars)]

    def const(self, c) -> MultiPoly:
        c = self.field.coerce(c)
        return MultiPoly(self, {(): c} if c != 0 else {})

    # ring protocol used by Matrix
    @property
    def zero(self) -> MultiPoly:
        return MultiPoly(self, {})

    @property
    def one(self) -> MultiPoly:
        return self.const(1)

    def from_int(self, n: int) -> MultiPoly:
        return self.const(n)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def is_zero(self, a) -> bool:
        return a.is_zero()

    def coerce(self, x) -> MultiPoly:
        if isinstance(x, MultiPoly):
            if x.ring != self:
                raise RingMismatch("polynomial from a different ring")
            return x
        return self.const(x)

    def __str__(self):
        return f"{self.field}[{', '.join(self.variables)}]"


def mul_terms_into(acc: dict, a: dict, b: dict, c, field: FieldSpec) -> None:
    """acc += c * a * b on raw term dictionaries; acc is left unnormalised."""
    get = acc.get
    for ma, ca in a.items():
        cca = c * ca
        for mb, cb in b.items():
            m = tuple(sorted(ma + mb)) if ma and mb else (ma or mb)
            acc[m] = get(m, 0) + cca * cb


def normalize_terms(acc: dict, field: FieldSpec) -> dict:
    out = {}
    if field.is_finite:
        p = field.p
        for m, c in acc.items():
            c %= p
            if c:
                out[m] = c
    else:
        for m, c in acc.items():
            if c != 0:
                out[m] = field.norm(c)
    return out


class MultiPoly:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict | None = None):
        self.ring = ring
        self.terms = normalize_terms(terms or {}, ring.field)

    @classmethod
    def _raw(cls, ring, terms):
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.terms = terms
        return obj

    @property
    def field(self) -> FieldSpec:
        return self.ring.field

    def _check(self, other) -> MultiPoly:
        if isinstance(other, MultiPoly):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring} vs {other.ring}")
            return other
        return self.ring.const(other)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        other = self._check(other)
        acc = dict(self.terms)
        for m, c in other.terms.items():
            acc[m] = acc.get(m, 0) + c
        return MultiPoly(self.ring, acc)

    __radd__ = __add__

    def __neg__(self):
        f = self.field
        return MultiPoly._raw(self.ring, {m: f.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        acc: dict = {}
        mul_terms_into(acc, self.terms, other.terms, 1, self.field)
        return MultiPoly(self.ring, acc)

    __rmul__ = __mul__

    def scale(self, c) -> MultiPoly:
        c = self.field.coerce(c)
        return MultiPoly(self.ring, {m: v * c for m, v in self.terms.items()})

    def __pow__(self, n: int) -> MultiPoly:
        if n < 0:
            raise ValueError("negative power")
        out = self.ring.one
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, int):
            return self.terms == self.ring.const(other).terms
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def exponents(self, mono: tuple) -> tuple[int, ...]:
        cnt = Counter(mono)
        return tuple(cnt.get(i, 0) for i in range(self.ring.nvars))

    def degree(self) -> int:
        return max((len(m) for m in self.terms), default=-1)

    def sorted_terms(self) -> list[tuple[tuple[int, ...], object]]:
        """(exponent vector, coefficient) pairs in decreasing graded-lex order."""
        items = [(self.exponents(m), c) for m, c in self.terms.items()]
        items.sort(key=lambda t: (sum(t[0]), t[0]), reverse=True)
        return items

    def evaluate(self, point) -> object:
        f = self.field
        acc = f.zero
        for m, c in self.terms.items():
            v = c
            for i in m:
                v = f.mul(v, point[i])
            acc = f.add(acc, v)
        return acc

    def nonvanishing_point(self, candidates=None):
        """A point where the polynomial does not vanish, or None.

        Over the rationals one always exists in {0..deg}^n.  Over GF(p) the
        search is the full grid, which may legitimately come back empty.
        """
        if self.is_zero():
            return None
        n = self.ring.nvars
        used = sorted({i for m in self.terms for i in m})
        if candidates is None:
            if self.field.is_finite:
                candidates = list(self.field.elements())
            else:
                candidates = [self.field.from_int(k) for k in range(self.degree() + 1)]
        if not self.field.is_finite:
            return self._point_by_recursion(used, n, candidates)
        point = [self.field.zero] * n
        for values in iproduct(candidates, repeat=len(used)):
            for i, v in zip(used, values):
                point[i] = v
            if self.evaluate(point) != 0:
                return list(point)
        return None

    def _point_by_recursion(self, used, n, candidates):
        # fix variables one at a time keeping the specialisation nonzero
        f = self.field
        point = [f.zero] * n
        current = self
        for i in used:
            for v in candidates:
                trial = current.substitute(i, v)
                if not trial.is_zero():
                    point[i] = v
                    current = trial
                    break
        return point if current.evaluate(point) != 0 else None

    def substitute(self, var: int, value) -> MultiPoly:
        f = self.field
        acc: dict = {}
        for m, c in self.terms.items():
            k = m.count(var)
            if k:
                rest = tuple(i for i in m if i != var)
                for _ in range(k):
                    c = f.mul(c, value)
            else:
                rest = m
            acc[rest] = acc.get(rest, 0) + c
        return MultiPoly(self.ring, acc)

    def __str__(self):
        if not self.terms:
            return "0"
        f = self.field
        parts = []
        for exps, c in self.sorted_terms():
            mono = "*".join(
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(self.ring.variables, exps)
                if e
            )
            cs = f.format(c)
            if f.kind == "Q" and cs.endswith("/1"):
                cs = cs[:-2]
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            else:
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts)

    __repr__ = __str__


def poly_is_zero(p: MultiPoly) -> bool:
    return p.is_zero()
