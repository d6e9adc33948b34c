"""Truncated Grassmann algebras G_m and Grassmann envelopes G(A)."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .algebra import SuperAlgebra
from .arith.fields import FieldSpec
from .errors import BudgetExceeded

DEFAULT_ENVELOPE_BUDGET = 256


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def mask_product(a: int, b: int) -> tuple[int, int] | None:
    """e_S e_T = sign * e_{S+T} for disjoint S, T, else None (the product is 0).

    The sign counts the transpositions needed to sort the concatenated word:
    one for every pair (s in S, t in T) with s > t.
    """
    if a & b:
        return None
    inversions = 0
    bb = b
    while bb:
        low = bb & -bb
        # generators of a above this generator of b
        inversions += popcount(a & ~((low << 1) - 1))
        bb ^= low
    return a | b, inversions & 1


def monomial_name(mask: int) -> str:
    if mask == 0:
        return "1"
    return "".join(f"e{i + 1}" for i in range(mask.bit_length()) if mask >> i & 1)


@dataclass(frozen=True)
class GrassmannAlgebra:
    field: FieldSpec
    m: int

    @cached_property
    def masks(self) -> tuple[int, ...]:
        """Monomials ordered by length, then by generator indices."""
        def key(mask):
            return (popcount(mask), [i for i in range(self.m) if mask >> i & 1])
        return tuple(sorted(range(1 << self.m), key=key))

    @property
    def dim(self) -> int:
        return 1 << self.m

    def parity(self, mask: int) -> int:
        return popcount(mask) & 1

    def multiply(self, a: int, b: int):
        """(mask, field sign) or None."""
        r = mask_product(a, b)
        if r is None:
            return None
        mask, odd = r
        return mask, self.field.sign(odd)

    def as_superalgebra(self, unital: bool = True, name: str | None = None) -> SuperAlgebra:
        """G_m with its natural grading; ``unital=False`` drops the unit (augmentation ideal)."""
        masks = [mk for mk in self.masks if unital or mk]
        index = {mk: n for n, mk in enumerate(masks)}
        products: dict = {}
        for a in masks:
            for b in masks:
                r = self.multiply(a, b)
                if r is not None and r[0] in index:
                    products[(index[a], index[b])] = {index[r[0]]: r[1]}
        return SuperAlgebra.from_products(
            name or (f"G{self.m}" if unital else f"grassmann-aug({self.m})"),
            self.field,
            tuple(self.parity(mk) for mk in masks),
            products,
            tuple(monomial_name(mk) for mk in masks),
        )


@dataclass(frozen=True)
class EnvelopeAlgebra:
    """G(A) = G0 (x) A0 + G1 (x) A1 over the truncated Grassmann algebra G_m."""

    grassmann: GrassmannAlgebra
    source: SuperAlgebra
    basis: tuple[tuple[int, int], ...]  # (grassmann mask, algebra basis index)
    algebra: SuperAlgebra  # the envelope as an algebra, graded by the Grassmann parity

    @property
    def dim(self) -> int:
        return len(self.basis)

    def index(self, mask: int, i: int) -> int:
        return self._index[(mask, i)]

    @cached_property
    def _index(self) -> dict:
        return {b: n for n, b in enumerate(self.basis)}


def envelope_dimension(A: SuperAlgebra, m: int) -> int:
    half = 1 << (m - 1)
    return half * A.dim


def build_grassmann_envelope(A: SuperAlgebra, m: int, budget: int = DEFAULT_ENVELOPE_BUDGET) -> EnvelopeAlgebra:
    if m < 1:
        raise ValueError("need at least one Grassmann generator")
    size = envelope_dimension(A, m)
    if size > budget:
        raise BudgetExceeded(f"envelope G{m}({A.name}) has dimension {size} > budget {budget}")
    G = GrassmannAlgebra(A.field, m)
    basis = tuple(
        (mk, i) for i in range(A.dim) for mk in G.masks if G.parity(mk) == A.parity[i]
    )
    index = {b: n for n, b in enumerate(basis)}
    by_parity = {0: [mk for mk in G.masks if not G.parity(mk)], 1: [mk for mk in G.masks if G.parity(mk)]}
    f = A.field
    products: dict = {}
    for (i, j, k, c) in A.table:
        for g in by_parity[A.parity[i]]:
            for h in by_parity[A.parity[j]]:
                r = G.multiply(g, h)
                if r is None:
                    continue
                mask, sign = r
                key = (index[(g, i)], index[(h, j)])
                out = products.setdefault(key, {})
                t = index[(mask, k)]
                out[t] = f.add(out.get(t, f.zero), f.mul(sign, c))
    names = tuple(
        (A.basis_names[i] if mk == 0 else f"{monomial_name(mk)}*{A.basis_names[i]}") for mk, i in basis
    )
    env = SuperAlgebra.from_products(
        f"G{m}({A.name})", f, tuple(A.parity[i] for _, i in basis), products, names
    )
    return EnvelopeAlgebra(G, A, basis, env)
