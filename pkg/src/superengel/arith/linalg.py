"""Exact sparse linear algebra over a :class:`FieldSpec`.

Vectors are ``dict`` objects mapping coordinate index to a nonzero raw
field value.  :class:`Echelon` maintains a basis in reduced row-echelon
form, so the basis it reports for a given span is canonical.
"""

from __future__ import annotations

from .fields import FieldSpec


def sparse(vec) -> dict:
    """Dense sequence -> sparse dict (drops zeros)."""
    return {i: v for i, v in enumerate(vec) if v != 0}


def dense(vec: dict, n: int, zero=0) -> tuple:
    out = [zero] * n
    for i, v in vec.items():
        out[i] = v
    return tuple(out)


def axpy(target: dict, c, vec: dict, field: FieldSpec) -> None:
    """target += c * vec, in place."""
    if field.is_finite:
        p = field.p
        for i, v in vec.items():
            s = (target.get(i, 0) + c * v) % p
            if s:
                target[i] = s
            else:
                target.pop(i, None)
    else:
        for i, v in vec.items():
            s = target.get(i, 0) + c * v
            if s != 0:
                target[i] = s
            else:
                target.pop(i, None)


def scale(vec: dict, c, field: FieldSpec) -> dict:
    if c == 0:
        return {}
    return {i: field.mul(v, c) for i, v in vec.items()}


class Echelon:
    """Incrementally maintained reduced row-echelon basis of a span."""

    __slots__ = ("field", "dim", "rows")

    def __init__(self, field: FieldSpec, dim: int, vectors=()):
        self.field = field
        self.dim = dim
        self.rows: dict[int, dict] = {}
        for v in vectors:
            self.add(v)

    def copy(self) -> Echelon:
        e = Echelon(self.field, self.dim)
        e.rows = {p: dict(r) for p, r in self.rows.items()}
        return e

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec) -> dict:
        """Remainder of ``vec`` modulo the span (a fresh dict)."""
        v = dict(vec) if isinstance(vec, dict) else sparse(vec)
        rows = self.rows
        if not rows:
            return v
        f = self.field
        for piv in [i for i in v if i in rows]:
            c = v.get(piv)
            if c:
                axpy(v, f.neg(c), rows[piv], f)
        return v

    def add(self, vec) -> bool:
        """Insert a vector; True when it enlarged the span."""
        v = self.reduce(vec)
        if not v:
            return False
        f = self.field
        piv = min(v)
        inv = f.inv(v[piv])
        if v[piv] != 1:
            v = {i: f.mul(x, inv) for i, x in v.items()}
        for row in self.rows.values():
            c = row.get(piv)
            if c:
                axpy(row, f.neg(c), v, f)
        self.rows[piv] = v
        return True

    def contains(self, vec) -> bool:
        return not self.reduce(vec)

    __contains__ = contains

    def extend(self, vectors) -> int:
        return sum(1 for v in vectors if self.add(v))

    @property
    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def basis(self) -> list[dict]:
        return [self.rows[p] for p in sorted(self.rows)]

    def dense_basis(self) -> tuple[tuple, ...]:
        z = self.field.zero
        return tuple(dense(self.rows[p], self.dim, z) for p in sorted(self.rows))

    def contains_span(self, other: Echelon) -> bool:
        return all(self.contains(r) for r in other.rows.values())

    def __eq__(self, other):
        if not isinstance(other, Echelon):
            return NotImplemented
        return self.field == other.field and self.rows == other.rows


def rref(field: FieldSpec, rows, ncols: int) -> tuple[list[tuple], list[int]]:
    """Reduced row-echelon form of a dense matrix; returns (nonzero rows, pivots)."""
    e = Echelon(field, ncols, rows)
    return list(e.dense_basis()), e.pivots


def rank(field: FieldSpec, rows, ncols: int) -> int:
    return Echelon(field, ncols, rows).rank


def kernel(field: FieldSpec, rows, ncols: int) -> list[tuple]:
    """Basis of {x : M x = 0}, one vector per free column, in column order."""
    basis, pivots = rref(field, rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    out = []
    for fc in free:
        x = [field.zero] * ncols
        x[fc] = field.one
        for r, pc in zip(basis, pivots):
            x[pc] = field.neg(r[fc])
        out.append(tuple(x))
    return out


def intersect(field: FieldSpec, u_rows, v_rows, n: int) -> Echelon:
    """Zassenhaus intersection of two spans given by (sparse or dense) rows."""
    e = Echelon(field, 2 * n)
    for u in u_rows:
        u = u if isinstance(u, dict) else sparse(u)
        w = dict(u)
        for i, x in u.items():
            w[i + n] = x
        e.add(w)
    for v in v_rows:
        v = v if isinstance(v, dict) else sparse(v)
        e.add(dict(v))
    out = Echelon(field, n)
    for piv, row in e.rows.items():
        if piv >= n:
            out.add({i - n: x for i, x in row.items()})
    return out


def express(field: FieldSpec, vectors: list[dict], target: dict, n: int):
    """Coefficients c with sum c_j vectors[j] == target, or None."""
    k = len(vectors)
    e = Echelon(field, n + k)
    for j, v in enumerate(vectors):
        w = dict(v)
        w[n + j] = field.one
        e.add(w)
    rem = e.reduce(target)
    if any(i < n for i in rem):
        return None
    coeffs = [field.zero] * k
    for i, x in rem.items():
        coeffs[i - n] = field.neg(x)
    return coeffs
