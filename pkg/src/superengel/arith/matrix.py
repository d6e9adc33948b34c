"""Immutable sparse matrices over a field or a polynomial ring.

The ring is either a :class:`FieldSpec` (entries are raw field values) or
a :class:`PolyRing` (entries are :class:`MultiPoly`).  Both expose the
same small protocol: ``zero``, ``one``, ``add``, ``sub``, ``mul``, ``neg``,
``is_zero``, ``from_int``.  Only nonzero entries are stored.
"""

from __future__ import annotations

from ..errors import RingMismatch, ShapeMismatch
from . import linalg
from .fields import FieldSpec


class Matrix:
    __slots__ = ("ring", "nrows", "ncols", "_rows")

    def __init__(self, ring, nrows: int, ncols: int, entries=None):
        """``entries`` maps (row, col) to a ring value; zeros are dropped."""
        self.ring = ring
        self.nrows = nrows
        self.ncols = ncols
        rows: dict[int, dict[int, object]] = {}
        for (r, c), v in (entries or {}).items():
            if not (0 <= r < nrows and 0 <= c < ncols):
                raise ShapeMismatch(f"entry ({r},{c}) outside {nrows}x{ncols}")
            if not ring.is_zero(v):
                rows.setdefault(r, {})[c] = v
        self._rows = rows

    @classmethod
    def _from_rows(cls, ring, nrows, ncols, rows):
        m = cls.__new__(cls)
        m.ring, m.nrows, m.ncols = ring, nrows, ncols
        m._rows = {r: row for r, row in rows.items() if row}
        return m

    @classmethod
    def from_lists(cls, ring, rows) -> Matrix:
        rows = [list(r) for r in rows]
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ShapeMismatch("ragged rows")
        coerce = ring.coerce
        return cls(ring, nrows, ncols, {(i, j): coerce(v) for i, r in enumerate(rows) for j, v in enumerate(r)})

    @classmethod
    def zero(cls, ring, nrows: int, ncols: int | None = None) -> Matrix:
        return cls(ring, nrows, nrows if ncols is None else ncols)

    @classmethod
    def identity(cls, ring, n: int) -> Matrix:
        return cls._from_rows(ring, n, n, {i: {i: ring.one} for i in range(n)})

    # access
    def __getitem__(self, rc):
        r, c = rc
        return self._rows.get(r, {}).get(c, self.ring.zero)

    def entries(self) -> dict:
        return {(r, c): v for r, row in self._rows.items() for c, v in row.items()}

    def row_dicts(self) -> dict[int, dict[int, object]]:
        return self._rows

    def to_lists(self) -> list[list]:
        z = self.ring.zero
        return [[self._rows.get(r, {}).get(c, z) for c in range(self.ncols)] for r in range(self.nrows)]

    def column(self, c: int) -> tuple:
        z = self.ring.zero
        return tuple(self._rows.get(r, {}).get(c, z) for r in range(self.nrows))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def is_zero(self) -> bool:
        return not self._rows

    def nnz(self) -> int:
        return sum(len(r) for r in self._rows.values())

    # arithmetic
    def _compat(self, other: Matrix):
        if not isinstance(other, Matrix):
            raise TypeError("expected a Matrix")
        if other.ring != self.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")

    def __add__(self, other: Matrix) -> Matrix:
        self._compat(other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} + {other.shape}")
        return self._combine(other, self.ring.add)

    def __sub__(self, other: Matrix) -> Matrix:
        self._compat(other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} - {other.shape}")
        return self._combine(other, self.ring.sub)

    def _combine(self, other, op):
        ring = self.ring
        z = ring.zero
        rows = {r: dict(row) for r, row in self._rows.items()}
        for r, orow in other._rows.items():
            row = rows.setdefault(r, {})
            for c, v in orow.items():
                s = op(row.get(c, z), v)
                if ring.is_zero(s):
                    row.pop(c, None)
                else:
                    row[c] = s
        return Matrix._from_rows(ring, self.nrows, self.ncols, rows)

    def __neg__(self) -> Matrix:
        neg = self.ring.neg
        return Matrix._from_rows(
            self.ring, self.nrows, self.ncols,
            {r: {c: neg(v) for c, v in row.items()} for r, row in self._rows.items()},
        )

    def scale(self, s) -> Matrix:
        ring = self.ring
        s = ring.coerce(s)
        if ring.is_zero(s):
            return Matrix.zero(ring, self.nrows, self.ncols)
        mul = ring.mul
        rows = {}
        for r, row in self._rows.items():
            new = {}
            for c, v in row.items():
                x = mul(s, v)
                if not ring.is_zero(x):
                    new[c] = x
            rows[r] = new
        return Matrix._from_rows(ring, self.nrows, self.ncols, rows)

    def __matmul__(self, other: Matrix) -> Matrix:
        self._compat(other)
        if self.ncols != other.nrows:
            raise ShapeMismatch(f"{self.shape} @ {other.shape}")
        ring = self.ring
        orows = other._rows
        rows = {}
        if isinstance(ring, FieldSpec):
            f = ring
            for r, row in self._rows.items():
                acc: dict = {}
                for k, a in row.items():
                    brow = orows.get(k)
                    if brow:
                        linalg.axpy(acc, a, brow, f)
                if acc:
                    rows[r] = acc
        else:
            z = ring.zero
            for r, row in self._rows.items():
                acc = {}
                for k, a in row.items():
                    brow = orows.get(k)
                    if brow:
                        for c, b in brow.items():
                            acc[c] = ring.add(acc.get(c, z), ring.mul(a, b))
                acc = {c: v for c, v in acc.items() if not ring.is_zero(v)}
                if acc:
                    rows[r] = acc
        return Matrix._from_rows(ring, self.nrows, other.ncols, rows)

    def __mul__(self, other):
        if isinstance(other, Matrix):
            return self @ other
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int) -> Matrix:
        if self.nrows != self.ncols:
            raise ShapeMismatch("power of a non-square matrix")
        if n < 0:
            raise ValueError("negative matrix power")
        out = Matrix.identity(self.ring, self.nrows)
        base = self
        while n:
            if n & 1:
                out = out @ base
            n >>= 1
            if n:
                base = base @ base
        return out

    def transpose(self) -> Matrix:
        rows: dict = {}
        for r, row in self._rows.items():
            for c, v in row.items():
                rows.setdefault(c, {})[r] = v
        return Matrix._from_rows(self.ring, self.ncols, self.nrows, rows)

    def map(self, fn, ring=None) -> Matrix:
        ring = ring or self.ring
        return Matrix(ring, self.nrows, self.ncols, {(r, c): fn(v) for r, row in self._rows.items() for c, v in row.items()})

    # exact linear algebra (field entries only)
    def _field(self) -> FieldSpec:
        if not isinstance(self.ring, FieldSpec):
            raise RingMismatch("row reduction needs field entries")
        return self.ring

    def rref(self) -> tuple[Matrix, list[int]]:
        f = self._field()
        e = linalg.Echelon(f, self.ncols, (dict(r) for r in self._rows.values()))
        rows = {i: dict(row) for i, row in enumerate(e.basis())}
        return Matrix._from_rows(f, self.nrows, self.ncols, rows), e.pivots

    def rank(self) -> int:
        f = self._field()
        return linalg.Echelon(f, self.ncols, (dict(r) for r in self._rows.values())).rank

    def kernel(self) -> list[tuple]:
        f = self._field()
        return linalg.kernel(f, self.to_lists(), self.ncols)

    def nilpotency_index(self) -> int | None:
        """Smallest k >= 1 with M**k == 0, or None if M is not nilpotent."""
        n = self.nrows
        p = self
        for k in range(1, n + 2):
            if p.is_zero():
                return k
            if k > n:
                break
            p = p @ self
        return None

    # comparison
    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.ring == other.ring and self.shape == other.shape
                and self.entries() == other.entries())

    def __hash__(self):
        return hash((self.shape, frozenset(self.entries().items())))

    def __repr__(self):
        fmt = getattr(self.ring, "format", str)
        body = "; ".join(" ".join(fmt(v) for v in row) for row in self.to_lists())
        return f"Matrix({self.nrows}x{self.ncols}: [{body}])"
