"""Independent reference computations used to cross-check the library.

Everything here works on plain dense lists with Python ints/Fractions and
never calls the library's linear algebra, products or operator code.
"""

from __future__ import annotations

import itertools
from fractions import Fraction


class Dense:
    """Arithmetic for Q (p == 0) or GF(p) on plain Python numbers."""

    def __init__(self, p: int):
        self.p = p

    def norm(self, x):
        if self.p:
            return int(x) % self.p
        return Fraction(x)

    def inv(self, x):
        if self.p:
            x %= self.p
            for y in range(1, self.p):
                if x * y % self.p == 1:
                    return y
            raise ZeroDivisionError
        return 1 / Fraction(x)

    def rank(self, rows) -> int:
        m = [[self.norm(x) for x in r] for r in rows]
        if not m:
            return 0
        rank, ncols = 0, len(m[0])
        for c in range(ncols):
            piv = next((r for r in range(rank, len(m)) if m[r][c] != 0), None)
            if piv is None:
                continue
            m[rank], m[piv] = m[piv], m[rank]
            iv = self.inv(m[rank][c])
            m[rank] = [self.norm(x * iv) for x in m[rank]]
            for r in range(len(m)):
                if r != rank and m[r][c] != 0:
                    f = m[r][c]
                    m[r] = [self.norm(a - f * b) for a, b in zip(m[r], m[rank])]
            rank += 1
        return rank

    def matmul(self, a, b):
        n, k, m = len(a), len(b), len(b[0]) if b else 0
        return [[self.norm(sum(a[i][t] * b[t][j] for t in range(k))) for j in range(m)] for i in range(n)]

    def is_zero(self, a) -> bool:
        return all(x == 0 for row in a for x in row)

    def nilpotent(self, a) -> bool:
        n = len(a)
        p = a
        for _ in range(n):
            p = self.matmul(p, a)
        return self.is_zero(p) or self.is_zero(a)


def field_char(A) -> int:
    return 0 if A.field.kind == "Q" else A.field.p


def table_of(A):
    """{(i, j): {k: c}} with plain Python numbers."""
    D = Dense(field_char(A))
    out: dict = {}
    for i, j, k, c in A.table:
        row = out.setdefault((i, j), {})
        row[k] = D.norm(row.get(k, 0) + (Fraction(int(c.numerator), int(c.denominator)) if D.p == 0 else int(c)))
    return out


def naive_mul(A, table, x, y):
    D = Dense(field_char(A))
    out = [D.norm(0)] * A.dim
    for i, a in enumerate(x):
        if a == 0:
            continue
        for j, b in enumerate(y):
            if b == 0:
                continue
            for k, c in table.get((i, j), {}).items():
                out[k] = D.norm(out[k] + a * b * c)
    return out


def unit(d, i):
    return [1 if t == i else 0 for t in range(d)]


def _row_basis(D, rows):
    """Reduced independent rows spanning the same space."""
    m = [[D.norm(x) for x in r] for r in rows]
    out = []
    for r in m:
        for b in out:
            c = next(i for i, x in enumerate(b) if x != 0)
            if r[c] != 0:
                f = r[c]
                r = [D.norm(a - f * x) for a, x in zip(r, b)]
        if any(r):
            c = next(i for i, x in enumerate(r) if x != 0)
            iv = D.inv(r[c])
            r = [D.norm(x * iv) for x in r]
            out = [[D.norm(a - b[c] * x) for a, x in zip(b, r)] for b in out]
            out.append(r)
    return out


def bracketing_power_dims(A) -> list[int]:
    """dim A^k for k = 1, 2, ... until A^k = 0 or k = 2^(dim+1).

    A^k is spanned by the products of spanning vectors of A^i and A^(k-i).
    Without associativity the index can exceed dim + 1, hence the generous cap.
    """
    D = Dense(field_char(A))
    table = table_of(A)
    powers = {1: _row_basis(D, [unit(A.dim, i) for i in range(A.dim)])}
    dims = [len(powers[1])]
    k = 1
    while dims[-1] and k < 2 ** (A.dim + 1):
        k += 1
        rows = [naive_mul(A, table, u, v) for i in range(1, k) for u in powers[i] for v in powers[k - i]]
        powers[k] = _row_basis(D, rows)
        dims.append(len(powers[k]))
    return dims


def bracketing_nilpotency_index(A):
    dims = bracketing_power_dims(A)
    return dims.index(0) + 1 if 0 in dims else None


def homogeneous_vectors(A, parity: int):
    """Every nonzero vector supported on basis vectors of the given parity (finite fields)."""
    p = A.field.p
    idx = [i for i in range(A.dim) if A.parity[i] == parity]
    for coeffs in itertools.product(range(p), repeat=len(idx)):
        if any(coeffs):
            v = [0] * A.dim
            for i, c in zip(idx, coeffs):
                v[i] = c
            yield v


def naive_assoc(A, table, x, y, z):
    D = Dense(field_char(A))
    l = naive_mul(A, table, naive_mul(A, table, x, y), z)
    r = naive_mul(A, table, x, naive_mul(A, table, y, z))
    return [D.norm(a - b) for a, b in zip(l, r)]


def functional_alternative(A) -> bool:
    """Superidentities checked on every homogeneous element triple, GF(p) with p >= 3.

    (1) and (2) are multilinear and (3) is quadratic in a, so vanishing as a
    function on GF(p), p >= 3, coincides with vanishing as a polynomial.
    """
    D = Dense(A.field.p)
    table = table_of(A)
    basis = [(A.parity[i], unit(A.dim, i)) for i in range(A.dim)]
    for (px, x), (py, y), (pz, z) in itertools.product(basis, repeat=3):
        s1 = (-1) ** (py * pz)
        s2 = (-1) ** (px * py)
        a1 = [D.norm(u + s1 * v) for u, v in zip(naive_assoc(A, table, x, y, z), naive_assoc(A, table, x, z, y))]
        a2 = [D.norm(u + s2 * v) for u, v in zip(naive_assoc(A, table, x, y, z), naive_assoc(A, table, y, x, z))]
        if any(a1) or any(a2):
            return False
    for a in homogeneous_vectors(A, 0):
        for _, x in basis:
            if any(naive_assoc(A, table, a, a, x)):
                return False
    return True


def naive_signed_R(A, a, parity_a):
    """Columns: image of basis vector j under y -> (-1)^{|a||y|} y a."""
    D = Dense(field_char(A))
    table = table_of(A)
    cols = []
    for j in range(A.dim):
        s = (-1) ** (parity_a * A.parity[j])
        cols.append([D.norm(s * c) for c in naive_mul(A, table, unit(A.dim, j), a)])
    return [[cols[j][i] for j in range(A.dim)] for i in range(A.dim)]


def naive_L(A, a):
    table = table_of(A)
    cols = [naive_mul(A, table, a, unit(A.dim, j)) for j in range(A.dim)]
    return [[cols[j][i] for j in range(A.dim)] for i in range(A.dim)]


def grassmann_sign(a: int, b: int):
    """Sign of e_S e_T by sorting the concatenated index word; None if S and T meet."""
    if a & b:
        return None
    word = [i for i in range(32) if a >> i & 1] + [i for i in range(32) if b >> i & 1]
    inversions = sum(1 for s in range(len(word)) for t in range(s + 1, len(word)) if word[s] > word[t])
    return -1 if inversions % 2 else 1


def matrix_lists(M, A):
    """Library matrix entries as plain Python numbers."""
    D = Dense(field_char(A))
    out = []
    for row in M.to_lists():
        out.append([D.norm(Fraction(int(x.numerator), int(x.denominator)) if D.p == 0 else int(x)) for x in row])
    return out
