from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import Dense
from superengel.arith import GF, QQ, Echelon, Matrix, MultiPoly, PolyRing, Scalar, kernel, poly_is_zero, rank, rref
from superengel.errors import DivisionByZero, FieldMismatch, RingMismatch, ShapeMismatch


# scalars ---------------------------------------------------------------------

def test_gf3_product():
    assert Scalar(GF(3), 2) * Scalar(GF(3), 2) == Scalar(GF(3), 1)


def test_rational_sum():
    assert Scalar.parse(QQ, "1/2") + Scalar.parse(QQ, "1/3") == Scalar.parse(QQ, "5/6")


def test_gf5_inverse_matches_brute_force():
    brute = next(y for y in range(5) if 2 * y % 5 == 1)
    assert Scalar(GF(5), 2).inv() == Scalar(GF(5), brute) == Scalar(GF(5), 3)


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        Scalar(GF(7), 3) / Scalar(GF(7), 0)
    with pytest.raises(DivisionByZero):
        QQ.inv(QQ.zero)


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        Scalar(GF(3), 1) + Scalar(GF(5), 1)


def test_non_prime_modulus_rejected():
    with pytest.raises(ValueError):
        GF(9)


def test_characteristic():
    assert QQ.characteristic == 0
    assert GF(3).characteristic == 3


@pytest.mark.parametrize("text,field,expected", [
    ("6/4", QQ, "3/2"), ("-2/4", QQ, "-1/2"), ("0", QQ, "0/1"), ("7", GF(5), "2"), ("-1", GF(3), "2"),
])
def test_canonical_serialization(text, field, expected):
    assert field.format(field.parse(text)) == expected


def test_fraction_syntax_rejected_over_gf():
    with pytest.raises(ValueError):
        GF(3).parse("1/2")


@pytest.mark.parametrize("field", [GF(2), GF(3), GF(5), GF(101), QQ], ids=str)
def test_field_axioms_on_random_triples(field):
    rng = random.Random(field.characteristic)
    zero, one = field.zero, field.one
    for _ in range(10_000):
        a, b, c = (field.random(rng, 9) for _ in range(3))
        add, mul = field.add, field.mul
        assert add(add(a, b), c) == add(a, add(b, c))
        assert mul(mul(a, b), c) == mul(a, mul(b, c))
        assert mul(a, add(b, c)) == add(mul(a, b), mul(a, c))
        assert add(a, field.neg(a)) == zero
        if a != zero:
            assert mul(a, field.inv(a)) == one


# polynomials -----------------------------------------------------------------

def test_zero_polynomial():
    R = PolyRing.with_count(QQ, 2)
    assert poly_is_zero(R.zero)


def test_fermat_polynomial_is_not_zero():
    R = PolyRing.with_count(GF(3), 1)
    lam = R.gen(0)
    P = lam ** 3 - lam
    assert not poly_is_zero(P)
    # vanishes as a function on GF(3) all the same
    assert all(P.evaluate([x]) == 0 for x in range(3))


def test_binomial_expansion_cancels():
    R = PolyRing.with_count(QQ, 2)
    lam, mu = R.gens()
    assert poly_is_zero((lam + mu) ** 2 - lam ** 2 - lam * mu * 2 - mu ** 2)


def test_ring_mismatch():
    R1, R2 = PolyRing.with_count(QQ, 1, "a"), PolyRing.with_count(QQ, 1, "b")
    with pytest.raises(RingMismatch):
        R1.gen(0) + R2.gen(0)


def test_nonvanishing_point():
    R = PolyRing.with_count(GF(5), 2)
    x, y = R.gens()
    P = x * y - x
    pt = P.nonvanishing_point()
    assert pt is not None and P.evaluate(pt) != 0


# matrices and linear algebra -------------------------------------------------

def test_identity_times_matrix():
    M = Matrix.from_lists(QQ, [[1, 2], [3, 4]])
    assert Matrix.identity(QQ, 2) @ M == M


def test_zero_matrix_rank():
    assert Matrix.zero(GF(3), 3).rank() == 0


def test_shestakov_right_operator_square():
    M = Matrix.from_lists(GF(3), [[0, 2, 0], [1, 0, 0], [0, 0, 0]])
    assert M @ M == Matrix.from_lists(GF(3), [[2, 0, 0], [0, 2, 0], [0, 0, 0]])


def test_shape_mismatch():
    with pytest.raises(ShapeMismatch):
        Matrix.from_lists(QQ, [[1, 2]]) @ Matrix.from_lists(QQ, [[1, 2]])


def test_nilpotency_index():
    N = Matrix.from_lists(QQ, [[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    assert N.nilpotency_index() == 3
    assert Matrix.identity(QQ, 3).nilpotency_index() is None


def test_express_and_intersection():
    from superengel.arith import express, intersect

    coeffs = express(QQ, [{0: 1}, {1: 1}], {0: 2, 1: 3}, 2)
    assert coeffs == [2, 3]
    assert express(QQ, [{0: 1}], {1: 1}, 2) is None
    inter = intersect(QQ, [(1, 0, 0), (0, 1, 0)], [(0, 1, 0), (0, 0, 1)], 3)
    assert inter.rank == 1 and inter.contains({1: 1})


def _matrices(p: int, rows: int, cols: int):
    entries = st.integers(0, p - 1) if p else st.fractions(min_value=-3, max_value=3, max_denominator=3)
    return st.lists(st.lists(entries, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


@settings(max_examples=60, deadline=None)
@given(p=st.sampled_from([0, 3, 5]), data=st.data())
def test_rank_matches_dense_oracle_and_rank_nullity(p, data):
    rows = data.draw(_matrices(p, data.draw(st.integers(1, 5)), data.draw(st.integers(1, 5))))
    field = QQ if p == 0 else GF(p)
    vals = [[field.coerce(Fraction(x)) if p == 0 else x for x in r] for r in rows]
    ncols = len(vals[0])
    r = rank(field, vals, ncols)
    assert r == Dense(p).rank(rows)
    ker = kernel(field, vals, ncols)
    assert r + len(ker) == ncols
    for v in ker:
        for row in vals:
            acc = field.zero
            for a, b in zip(row, v):
                acc = field.add(acc, field.mul(a, b))
            assert acc == 0


@settings(max_examples=60, deadline=None)
@given(p=st.sampled_from([0, 3, 7]), data=st.data())
def test_rref_idempotent(p, data):
    rows = data.draw(_matrices(p, data.draw(st.integers(1, 4)), data.draw(st.integers(1, 5))))
    field = QQ if p == 0 else GF(p)
    vals = [[field.coerce(Fraction(x)) if p == 0 else x for x in r] for r in rows]
    once, piv = rref(field, vals, len(vals[0]))
    twice, piv2 = rref(field, once, len(vals[0]))
    assert once == twice and piv == piv2
    # leftmost pivots, each pivot column a unit vector
    for r, c in zip(once, piv):
        assert r[c] == 1 and all(x == 0 for x in r[:c])
        assert sum(1 for other in once if other[c] != 0) == 1


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 10_000))
def test_polynomial_matrix_associativity(seed):
    rng = random.Random(seed)
    R = PolyRing.with_count(QQ, 2)
    x, y = R.gens()
    monos = [R.one, x, y, x * y, x * x, y * y]

    def rand_entry():
        acc = R.zero
        for m in rng.sample(monos, 2):
            acc = acc + m.scale(rng.randint(-2, 2))
        return acc

    M, N, P = (Matrix(R, 3, 3, {(i, j): rand_entry() for i in range(3) for j in range(3)}) for _ in range(3))
    assert (M @ N) @ P == M @ (N @ P)


def test_echelon_membership():
    e = Echelon(GF(3), 3, [{0: 1, 1: 2}])
    assert e.contains({0: 2, 1: 1})
    assert not e.contains({2: 1})


def test_multipoly_terms_have_no_zeros():
    R = PolyRing.with_count(GF(3), 1)
    t = R.gen(0)
    P = t * 3 + R.one
    assert all(c != 0 for c in P.terms.values())
    assert isinstance(P, MultiPoly)
