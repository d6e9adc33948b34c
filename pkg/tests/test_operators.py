from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings

from oracles import Dense, field_char, matrix_lists, naive_L, naive_mul, naive_signed_R, table_of, unit
from strategies import graded_algebras
from superengel import GF, QQ, Matrix, build_corpus, check_operator_identities, engel_check
from superengel.errors import HypothesisViolated, NotAssociative, UnsupportedMode
from superengel.operators import (
    L,
    R,
    WeaklyClosedSet,
    algebra_nilpotency,
    engel_element_check,
    jacobson_nilpotency,
    left_mult,
    mult_superalgebra,
    plain_R,
    plain_R_power_identity,
    plain_R_product_identity,
    right_mult,
    span_nilpotent,
    weakly_closed_verify,
)
from superengel.structure import SubSuperspace

ALTERNATIVE_CORPUS = [
    ("shestakov-alt",), ("zero", 2, 0), ("zero", 1, 2), ("m11",), ("m11", "GF(3)"),
    ("upper-tri", 3, "010"), ("upper-tri", 3, "010", "GF(3)"), ("upper-tri", 4, "0101"),
    ("upper-tri", 5, "01001"), ("grassmann-aug", 3), ("grassmann-aug", 2, "GF(3)"),
]


def test_shestakov_R_f2_matrix():
    A = build_corpus("shestakov-alt")
    f2 = A.by_name("f2")
    # R_f2: e1 -> f2 e1 = f1 ; f1 -> -(f1 f2) = -e1 ; f2 -> 0
    assert R(f2) == Matrix.from_lists(GF(3), [[0, 2, 0], [1, 0, 0], [0, 0, 0]])
    assert R(f2) @ R(f2) == Matrix.from_lists(GF(3), [[2, 0, 0], [0, 2, 0], [0, 0, 0]])
    assert R(f2).nilpotency_index() is None


@pytest.mark.parametrize("spec", ALTERNATIVE_CORPUS + [("shestakov-idempotent",)], ids=str)
def test_operator_matrices_match_naive_oracle(spec):
    A = build_corpus(*spec)
    for i in range(A.dim):
        a = A.basis_element(i)
        assert matrix_lists(R(a), A) == naive_signed_R(A, unit(A.dim, i), A.parity[i])
        assert matrix_lists(L(a), A) == naive_L(A, unit(A.dim, i))
        assert matrix_lists(plain_R(a), A) == naive_signed_R(A, unit(A.dim, i), 0)


def test_operator_wrappers():
    A = build_corpus("shestakov-alt")
    f2 = A.by_name("f2")
    assert right_mult(f2).label == "R[f2]" and right_mult(f2, signed=False).label == "R+[f2]"
    assert left_mult(f2).matrix == L(f2) and left_mult(f2).regenerate() == L(f2)


def _dense_identity_defects(A, i, j):
    """The four operator identities recomputed on oracle matrices."""
    D = Dense(field_char(A))
    table = table_of(A)
    y, z = unit(A.dim, i), unit(A.dim, j)
    py, pz = A.parity[i], A.parity[j]
    s = (-1) ** (py * pz)
    zy, yz = naive_mul(A, table, z, y), naive_mul(A, table, y, z)
    pp = (py + pz) % 2
    Ry, Rz = naive_signed_R(A, y, py), naive_signed_R(A, z, pz)
    Ly, Lz = naive_L(A, y), naive_L(A, z)
    Rzy, Ryz = naive_signed_R(A, zy, pp), naive_signed_R(A, yz, pp)
    Lzy, Lyz = naive_L(A, zy), naive_L(A, yz)
    mm = D.matmul

    def comb(*terms):
        n = A.dim
        return [[D.norm(sum(c * M[r][k] for c, M in terms)) for k in range(n)] for r in range(n)]

    return [
        comb((1, mm(Rz, Ry)), (-1, Rzy), (-s, Ryz), (s, mm(Ry, Rz))),
        comb((1, mm(Lz, Ly)), (-1, Lzy), (-s, Lyz), (s, mm(Ly, Lz))),
        comb((1, mm(Ly, Rz)), (-s, mm(Rz, Ly)), (-1, Lyz), (1, mm(Ly, Lz))),
        comb((1, mm(Ly, Rz)), (-s, mm(Rz, Ly)), (-s, mm(Rz, Ry)), (1, Ryz)),
    ]


@pytest.mark.parametrize("spec", ALTERNATIVE_CORPUS, ids=str)
def test_operator_identities_on_alternative_corpus(spec):
    A = build_corpus(*spec)
    rep = check_operator_identities(A)
    assert rep.verdict and not rep.expected_to_fail
    D = Dense(field_char(A))
    for i, j in itertools.product(range(A.dim), repeat=2):
        assert all(D.is_zero(M) for M in _dense_identity_defects(A, i, j))


def test_operator_identities_fail_on_control():
    A = build_corpus("shestakov-idempotent")
    rep = check_operator_identities(A)
    assert not rep.verdict and rep.expected_to_fail
    assert rep.replay(A) == rep.defect and not rep.defect.is_zero()
    i, j = rep.pair
    assert any(not Dense(3).is_zero(M) for M in _dense_identity_defects(A, i, j))


@settings(max_examples=30, deadline=None)
@given(graded_algebras(fields=("GF(3)", "GF(5)"), max_dim=3))
def test_operator_identities_hold_whenever_alternative(A):
    from superengel import check_alternative_super

    if check_alternative_super(A).verdict:
        assert check_operator_identities(A).verdict


@settings(max_examples=30, deadline=None)
@given(graded_algebras())
def test_operators_are_linear(A):
    f = A.field
    basis = A.basis()
    for par in (0, 1):
        elems = [b for b in basis if b.parity == par]
        if len(elems) < 2:
            continue
        x = elems[0].scale(f.coerce(2)) + elems[1]
        assert R(x) == R(elems[0]).scale(f.coerce(2)) + R(elems[1])
        assert L(x) == L(elems[0]).scale(f.coerce(2)) + L(elems[1])


@pytest.mark.parametrize("spec", [("shestakov-alt",), ("grassmann-aug", 3), ("zero", 1, 2)], ids=str)
def test_signed_R_equals_L_when_supercommutative(spec):
    A = build_corpus(*spec)
    for a in A.basis():
        assert R(a) == L(a)


# Engel checks ------------------------------------------------------------------

def test_shestakov_R_nilpotency_fails_at_f2():
    A = build_corpus("shestakov-alt")
    for backend in ("enumerate", "symbolic"):
        res = engel_check(A, "RNilpotencyOnly", backend)
        assert not res.verdict
        assert res.witness.parity == 1
        assert R(res.witness).nilpotency_index() is None
    assert engel_check(A, backend="enumerate").witness == A.by_name("f2")


def test_full_engel_needs_enumeration():
    with pytest.raises(UnsupportedMode):
        engel_check(build_corpus("upper-tri", 3, "010"), "FullEngel", "symbolic")


def test_full_engel_enumeration():
    A = build_corpus("upper-tri", 3, "010", "GF(3)")
    res = engel_check(A, "FullEngel", "enumerate")
    assert res.verdict and res.index is not None


def test_engel_element_check():
    A = build_corpus("upper-tri", 3, "000")
    res = engel_element_check(A.by_name("E12"))
    assert res.engelian and res.index == 2
    M = build_corpus("m11")
    assert not engel_element_check(M.by_name("E11")).engelian


@pytest.mark.parametrize("spec", [
    ("shestakov-alt",), ("m11", "GF(3)"), ("upper-tri", 3, "010", "GF(3)"), ("grassmann-aug", 2, "GF(3)"),
    ("zero", 1, 2, "GF(3)"), ("shestakov-idempotent",),
], ids=str)
def test_engel_backends_agree(spec):
    A = build_corpus(*spec)
    sym, enum = engel_check(A, backend="symbolic"), engel_check(A, backend="enumerate")
    assert sym.verdict == enum.verdict


def test_mult_superalgebra():
    S = build_corpus("shestakov-alt")
    assert not algebra_nilpotency(mult_superalgebra(SubSuperspace.whole(S))).nilpotent
    U = build_corpus("upper-tri", 3, "010")
    W = mult_superalgebra(SubSuperspace.whole(U))
    assert W.verify_closure()
    assert algebra_nilpotency(W).nilpotent


# spans, weak closure, Jacobson ---------------------------------------------------

def _m(rows, f=QQ):
    return Matrix.from_lists(f, rows)


def test_span_nilpotent():
    E12, E21 = _m([[0, 1], [0, 0]]), _m([[0, 0], [1, 0]])
    assert span_nilpotent([E12], QQ).nilpotent
    res = span_nilpotent([E12, E21], QQ)
    assert not res.nilpotent
    a, b = res.witness
    assert (E12.scale(a) + E21.scale(b)).nilpotency_index() is None


def test_single_nilpotent_is_weakly_closed():
    N = _m([[0, 1], [0, 0]])
    W = WeaklyClosedSet(QQ, 2, [N], [0], ["N"])
    assert weakly_closed_verify(W).verdict
    assert jacobson_nilpotency(W).index == 2


def test_commuting_pair_not_weakly_closed():
    E12, E21 = _m([[0, 1], [0, 0]]), _m([[0, 0], [1, 0]])
    W = WeaklyClosedSet(QQ, 2, [E12, E21], [0, 0], ["E12", "E21"], gamma=lambda pa, pb, f: 1)
    assert not weakly_closed_verify(W).verdict
    with pytest.raises(HypothesisViolated):
        jacobson_nilpotency(W)


def test_super_gamma_on_odd_pair():
    # odd E12, E21: E12 E21 - E21 E12 = E11 - E22 has no even member to land on
    E12, E21 = _m([[0, 1], [0, 0]]), _m([[0, 0], [1, 0]])
    W = WeaklyClosedSet(QQ, 2, [E12, E21], [1, 1], ["E12", "E21"])
    assert weakly_closed_verify(W).failing_pair == (0, 1)


def test_strict_upper_triangular_is_weakly_closed():
    E12, E13, E23 = (_m([[int((r, c) == rc) for c in range(3)] for r in range(3)]) for rc in [(0, 1), (0, 2), (1, 2)])
    W = WeaklyClosedSet(QQ, 3, [E12, E13, E23], [0, 0, 0], ["E12", "E13", "E23"])
    res = weakly_closed_verify(W)
    assert res.verdict
    # E12 E23 + E23 E12 = E13
    assert res.witnesses[(0, 2)] == ((1, QQ.one),)
    assert jacobson_nilpotency(W).index == 3


def test_plain_R_power_identity():
    A = build_corpus("upper-tri", 4, "0101")
    x = A.by_name("E12") + A.by_name("E34")
    assert plain_R_power_identity(x).holds
    assert plain_R_product_identity([A.by_name("E12"), A.by_name("E23"), A.by_name("E34")])
    with pytest.raises(NotAssociative):
        plain_R_power_identity(build_corpus("shestakov-alt").by_name("f2"))
