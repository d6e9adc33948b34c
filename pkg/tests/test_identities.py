from __future__ import annotations

import pytest
from hypothesis import given, settings

from oracles import functional_alternative
from strategies import graded_algebras
from superengel import (
    GF,
    associator,
    build_corpus,
    check_alternative_super,
    check_jordan_super,
    check_superassociative,
    check_supercommutative,
    check_via_envelope,
)
from superengel.errors import CharTwoUnsupported
from superengel.identities import koszul


def test_koszul_sign():
    # moving odd past odd costs a sign
    assert koszul((1, 0), (1, 1)) == 1
    assert koszul((1, 0), (0, 1)) == 0
    assert koszul((0, 1), (1, 1)) == 0


def test_shestakov_verdicts():
    A = build_corpus("shestakov-alt")
    assert check_alternative_super(A).verdict
    assert check_supercommutative(A).verdict
    assert check_jordan_super(A).verdict


def test_shestakov_associativity_witness_is_lex_least():
    A = build_corpus("shestakov-alt")
    rep = check_superassociative(A)
    assert not rep.verdict
    assert [str(x) for x in rep.witness_elements(A)] == ["e1", "f2", "f2"]
    e1, f1, f2 = A.basis()
    assert associator(e1, f2, f2) == e1 == rep.replay(A)
    assert associator(f2, e1, f2) == e1.scale(2)


@pytest.mark.parametrize("field", ["GF(5)", "Q"])
def test_alternative_fails_away_from_three(field):
    A = build_corpus("shestakov-jordan", field)
    rep = check_alternative_super(A)
    assert not rep.verdict and rep.failed == "alternative-right"
    assert [str(x) for x in rep.witness_elements(A)] == ["f2", "e1", "f2"]
    defect = rep.replay(A)
    assert defect == A.by_name("e1").scale(3) and not defect.is_zero()
    # a second run yields the same witness
    assert check_alternative_super(A) == rep


def test_idempotent_control():
    A = build_corpus("shestakov-idempotent")
    rep = check_alternative_super(A)
    assert not rep.verdict
    assert [str(x) for x in rep.witness_elements(A)] == ["e1", "e1", "f2"]
    assert rep.replay(A) == A.by_name("f1")


def test_m11_not_supercommutative():
    A = build_corpus("m11")
    rep = check_supercommutative(A)
    assert not rep.verdict
    assert [str(x) for x in rep.witness_elements(A)] == ["E11", "E12"]
    # E12 E21 + E21 E12 = E11 + E22 != 0 as well
    E12, E21 = A.by_name("E12"), A.by_name("E21")
    assert E12 * E21 + E21 * E12 == A.by_name("E11") + A.by_name("E22")
    assert not check_jordan_super(A).verdict


def test_jordan_over_q_with_envelope_confirmation():
    rep = check_jordan_super(build_corpus("shestakov-jordan"))
    assert rep.verdict and rep.notes == ("confirmed in G6(A)",)


def test_jordan_characteristic_two_rejected():
    A = build_corpus("zero", 1, 1, "GF(2)")
    with pytest.raises(CharTwoUnsupported):
        check_jordan_super(A)


def test_envelope_failure_records_defect():
    rep = check_via_envelope(build_corpus("shestakov-jordan", "GF(5)"), 4, "alternative")
    assert not rep.verdict and rep.envelope_gens == 4 and rep.envelope_defect is not None
    assert not check_via_envelope(build_corpus("shestakov-jordan", "GF(5)"), 4, "alternative").replay(
        build_corpus("shestakov-jordan", "GF(5)")) == {}


@pytest.mark.parametrize("name,params", [
    ("shestakov-alt", ()), ("shestakov-jordan", ("GF(5)",)), ("shestakov-idempotent", ()),
    ("m11", ("GF(3)",)), ("upper-tri", (3, "010", "GF(3)")), ("grassmann-aug", (2, "GF(3)")),
])
def test_direct_alternative_matches_functional_oracle(name, params):
    A = build_corpus(name, *params)
    assert check_alternative_super(A).verdict == functional_alternative(A)


@settings(max_examples=40, deadline=None)
@given(graded_algebras(fields=("GF(3)", "GF(5)"), max_dim=3))
def test_direct_alternative_matches_functional_oracle_random(A):
    assert check_alternative_super(A).verdict == functional_alternative(A)


@settings(max_examples=15, deadline=None)
@given(graded_algebras(fields=("GF(3)", "GF(5)", "Q"), max_dim=2, max_entries=4))
def test_direct_matches_envelope_random(A):
    assert check_alternative_super(A).verdict == check_via_envelope(A, 4, "alternative").verdict
    assert check_jordan_super(A, budget=0).verdict == check_via_envelope(A, 4, "jordan").verdict


def test_supercommutative_associative_algebras_are_alternative():
    G = build_corpus("grassmann-aug", 3)
    assert check_superassociative(G).verdict and check_alternative_super(G).verdict


def test_gf3_table_is_alternative_only_in_characteristic_three():
    assert check_alternative_super(build_corpus("shestakov-jordan", GF(3))).verdict
