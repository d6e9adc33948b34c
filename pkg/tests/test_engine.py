from __future__ import annotations

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from instances import pipeline_controls, pipeline_instances, nilpotency_corpus
from oracles import bracketing_nilpotency_index
from strategies import graded_algebras, perturbation
from superengel import (
    build_corpus,
    certificate_json,
    check_alternative_super,
    corollary_associative_gradednil,
    corollary_oddnil2,
    counterexample_search,
    engel_chain,
    engel_check,
    power_series,
    shestakov_support,
    special_jordan_pipeline,
    verify_certificate,
    verify_qideal,
)
from superengel.engine.certificates import diff_paths
from superengel.engine.jordan import circle, is_plus_closed, plus_functor
from superengel.engine.search import SearchTemplate
from superengel.errors import (
    BudgetExceeded,
    CharTwoUnsupported,
    NotAssociative,
    NotPlusClosed,
    ParseError,
    PreconditionFailed,
)
from superengel.operators import R
from superengel.structure import SubSuperspace


def span(A, *texts):
    return SubSuperspace.span_of(A, [A.parse_element(t) for t in texts])


# Q-ideal ---------------------------------------------------------------------

def test_qideal_step_passes():
    A = build_corpus("upper-tri", 3, "010")
    q = verify_qideal(span(A, "E13"), A.by_name("E12"))
    assert q.ok and q.pair_products_in_Q and q.v_words_in_Q and q.two_sided
    assert q.n == 2 and q.B == span(A, "E12", "E13")


def test_qideal_rejects_non_nilpotent_Rv():
    A = build_corpus("shestakov-alt")
    with pytest.raises(PreconditionFailed) as exc:
        verify_qideal(SubSuperspace.zero(A), A.by_name("f2"))
    assert exc.value.reason == "Rv-not-nilpotent"
    w = exc.value.witness
    assert w.element == A.by_name("f2") and w.power == 1 and w.rank == 2 and w.recheck()


@pytest.mark.parametrize("v,I,reason", [
    ("E12+E13", (), "v-not-homogeneous"),
    ("E13", ("E13",), "v-in-I"),
    ("E12", ("E12", "E23"), "I-not-subalgebra"),
])
def test_qideal_preconditions(v, I, reason):
    A = build_corpus("upper-tri", 3, "010")
    with pytest.raises(PreconditionFailed) as exc:
        verify_qideal(span(A, *I), A.parse_element(v))
    assert exc.value.reason == reason


def test_qideal_square_outside_I():
    M = build_corpus("m11")
    with pytest.raises(PreconditionFailed) as exc:
        verify_qideal(SubSuperspace.zero(M), M.by_name("E11"))
    assert exc.value.reason == "B-square-not-in-I"


# chain -----------------------------------------------------------------------

def test_chain_on_upper_triangular():
    A = build_corpus("upper-tri", 3, "010")
    cert = engel_chain(A)
    assert cert.nilpotent and len(cert.steps) == 3
    assert cert.a_index == cert.power_series_index == 3
    B = SubSuperspace.zero(A)
    for step in cert.steps:
        assert step.B_before == B and step.v not in B
        assert step.C == B.with_element(step.v) and (step.C * step.C) <= B
        assert step.qideal.inclusion_verdict
        B = step.C
    assert B == SubSuperspace.whole(A)


def test_chain_fails_on_shestakov_with_certified_witness():
    A = build_corpus("shestakov-alt")
    cert = engel_chain(A)
    assert not cert.nilpotent
    w = cert.failure
    assert w.recheck() and w.element.parity == 1
    assert R(w.element).nilpotency_index() is None


@pytest.mark.parametrize("A", nilpotency_corpus(), ids=lambda A: f"{A.name}/{A.field}")
def test_chain_on_nilpotency_corpus(A):
    cert = engel_chain(A)
    assert cert.nilpotent
    assert all(s.qideal.inclusion_verdict for s in cert.steps)
    assert cert.a_index == cert.power_series_index == bracketing_nilpotency_index(A)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10_000))
def test_chain_on_perturbations(seed):
    A = perturbation(seed)
    if not (check_alternative_super(A).verdict and engel_check(A).verdict):
        return
    cert = engel_chain(A)
    assert cert.nilpotent
    assert cert.a_index == power_series(A).index == bracketing_nilpotency_index(A)


@settings(max_examples=60, deadline=None)
@given(graded_algebras(fields=("GF(3)", "GF(5)"), max_dim=3))
def test_alternative_with_nilpotent_R_is_nilpotent(A):
    """No random alternative superalgebra with nilpotent R_a may be non-nilpotent."""
    if check_alternative_super(A).verdict and engel_check(A).verdict:
        assert power_series(A).reaches_zero
        assert engel_chain(A).nilpotent


# certificates ----------------------------------------------------------------

def test_chain_certificate_round_trip():
    A = build_corpus("shestakov-alt")
    text = certificate_json(A, engel_chain(A))
    res = verify_certificate(A, text)
    assert res.ok and res.byte_identical and res.kind == "chain"


def test_tampered_certificate_reports_path():
    A = build_corpus("upper-tri", 3, "010")
    doc = json.loads(certificate_json(A, engel_chain(A)))
    doc["a_index"] = 7
    res = verify_certificate(A, json.dumps(doc))
    assert not res.ok and res.mismatches == ["$.a_index"] and not res.byte_identical


def test_certificate_for_other_algebra_fails():
    A, B = build_corpus("upper-tri", 3, "010"), build_corpus("upper-tri", 3, "000")
    res = verify_certificate(B, certificate_json(A, engel_chain(A)))
    assert not res.ok and "$.algebra_digest" in res.mismatches


def test_bad_certificates():
    A = build_corpus("zero", 1, 0)
    with pytest.raises(ParseError):
        verify_certificate(A, "{not json")
    with pytest.raises(ParseError):
        verify_certificate(A, json.dumps({"kind": "unknown"}))


def test_diff_paths():
    assert diff_paths({"a": [1, 2]}, {"a": [1, 3]}) == ["$.a[1]"]
    assert diff_paths({"a": 1}, {"b": 1}) == ["$.a (missing)", "$.b (unexpected)"]
    assert diff_paths(1, True) == ["$"]


def test_pipeline_certificate_round_trip():
    label, A, J = pipeline_instances()[2]
    text = certificate_json(A, special_jordan_pipeline(A, J))
    res = verify_certificate(A, text)
    assert res.ok and res.byte_identical and res.kind == "pipeline"


# special Jordan pipeline ------------------------------------------------------

def test_circle_product():
    M = build_corpus("m11")
    E12, E21 = M.by_name("E12"), M.by_name("E21")
    c = circle(M, E12.sparse(), E21.sparse(), 1, 1)
    half = M.field.inv(M.field.coerce(2))
    assert c == (M.by_name("E11") - M.by_name("E22")).scale(half).sparse()


def test_plus_functor_is_jordan():
    from superengel import check_jordan_super

    P = plus_functor(build_corpus("m11", "GF(3)"))
    assert check_jordan_super(P).verdict


def test_plus_requirements():
    with pytest.raises(NotAssociative):
        plus_functor(build_corpus("shestakov-alt"))
    with pytest.raises(CharTwoUnsupported):
        plus_functor(build_corpus("upper-tri", 3, "010", "GF(2)"))
    A = build_corpus("upper-tri", 3, "000")
    J = span(A, "E12", "E23")
    assert not is_plus_closed(J)
    with pytest.raises(NotPlusClosed):
        special_jordan_pipeline(A, J)


@pytest.mark.parametrize("label,A,J", pipeline_instances(), ids=lambda x: x if isinstance(x, str) else "")
def test_pipeline_passes(label, A, J):
    cert = special_jordan_pipeline(A, J)
    assert cert.passed and cert.failed_stage is None
    assert cert.RJprime_equals_RJ and cert.weakly_closed
    assert J <= cert.Jprime
    assert cert.RJ_nilpotent_index is not None and cert.J_nilpotent_index is not None
    assert cert.Jprime_chain.nilpotent


def test_pipeline_has_proper_enlargement():
    assert any(J != special_jordan_pipeline(A, J).Jprime for _, A, J in pipeline_instances())


@pytest.mark.parametrize("label,A", pipeline_controls(), ids=lambda x: x if isinstance(x, str) else "")
def test_pipeline_unital_control_fails_at_engel_stage(label, A):
    cert = special_jordan_pipeline(A, SubSuperspace.whole(A))
    assert not cert.passed
    stage = cert.failed_stage
    assert stage.stage == 2 and stage.name == "engelian"
    w = A.element(A.field.parse(x) for x in stage.witness["element"])
    assert R(w).nilpotency_index() is None


# corollaries -------------------------------------------------------------------

def test_oddnil2_not_applicable_in_characteristic_three():
    res = corollary_oddnil2(build_corpus("shestakov-alt"))
    assert not res.applicable and "characteristic 3" in res.reasons


def test_oddnil2_applies_to_grassmann():
    res = corollary_oddnil2(build_corpus("grassmann-aug", 3))
    assert res.applicable and res.verdict and res.details["index"] == 4


def test_oddnil2_not_applicable_for_m11():
    res = corollary_oddnil2(build_corpus("m11"))
    assert not res.applicable and "some odd element does not square to zero" in res.reasons


def test_associative_graded_nil():
    res = corollary_associative_gradednil(build_corpus("upper-tri", 3, "010"))
    assert res.applicable and res.details["index"] == 3
    assert not corollary_associative_gradednil(build_corpus("shestakov-alt")).applicable
    assert not corollary_associative_gradednil(build_corpus("m11", "GF(3)")).applicable


# search ------------------------------------------------------------------------

def test_search_gf3_finds_the_example():
    res = counterexample_search(shestakov_support(), 3)
    assert res.examined == 243 and not res.violations
    assert (1, 1, 1, 2, 0) in [h.coeffs for h in res.hits]
    table = shestakov_support().instantiate(3, (1, 1, 1, 2, 0))
    assert table == build_corpus("shestakov-alt").with_name(table.name)


def test_search_gf5_finds_nothing():
    res = counterexample_search(shestakov_support(), 5)
    assert res.examined == 3125 and not res.hits and not res.violations


def test_search_budget_and_template_validation():
    with pytest.raises(BudgetExceeded):
        counterexample_search(shestakov_support(), 5, budget=100)
    with pytest.raises(ValueError):
        SearchTemplate((0, 1), ("e1", "f1"), ((0, 0, 1),))
