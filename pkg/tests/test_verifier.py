import pytest

from hminkowski.catalog import Relation, build_model
from hminkowski.dsl import parse_expression as P
from hminkowski.equations import derive_relations, system
from hminkowski.scalars import H, ParamScalar
from hminkowski.tensor import AlgMatrix, permutation_P
from hminkowski.verifier import (CHECK_IDS, CheckReport, Witness, check_braided_addition, check_dh_properties,
                                 check_mixed_ybe, check_r3_reality, check_r3_represents_glh2, check_spectral,
                                 check_star_structure, check_triangularity, check_ybe, compare_relation_sets,
                                 compute_det_h_K, hermitian_derivatives_table, run_suite, select_checks)

M1, M2 = build_model(1), build_model(2)
I4 = AlgMatrix.identity(4)


def shifted_R(shift):
    h = H + shift
    return AlgMatrix([[1, -h, h, h * h], [0, 1, 0, -h], [0, 0, 1, h], [0, 0, 0, 1]])


def test_report_needs_witness_to_fail():
    with pytest.raises(ValueError):
        CheckReport("x", "fail")
    with pytest.raises(ValueError):
        CheckReport("x", "maybe")
    rep = CheckReport("x", "fail", [Witness("here", P("al"))])
    assert "FAIL" in rep.summary_line() and "here: al" in rep.summary_line()


def test_ybe_and_triangularity():
    assert check_ybe(M1["R_h"]).passed and check_triangularity(M1["R_h"]).passed
    assert check_ybe(I4).passed and check_triangularity(I4).passed
    # a shifted parameter still solves both: the check must not depend on spelling h
    assert check_triangularity(shifted_R(1)).passed


def test_standard_q_type_matrix_is_not_triangular():
    q = ParamScalar(2)
    R = AlgMatrix([[q, 0, 0, 0], [0, 1, q - 1 / q, 0], [0, 0, 1, 0], [0, 0, 0, q]])
    assert check_ybe(R).passed
    rep = check_triangularity(R)
    assert rep.status == "fail" and rep.witnesses


def test_perturbed_entry_breaks_ybe():
    R = M1["R_h"] + AlgMatrix([[0, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 0], [0, 0, 0, 0]])
    assert not check_ybe(R).passed


def test_spectral():
    P = permutation_P(2)
    Rhat = P @ M1["R_h"]
    assert check_spectral(Rhat, M1["P_plus"], M1["P_minus"]).details["ranks"] == {"P+": 3, "P-": 1}
    assert not check_spectral(Rhat, M1["P_minus"], M1["P_plus"]).passed
    half = ParamScalar(1, 2)
    assert check_spectral(P, (I4 + P).scale(half), (I4 - P).scale(half)).passed


def test_mixed_ybe_detects_mismatched_r():
    assert check_mixed_ybe(M1).passed and check_mixed_ybe(M2).passed
    bad = M1["R3"] + AlgMatrix([[0, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 0], [0, 0, 0, 0]])
    assert not check_mixed_ybe(M1, r3_23=bad).passed


def test_r3_reality_and_blocks():
    for spec in (M1, M2):
        assert check_r3_reality(spec).passed
        assert check_r3_represents_glh2(spec).passed
    asym = AlgMatrix([[0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]) + M1["R3"]
    assert not check_r3_reality(M1, asym).passed


def test_compare_relation_sets_catches_sign_flip():
    derived = derive_relations("minkowski", M1)
    good = M1.printed["minkowski"]
    assert compare_relation_sets(derived, good).passed
    flipped = [Relation(r.label, r.lhs, -r.rhs) for r in good.relations]
    rep = compare_relation_sets(derived, flipped)
    assert rep.status == "fail"
    assert all(w.residual for w in rep.witnesses)


def test_one_directional_comparison():
    derived = derive_relations("minkowski", M1)
    subset = list(M1.printed["minkowski"].relations)[:2]
    assert not compare_relation_sets(derived, subset).passed
    assert compare_relation_sets(derived, subset, one_directional=True).passed


def test_dh_properties_rejects_identity():
    assert check_dh_properties(M1).passed
    rep = check_dh_properties(M1, AlgMatrix.identity(2))
    assert any(w.where.startswith("(iii)") for w in rep.witnesses)


def test_braided_addition_needs_cross_relations():
    assert check_braided_addition(M2).passed
    assert not check_braided_addition(M2, include_cross=False).passed


def test_hermitian_derivatives_break_star_closure():
    assert check_star_structure(M1).passed
    rep = check_star_structure(M1, hermitian_derivatives_table(), ["mixed"])
    assert rep.status == "fail"


@pytest.mark.parametrize("spec,coef", [(M1, "h"), (M2, "2*h")])
def test_det_values(spec, coef):
    sm = system(spec, "minkowski")
    expected = P(f"2/(h^2 + 2)*(al*de - be*ga + {coef}*be*de)")
    assert compute_det_h_K(spec) == sm.normal_form(expected)


def test_det_at_h_zero():
    from hminkowski.catalog import model_at
    c0 = model_at(1, 0, 0)
    assert compute_det_h_K(c0) == system(c0, "minkowski").normal_form(P("al*de - be*ga"))


def test_select_checks():
    assert select_checks("all") == list(CHECK_IDS)
    assert select_checks("r3") == ["r3_reality", "r3_represents_glh2"]
    assert select_checks("oracle,ybe") == ["ybe", "oracle"]
    with pytest.raises(KeyError):
        select_checks("nope")


@pytest.mark.parametrize("spec", [M1, M2], ids=["M1", "M2"])
def test_full_suite_passes(spec):
    reports = run_suite(spec)
    assert [r.id for r in reports] == list(CHECK_IDS)
    failed = {r.id: [str(w) for w in r.witnesses[:2]] for r in reports if not r.passed}
    assert not failed
