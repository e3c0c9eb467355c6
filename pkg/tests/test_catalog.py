"""Catalog entries against values typed in independently from the source text."""

from fractions import Fraction

import pytest

from hminkowski.catalog import (DerivedOnly, build_model, model_at, model_from_name, m_inverse,
                                printed_relations)
from hminkowski.dsl import parse_expression as P
from hminkowski.equations import system
from hminkowski.tensor import AlgMatrix, mat_product, permutation_P


def mat(rows, scale="1"):
    return AlgMatrix([[P(f"({scale})*({x})") for x in row] for row in rows])


M1, M2 = build_model(1), build_model(2)

R_H = [["1", "-h", "h", "h^2"], ["0", "1", "0", "-h"], ["0", "0", "1", "h"], ["0", "0", "0", "1"]]
G1 = [["0", "0", "0", "1"], ["0", "0", "-1", "h"], ["0", "-1", "0", "-h"], ["1", "-h", "h", "-r - h^2"]]
G2 = [["0", "0", "0", "1"], ["0", "0", "-1", "2*h"], ["0", "-1", "0", "0"], ["1", "0", "2*h", "-3*h^2"]]
R3_1 = [["1", "0", "0", "0"], ["0", "1", "r", "0"], ["0", "0", "1", "0"], ["0", "0", "0", "1"]]
R3_2 = [["1", "0", "-h", "0"], ["-h", "1", "0", "h"], ["0", "0", "1", "0"], ["0", "0", "h", "1"]]


def test_jordanian_r_matrix():
    assert M1["R_h"] == mat(R_H)
    assert M2["R_h"] == mat(R_H)
    assert mat_product(permutation_P(2), M1["R_h"]) == M1["Rhat_h"]


@pytest.mark.parametrize("spec,rows", [(M1, G1), (M2, G2)])
def test_metric_display(spec, rows):
    assert spec["g_h"] == mat(rows, "1/(2 + h^2)")


@pytest.mark.parametrize("spec,rows", [(M1, R3_1), (M2, R3_2)])
def test_r3(spec, rows):
    assert spec["R3"] == mat(rows)


def test_trace_matrix_and_epsilon():
    assert M1["D_h"] == mat([["1", "-2*h"], ["0", "1"]])
    assert M1["eps"] @ M1["eps_inv"] == AlgMatrix.identity(2)


def test_projector_minus_rank_one_display():
    Pm = M1["P_minus"]
    assert Pm @ Pm == Pm
    assert Pm[1, 1] == P("1/2") and Pm[0, 3] == P("-h^2/2")


@pytest.mark.parametrize("spec,text", [
    (M1, "2/(h^2 + 2)*(al*de - be*ga + h*be*de)"),
    (M2, "2/(h^2 + 2)*(al*de - be*ga + 2*h*be*de)"),
])
def test_displayed_det(spec, text):
    assert spec.expressions["det_h_K"] == P(text)


def test_m2_minkowski_spot_relations():
    sm = system(M2, "minkowski")
    for rel in ("be*ga - ga*be - 3*h^2*de^2", "be*de - de*be - 2*h*de^2", "ga*de - de*ga + 2*h*de^2"):
        assert not sm.normal_form(P(rel)), rel


def test_m1_minkowski_spot_relations():
    sm = system(M1, "minkowski")
    for rel in ("be*de - de*be - h*de^2", "be*ga - ga*be - h*de*(ga + be) - r*de^2"):
        assert not sm.normal_form(P(rel)), rel


def test_model_names():
    assert model_from_name(" m2 ") is M2
    with pytest.raises(ValueError):
        model_from_name("M3")
    with pytest.raises(ValueError):
        build_model(0)


def test_printed_relations_lookup():
    assert printed_relations(M1, "mixed_ky").partial
    assert len(printed_relations(M2, "minkowski").relations) == 6
    with pytest.raises(DerivedOnly):
        printed_relations(M1, "forms_kdk")
    with pytest.raises(KeyError):
        printed_relations(M1, "nonsense")


def test_model_at_specialises_everything():
    s = model_at(1, Fraction(1, 2), 3)
    assert s.point == (Fraction(1, 2), Fraction(3))
    assert s.label == "M1[h=1/2, r=3]"
    assert s["R_h"][0, 3] == P("1/4")
    assert s["g_h"][3, 3] == P("(-3 - 1/4)/(2 + 1/4)")
    assert s.expressions["det_h_K"] == P("8/9*(al*de - be*ga + 1/2*be*de)")
    # M2 ignores r
    assert model_at(2, 1, 5).point == (Fraction(1), Fraction(0))


def test_adjugate_is_inverse_up_to_xi():
    sg = system(M1, "group")
    prod = (M1["M"] @ m_inverse(M1)).map(sg.normal_form)
    xi = sg.normal_form(M1.xi())
    assert prod == AlgMatrix([[xi, P("0")], [P("0"), xi]])
