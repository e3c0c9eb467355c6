import pytest

from hminkowski.catalog import build_model, model_at
from hminkowski.dsl import parse_expression as P
from hminkowski.equations import (EQUATIONS, FAMILY_NAMES, ReflectionEqSpec, _f, derive_relations,
                                  plane_relations, system, system_relations)
from hminkowski.ncalg import AlgElement
from hminkowski.rewrite import check_confluence, relation_sets_equivalent
from hminkowski.tensor import AlgMatrix, DimensionError

M1, M2 = build_model(1), build_model(2)

RULE_COUNTS = {"group": 6, "lorentz": 28, "minkowski": 6, "derivatives": 6, "mixed": 28, "forms": 32,
               "braided": 28, "lorentz_minkowski": 66, "lorentz_derivatives": 66, "plane": 1}


def test_minkowski_relations_reduce_to_zero():
    sm = system(M1, "minkowski")
    for x in derive_relations("minkowski", M1):
        assert not sm.normal_form(x)
    assert not sm.normal_form(P("be*de - de*be - h*de^2"))


def test_m2_mixed_spot_relation():
    sx = system(M2, "mixed")
    assert not sx.normal_form(P("d_be*ga - ga*d_be - 4*h^2*de*d_al"))
    assert not sx.normal_form(P("d_al*al - al*d_al - 1 - 2*h*(be*d_al - ga*d_al) + 4*h^2*de*d_al"))


def test_plane():
    miss = relation_sets_equivalent(plane_relations(M1), [P("x*y - y*x - h*y^2", ("x", "y"))])
    assert miss == ([], [])


def test_classical_limit_is_commutative():
    c0 = model_at(1, 0, 0)
    expected = [P(f"{a}*{b} - {b}*{a}") for i, a in enumerate(("al", "be", "ga", "de"))
                for b in ("al", "be", "ga", "de")[i + 1:]]
    assert relation_sets_equivalent(derive_relations("minkowski", c0), expected) == ([], [])


def test_shape_mismatch():
    bad = ReflectionEqSpec("bad", _f("R_h K1"), _f("K"))
    with pytest.raises(DimensionError):
        bad.sides(M1)


def test_substitution_changes_the_equation():
    zero = AlgMatrix.zeros(2)
    assert derive_relations("minkowski", M1, {"K": zero}) == []
    assert derive_relations("minkowski", M1)


def test_equation_text():
    assert str(EQUATIONS["minkowski"]) == "R_h K1 R2 K2 = K2 R3 K1 R_h_dag"
    assert str(EQUATIONS["mixed"]) == "Y2 R_h K1 R2 = R3 K1 R_h_dag Y2 + R3 P"
    assert str(EQUATIONS["forms_dkdk"]).endswith("= -dK2 R3 dK1 R_h_dag")


@pytest.mark.parametrize("spec", [M1, M2], ids=["M1", "M2"])
@pytest.mark.parametrize("name", sorted(RULE_COUNTS))
def test_shipped_systems_are_confluent(spec, name):
    s = system(spec, name)
    assert len(s) == RULE_COUNTS[name]
    assert check_confluence(s, 3).confluent


def test_system_cache_and_unknown():
    assert system(1, "minkowski") is system(M1, "minkowski")
    with pytest.raises(KeyError):
        system_relations(M1, "nope")
    assert "plane" in FAMILY_NAMES


def test_symbolic_system_specialises_to_pointwise_system():
    s = model_at(2, 3, 0)
    sym = system(M2, "derivatives")
    num = system(s, "derivatives")
    for rule in num.rule_list():
        assert AlgElement(sym.rules[rule.lhs].substitute(3, 0)) == rule.rhs
