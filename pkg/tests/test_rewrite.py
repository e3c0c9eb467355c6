import pytest
from hypothesis import given

from hminkowski.catalog import build_model
from hminkowski.dsl import parse_expression as P
from hminkowski.equations import system
from hminkowski.ncalg import AlgElement, commutator, gen
from hminkowski.rewrite import (CompletionError, GeneratorOrder, NotConfluentError, OrientationError,
                                RewriteSystem, check_confluence, closed_under_star, commutation_rules,
                                complete, equivalent_modulo, is_central, orient, relation_sets_equivalent,
                                require_confluent)
from hminkowski.scalars import H

from strategies import elements

M1 = build_model(1)
COORDS = ("al", "be", "ga", "de")


def test_spot_rule_for_de_ga():
    sm = system(M1, "minkowski")
    assert sm.normal_form(P("de*ga")) == P("ga*de + h*de^2")
    assert sm.normal_form(P("be*de - de*be - h*de^2")) == AlgElement()


def test_orientation_picks_the_largest_word():
    s = orient([P("x*y - y*x - h*y^2")])
    (rule,) = s.rule_list()
    assert rule.lhs == ("y", "x")
    assert rule.rhs == P("x*y - h*y^2")


def test_rules_must_decrease():
    with pytest.raises(OrientationError):
        RewriteSystem({("x", "y"): P("y*x")})


def test_inconsistent_relations():
    with pytest.raises(OrientationError):
        orient([P("x*y - y*x"), P("x*y - y*x - 1")])


def test_interreduction_drops_consequences():
    s = orient([P("y*x - x*y"), P("2*y*x - 2*x*y"), P("y*x - x*y + (y*x - x*y)*x")])
    assert len(s) == 1


def test_commuting_system_is_confluent():
    s = orient(commutation_rules(("x",), ("y",)))
    assert check_confluence(s).confluent


def test_non_confluent_system_is_detected_and_completed():
    # y y x reduces to x x one way and to x the other
    s = orient([P("y*x - x"), P("y*y - x")], GeneratorOrder(("x", "y")))
    rep = check_confluence(s, 3)
    assert not rep.confluent
    assert rep.unresolved[0].word == ("y", "y", "x")
    with pytest.raises(NotConfluentError):
        require_confluent(s)
    done, added = complete(s, 3)
    assert check_confluence(done, 3).confluent
    assert ("x", "x") in [r.lhs for r in added]


def test_completion_gives_up_beyond_the_degree_bound():
    s = orient([P("y*x - x"), P("y*y - x")], GeneratorOrder(("x", "y")))
    with pytest.raises(CompletionError):
        complete(s, 1)


def test_confluence_needs_degree_three():
    with pytest.raises(ValueError):
        check_confluence(system(M1, "minkowski"), 2)


def test_centrality_and_star_closure():
    sm = system(M1, "minkowski")
    det = P("al*de - be*ga + h*be*de")
    assert is_central(det, sm, COORDS)
    assert not is_central(gen("al"), sm, COORDS)
    assert closed_under_star(sm)


def test_relation_set_equivalence():
    a = [P("y*x - x*y")]
    b = [P("x*y - y*x"), P("2*(x*y - y*x)")]
    assert relation_sets_equivalent(a, b) == ([], [])
    miss_a, miss_b = relation_sets_equivalent(a, [P("y*x - x*y - h*y^2")])
    assert miss_a and miss_b


def test_equivalent_modulo():
    sm = system(M1, "minkowski")
    assert equivalent_modulo(P("ga*de"), P("de*ga - h*de^2"), sm)


@given(elements(COORDS))
def test_normal_form_is_idempotent_and_normal(x):
    sm = system(M1, "minkowski")
    nf = sm.normal_form(x)
    assert sm.normal_form(nf) == nf
    assert all(sm.is_normal(w) for w in nf.words())


@given(elements(COORDS), elements(COORDS))
def test_normal_form_is_linear(x, y):
    sm = system(M1, "minkowski")
    assert sm.normal_form(x + y) == sm.normal_form(x) + sm.normal_form(y)
    assert sm.normal_form(x.scale(H)) == sm.normal_form(x).scale(H)


@given(elements(COORDS, max_degree=4), elements(COORDS, max_degree=2))
def test_strategy_independence(x, y):
    sm = system(M1, "minkowski")
    assert sm.normal_form(x, "left") == sm.normal_form(x, "right")
    # reducing a factor first does not change the result
    assert sm.normal_form(x * y) == sm.normal_form(sm.normal_form(x) * sm.normal_form(y))


@given(elements(("d_al", "d_be", "d_ga", "d_de"), max_degree=4))
def test_strategy_independence_for_derivatives(x):
    sd = system(build_model(2), "derivatives")
    assert sd.normal_form(x, "left") == sd.normal_form(x, "right")


@given(elements(("al", "de", "d_al", "d_be"), max_degree=3))
def test_strategy_independence_with_inhomogeneous_rules(x):
    s = system(M1, "mixed")
    assert s.normal_form(x, "left") == s.normal_form(x, "right")


def test_commutator_reduction_of_a_central_word():
    sd = system(M1, "derivatives")
    assert sd.normal_form(commutator(gen("d_al"), gen("d_al"))) == AlgElement()
