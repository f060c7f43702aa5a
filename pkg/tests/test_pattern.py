import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pgconstraints import KindConflict, ParseError, build_graph, eval_predicates, parse_predicates, parse_query
from pgconstraints.pattern import EDGE, PATH, VERTEX, ConstEq, ConstNeq, Exists, Prop, TermEq, TermNeq, Unsat, Var, print_predicates

from oracles import holds, random_cq_text, random_graph


def test_moderator_query():
    q = parse_query("(x)-[:hasModerator]->(y)")
    assert q.variables == ("x", "y")
    assert q.is_cq
    (a,) = q.atoms
    assert (a.src, a.dst, a.binder, a.label) == ("x", "y", None, "hasModerator")


def test_single_vertex():
    q = parse_query("(x)")
    assert q.variables == ("x",) and q.atoms == ()


def test_path_variable():
    q = parse_query("(x)-[p:/a*/]->(y)")
    assert q.kind("p") == PATH and not q.is_cq
    assert q.atoms[0].regex.to_text() == "a*"


def test_backward_arrow_resolves_direction():
    q = parse_query("(x)<-[e:hasCreator]-(z)")
    a = q.atoms[0]
    assert (a.src, a.dst) == ("z", "x") and q.kind("e") == EDGE and q.kind("z") == VERTEX


def test_kind_conflict():
    with pytest.raises(KindConflict):
        parse_query("(x)-[x]->(y)")


@pytest.mark.parametrize("bad", ["(x", "(x)-[:a->(y)", "x", "(x)-[e:/a/]->", "(x)--(y)"])
def test_query_syntax_errors(bad):
    with pytest.raises(ParseError):
        parse_query(bad)


def test_parse_error_position():
    with pytest.raises(ParseError) as info:
        parse_query("(x)-[:a]->(y")
    assert "column" in str(info.value)


def test_predicates_all_forms():
    ps = parse_predicates('x.a = y.b, x != y, x.a = "α", y.b != "c", ex(x.a), false')
    assert ps == (
        TermEq(Prop("x", "a"), Prop("y", "b")),
        TermNeq(Var("x"), Var("y")),
        ConstEq(Prop("x", "a"), "α"),
        ConstNeq(Prop("y", "b"), "c"),
        Exists(Prop("x", "a")),
        Unsat(),
    )


def test_eval_empty_is_true():
    g = build_graph(["u"])
    assert eval_predicates((), {"x": "u"}, g)


def test_eval_same_value_properties():
    g1 = build_graph([{"id": "u", "props": {"a": "α", "b": "α"}}])
    g2 = build_graph([{"id": "u", "props": {"a": "α", "b": "β"}}])
    c = parse_predicates("x.a = x.b")
    assert eval_predicates(c, {"x": "u"}, g1)
    assert not eval_predicates(c, {"x": "u"}, g2)


def test_undefined_property_makes_comparisons_false():
    g = build_graph([{"id": "u", "props": {"a": "α"}}, "v"])
    h = {"x": "u", "y": "v"}
    for text in ["x.a = y.a", "x.a != y.a", 'y.a = "α"', 'y.a != "α"', "ex(y.a)"]:
        assert not eval_predicates(parse_predicates(text), h, g), text


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_query_print_parse_round_trip(seed):
    rng = random.Random(seed)
    qt, pt = random_cq_text(rng)
    q = parse_query(qt)
    assert parse_query(str(q)) == q
    if pt:
        ps = parse_predicates(pt)
        assert parse_predicates(print_predicates(ps)) == ps


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_eval_matches_oracle(seed):
    rng = random.Random(seed)
    g = random_graph(rng, max_vertices=3, max_edges=0)
    _, pt = random_cq_text(rng, max_vars=3)
    if not pt:
        return
    ps = parse_predicates(pt)
    names = {t.name for p in ps for t in _terms(p)}
    h = {v: rng.choice(g.vertices) for v in names}
    assert eval_predicates(ps, h, g) == all(holds(p, h, g) for p in ps)


def _terms(p):
    if isinstance(p, (TermEq, TermNeq)):
        return (p.left, p.right)
    if isinstance(p, Unsat):
        return ()
    return (p.term,)
