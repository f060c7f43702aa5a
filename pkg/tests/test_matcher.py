import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pgconstraints import (
    KindMismatch,
    Walk,
    WalkBudget,
    build_graph,
    extend_match,
    find_matches,
    has_match,
    parse_predicates,
    parse_query,
)
from pgconstraints.matcher import path_budgets, resolve_budget
from pgconstraints.pattern import Chain, Link, Query, VertexAtom
from pgconstraints.regex import parse_regex
from pgconstraints.witnesses import ggd_vs_pgkeys_witness, hierarchy_queries, thm1_witness

from oracles import brute_matches, product_reachable, random_cq_text, random_graph, random_regex


def _norm(ms):
    return sorted(tuple(sorted((k, repr(v)) for k, v in dict(m).items())) for m in ms)


def test_single_labelled_vertex():
    g = build_graph([{"id": "u", "labels": ["Message"]}])
    assert find_matches(g, parse_query("(x:Message)")) == [{"x": "u"}]


def test_two_free_vertices_give_four_matches():
    g = build_graph([{"id": "u", "props": {"a": "α"}}, {"id": "v", "props": {"a": "β"}}])
    ms = find_matches(g, parse_query("(x), (y)"))
    assert len(ms) == 4
    assert _norm(ms) == _norm(brute_matches(g, parse_query("(x), (y)")))


def test_two_path_through_shared_vertex():
    bundle = ggd_vs_pgkeys_witness(4)
    ms = find_matches(bundle.g2, parse_query("(x)->(y)->(z)"))
    assert any(m["x"].startswith("p") and m["y"] == "u" and m["z"].startswith("q") for m in ms)


def test_matches_are_canonical_and_unique():
    g = build_graph(["u", "v"], [("e1", "u", "v"), ("e2", "u", "v")])
    ms = find_matches(g, parse_query("(x)->(y)"))
    assert ms == [{"x": "u", "y": "v"}]  # anonymous edges are existential
    ms = find_matches(g, parse_query("(x)-[e]->(y)"))
    assert [m["e"] for m in ms] == ["e1", "e2"]


def test_extend_with_empty_base_is_find():
    g = build_graph(["u", "v"], [("e1", "u", "v")])
    q = parse_query("(x)-[e]->(y)")
    assert extend_match(g, q, (), {}) == find_matches(g, q)


def test_extend_respects_base():
    g = build_graph(["u", "v", "w"], [("e1", "u", "v"), ("e2", "u", "w")])
    q = parse_query("(x)->(y)")
    assert extend_match(g, q, (), {"y": "w"}) == [{"x": "u", "y": "w"}]
    assert extend_match(g, q, (), {"x": "v"}) == []


def test_base_kind_mismatch():
    g = build_graph(["u", "v"], [("e1", "u", "v")])
    with pytest.raises(KindMismatch):
        extend_match(g, parse_query("(x)-[e]->(y)"), (), {"e": "u"})


def test_hierarchy_extension_small():
    bundle = thm1_witness(1, 4)
    _, target = hierarchy_queries(1)
    base = {"x1": "e1"}
    assert extend_match(bundle.g1, target, (), base) == []
    ext = extend_match(bundle.g2, target, (), base)
    assert ext and all(m["t"] == "w" for m in ext)


def test_hierarchy_extension_reference_binding():
    # the source match x_i -> e_{2i} hits every cycle vertex; only the fresh vertex can serve as t
    bundle = thm1_witness(2, 8)
    source, target = hierarchy_queries(2)
    base = {"x1": "e2", "x2": "e4"}
    assert has_match(bundle.g1, source, (), None, base)
    assert extend_match(bundle.g1, target, (), base) == []
    ext = extend_match(bundle.g2, target, (), base)
    assert ext and {m["t"] for m in ext} == {"w"}


def test_default_budget():
    g = build_graph(["u", "v", "w"])
    assert resolve_budget(None, g, parse_regex("a.b*")) == WalkBudget(9, "default-derived")
    assert resolve_budget(None, g, parse_regex("a.b*"), True).max_len == 18
    assert resolve_budget(4, g, parse_regex("a")) == WalkBudget(4, "user-override")
    q = parse_query("(x)-[p:/a*/]->(y), (x)-[:r]->(y)")
    assert path_budgets(g, q) == [("(x)-[p:/a*/]->(y)", WalkBudget(6, "default-derived"))]


def test_negative_budget_rejected():
    with pytest.raises(ValueError):
        WalkBudget(-1)


def test_path_identity_doubles_budget():
    g = build_graph(["u"], [{"id": "e1", "src": "u", "dst": "u", "labels": ["a"]}])
    q = parse_query("(x)-[p:/a*/]->(x), (x)-[p2:/a*/]->(x)")
    ms = find_matches(g, q, parse_predicates("p != p2"))
    lengths = {len(m["p"]) for m in ms} | {len(m["p2"]) for m in ms}
    assert max(lengths) == 2 * 1 * 2  # 2 x |V| x states


def test_walk_values():
    g = build_graph(["u", "v"], [{"id": "e1", "src": "u", "dst": "v", "labels": ["a"]}])
    ms = find_matches(g, parse_query("(x)-[p:/a*/]->(y)"))
    assert {(m["x"], m["y"], m["p"]) for m in ms} == {
        ("u", "u", Walk("u")),
        ("v", "v", Walk("v")),
        ("u", "v", Walk("u", ("e1",), "v")),
    }


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_cq_matches_equal_brute_force(seed):
    rng = random.Random(seed)
    g = random_graph(rng, max_objects=5)
    qt, pt = random_cq_text(rng)
    q = parse_query(qt)
    ps = parse_predicates(pt) if pt else ()
    assert _norm(find_matches(g, q, ps)) == _norm(brute_matches(g, q, ps))


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_path_variable_matches_equal_brute_force(seed):
    rng = random.Random(seed)
    g = random_graph(rng, max_vertices=3, max_edges=3, elabels=("a", "b"))
    r = random_regex(rng, 3)
    q = Query((Chain(VertexAtom("x"), (Link(VertexAtom("y"), True, "p", None, r),)),))
    budget = rng.randint(0, 3)
    assert _norm(find_matches(g, q, (), budget)) == _norm(brute_matches(g, q, (), budget))


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_anonymous_path_existence_equals_product_reachability(seed):
    rng = random.Random(seed)
    g = random_graph(rng, max_vertices=5, max_edges=8, elabels=("a", "b"))
    r = random_regex(rng, 4)
    q = Query((Chain(VertexAtom("x"), (Link(VertexAtom("y"), True, None, None, r),)),))
    got = {(m["x"], m["y"]) for m in find_matches(g, q)}
    expected = {(u, v) for u in g.vertices for v in product_reachable(g, r, u)}
    assert got == expected


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_mixed_crpq_equals_brute_force(seed):
    rng = random.Random(seed)
    g = random_graph(rng, max_vertices=3, max_edges=3, elabels=("a", "b"))
    r = random_regex(rng, 2)
    q = parse_query(f"(x)-[e:a]->(y), (y)-[p:/{r.to_text()}/]->(z)")
    ps = parse_predicates("x != z") if rng.random() < 0.5 else ()
    assert _norm(find_matches(g, q, ps, 2)) == _norm(brute_matches(g, q, ps, 2))
