import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pgconstraints import (
    DanglingEndpoint,
    DuplicateId,
    Walk,
    build_graph,
    enumerate_walks,
    graph_from_json,
    graph_to_json,
    induced_subgraph,
)
from pgconstraints.errors import GraphError, InvalidId
from pgconstraints.graph import make_walk

from oracles import all_walks, count_walks_by_length
from strategies import graphs


def test_minimal_graph():
    g = build_graph(["u"])
    assert (len(g.vertices), len(g.edges)) == (1, 0)


def test_two_successor_graph():
    g = build_graph(["u", "v", "w"], [("e1", "u", "v"), ("e2", "u", "w")])
    assert g.vertices == ("u", "v", "w")
    assert g.endpoints["e2"] == ("u", "w")
    assert g.out_edges("u") == ("e1", "e2")
    assert g.in_edges("w") == ("e2",)


def test_dangling_endpoint():
    with pytest.raises(DanglingEndpoint):
        build_graph(["u"], [("e1", "u", "z")])


def test_duplicate_ids():
    with pytest.raises(DuplicateId):
        build_graph(["u", "u"])
    with pytest.raises(DuplicateId):
        build_graph(["u"], [("u", "u", "u")])


def test_invalid_id():
    with pytest.raises(InvalidId):
        build_graph([""])


def test_labels_and_props():
    g = build_graph([{"id": "u", "labels": ["Message"], "props": {"a": "α"}}])
    assert g.labels["u"] == {"Message"}
    assert g.prop("u", "a") == "α"
    assert g.prop("u", "b") is None


def test_induced_subgraph_identity_and_empty():
    g = build_graph(["u", "v"], [("e1", "u", "v"), ("e2", "v", "v")])
    assert induced_subgraph(g, g.vertices) == g
    empty = induced_subgraph(g, [])
    assert empty.vertices == () and empty.edges == ()


def test_induced_subgraph_component():
    g = build_graph(["a", "b", "c", "d"], [("e1", "a", "b"), {"id": "e2", "src": "c", "dst": "d", "labels": ["t"]}])
    assert induced_subgraph(g, ["a", "b"]) == build_graph(["a", "b"], [("e1", "a", "b")])


def test_induced_subgraph_unknown_vertex():
    g = build_graph(["u"])
    with pytest.raises(GraphError):
        induced_subgraph(g, ["nope"])


def test_walks_single_edge():
    g = build_graph(["u", "v"], [("e1", "u", "v")])
    assert enumerate_walks(g, "u", "v", 1) == [Walk("u", ("e1",), "v")]


def test_walks_only_length_one():
    g = build_graph(["u", "v", "w"], [("e1", "u", "v"), ("e2", "u", "w")])
    assert enumerate_walks(g, "u", "w", 3) == [Walk("u", ("e2",), "w")]


def test_walks_triangle():
    g = build_graph(["a", "b", "c"], [("e1", "a", "b"), ("e2", "b", "c"), ("e3", "c", "a")])
    walks = enumerate_walks(g, "a", "a", 6)
    assert [w.edges for w in walks] == [(), ("e1", "e2", "e3"), ("e1", "e2", "e3", "e1", "e2", "e3")]


def test_make_walk_checks_incidence():
    g = build_graph(["u", "v"], [("e1", "u", "v")])
    with pytest.raises(GraphError):
        make_walk(g, "v", ("e1",))


@settings(max_examples=60, deadline=None)
@given(graphs(max_vertices=3, max_edges=4), st.integers(0, 3))
def test_walks_match_oracles(g, max_len):
    for s in g.vertices:
        for t in g.vertices:
            got = enumerate_walks(g, s, t, max_len)
            expected = sorted((w for w in all_walks(g, max_len) if w.start == s and w.end == t), key=Walk.sort_key)
            assert got == expected
            counts = count_walks_by_length(g, s, t, max_len)
            assert [sum(1 for w in got if len(w) == n) for n in range(max_len + 1)] == counts


@settings(max_examples=100, deadline=None)
@given(graphs())
def test_json_round_trip(g):
    text = graph_to_json(g)
    again = graph_from_json(text)
    assert again == g
    assert graph_to_json(again) == text
    assert json.loads(text) == g.to_dict()


@settings(max_examples=60, deadline=None)
@given(graphs(), st.data())
def test_induced_subgraph_keeps_internal_edges(g, data):
    keep = data.draw(st.sets(st.sampled_from(g.vertices))) if g.vertices else set()
    sub = induced_subgraph(g, keep)
    assert set(sub.vertices) == set(keep)
    assert set(sub.edges) == {e for e in g.edges if set(g.endpoints[e]) <= set(keep)}
    for o in sub.vertices + sub.edges:
        assert sub.labels[o] == g.labels[o]
        assert dict(sub.properties[o]) == dict(g.properties[o])


def test_graph_json_rejects_unknown_fields():
    with pytest.raises(GraphError):
        graph_from_json('{"vertices": [], "extra": 1}')
