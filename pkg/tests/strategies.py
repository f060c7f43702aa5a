"""Hypothesis strategies shared by the property tests."""

import random

from hypothesis import strategies as st

from pgconstraints.graph import build_graph

from oracles import random_regex

LABELS = ("A", "B", "r", "s")
VALUES = ("0", "1", "α")


@st.composite
def graphs(draw, max_vertices=4, max_edges=5, labels=LABELS, keys=("a", "b"), values=VALUES):
    n = draw(st.integers(0, max_vertices))
    ids = [f"v{i}" for i in range(n)]
    props = st.dictionaries(st.sampled_from(keys), st.sampled_from(values), max_size=len(keys))
    labs = st.lists(st.sampled_from(labels), unique=True, max_size=2)
    verts = [{"id": v, "labels": draw(labs), "props": draw(props)} for v in ids]
    edges = []
    if n:
        m = draw(st.integers(0, max_edges))
        for j in range(m):
            s, t = draw(st.sampled_from(ids)), draw(st.sampled_from(ids))
            edges.append({"id": f"e{j}", "src": s, "dst": t, "labels": draw(labs), "props": draw(props)})
    return build_graph(verts, edges)


def regexes(max_ops=4, labels=("a", "b")):
    return st.integers(0, 2**32 - 1).map(lambda seed: random_regex(random.Random(seed), max_ops, labels))
