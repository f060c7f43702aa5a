"""
Validating a small forum graph
==============================

Build a property graph by hand, check a few constraints on it, and look
at the witnesses the validator reports.
"""

from pgconstraints import build_graph, find_matches, parse_predicates, parse_query, validate
from pgconstraints.corpus import get

# a forum named Foo with a moderator, and one message with two creators
g = build_graph(
    [
        {"id": "f", "props": {"name": "Foo"}},
        "alice",
        "bob",
        {"id": "m", "labels": ["Message"]},
    ],
    [
        {"id": "e1", "src": "f", "dst": "alice", "labels": ["hasModerator"]},
        {"id": "e2", "src": "m", "dst": "alice", "labels": ["hasCreator"]},
        {"id": "e3", "src": "m", "dst": "bob", "labels": ["hasCreator"]},
    ],
)

# matches of a plain pattern
q = parse_query("(x)-[:hasCreator]->(y)")
for m in find_matches(g, q):
    print("creator edge:", m.to_json())

# predicates filter matches; undefined properties never compare equal
print(find_matches(g, parse_query("(x)"), parse_predicates('x.name = "Foo"')))

# the moderator of Foo must have created something: satisfied here
print(get("forum_mod"))
print(validate(g, get("forum_mod")).status)

# every message has a single creator: violated, with the offending matches
v = validate(g, get("creator"))
print(v.status)
for role, match in v.witness.matches:
    print(" ", role, match.to_json())

# drop bob's edge and the key holds again
g2 = build_graph(
    [{"id": "m", "labels": ["Message"]}, "alice"],
    [{"id": "e2", "src": "m", "dst": "alice", "labels": ["hasCreator"]}],
)
print(validate(g2, get("creator")).status)
