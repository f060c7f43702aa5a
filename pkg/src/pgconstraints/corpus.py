"""Built-in constraint corpus: the formulas used by the witnesses and translations.

Each entry is ``name -> (DSL text, note)``.  Names double as constraint names.
"""

from __future__ import annotations

from .constraints import parse_constraint

__all__ = ["CORPUS", "corpus", "get"]

CORPUS = {
    "forum_mod": (
        'GGD forum_mod { source (x)-[:hasModerator]->(y) where x.name = "Foo" target (z)-[:hasCreator]->(y) }',
        "moderators of forum Foo have posted; shares y",
    ),
    "forum_container": (
        'GGD forum_container { source (x)-[:hasModerator]->(y) where x.name = "Foo" '
        "target (y)<-[:hasCreator]-(z)<-[:containerOf]-(x) }",
        "the post must be in the moderated forum; shares x and y",
    ),
    "forum_edge": (
        'GGD forum_edge { source (x)-[e:hasModerator]->(y) where x.name = "Foo" '
        "target (y')<-[:hasCreator]-(z')<-[:containerOf]-(x')-[e]->(y') }",
        "same requirement through a single shared edge variable",
    ),
    "same_a": ("GFD same_a { match (x), (y) then x.a = y.a }", "GFD outside 1GGD"),
    "a_is_b": ("GGD a_is_b { source (x) target (x) where x.a = x.b }", "1GGD outside constant-only GFDs"),
    "a_is_b_gfd": ("GFD a_is_b_gfd { match (x) then x.a = x.b }", "same constraint as a GFD"),
    "one_successor": (
        "PGKEY one_successor { scope (x) assert SINGLETON(y) descriptor (x)->(y) }",
        "PG-Key outside mPG-Keys",
    ),
    "creator": (
        "PGKEY creator { scope (z:Message) assert SINGLETON(x) descriptor (x)<-[:hasCreator]-(z) }",
        "each message has a unique creator",
    ),
    "creator_m": (
        "PGKEY creator_m { scope (z:Message), (z)-[:hasCreator]->(x), (z)-[:hasCreator]->(x') where x != x' "
        "assert MANDATORY(z) descriptor (z) where z != z }",
        "unique creator with MANDATORY and inequality",
    ),
    "speaks": (
        "GFD speaks { match (x)<-[:hasMember]-(z)-[:hasMember]->(y) then x.speaks = y.speaks }",
        "members of a common forum speak the same language",
    ),
    "speaks_cover": (
        "PGKEY speaks_cover { scope (x)<-[:hasMember]-(z')-[:hasMember]->(y') assert MANDATORY(x) "
        "descriptor (x)<-[:hasMember]-(z)-[:hasMember]->(y) where x.speaks = y.speaks }",
        "speaks as keys: some co-member speaks x's language",
    ),
    "speaks_defined": (
        "PGKEY speaks_defined { scope (x)<-[:hasMember]-(z)-[:hasMember]->(y) assert MANDATORY(y.speaks) "
        "descriptor (y) }",
        "speaks as keys: every co-member has a language",
    ),
    "speaks_unique": (
        "PGKEY speaks_unique { scope (x)<-[:hasMember]-(z')-[:hasMember]->(y') assert SINGLETON(y.speaks) "
        "descriptor (x)<-[:hasMember]-(z)-[:hasMember]->(y) }",
        "speaks as keys: co-members agree",
    ),
    "transitive": ("GGD transitive { source (x)->(y)->(z) target (x)->(z) }", "GGD outside PG-Keys"),
    "clique": ("GGD clique { source (x), (y) target (x)->(y) }", "disconnected-source 2GGD"),
    "needs_t": (
        "GGD needs_t { source (x)->(y) target (x2)-[:t]->(y2) }",
        "GGD not closed under induced subgraphs",
    ),
    "exclusive_a": (
        "PGKEY exclusive_a { scope (x) assert EXCLUSIVE(x.a) descriptor (x) }",
        "connected key: property a identifies vertices",
    ),
    "cycle_middle_1": (
        "GGD cycle_middle_1 { source (a1)-[x1]->(b1)->(a1) target (c1)-[x1]->(d1)->(c1), (c1)->(t), (d1)->(t) }",
        "hierarchy constraint for m = 1",
    ),
    "name_foo": (
        'GFD name_foo { match (x)-[:hasModerator]->(y) then x.name = "Foo" }',
        "constant head",
    ),
    "same_target": (
        "GFD same_target { match (x)-[:r]->(y), (x)-[:r]->(y2) then y = y2 }",
        "identifier-equality head",
    ),
    "differ_a": ("GFD differ_a { match (x)-[:r]->(y) then x.a != y.a }", "property-inequality head"),
    "no_loop": ("GFD no_loop { match (x)-[:r]->(y) then x != y }", "identifier-inequality head"),
    "not_c": ('GFD not_c { match (x) then x.a != "c" }', "constant-inequality head"),
    "reach_a": ("GFD reach_a { match (x)-[:/r.r*/]->(y) then x.a = y.a }", "CRPQ pattern"),
    "edge_key": (
        "PGKEY edge_key { scope (u)-[e:r]->(v) assert EXCLUSIVE(e.k) descriptor }",
        "key on an edge variable",
    ),
    "pair_key": (
        "PGKEY pair_key { scope (x) assert SINGLETON(y.a, y.b) descriptor (x)->(y) }",
        "two-component SINGLETON key",
    ),
}


def get(name):
    return parse_constraint(CORPUS[name][0])


def corpus():
    """``[(name, constraint)]`` in definition order."""
    return [(name, get(name)) for name in CORPUS]
