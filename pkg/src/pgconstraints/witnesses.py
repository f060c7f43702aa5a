"""Separation witnesses: a constraint plus two graphs it tells apart.

Each generator returns a :class:`WitnessBundle` whose expected verdicts are
the ones the corresponding separation argument relies on.  ``check()``
re-validates the bundle.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .constraints import GgdConstraint, parse_constraint
from .errors import WitnessParameterError
from .graph import PropertyGraph, build_graph, induced_subgraph
from .pattern import Chain, Link, Query, VertexAtom
from .validator import SATISFIED, VIOLATED, validate

__all__ = [
    "WitnessBundle",
    "hierarchy_min_k",
    "hierarchy_queries",
    "thm1_witness",
    "ggd_vs_pgkeys_witness",
    "gfd_vs_1ggd_witness",
    "singleton_witness",
    "gfdc_witness",
    "induced_closure_witness",
    "clique_ggd",
    "WITNESSES",
    "make_witness",
]

ALPHA, BETA = "α", "β"


@dataclass(frozen=True)
class WitnessBundle:
    name: str
    constraints: tuple
    g1: PropertyGraph
    g2: PropertyGraph
    expected: tuple  # (status on g1, status on g2), one pair per constraint
    provenance: str
    params: dict = field(default_factory=dict)
    notes: str = ""

    @property
    def constraint(self):
        return self.constraints[0]

    def check(self, budget=None):
        """``[(constraint, (verdict on g1, verdict on g2), as expected?)]``."""
        out = []
        for c, exp in zip(self.constraints, self.expected):
            got = (validate(self.g1, c, budget), validate(self.g2, c, budget))
            out.append((c, got, (got[0].status, got[1].status) == tuple(exp)))
        return out

    def ok(self, budget=None):
        return all(r[2] for r in self.check(budget))

    def stats(self):
        return {
            "g1": {"vertices": len(self.g1.vertices), "edges": len(self.g1.edges)},
            "g2": {"vertices": len(self.g2.vertices), "edges": len(self.g2.edges)},
        }


# ----------------------------------------------------------------------
# the nGGD hierarchy


def hierarchy_min_k(m: int, max_psi_size: int) -> int:
    """Clique size the hierarchy argument needs against constraints of size <= ``max_psi_size``."""
    return 2 * m + max_psi_size + 2


def _cycle_chain(m, a, b):
    """``(a1)-[x1]->(b1)->(a2)-[x2]->(b2)-> ... ->(a1)``."""
    links = []
    for i in range(1, m + 1):
        links.append(Link(VertexAtom(f"{b}{i}"), True, f"x{i}"))
        nxt = f"{a}{i % m + 1}"
        links.append(Link(VertexAtom(nxt), True))
    return Chain(VertexAtom(f"{a}1"), tuple(links))


def hierarchy_queries(m: int):
    """The 2m-cycle with every other edge shared, and the same cycle plus a common out-neighbour."""
    source = Query((_cycle_chain(m, "a", "b"),))
    spokes = []
    for i in range(1, m + 1):
        for v in (f"c{i}", f"d{i}"):
            spokes.append(Chain(VertexAtom(v), (Link(VertexAtom("t"), True),)))
    target = Query((_cycle_chain(m, "c", "d"), *spokes))
    return source, target


def thm1_witness(m: int = 2, k: int = 8) -> WitnessBundle:
    """mGGD that no set of nGGDs (n < m) expresses, with its graph pair."""
    if m < 1:
        raise WitnessParameterError("m must be >= 1")
    if k < 2 * m + 2:
        raise WitnessParameterError(f"k must be >= 2m + 2 = {2 * m + 2}, got {k}")
    n = 2 * m
    S = [[f"s{i}_{j}" for j in range(1, k + 1)] for i in range(1, n + 1)]
    V = [f"v{i}" for i in range(1, n + 1)]
    pairs = set()

    def clique(vs):
        for a in vs:
            for b in vs:
                if a != b:
                    pairs.add((a, b))

    clique([s for block in S for s in block])
    for i in range(n):
        clique(S[i] + [V[j] for j in range(n) if j != i])
    edges = [(f"f{a}-{b}", a, b) for a, b in sorted(pairs)]
    # the cycle edges are extra edges, parallel to clique edges when m > 1
    edges += [(f"e{i + 1}", V[i], V[(i + 1) % n]) for i in range(n)]
    vertices = [s for block in S for s in block] + V
    g1 = build_graph(vertices, edges)
    g2 = build_graph(vertices + ["w"], edges + [(f"g{i + 1}", V[i], "w") for i in range(n)])
    source, target = hierarchy_queries(m)
    phi = GgdConstraint(source, (), target, (), name=f"cycle_middle_{m}")
    return WitnessBundle(
        "hierarchy",
        (phi,),
        g1,
        g2,
        ((VIOLATED, SATISFIED),),
        "strict nGGD hierarchy",
        {"m": m, "k": k},
        "the fresh vertex w gets an edge from each v_i, i in [2m]",
    )


# ----------------------------------------------------------------------
# small witnesses


def _clique_edges(vs, prefix, self_loops):
    out = []
    for a in vs:
        for b in vs:
            if a != b or self_loops:
                out.append((f"{prefix}{a}-{b}", a, b))
    return out


def ggd_vs_pgkeys_witness(N: int = 4, self_loops: bool = True) -> WitnessBundle:
    """Transitivity GGD; a clique satisfies it, two cliques glued at ``u`` do not.

    ``x->y->z`` also binds ``x = z``, so without self-loops the single clique
    already violates the GGD; loops are on by default for that reason.
    """
    if N < 3:
        raise WitnessParameterError("N must be >= 3")
    k1 = ["u"] + [f"p{i}" for i in range(1, N)]
    k2 = ["u"] + [f"q{i}" for i in range(1, N)]
    e1 = _clique_edges(k1, "a", self_loops)
    e2 = [e for e in _clique_edges(k2, "b", self_loops) if not (e[1] == e[2] == "u")]
    phi = parse_constraint("GGD transitive { source (x)->(y)->(z) target (x)->(z) }")
    return WitnessBundle(
        "ggd-vs-pgkeys",
        (phi,),
        build_graph(k1, e1),
        build_graph(k1 + k2[1:], e1 + e2),
        ((SATISFIED, VIOLATED),),
        "GGD not expressible by PG-Keys",
        {"N": N, "self_loops": self_loops},
    )


def gfd_vs_1ggd_witness() -> WitnessBundle:
    phi = parse_constraint("GFD same_a { match (x), (y) then x.a = y.a }")
    g1 = build_graph([{"id": "u", "props": {"a": ALPHA}}])
    g2 = build_graph([{"id": "u", "props": {"a": ALPHA}}, {"id": "v", "props": {"a": BETA}}])
    return WitnessBundle("gfd-vs-1ggd", (phi,), g1, g2, ((SATISFIED, VIOLATED),), "GFD not expressible in 1GGD")


def singleton_witness() -> WitnessBundle:
    phi = parse_constraint("PGKEY one_successor { scope (x) assert SINGLETON(y) descriptor (x)->(y) }")
    g1 = build_graph(["u", "v"], [("e1", "u", "v")])
    g2 = build_graph(["u", "v", "w"], [("e1", "u", "v"), ("e2", "u", "w")])
    return WitnessBundle(
        "singleton", (phi,), g1, g2, ((SATISFIED, VIOLATED),), "PG-Key not expressible in mPG-Keys"
    )


def gfdc_witness() -> WitnessBundle:
    as_ggd = parse_constraint("GGD a_is_b { source (x) target (x) where x.a = x.b }")
    as_gfd = parse_constraint("GFD a_is_b_gfd { match (x) then x.a = x.b }")
    g1 = build_graph([{"id": "u", "props": {"a": ALPHA, "b": ALPHA}}])
    g2 = build_graph([{"id": "u", "props": {"a": ALPHA, "b": BETA}}])
    return WitnessBundle(
        "gfdc",
        (as_ggd, as_gfd),
        g1,
        g2,
        ((SATISFIED, VIOLATED), (SATISFIED, VIOLATED)),
        "1GGD not expressible by constant-only GFDs",
    )


def induced_closure_witness() -> WitnessBundle:
    """A GGD that holds on two components but fails on one of them alone."""
    psi = parse_constraint("GGD needs_t { source (x)->(y) target (x2)-[:t]->(y2) }")
    g = build_graph(["a", "b", "c", "d"], [("e1", "a", "b"), {"id": "e2", "src": "c", "dst": "d", "labels": ["t"]}])
    sub = induced_subgraph(g, ["a", "b"])
    return WitnessBundle(
        "induced-closure",
        (psi,),
        g,
        sub,
        ((SATISFIED, VIOLATED),),
        "GGDs are not closed under induced subgraphs",
    )


def clique_ggd():
    """``(x)(y) => x->y``: every ordered pair is an edge, so loops are needed too."""
    return parse_constraint("GGD clique { source (x), (y) target (x)->(y) }")


def _clique_bundle():
    verts = ["u", "v", "w"]
    k3 = build_graph(verts, _clique_edges(verts, "k", True))
    path = build_graph(["u", "v"], [("e1", "u", "v")])
    return WitnessBundle(
        "clique", (clique_ggd(),), k3, path, ((SATISFIED, VIOLATED),), "disconnected-source 2GGD"
    )


WITNESSES = {
    "hierarchy": thm1_witness,
    "ggd-vs-pgkeys": ggd_vs_pgkeys_witness,
    "gfd-vs-1ggd": gfd_vs_1ggd_witness,
    "singleton": singleton_witness,
    "gfdc": gfdc_witness,
    "induced-closure": induced_closure_witness,
    "clique": _clique_bundle,
}


def make_witness(name, **params) -> WitnessBundle:
    try:
        gen = WITNESSES[name]
    except KeyError:
        raise WitnessParameterError(f"unknown witness {name!r}; known: {', '.join(WITNESSES)}") from None
    return gen(**params)
