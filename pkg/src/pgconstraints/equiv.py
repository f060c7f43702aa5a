"""Bounded graph enumeration and differential checking of constraint sets.

Two constraint sets are compared on every graph of a finite space
(:class:`EnumSpec`).  Graphs are generated with vertex decorations in
nondecreasing order and, under ``dedup="canonical"``, kept only when their
edge multiset is the least among the vertex permutations that fix the
decoration sequence, so each isomorphism class (ids aside) appears once.

:func:`spec_for` pads the alphabets with one fresh label, one fresh key and
two fresh values.  A label or key that none of the compared constraints
mentions cannot change a verdict (matching and predicates never read it), so
:func:`differential_check` drops such inert symbols before enumerating and
records that in the report.  A graph of the padded space and its projection
get the same verdicts, so the reduced run decides the padded space exactly.
Fresh *values* are never dropped.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement, permutations, product
from typing import Optional

from .constraints import (
    GfdConstraint,
    GgdConstraint,
    constants_of,
    constraint_parts,
    constraint_variables,
)
from .graph import PropertyGraph, build_graph, induced_subgraph
from .pattern import EDGE, ConstEq, ConstNeq, Exists, Prop, TermEq, TermNeq
from .validator import validate, validate_set

__all__ = [
    "EnumSpec",
    "DifferentialReport",
    "enumerate_graphs",
    "count_graphs",
    "spec_for",
    "reduce_inert",
    "agree_on",
    "differential_check",
    "check_induced_closure",
]

FRESH_VALUES = ("α", "β", "γ", "δ")


@dataclass(frozen=True)
class EnumSpec:
    max_vertices: int = 3
    max_edges: int = 3
    vertex_labels: tuple = ()
    edge_labels: tuple = ()
    vertex_keys: tuple = ()
    edge_keys: tuple = ()
    values: tuple = ()
    data: bool = True
    dedup: str = "canonical"
    note: str = ""

    def __post_init__(self):
        for f in ("vertex_labels", "edge_labels", "vertex_keys", "edge_keys", "values"):
            object.__setattr__(self, f, tuple(sorted(set(getattr(self, f)))))
        if self.dedup not in ("none", "canonical"):
            raise ValueError("dedup must be 'none' or 'canonical'")
        if self.max_vertices < 0 or self.max_edges < 0:
            raise ValueError("bounds must be >= 0")

    def to_json(self):
        return {
            "max_vertices": self.max_vertices,
            "max_edges": self.max_edges,
            "vertex_labels": list(self.vertex_labels),
            "edge_labels": list(self.edge_labels),
            "vertex_keys": list(self.vertex_keys),
            "edge_keys": list(self.edge_keys),
            "values": list(self.values),
            "data": self.data,
            "dedup": self.dedup,
        }

    @classmethod
    def from_json(cls, obj):
        known = {
            "max_vertices", "max_edges", "labels", "keys", "vertex_labels", "edge_labels",
            "vertex_keys", "edge_keys", "values", "data", "dedup",
        }
        extra = set(obj) - known
        if extra:
            raise ValueError(f"unknown EnumSpec fields {sorted(extra)}")
        labels, keys = obj.get("labels", ()), obj.get("keys", ())
        return cls(
            obj.get("max_vertices", 3),
            obj.get("max_edges", 3),
            obj.get("vertex_labels", labels),
            obj.get("edge_labels", labels),
            obj.get("vertex_keys", keys),
            obj.get("edge_keys", keys),
            obj.get("values", ()),
            obj.get("data", True),
            obj.get("dedup", "canonical"),
        )


def _subsets(items):
    out = []
    for r in range(len(items) + 1):
        out.extend(frozenset(c) for c in combinations(items, r))
    return out


def _decorations(labels, keys, values, data):
    """All (label set, property tuple) decorations of one object, canonical order."""
    props = [()]
    if data and keys:
        props = list(product((None,) + values, repeat=len(keys)))
    out = [(lab, p) for lab in _subsets(labels) for p in props]
    return out


def _props(keys, p):
    return {k: v for k, v in zip(keys, p) if v is not None}


def enumerate_graphs(spec: EnumSpec):
    """Every graph of ``spec``, deterministic order (one per class under canonical dedup)."""
    vdec = _decorations(spec.vertex_labels, spec.vertex_keys, spec.values, spec.data)
    edec = _decorations(spec.edge_labels, spec.edge_keys, spec.values, spec.data)
    canonical = spec.dedup == "canonical"
    for n in range(spec.max_vertices + 1):
        ids = [f"v{i}" for i in range(n)]
        kinds = [(s, t, d) for s in range(n) for t in range(n) for d in range(len(edec))]
        vseqs = combinations_with_replacement(range(len(vdec)), n) if canonical else product(range(len(vdec)), repeat=n)
        for vs in vseqs:
            perms = _stabilizer(vs) if canonical else None
            for m in range(spec.max_edges + 1 if n else 1):
                for es in combinations_with_replacement(kinds, m):
                    if perms and not _is_least(es, perms):
                        continue
                    yield _build(ids, vs, es, vdec, edec, spec)


def count_graphs(spec: EnumSpec) -> int:
    return sum(1 for _ in enumerate_graphs(spec))


def _stabilizer(vs):
    """Vertex permutations (other than identity) that keep the decoration sequence."""
    n = len(vs)
    return [p for p in permutations(range(n)) if p != tuple(range(n)) and all(vs[p[i]] == vs[i] for i in range(n))]


def _is_least(es, perms):
    for p in perms:
        if tuple(sorted((p[s], p[t], d) for s, t, d in es)) < es:
            return False
    return True


def _build(ids, vs, es, vdec, edec, spec):
    verts = []
    for i, d in zip(ids, vs):
        labels, p = vdec[d]
        verts.append({"id": i, "labels": sorted(labels), "props": _props(spec.vertex_keys, p)})
    edges = []
    for j, (s, t, d) in enumerate(es):
        labels, p = edec[d]
        edges.append(
            {"id": f"e{j}", "src": ids[s], "dst": ids[t], "labels": sorted(labels), "props": _props(spec.edge_keys, p)}
        )
    return build_graph(verts, edges)


# ----------------------------------------------------------------------
# alphabets from constraints


def _symbols(constraints):
    vlabels, elabels, vkeys, ekeys, consts = set(), set(), set(), set(), set()
    for c in constraints:
        kinds = constraint_variables(c)
        consts |= constants_of(c)
        for q, preds in constraint_parts(c):
            for labs in q.vertex_labels.values():
                vlabels |= labs
            for a in q.atoms:
                if a.label is not None:
                    elabels.add(a.label)
                if a.regex is not None:
                    elabels |= a.regex.labels()
            for p in preds:
                for t in _terms(p):
                    if isinstance(t, Prop):
                        (ekeys if kinds.get(t.name) == EDGE else vkeys).add(t.key)
        if hasattr(c, "key"):
            for t in c.key:
                if isinstance(t, Prop):
                    (ekeys if kinds.get(t.name) == EDGE else vkeys).add(t.key)
    return vlabels, elabels, vkeys, ekeys, consts


def _terms(p):
    if isinstance(p, (TermEq, TermNeq)):
        return (p.left, p.right)
    if isinstance(p, (ConstEq, ConstNeq, Exists)):
        return (p.term,)
    return ()


def _fresh(taken, prefix, k):
    out = []
    i = 0
    while len(out) < k:
        cand = f"{prefix}{i}"
        if cand not in taken:
            out.append(cand)
        i += 1
    return out


def spec_for(constraints, max_vertices=3, max_edges=3, fresh_values=2, pad_symbols=True, dedup="canonical"):
    """The bounded space used to compare ``constraints``: their symbols plus fresh ones.

    Defaults give the standard space: at most 3 vertices and 3 edges, one fresh label, one
    fresh key, two fresh values.
    """
    vl, el, vk, ek, consts = _symbols(constraints)
    fresh = [v for v in FRESH_VALUES if v not in consts][:fresh_values]
    if len(fresh) < fresh_values:
        fresh += _fresh(consts | set(fresh), "val", fresh_values - len(fresh))
    if pad_symbols:
        lab = _fresh(vl | el, "Fresh", 1)[0]
        key = _fresh(vk | ek, "fresh", 1)[0]
        vl, el, vk, ek = vl | {lab}, el | {lab}, vk | {key}, ek | {key}
    values = tuple(sorted(consts)) + tuple(fresh)
    data = bool(vk or ek)
    note = "padded" if pad_symbols else "unpadded"
    return EnumSpec(max_vertices, max_edges, vl, el, vk, ek, values, data, dedup, note)


def reduce_inert(spec: EnumSpec, constraints):
    """``(reduced spec, dropped)``: ``spec`` without the symbols no constraint can observe.

    Edges are inert too when no constraint has an edge or path atom.
    """
    vl, el, vk, ek, _ = _symbols(constraints)
    has_edges = any(q.atoms for c in constraints for q, _ in constraint_parts(c))
    dropped = {
        "vertex_labels": sorted(set(spec.vertex_labels) - vl),
        "edge_labels": sorted(set(spec.edge_labels) - el),
        "vertex_keys": sorted(set(spec.vertex_keys) - vk),
        "edge_keys": sorted(set(spec.edge_keys) - ek),
    }
    dropped = {k: v for k, v in dropped.items() if v}
    max_edges = spec.max_edges
    if not has_edges and max_edges:
        dropped["edges"] = max_edges
        max_edges = 0
    keep_vk = tuple(k for k in spec.vertex_keys if k in vk)
    keep_ek = tuple(k for k in spec.edge_keys if k in ek)
    reduced = EnumSpec(
        spec.max_vertices,
        max_edges,
        tuple(x for x in spec.vertex_labels if x in vl),
        tuple(x for x in spec.edge_labels if x in el),
        keep_vk,
        keep_ek,
        spec.values,
        spec.data and bool(keep_vk or keep_ek),
        spec.dedup,
        spec.note,
    )
    return reduced, dropped


# ----------------------------------------------------------------------
# differential checking


@dataclass(frozen=True)
class DifferentialReport:
    graphs_checked: int
    agreements: int
    first_disagreement: Optional[tuple] = None  # (graph, left verdict, right verdict)
    budget_policy: str = "default-derived"
    spec: Optional[EnumSpec] = None
    disagreements: int = 0
    dropped: Optional[dict] = None  # inert symbols removed before enumeration

    @property
    def agree(self):
        return self.first_disagreement is None

    def to_json(self):
        out = {
            "agree": self.agree,
            "graphs_checked": self.graphs_checked,
            "agreements": self.agreements,
            "disagreements": self.disagreements,
            "budget_policy": self.budget_policy,
            "spec": None if self.spec is None else self.spec.to_json(),
            "inert_symbols_dropped": self.dropped or {},
            "first_disagreement": None,
        }
        if self.first_disagreement is not None:
            g, left, right = self.first_disagreement
            out["first_disagreement"] = {"graph": g.to_dict(), "left": left.to_json(), "right": right.to_json()}
        return out


def _as_list(cs):
    if isinstance(cs, (GfdConstraint, GgdConstraint)) or hasattr(cs, "keyword"):
        return [cs]
    return list(cs)


def agree_on(graph: PropertyGraph, left, right, budget=None):
    """``(same status?, (left verdict, right verdict))``."""
    a = validate_set(graph, _as_list(left), budget)
    b = validate_set(graph, _as_list(right), budget)
    return a.status == b.status, (a, b)


def differential_check(left, right, spec: EnumSpec | None = None, budget=None, exhaustive=False, reduce=True):
    """Compare two constraint sets on every graph of ``spec`` (default: :func:`spec_for` both).

    ``reduce=False`` enumerates ``spec`` literally, inert symbols included.
    """
    left, right = _as_list(left), _as_list(right)
    if spec is None:
        spec = spec_for(left + right)
    space, dropped = reduce_inert(spec, left + right) if reduce else (spec, None)
    checked = agreed = 0
    first = None
    for g in enumerate_graphs(space):
        checked += 1
        same, (a, b) = agree_on(g, left, right, budget)
        if same:
            agreed += 1
        elif first is None:
            first = (g, a, b)
            if not exhaustive:
                break
    policy = "default-derived" if budget is None else f"user-override {budget}"
    return DifferentialReport(checked, agreed, first, policy, spec, checked - agreed, dropped)


# ----------------------------------------------------------------------
# induced-subgraph closure


def check_induced_closure(graph: PropertyGraph, c, budget=None, max_exhaustive=6, samples=64, seed=0) -> bool:
    """True iff ``graph |= c`` implies ``sub |= c`` for the induced subgraphs tried.

    Every vertex subset is tried up to ``max_exhaustive`` vertices; beyond
    that ``samples`` random subsets.
    """
    if not validate(graph, c, budget).satisfied:
        return True
    vs = list(graph.vertices)
    if len(vs) <= max_exhaustive:
        subsets = (s for r in range(len(vs)) for s in combinations(vs, r))
    else:
        rng = random.Random(seed)
        subsets = ([v for v in vs if rng.random() < 0.5] for _ in range(samples))
    for keep in subsets:
        if not validate(induced_subgraph(graph, keep), c, budget).satisfied:
            return False
    return True
