"""Property graphs: the data model every other module evaluates against.

A property graph is a finite directed multigraph whose vertices and edges
(collectively *objects*) carry a set of labels and a partial key -> value
map.  Graphs are immutable once built; all ids, labels, keys and values are
plain strings and values are compared as exact text.
"""

from __future__ import annotations

import json
import re
from collections import deque
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Mapping

from .errors import DanglingEndpoint, DuplicateId, GraphError, InvalidId, UnknownVertex

__all__ = [
    "PropertyGraph",
    "Walk",
    "build_graph",
    "induced_subgraph",
    "enumerate_walks",
    "graph_from_json",
    "graph_to_json",
]

_ID_RE = re.compile(r"[^\s\"'\\(){}\[\],;]+")


def _check_id(obj_id):
    if not isinstance(obj_id, str) or not _ID_RE.fullmatch(obj_id):
        raise InvalidId(f"invalid object id {obj_id!r}")
    return obj_id


@dataclass(frozen=True)
class Walk:
    """A walk given by its start vertex and edge sequence.

    Two walks are the same walk iff their edge sequences coincide; the start
    vertex only disambiguates empty walks.
    """

    start: str
    edges: tuple = ()
    end: str = ""

    def __post_init__(self):
        if not self.end:
            if self.edges:
                raise ValueError("non-empty walk needs an explicit end vertex")
            object.__setattr__(self, "end", self.start)

    def __len__(self):
        return len(self.edges)

    def sort_key(self):
        return (len(self.edges), self.edges, self.start)

    def vertices(self, graph: "PropertyGraph") -> tuple:
        out = [self.start]
        for e in self.edges:
            out.append(graph.endpoints[e][1])
        return tuple(out)

    def to_json(self):
        return {"start": self.start, "edges": list(self.edges)}

    @classmethod
    def from_json(cls, obj, graph: "PropertyGraph | None" = None):
        edges = tuple(obj["edges"])
        if not edges:
            return cls(obj["start"])
        if graph is None:
            raise GraphError("a graph is needed to rebuild a non-empty walk")
        return make_walk(graph, obj["start"], edges)


def make_walk(graph, start, edges):
    """Build a walk, checking incidence of consecutive edges."""
    cur = start
    for e in edges:
        src, dst = graph.endpoints[e]
        if src != cur:
            raise GraphError(f"edge {e} does not leave {cur}")
        cur = dst
    return Walk(start, tuple(edges), cur)


class PropertyGraph:
    """An immutable property graph ``(V, E, endpoints, labels, properties)``.

    Use :func:`build_graph` or :func:`graph_from_json` to construct one.
    """

    __slots__ = (
        "vertices",
        "edges",
        "endpoints",
        "labels",
        "properties",
        "_vertex_set",
        "_out",
        "_in",
        "_key",
        "_objects",
    )

    def __init__(self, vertices, edges, endpoints, labels, properties):
        self.vertices = tuple(sorted(vertices))
        self.edges = tuple(sorted(edges))
        self.endpoints = MappingProxyType(dict(endpoints))
        self.labels = MappingProxyType({o: frozenset(labels.get(o, ())) for o in self.vertices + self.edges})
        self.properties = MappingProxyType(
            {o: MappingProxyType(dict(properties.get(o, {}))) for o in self.vertices + self.edges}
        )
        self._vertex_set = frozenset(self.vertices)
        out = {v: [] for v in self.vertices}
        inc = {v: [] for v in self.vertices}
        for e in self.edges:
            s, t = self.endpoints[e]
            out[s].append(e)
            inc[t].append(e)
        self._out = MappingProxyType({v: tuple(es) for v, es in out.items()})
        self._in = MappingProxyType({v: tuple(es) for v, es in inc.items()})
        self._objects = frozenset(self.vertices) | frozenset(self.edges)
        self._key = None

    # -- queries -------------------------------------------------------
    def is_vertex(self, obj):
        return obj in self._vertex_set

    def is_edge(self, obj):
        return obj in self.endpoints

    def __contains__(self, obj):
        return obj in self._objects

    def out_edges(self, v):
        return self._out[v]

    def in_edges(self, v):
        return self._in[v]

    def prop(self, obj, key):
        """``pi(obj, key)`` or ``None`` when undefined."""
        return self.properties[obj].get(key)

    @property
    def num_objects(self):
        return len(self.vertices) + len(self.edges)

    # -- identity ------------------------------------------------------
    def _identity(self):
        if self._key is None:
            self._key = graph_to_json(self)
        return self._key

    def __eq__(self, other):
        if not isinstance(other, PropertyGraph):
            return NotImplemented
        return self._identity() == other._identity()

    def __hash__(self):
        return hash(self._identity())

    def __repr__(self):
        return f"PropertyGraph(|V|={len(self.vertices)}, |E|={len(self.edges)})"

    def to_dict(self):
        return {
            "vertices": [
                {"id": v, "labels": sorted(self.labels[v]), "props": dict(sorted(self.properties[v].items()))}
                for v in self.vertices
            ],
            "edges": [
                {
                    "id": e,
                    "src": self.endpoints[e][0],
                    "dst": self.endpoints[e][1],
                    "labels": sorted(self.labels[e]),
                    "props": dict(sorted(self.properties[e].items())),
                }
                for e in self.edges
            ],
        }


def _norm_vertex(rec):
    if isinstance(rec, str):
        return rec, (), {}
    if isinstance(rec, Mapping):
        extra = set(rec) - {"id", "labels", "props"}
        if extra:
            raise GraphError(f"unknown vertex fields: {sorted(extra)}")
        return rec["id"], tuple(rec.get("labels", ())), dict(rec.get("props", {}))
    vid, *rest = rec
    labels = rest[0] if len(rest) > 0 else ()
    props = rest[1] if len(rest) > 1 else {}
    return vid, tuple(labels), dict(props)


def _norm_edge(rec):
    if isinstance(rec, Mapping):
        extra = set(rec) - {"id", "src", "dst", "labels", "props"}
        if extra:
            raise GraphError(f"unknown edge fields: {sorted(extra)}")
        return rec["id"], rec["src"], rec["dst"], tuple(rec.get("labels", ())), dict(rec.get("props", {}))
    eid, src, dst, *rest = rec
    labels = rest[0] if len(rest) > 0 else ()
    props = rest[1] if len(rest) > 1 else {}
    return eid, src, dst, tuple(labels), dict(props)


def build_graph(vertices: Iterable = (), edges: Iterable = ()) -> PropertyGraph:
    """Build a graph from vertex and edge records.

    A vertex record is an id string, a ``(id, labels, props)`` tuple or a
    mapping with keys ``id``/``labels``/``props``.  An edge record is
    ``(id, src, dst[, labels[, props]])`` or the equivalent mapping.
    """
    seen = set()
    vids, eids = [], []
    endpoints, labels, props = {}, {}, {}
    for rec in vertices:
        vid, lab, pr = _norm_vertex(rec)
        _check_id(vid)
        if vid in seen:
            raise DuplicateId(f"duplicate id {vid!r}")
        seen.add(vid)
        vids.append(vid)
        labels[vid] = lab
        props[vid] = _check_props(vid, pr)
    vset = set(vids)
    for rec in edges:
        eid, src, dst, lab, pr = _norm_edge(rec)
        _check_id(eid)
        if eid in seen:
            raise DuplicateId(f"duplicate id {eid!r}")
        seen.add(eid)
        for end in (src, dst):
            if end not in vset:
                raise DanglingEndpoint(f"edge {eid!r} has undeclared endpoint {end!r}")
        eids.append(eid)
        endpoints[eid] = (src, dst)
        labels[eid] = lab
        props[eid] = _check_props(eid, pr)
    return PropertyGraph(vids, eids, endpoints, labels, props)


def _check_props(obj, props):
    for k, v in props.items():
        if not isinstance(k, str) or not isinstance(v, str):
            raise GraphError(f"properties of {obj!r} must map text keys to text values")
    return props


def induced_subgraph(graph: PropertyGraph, keep: Iterable[str]) -> PropertyGraph:
    """Restrict ``graph`` to the vertices in ``keep`` and the edges between them."""
    keep = set(keep)
    for v in keep:
        if not graph.is_vertex(v):
            raise UnknownVertex(f"unknown vertex {v!r}")
    vids = [v for v in graph.vertices if v in keep]
    eids = [e for e in graph.edges if graph.endpoints[e][0] in keep and graph.endpoints[e][1] in keep]
    objs = vids + eids
    return PropertyGraph(
        vids,
        eids,
        {e: graph.endpoints[e] for e in eids},
        {o: graph.labels[o] for o in objs},
        {o: graph.properties[o] for o in objs},
    )


def _distance_to(graph, dst):
    """BFS distances (in edges) from every vertex to ``dst``."""
    dist = {dst: 0}
    queue = deque([dst])
    while queue:
        v = queue.popleft()
        for e in graph.in_edges(v):
            u = graph.endpoints[e][0]
            if u not in dist:
                dist[u] = dist[v] + 1
                queue.append(u)
    return dist


def enumerate_walks(graph: PropertyGraph, src: str, dst: str, max_len: int) -> list:
    """All walks from ``src`` to ``dst`` with at most ``max_len`` edges.

    Shorter walks come first; walks of equal length are ordered by their
    edge-id sequence.
    """
    for v in (src, dst):
        if not graph.is_vertex(v):
            raise UnknownVertex(f"unknown vertex {v!r}")
    if max_len < 0:
        raise ValueError("max_len must be >= 0")
    dist = _distance_to(graph, dst)
    found = []

    def extend(v, path):
        if v == dst:
            found.append(Walk(src, tuple(path), dst) if path else Walk(src))
        left = max_len - len(path)
        for e in graph.out_edges(v):
            w = graph.endpoints[e][1]
            d = dist.get(w)
            if d is not None and d + 1 <= left:
                path.append(e)
                extend(w, path)
                path.pop()

    if dist.get(src, max_len + 1) <= max_len:
        extend(src, [])
    found.sort(key=Walk.sort_key)
    return found


def graph_to_json(graph: PropertyGraph) -> str:
    """Canonical JSON text (sorted ids, compact separators, UTF-8 kept)."""
    return json.dumps(graph.to_dict(), ensure_ascii=False, separators=(",", ":"))


def graph_from_json(text_or_obj) -> PropertyGraph:
    obj = json.loads(text_or_obj) if isinstance(text_or_obj, (str, bytes)) else text_or_obj
    if not isinstance(obj, Mapping):
        raise GraphError("graph JSON must be an object")
    extra = set(obj) - {"vertices", "edges"}
    if extra:
        raise GraphError(f"unknown graph fields: {sorted(extra)}")
    return build_graph(obj.get("vertices", ()), obj.get("edges", ()))
