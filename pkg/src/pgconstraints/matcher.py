"""Match search: homomorphisms from a query into a graph under all-walk semantics.

Variables are bound in declaration order and every level tries candidates
in canonical order, so matches come out sorted by the tuple of their values
without a final sort.  Candidate sets are narrowed by atoms that connect the
variable to already-bound ones (neighbour sets, bounded product-automaton
reachability), and predicates are checked as soon as their variables are
bound.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Mapping
from dataclasses import dataclass
from functools import lru_cache

from .errors import KindMismatch
from .graph import PropertyGraph, Walk
from .pattern import EDGE, PATH, VERTEX, TermEq, TermNeq, Var, eval_predicate, predicate_vars
from .regex import compile_regex

__all__ = [
    "Match",
    "WalkBudget",
    "find_matches",
    "extend_match",
    "iter_matches",
    "first_match",
    "has_match",
    "path_budgets",
    "resolve_budget",
    "reachable",
    "walks_between",
]

DEFAULT, OVERRIDE = "default-derived", "user-override"


@dataclass(frozen=True)
class WalkBudget:
    """Maximum walk length for a path atom and where that bound came from."""

    max_len: int
    origin: str = DEFAULT

    def __post_init__(self):
        if self.max_len < 0:
            raise ValueError("walk budget must be >= 0")

    def to_json(self):
        return {"max_len": self.max_len, "origin": self.origin}


class Match(Mapping):
    """An immutable assignment of variables to object ids or walks."""

    __slots__ = ("_vars", "_vals", "_index")

    def __init__(self, variables, values):
        self._vars = tuple(variables)
        self._vals = tuple(values)
        self._index = {v: i for i, v in enumerate(self._vars)}

    @classmethod
    def from_dict(cls, d):
        return cls(tuple(d), tuple(d.values()))

    def __getitem__(self, var):
        return self._vals[self._index[var]]

    def __iter__(self):
        return iter(self._vars)

    def __len__(self):
        return len(self._vars)

    def __eq__(self, other):
        if isinstance(other, Match):
            return dict(zip(self._vars, self._vals)) == dict(zip(other._vars, other._vals))
        if isinstance(other, Mapping):
            return dict(self) == dict(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(zip(self._vars, self._vals)))

    def __repr__(self):
        inner = ", ".join(f"{v}↦{_show(x)}" for v, x in zip(self._vars, self._vals))
        return "{" + inner + "}"

    def sort_key(self):
        return tuple(x.sort_key() if isinstance(x, Walk) else (x,) for x in self._vals)

    def project(self, variables):
        return Match(variables, tuple(self[v] for v in variables))

    def to_json(self):
        return {v: (x.to_json() if isinstance(x, Walk) else x) for v, x in zip(self._vars, self._vals)}


def _show(x):
    if isinstance(x, Walk):
        return "<" + ",".join(x.edges) + ">" if x.edges else f"<{x.start}>"
    return x


# ----------------------------------------------------------------------
# per-graph indexes


class _GraphIndex:
    def __init__(self, g: PropertyGraph):
        self.g = g
        self.vertices = g.vertices
        self.edges = g.edges
        self.endpoints = g.endpoints
        self.labels = g.labels
        self._out_nbr = {}
        self._in_nbr = {}
        self._out_e = {}
        self._in_e = {}
        self._lab_v = {}
        self._lab_e = {}
        self._sorted = {}

    def out_nbr(self, label):
        d = self._out_nbr.get(label)
        if d is None:
            d = {v: set() for v in self.vertices}
            for e in self.edges:
                if label is None or label in self.labels[e]:
                    s, t = self.endpoints[e]
                    d[s].add(t)
            self._out_nbr[label] = d
        return d

    def in_nbr(self, label):
        d = self._in_nbr.get(label)
        if d is None:
            d = {v: set() for v in self.vertices}
            for e in self.edges:
                if label is None or label in self.labels[e]:
                    s, t = self.endpoints[e]
                    d[t].add(s)
            self._in_nbr[label] = d
        return d

    def sorted_nbrs(self, label, forward, labels):
        """``v -> sorted tuple`` of out- (``forward``) or in-neighbours carrying ``labels``."""
        key = (label, forward, labels)
        r = self._sorted.get(key)
        if r is None:
            base = self.out_nbr(label) if forward else self.in_nbr(label)
            r = {v: tuple(sorted(w for w in ns if labels <= self.labels[w])) for v, ns in base.items()}
            self._sorted[key] = r
        return r

    def out_edges(self, v, label):
        key = (v, label)
        r = self._out_e.get(key)
        if r is None:
            r = tuple(e for e in self.g.out_edges(v) if label is None or label in self.labels[e])
            self._out_e[key] = r
        return r

    def in_edges(self, v, label):
        key = (v, label)
        r = self._in_e.get(key)
        if r is None:
            r = tuple(e for e in self.g.in_edges(v) if label is None or label in self.labels[e])
            self._in_e[key] = r
        return r

    def vertices_with(self, labels):
        r = self._lab_v.get(labels)
        if r is None:
            r = tuple(v for v in self.vertices if labels <= self.labels[v])
            self._lab_v[labels] = r
        return r

    def edges_with(self, label):
        r = self._lab_e.get(label)
        if r is None:
            r = tuple(e for e in self.edges if label is None or label in self.labels[e])
            self._lab_e[label] = r
        return r


_INDEXES = {}


def _index(g):
    idx = _INDEXES.get(id(g))
    if idx is None or idx.g is not g:
        if len(_INDEXES) > 64:
            _INDEXES.clear()
        idx = _GraphIndex(g)
        _INDEXES[id(g)] = idx
    return idx


# ----------------------------------------------------------------------
# automata over graphs


@lru_cache(maxsize=None)
def _automaton(regex):
    return compile_regex(regex)


def _reverse_delta(aut):
    rev = {}
    for q, a, t in aut.transitions():
        rev.setdefault(t, {}).setdefault(a, set()).add(q)
    return rev


def _bfs_forward(g, aut, src, max_len):
    """Min length to reach each product configuration from ``(src, 0)``."""
    dist = {(src, 0): 0}
    queue = deque([(src, 0)])
    while queue:
        v, q = queue.popleft()
        d = dist[(v, q)]
        if d == max_len:
            continue
        row = aut.delta.get(q)
        if not row:
            continue
        for e in g.out_edges(v):
            w = g.endpoints[e][1]
            for a in g.labels[e]:
                for t in row.get(a, ()):
                    if (w, t) not in dist:
                        dist[(w, t)] = d + 1
                        queue.append((w, t))
    return dist


def _bfs_backward(g, aut, targets, max_len):
    """Min length from each configuration to one of ``targets`` (accepting configs)."""
    rev = _reverse_delta(aut)
    dist = {c: 0 for c in targets}
    queue = deque(targets)
    while queue:
        w, t = queue.popleft()
        d = dist[(w, t)]
        if d == max_len:
            continue
        row = rev.get(t)
        if not row:
            continue
        for e in g.in_edges(w):
            v = g.endpoints[e][0]
            for a in g.labels[e]:
                for q in row.get(a, ()):
                    if (v, q) not in dist:
                        dist[(v, q)] = d + 1
                        queue.append((v, q))
    return dist


def reachable(g, regex, src, max_len):
    """Vertices reachable from ``src`` by a walk of length <= ``max_len`` whose word is in L(regex)."""
    aut = _automaton(regex)
    dist = _bfs_forward(g, aut, src, max_len)
    return frozenset(v for (v, q) in dist if q in aut.finals)


def _co_reachable(g, aut, dst, max_len):
    dist = _bfs_backward(g, aut, [(dst, f) for f in sorted(aut.finals)], max_len)
    return frozenset(v for (v, q) in dist if q == 0)


def walks_between(g, regex, src, dst, max_len):
    """Walks from ``src`` (to ``dst``, or anywhere if None) accepted by ``regex``, canonical order."""
    aut = _automaton(regex)
    if dst is None:
        targets = [(v, f) for v in g.vertices for f in sorted(aut.finals)]
    else:
        targets = [(dst, f) for f in sorted(aut.finals)]
    dist = _bfs_backward(g, aut, targets, max_len)
    big = max_len + 1
    found = []
    path = []

    def dfs(v, states):
        left = max_len - len(path)
        if (dst is None or v == dst) and states & aut.finals:
            found.append(Walk(src, tuple(path), v) if path else Walk(src))
        if left == 0:
            return
        for e in g.out_edges(v):
            nxt = aut.step(states, g.labels[e])
            if not nxt:
                continue
            w = g.endpoints[e][1]
            if min(dist.get((w, q), big) for q in nxt) <= left - 1:
                path.append(e)
                dfs(w, nxt)
                path.pop()

    if min(dist.get((src, 0), big), big) <= max_len:
        dfs(src, frozenset([0]))
    found.sort(key=Walk.sort_key)
    return found


def _walk_accepted(g, aut, walk):
    states = frozenset([0])
    for e in walk.edges:
        states = aut.step(states, g.labels[e])
        if not states:
            return False
    return bool(states & aut.finals)


# ----------------------------------------------------------------------
# budgets


def resolve_budget(budget, graph, regex, identity_sensitive=False) -> WalkBudget:
    if isinstance(budget, WalkBudget):
        return budget
    if budget is not None:
        return WalkBudget(int(budget), OVERRIDE)
    n = len(graph.vertices) * _automaton(regex).state_count
    return WalkBudget(2 * n if identity_sensitive else n, DEFAULT)


def _identity_sensitive(query, preds, kinds):
    for p in preds:
        if isinstance(p, (TermEq, TermNeq)) and isinstance(p.left, Var):
            if kinds.get(p.left.name) == PATH or kinds.get(p.right.name) == PATH:
                return True
    return False


def path_budgets(graph, query, budget=None, identity_sensitive=False):
    """``[(atom text, WalkBudget), ...]`` for every path atom of ``query``."""
    return [
        (str(a), resolve_budget(budget, graph, a.regex, identity_sensitive)) for a in query.atoms if a.is_path
    ]


# ----------------------------------------------------------------------
# search plan


class _Plan:
    """Graph-independent compilation of (query, predicates, bound variables)."""

    def __init__(self, query, preds, base_kinds):
        self.query = query
        self.preds = tuple(preds)
        kinds = dict(base_kinds)
        for v, k in query.kinds().items():
            if v in kinds and kinds[v] != k:
                raise KindMismatch(f"variable {v!r} is a {k} variable but is bound to a {kinds[v]}")
            kinds[v] = k
        self.kinds = kinds
        self.base = tuple(base_kinds)
        self.order = tuple(v for v in query.variables if v not in base_kinds)
        self.out_vars = tuple(query.variables) + tuple(v for v in self.base if v not in query)
        missing = set(predicate_vars(preds)) - set(kinds)
        if missing:
            raise KindMismatch(f"predicates mention unbound variables {sorted(missing)}")
        pos = {v: -1 for v in self.base}
        pos.update({v: i for i, v in enumerate(self.order)})
        self.pos = pos
        atoms = query.atoms
        self.atoms = atoms
        self.labels = query.vertex_labels

        def atom_vars(a):
            vs = [a.src, a.dst]
            if a.binder is not None:
                vs.append(a.binder)
            return vs

        n = len(self.order)
        self.closed_atoms = [[] for _ in range(n + 1)]  # index i + 1 for position i
        for a in atoms:
            self.closed_atoms[max(pos[v] for v in atom_vars(a)) + 1].append(a)
        self.closed_preds = [[] for _ in range(n + 1)]
        for p in self.preds:
            vs = predicate_vars([p])
            at = max((pos[v] for v in vs), default=-1)
            self.closed_preds[at + 1].append(p)

        # candidate generators and the checks they make redundant
        self.gen = []
        for i, v in enumerate(self.order):
            kind = kinds[v]
            fixed, nbrs, reach, consumed = [], [], [], set()
            if kind == VERTEX:
                for a in atoms:
                    if v not in (a.src, a.dst):
                        continue
                    if a.binder is not None and pos[a.binder] < i:
                        fixed.append((a, v == a.src))
                        continue
                    if a.src == a.dst:
                        continue
                    other = a.dst if v == a.src else a.src
                    if pos[other] >= i:
                        continue
                    if a.is_path:
                        reach.append((a, other, v == a.dst))
                    else:
                        nbrs.append((a.label, other, v == a.dst))
                    if a.binder is None and max(pos[other], i) == i:
                        consumed.add(a.index)
            self.gen.append((kind, fixed, nbrs, reach))
            self.closed_atoms[i + 1] = [a for a in self.closed_atoms[i + 1] if a.index not in consumed]
        self.edge_atoms = {v: [a for a in atoms if a.binder == v] for v in self.order}


_PLANS = {}


def _plan(query, preds, base_kinds):
    key = (query, tuple(preds), tuple(sorted(base_kinds.items())))
    p = _PLANS.get(key)
    if p is None:
        if len(_PLANS) > 4096:
            _PLANS.clear()
        p = _Plan(query, preds, base_kinds)
        _PLANS[key] = p
    return p


class _Run:
    def __init__(self, plan, graph, budget, identity_sensitive):
        self.plan = plan
        self.g = graph
        self.idx = _index(graph)
        self.budgets = {
            a.index: resolve_budget(budget, graph, a.regex, identity_sensitive).max_len
            for a in plan.atoms
            if a.is_path
        }
        self._reach = {}
        self.gens = None

    def reach(self, a, v, forward):
        key = (a.index, v, forward)
        r = self._reach.get(key)
        if r is None:
            aut = _automaton(a.regex)
            b = self.budgets[a.index]
            if forward:
                r = reachable(self.g, a.regex, v, b)
            else:
                r = _co_reachable(self.g, aut, v, b)
            self._reach[key] = r
        return r

    # -- compiled checks and candidate generators -------------------------

    def _atom_check(self, a):
        g, idx = self.g, self.idx
        src, dst, binder = a.src, a.dst, a.binder
        if binder is None:
            if a.is_path:
                reach = self.reach
                return lambda h: h[dst] in reach(a, h[src], True)
            nbr = idx.out_nbr(a.label)
            return lambda h: h[dst] in nbr[h[src]]
        if a.is_path:
            aut = _automaton(a.regex)
            b = self.budgets[a.index]

            def check_walk(h):
                x = h[binder]
                return (
                    x.start == h[src] and x.end == h[dst] and len(x.edges) <= b and _walk_accepted(g, aut, x)
                )

            return check_walk
        endpoints, labels, label = g.endpoints, g.labels, a.label
        if label is None:
            return lambda h: endpoints[h[binder]] == (h[src], h[dst])
        return lambda h: endpoints[h[binder]] == (h[src], h[dst]) and label in labels[h[binder]]

    def _vertex_gen(self, i):
        plan, idx = self.plan, self.idx
        _, fixed, nbrs, reach = plan.gen[i]
        labels = plan.labels.get(plan.order[i], frozenset())
        vlabels = idx.labels
        if not fixed and not nbrs and not reach:
            every = idx.vertices_with(labels)
            return lambda h: every
        if len(fixed) == 1 and not nbrs and not reach:
            a, is_src = fixed[0]
            binder, end = a.binder, (0 if is_src else 1)
            if a.is_path:
                def one(h):
                    c = h[binder].start if is_src else h[binder].end
                    return (c,) if labels <= vlabels[c] else ()
            else:
                endpoints = idx.endpoints

                def one(h):
                    c = endpoints[h[binder]][end]
                    return (c,) if labels <= vlabels[c] else ()
            return one
        if len(nbrs) == 1 and not fixed and not reach:
            label, other, is_dst = nbrs[0]
            table = idx.sorted_nbrs(label, is_dst, labels)
            return lambda h: table[h[other]]
        endpoints = idx.endpoints
        nbr_tables = [((idx.out_nbr(lab) if is_dst else idx.in_nbr(lab)), other) for lab, other, is_dst in nbrs]
        reach_fn = self.reach

        def general(h):
            cands = None
            for a, is_src in fixed:
                x = h[a.binder]
                if isinstance(x, Walk):
                    c = x.start if is_src else x.end
                else:
                    c = endpoints[x][0 if is_src else 1]
                if cands is None or c in cands:
                    cands = {c}
                else:
                    return ()
            for table, other in nbr_tables:
                ns = table[h[other]]
                cands = set(ns) if cands is None else cands & ns
                if not cands:
                    return ()
            for a, other, is_dst in reach:
                rs = reach_fn(a, h[other], is_dst)
                cands = set(rs) if cands is None else cands & rs
                if not cands:
                    return ()
            if labels:
                cands = [c for c in cands if labels <= vlabels[c]]
            return sorted(cands)

        return general

    def _edge_gen(self, i):
        plan, idx = self.plan, self.idx
        atoms, pos = plan.edge_atoms[plan.order[i]], plan.pos
        for a in atoms:
            if pos[a.src] < i:
                src, label = a.src, a.label
                return lambda h: idx.out_edges(h[src], label)
        for a in atoms:
            if pos[a.dst] < i:
                dst, label = a.dst, a.label
                return lambda h: idx.in_edges(h[dst], label)
        every = idx.edges_with(atoms[0].label)
        return lambda h: every

    def _path_gen(self, i):
        plan, g = self.plan, self.g
        atoms, pos = plan.edge_atoms[plan.order[i]], plan.pos
        a = next((a for a in atoms if pos[a.src] < i), atoms[0])
        b = self.budgets[a.index]
        src_bound, dst_bound = pos[a.src] < i, pos[a.dst] < i

        def walks(h):
            dst = h[a.dst] if dst_bound else None
            if src_bound:
                return walks_between(g, a.regex, h[a.src], dst, b)
            out = []
            for s in g.vertices:
                out.extend(walks_between(g, a.regex, s, dst, b))
            out.sort(key=Walk.sort_key)
            return out

        return walks

    def _compile(self):
        plan = self.plan
        gens = []
        for i, v in enumerate(plan.order):
            kind = plan.kinds[v]
            if kind == VERTEX:
                gens.append(self._vertex_gen(i))
            elif kind == EDGE:
                gens.append(self._edge_gen(i))
            else:
                gens.append(self._path_gen(i))
        g = self.g
        checks = []
        for atoms, preds in zip(plan.closed_atoms, plan.closed_preds):
            fs = [self._atom_check(a) for a in atoms]
            fs += [(lambda p: lambda h: eval_predicate(p, h, g))(p) for p in preds]
            checks.append(tuple(fs))
        self.gens = gens
        self.checks = checks

    def run(self, h, on_match, raw=False, prune_level=None, prune=None):
        """Depth-first search; ``on_match`` returns True to stop.  Returns True if stopped.

        With ``raw`` the callback receives the live assignment dict instead
        of a :class:`Match`.  ``prune(h)`` is consulted once the first
        ``prune_level + 1`` search variables are bound; returning True skips
        every completion of that prefix.
        """
        if self.gens is None:
            self._compile()
        plan = self.plan
        checks = self.checks
        for f in checks[0]:
            if not f(h):
                return False
        if prune is not None and prune_level == -1 and prune(h):
            return False
        order = plan.order
        n = len(order)
        out_vars = plan.out_vars
        gens = self.gens
        if raw:
            emit = on_match
        else:
            def emit(h):
                return on_match(Match(out_vars, tuple(h[v] for v in out_vars)))

        if n == 0:
            return bool(emit(h))

        def rec(i):
            v = order[i]
            checks_i = checks[i + 1]
            last = i == n - 1
            at_prune = prune is not None and i == prune_level
            for c in gens[i](h):
                h[v] = c
                for f in checks_i:
                    if not f(h):
                        break
                else:
                    if at_prune and prune(h):
                        continue
                    if last:
                        if emit(h):
                            del h[v]
                            return True
                    elif rec(i + 1):
                        del h[v]
                        return True
            h.pop(v, None)
            return False

        return rec(0)


def _base_kinds(graph, base):
    kinds = {}
    for v, x in base.items():
        if isinstance(x, Walk):
            kinds[v] = PATH
        elif graph.is_vertex(x):
            kinds[v] = VERTEX
        elif graph.is_edge(x):
            kinds[v] = EDGE
        else:
            raise KindMismatch(f"{v!r} is bound to {x!r}, which is not in the graph")
    return kinds


def _prepare(graph, query, preds, base, budget, identity_sensitive):
    base = dict(base or {})
    plan = _plan(query, preds, _base_kinds(graph, base))
    if identity_sensitive is None:
        identity_sensitive = _identity_sensitive(query, preds, plan.kinds)
    return _Run(plan, graph, budget, identity_sensitive), base


def iter_matches(graph, query, preds=(), budget=None, base=None, identity_sensitive=None):
    """All matches of ``(query, preds)`` extending ``base``, as a list in canonical order."""
    run, h = _prepare(graph, query, preds, base, budget, identity_sensitive)
    out = []
    run.run(h, lambda m: out.append(m) and False)
    return out


def find_matches(graph, query, preds=(), budget=None, identity_sensitive=None):
    """Every match of ``(query, preds)`` over ``graph``, canonical order, no duplicates."""
    return iter_matches(graph, query, preds, budget, None, identity_sensitive)


def extend_match(graph, query, preds, base, budget=None, identity_sensitive=None):
    """Matches of ``(query, preds)`` that agree with the partial assignment ``base``."""
    return iter_matches(graph, query, preds, budget, base, identity_sensitive)


def first_match(graph, query, preds=(), budget=None, base=None, identity_sensitive=None, where=None):
    """The first match in canonical order (satisfying ``where`` if given), or None."""
    run, h = _prepare(graph, query, preds, base, budget, identity_sensitive)
    found = []

    def take(m):
        if where is None or where(m):
            found.append(m)
            return True
        return False

    run.run(h, take)
    return found[0] if found else None


def has_match(graph, query, preds=(), budget=None, base=None, identity_sensitive=None):
    return first_match(graph, query, preds, budget, base, identity_sensitive) is not None


def visit_matches(graph, query, preds, on_match, budget=None, base=None, identity_sensitive=None):
    """Stream matches into ``on_match`` until it returns True."""
    run, h = _prepare(graph, query, preds, base, budget, identity_sensitive)
    return run.run(h, on_match)
