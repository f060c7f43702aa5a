"""Deciding ``G |= c`` for GFDs, GGDs and PG-Keys, with violation witnesses."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .constraints import (
    EXCLUSIVE,
    MANDATORY,
    SINGLETON,
    GfdConstraint,
    GgdConstraint,
    PgKeyConstraint,
    print_constraint,
    shared_variables,
    uses_path_identity,
)
from .matcher import _prepare, path_budgets
from .pattern import Exists, Var, eval_predicates

__all__ = [
    "SATISFIED",
    "VIOLATED",
    "Verdict",
    "ViolationWitness",
    "validate",
    "validate_gfd",
    "validate_ggd",
    "validate_pgkey",
    "validate_set",
    "match_relation",
    "recheck_witness",
]

SATISFIED, VIOLATED = "Satisfied", "Violated"


@dataclass(frozen=True)
class ViolationWitness:
    """Matches demonstrating a violation.

    ``kind`` is GFD, GGD or the PG-Key keyword.  ``matches`` holds
    ``(role, Match)`` pairs: ``source`` for GFD/GGD and MANDATORY,
    ``scope``/``descriptor`` (twice) for EXCLUSIVE and SINGLETON.
    """

    kind: str
    matches: tuple

    def get(self, role, nth=0):
        hits = [m for r, m in self.matches if r == role]
        return hits[nth] if nth < len(hits) else None

    def to_json(self):
        return {"kind": self.kind, "matches": [{"role": r, "bindings": m.to_json()} for r, m in self.matches]}


@dataclass(frozen=True)
class Verdict:
    status: str
    constraint: object = None
    witness: Optional[ViolationWitness] = None
    budgets: tuple = ()
    witnesses: tuple = field(default=(), repr=False)
    member: Optional[int] = None

    @property
    def satisfied(self):
        return self.status == SATISFIED

    @property
    def violated(self):
        return self.status == VIOLATED

    def to_json(self):
        c = self.constraint
        out = {
            "status": self.status,
            "constraint": None if c is None else (c.name or print_constraint(c)),
            "witness": None if self.witness is None else self.witness.to_json(),
            "budget": [{"atom": a, **b.to_json()} for a, b in self.budgets],
        }
        if self.member is not None:
            out["member"] = self.member
        if len(self.witnesses) > 1:
            out["witnesses"] = [w.to_json() for w in self.witnesses]
        return out


def _budgets(graph, c, budget):
    ident = uses_path_identity(c)
    if isinstance(c, GfdConstraint):
        qs = [c.pattern]
    elif isinstance(c, GgdConstraint):
        qs = [c.source, c.target]
    else:
        qs = [c.scope, c.descriptor]
    out = []
    for q in qs:
        out.extend(path_budgets(graph, q, budget, ident))
    return tuple(out)


def _verdict(c, graph, budget, found):
    budgets = _budgets(graph, c, budget)
    if not found:
        return Verdict(SATISFIED, c, None, budgets)
    return Verdict(VIOLATED, c, found[0], budgets, tuple(found))


def validate_gfd(graph, c: GfdConstraint, budget=None, exhaustive=False) -> Verdict:
    ident = uses_path_identity(c)
    run, h = _prepare(graph, c.pattern, c.source_preds, None, budget, ident)
    found = []

    def check(m):
        if not eval_predicates(c.head, m, graph):
            found.append(ViolationWitness("GFD", (("source", m),)))
            return not exhaustive
        return False

    run.run(h, check)
    return _verdict(c, graph, budget, found)


def validate_ggd(graph, c: GgdConstraint, budget=None, exhaustive=False) -> Verdict:
    ident = uses_path_identity(c)
    shared = shared_variables(c)
    src_run, h = _prepare(graph, c.source, c.source_preds, None, budget, ident)
    tgt_run = None
    cache = {}
    found = []

    def extends(h):
        # does the shared-variable projection of h extend to a target match?
        nonlocal tgt_run
        key = tuple(h[v] for v in shared)
        ok = cache.get(key)
        if ok is None:
            base = dict(zip(shared, key))
            if tgt_run is None:
                tgt_run, _ = _prepare(graph, c.target, c.target_preds, base, budget, ident)
            ok = cache[key] = tgt_run.run(base, _stop, raw=True)
        return ok

    def violation(m):
        found.append(ViolationWitness("GGD", (("source", m),)))
        return not exhaustive

    # once every shared variable is bound, completions with an extensible
    # projection cannot violate, so the whole subtree is skipped
    pos = {v: i for i, v in enumerate(src_run.plan.order)}
    level = max((pos[v] for v in shared), default=-1)
    src_run.run(h, violation, prune_level=level, prune=extends)
    return _verdict(c, graph, budget, found)


def _stop(_):
    return True


def _key_value(term, m, graph):
    x = m[term.name]
    if isinstance(term, Var):
        return x
    return graph.prop(x, term.key)


def _descriptor_matches(graph, c, x_value, budget, ident):
    x = c.scope_var
    preds = c.descriptor_preds + tuple(Exists(t) for t in c.key)
    run, h = _prepare(graph, c.descriptor, preds, {x: x_value}, budget, ident)
    out = []
    run.run(h, lambda m: out.append(m) and False)
    return out


def validate_pgkey(graph, c: PgKeyConstraint, budget=None, exhaustive=False) -> Verdict:
    ident = uses_path_identity(c)
    x = c.scope_var
    run, h = _prepare(graph, c.scope, c.scope_preds, None, budget, ident)
    found = []
    seen = {}  # x image -> descriptor matches (computed once per image)
    owners = {}  # key tuple -> (x image, scope match, descriptor match), EXCLUSIVE only

    if c.keyword == MANDATORY:
        preds = c.descriptor_preds + tuple(Exists(t) for t in c.key)
        tgt_run = None

        def covered(xv):
            nonlocal tgt_run
            if tgt_run is None:
                tgt_run, _ = _prepare(graph, c.descriptor, preds, {x: xv}, budget, ident)
            return tgt_run.run({x: xv}, _stop, raw=True)

        def check(m):
            xv = m[x]
            ok = seen.get(xv)
            if ok is None:
                ok = seen[xv] = covered(xv)
            if not ok:
                found.append(ViolationWitness(MANDATORY, (("scope", m),)))
                return not exhaustive
            return False

    elif c.keyword == SINGLETON:

        def check(m):
            xv = m[x]
            if xv in seen:
                return False
            ds = seen[xv] = _descriptor_matches(graph, c, xv, budget, ident)
            if not ds:
                return False
            first = tuple(_key_value(t, ds[0], graph) for t in c.key)
            for d in ds[1:]:
                if tuple(_key_value(t, d, graph) for t in c.key) != first:
                    found.append(
                        ViolationWitness(SINGLETON, (("scope", m), ("descriptor", ds[0]), ("descriptor", d)))
                    )
                    if not exhaustive:
                        return True
            return False

    else:

        def check(m):
            xv = m[x]
            if xv in seen:
                return False
            ds = seen[xv] = _descriptor_matches(graph, c, xv, budget, ident)
            for d in ds:
                key = tuple(_key_value(t, d, graph) for t in c.key)
                prev = owners.get(key)
                if prev is None:
                    owners[key] = (xv, m, d)
                elif prev[0] != xv:
                    found.append(
                        ViolationWitness(
                            EXCLUSIVE,
                            (("scope", prev[1]), ("descriptor", prev[2]), ("scope", m), ("descriptor", d)),
                        )
                    )
                    if not exhaustive:
                        return True
            return False

    run.run(h, check)
    return _verdict(c, graph, budget, found)


def validate(graph, c, budget=None, exhaustive=False) -> Verdict:
    if isinstance(c, GfdConstraint):
        return validate_gfd(graph, c, budget, exhaustive)
    if isinstance(c, GgdConstraint):
        return validate_ggd(graph, c, budget, exhaustive)
    if isinstance(c, PgKeyConstraint):
        return validate_pgkey(graph, c, budget, exhaustive)
    raise TypeError(f"not a constraint: {c!r}")


def validate_set(graph, constraints, budget=None, exhaustive=False) -> Verdict:
    """Satisfied iff every member is; otherwise the first violated member's verdict."""
    budgets = []
    for i, c in enumerate(constraints):
        v = validate(graph, c, budget, exhaustive)
        if v.violated:
            return Verdict(VIOLATED, c, v.witness, v.budgets, v.witnesses, i)
        budgets.extend(v.budgets)
    return Verdict(SATISFIED, None, None, tuple(budgets))


def match_relation(graph, query, preds, x, y, budget=None) -> frozenset:
    """``{(h(x), h(y)) : h a match for (query, preds)}``."""
    run, h = _prepare(graph, query, preds, None, budget, None)
    out = set()
    run.run(h, lambda m: out.add((m[x], m[y])) and False)
    return frozenset(out)


def recheck_witness(graph, c, witness: ViolationWitness, budget=None) -> bool:
    """Independently confirm that ``witness`` demonstrates a violation of ``c``."""
    from .matcher import has_match

    ident = uses_path_identity(c)

    def is_match(q, preds, m, base=None):
        return has_match(graph, q, preds, budget, dict(m), ident)

    if isinstance(c, GfdConstraint):
        m = witness.get("source")
        return is_match(c.pattern, c.source_preds, m) and not eval_predicates(c.head, m, graph)
    if isinstance(c, GgdConstraint):
        m = witness.get("source")
        base = {v: m[v] for v in shared_variables(c)}
        return is_match(c.source, c.source_preds, m) and not has_match(
            graph, c.target, c.target_preds, budget, base, ident
        )
    x = c.scope_var
    kpreds = c.descriptor_preds + tuple(Exists(t) for t in c.key)
    s = witness.get("scope")
    if not is_match(c.scope, c.scope_preds, s):
        return False
    if c.keyword == MANDATORY:
        return not has_match(graph, c.descriptor, kpreds, budget, {x: s[x]}, ident)
    d1, d2 = witness.get("descriptor"), witness.get("descriptor", 1)
    if c.keyword == SINGLETON:
        if not (is_match(c.descriptor, kpreds, d1) and is_match(c.descriptor, kpreds, d2)):
            return False
        return d1[x] == d2[x] == s[x] and (
            tuple(_key_value(t, d1, graph) for t in c.key) != tuple(_key_value(t, d2, graph) for t in c.key)
        )
    s2 = witness.get("scope", 1)
    if not (is_match(c.scope, c.scope_preds, s2) and is_match(c.descriptor, kpreds, d1)):
        return False
    if not is_match(c.descriptor, kpreds, d2):
        return False
    return (
        d1[x] == s[x]
        and d2[x] == s2[x]
        and s[x] != s2[x]
        and tuple(_key_value(t, d1, graph) for t in c.key) == tuple(_key_value(t, d2, graph) for t in c.key)
    )


