"""GFD, GGD and PG-Key constraints and their fragment classification."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import MalformedConstraint, MalformedPgKey
from .pattern import (
    EMPTY_QUERY,
    PATH,
    ConstEq,
    ConstNeq,
    Exists,
    Prop,
    Query,
    TermEq,
    TermNeq,
    Unsat,
    Var,
    predicate_vars,
    print_predicates,
)

__all__ = [
    "MANDATORY",
    "EXCLUSIVE",
    "SINGLETON",
    "KEYWORDS",
    "GfdConstraint",
    "GgdConstraint",
    "PgKeyConstraint",
    "FragmentDescriptor",
    "shared_variables",
    "classify",
    "constraint_variables",
    "uses_path_identity",
    "constants_of",
    "labels_of",
    "keys_of",
    "parse_constraint",
    "parse_constraints",
    "print_constraint",
]

MANDATORY, EXCLUSIVE, SINGLETON = "MANDATORY", "EXCLUSIVE", "SINGLETON"
KEYWORDS = (MANDATORY, EXCLUSIVE, SINGLETON)

FAMILY_EQ = "[=]"
FAMILY_EQ_NEQ = "[=,≠]"
FAMILY_C = "[=c]"
FAMILY_C_NEQ = "[=c,≠c]"


def _check_side(query, preds, allowed, what):
    qv = set(query.variables)
    for v in predicate_vars(preds):
        if v not in qv and v not in allowed:
            raise MalformedConstraint(f"{what} predicate mentions unknown variable {v!r}")
    _check_prop_terms(preds, {**{v: query.kind(v) for v in qv}, **allowed})


def _check_prop_terms(preds, kinds):
    for p in preds:
        for t in _pred_terms(p):
            if isinstance(t, Prop) and kinds.get(t.name) == PATH:
                raise MalformedConstraint(f"path variable {t.name!r} carries no properties")


def _pred_terms(p):
    if isinstance(p, (TermEq, TermNeq)):
        return (p.left, p.right)
    if isinstance(p, (ConstEq, ConstNeq, Exists)):
        return (p.term,)
    return ()


def _ordered(vars_, order):
    pos = {v: i for i, v in enumerate(order)}
    return tuple(sorted(vars_, key=lambda v: pos.get(v, len(pos))))


@dataclass(frozen=True)
class GfdConstraint:
    """``(Q, C_s => C_t)``: every match of ``(Q, C_s)`` satisfies ``C_t``."""

    pattern: Query
    source_preds: tuple = ()
    head: tuple = ()
    name: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "source_preds", tuple(self.source_preds))
        object.__setattr__(self, "head", tuple(self.head))
        if not self.head:
            raise MalformedConstraint("a GFD needs a non-empty head")
        _check_side(self.pattern, self.source_preds, {}, "source")
        _check_side(self.pattern, self.head, {}, "head")

    formalism = "GFD"

    def __str__(self):
        return print_constraint(self)


@dataclass(frozen=True)
class GgdConstraint:
    """``(Q_s, C_s => Q_t, C_t)``: every source match extends to a target match."""

    source: Query
    source_preds: tuple = ()
    target: Query = EMPTY_QUERY
    target_preds: tuple = ()
    name: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "source_preds", tuple(self.source_preds))
        object.__setattr__(self, "target_preds", tuple(self.target_preds))
        _check_side(self.source, self.source_preds, {}, "source")
        src_kinds = self.source.kinds()
        for v in set(self.target.variables) & set(src_kinds):
            if self.target.kind(v) != src_kinds[v]:
                raise MalformedConstraint(f"variable {v!r} changes kind between source and target")
        _check_side(self.target, self.target_preds, src_kinds, "target")

    formalism = "GGD"

    def __str__(self):
        return print_constraint(self)


@dataclass(frozen=True)
class PgKeyConstraint:
    """``(Q_s, C_s => keyword(key), Q_t, C_t)`` sharing exactly one variable."""

    scope: Query
    scope_preds: tuple
    keyword: str
    key: tuple
    descriptor: Query = EMPTY_QUERY
    descriptor_preds: tuple = ()
    name: Optional[str] = None

    def __post_init__(self):
        for attr in ("scope_preds", "key", "descriptor_preds"):
            object.__setattr__(self, attr, tuple(getattr(self, attr)))
        if self.keyword not in KEYWORDS:
            raise MalformedPgKey(f"unknown assertion keyword {self.keyword!r}")
        if not self.key:
            raise MalformedPgKey("the key tuple must be non-empty")
        _check_side(self.scope, self.scope_preds, {}, "scope")
        src_kinds = self.scope.kinds()
        _check_side(self.descriptor, self.descriptor_preds, src_kinds, "descriptor")
        shared = _pgkey_shared(self)
        if len(shared) != 1:
            raise MalformedPgKey(
                f"scope and descriptor must share exactly one variable, found {list(shared)}"
            )
        side = set(self.descriptor.variables) | set(predicate_vars(self.descriptor_preds)) | set(shared)
        kinds = {**src_kinds, **self.descriptor.kinds()}
        for t in self.key:
            if t.var not in side:
                raise MalformedPgKey(f"key component {t} is not over the descriptor variables")
        _check_prop_terms([Exists(t) for t in self.key], kinds)

    formalism = "PGKey"

    @property
    def scope_var(self):
        return _pgkey_shared(self)[0]

    def __str__(self):
        return print_constraint(self)


def _pgkey_shared(c):
    right = set(c.descriptor.variables) | set(predicate_vars(c.descriptor_preds))
    right |= {t.var for t in c.key if t.var in c.scope}
    return tuple(v for v in c.scope.variables if v in right)


def shared_variables(c) -> tuple:
    """The variables occurring on both sides of ``c``, in declaration order."""
    if isinstance(c, GfdConstraint):
        return _ordered(set(predicate_vars(c.head)), c.pattern.variables)
    if isinstance(c, GgdConstraint):
        right = set(c.target.variables) | set(predicate_vars(c.target_preds))
        return tuple(v for v in c.source.variables if v in right)
    if isinstance(c, PgKeyConstraint):
        return _pgkey_shared(c)
    raise TypeError(f"not a constraint: {c!r}")


def constraint_parts(c):
    """``[(query, preds), ...]`` for every pattern side of ``c``."""
    if isinstance(c, GfdConstraint):
        return [(c.pattern, c.source_preds + c.head)]
    if isinstance(c, GgdConstraint):
        return [(c.source, c.source_preds), (c.target, c.target_preds)]
    return [(c.scope, c.scope_preds), (c.descriptor, c.descriptor_preds + tuple(Exists(t) for t in c.key))]


def constraint_variables(c) -> dict:
    """Kind of every variable of ``c``."""
    kinds = {}
    for q, _ in constraint_parts(c):
        kinds.update(q.kinds())
    return kinds


def _all_preds(c):
    out = []
    for _, preds in constraint_parts(c):
        out.extend(preds)
    return out


def uses_path_identity(c) -> bool:
    """Does ``c`` compare path variables by identity (``p = q``, ``p != q``)?"""
    kinds = constraint_variables(c)
    for p in _all_preds(c):
        if isinstance(p, (TermEq, TermNeq)) and isinstance(p.left, Var):
            if kinds.get(p.left.name) == PATH or kinds.get(p.right.name) == PATH:
                return True
    if isinstance(c, PgKeyConstraint) and c.keyword != MANDATORY:
        return any(isinstance(t, Var) and kinds.get(t.name) == PATH for t in c.key)
    return False


def constants_of(c) -> frozenset:
    return frozenset(p.value for p in _all_preds(c) if isinstance(p, (ConstEq, ConstNeq)))


def labels_of(c) -> frozenset:
    out = frozenset()
    for q, _ in constraint_parts(c):
        out |= q.labels
    return out


def keys_of(c) -> frozenset:
    out = set()
    for p in _all_preds(c):
        for t in _pred_terms(p):
            if isinstance(t, Prop):
                out.add(t.key)
    return frozenset(out)


@dataclass(frozen=True)
class FragmentDescriptor:
    formalism: str
    shared: int
    keywords: frozenset
    family: str
    path_mode: str

    def to_json(self):
        return {
            "formalism": self.formalism,
            "shared": self.shared,
            "keywords": sorted(self.keywords),
            "family": self.family,
            "path_mode": self.path_mode,
        }


def predicate_family(preds, keywords=(), key=()) -> str:
    """Least of ``[=c] <= [=c,≠c], [=] <= [=,≠]`` containing every atom."""
    term_eq = term_neq = const_neq = False
    for p in preds:
        if isinstance(p, TermEq):
            term_eq = True
        elif isinstance(p, TermNeq) or isinstance(p, Unsat):
            term_neq = True
        elif isinstance(p, ConstNeq):
            const_neq = True
        elif isinstance(p, Exists) and isinstance(p.term, Prop):
            term_eq = True
    if any(k != MANDATORY for k in keywords):
        term_eq = True
    if any(isinstance(t, Prop) for t in key):
        term_eq = True
    if term_neq or (term_eq and const_neq):
        return FAMILY_EQ_NEQ
    if term_eq:
        return FAMILY_EQ
    if const_neq:
        return FAMILY_C_NEQ
    return FAMILY_C


def classify(c) -> FragmentDescriptor:
    shared = shared_variables(c)
    if isinstance(c, PgKeyConstraint):
        if len(shared) != 1:
            raise MalformedPgKey(f"a PG-Key shares exactly one variable, found {len(shared)}")
        keywords = frozenset([c.keyword])
        family = predicate_family(_all_preds(c), keywords, c.key)
    else:
        keywords = frozenset()
        family = predicate_family(_all_preds(c))
    cq = all(q.is_cq for q, _ in constraint_parts(c))
    return FragmentDescriptor(c.formalism, len(shared), keywords, family, "CQ" if cq else "CRPQ")


def _side(keyword, query, preds):
    parts = [keyword]
    if query.chains:
        parts.append(str(query))
    if preds:
        parts.append("where " + print_predicates(preds))
    return " ".join(parts)


def print_constraint(c) -> str:
    """Canonical one-line DSL text of ``c``."""
    head = c.formalism.upper() + (f" {c.name}" if c.name else "")
    if isinstance(c, GfdConstraint):
        body = [_side("match", c.pattern, c.source_preds), "then " + print_predicates(c.head)]
    elif isinstance(c, GgdConstraint):
        body = [_side("source", c.source, c.source_preds), _side("target", c.target, c.target_preds)]
    else:
        key = ", ".join(str(t) for t in c.key)
        body = [
            _side("scope", c.scope, c.scope_preds),
            f"assert {c.keyword}({key})",
            _side("descriptor", c.descriptor, c.descriptor_preds),
        ]
    return f"{head} {{ " + " ".join(body) + " }"


def parse_constraint(text: str):
    from .syntax import parse_constraints

    cs = parse_constraints(text)
    if len(cs) != 1:
        raise MalformedConstraint(f"expected exactly one constraint, found {len(cs)}")
    return cs[0]


def parse_constraints(text: str) -> list:
    from .syntax import parse_constraints as _parse

    return _parse(text)
