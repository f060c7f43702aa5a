"""Graph patterns (CQ / CRPQ) and data/identifier predicates.

A :class:`Query` is a list of *chains* such as ``(x:A)-[e:r]->(y)<-[p:/a*/]-(z)``.
Each link of a chain is a connection atom: an edge atom (binds a single
edge, optionally with a required label) or a path atom (binds a walk whose
label word is in the language of a regular expression).  Anonymous binders
are existential: they constrain matches but are not variables of the query.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

from .errors import KindConflict, MalformedQuery
from .regex import RegularExpr

__all__ = [
    "VERTEX",
    "EDGE",
    "PATH",
    "Var",
    "Prop",
    "TermEq",
    "TermNeq",
    "ConstEq",
    "ConstNeq",
    "Exists",
    "Unsat",
    "VertexAtom",
    "Link",
    "Chain",
    "ConnAtom",
    "Query",
    "EMPTY_QUERY",
    "parse_query",
    "parse_predicates",
    "print_predicates",
    "predicate_vars",
    "eval_predicates",
    "eval_predicate",
    "rename_predicate",
]

VERTEX, EDGE, PATH = "vertex", "edge", "path"


# ----------------------------------------------------------------------
# terms and predicates


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return self.name

    @property
    def var(self):
        return self.name


@dataclass(frozen=True)
class Prop:
    """``var.key``: the value of property ``key`` on the object bound to ``var``."""

    name: str
    key: str

    def __str__(self):
        return f"{self.name}.{self.key}"

    @property
    def var(self):
        return self.name


def _const(value):
    return json.dumps(value, ensure_ascii=False)


@dataclass(frozen=True)
class TermEq:
    left: object
    right: object

    def __post_init__(self):
        if type(self.left) is not type(self.right):
            raise MalformedQuery(f"cannot compare {self.left} with {self.right}")

    def __str__(self):
        return f"{self.left} = {self.right}"


@dataclass(frozen=True)
class TermNeq:
    left: object
    right: object

    def __post_init__(self):
        if type(self.left) is not type(self.right):
            raise MalformedQuery(f"cannot compare {self.left} with {self.right}")

    def __str__(self):
        return f"{self.left} != {self.right}"


@dataclass(frozen=True)
class ConstEq:
    term: Prop
    value: str

    def __post_init__(self):
        if not isinstance(self.term, Prop):
            raise MalformedQuery("constants can only be compared with property terms")

    def __str__(self):
        return f"{self.term} = {_const(self.value)}"


@dataclass(frozen=True)
class ConstNeq:
    term: Prop
    value: str

    def __post_init__(self):
        if not isinstance(self.term, Prop):
            raise MalformedQuery("constants can only be compared with property terms")

    def __str__(self):
        return f"{self.term} != {_const(self.value)}"


@dataclass(frozen=True)
class Exists:
    term: object

    def __str__(self):
        return f"ex({self.term})"


@dataclass(frozen=True)
class Unsat:
    def __str__(self):
        return "false"


def _terms(pred):
    if isinstance(pred, (TermEq, TermNeq)):
        return (pred.left, pred.right)
    if isinstance(pred, (ConstEq, ConstNeq, Exists)):
        return (pred.term,)
    return ()


def predicate_vars(preds) -> list:
    """Variables mentioned by ``preds`` in order of first occurrence."""
    seen = {}
    for p in preds:
        for t in _terms(p):
            seen.setdefault(t.var, None)
    return list(seen)


def _rename_term(t, mapping):
    if isinstance(t, Var):
        return Var(mapping.get(t.name, t.name))
    return Prop(mapping.get(t.name, t.name), t.key)


def rename_predicate(pred, mapping):
    if isinstance(pred, (TermEq, TermNeq)):
        return type(pred)(_rename_term(pred.left, mapping), _rename_term(pred.right, mapping))
    if isinstance(pred, (ConstEq, ConstNeq)):
        return type(pred)(_rename_term(pred.term, mapping), pred.value)
    if isinstance(pred, Exists):
        return Exists(_rename_term(pred.term, mapping))
    return pred


def print_predicates(preds) -> str:
    return ", ".join(str(p) for p in preds)


def _term_value(term, h, graph):
    obj = h[term.name]
    if isinstance(term, Var):
        return obj
    return graph.prop(obj, term.key)


def eval_predicate(pred, h, graph) -> bool:
    if isinstance(pred, TermEq):
        a, b = _term_value(pred.left, h, graph), _term_value(pred.right, h, graph)
        return a is not None and b is not None and a == b
    if isinstance(pred, TermNeq):
        a, b = _term_value(pred.left, h, graph), _term_value(pred.right, h, graph)
        return a is not None and b is not None and a != b
    if isinstance(pred, ConstEq):
        a = _term_value(pred.term, h, graph)
        return a is not None and a == pred.value
    if isinstance(pred, ConstNeq):
        a = _term_value(pred.term, h, graph)
        return a is not None and a != pred.value
    if isinstance(pred, Exists):
        return _term_value(pred.term, h, graph) is not None
    if isinstance(pred, Unsat):
        return False
    raise TypeError(f"not a predicate: {pred!r}")


def eval_predicates(preds, h, graph) -> bool:
    """True iff every atom of ``preds`` holds under assignment ``h``.

    Comparisons involving an undefined property are false, for ``!=`` too.
    """
    return all(eval_predicate(p, h, graph) for p in preds)


# ----------------------------------------------------------------------
# patterns


@dataclass(frozen=True)
class VertexAtom:
    var: str
    labels: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(sorted(set(self.labels))))

    def __str__(self):
        return "(" + self.var + "".join(":" + lab for lab in self.labels) + ")"


@dataclass(frozen=True)
class Link:
    """One step of a chain: a connection atom and the vertex it leads to.

    ``forward`` is True for ``-[..]->`` and False for ``<-[..]-``.
    """

    target: VertexAtom
    forward: bool = True
    binder: Optional[str] = None
    label: Optional[str] = None
    regex: Optional[RegularExpr] = None

    def __post_init__(self):
        if self.label is not None and self.regex is not None:
            raise MalformedQuery("an atom has either a label or a regex, not both")

    @property
    def is_path(self):
        return self.regex is not None

    def arrow(self):
        inner = ""
        if self.binder is None and self.label is None and self.regex is None:
            return "->" if self.forward else "<-"
        inner = self.binder or ""
        if self.label is not None:
            inner += ":" + self.label
        elif self.regex is not None:
            inner += ":/" + self.regex.to_text() + "/"
        return f"-[{inner}]->" if self.forward else f"<-[{inner}]-"


@dataclass(frozen=True)
class Chain:
    head: VertexAtom
    links: tuple = ()

    def __str__(self):
        out = [str(self.head)]
        for link in self.links:
            out.append(link.arrow())
            out.append(str(link.target))
        return "".join(out)


@dataclass(frozen=True)
class ConnAtom:
    """A connection atom with resolved direction: ``src -[binder spec]-> dst``."""

    src: str
    dst: str
    binder: Optional[str]
    label: Optional[str]
    regex: Optional[RegularExpr]
    index: int

    @property
    def is_path(self):
        return self.regex is not None

    def __str__(self):
        link = Link(VertexAtom(self.dst), True, self.binder, self.label, self.regex)
        return f"({self.src}){link.arrow()}({self.dst})"


@dataclass(frozen=True)
class Query:
    """A conjunctive (regular path) query given as a tuple of chains."""

    chains: tuple = ()
    _kinds: dict = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "chains", tuple(self.chains))
        kinds = {}

        def declare(name, kind):
            old = kinds.setdefault(name, kind)
            if old != kind:
                raise KindConflict(f"variable {name!r} used as {old} and as {kind}")

        for ch in self.chains:
            declare(ch.head.var, VERTEX)
            for link in ch.links:
                if link.binder is not None:
                    declare(link.binder, PATH if link.is_path else EDGE)
                declare(link.target.var, VERTEX)
        object.__setattr__(self, "_kinds", kinds)

    def __str__(self):
        return ", ".join(str(c) for c in self.chains)

    def to_text(self):
        return str(self)

    @property
    def variables(self) -> tuple:
        """Named variables in declaration (first occurrence) order."""
        return tuple(self._kinds)

    def kind(self, var):
        return self._kinds[var]

    def kinds(self):
        return dict(self._kinds)

    def __contains__(self, var):
        return var in self._kinds

    @cached_property
    def vertex_labels(self) -> dict:
        req = {v: set() for v, k in self._kinds.items() if k == VERTEX}
        for ch in self.chains:
            req[ch.head.var].update(ch.head.labels)
            for link in ch.links:
                req[link.target.var].update(link.target.labels)
        return {v: frozenset(s) for v, s in req.items()}

    @cached_property
    def atoms(self) -> tuple:
        out = []
        for ch in self.chains:
            prev = ch.head.var
            for link in ch.links:
                nxt = link.target.var
                src, dst = (prev, nxt) if link.forward else (nxt, prev)
                out.append(ConnAtom(src, dst, link.binder, link.label, link.regex, len(out)))
                prev = nxt
        return tuple(out)

    @property
    def is_cq(self):
        return not any(a.is_path for a in self.atoms)

    @property
    def labels(self) -> frozenset:
        """Every label the query mentions (vertex labels, edge labels, regex letters)."""
        out = set()
        for labs in self.vertex_labels.values():
            out |= labs
        for a in self.atoms:
            if a.label is not None:
                out.add(a.label)
            if a.regex is not None:
                out |= a.regex.labels()
        return frozenset(out)

    def rename(self, mapping) -> "Query":
        def rv(va):
            return VertexAtom(mapping.get(va.var, va.var), va.labels)

        chains = []
        for ch in self.chains:
            links = tuple(
                Link(
                    rv(link.target),
                    link.forward,
                    None if link.binder is None else mapping.get(link.binder, link.binder),
                    link.label,
                    link.regex,
                )
                for link in ch.links
            )
            chains.append(Chain(rv(ch.head), links))
        return Query(tuple(chains))

    def conjoin(self, *others) -> "Query":
        chains = list(self.chains)
        for o in others:
            chains.extend(ch for ch in o.chains if ch not in chains)
        return Query(tuple(chains))

    @classmethod
    def vertex(cls, var, labels=()):
        return cls((Chain(VertexAtom(var, labels)),))


EMPTY_QUERY = Query(())


def parse_query(text: str) -> Query:
    from .syntax import parse_query as _parse

    return _parse(text)


def parse_predicates(text: str) -> tuple:
    from .syntax import parse_predicates as _parse

    return _parse(text)
