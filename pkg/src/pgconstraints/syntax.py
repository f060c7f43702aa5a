"""Recursive-descent parser for patterns, predicates and constraints.

Grammar::

    file       := constraint*
    constraint := KIND [NAME] '{' body '}'            KIND := GFD | GGD | PGKEY
    GFD body   := 'match' pattern ['where' preds] 'then' preds
    GGD body   := 'source' pattern ['where' preds] 'target' pattern ['where' preds]
    PGKEY body := 'scope' pattern ['where' preds]
                  'assert' KW '(' term (',' term)* ')'
                  'descriptor' pattern ['where' preds]
    pattern    := [chain (','? chain)*]
    chain      := node (arrow node)*
    node       := '(' VAR (':' LABEL)* ')'
    arrow      := '->' | '<-' | '-[' [VAR] [':' (LABEL | '/' regex '/')] ']->'
                | '<-[' [VAR] [':' (LABEL | '/' regex '/')] ']-'
    preds      := pred (',' pred)*
    pred       := term ('=' | '!=' | '≠') (term | STRING) | 'ex' '(' term ')' | 'false'
    term       := VAR | VAR '.' KEY

Variables may carry trailing primes (``x'``); constants are double-quoted
JSON strings.  ``#`` starts a comment running to the end of the line.
"""

from __future__ import annotations

import json
import re

from .constraints import KEYWORDS, GfdConstraint, GgdConstraint, PgKeyConstraint
from .errors import MalformedConstraint, MalformedQuery, ParseError
from .pattern import (
    EMPTY_QUERY,
    Chain,
    ConstEq,
    ConstNeq,
    Exists,
    Link,
    Prop,
    Query,
    TermEq,
    TermNeq,
    Unsat,
    Var,
    VertexAtom,
)
from .regex import parse_regex

RESERVED = frozenset(
    ["match", "where", "then", "source", "target", "scope", "assert", "descriptor", "ex", "false"]
)

_TOKENS = [
    ("ws", r"\s+|#[^\n]*"),
    ("string", r'"(?:[^"\\]|\\.)*"'),
    ("regex", r"/[^/]*/"),
    ("ident", r"[A-Za-z_][A-Za-z0-9_]*'*"),
    ("neq", r"!=|≠"),
    ("larrow", r"<-"),
    ("rarrow", r"->"),
    ("punct", r"[()\[\]{}:,.=\-]"),
]
_LEX = re.compile("|".join(f"(?P<{n}>{p})" for n, p in _TOKENS))


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = []
        pos = 0
        while pos < len(text):
            m = _LEX.match(text, pos)
            if not m:
                raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
            kind = m.lastgroup
            if kind != "ws":
                val = m.group()
                if kind == "punct" or kind == "neq":
                    kind = "!=" if kind == "neq" else val
                self.toks.append((kind, val, pos))
            pos = m.end()
        self.toks.append(("eof", "", len(text)))
        self.i = 0

    # -- token helpers ---------------------------------------------------
    def peek(self, k=0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def at(self, kind, value=None, k=0):
        t = self.peek(k)
        return t[0] == kind and (value is None or t[1] == value)

    def error(self, msg):
        raise ParseError(msg, self.text, self.peek()[2])

    def expect(self, kind, value=None):
        if not self.at(kind, value):
            want = value or kind
            self.error(f"expected {want!r}, found {self.peek()[1] or 'end of input'!r}")
        t = self.toks[self.i]
        self.i += 1
        return t

    def accept(self, kind, value=None):
        if self.at(kind, value):
            self.i += 1
            return True
        return False

    def var(self):
        t = self.expect("ident")
        if t[1] in RESERVED:
            raise ParseError(f"{t[1]!r} is reserved", self.text, t[2])
        return t[1]

    def name(self, what):
        t = self.expect("ident")
        if "'" in t[1]:
            raise ParseError(f"a {what} cannot contain primes", self.text, t[2])
        return t[1]

    # -- patterns ----------------------------------------------------------
    def node(self):
        self.expect("(")
        v = self.var()
        labels = []
        while self.accept(":"):
            labels.append(self.name("label"))
        self.expect(")")
        return VertexAtom(v, labels)

    def arrow_body(self):
        binder = label = regex = None
        if self.at("ident"):
            binder = self.var()
        if self.accept(":"):
            if self.at("regex"):
                t = self.expect("regex")
                try:
                    regex = parse_regex(t[1][1:-1])
                except ParseError as exc:
                    raise ParseError(f"bad regex: {exc}", self.text, t[2] + 1 + exc.pos) from None
            else:
                label = self.name("label")
        self.expect("]")
        return binder, label, regex

    def link(self):
        if self.accept("rarrow"):
            return True, None, None, None
        if self.accept("larrow"):
            if self.accept("["):
                b, lab, rx = self.arrow_body()
                self.expect("-")
                return False, b, lab, rx
            return False, None, None, None
        if self.accept("-"):
            self.expect("[")
            b, lab, rx = self.arrow_body()
            self.expect("rarrow")
            return True, b, lab, rx
        return None

    def chain(self):
        head = self.node()
        links = []
        while self.at("rarrow") or self.at("larrow") or self.at("-"):
            fwd, b, lab, rx = self.link()
            links.append(Link(self.node(), fwd, b, lab, rx))
        return Chain(head, tuple(links))

    def pattern(self):
        chains = []
        while self.at("("):
            chains.append(self.chain())
            if self.accept(","):
                if not self.at("("):
                    self.error("expected '(' after ','")
        try:
            return Query(tuple(chains)) if chains else EMPTY_QUERY
        except MalformedQuery as exc:
            raise ParseError(str(exc), self.text, self.peek()[2]) from None

    # -- predicates --------------------------------------------------------
    def term(self):
        v = self.var()
        if self.accept("."):
            return Prop(v, self.name("key"))
        return Var(v)

    def pred(self):
        if self.at("ident", "false"):
            self.i += 1
            return Unsat()
        if self.at("ident", "ex") and self.at("(", k=1):
            self.i += 2
            t = self.term()
            self.expect(")")
            return Exists(t)
        left = self.term()
        if self.accept("="):
            neg = False
        elif self.accept("!="):
            neg = True
        else:
            self.error("expected '=' or '!='")
        at = self.peek()[2]
        try:
            if self.at("string"):
                value = json.loads(self.expect("string")[1])
                return (ConstNeq if neg else ConstEq)(left, value)
            right = self.term()
            return (TermNeq if neg else TermEq)(left, right)
        except MalformedQuery as exc:
            raise ParseError(str(exc), self.text, at) from None

    def preds(self):
        out = [self.pred()]
        while self.accept(","):
            out.append(self.pred())
        return tuple(out)

    def where(self):
        if self.accept("ident", "where"):
            return self.preds()
        return ()

    # -- constraints -------------------------------------------------------
    def constraint(self):
        kind_tok = self.expect("ident")
        kind = kind_tok[1]
        if kind not in ("GFD", "GGD", "PGKEY"):
            raise ParseError(f"unknown constraint kind {kind!r}", self.text, kind_tok[2])
        name = None
        if self.at("ident"):
            name = self.name("constraint name")
        self.expect("{")
        start = self.peek()[2]
        try:
            if kind == "GFD":
                self.expect("ident", "match")
                q = self.pattern()
                cs = self.where()
                self.expect("ident", "then")
                c = GfdConstraint(q, cs, self.preds(), name)
            elif kind == "GGD":
                self.expect("ident", "source")
                qs = self.pattern()
                cs = self.where()
                self.expect("ident", "target")
                qt = self.pattern()
                c = GgdConstraint(qs, cs, qt, self.where(), name)
            else:
                self.expect("ident", "scope")
                qs = self.pattern()
                cs = self.where()
                self.expect("ident", "assert")
                kw = self.expect("ident")
                if kw[1] not in KEYWORDS:
                    raise ParseError(f"unknown assertion keyword {kw[1]!r}", self.text, kw[2])
                self.expect("(")
                key = [self.term()]
                while self.accept(","):
                    key.append(self.term())
                self.expect(")")
                self.expect("ident", "descriptor")
                qt = self.pattern()
                c = PgKeyConstraint(qs, cs, kw[1], tuple(key), qt, self.where(), name)
        except MalformedConstraint as exc:
            raise ParseError(str(exc), self.text, start) from exc
        self.expect("}")
        return c

    def end(self):
        if not self.at("eof"):
            self.error(f"unexpected {self.peek()[1]!r}")


def parse_query(text: str) -> Query:
    p = _Parser(text)
    q = p.pattern()
    p.end()
    return q


def parse_predicates(text: str) -> tuple:
    p = _Parser(text)
    if p.at("eof"):
        return ()
    out = p.preds()
    p.end()
    return out


def parse_constraints(text: str) -> list:
    p = _Parser(text)
    out = []
    while not p.at("eof"):
        out.append(p.constraint())
    return out
