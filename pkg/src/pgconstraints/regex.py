"""Regular expressions over labels and their epsilon-free automata.

Syntax (inside ``/.../`` in patterns)::

    alt     := concat ('|' concat)*
    concat  := postfix ('.'? postfix)*
    postfix := atom ('*' | '+' | '?')*
    atom    := LABEL | '(' alt ')' | '()' | 'ε'

``r+`` and ``r?`` are sugar for ``r.r*`` and ``r|()``.  Automata are built
with the Glushkov (position) construction, so a regex with ``n`` label
occurrences yields ``n + 1`` states and no epsilon moves.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from itertools import product

from .errors import ParseError

__all__ = [
    "RegularExpr",
    "Literal",
    "Concat",
    "Alt",
    "Star",
    "Epsilon",
    "EPSILON",
    "parse_regex",
    "compile_regex",
    "Automaton",
]


class RegularExpr:
    __slots__ = ()

    def __str__(self):
        return self.to_text()

    def to_text(self):
        return _print(self, 0)

    def labels(self) -> frozenset:
        if isinstance(self, Literal):
            return frozenset([self.label])
        if isinstance(self, (Concat, Alt)):
            return self.left.labels() | self.right.labels()
        if isinstance(self, Star):
            return self.inner.labels()
        return frozenset()

    def operator_count(self) -> int:
        if isinstance(self, (Concat, Alt)):
            return 1 + self.left.operator_count() + self.right.operator_count()
        if isinstance(self, Star):
            return 1 + self.inner.operator_count()
        return 0


@dataclass(frozen=True)
class Literal(RegularExpr):
    label: str


@dataclass(frozen=True)
class Concat(RegularExpr):
    left: RegularExpr
    right: RegularExpr


@dataclass(frozen=True)
class Alt(RegularExpr):
    left: RegularExpr
    right: RegularExpr


@dataclass(frozen=True)
class Star(RegularExpr):
    inner: RegularExpr


@dataclass(frozen=True)
class Epsilon(RegularExpr):
    pass


EPSILON = Epsilon()

# precedence: alt 0 < concat 1 < star 2 < atom 3
def _print(r, ctx):
    if isinstance(r, Literal):
        return r.label
    if isinstance(r, Epsilon):
        return "()"
    if isinstance(r, Star):
        return _print(r.inner, 2) + "*"
    if isinstance(r, Concat):
        s = _print(r.left, 1) + "." + _print(r.right, 2)
        return f"({s})" if ctx > 1 else s
    if isinstance(r, Alt):
        s = _print(r.left, 0) + "|" + _print(r.right, 1)
        return f"({s})" if ctx > 0 else s
    raise TypeError(r)


_TOKEN = re.compile(r"\s*(?:([A-Za-z_][A-Za-z0-9_]*)|(\(\))|(ε)|([|.*+?()]))")


def parse_regex(text: str) -> RegularExpr:
    toks = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError("unexpected character in regex", text, pos)
        start = m.start(m.lastindex)
        if m.group(1):
            toks.append(("lab", m.group(1), start))
        elif m.group(2) or m.group(3):
            toks.append(("eps", None, start))
        else:
            toks.append((m.group(4), None, start))
        pos = m.end()
    toks.append(("end", None, len(text)))
    i = 0

    def peek():
        return toks[i][0]

    def take(kind):
        nonlocal i
        if toks[i][0] != kind:
            raise ParseError(f"expected {kind!r} in regex", text, toks[i][2])
        i += 1

    def p_alt():
        left = p_concat()
        while peek() == "|":
            take("|")
            left = Alt(left, p_concat())
        return left

    def p_concat():
        left = p_postfix()
        while peek() in (".", "lab", "eps", "("):
            if peek() == ".":
                take(".")
            left = Concat(left, p_postfix())
        return left

    def p_postfix():
        nonlocal i
        r = p_atom()
        while peek() in ("*", "+", "?"):
            op = peek()
            i += 1
            if op == "*":
                r = Star(r)
            elif op == "+":
                r = Concat(r, Star(r))
            else:
                r = Alt(r, EPSILON)
        return r

    def p_atom():
        nonlocal i
        kind, val, at = toks[i]
        if kind == "lab":
            i += 1
            return Literal(val)
        if kind == "eps":
            i += 1
            return EPSILON
        if kind == "(":
            i += 1
            r = p_alt()
            take(")")
            return r
        raise ParseError("expected a label, '(' or epsilon in regex", text, at)

    r = p_alt()
    if peek() != "end":
        raise ParseError("trailing input in regex", text, toks[i][2])
    return r


class Automaton:
    """An epsilon-free NFA over labels.  State 0 is the only initial state."""

    def __init__(self, n_states, finals, delta):
        self.n_states = n_states
        self.initial = 0
        self.finals = frozenset(finals)
        # delta[state][label] -> frozenset of states
        self.delta = {q: {a: frozenset(ts) for a, ts in row.items()} for q, row in delta.items()}

    @property
    def state_count(self):
        return self.n_states

    @cached_property
    def alphabet(self):
        return frozenset(a for row in self.delta.values() for a in row)

    def step(self, states, labels):
        """States reachable from ``states`` by consuming any one of ``labels``."""
        out = set()
        for q in states:
            row = self.delta.get(q)
            if row:
                for a in labels:
                    ts = row.get(a)
                    if ts:
                        out |= ts
        return frozenset(out)

    def accepts(self, word) -> bool:
        cur = frozenset([0])
        for a in word:
            cur = self.step(cur, (a,))
            if not cur:
                return False
        return bool(cur & self.finals)

    def accepts_empty(self):
        return 0 in self.finals

    def transitions(self):
        for q, row in sorted(self.delta.items()):
            for a, ts in sorted(row.items()):
                for t in sorted(ts):
                    yield q, a, t

    def words(self, max_len, alphabet=None):
        """Accepted words up to ``max_len`` (for tests and debugging)."""
        alphabet = sorted(alphabet if alphabet is not None else self.alphabet)
        for n in range(max_len + 1):
            for w in product(alphabet, repeat=n):
                if self.accepts(w):
                    yield w


def compile_regex(r: RegularExpr | str) -> Automaton:
    if isinstance(r, str):
        r = parse_regex(r)
    positions = []  # label per position, position p is state p + 1

    def walk(node):
        # returns (nullable, first, last); fills follow
        if isinstance(node, Literal):
            positions.append(node.label)
            p = len(positions)
            follow[p] = set()
            return False, {p}, {p}
        if isinstance(node, Epsilon):
            return True, set(), set()
        if isinstance(node, Star):
            _, first, last = walk(node.inner)
            for p in last:
                follow[p] |= first
            return True, first, last
        n1, f1, l1 = walk(node.left)
        n2, f2, l2 = walk(node.right)
        if isinstance(node, Alt):
            return n1 or n2, f1 | f2, l1 | l2
        for p in l1:
            follow[p] |= f2
        return n1 and n2, f1 | f2 if n1 else f1, l1 | l2 if n2 else l2

    follow = {}
    nullable, first, last = walk(r)
    delta = {}

    def add(q, p):
        delta.setdefault(q, {}).setdefault(positions[p - 1], set()).add(p)

    for p in first:
        add(0, p)
    for p, fs in follow.items():
        for q in fs:
            add(p, q)
    finals = set(last)
    if nullable:
        finals.add(0)
    return Automaton(len(positions) + 1, finals, delta)
