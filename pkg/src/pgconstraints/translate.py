"""Constructive rewritings between GFDs, GGDs and PG-Keys.

Every rule returns a :class:`TranslationReport`.  Fresh variables are the
input's variables with primes appended; the number of primes is the least
one that avoids every name already in use, so ``x`` becomes ``x'`` unless
``x'`` is taken.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .constraints import (
    EXCLUSIVE,
    FAMILY_C,
    FAMILY_C_NEQ,
    MANDATORY,
    SINGLETON,
    GfdConstraint,
    GgdConstraint,
    PgKeyConstraint,
    classify,
    constraint_variables,
    predicate_family,
    print_constraint,
    shared_variables,
)
from .errors import NotOneShared, TranslationError, UnsupportedHead, UnsupportedPredicates
from .pattern import (
    EMPTY_QUERY,
    VERTEX,
    ConstNeq,
    Exists,
    Prop,
    Query,
    TermEq,
    TermNeq,
    Unsat,
    Var,
    predicate_vars,
    rename_predicate,
)

__all__ = [
    "TranslationReport",
    "split_gfd_head",
    "ggd1_to_mpgkey",
    "mpgkey_to_ggd1",
    "pgkey_to_ggd",
    "gfd_to_pgkeys_eq",
    "gfdc_to_ggd1",
    "pgkey_to_mpgkeys_neq",
    "gfd_to_ggd1_neq",
    "RULES",
    "apply_rule",
]


@dataclass(frozen=True)
class TranslationReport:
    rule: str
    source: object
    outputs: tuple
    fresh: tuple = ()
    conditions: tuple = ()
    target: str = ""
    fragments: tuple = field(default=(), repr=False)

    def __iter__(self):
        return iter(self.outputs)

    def __len__(self):
        return len(self.outputs)

    def to_json(self):
        return {
            "rule": self.rule,
            "input": print_constraint(self.source),
            "outputs": [print_constraint(c) for c in self.outputs],
            "fresh_variables": list(self.fresh),
            "conditions": list(self.conditions),
            "target_fragment": self.target,
            "output_fragments": [f.to_json() for f in self.fragments],
        }


def _report(rule, source, outputs, fresh=(), conditions=(), target=""):
    outputs = tuple(outputs)
    return TranslationReport(
        rule, source, outputs, tuple(fresh), tuple(conditions), target, tuple(classify(c) for c in outputs)
    )


# ----------------------------------------------------------------------
# helpers


def _priming(c, extra=()):
    """Renaming ``v -> v'...'`` with a prime count that avoids every name of ``c``."""
    used = set(constraint_variables(c)) | set(extra)
    for part in _pred_lists(c):
        used |= set(predicate_vars(part))
    n = 1
    while any(v + "'" * n in used for v in used):
        n += 1
    suffix = "'" * n
    return lambda names: {v: v + suffix for v in names}


def _pred_lists(c):
    if isinstance(c, GfdConstraint):
        return [c.source_preds, c.head]
    if isinstance(c, GgdConstraint):
        return [c.source_preds, c.target_preds]
    return [c.scope_preds, c.descriptor_preds, tuple(Exists(t) for t in c.key)]


def _rp(preds, mapping):
    return tuple(rename_predicate(p, mapping) for p in preds)


def _rt(term, mapping):
    if isinstance(term, Var):
        return Var(mapping.get(term.name, term.name))
    return Prop(mapping.get(term.name, term.name), term.key)


def _anchor(var, kinds):
    """``(var)`` when ``var`` is a vertex variable, else the empty pattern."""
    return Query.vertex(var) if kinds.get(var) == VERTEX else EMPTY_QUERY


def _name(c, suffix):
    return f"{c.name}_{suffix}" if c.name else None


def _ex(terms):
    return tuple(Exists(t) for t in terms if isinstance(t, Prop))


def _head_vars(atom):
    return predicate_vars([atom])


# ----------------------------------------------------------------------
# GFD head splitting


def split_gfd_head(c: GfdConstraint) -> TranslationReport:
    """One GFD per head atom; together they are equivalent to ``c``."""
    if len(c.head) == 1:
        return _report("split-gfd", c, [c], target="GFD, |head| = 1")
    outs = [
        GfdConstraint(c.pattern, c.source_preds, (atom,), _name(c, str(i + 1))) for i, atom in enumerate(c.head)
    ]
    return _report("split-gfd", c, outs, target="GFD, |head| = 1")


# ----------------------------------------------------------------------
# 1GGD <-> mPG-Keys


def ggd1_to_mpgkey(c: GgdConstraint) -> TranslationReport:
    shared = shared_variables(c)
    conditions = [f"shared variables: {list(shared)}"]
    descriptor = c.target
    if len(shared) > 1:
        raise NotOneShared(f"expected one shared variable, found {list(shared)}")
    if not shared:
        # anchor the descriptor on some source vertex; it is trivially matchable
        kinds = c.source.kinds()
        anchor = next((v for v in c.source.variables if kinds[v] == VERTEX), None)
        if anchor is None:
            raise NotOneShared("no shared variable and no source vertex to anchor on")
        descriptor = c.target.conjoin(Query.vertex(anchor))
        shared = (anchor,)
        conditions.append(f"no shared variable: anchored on source vertex {anchor}")
    x = shared[0]
    src = set(c.source.variables)
    zs = [v for v in descriptor.variables if v not in src]
    key = (Var(x),) + tuple(Var(z) for z in zs)
    out = PgKeyConstraint(c.source, c.source_preds, MANDATORY, key, descriptor, c.target_preds, c.name)
    return _report("ggd1-to-mpgkey", c, [out], conditions=conditions, target="mPG-Keys")


def _mandatory_to_ggd(c: PgKeyConstraint) -> GgdConstraint:
    return GgdConstraint(
        c.scope, c.scope_preds, c.descriptor, c.descriptor_preds + tuple(Exists(t) for t in c.key), c.name
    )


def mpgkey_to_ggd1(c: PgKeyConstraint) -> TranslationReport:
    if c.keyword != MANDATORY:
        raise TranslationError(f"expected a MANDATORY key, got {c.keyword}")
    return _report("mpgkey-to-ggd1", c, [_mandatory_to_ggd(c)], target="1GGD")


# ----------------------------------------------------------------------
# PG-Keys -> GGD


def _doubled_exclusive(c, prime):
    """Scope and descriptor twice (second copy primed), plus both predicate sets."""
    x = c.scope_var
    names = set(c.scope.variables) | set(c.descriptor.variables)
    ren = prime(sorted(names | {x}))
    q = c.scope.conjoin(c.scope.rename(ren), c.descriptor, c.descriptor.rename(ren))
    preds = c.scope_preds + _rp(c.scope_preds, ren) + c.descriptor_preds + _rp(c.descriptor_preds, ren)
    key_eq = tuple(TermEq(t, _rt(t, ren)) for t in c.key)
    return q, preds, key_eq, ren


def _doubled_singleton(c, prime):
    """Scope once, descriptor twice; the copy renames only descriptor-side variables."""
    x = c.scope_var
    ren = prime(sorted(v for v in c.descriptor.variables if v != x))
    q = c.scope.conjoin(c.descriptor, c.descriptor.rename(ren))
    preds = c.scope_preds + c.descriptor_preds + _rp(c.descriptor_preds, ren)
    primed = tuple(_rt(t, ren) for t in c.key)
    return q, preds, primed, ren


def pgkey_to_ggd(c: PgKeyConstraint) -> TranslationReport:
    if c.keyword == MANDATORY:
        return _report("pgkey-to-ggd", c, [_mandatory_to_ggd(c)], target="1GGD")
    prime = _priming(c)
    x = c.scope_var
    if c.keyword == EXCLUSIVE:
        q, preds, key_eq, ren = _doubled_exclusive(c, prime)
        out = GgdConstraint(q, preds + key_eq, EMPTY_QUERY, (TermEq(Var(x), Var(ren[x])),), c.name)
    else:
        q, preds, primed, ren = _doubled_singleton(c, prime)
        ex = _ex(c.key) + _ex(primed)
        head = tuple(TermEq(t, p) for t, p in zip(c.key, primed))
        out = GgdConstraint(q, preds + ex, EMPTY_QUERY, head, c.name)
    return _report(
        "pgkey-to-ggd",
        c,
        [out],
        fresh=sorted(ren.values()),
        conditions=[f"keyword {c.keyword}"],
        target="GGD with empty target (n <= 2 per head atom)",
    )


# ----------------------------------------------------------------------
# GFD -> PG-Keys (equality only)


def _primed_pattern(c, keep, prime):
    """The GFD's pattern and source predicates with every variable but ``keep`` primed."""
    ren = prime([v for v in c.pattern.variables if v not in keep])
    return c.pattern.rename(ren), _rp(c.source_preds, ren), ren


def _single_head(c, rule):
    if len(c.head) != 1:
        raise UnsupportedHead(f"{rule} needs a single head atom (split the GFD first)")
    return c.head[0]


def gfd_to_pgkeys_eq(c: GfdConstraint) -> TranslationReport:
    atom = _single_head(c, "gfd-to-pgkeys")
    if isinstance(atom, (TermNeq, ConstNeq, Unsat)):
        raise UnsupportedHead(f"head {atom} needs inequality; use gfd-to-ggd1")
    prime = _priming(c)
    kinds = c.pattern.kinds()
    hv = _head_vars(atom)
    Q, Cs = c.pattern, c.source_preds
    if len(hv) == 1:
        x = hv[0]
        scope, scope_preds, ren = _primed_pattern(c, {x}, prime)
        out = [PgKeyConstraint(scope, scope_preds, MANDATORY, (Var(x),), EMPTY_QUERY, (atom,), c.name)]
        return _report(
            "gfd-to-pgkeys", c, out, sorted(ren.values()), [f"single-variable head {atom}"], "mPG-Keys"
        )
    x, y = hv
    sx, sx_preds, ren_x = _primed_pattern(c, {x}, prime)
    if isinstance(atom, TermEq) and isinstance(atom.left, Prop):
        # x.a = y.b
        yb = atom.right if atom.right.name == y else atom.left
        outs = [
            PgKeyConstraint(sx, sx_preds, MANDATORY, (Var(x),), Q, Cs + (atom,), _name(c, "cover")),
            PgKeyConstraint(Q, Cs, MANDATORY, (yb,), _anchor(y, kinds), (), _name(c, "defined")),
            PgKeyConstraint(sx, sx_preds, SINGLETON, (yb,), Q, Cs, _name(c, "unique")),
        ]
        cond = f"head {atom}: cover / defined / unique"
    elif isinstance(atom, TermEq):
        # x = y
        outs = [
            PgKeyConstraint(sx, sx_preds, MANDATORY, (Var(x),), Q, Cs + (atom,), _name(c, "cover")),
            PgKeyConstraint(sx, sx_preds, SINGLETON, (Var(y),), Q, Cs, _name(c, "unique")),
        ]
        cond = f"head {atom}: cover / unique"
    else:
        raise UnsupportedHead(f"unsupported head atom {atom}")
    return _report("gfd-to-pgkeys", c, outs, sorted(ren_x.values()), [cond], "PG-Keys")


# ----------------------------------------------------------------------
# constant-only GFDs -> 1GGD


def gfdc_to_ggd1(c: GfdConstraint) -> TranslationReport:
    family = predicate_family(c.source_preds + c.head)
    if family not in (FAMILY_C, FAMILY_C_NEQ):
        raise UnsupportedPredicates(f"expected constant-only predicates, got family {family}")
    kinds = c.pattern.kinds()
    outs = []
    for i, atom in enumerate(c.head):
        vs = _head_vars(atom)
        target = _anchor(vs[0], kinds) if vs else EMPTY_QUERY
        name = c.name if len(c.head) == 1 else _name(c, str(i + 1))
        outs.append(GgdConstraint(c.pattern, c.source_preds, target, (atom,), name))
    return _report("gfdc-to-ggd1", c, outs, conditions=[f"family {family}"], target="1GGD")


# ----------------------------------------------------------------------
# with inequality: PG-Keys -> mPG-Keys, GFD -> 1GGD


def _unsat_descriptor(x, kinds):
    return _anchor(x, kinds), (Unsat(),)


def pgkey_to_mpgkeys_neq(c: PgKeyConstraint) -> TranslationReport:
    if c.keyword == MANDATORY:
        return _report("pgkey-to-mpgkeys", c, [c], conditions=["MANDATORY: identity"], target="mPG-Keys")
    prime = _priming(c)
    x = c.scope_var
    kinds = {**c.scope.kinds(), **c.descriptor.kinds()}
    desc, desc_preds = _unsat_descriptor(x, kinds)
    if c.keyword == EXCLUSIVE:
        q, preds, key_eq, ren = _doubled_exclusive(c, prime)
        scope_preds = preds + (TermNeq(Var(x), Var(ren[x])),) + key_eq
        outs = [PgKeyConstraint(q, scope_preds, MANDATORY, (Var(x),), desc, desc_preds, c.name)]
    else:
        q, preds, primed, ren = _doubled_singleton(c, prime)
        ex = _ex(c.key) + _ex(primed)
        outs = []
        for i, (t, p) in enumerate(zip(c.key, primed)):
            name = c.name if len(c.key) == 1 else _name(c, str(i + 1))
            outs.append(
                PgKeyConstraint(q, preds + (TermNeq(t, p),) + ex, MANDATORY, (Var(x),), desc, desc_preds, name)
            )
    return _report(
        "pgkey-to-mpgkeys", c, outs, sorted(ren.values()), [f"keyword {c.keyword}"], "mPG-Keys[=,≠]"
    )


def gfd_to_ggd1_neq(c: GfdConstraint) -> TranslationReport:
    atom = _single_head(c, "gfd-to-ggd1")
    kinds = c.pattern.kinds()
    Q, Cs = c.pattern, c.source_preds
    hv = _head_vars(atom)
    if len(hv) <= 1:
        # x.a = c, x.a != c, ex(x.a), x.a = x.b, ...: carry the head over as is
        target = _anchor(hv[0], kinds) if hv else EMPTY_QUERY
        outs = [GgdConstraint(Q, Cs, target, (atom,), c.name)]
        return _report("gfd-to-ggd1", c, outs, conditions=[f"single-variable head {atom}"], target="1GGD")
    x, y = hv
    bottom = (_anchor(x, kinds), (Unsat(),))
    if isinstance(atom.left, Prop):
        xa, yb = (atom.left, atom.right) if atom.left.name == x else (atom.right, atom.left)
        defined = [
            GgdConstraint(Q, Cs, _anchor(x, kinds), (Exists(xa),), _name(c, "defined_1")),
            GgdConstraint(Q, Cs, _anchor(y, kinds), (Exists(yb),), _name(c, "defined_2")),
        ]
        flip = TermNeq if isinstance(atom, TermEq) else TermEq
        outs = defined + [GgdConstraint(Q, Cs + (flip(xa, yb),), *bottom, _name(c, "forbid"))]
    else:
        flip = TermNeq if isinstance(atom, TermEq) else TermEq
        outs = [GgdConstraint(Q, Cs + (flip(atom.left, atom.right),), *bottom, c.name)]
    return _report("gfd-to-ggd1", c, outs, conditions=[f"head {atom}"], target="1GGD[=,≠]")


# ----------------------------------------------------------------------
# registry


def _split_then(rule):
    def run(c):
        if not isinstance(c, GfdConstraint):
            raise TranslationError(f"expected a GFD, got {c.formalism}")
        parts = split_gfd_head(c).outputs
        reports = [rule(p) for p in parts]
        if len(reports) == 1:
            return reports[0]
        outs = [o for r in reports for o in r.outputs]
        fresh = sorted({v for r in reports for v in r.fresh})
        conds = ["head split into single atoms"] + [s for r in reports for s in r.conditions]
        return _report(reports[0].rule, c, outs, fresh, conds, reports[0].target)

    return run


def _expect(kind, fn):
    def run(c):
        if not isinstance(c, kind):
            raise TranslationError(f"rule expects a {kind.formalism}, got {c.formalism}")
        return fn(c)

    return run


RULES = {
    "split-gfd": _expect(GfdConstraint, split_gfd_head),
    "ggd1-to-mpgkey": _expect(GgdConstraint, ggd1_to_mpgkey),
    "mpgkey-to-ggd1": _expect(PgKeyConstraint, mpgkey_to_ggd1),
    "pgkey-to-ggd": _expect(PgKeyConstraint, pgkey_to_ggd),
    "gfd-to-pgkeys": _split_then(gfd_to_pgkeys_eq),
    "gfdc-to-ggd1": _expect(GfdConstraint, gfdc_to_ggd1),
    "pgkey-to-mpgkeys": _expect(PgKeyConstraint, pgkey_to_mpgkeys_neq),
    "gfd-to-ggd1": _split_then(gfd_to_ggd1_neq),
}


def apply_rule(name, c) -> TranslationReport:
    try:
        rule = RULES[name]
    except KeyError:
        raise TranslationError(f"unknown rule {name!r}; known: {', '.join(RULES)}") from None
    return rule(c)
