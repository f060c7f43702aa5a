"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` (the lines are printed even
without ``-s``).
"""

import random
import time

import pytest

from pgconstraints import (
    PgKeyConstraint,
    apply_rule,
    differential_check,
    find_matches,
    graph_from_json,
    parse_constraint,
    parse_predicates,
    parse_query,
    print_constraint,
    spec_for,
)
from pgconstraints.corpus import corpus, get
from pgconstraints.equiv import check_induced_closure
from pgconstraints.errors import TranslationError
from pgconstraints.graph import graph_to_json
from pgconstraints.pattern import Chain, Link, Query, VertexAtom
from pgconstraints.translate import RULES
from pgconstraints.validator import validate
from pgconstraints.witnesses import (
    gfd_vs_1ggd_witness,
    gfdc_witness,
    ggd_vs_pgkeys_witness,
    induced_closure_witness,
    make_witness,
    singleton_witness,
    thm1_witness,
    WITNESSES,
)

from oracles import brute_matches, product_reachable, random_cq_text, random_gfd_text, random_graph, random_regex, relation_matrix


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {n}: {detail}")
        assert ok, detail

    return emit


def _norm(ms):
    return sorted(tuple(sorted((k, repr(v)) for k, v in dict(m).items())) for m in ms)


# 1 ---------------------------------------------------------------------

S, V = "Satisfied", "Violated"
BUNDLES = [
    (lambda: ggd_vs_pgkeys_witness(4), [(S, V)]),
    (gfd_vs_1ggd_witness, [(S, V)]),
    (singleton_witness, [(S, V)]),
    (gfdc_witness, [(S, V), (S, V)]),
    (induced_closure_witness, [(S, V)]),
    (lambda: thm1_witness(2, 8), [(V, S)]),
]


def test_criterion_1_witness_reproduction(report):
    t0 = time.perf_counter()
    bad = []
    for gen, expected in BUNDLES:
        b = gen()
        got = [(v1.status, v2.status) for _, (v1, v2), _ in b.check()]
        if got != expected or [tuple(e) for e in b.expected] != expected:
            bad.append((b.name, got))
    dt = time.perf_counter() - t0
    report(1, not bad, f"6 witness bundles reproduce their verdict pairs ({dt:.1f} s)" + (f"; mismatches {bad}" if bad else ""))


# 2 ---------------------------------------------------------------------


def test_criterion_2_translation_soundness(report):
    t0 = time.perf_counter()
    cs = corpus()
    pairs = disagreements = 0
    failed = []
    for name, c in cs:
        for rule in sorted(RULES):
            try:
                out = apply_rule(rule, c).outputs
            except TranslationError:
                continue
            pairs += 1
            rep = differential_check(c, out, spec_for([c, *out]))
            if not rep.agree:
                disagreements += 1
                failed.append((rule, name))
    dt = time.perf_counter() - t0
    ok = len(cs) >= 15 and disagreements == 0 and pairs > 0
    report(2, ok, f"{pairs} rule x corpus pairs over {len(cs)} constraints, {disagreements} disagreements ({dt:.0f} s)"
           + (f"; failing {failed}" if failed else ""))


# 3 ---------------------------------------------------------------------


def test_criterion_3_keyword_translations(report):
    checked, failed = 0, []
    for name, c in corpus():
        if not isinstance(c, PgKeyConstraint):
            continue
        for rule in ("pgkey-to-ggd", "pgkey-to-mpgkeys"):
            out = apply_rule(rule, c).outputs
            checked += 1
            if not differential_check(c, out, spec_for([c, *out])).agree:
                failed.append((rule, name))
    report(3, checked > 0 and not failed, f"{checked} keyword translations agree with direct semantics"
           + (f"; failing {failed}" if failed else ""))


# 4 ---------------------------------------------------------------------


def test_criterion_4_gfd_induced_closure(report):
    rng = random.Random(20240401)
    found = tries = counter = 0
    while found < 500 and tries < 20000:
        tries += 1
        c = parse_constraint(random_gfd_text(rng, 4))
        g = random_graph(rng, max_objects=6)
        if not validate(g, c).satisfied:
            continue
        found += 1
        if not check_induced_closure(g, c):
            counter += 1
    report(4, found == 500 and counter == 0, f"{found} satisfying (graph, GFD) pairs, {counter} closure counterexamples")


# 5 ---------------------------------------------------------------------


def _drop(outputs, i):
    return [o for j, o in enumerate(outputs) if j != i]


def test_criterion_5_drop_unique_key(report):
    c = get("speaks")
    out = apply_rule("gfd-to-pgkeys", c).outputs
    rep = differential_check(c, _drop(out, 2))
    report("5 (third key)", not rep.agree, f"dropping the SINGLETON key: disagreement after {rep.graphs_checked} graphs")


@pytest.mark.xfail(
    strict=True,
    reason="unattainable as stated: the speaks pattern is symmetric in x and y, so the cover key at x := y "
    "already forces y.speaks to be defined; the second key is implied by the other two",
)
def test_criterion_5_drop_defined_key(report):
    c = get("speaks")
    out = apply_rule("gfd-to-pgkeys", c).outputs
    rep = differential_check(c, _drop(out, 1))
    report("5 (second key)", not rep.agree,
           f"dropping the MANDATORY(y.speaks) key: {'disagreement' if not rep.agree else 'agreement'} "
           f"over {rep.graphs_checked} graphs")


# 6 ---------------------------------------------------------------------


def test_criterion_6_matcher_oracle(report):
    rng = random.Random(6)
    bad = 0
    for _ in range(200):
        g = random_graph(rng, max_objects=4)
        qt, pt = random_cq_text(rng, max_vars=4)
        q = parse_query(qt)
        ps = parse_predicates(pt) if pt else ()
        if _norm(find_matches(g, q, ps)) != _norm(brute_matches(g, q, ps)):
            bad += 1
    report(6, bad == 0, f"200 random CQ instances, {bad} mismatches against exhaustive assignment")


# 7 ---------------------------------------------------------------------


def test_criterion_7_crpq_exactness(report):
    rng = random.Random(7)
    bad = 0
    for _ in range(100):
        g = random_graph(rng, max_vertices=5, max_edges=8, elabels=("a", "b"))
        r = random_regex(rng, 4)
        q = Query((Chain(VertexAtom("x"), (Link(VertexAtom("y"), True, None, None, r),)),))
        got = {(m["x"], m["y"]) for m in find_matches(g, q)}
        product = {(u, v) for u in g.vertices for v in product_reachable(g, r, u)}
        mat, idx = relation_matrix(g, r)
        algebra = {(u, v) for u in g.vertices for v in g.vertices if mat[idx[u], idx[v]]}
        if not got == product == algebra:
            bad += 1
    report(7, bad == 0, f"100 random single-path CRPQs, {bad} mismatches against product-automaton reachability")


# 8 ---------------------------------------------------------------------


def test_criterion_8_round_trip(report):
    bad = []
    n_c = n_g = 0
    for name, c in corpus():
        text = print_constraint(c)
        n_c += 1
        if parse_constraint(text) != c or print_constraint(parse_constraint(text)) != text:
            bad.append(name)
    for name in sorted(WITNESSES):
        b = thm1_witness(2, 8) if name == "hierarchy" else make_witness(name)
        for c in b.constraints:
            text = print_constraint(c)
            if print_constraint(parse_constraint(text)) != text:
                bad.append(f"{name}:constraint")
        for g in (b.g1, b.g2):
            n_g += 1
            text = graph_to_json(g)
            back = graph_from_json(text)
            if graph_to_json(back) != text or back.to_dict() != g.to_dict():
                bad.append(f"{name}:graph")
    report(8, not bad, f"{n_c} corpus constraints and {n_g} witness graphs round-trip" + (f"; failing {bad}" if bad else ""))
