"""
Translating between formalisms
==============================

Rewrite a dependency into keys, then compare the two sides on every small
graph up to isomorphism.
"""

from pgconstraints import apply_rule, differential_check, print_constraint
from pgconstraints.corpus import get

# members of the same forum speak the same language
gfd = get("speaks")
print(print_constraint(gfd))

rep = apply_rule("gfd-to-pgkeys", gfd)
for key in rep.outputs:
    print("  ", print_constraint(key))

# bounded differential check: at most 3 vertices and 3 edges
check = differential_check(gfd, rep.outputs)
print("agree:", check.agree, "graphs:", check.graphs_checked)
print("symbols ignored as inert:", check.dropped)

# the SINGLETON key is essential: without it a counterexample shows up quickly
broken = differential_check(gfd, rep.outputs[:2])
g, left, right = broken.first_disagreement
print("without the last key:", left.status, "vs", right.status)
print(g.to_dict())

# the MANDATORY(y.speaks) key is not: the pattern is symmetric in x and y,
# so the first key already forces y.speaks to exist
print("without the second key:", differential_check(gfd, [rep.outputs[0], rep.outputs[2]]).agree)

# the same dependency as one-shared GGDs
for c in apply_rule("gfd-to-ggd1", gfd).outputs:
    print("  ", print_constraint(c))
