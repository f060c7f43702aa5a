"""
Separation witnesses
====================

Each witness is a constraint together with two graphs.  Its verdicts on
the pair show that no constraint of some other language can do the same
job.
"""

import time

from pgconstraints import make_witness, validate
from pgconstraints.witnesses import WITNESSES

for name in sorted(WITNESSES):
    b = make_witness(name, **({"m": 1, "k": 4} if name == "hierarchy" else {}))
    print(f"{name}: {b.provenance}")
    for c, (v1, v2), ok in b.check():
        print(f"   g1 {v1.status:9}  g2 {v2.status:9}  {'ok' if ok else 'MISMATCH'}")

# the hierarchy witness at full size: 2m = 4 cycle vertices, cliques of 8
t0 = time.perf_counter()
b = make_witness("hierarchy", m=2, k=8)
print(b.stats())
print([validate(g, b.constraint).status for g in (b.g1, b.g2)], f"{time.perf_counter() - t0:.1f} s")
