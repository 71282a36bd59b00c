"""
Discrete LS category
====================

scat_m(K) is the least k such that K is covered by k+1 subcomplexes on which
the inclusion is m-contiguous to a constant. m bounds the skeleton on which
the contiguity has to hold.
"""

from mcontig import INF, boundary, build_complex, cone, cycle, scat_m, simplex
from mcontig.invariants import format_value

family = [simplex(2), boundary(2), cycle(4), cone(cycle(3)), build_complex([[0, 1], [2]], name="edge+pt")]

print(f"{'complex':10} " + " ".join(f"m={format_value(m):>4}" for m in (0, 1, INF)))
for K in family:
    row = [format_value(scat_m(K, m).value) for m in (0, 1, INF)]
    print(f"{K.name:10} " + " ".join(f"{str(v):>6}" for v in row))

# a cover that realises the value for the hollow triangle
r = scat_m(boundary(2))
print("bD2 cover pieces:", len(r.witness.pieces), "predicate calls:", r.witness.predicate_calls)
