"""
Discrete topological complexity
===============================

tc_m(K) is computed twice: as the distance between the two projections of
K x K, and through sections of the path fibration. Both routes must agree.
"""

from mcontig import INF, boundary, build_complex, canonical, hsecat_m, simplex, tc_m
from mcontig.invariants import format_value

for K in (simplex(1), boundary(2), build_complex([[0, 1], [1, 2]], name="path")):
    for m in (0, 1, INF):
        r = tc_m(K, m)
        print(f"{K.name:6} m={format_value(m):>3}  sd route {format_value(r.value)}"
              f"  section route {format_value(r.alternate.value)}")

# homotopic sectional category of the diagonal gives the same number
C3 = boundary(2)
print("hsecat(diagonal of bD2):", format_value(hsecat_m(canonical("diagonal", C3)).value))
