"""
Moore paths
===========

A Moore path is an edge path with a start index. Concatenation adds the
supports, is associative on the nose and has constant paths as units.
"""

from mcontig import MoorePath, cycle, normalize, product, reverse, tighten

C4 = cycle(4)
p = MoorePath.make(C4, [0, 1, 1, 2], start=-1)
q = MoorePath.make(C4, [2, 3], start=2)
r = MoorePath.make(C4, [3, 0, 0], start=0)

pq = product(p, q)
print("p support", p.support, "q support", q.support, "-> pq support", pq.support)
print("pq values", pq.values)

left, right = product(pq, r), product(p, product(q, r))
print("associative:", left.support == right.support and left.values == right.values)
print("unit:", product(MoorePath.constant(C4, 0), p).values == p.values)
print("reverse twice:", reverse(reverse(p)).values == p.values)
print("normalized reverse:", normalize(reverse(p)).values)
print("tightened:", tighten(p).values)
