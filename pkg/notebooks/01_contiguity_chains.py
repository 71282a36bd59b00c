"""
Contiguity chains between simplicial maps
=========================================

Two maps are contiguous when, on every simplex, the union of their images is
again a simplex. The contiguity class of a map is what you reach by repeating
that move; this script walks through a few small cases.
"""

from mcontig import (
    SimplicialMap,
    boundary,
    build_complex,
    constant,
    cycle,
    identity,
    is_contiguous,
    same_contiguity_class,
)

# an edge J (plus a stray vertex) mapped into the hollow triangle
C3 = boundary(2)
J = build_complex([[0, 1], [2]], name="J")
incl = SimplicialMap(J, C3, (0, 1, 2), name="incl")
const = constant(J, C3, 2)

print("one move apart:", is_contiguous(incl, const))
v = same_contiguity_class(incl, const)
print("same class:", v.status.value, "steps:", v.steps)

# the identity of the square has no contiguous neighbour at all
C4 = cycle(4)
rot = SimplicialMap(C4, C4, (1, 2, 3, 0))
print("id(C4) vs rotation:", same_contiguity_class(identity(C4), rot).status.value)

# ...while the identity of the hollow triangle cannot reach a constant either
print("id(C3) vs const:", same_contiguity_class(identity(C3), constant(C3, C3, 0)).status.value)
