"""The free differential modality Q on a finite module.

Q(A) is spanned by generators <x0; x1,...,xn>: a point x0 of A (opaque,
not linear) and a sorted tail of basis directions (multilinear). The
comonad, comonoid, and bialgebra structure all act by simple rules on
these generators. Run with: python3 demos/modality.py
"""

from cdcat.algebra import Free, basis_elem, zmod
from cdcat.qmodality import (codereliction, comonoid_comult, comult, counit,
                             deriving, monoidal_mult, q_inject, storage,
                             storage_inv)

rig = zmod(5)
A = Free(("e1", "e2"))
e1 = basis_elem(rig, A, "e1")
e2 = basis_elem(rig, A, "e2")

q = q_inject(e1 + e2, [e1, e2])
print("a degree-2 generator:", q)

# counit: read off the point in degree 0, the direction in degree 1.
print("eps of a point:", counit(q_inject(e1, [])))
print("eps of a tangent:", counit(q_inject(e1, [e2])))
print("eps of degree 2 is zero:", counit(q).is_zero)

# The comonad comultiplication splits the tail over set partitions.
print("delta:", comult(q))

# The comonoid comultiplication splits the tail over subsets instead,
# duplicating the point.
print("Delta:", comonoid_comult(q_inject(e1, [e2])))

# Deriving appends a direction to the tail; it is literally multiplication
# by a codereliction in the bialgebra structure.
print("deriving by e2:", deriving(q_inject(e1, [e1]), e2))
print("codereliction of e2:", codereliction(e2))

# Storage moves Q across a binary product, splitting tails between the
# factors; it is invertible.
B = Free(("f1",))
from cdcat.algebra import Product

AB = Product((A, B))
point = basis_elem(rig, AB, (0, "e1"))
tangent = basis_elem(rig, AB, (1, "f1"))
mixed = q_inject(point, [tangent])
print("storage of", mixed, "=", storage(mixed))
print("round trip ok:", storage_inv(storage(mixed)) == mixed)

# Monoidal multiplication merges two generators over partial bijections
# between their tails.
p1 = q_inject(e1, [e2])
p2 = q_inject(basis_elem(rig, B, "f1"), [])
print("m(p1, p2) =", monoidal_mult(p1, p2))
