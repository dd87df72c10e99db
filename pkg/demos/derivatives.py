"""Tour of exact derivatives of polynomial maps.

Run with: python3 demos/derivatives.py
"""

from cdcat.algebra import INT, zmod
from cdcat.cdc import (PolyBackend, decompose_iterated, iterated_D,
                       nth_derivative, partial_derivative,
                       reconstruct_from_iterated)
from cdcat.poly import parse_poly_map

backend = PolyBackend(INT)

f = parse_poly_map("[x1^2 * x2 + x2^3]", INT, 2)
print("f =", f)

# The total derivative doubles the arguments: the first block is the
# original point, the second block holds the directions.
Df = backend.D(f)
print("D(f) =", Df)

# Partial derivative in one variable, with a single direction slot.
for i in (1, 2):
    print(f"partial in x{i}:", partial_derivative(backend, f, [1, 1], i))

# Higher derivatives keep all directions in separate blocks and are
# symmetric in them.
g = parse_poly_map("[x1^4]", INT, 1)
for n in range(5):
    print(f"g^({n}) =", nth_derivative(backend, g, 1, n))

# Iterating D produces a map with 2^n argument blocks; every slice of it
# is recoverable from the family of higher derivatives and vice versa.
n = 2
full = iterated_D(backend, g, n)
rebuilt = decompose_iterated(backend, g, 1, n)
print("D^2(g) =", full)
print("rebuilt from derivative slices:", rebuilt == full)
print("top slice is g^(2):",
      reconstruct_from_iterated(backend, full, 1, n)
      == nth_derivative(backend, g, 1, n))

# Everything is exact in the chosen rig: over Z/3 the cube map is
# "linear" because its derivative collapses to zero coefficients.
mod3 = PolyBackend(zmod(3))
cube = parse_poly_map("[x1^3]", zmod(3), 1)
print("over Z/3, D(x^3) =", mod3.D(cube))
