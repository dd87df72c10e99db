"""Higher-order chain rule via symmetric families of derivatives.

A smooth-style map is recorded as the tower of all its derivatives
(f, f', f'', ...); composing two towers with the partition formula gives
exactly the tower of the composite. Run with:
python3 demos/chain_rule_families.py
"""

from cdcat.algebra import INT
from cdcat.cdc import PolyBackend, nth_derivative
from cdcat.faa import coalgebra, faa_D, faa_compose, faa_higher
from cdcat.poly import parse_poly_map, poly_D, substitute

backend = PolyBackend(INT)

f = parse_poly_map("[x1^3]", INT, 1)
g = parse_poly_map("[x1^2]", INT, 1)

tf = coalgebra(backend, f)   # the tower (f, f', f'', ...)
tg = coalgebra(backend, g)
print("tower of f has support", tf.support)
for n in range(tf.support + 1):
    print(f"  f^({n}) =", tf.component(n))

# Composing the towers implements the full chain rule: component n of the
# composite sums g^(k) applied to block derivatives of f over all
# partitions of an n-element set.
composite = faa_compose(tg, tf)
oracle = coalgebra(backend, substitute(g, f))
print("(g.f)^(2) =", composite.component(2))
print("matches the tower of g(f(x)):",
      all(composite.component(n) == oracle.component(n) for n in range(7)))

# The tower of the total derivative is computable from the tower itself,
# without re-differentiating the underlying map.
print("tower of D(f) matches coalgebra of poly_D:",
      faa_D(tf) == coalgebra(backend, poly_D(f)))

# Mixed higher derivatives: first m slots frozen, then n more derivatives.
mixed = faa_higher(tf, 1, 1)
direct = nth_derivative(backend, nth_derivative(backend, f, 1, 1), 2, 1)
print("f^(1,1) =", mixed)
print("equals the iterated derivative:", mixed == direct)
