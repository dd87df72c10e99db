"""Co-Kleisli maps of Q agree with the direct family formulas.

A map A -> B in the co-Kleisli category of Q is a linear map Q(A) -> B;
on a finite carrier this is the same data as a finite tower of
derivatives, and composing or differentiating it through Q reproduces
the partition formulas exactly. Run with: python3 demos/kleisli.py
"""

from cdcat.algebra import basis_elem, zmod
from cdcat.cdc import PolyBackend
from cdcat.faa import (FaaMap, coalgebra, faa_D, faa_compose, fin_space,
                       kleisli_D, kleisli_compose, kleisli_from_family)
from cdcat.poly import FinFnBackend, parse_poly_map, table_from_poly
from cdcat.qmodality import q_inject

modulus = 3
rig = zmod(modulus)
backend = FinFnBackend(modulus)
poly_backend = PolyBackend(rig)
A = backend.module(1)


def tower(src):
    """Tabulate a one-variable polynomial and its derivative family."""
    pm = parse_poly_map(src, rig, 1)
    fam = coalgebra(poly_backend, pm)
    tables = [table_from_poly(fam.component(n)) for n in range(fam.support + 1)]
    return FaaMap(backend, A, A, tables)


tf = tower("[x1^2]")
tg = tower("[x1 + x1^2]")
kf = kleisli_from_family(backend, tf)
kg = kleisli_from_family(backend, tg)

# Evaluating on a point generator <x> is plain application: f(1) = 1.
space = fin_space(A)
x = basis_elem(rig, space, "e1")
print("f on the point <1>:", kf.eval_q(q_inject(x, [])))

# A degree-1 generator <x; v> picks out the derivative at x in direction v.
print("f on the tangent <1; 1>:", kf.eval_q(q_inject(x, [x])))

# Composition through Q (comultiplication, then Q(f), then g) equals the
# direct partition formula on the families.
via_q = kleisli_compose(kg, kf)
direct = faa_compose(tg, tf)
print("compose through Q == direct families:",
      list(via_q.family) == list(direct.family))

# Same for the differential, computed via storage and deriving on Q.
print("derivative through Q == direct families:",
      list(kleisli_D(kf).family) == list(faa_D(tf).family))
