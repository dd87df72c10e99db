"""Desk-scale differential presheaves over a finite matrix base.

The base is Mat(Z/m) with the trivial differential, small enough that the
presheaf axioms, the classification of derivative sequences by Q of a
representable, and the full fidelity of the Yoneda embedding are all
decided by exhaustive enumeration.
"""

from __future__ import annotations

import itertools
import random

from .algebra import Free, ModuleElement, QGenerator, QSpace, rig_value, zero_elem
from .errors import InvalidSequence, ObjectMismatch, SizeLimit
from .matcat import MatBackend, MatMap
from .qmodality import LinearMap, q_gen_elem, q_inject, q_map
from .reports import Report


class FiniteCdcBase:
    """Mat(Z/m) restricted to a finite list of objects (dimensions)."""

    def __init__(self, modulus: int, objects=(1, 2)):
        self.backend = MatBackend(modulus)
        self.modulus = modulus
        self.objects = list(objects)

    def all_maps(self, dom, cod):
        return list(self.backend.all_maps(dom, cod))


# ---------------------------------------------------------------------------
# presheaf flavours

class ReprPresheaf:
    """The representable y(B): components hom(-, B), action by precomposition,
    differential inherited from the base."""

    def __init__(self, base: FiniteCdcBase, target: int):
        self.base = base
        self.target = target
        self.name = f"y({target})"

    def spanning(self, A):
        return self.base.all_maps(A, self.target)

    def basis(self, A):
        be = self.base.backend
        out = []
        for i in range(self.target):
            for j in range(A):
                rows = tuple(
                    tuple(1 if (r, c) == (i, j) else 0 for c in range(A))
                    for r in range(self.target)
                )
                out.append(MatMap(be.rig, A, self.target, rows))
        return out

    def coords(self, A, xi: MatMap):
        return tuple(xi.rows[i][j] for i in range(self.target) for j in range(A))

    def from_coords(self, A, vec):
        rows = tuple(tuple(vec[i * A + j] for j in range(A)) for i in range(self.target))
        return MatMap(self.base.backend.rig, A, self.target, rows)

    def zero(self, A):
        return self.base.backend.zero(A, self.target)

    def add(self, x, y):
        return self.base.backend.add(x, y)

    def scale(self, c, x):
        return self.base.backend.scale(c, x)

    def eq(self, x, y):
        return x == y

    def act(self, f: MatMap, xi: MatMap) -> MatMap:
        return self.base.backend.compose(xi, f)

    def diff(self, A, xi: MatMap) -> MatMap:
        return self.base.backend.D(xi)


class UnitPresheaf:
    """Constant at k with the everywhere-zero differential."""

    def __init__(self, base: FiniteCdcBase):
        self.base = base
        self.name = "unit"

    def spanning(self, A):
        return list(range(self.base.modulus))

    def basis(self, A):
        return [1]

    def coords(self, A, xi):
        return (xi,)

    def zero(self, A):
        return 0

    def add(self, x, y):
        return (x + y) % self.base.modulus

    def scale(self, c, x):
        return (c * x) % self.base.modulus

    def eq(self, x, y):
        return x == y

    def act(self, f, xi):
        return xi

    def diff(self, A, xi):
        return 0


class TensorPresheaf:
    """Pointwise tensor with the product-rule differential."""

    def __init__(self, X, Y):
        self.base = X.base
        self.X = X
        self.Y = Y
        self.name = f"{X.name}(x){Y.name}"
        self._bases = {}
        self._act_cache = {}

    def _factor_bases(self, A):
        if A not in self._bases:
            self._bases[A] = (self.X.basis(A), self.Y.basis(A))
        return self._bases[A]

    def _acted(self, f: MatMap, i, j):
        key = (f.dom, f.cod, f.rows, i, j)
        if key not in self._act_cache:
            bx, by = self._factor_bases(f.cod)
            self._act_cache[key] = (
                self.X.coords(f.dom, self.X.act(f, bx[i])),
                self.Y.coords(f.dom, self.Y.act(f, by[j])),
            )
        return self._act_cache[key]

    # elements: dict (i, j) -> nonzero residue, indices into the factor bases

    def _norm(self, d):
        return {k: v for k, v in d.items() if v % self.base.modulus}

    def spanning(self, A):
        return self.basis(A)

    def basis(self, A):
        bx, by = self._factor_bases(A)
        return [{(i, j): 1} for i in range(len(bx)) for j in range(len(by))]

    def coords(self, A, xi):
        bx, by = self._factor_bases(A)
        return tuple(
            xi.get((i, j), 0) for i in range(len(bx)) for j in range(len(by))
        )

    def zero(self, A):
        return {}

    def add(self, x, y):
        m = self.base.modulus
        out = dict(x)
        for k, v in y.items():
            out[k] = (out.get(k, 0) + v) % m
        return self._norm(out)

    def scale(self, c, x):
        m = self.base.modulus
        return self._norm({k: (c * v) % m for k, v in x.items()})

    def eq(self, x, y):
        return self._norm(x) == self._norm(y)

    def _outer(self, xv, yv, c, acc):
        m = self.base.modulus
        for i, a in enumerate(xv):
            if not a:
                continue
            for j, b in enumerate(yv):
                if not b:
                    continue
                k = (i, j)
                acc[k] = (acc.get(k, 0) + c * a * b) % m

    def act(self, f: MatMap, xi):
        acc = {}
        for (i, j), c in xi.items():
            xv, yv = self._acted(f, i, j)
            self._outer(xv, yv, c, acc)
        return self._norm(acc)

    def diff(self, A, xi):
        be = self.base.backend
        pi0 = be.proj([A, A], 0)
        AA = 2 * A
        bx, by = self._factor_bases(A)
        acc = {}
        for (i, j), c in xi.items():
            dx = self.X.coords(AA, self.X.diff(A, bx[i]))
            y0 = self.Y.coords(AA, self.Y.act(pi0, by[j]))
            self._outer(dx, y0, c, acc)
            x0 = self.X.coords(AA, self.X.act(pi0, bx[i]))
            dy = self.Y.coords(AA, self.Y.diff(A, by[j]))
            self._outer(x0, dy, c, acc)
        return self._norm(acc)


class QPresheaf:
    """Q applied componentwise: elements are QElements over the component
    basis; the differential shifts every entry by pi0 and appends one
    base-level derivative.  `bound` limits only the enumerated spanning
    set (and is echoed in reports), not the arithmetic."""

    def __init__(self, X, bound: int = 2):
        self.base = X.base
        self.X = X
        self.bound = bound
        self.rig = X.base.backend.rig
        self.name = f"Q{X.name}"
        self._spaces = {}
        self._bases = {}
        self._act_maps = {}
        self._diff_maps = {}
        self._act_results = {}
        self._diff_results = {}

    def _basis(self, A):
        if A not in self._bases:
            self._bases[A] = self.X.basis(A)
        return self._bases[A]

    def _space(self, A) -> Free:
        if A not in self._spaces:
            self._spaces[A] = Free(
                tuple(f"b{i + 1}" for i in range(len(self._basis(A))))
            )
        return self._spaces[A]

    def _to_elem(self, A, xi) -> ModuleElement:
        space = self._space(A)
        vec = self.X.coords(A, xi)
        return ModuleElement(
            self.rig, space,
            {space.basis[i]: rig_value(self.rig, v) for i, v in enumerate(vec)},
        )

    def _linear(self, A, Z, fn) -> LinearMap:
        """Linear map between component spaces from a basis-level action."""
        bx = self._basis(A)
        src = self._space(A)
        index = {key: i for i, key in enumerate(src.basis)}
        return LinearMap(
            self.rig, src, self._space(Z),
            lambda key: self._to_elem(Z, fn(bx[index[key]])),
        )

    def spanning(self, A):
        points = [self._to_elem(A, x) for x in _all_elements(self.X, A)]
        keys = self._space(A).basis
        out = []
        for p in points:
            for deg in range(self.bound + 1):
                for combo in itertools.combinations_with_replacement(keys, deg):
                    gen = QGenerator(p, _monomial(combo))
                    out.append(q_gen_elem(self.rig, gen))
        return out

    def zero(self, A):
        return zero_elem(self.rig, QSpace(self._space(A)))

    def add(self, x, y):
        return x + y

    def scale(self, c, x):
        return x.scale(rig_value(self.rig, c))

    def eq(self, x, y):
        return x == y

    def act(self, f: MatMap, q):
        key = (f.dom, f.cod, f.rows) if isinstance(f, MatMap) else f
        memo_key = (key, q)
        if memo_key in self._act_results:
            return self._act_results[memo_key]
        if key not in self._act_maps:
            self._act_maps[key] = self._linear(
                f.cod, f.dom, lambda b: self.X.act(f, b)
            )
        out = q_map(self._act_maps[key], q)
        self._act_results[memo_key] = out
        return out

    def diff(self, A, q):
        memo_key = (A, q)
        if memo_key in self._diff_results:
            return self._diff_results[memo_key]
        pi0 = self.base.backend.proj([A, A], 0)
        AA = 2 * A
        if A not in self._diff_maps:
            self._diff_maps[A] = (
                self._linear(A, AA, lambda b: self.X.act(pi0, b)),
                self._linear(A, AA, lambda b: self.X.diff(A, b)),
            )
        act0, dmap = self._diff_maps[A]
        rig = self.rig
        src = self._space(A)
        out = self.zero(AA)
        for gen, c in q.coeffs.items():
            entries = [gen.point] + [
                ModuleElement(rig, src, {k: rig_value(rig, 1)}) for k in gen.tail.keys
            ]
            shifted = [act0.apply(e) for e in entries]
            for i, e in enumerate(entries):
                if i == 0:
                    tails = shifted[1:] + [dmap.apply(e)]
                else:
                    tails = shifted[1:i] + [dmap.apply(e)] + shifted[i + 1:]
                out = out + q_inject(shifted[0], tails).scale(c)
        self._diff_results[memo_key] = out
        return out


def _monomial(keys):
    from .algebra import Monomial

    return Monomial.of(keys)


def _all_elements(X, A):
    """Every element of a component module, from its basis (zmod scalars)."""
    basis = X.basis(A)
    m = X.base.modulus
    out = []
    for combo in itertools.product(range(m), repeat=len(basis)):
        elem = X.zero(A)
        for c, b in zip(combo, basis):
            elem = X.add(elem, X.scale(c, b))
        out.append(elem)
    return out


def representable(base: FiniteCdcBase, target: int) -> ReprPresheaf:
    return ReprPresheaf(base, target)


def unit_presheaf(base: FiniteCdcBase) -> UnitPresheaf:
    return UnitPresheaf(base)


def presheaf_tensor(X, Y) -> TensorPresheaf:
    return TensorPresheaf(X, Y)


def presheaf_Q(X, bound: int = 2) -> QPresheaf:
    return QPresheaf(X, bound)


# ---------------------------------------------------------------------------
# the presheaf axioms

def check_presheaf(X, objects=None, map_budget: int | None = None,
                   seed: int = 0) -> Report:
    """Verify functoriality and the five differential-presheaf axioms.

    Exhaustive over the base's objects and hom-sets; `map_budget` caps the
    number of (x, r, s, v) tuples per element for the two second-order
    axioms (None = exhaustive).
    """
    base = X.base
    be = base.backend
    objects = list(objects if objects is not None else base.objects)
    rng = random.Random(seed)
    bound = getattr(X, "bound", None)
    config = {"presheaf": X.name, "objects": objects, "modulus": base.modulus}
    if bound is not None:
        config["degree_bound"] = bound
    report = Report("presheaf-axioms", config)
    scalars = list(range(base.modulus))

    def tuples_of(maps, arity):
        combos = list(itertools.product(maps, repeat=arity))
        if map_budget is not None and len(combos) > map_budget:
            combos = rng.sample(combos, map_budget)
        return combos

    # functoriality
    ok, n, witness = True, 0, None
    for A in objects:
        for xi in X.spanning(A):
            n += 1
            if not X.eq(X.act(be.identity(A), xi), xi):
                ok, witness = False, f"xi.id != xi at A={A}"
                break
        if not ok:
            break
    report.add("action-preserves-identity", ok, n, witness)

    ok, n, witness = True, 0, None
    for A, B, C in itertools.product(objects, repeat=3):
        fs = base.all_maps(B, A)
        gs = base.all_maps(C, B)
        for xi in X.spanning(A):
            for f, g in itertools.product(fs, gs):
                n += 1
                lhs = X.act(g, X.act(f, xi))
                rhs = X.act(be.compose(f, g), xi)
                if not X.eq(lhs, rhs):
                    ok, witness = False, f"(xi.f).g != xi.(fg) at A={A},B={B},C={C}"
                    break
            if not ok:
                break
        if not ok:
            break
    report.add("action-preserves-composition", ok, n, witness)

    # (i) D is k-linear
    ok, n, witness = True, 0, None
    for A in objects:
        span = X.spanning(A)
        for xi in span:
            for eta in span:
                n += 1
                if not X.eq(
                    X.diff(A, X.add(xi, eta)),
                    X.add(X.diff(A, xi), X.diff(A, eta)),
                ):
                    ok, witness = False, f"D not additive at A={A}"
                    break
            for c in scalars:
                if not X.eq(X.diff(A, X.scale(c, xi)), X.scale(c, X.diff(A, xi))):
                    ok, witness = False, f"D not homogeneous at A={A}, c={c}"
                    break
            if not ok:
                break
        if not ok:
            break
    report.add("axiom-i-D-linear", ok, n, witness)

    # (ii) D xi linear in the direction argument
    ok, n, witness = True, 0, None
    for A in objects:
        for Z in objects:
            maps = base.all_maps(Z, A)
            for xi in X.spanning(A):
                dxi = X.diff(A, xi)
                for x, v, w in tuples_of(maps, 3):
                    n += 1
                    lhs = X.act(be.pairing([x, be.add(v, w)]), dxi)
                    rhs = X.add(
                        X.act(be.pairing([x, v]), dxi),
                        X.act(be.pairing([x, w]), dxi),
                    )
                    if not X.eq(lhs, rhs):
                        ok, witness = False, f"Dxi not additive in direction, A={A}, Z={Z}"
                        break
                    c = scalars[n % len(scalars)]
                    lhs = X.act(be.pairing([x, be.scale(c, v)]), dxi)
                    rhs = X.scale(c, X.act(be.pairing([x, v]), dxi))
                    if not X.eq(lhs, rhs):
                        ok, witness = False, f"Dxi not homogeneous in direction, A={A}"
                        break
                if not ok:
                    break
            if not ok:
                break
        if not ok:
            break
    report.add("axiom-ii-direction-linear", ok, n, witness)

    # (iii) D(xi . f) = D(xi) . (f pi0, Df)
    ok, n, witness = True, 0, None
    for A in objects:
        for Z in objects:
            maps = base.all_maps(Z, A)
            for xi in X.spanning(A):
                dxi = X.diff(A, xi)
                for f in maps:
                    n += 1
                    pi0 = be.proj([Z, Z], 0)
                    lhs = X.diff(Z, X.act(f, xi))
                    rhs = X.act(be.pairing([be.compose(f, pi0), be.D(f)]), dxi)
                    if not X.eq(lhs, rhs):
                        ok, witness = False, f"axiom (iii) fails at A={A}, Z={Z}"
                        break
                if not ok:
                    break
            if not ok:
                break
        if not ok:
            break
    report.add("axiom-iii-chain-compatibility", ok, n, witness)

    # (iv)/(v): second-order identities
    ok4, n4, w4 = True, 0, None
    ok5, n5, w5 = True, 0, None
    for A in objects:
        for Z in objects:
            maps = base.all_maps(Z, A)
            zero = be.zero(Z, A)
            for xi in X.spanning(A):
                dxi = X.diff(A, xi)
                ddxi = X.diff(2 * A, dxi)
                for x, r, s in tuples_of(maps, 3):
                    n4 += 1
                    lhs = X.act(be.pairing([x, r, zero, s]), ddxi)
                    rhs = X.act(be.pairing([x, s]), dxi)
                    if ok4 and not X.eq(lhs, rhs):
                        ok4, w4 = False, f"axiom (iv) fails at A={A}, Z={Z}"
                    n5 += 1
                    lhs = X.act(be.pairing([x, r, s, zero]), ddxi)
                    rhs = X.act(be.pairing([x, s, r, zero]), ddxi)
                    if ok5 and not X.eq(lhs, rhs):
                        ok5, w5 = False, f"axiom (v) fails at A={A}, Z={Z}"
                if not (ok4 or ok5):
                    break
            if not (ok4 or ok5):
                break
    report.add("axiom-iv-first-order-slice", ok4, n4, w4)
    report.add("axiom-v-mixed-symmetry", ok5, n5, w5)
    return report


# ---------------------------------------------------------------------------
# classification of derivative sequences by Q of a representable

def hom_space(base: FiniteCdcBase, Z: int, A: int) -> Free:
    return Free(tuple(f"h{i + 1}" for i in range(A * Z)))


def mat_to_elem(base, f: MatMap) -> ModuleElement:
    space = hom_space(base, f.dom, f.cod)
    rig = base.backend.rig
    flat = [f.rows[i][j] for i in range(f.cod) for j in range(f.dom)]
    return ModuleElement(
        rig, space,
        {space.basis[i]: rig_value(rig, v) for i, v in enumerate(flat)},
    )


def elem_to_mat(base, elem: ModuleElement, Z: int, A: int) -> MatMap:
    rig = base.backend.rig
    space = hom_space(base, Z, A)
    flat = [elem.coeffs.get(b, rig_value(rig, 0)).payload for b in space.basis]
    rows = tuple(tuple(flat[i * Z + j] for j in range(Z)) for i in range(A))
    return MatMap(rig, Z, A, rows)


class ClassifiedMap:
    """The linear presheaf map Q(yA) -> X induced by a derivative sequence:
    a generator of maps evaluates by acting the matching sequence entry."""

    def __init__(self, base, X, A, sequence):
        self.base = base
        self.X = X
        self.A = A
        self.sequence = list(sequence)

    def eval(self, Z: int, q: ModuleElement):
        """q is a QElement over the hom-space basis of hom(Z, A)."""
        be = self.base.backend
        out = self.X.zero(Z)
        for gen, c in q.coeffs.items():
            n = gen.degree
            if n >= len(self.sequence):
                continue  # zero beyond the sequence's support
            f0 = elem_to_mat(self.base, gen.point, Z, self.A)
            mats = [f0]
            space = hom_space(self.base, Z, self.A)
            for key in gen.tail.keys:
                unit = ModuleElement(
                    self.base.backend.rig, space,
                    {key: rig_value(self.base.backend.rig, 1)},
                )
                mats.append(elem_to_mat(self.base, unit, Z, self.A))
            val = self.X.act(be.pairing(mats), self.sequence[n])
            out = self.X.add(out, self.X.scale(c.payload, val))
        return out


def validate_sequence(base, X, A, sequence) -> str | None:
    """Symmetry and slotwise linearity of a candidate sequence, via actions."""
    be = base.backend
    for n, x in enumerate(sequence):
        if n == 0:
            continue
        blocks = [A] * (n + 1)
        projs = [be.proj(blocks, j) for j in range(n + 1)]
        for j in range(1, n):
            perm = projs[:j] + [projs[j + 1], projs[j]] + projs[j + 2:]
            if not X.eq(X.act(be.pairing(perm), x), x):
                return f"entry {n} not symmetric in slots {j},{j + 1}"
        ext = [A] * (n + 2)
        ep = [be.proj(ext, j) for j in range(n + 2)]
        for j in range(1, n + 1):
            both = ep[:j] + [be.add(ep[j], ep[n + 1])] + ep[j + 1:n + 1]
            one = ep[:n + 1]
            other = ep[:j] + [ep[n + 1]] + ep[j + 1:n + 1]
            lhs = X.act(be.pairing(both), x)
            rhs = X.add(X.act(be.pairing(one), x), X.act(be.pairing(other), x))
            if not X.eq(lhs, rhs):
                return f"entry {n} not additive in slot {j}"
        for j in range(1, n + 1):
            for c in range(base.modulus):
                scaled = projs[:j] + [be.scale(c, projs[j])] + projs[j + 1:]
                if not X.eq(X.act(be.pairing(scaled), x), X.scale(c, x)):
                    return f"entry {n} not homogeneous in slot {j} at {c}"
    return None


def classify(base, X, A: int, sequence, validate: bool = True) -> ClassifiedMap:
    """Lemma-style classification: a symmetric multilinear derivative
    sequence of X at stage A induces a linear presheaf map Q(yA) -> X."""
    if validate:
        problem = validate_sequence(base, X, A, sequence)
        if problem is not None:
            raise InvalidSequence(problem)
    return ClassifiedMap(base, X, A, sequence)


def canonical_generator(base, A: int, n: int) -> ModuleElement:
    """<pi0, ..., pin> as a QElement over hom((n+1)A, A): evaluating a
    classified map there recovers the n-th sequence entry."""
    be = base.backend
    blocks = [A] * (n + 1)
    pis = [mat_to_elem(base, be.proj(blocks, j)) for j in range(n + 1)]
    return q_inject(pis[0], pis[1:])


# ---------------------------------------------------------------------------
# Faa di Bruno presheaf maps and the Yoneda embedding

class FaaPresheafMap:
    """Map y(A) ~> y(B) presented by its derivative family at stage A;
    components at every object arise by acting with pairings."""

    def __init__(self, base, A: int, B: int, family):
        be = base.backend
        family = list(family)
        while family and family[-1].is_zero:
            family.pop()
        self.base = base
        self.A = A
        self.B = B
        self.family = tuple(family)

    def component(self, n: int) -> MatMap:
        if n < len(self.family):
            return self.family[n]
        return self.base.backend.zero((n + 1) * self.A, self.B)

    def at(self, Z: int, n: int, gs) -> MatMap:
        """alpha_Z^(n)(g0..gn) = f^(n) after the pairing of the g's."""
        be = self.base.backend
        return be.compose(self.component(n), be.pairing(list(gs)))

    def __eq__(self, other):
        return (
            isinstance(other, FaaPresheafMap)
            and (self.A, self.B) == (other.A, other.B)
            and self.family == other.family
        )

    def __hash__(self):
        return hash((self.A, self.B, self.family))

    def __str__(self):
        return "yFaa[" + ", ".join(map(str, self.family)) + "]"


def presheaf_map_compose(g: FaaPresheafMap, f: FaaPresheafMap) -> FaaPresheafMap:
    """Pointwise Faa di Bruno composition of presheaf maps."""
    from .faa import FaaMap, faa_compose

    if f.B != g.A:
        raise ObjectMismatch(f"{f.B} vs {g.A}")
    be = f.base.backend
    composite = faa_compose(
        FaaMap(be, g.A, g.B, list(g.family)),
        FaaMap(be, f.A, f.B, list(f.family)),
    )
    return FaaPresheafMap(f.base, f.A, g.B, composite.family)


def presheaf_map_identity(base: FiniteCdcBase, A: int) -> FaaPresheafMap:
    from .faa import faa_identity

    return FaaPresheafMap(base, A, A, faa_identity(base.backend, A).family)


def yoneda_map(base: FiniteCdcBase, f: MatMap) -> FaaPresheafMap:
    """y(f): the presheaf map whose family is f's derivative tower."""
    from .faa import coalgebra

    lifted = coalgebra(base.backend, f)
    return FaaPresheafMap(base, f.dom, f.cod, lifted.family)


def respects_differential(base, alpha: FaaPresheafMap, degree_bound: int = 1,
                          objects=None) -> str | None:
    """Check alpha(D q) = D(alpha(q)) on Q(yA) generators up to a degree."""
    be = base.backend
    yA = representable(base, alpha.A)
    yB = representable(base, alpha.B)
    QyA = presheaf_Q(yA, bound=degree_bound)
    cm = ClassifiedMap(base, yB, alpha.A, [alpha.component(n) for n in
                                           range(len(alpha.family) + degree_bound + 2)])
    for Z in (objects if objects is not None else base.objects):
        # identify Q(yA)(Z) elements (over the b-basis) with hom-space ones
        src = QyA._space(Z)
        hsp = hom_space(base, Z, alpha.A)
        rename = LinearMap(
            be.rig, src, hsp,
            lambda key: ModuleElement(
                be.rig, hsp, {hsp.basis[src.basis.index(key)]: rig_value(be.rig, 1)}
            ),
        )
        rename2 = LinearMap(
            be.rig, QyA._space(2 * Z), hom_space(base, 2 * Z, alpha.A),
            lambda key: ModuleElement(
                be.rig, hom_space(base, 2 * Z, alpha.A),
                {hom_space(base, 2 * Z, alpha.A).basis[
                    QyA._space(2 * Z).basis.index(key)]: rig_value(be.rig, 1)},
            ),
        )
        for q in QyA.spanning(Z):
            dq = QyA.diff(Z, q)
            lhs = cm.eval(2 * Z, q_map(rename2, dq))
            rhs = be.D(cm.eval(Z, q_map(rename, q)))
            if lhs != rhs:
                gen = next(iter(q.coeffs))
                return f"differential-respect fails at Z={Z}, generator {gen}"
    return None


def _entry_ok(base, A, f, n) -> str | None:
    """Symmetry plus k-linearity in the last n slots, as exact matrix laws."""
    be = base.backend
    blocks = [A] * (n + 1)
    projs = [be.proj(blocks, j) for j in range(n + 1)]
    for j in range(1, n):
        perm = projs[:j] + [projs[j + 1], projs[j]] + projs[j + 2:]
        if be.compose(f, be.pairing(perm)) != f:
            return "not symmetric"
    ext = [A] * (n + 2)
    ep = [be.proj(ext, j) for j in range(n + 2)]
    for j in range(1, n + 1):
        both = ep[:j] + [be.add(ep[j], ep[n + 1])] + ep[j + 1:n + 1]
        one = ep[:n + 1]
        other = ep[:j] + [ep[n + 1]] + ep[j + 1:n + 1]
        lhs = be.compose(f, be.pairing(both))
        rhs = be.add(be.compose(f, be.pairing(one)), be.compose(f, be.pairing(other)))
        if lhs != rhs:
            return "not additive"
    for j in range(1, n + 1):
        for c in range(base.modulus):
            scaled = projs[:j] + [be.scale(c, projs[j])] + projs[j + 1:]
            if be.compose(f, be.pairing(scaled)) != be.scale(c, f):
                return "not homogeneous"
    return None


def full_fidelity(base: FiniteCdcBase, A: int, B: int, support_bound: int = 2,
                  degree_bound: int = 1, size_limit: int = 1 << 22) -> Report:
    """Enumerate every Faa di Bruno presheaf map y(A) ~> y(B) and verify it
    is y(f) for exactly one base morphism f."""
    be = base.backend
    report = Report(
        "full-fidelity",
        {"A": A, "B": B, "modulus": base.modulus,
         "support_bound": support_bound, "degree_bound": degree_bound},
    )
    candidates_by_level = []
    total = 1
    for n in range(support_bound + 1):
        level = _level_candidates(base, A, B, n)
        total *= len(level)
        if total > size_limit:
            raise SizeLimit(f"{total} candidate families exceed the limit")
        candidates_by_level.append(level)

    survivors = []
    tried = 0
    for combo in itertools.product(*candidates_by_level):
        tried += 1
        alpha = FaaPresheafMap(base, A, B, list(combo))
        if respects_differential(base, alpha, degree_bound=degree_bound) is None:
            survivors.append(alpha)

    homs = base.all_maps(A, B)
    images = [yoneda_map(base, f) for f in homs]
    image_set = set(images)
    report.add("yoneda-injective", len(image_set) == len(homs), len(homs),
               None if len(image_set) == len(homs) else "two morphisms collide")
    surj = set(survivors) == image_set
    report.add(
        "survivors-equal-yoneda-image", surj, tried,
        None if surj else f"{len(survivors)} survivors vs {len(homs)} morphisms",
    )
    report.add("candidate-count", True, tried)
    return report


def _level_candidates(base, A, B, n):
    be = base.backend
    if n == 0:
        return base.all_maps(A, B)
    out = []
    for f in be.all_maps((n + 1) * A, B):
        if _entry_ok(base, A, f, n) is None:
            out.append(f)
    return out
