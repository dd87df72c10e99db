"""The free monoidal differential modality Q on k-modules.

QA is the direct sum, over points x0 of A, of the free symmetric algebra on
A.  Elements are kept in normal form: tails fully expanded over the basis
with coefficients pulled out, points left opaque (the generator bracket is
multilinear in the tail entries but not in the point).  Every structure map
below acts on generators and extends linearly.
"""

from __future__ import annotations

from .algebra import (
    Free,
    ModuleElement,
    Monomial,
    Product,
    QGenerator,
    QSpace,
    RigSpec,
    RigValue,
    Tensor,
    all_rig_values,
    basis_elem,
    basis_keys,
    enum_elements,
    monomial_mul,
    rig_one,
    rig_value,
    rig_zero,
    zero_elem,
)
from .combinat import arrange, partial_isos, partitions
from .errors import SpaceMismatch

# the rig k viewed as the one-dimensional free module
UNIT_SPACE = Free(("1",))


# ---------------------------------------------------------------------------
# linear maps between spaces, given on basis keys

class LinearMap:
    """A k-linear map determined by its values on basis keys."""

    def __init__(self, rig: RigSpec, domain, codomain, on_basis):
        self.rig = rig
        self.domain = domain
        self.codomain = codomain
        self._on_basis = on_basis
        self._memo = {}

    def on_basis(self, key) -> ModuleElement:
        if key not in self._memo:
            self._memo[key] = self._on_basis(key)
        return self._memo[key]

    def apply(self, elem: ModuleElement) -> ModuleElement:
        if elem.space != self.domain:
            raise SpaceMismatch(f"{elem.space} vs {self.domain}")
        out = zero_elem(self.rig, self.codomain)
        for k, v in elem.coeffs.items():
            out = out + self.on_basis(k).scale(v)
        return out


def identity_map(rig, space) -> LinearMap:
    return LinearMap(rig, space, space, lambda k: basis_elem(rig, space, k))


def zero_map(rig, domain, codomain) -> LinearMap:
    return LinearMap(rig, domain, codomain, lambda k: zero_elem(rig, codomain))


def proj_map(rig, prod: Product, slot: int) -> LinearMap:
    target = prod.factors[slot]

    def on_basis(key):
        if key[0] == slot:
            return basis_elem(rig, target, key[1])
        return zero_elem(rig, target)

    return LinearMap(rig, prod, target, on_basis)


def inject_elem(elem: ModuleElement, prod: Product, slot: int) -> ModuleElement:
    """Place an element of the slot-th factor into the product."""
    if prod.factors[slot] != elem.space:
        raise SpaceMismatch(f"{elem.space} is not factor {slot} of {prod}")
    return ModuleElement(elem.rig, prod, {(slot, k): v for k, v in elem.coeffs.items()})


def apply_tensor(f: LinearMap, g: LinearMap, t: ModuleElement) -> ModuleElement:
    """Apply f (x) g to an element of Tensor((dom f, dom g))."""
    out = zero_elem(f.rig, Tensor((f.codomain, g.codomain)))
    from .algebra import tensor_elem

    for (ka, kb), v in t.coeffs.items():
        out = out + tensor_elem(f.on_basis(ka), g.on_basis(kb)).scale(v)
    return out


# ---------------------------------------------------------------------------
# generators and injection

def q_gen_elem(rig: RigSpec, gen: QGenerator) -> ModuleElement:
    return ModuleElement(rig, QSpace(gen.point.space), {gen: rig_one(rig)})


def _make_tail(keys) -> Monomial:
    return Monomial.of(keys)


def q_inject(point: ModuleElement, tails) -> ModuleElement:
    """Normal-form generator sum <point; tails>, multilinear in the tails."""
    rig = point.rig
    tails = list(tails)
    for t in tails:
        if t.space != point.space or t.rig != rig:
            raise SpaceMismatch("tail entry not in the point's space")
    choices = {(): rig_one(rig)}
    for t in tails:
        nxt = {}
        for keys, c in choices.items():
            for k, v in t.coeffs.items():
                kk = keys + (k,)
                cv = c * v
                nxt[kk] = nxt[kk] + cv if kk in nxt else cv
        choices = nxt
    out = {}
    for keys, c in choices.items():
        gen = QGenerator(point, _make_tail(keys))
        out[gen] = out[gen] + c if gen in out else c
    return ModuleElement(rig, QSpace(point.space), out)


def _tail_elems(rig, gen: QGenerator):
    A = gen.point.space
    return [basis_elem(rig, A, k) for k in gen.tail.keys]


def q_map(f: LinearMap, q: ModuleElement) -> ModuleElement:
    """Functorial action Qf: <x0,...,xn> -> <f(x0),...,f(xn)>."""
    rig = q.rig
    out = zero_elem(rig, QSpace(f.codomain))
    for gen, c in q.coeffs.items():
        image = q_inject(f.apply(gen.point), [f.apply(t) for t in _tail_elems(rig, gen)])
        out = out + image.scale(c)
    return out


def q_functor(f: LinearMap) -> LinearMap:
    """Q applied to a linear map, itself as a linear map QA -> QB."""
    rig = f.rig
    return LinearMap(
        rig,
        QSpace(f.domain),
        QSpace(f.codomain),
        lambda gen: q_map(f, q_gen_elem(rig, gen)),
    )


# ---------------------------------------------------------------------------
# comonad structure

def counit(q: ModuleElement) -> ModuleElement:
    """epsilon: <x0> -> x0, <x0,x1> -> x1, 0 in degrees >= 2."""
    rig = q.rig
    A = q.space.inner
    out = zero_elem(rig, A)
    for gen, c in q.coeffs.items():
        if gen.degree == 0:
            out = out + gen.point.scale(c)
        elif gen.degree == 1:
            out = out + basis_elem(rig, A, gen.tail.keys[0]).scale(c)
    return out


def comult(q: ModuleElement) -> ModuleElement:
    """delta: partition sum <<x0>, <x_{A1}>, ..., <x_{Ak}>> in QQA."""
    rig = q.rig
    A = q.space.inner
    out = zero_elem(rig, QSpace(QSpace(A)))
    for gen, c in q.coeffs.items():
        point_outer = QGenerator(gen.point, _make_tail(()))
        keys = gen.tail.keys
        for part in partitions(gen.degree):
            tail_gens = [
                QGenerator(gen.point, _make_tail(tuple(keys[i - 1] for i in block)))
                for block in part.blocks
            ]
            outer = QGenerator(
                basis_elem(rig, QSpace(A), point_outer), _make_tail(tail_gens)
            )
            out = out + ModuleElement(rig, out.space, {outer: c})
    return out


# ---------------------------------------------------------------------------
# comonoid structure

def comonoid_counit(q: ModuleElement) -> RigValue:
    """e: QA -> k, keeping only degree-0 coefficients."""
    total = rig_zero(q.rig)
    for gen, c in q.coeffs.items():
        if gen.degree == 0:
            total = total + c
    return total


def comonoid_comult(q: ModuleElement) -> ModuleElement:
    """Delta: subset sum of <x_I> (x) <x_{[n] minus I}> in QA (x) QA."""
    rig = q.rig
    QA = q.space
    out = zero_elem(rig, Tensor((QA, QA)))
    for gen, c in q.coeffs.items():
        keys = gen.tail.keys
        n = gen.degree
        for mask in range(1 << n):
            left = QGenerator(gen.point, _make_tail(tuple(keys[i] for i in range(n) if mask >> i & 1)))
            right = QGenerator(gen.point, _make_tail(tuple(keys[i] for i in range(n) if not mask >> i & 1)))
            out = out + ModuleElement(rig, out.space, {(left, right): c})
    return out


# ---------------------------------------------------------------------------
# monoidal structure

def monoidal_unit(rig: RigSpec) -> ModuleElement:
    """m_I: k -> Qk, 1 -> <1>."""
    one = basis_elem(rig, UNIT_SPACE, "1")
    return q_inject(one, [])


class _TensorGrid:
    """grid[i, j] = xs[i] (x) ys[j], built lazily."""

    def __init__(self, xs, ys):
        self.xs = xs
        self.ys = ys
        self._memo = {}

    def __getitem__(self, idx):
        if idx not in self._memo:
            from .algebra import tensor_elem

            i, j = idx
            self._memo[idx] = tensor_elem(self.xs[i], self.ys[j])
        return self._memo[idx]


def monoidal_mult(p: ModuleElement, q: ModuleElement) -> ModuleElement:
    """m_tensor: partial-isomorphism sum of pairwise-tensored arranged lists."""
    rig = p.rig
    A = p.space.inner
    B = q.space.inner
    out = zero_elem(rig, QSpace(Tensor((A, B))))
    for g, cg in p.coeffs.items():
        xs = [g.point] + _tail_elems(rig, g)
        for h, ch in q.coeffs.items():
            ys = [h.point] + _tail_elems(rig, h)
            grid = _TensorGrid(xs, ys)
            c = cg * ch
            for theta in partial_isos(g.degree, h.degree):
                arranged = arrange(theta, grid)
                out = out + q_inject(arranged[0], arranged[1:]).scale(c)
    return out


# ---------------------------------------------------------------------------
# deriving transformation and fusion

def deriving(q: ModuleElement, y: ModuleElement) -> ModuleElement:
    """d: QA (x) A -> QA, appending y to the tail."""
    rig = q.rig
    if y.space != q.space.inner:
        raise SpaceMismatch(f"{y.space} vs {q.space.inner}")
    out = zero_elem(rig, q.space)
    for gen, c in q.coeffs.items():
        for k, v in y.coeffs.items():
            new = QGenerator(gen.point, monomial_mul(gen.tail, _make_tail((k,))))
            out = out + ModuleElement(rig, q.space, {new: c * v})
    return out


def fusion(p: ModuleElement, q: ModuleElement) -> ModuleElement:
    """H: QA (x) QB -> Q(A (x) QB), the partition/partial-iso double sum."""
    rig = p.rig
    A = p.space.inner
    B = q.space.inner
    QB = QSpace(B)
    out = zero_elem(rig, QSpace(Tensor((A, QB))))
    for g, cg in p.coeffs.items():
        xs = [g.point] + _tail_elems(rig, g)
        m = g.degree
        for h, ch in q.coeffs.items():
            keys = h.tail.keys
            c = cg * ch
            for part in partitions(h.degree):
                # block 0 is empty: <y_{A_0}> = <y0>
                ys = [basis_elem(rig, QB, QGenerator(h.point, _make_tail(())))]
                ys += [
                    basis_elem(
                        rig,
                        QB,
                        QGenerator(
                            h.point, _make_tail(tuple(keys[i - 1] for i in block))
                        ),
                    )
                    for block in part.blocks
                ]
                grid = _TensorGrid(xs, ys)
                for theta in partial_isos(m, part.block_count):
                    arranged = arrange(theta, grid)
                    out = out + q_inject(arranged[0], arranged[1:]).scale(c)
    return out


# ---------------------------------------------------------------------------
# storage isomorphism

def storage(q: ModuleElement) -> ModuleElement:
    """chi: Q(A x B) -> QA (x) QB, computed as (Q pi0 (x) Q pi1) after Delta."""
    rig = q.rig
    prod = q.space.inner
    if not isinstance(prod, Product) or len(prod.factors) != 2:
        raise SpaceMismatch("storage expects Q of a binary product")
    t = comonoid_comult(q)
    return apply_tensor(
        q_functor(proj_map(rig, prod, 0)), q_functor(proj_map(rig, prod, 1)), t
    )


def storage_inv(t: ModuleElement) -> ModuleElement:
    """chi^{-1}: <x0..xp> (x) <y0..yq> -> <(x0,y0),(x1,0),..,(0,yq)>."""
    rig = t.rig
    QA, QB = t.space.factors
    prod = Product((QA.inner, QB.inner))
    out = zero_elem(rig, QSpace(prod))
    for (g1, g2), v in t.coeffs.items():
        point = inject_elem(g1.point, prod, 0) + inject_elem(g2.point, prod, 1)
        tail = tuple((0, k) for k in g1.tail.keys) + tuple((1, k) for k in g2.tail.keys)
        gen = QGenerator(point, _make_tail(tail))
        out = out + ModuleElement(rig, out.space, {gen: v})
    return out


# ---------------------------------------------------------------------------
# bialgebra and codereliction

def bialg_unit(rig: RigSpec, space) -> ModuleElement:
    """u: k -> QA as the composite Q0 after m_I; evaluates to <0_A>.

    Note: one display in the source text reads the unit as 1 -> <0, 1>, but
    the defining composite (Q of the zero map after the monoidal unit) gives
    <0_A>, and only <0_A> satisfies the bialgebra unit law with the stated
    multiplication; we follow the composite.
    """
    return q_map(zero_map(rig, UNIT_SPACE, space), monoidal_unit(rig))


def bialg_mult(p: ModuleElement, q: ModuleElement) -> ModuleElement:
    """nabla: QA (x) QA -> QA, adding points and concatenating tails."""
    rig = p.rig
    if p.space != q.space:
        raise SpaceMismatch(f"{p.space} vs {q.space}")
    out = zero_elem(rig, p.space)
    for g, cg in p.coeffs.items():
        for h, ch in q.coeffs.items():
            gen = QGenerator(g.point + h.point, monomial_mul(g.tail, h.tail))
            out = out + ModuleElement(rig, p.space, {gen: cg * ch})
    return out


def codereliction(x: ModuleElement) -> ModuleElement:
    """eta: A -> QA, x -> <0, x>."""
    return q_inject(zero_elem(x.rig, x.space), [x])


# ---------------------------------------------------------------------------
# enumeration helpers for exhaustive checks (finite rigs only)

def enum_generators(rig: RigSpec, space, maxdeg: int):
    """All normal-form generators over a finite module, tail degree <= maxdeg."""
    import itertools

    keys = basis_keys(space)
    points = list(enum_elements(rig, space))
    out = []
    for point in points:
        for deg in range(maxdeg + 1):
            for combo in itertools.combinations_with_replacement(keys, deg):
                out.append(QGenerator(point, _make_tail(combo)))
    return out
