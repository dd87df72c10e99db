"""The Faa di Bruno construction over a pluggable base category.

Morphisms A ~> B are finite-support families f^(n): A x A^n -> B of base
maps, symmetric and k-linear in the last n slots, composed by the
higher-order chain rule (a sum over unordered set partitions).  The same
families, read as linear maps QA -> B, form the co-Kleisli category of the
Q modality; the kleisli_* operations compute through the Q structure maps
so the two implementations can be compared as independent oracles.
"""

from __future__ import annotations

import itertools

from .algebra import (
    Free,
    ModuleElement,
    Product,
    QSpace,
    basis_elem,
    rig_value,
    zero_elem,
)
from .combinat import partial_isos, partitions, arrange
from .errors import (
    DegreeBoundExceeded,
    InvalidSequence,
    NoFiniteSupport,
    ObjectMismatch,
)
from .poly import FinFnBackend, FinModule, TableMap, fin_product
from .qmodality import (
    LinearMap,
    comult,
    counit as q_counit,
    deriving,
    q_gen_elem,
    q_inject,
    q_map,
    storage,
)


# ---------------------------------------------------------------------------
# the morphism type

class FaaMap:
    """Finite-support derivative family between base objects."""

    __slots__ = ("backend", "dom", "cod", "family")

    def __init__(self, backend, dom, cod, family, validate=False):
        family = list(family)
        while family and self._is_zero_mor(backend, family[-1]):
            family.pop()
        self.backend = backend
        self.dom = dom
        self.cod = cod
        self.family = tuple(family)
        if validate:
            problem = validate_family(backend, dom, cod, self.family)
            if problem is not None:
                raise InvalidSequence(problem)

    @staticmethod
    def _is_zero_mor(backend, f):
        return backend.equal(f, backend.zero(backend.dom(f), backend.cod(f)))

    @property
    def support(self) -> int:
        return len(self.family) - 1 if self.family else -1

    def component(self, n: int):
        """f^(n), materializing the zero morphism beyond the support."""
        if n < len(self.family):
            return self.family[n]
        dom_obj = self.backend.product([self.dom] * (n + 1))
        return self.backend.zero(dom_obj, self.cod)

    def __eq__(self, other):
        if not isinstance(other, FaaMap):
            return False
        if (self.dom, self.cod) != (other.dom, other.cod):
            return False
        top = max(len(self.family), len(other.family))
        return all(
            self.backend.equal(self.component(n), other.component(n))
            for n in range(top)
        )

    def __str__(self):
        body = ", ".join(self.backend.describe(f) for f in self.family)
        return f"Faa[{body}]"

    __repr__ = __str__


def validate_family(backend, A, B, family) -> str | None:
    """Symmetry and slotwise k-linearity of each component, by exact
    composition identities; returns a description of the first failure."""
    scalars = _validation_scalars(backend)
    for n, f in enumerate(family):
        if n == 0:
            continue
        blocks = [A] * (n + 1)
        projs = [backend.proj(blocks, j) for j in range(n + 1)]
        # symmetry: adjacent transpositions of the last n slots
        for j in range(1, n):
            perm = projs[:j] + [projs[j + 1], projs[j]] + projs[j + 2:]
            if not backend.equal(f, backend.compose(f, backend.pairing(perm))):
                return f"component {n} not symmetric in slots {j},{j + 1}"
        # additivity in each of the last n slots, on an extended domain
        ext = [A] * (n + 2)
        eprojs = [backend.proj(ext, j) for j in range(n + 2)]
        for j in range(1, n + 1):
            both = eprojs[:j] + [backend.add(eprojs[j], eprojs[n + 1])] + eprojs[j + 1:n + 1]
            one = eprojs[:n + 1]
            other = eprojs[:j] + [eprojs[n + 1]] + eprojs[j + 1:n + 1]
            lhs = backend.compose(f, backend.pairing(both))
            rhs = backend.add(
                backend.compose(f, backend.pairing(one)),
                backend.compose(f, backend.pairing(other)),
            )
            if not backend.equal(lhs, rhs):
                return f"component {n} not additive in slot {j}"
        # homogeneity in each slot for the sampled/complete scalar set
        for j in range(1, n + 1):
            for c in scalars:
                scaled = projs[:j] + [backend.scale(c, projs[j])] + projs[j + 1:]
                lhs = backend.compose(f, backend.pairing(scaled))
                rhs = backend.scale(c, f)
                if not backend.equal(lhs, rhs):
                    return f"component {n} not homogeneous in slot {j} at {c}"
    return None


def _validation_scalars(backend):
    rig = backend.rig
    if rig.kind == "zmod":
        return list(range(rig.modulus))
    if rig.kind == "rat":
        from fractions import Fraction

        return [rig_value(rig, 2), rig_value(rig, Fraction(1, 2))]
    return [rig_value(rig, 2)] if rig.kind == "nat" else [rig_value(rig, 2), rig_value(rig, -1)]


# ---------------------------------------------------------------------------
# categorical structure

def faa_zero(backend, A, B) -> FaaMap:
    return FaaMap(backend, A, B, [])

def faa_identity(backend, A) -> FaaMap:
    pi1 = backend.proj([A, A], 1)
    return FaaMap(backend, A, A, [backend.identity(A), pi1])


def faa_projection(backend, objs, i: int) -> FaaMap:
    """Projection out of a product object, as a Faa di Bruno map."""
    P = backend.product(objs)
    base = backend.proj(objs, i)
    comp1 = backend.compose(base, backend.proj([P, P], 1))
    return FaaMap(backend, P, objs[i], [base, comp1])


def faa_projections(backend, A, B):
    return faa_projection(backend, [A, B], 0), faa_projection(backend, [A, B], 1)


def faa_pairing(maps) -> FaaMap:
    maps = list(maps)
    backend = maps[0].backend
    A = maps[0].dom
    if any(f.dom != A for f in maps):
        raise ObjectMismatch("pairing needs a common domain")
    top = max(len(f.family) for f in maps)
    cod = backend.product([f.cod for f in maps])
    family = [
        backend.pairing([f.component(n) for f in maps]) for n in range(top)
    ]
    return FaaMap(backend, A, cod, family)


def faa_add(f: FaaMap, g: FaaMap) -> FaaMap:
    top = max(len(f.family), len(g.family))
    fam = [f.backend.add(f.component(n), g.component(n)) for n in range(top)]
    return FaaMap(f.backend, f.dom, f.cod, fam)


def faa_scale(c, f: FaaMap) -> FaaMap:
    return FaaMap(
        f.backend, f.dom, f.cod, [f.backend.scale(c, x) for x in f.family]
    )


def component_on_subset(f: FaaMap, I, n: int):
    """f^(I): A x A^n -> B = f^(|I|) fed slots 0 and I (in increasing order)."""
    backend = f.backend
    I = sorted(I)
    blocks = [f.dom] * (n + 1)
    sel = [backend.proj(blocks, 0)] + [backend.proj(blocks, i) for i in I]
    return backend.compose(f.component(len(I)), backend.pairing(sel))


def faa_compose(g: FaaMap, f: FaaMap) -> FaaMap:
    """Higher-order chain rule: the partition sum for each component."""
    if g.dom != f.cod:
        raise ObjectMismatch(f"{g.dom} vs {f.cod}")
    backend = f.backend
    nf, ng = max(f.support, 0), max(g.support, 0)
    bound = nf * ng
    family = []
    for n in range(bound + 1):
        dom_obj = backend.product([f.dom] * (n + 1))
        total = backend.zero(dom_obj, g.cod)
        for part in _composition_partitions(n):
            k = part.block_count
            if k > ng or any(len(b) > nf for b in part.blocks):
                continue  # the term vanishes by multilinearity
            args = [component_on_subset(f, (), n)]
            args += [component_on_subset(f, block, n) for block in part.blocks]
            term = backend.compose(g.component(k), backend.pairing(args))
            total = backend.add(total, term)
        family.append(total)
    return FaaMap(backend, f.dom, g.cod, family)


def _composition_partitions(n: int):
    # seam kept separate so mutation tests can drop a term
    return partitions(n)


def faa_D(f: FaaMap) -> FaaMap:
    """Differential: (Df)^(n) = f^(n+1)(x, y0) + sum_i f^(n)(x[y_i/x_i])."""
    backend = f.backend
    A = f.dom
    P = backend.product([A, A])
    family = []
    for n in range(max(f.support, 0) + 1):
        blocks = [P] * (n + 1)
        xs = [
            backend.compose(backend.proj([A, A], 0), backend.proj(blocks, i))
            for i in range(n + 1)
        ]
        ys = [
            backend.compose(backend.proj([A, A], 1), backend.proj(blocks, i))
            for i in range(n + 1)
        ]
        total = backend.compose(
            f.component(n + 1), backend.pairing(xs + [ys[0]])
        )
        for term in _substitution_terms(backend, f.component(n), xs, ys):
            total = backend.add(total, term)
        family.append(total)
    return FaaMap(backend, P, f.cod, family)


def _substitution_terms(backend, fn, xs, ys):
    # the i-sum of the differential formula; separate seam for mutation tests
    out = []
    for i in range(1, len(xs)):
        args = xs[:i] + [ys[i]] + xs[i + 1:]
        out.append(backend.compose(fn, backend.pairing(args)))
    return out


def faa_higher(f: FaaMap, m: int, n: int):
    """The (m,n) mixed derivative as a partial-isomorphism sum.

    Returns a base morphism (A x A^m) x (A x A^m)^n -> B whose grid entry
    x_ij is inner slot i of copy j.
    """
    backend = f.backend
    A = f.dom
    inner = [A] * (m + 1)
    P = backend.product(inner)
    blocks = [P] * (n + 1)

    def grid_at(i, j):
        return backend.compose(backend.proj(inner, i), backend.proj(blocks, j))

    grid = {(i, j): grid_at(i, j) for i in range(m + 1) for j in range(n + 1)}
    dom_obj = backend.product(blocks)
    total = backend.zero(dom_obj, f.cod)
    for theta in partial_isos(m, n):
        args = arrange(theta, grid)
        term = backend.compose(f.component(theta.size), backend.pairing(args))
        total = backend.add(total, term)
    return total


def faa_counit(f: FaaMap):
    """The cofreeness counit: the 0th component."""
    return f.component(0)


def coalgebra(backend, f, max_support: int = 16) -> FaaMap:
    """Lift a base CDC morphism to its family of iterated first partials."""
    from .cdc import partial_derivative

    A = backend.dom(f)
    family = [f]
    blocks = [A]
    g = f
    for _ in range(max_support):
        g = partial_derivative(backend, g, blocks, 1)
        blocks.append(A)
        if backend.equal(g, backend.zero(backend.product(blocks), backend.cod(f))):
            return FaaMap(backend, A, backend.cod(f), family)
        family.append(g)
    raise NoFiniteSupport(
        f"derivatives of {backend.describe(f)} do not vanish within {max_support} steps"
    )


# ---------------------------------------------------------------------------
# Faa(A) as a CDC backend in its own right

class FaaBackend:
    """Wrap a base so the axiom checker can run on the Faa construction."""

    def __init__(self, base):
        self.base = base
        self.rig = base.rig

    def identity(self, A):
        return faa_identity(self.base, A)

    def compose(self, g, f):
        return faa_compose(g, f)

    def dom(self, f):
        return f.dom

    def cod(self, f):
        return f.cod

    def equal(self, f, g):
        return f == g

    def describe(self, f):
        return str(f)

    def product(self, objs):
        return self.base.product(objs)

    def proj(self, objs, i):
        return faa_projection(self.base, objs, i)

    def pairing(self, maps):
        return faa_pairing(maps)

    def zero(self, dom, cod):
        return faa_zero(self.base, dom, cod)

    def add(self, f, g):
        return faa_add(f, g)

    def scale(self, c, f):
        return faa_scale(c, f)

    def D(self, f):
        return faa_D(f)


class FaaSampler:
    """Random Faa maps obtained by lifting sampled base morphisms."""

    def __init__(self, base_backend, base_sampler):
        self.base_backend = base_backend
        self.base_sampler = base_sampler

    def random_object(self):
        return self.base_sampler.random_object()

    def random_scalar(self):
        return self.base_sampler.random_scalar()

    def random_morphism(self, dom, cod) -> FaaMap:
        return coalgebra(self.base_backend, self.base_sampler.random_morphism(dom, cod))


# ---------------------------------------------------------------------------
# co-Kleisli reading over FinFn: families as linear maps QA -> B

def fin_space(mod: FinModule) -> Free:
    return Free(tuple(f"e{i + 1}" for i in range(mod.dim)))


def vec_to_elem(rig, space: Free, vec) -> ModuleElement:
    return ModuleElement(
        rig, space, {space.basis[i]: rig_value(rig, v) for i, v in enumerate(vec)}
    )


def elem_to_vec(elem: ModuleElement, space: Free):
    return tuple(
        elem.coeffs.get(b, rig_value(elem.rig, 0)).payload for b in space.basis
    )


class KleisliMap(FaaMap):
    """A family read through the generator dictionary as a map QA -> B."""

    def eval_q(self, q: ModuleElement) -> ModuleElement:
        """Evaluate the linear map QA -> B on a normal-form QElement."""
        backend = self.backend
        rig = backend.rig
        A_space = q.space.inner
        cod_space = fin_space(self.cod)
        out = zero_elem(rig, cod_space)
        for gen, c in q.coeffs.items():
            n = gen.degree
            fn = self.component(n)
            x0 = elem_to_vec(gen.point, A_space)
            tail = ()
            for key in gen.tail.keys:
                unit = tuple(1 if b == key else 0 for b in A_space.basis)
                tail += unit
            val = fn.table[x0 + tail]
            out = out + vec_to_elem(rig, cod_space, val).scale(c)
        return out

    def as_linear_map(self) -> LinearMap:
        rig = self.backend.rig
        A_space = fin_space(self.dom)
        return LinearMap(
            rig,
            QSpace(A_space),
            fin_space(self.cod),
            lambda gen: self.eval_q(q_gen_elem(rig, gen)),
        )


def kleisli_from_family(backend: FinFnBackend, f: FaaMap) -> KleisliMap:
    return KleisliMap(backend, f.dom, f.cod, f.family)


def kleisli_identity(backend: FinFnBackend, mod: FinModule) -> KleisliMap:
    return kleisli_from_family(backend, faa_identity(backend, mod))


def _family_from_values(backend, A: FinModule, cod: FinModule, value_at, top: int):
    """Build TableMap components n = 0..top from a generator-evaluator."""
    rig = backend.rig
    A_space = fin_space(A)
    cod_space = fin_space(cod)
    family = []
    for n in range(top + 1):
        dom_mod = fin_product([A] * (n + 1))
        table = {}
        for xs in itertools.product(A.elements(), repeat=n + 1):
            point = vec_to_elem(rig, A_space, xs[0])
            tails = [vec_to_elem(rig, A_space, x) for x in xs[1:]]
            q = q_inject(point, tails)
            table[sum(xs, ())] = elem_to_vec(value_at(q), cod_space)
        family.append(TableMap(dom_mod, cod, table))
    return family


def kleisli_compose(g: KleisliMap, f: KleisliMap, degree_bound: int = 8) -> KleisliMap:
    """Co-Kleisli composition computed through comult and the Q functor."""
    if g.dom != f.cod:
        raise ObjectMismatch(f"{g.dom} vs {f.cod}")
    backend = f.backend
    nf, ng = max(f.support, 0), max(g.support, 0)
    top = nf * ng
    if top > degree_bound:
        raise DegreeBoundExceeded(f"composite support {top} > bound {degree_bound}")
    f_hat = f.as_linear_map()

    def value_at(q):
        return g.eval_q(q_map(f_hat, comult(q)))

    family = _family_from_values(backend, f.dom, g.cod, value_at, top)
    return KleisliMap(backend, f.dom, g.cod, family)


def kleisli_D(f: KleisliMap, degree_bound: int = 8) -> KleisliMap:
    """Co-Kleisli differential: storage, counit on the second factor,
    deriving, then f — computed literally on generators."""
    backend = f.backend
    rig = backend.rig
    A = f.dom
    AA = fin_product([A, A])
    A_space = fin_space(A)
    AA_space = fin_space(AA)
    prod_space = Product((A_space, A_space))
    top = max(f.support, 0)
    if top + 1 > degree_bound:
        raise DegreeBoundExceeded(f"needs components up to {top + 1} > bound {degree_bound}")

    to_prod = LinearMap(
        rig, AA_space, prod_space,
        lambda key: basis_elem(
            rig, prod_space,
            (0, A_space.basis[int(key[1:]) - 1])
            if int(key[1:]) <= A.dim
            else (1, A_space.basis[int(key[1:]) - 1 - A.dim]),
        ),
    )

    def value_at(q):
        # q lives over QSpace(AA_space); transport to Q(A x A) first
        qq = q_map(to_prod, q)
        t = storage(qq)
        acc = zero_elem(rig, QSpace(A_space))
        for (g1, g2), v in t.coeffs.items():
            y = q_counit(q_gen_elem(rig, g2))
            acc = acc + deriving(q_gen_elem(rig, g1), y).scale(v)
        return f.eval_q(acc)

    family = _family_from_values(backend, AA, f.cod, value_at, top)
    return KleisliMap(backend, AA, f.cod, family)
