"""Generic cartesian differential calculus over pluggable backends.

A backend supplies composition, finite products (flattened: objects form a
monoid under product), hom-module structure, and a differential D.  On top
of that this module derives partial and iterated derivatives, the
partition-sum decomposition of n-fold D and its inverse, linearity tests,
and an executable check of the seven differential axioms.
"""

from __future__ import annotations

import random

from .combinat import partitions
from .errors import ArityError
from .poly import PolyMap, Polynomial, is_linear_syntactic, poly_D, substitute
from .reports import Report


# ---------------------------------------------------------------------------
# the polynomial backend

class PolyBackend:
    """Objects are arities, morphisms PolyMaps, D the total derivative."""

    def __init__(self, rig):
        self.rig = rig

    def identity(self, n):
        return PolyMap.identity(self.rig, n)

    def compose(self, g, f):
        return substitute(g, f)

    def dom(self, f):
        return f.dom

    def cod(self, f):
        return f.cod

    def equal(self, f, g):
        return f == g

    def describe(self, f):
        return f.to_str()

    def product(self, objs):
        return sum(objs)

    def proj(self, objs, i):
        return PolyMap.proj(self.rig, list(objs), i)

    def pairing(self, maps):
        return PolyMap.pairing(maps)

    def zero(self, dom, cod):
        return PolyMap.zero(self.rig, dom, cod)

    def add(self, f, g):
        return f + g

    def scale(self, c, f):
        return f.scale(c)

    def D(self, f):
        return poly_D(f)

    # syntactic refinement of axiom (ii): each monomial of Df has total
    # degree exactly 1 in the direction block
    def d_second_block_linear(self, f) -> bool:
        df = poly_D(f)
        n = f.dom
        for p in df.components:
            for e in p.terms:
                if sum(e[n:]) != 1:
                    return False
        return True

    def is_linear_syntactic(self, f) -> bool:
        return is_linear_syntactic(f)


class PolySampler:
    """Seeded random polynomial maps with bounded arity and degree."""

    def __init__(self, rig, seed=0, max_arity=3, max_degree=3, max_terms=4):
        self.rig = rig
        self.rng = random.Random(seed)
        self.max_arity = max_arity
        self.max_degree = max_degree
        self.max_terms = max_terms

    def random_object(self):
        return self.rng.randint(1, self.max_arity)

    def _coeff(self):
        from fractions import Fraction

        from .algebra import rig_value

        kind = self.rig.kind
        if kind == "nat":
            return rig_value(self.rig, self.rng.randint(0, 4))
        if kind == "int":
            return rig_value(self.rig, self.rng.randint(-4, 4))
        if kind == "rat":
            return rig_value(
                self.rig, Fraction(self.rng.randint(-4, 4), self.rng.randint(1, 4))
            )
        return rig_value(self.rig, self.rng.randrange(self.rig.modulus))

    def random_scalar(self):
        return self._coeff()

    def random_poly(self, arity) -> Polynomial:
        terms = {}
        for _ in range(self.rng.randint(1, self.max_terms)):
            budget = self.rng.randint(0, self.max_degree)
            expo = [0] * arity
            for _ in range(budget):
                if arity:
                    expo[self.rng.randrange(arity)] += 1
            c = self._coeff()
            e = tuple(expo)
            terms[e] = terms[e] + c if e in terms else c
        return Polynomial(self.rig, arity, terms)

    def random_morphism(self, dom, cod) -> PolyMap:
        return PolyMap(self.rig, dom, cod, [self.random_poly(dom) for _ in range(cod)])


# ---------------------------------------------------------------------------
# derived differential calculus

def partial_derivative(backend, f, blocks, i: int):
    """D_i f: differentiate in block i (1-based) of a product domain.

    Returns a morphism on blocks + [blocks[i-1]], the new last block being
    the direction argument.
    """
    n = len(blocks)
    if not 1 <= i <= n:
        raise ArityError(f"partial index {i} outside 1..{n}")
    ext = list(blocks) + [blocks[i - 1]]
    dom_obj = backend.product(ext)
    first = [backend.proj(ext, j) for j in range(n)]
    second = [
        backend.proj(ext, n) if j == i - 1 else backend.zero(dom_obj, blocks[j])
        for j in range(n)
    ]
    return backend.compose(backend.D(f), backend.pairing(first + second))


def nth_derivative(backend, f, A, n: int):
    """f^(n) = (D_1)^n f : A x A^n -> B, always in the first block."""
    blocks = [A]
    g = f
    for _ in range(n):
        g = partial_derivative(backend, g, blocks, 1)
        blocks.append(A)
    return g


def derivative_on_subset(backend, f, A, I, n: int):
    """f^(I): A x A^n -> B, the |I|-th derivative fed slots 0 and I."""
    I = sorted(I)
    if any(not 1 <= i <= n for i in I):
        raise ArityError(f"subset {I} outside 1..{n}")
    g = nth_derivative(backend, f, A, len(I))
    blocks = [A] * (n + 1)
    sel = [backend.proj(blocks, 0)] + [backend.proj(blocks, i) for i in I]
    return backend.compose(g, backend.pairing(sel))


def iterated_D(backend, f, n: int):
    for _ in range(n):
        f = backend.D(f)
    return f


def decompose_iterated(backend, f, A, n: int):
    """The partition-sum expansion of D^n f on 2^n copies of A.

    Slots are indexed by subsets of [n] via bitmasks (bit i-1 = element i),
    matching how literal iterated D doubles the argument list.
    """
    blocks = [A] * (1 << n)
    derivs = {}

    def f_k(k):
        if k not in derivs:
            derivs[k] = nth_derivative(backend, f, A, k)
        return derivs[k]

    total = None
    for part in partitions(n):
        args = [backend.proj(blocks, 0)]
        for block in part.blocks:
            mask = 0
            for i in block:
                mask |= 1 << (i - 1)
            args.append(backend.proj(blocks, mask))
        term = backend.compose(f_k(part.block_count), backend.pairing(args))
        total = term if total is None else backend.add(total, term)
    return total


def reconstruct_from_iterated(backend, Dnf, A, n: int):
    """Recover f^(n) from D^n f: zero out every slot of subset size >= 2."""
    blocks = [A] * (n + 1)
    dom_obj = backend.product(blocks)
    args = []
    for mask in range(1 << n):
        bits = [i + 1 for i in range(n) if mask >> i & 1]
        if not bits:
            args.append(backend.proj(blocks, 0))
        elif len(bits) == 1:
            args.append(backend.proj(blocks, bits[0]))
        else:
            args.append(backend.zero(dom_obj, A))
    return backend.compose(Dnf, backend.pairing(args))


# ---------------------------------------------------------------------------
# linearity tests

def is_k_linear(backend, f, sampler, samples: int = 20):
    """Sampled additivity/homogeneity of f(-), plus the syntactic test when
    the backend offers one.  Returns (verdict, witness-or-None)."""
    A = backend.dom(f)
    for _ in range(samples):
        Z = sampler.random_object()
        g = sampler.random_morphism(Z, A)
        h = sampler.random_morphism(Z, A)
        lhs = backend.compose(f, backend.add(g, h))
        rhs = backend.add(backend.compose(f, g), backend.compose(f, h))
        if not backend.equal(lhs, rhs):
            return False, f"additivity fails at g={backend.describe(g)}, h={backend.describe(h)}"
        c = sampler.random_scalar()
        lhs = backend.compose(f, backend.scale(c, g))
        rhs = backend.scale(c, backend.compose(f, g))
        if not backend.equal(lhs, rhs):
            return False, f"homogeneity fails at c={c}, g={backend.describe(g)}"
    if hasattr(backend, "is_linear_syntactic") and not backend.is_linear_syntactic(f):
        return False, "a monomial of total degree != 1 survives sampling"
    return True, None


def is_D_linear(backend, f, sampler=None):
    """Exact comparison of Df against f pi1."""
    A = backend.dom(f)
    fpi1 = backend.compose(f, backend.proj([A, A], 1))
    df = backend.D(f)
    if backend.equal(df, fpi1):
        return True, None
    return False, f"Df={backend.describe(df)} differs from f.pi1={backend.describe(fpi1)}"


# ---------------------------------------------------------------------------
# the seven axioms

def check_axioms(backend, sampler, samples: int = 50, suite_name: str = "cdc-axioms",
                 config: dict | None = None) -> Report:
    """Executable differential axioms (i)-(vii) with counterexample capture.

    (iii), (iv), (vi), (vii) are exact identities in a sampled f; (i), (ii),
    (v) additionally sample companion maps/scalars.
    """
    report = Report(suite_name, dict(config or {}, samples=samples))

    def run(name, body):
        witness = None
        count = 0
        for _ in range(samples):
            count += 1
            witness = body()
            if witness is not None:
                break
        report.add(name, witness is None, count, witness)

    def rand_f():
        A = sampler.random_object()
        B = sampler.random_object()
        return A, B, sampler.random_morphism(A, B)

    def ax_i():
        A, B, f = rand_f()
        g = sampler.random_morphism(A, B)
        c = sampler.random_scalar()
        if not backend.equal(backend.D(backend.add(f, g)),
                             backend.add(backend.D(f), backend.D(g))):
            return f"D(f+g) != Df+Dg for f={backend.describe(f)}, g={backend.describe(g)}"
        if not backend.equal(backend.D(backend.scale(c, f)),
                             backend.scale(c, backend.D(f))):
            return f"D(c f) != c Df for c={c}, f={backend.describe(f)}"
        return None

    def ax_ii():
        A, B, f = rand_f()
        df = backend.D(f)
        blocks3 = [A, A, A]
        p0, p1, p2 = (backend.proj(blocks3, j) for j in range(3))
        lhs = backend.compose(df, backend.pairing([p0, backend.add(p1, p2)]))
        rhs = backend.add(
            backend.compose(df, backend.pairing([p0, p1])),
            backend.compose(df, backend.pairing([p0, p2])),
        )
        if not backend.equal(lhs, rhs):
            return f"Df not additive in the direction for f={backend.describe(f)}"
        c = sampler.random_scalar()
        blocks2 = [A, A]
        q0, q1 = (backend.proj(blocks2, j) for j in range(2))
        lhs = backend.compose(df, backend.pairing([q0, backend.scale(c, q1)]))
        rhs = backend.scale(c, df)
        if not backend.equal(lhs, rhs):
            return f"Df not homogeneous in the direction, c={c}, f={backend.describe(f)}"
        if hasattr(backend, "d_second_block_linear") and not backend.d_second_block_linear(f):
            return f"direction-block degree != 1 in Df for f={backend.describe(f)}"
        return None

    def ax_iii():
        A = sampler.random_object()
        B = sampler.random_object()
        AB = backend.product([A, B])
        pi1 = backend.proj([AB, AB], 1)
        for i in range(2):
            pi = backend.proj([A, B], i)
            if not backend.equal(backend.D(pi), backend.compose(pi, pi1)):
                return f"D(proj {i}) != proj.pi1 at objects ({A},{B})"
        return None

    def ax_iv():
        A = sampler.random_object()
        if not backend.equal(backend.D(backend.identity(A)),
                             backend.proj([A, A], 1)):
            return f"D(id) != pi1 at object {A}"
        return None

    def ax_v():
        A = sampler.random_object()
        B = sampler.random_object()
        C = sampler.random_object()
        f = sampler.random_morphism(A, B)
        g = sampler.random_morphism(B, C)
        lhs = backend.D(backend.compose(g, f))
        pi0 = backend.proj([A, A], 0)
        rhs = backend.compose(
            backend.D(g),
            backend.pairing([backend.compose(f, pi0), backend.D(f)]),
        )
        if not backend.equal(lhs, rhs):
            return f"chain rule fails for f={backend.describe(f)}, g={backend.describe(g)}"
        return None

    def ax_vi():
        A, B, f = rand_f()
        ddf = backend.D(backend.D(f))
        blocks3 = [A, A, A]
        dom3 = backend.product(blocks3)
        p0, p1, p2 = (backend.proj(blocks3, j) for j in range(3))
        z = backend.zero(dom3, A)
        lhs = backend.compose(ddf, backend.pairing([p0, p1, z, p2]))
        rhs = backend.compose(backend.D(f), backend.pairing([p0, p2]))
        if not backend.equal(lhs, rhs):
            return f"DDf(x,r,0,v) != Df(x,v) for f={backend.describe(f)}"
        return None

    def ax_vii():
        A, B, f = rand_f()
        ddf = backend.D(backend.D(f))
        blocks3 = [A, A, A]
        dom3 = backend.product(blocks3)
        p0, p1, p2 = (backend.proj(blocks3, j) for j in range(3))
        z = backend.zero(dom3, A)
        lhs = backend.compose(ddf, backend.pairing([p0, p1, p2, z]))
        rhs = backend.compose(ddf, backend.pairing([p0, p2, p1, z]))
        if not backend.equal(lhs, rhs):
            return f"DDf(x,r,s,0) != DDf(x,s,r,0) for f={backend.describe(f)}"
        return None

    run("axiom-i-D-linear-in-f", ax_i)
    run("axiom-ii-Df-linear-in-direction", ax_ii)
    run("axiom-iii-D-of-projections", ax_iii)
    run("axiom-iv-D-of-identity", ax_iv)
    run("axiom-v-chain-rule", ax_v)
    run("axiom-vi-first-order-slice", ax_vi)
    run("axiom-vii-mixed-symmetry", ax_vii)
    return report
