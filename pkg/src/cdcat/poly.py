"""Polynomial maps over a rig: the objects-are-arities category Poly_k.

Morphisms n -> m are m-tuples of polynomials in x1..xn, composition is
substitution, and the differential doubles the arity and dots the gradient
against fresh direction variables.  Also provides FinFn: finite modules
over Z/m with arbitrary set maps stored as full tables, the exhaustive
oracle world for the co-Kleisli checks.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .algebra import RigSpec, RigValue, rig_one, rig_value, rig_zero
from .errors import (
    ArityError,
    NegationUnsupported,
    ParseError,
    SizeLimit,
    SpecMismatch,
    UnknownVariable,
)


# ---------------------------------------------------------------------------
# polynomials

class Polynomial:
    """Sparse multivariate polynomial: exponent vectors -> RigValue."""

    __slots__ = ("rig", "arity", "terms")

    def __init__(self, rig: RigSpec, arity: int, terms: dict):
        self.rig = rig
        self.arity = arity
        self.terms = {e: c for e, c in terms.items() if not c.is_zero}

    # -- constructors

    @staticmethod
    def zero(rig, arity) -> "Polynomial":
        return Polynomial(rig, arity, {})

    @staticmethod
    def const(rig, arity, c) -> "Polynomial":
        return Polynomial(rig, arity, {(0,) * arity: rig_value(rig, c)})

    @staticmethod
    def var(rig, arity, i) -> "Polynomial":
        """The variable x_i, 0-based."""
        if not 0 <= i < arity:
            raise ArityError(f"variable index {i} out of range for arity {arity}")
        e = tuple(1 if j == i else 0 for j in range(arity))
        return Polynomial(rig, arity, {e: rig_one(rig)})

    # -- arithmetic

    def _check(self, other):
        if self.rig != other.rig:
            raise SpecMismatch(f"{self.rig} vs {other.rig}")
        if self.arity != other.arity:
            raise ArityError(f"arity {self.arity} vs {other.arity}")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return Polynomial(self.rig, self.arity, out)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                out[e] = out[e] + c if e in out else c
        return Polynomial(self.rig, self.arity, out)

    def scale(self, c) -> "Polynomial":
        c = rig_value(self.rig, c)
        return Polynomial(self.rig, self.arity, {e: c * v for e, v in self.terms.items()})

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.rig, self.arity, {e: -v for e, v in self.terms.items()})

    def __pow__(self, n: int) -> "Polynomial":
        out = Polynomial.const(self.rig, self.arity, 1)
        for _ in range(n):
            out = out * self
        return out

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def partial(self, i: int) -> "Polynomial":
        """Formal partial derivative in x_i (0-based); multiplicity cast into k."""
        out = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            mult = rig_value(self.rig, 0)
            one = rig_one(self.rig)
            for _ in range(e[i]):
                mult = mult + one
            e2 = e[:i] + (e[i] - 1,) + e[i + 1:]
            c2 = c * mult
            out[e2] = out[e2] + c2 if e2 in out else c2
        return Polynomial(self.rig, self.arity, out)

    def substitute(self, args) -> "Polynomial":
        """Plug the i-th arg polynomial in for x_i."""
        if len(args) != self.arity:
            raise ArityError(f"need {self.arity} arguments, got {len(args)}")
        inner = args[0].arity if args else 0
        powers = [{0: Polynomial.const(self.rig, inner, 1)} for _ in args]
        out = Polynomial.zero(self.rig, inner)

        def power(i, n):
            memo = powers[i]
            if n not in memo:
                memo[n] = power(i, n - 1) * args[i]
            return memo[n]

        for e, c in self.terms.items():
            term = Polynomial.const(self.rig, inner, c)
            for i, exp in enumerate(e):
                if exp:
                    term = term * power(i, exp)
            out = out + term
        return out

    def eval(self, point) -> RigValue:
        consts = [Polynomial.const(self.rig, 0, v) for v in point]
        result = self.substitute(consts)
        return result.terms.get((), rig_zero(self.rig))

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.rig == other.rig
            and self.arity == other.arity
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.rig, self.arity, tuple(sorted(self.terms.items()))))

    def to_str(self, namer=None) -> str:
        """Render in the CLI grammar; namer maps 0-based index -> variable name."""
        if namer is None:
            namer = lambda i: f"x{i + 1}"
        if not self.terms:
            return "0"
        ordered = sorted(self.terms.items(), key=lambda ec: (-sum(ec[0]), ec[0]))
        pieces = []
        for e, c in ordered:
            factors = []
            for i, exp in enumerate(e):
                if exp == 1:
                    factors.append(namer(i))
                elif exp > 1:
                    factors.append(f"{namer(i)}^{exp}")
            payload = c.payload
            neg = payload < 0
            mag = -payload if neg else payload
            if not factors or mag != 1:
                factors.insert(0, str(mag))
            pieces.append((neg, "*".join(factors)))
        # keep output inside the grammar: no unary minus, so lead with a
        # literal 0 when the first term is negative
        first_neg, first = pieces[0]
        out = ("0 - " + first) if first_neg else first
        for neg, text in pieces[1:]:
            out += (" - " if neg else " + ") + text
        return out

    def __str__(self):
        return self.to_str()

    __repr__ = __str__


# ---------------------------------------------------------------------------
# polynomial maps

class PolyMap:
    """Morphism of Poly_k: dom-arity tuple of polynomials, one per output."""

    __slots__ = ("rig", "dom", "cod", "components")

    def __init__(self, rig, dom, cod, components):
        components = tuple(components)
        if len(components) != cod:
            raise ArityError(f"expected {cod} components, got {len(components)}")
        for p in components:
            if p.arity != dom or p.rig != rig:
                raise ArityError("component arity/rig mismatch")
        self.rig = rig
        self.dom = dom
        self.cod = cod
        self.components = components

    @staticmethod
    def identity(rig, n) -> "PolyMap":
        return PolyMap(rig, n, n, [Polynomial.var(rig, n, i) for i in range(n)])

    @staticmethod
    def zero(rig, dom, cod) -> "PolyMap":
        return PolyMap(rig, dom, cod, [Polynomial.zero(rig, dom)] * cod)

    @staticmethod
    def pairing(maps) -> "PolyMap":
        maps = list(maps)
        first = maps[0]
        comps = []
        for f in maps:
            if f.dom != first.dom:
                raise ArityError("pairing needs a common domain")
            comps.extend(f.components)
        return PolyMap(first.rig, first.dom, len(comps), comps)

    @staticmethod
    def proj(rig, arities, i) -> "PolyMap":
        """Projection from the product of the given arities onto block i."""
        total = sum(arities)
        offset = sum(arities[:i])
        comps = [Polynomial.var(rig, total, offset + j) for j in range(arities[i])]
        return PolyMap(rig, total, arities[i], comps)

    def __add__(self, other: "PolyMap") -> "PolyMap":
        if (self.dom, self.cod) != (other.dom, other.cod):
            raise ArityError("sum needs equal arities")
        return PolyMap(
            self.rig, self.dom, self.cod,
            [a + b for a, b in zip(self.components, other.components)],
        )

    def scale(self, c) -> "PolyMap":
        return PolyMap(self.rig, self.dom, self.cod, [p.scale(c) for p in self.components])

    def __eq__(self, other):
        return (
            isinstance(other, PolyMap)
            and (self.rig, self.dom, self.cod) == (other.rig, other.dom, other.cod)
            and self.components == other.components
        )

    def __hash__(self):
        return hash((self.rig, self.dom, self.cod, self.components))

    def max_degree(self) -> int:
        return max((p.total_degree() for p in self.components), default=0)

    @property
    def is_zero(self) -> bool:
        return all(p.is_zero for p in self.components)

    def eval(self, point):
        return tuple(p.eval(point) for p in self.components)

    def to_str(self, namer=None) -> str:
        return "[" + "; ".join(p.to_str(namer) for p in self.components) + "]"

    def __str__(self):
        return self.to_str()

    __repr__ = __str__


def substitute(g: PolyMap, f: PolyMap) -> PolyMap:
    """Composite g after f by polynomial substitution."""
    if g.dom != f.cod or g.rig != f.rig:
        raise ArityError(f"cannot compose {g.dom}<-{f.cod}")
    comps = [p.substitute(list(f.components)) for p in g.components]
    return PolyMap(g.rig, f.dom, g.cod, comps)


def poly_D(f: PolyMap) -> PolyMap:
    """Total derivative: (Df)(x, v) = sum_j (df_i/dx_j) v_j, arity doubled."""
    n = f.dom
    rig = f.rig

    def widen(p):
        # reinterpret an arity-n polynomial in the first block of 2n vars
        return Polynomial(rig, 2 * n, {e + (0,) * n: c for e, c in p.terms.items()})

    comps = []
    for p in f.components:
        acc = Polynomial.zero(rig, 2 * n)
        for j in range(n):
            acc = acc + widen(p.partial(j)) * Polynomial.var(rig, 2 * n, n + j)
        comps.append(acc)
    return PolyMap(rig, 2 * n, f.cod, comps)


def is_linear_syntactic(f: PolyMap) -> bool:
    """Every monomial of every component has total degree exactly 1."""
    return all(
        all(sum(e) == 1 for e in p.terms) for p in f.components
    )


# ---------------------------------------------------------------------------
# parser

class _Parser:
    def __init__(self, src: str, rig: RigSpec, arity: int):
        self.src = src
        self.rig = rig
        self.arity = arity
        self.pos = 0

    def error(self, message):
        raise ParseError(message, self.pos)

    def skip_ws(self):
        while self.pos < len(self.src) and self.src[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.src[self.pos] if self.pos < len(self.src) else ""

    def expect(self, ch):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def nat(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.src) and self.src[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            self.error("expected a natural number")
        return int(self.src[start:self.pos])

    def map_(self) -> PolyMap:
        self.expect("[")
        comps = [self.poly()]
        while self.peek() == ";":
            self.pos += 1
            comps.append(self.poly())
        self.expect("]")
        self.skip_ws()
        if self.pos != len(self.src):
            self.error("trailing input after ']'")
        return PolyMap(self.rig, self.arity, len(comps), comps)

    def poly(self) -> Polynomial:
        acc = self.term()
        while self.peek() in "+-":
            op = self.peek()
            if op == "-" and not self.rig.has_negatives:
                raise NegationUnsupported("'-' is not available in the rig of naturals")
            self.pos += 1
            t = self.term()
            acc = acc + (-t if op == "-" else t)
        return acc

    def term(self) -> Polynomial:
        acc = self.factor()
        while self.peek() == "*":
            self.pos += 1
            acc = acc * self.factor()
        return acc

    def factor(self) -> Polynomial:
        base = self.atom()
        while self.peek() == "^":
            save = self.pos
            self.pos += 1
            if self.peek() == "":
                self.pos = save
                self.error("expected exponent after '^'")
            base = base ** self.nat()
        return base

    def atom(self) -> Polynomial:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            inner = self.poly()
            self.expect(")")
            return inner
        if ch == "x":
            self.pos += 1
            idx = self.nat()
            if not 1 <= idx <= self.arity:
                raise UnknownVariable(
                    f"variable x{idx} outside declared arity {self.arity}", self.pos
                )
            return Polynomial.var(self.rig, self.arity, idx - 1)
        if ch.isdigit():
            num = self.nat()
            if self.peek() == "/":
                if self.rig.kind != "rat":
                    self.error("rational literals need the rat rig")
                self.pos += 1
                den = self.nat()
                if den == 0:
                    self.error("zero denominator")
                from fractions import Fraction

                return Polynomial.const(self.rig, self.arity, Fraction(num, den))
            return Polynomial.const(self.rig, self.arity, num)
        self.error("expected a factor")


def parse_poly_map(src: str, rig: RigSpec, arity: int) -> PolyMap:
    """Parse '[poly; poly; ...]' in variables x1..x<arity>."""
    return _Parser(src, rig, arity).map_()


# ---------------------------------------------------------------------------
# finite modules with arbitrary set maps (FinFn over Z/m)

@dataclass(frozen=True)
class FinModule:
    """The module (Z/m)^dim; elements are int tuples of residues."""

    rig: RigSpec
    dim: int

    def __post_init__(self):
        if self.rig.kind != "zmod":
            raise SpecMismatch("FinModule needs a zmod rig")

    @property
    def modulus(self) -> int:
        return self.rig.modulus

    def elements(self):
        return list(itertools.product(range(self.modulus), repeat=self.dim))

    @property
    def size(self) -> int:
        return self.modulus ** self.dim

    def vadd(self, a, b):
        return tuple((x + y) % self.modulus for x, y in zip(a, b))

    def vscale(self, c, a):
        return tuple((c * x) % self.modulus for x in a)

    @property
    def zero_vec(self):
        return (0,) * self.dim


def fin_product(mods) -> FinModule:
    mods = list(mods)
    rig = mods[0].rig
    return FinModule(rig, sum(m.dim for m in mods))


class TableMap:
    """Arbitrary set map between finite modules, stored as a full table."""

    __slots__ = ("dom", "cod", "table")

    def __init__(self, dom: FinModule, cod: FinModule, table: dict):
        self.dom = dom
        self.cod = cod
        self.table = table

    @staticmethod
    def from_callable(dom, cod, fn) -> "TableMap":
        return TableMap(dom, cod, {x: fn(x) for x in dom.elements()})

    @staticmethod
    def identity(mod: FinModule) -> "TableMap":
        return TableMap.from_callable(mod, mod, lambda x: x)

    @staticmethod
    def zero(dom, cod) -> "TableMap":
        return TableMap.from_callable(dom, cod, lambda x: cod.zero_vec)

    @staticmethod
    def pairing(maps) -> "TableMap":
        maps = list(maps)
        dom = maps[0].dom
        cod = fin_product([f.cod for f in maps])
        return TableMap.from_callable(
            dom, cod, lambda x: sum((f.table[x] for f in maps), ())
        )

    @staticmethod
    def proj(mods, i) -> "TableMap":
        dom = fin_product(mods)
        lo = sum(m.dim for m in mods[:i])
        hi = lo + mods[i].dim
        return TableMap.from_callable(dom, mods[i], lambda x: x[lo:hi])

    def apply(self, x):
        return self.table[x]

    def __add__(self, other: "TableMap") -> "TableMap":
        return TableMap.from_callable(
            self.dom, self.cod, lambda x: self.cod.vadd(self.table[x], other.table[x])
        )

    def scale(self, c: int) -> "TableMap":
        return TableMap.from_callable(
            self.dom, self.cod, lambda x: self.cod.vscale(c, self.table[x])
        )

    def __eq__(self, other):
        return (
            isinstance(other, TableMap)
            and (self.dom, self.cod) == (other.dom, other.cod)
            and self.table == other.table
        )

    def __hash__(self):
        return hash((self.dom, self.cod, tuple(sorted(self.table.items()))))

    @property
    def is_zero(self) -> bool:
        return all(v == self.cod.zero_vec for v in self.table.values())

    def __repr__(self):
        return f"TableMap({self.dom.dim}->{self.cod.dim}: {self.table})"


def table_compose(g: TableMap, f: TableMap) -> TableMap:
    if g.dom != f.cod:
        raise ArityError("tables not composable")
    return TableMap(f.dom, g.cod, {x: g.table[y] for x, y in f.table.items()})


class FinFnBackend:
    """Cartesian left-k-linear base: finite Z/m modules, arbitrary maps.

    No differential of its own; it is the base the Faa di Bruno and
    co-Kleisli constructions are built over.
    """

    def __init__(self, modulus: int):
        from .algebra import zmod

        self.rig = zmod(modulus)
        self.modulus = modulus

    def module(self, dim: int) -> FinModule:
        return FinModule(self.rig, dim)

    def identity(self, mod: FinModule) -> TableMap:
        return TableMap.identity(mod)

    def compose(self, g: TableMap, f: TableMap) -> TableMap:
        return table_compose(g, f)

    def dom(self, f):
        return f.dom

    def cod(self, f):
        return f.cod

    def equal(self, f, g):
        return f == g

    def describe(self, f):
        return repr(f)

    def product(self, mods) -> FinModule:
        return fin_product(mods)

    def proj(self, mods, i) -> TableMap:
        return TableMap.proj(list(mods), i)

    def pairing(self, maps) -> TableMap:
        return TableMap.pairing(maps)

    def zero(self, dom, cod) -> TableMap:
        return TableMap.zero(dom, cod)

    def add(self, f, g):
        return f + g

    def scale(self, c, f):
        if hasattr(c, "payload"):
            c = c.payload
        return f.scale(c)

    def all_maps(self, dom: FinModule, cod: FinModule):
        """Every set map dom -> cod (use with care: |cod|^|dom| tables)."""
        xs = dom.elements()
        ys = cod.elements()
        for values in itertools.product(ys, repeat=len(xs)):
            yield TableMap(dom, cod, dict(zip(xs, values)))


def table_from_poly(f: PolyMap, limit: int = 200_000) -> TableMap:
    """Evaluate a Z/m polynomial map on every point of its domain."""
    rig = f.rig
    if rig.kind != "zmod":
        raise SpecMismatch("table_from_poly needs a zmod rig")
    dom = FinModule(rig, f.dom)
    cod = FinModule(rig, f.cod)
    if dom.size > limit:
        raise SizeLimit(f"domain has {dom.size} points, limit {limit}")
    table = {}
    for x in dom.elements():
        vals = f.eval(tuple(rig_value(rig, c) for c in x))
        table[x] = tuple(v.payload for v in vals)
    return TableMap(dom, cod, table)
