"""Matrices over Z/m with the trivial differential Df = f pi1.

A k-linear category with biproducts; every morphism is D-linear.  Serves
as the finite carrier for exhaustive presheaf and embedding checks.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .algebra import RigSpec
from .errors import ArityError, ObjectMismatch, SpecMismatch


@dataclass(frozen=True)
class MatMap:
    """cod x dom matrix of residues; objects are dimensions."""

    rig: RigSpec
    dom: int
    cod: int
    rows: tuple  # tuple of cod tuples, each of length dom

    def __post_init__(self):
        if self.rig.kind != "zmod":
            raise SpecMismatch("MatMap needs a zmod rig")
        if len(self.rows) != self.cod or any(len(r) != self.dom for r in self.rows):
            raise ArityError("matrix shape mismatch")

    def apply(self, vec):
        m = self.rig.modulus
        return tuple(sum(a * x for a, x in zip(row, vec)) % m for row in self.rows)

    @property
    def is_zero(self) -> bool:
        return all(all(a == 0 for a in row) for row in self.rows)

    def __str__(self):
        return "[" + "; ".join(",".join(map(str, r)) for r in self.rows) + "]"


class MatBackend:
    """CDC backend: objects are dimensions, morphisms MatMaps, Df = f pi1."""

    def __init__(self, modulus: int):
        from .algebra import zmod

        self.rig = zmod(modulus)
        self.modulus = modulus

    # -- category structure

    def identity(self, n: int) -> MatMap:
        return MatMap(
            self.rig, n, n,
            tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)),
        )

    def compose(self, g: MatMap, f: MatMap) -> MatMap:
        if g.dom != f.cod:
            raise ObjectMismatch(f"{g.dom} vs {f.cod}")
        m = self.modulus
        rows = tuple(
            tuple(
                sum(g.rows[i][k] * f.rows[k][j] for k in range(f.cod)) % m
                for j in range(f.dom)
            )
            for i in range(g.cod)
        )
        return MatMap(self.rig, f.dom, g.cod, rows)

    def dom(self, f: MatMap) -> int:
        return f.dom

    def cod(self, f: MatMap) -> int:
        return f.cod

    def equal(self, f: MatMap, g: MatMap) -> bool:
        return f == g

    def describe(self, f: MatMap) -> str:
        return str(f)

    # -- products

    def product(self, objs) -> int:
        return sum(objs)

    def proj(self, objs, i: int) -> MatMap:
        total = sum(objs)
        lo = sum(objs[:i])
        rows = tuple(
            tuple(1 if j == lo + r else 0 for j in range(total))
            for r in range(objs[i])
        )
        return MatMap(self.rig, total, objs[i], rows)

    def pairing(self, maps) -> MatMap:
        maps = list(maps)
        dom = maps[0].dom
        if any(f.dom != dom for f in maps):
            raise ObjectMismatch("pairing needs a common domain")
        rows = tuple(r for f in maps for r in f.rows)
        return MatMap(self.rig, dom, sum(f.cod for f in maps), rows)

    # -- hom module structure

    def zero(self, dom: int, cod: int) -> MatMap:
        return MatMap(self.rig, dom, cod, tuple((0,) * dom for _ in range(cod)))

    def add(self, f: MatMap, g: MatMap) -> MatMap:
        m = self.modulus
        rows = tuple(
            tuple((a + b) % m for a, b in zip(r1, r2))
            for r1, r2 in zip(f.rows, g.rows)
        )
        return MatMap(self.rig, f.dom, f.cod, rows)

    def scale(self, c: int, f: MatMap) -> MatMap:
        m = self.modulus
        rows = tuple(tuple((c * a) % m for a in r) for r in f.rows)
        return MatMap(self.rig, f.dom, f.cod, rows)

    # -- differential (trivial: biproduct instance)

    def D(self, f: MatMap) -> MatMap:
        rows = tuple((0,) * f.dom + r for r in f.rows)
        return MatMap(self.rig, 2 * f.dom, f.cod, rows)

    # -- finite enumeration

    def all_maps(self, dom: int, cod: int):
        entries = itertools.product(range(self.modulus), repeat=dom * cod)
        for flat in entries:
            rows = tuple(flat[i * dom:(i + 1) * dom] for i in range(cod))
            yield MatMap(self.rig, dom, cod, rows)


class MatSampler:
    """Seeded random matrices for the axiom checker."""

    def __init__(self, backend: MatBackend, seed: int = 0, max_dim: int = 3):
        import random

        self.backend = backend
        self.rng = random.Random(seed)
        self.max_dim = max_dim

    def random_object(self) -> int:
        return self.rng.randint(1, self.max_dim)

    def random_scalar(self) -> int:
        return self.rng.randrange(self.backend.modulus)

    def random_morphism(self, dom: int, cod: int) -> MatMap:
        m = self.backend.modulus
        rows = tuple(
            tuple(self.rng.randrange(m) for _ in range(dom)) for _ in range(cod)
        )
        return MatMap(self.backend.rig, dom, cod, rows)
