"""Structure maps of the free monoidal differential modality Q."""

import pytest
from hypothesis import given, settings, strategies as st

from cdcat import qmodality as qm
from cdcat.algebra import (
    INT,
    Free,
    Monomial,
    Product,
    QGenerator,
    QSpace,
    Tensor,
    basis_elem,
    rig_value,
    tensor_elem,
    zero_elem,
    zmod,
)
from cdcat.errors import SpaceMismatch

A = Free(("e1", "e2"))
B = Free(("f1", "f2"))
E1 = basis_elem(INT, A, "e1")
E2 = basis_elem(INT, A, "e2")
F1 = basis_elem(INT, B, "f1")


def gen(point, *keys):
    return QGenerator(point, Monomial.of(keys))


def one_gen(point, *keys):
    return qm.q_gen_elem(INT, gen(point, *keys))


# ---------------------------------------------------------------------------
# injection and normal form

def test_q_inject_pulls_out_tail_coefficients():
    got = qm.q_inject(E2, [E1.scale(2), E1.scale(3)])
    assert got == one_gen(E2, "e1", "e1").scale(6)


def test_q_inject_is_multilinear_in_tails():
    got = qm.q_inject(E1, [E1 + E2])
    assert got == one_gen(E1, "e1") + one_gen(E1, "e2")


def test_q_inject_is_not_linear_in_the_point():
    # the point stays opaque: <e1 + e2> is a single generator
    got = qm.q_inject(E1 + E2, [])
    assert list(got.coeffs) == [gen(E1 + E2)]


def test_q_inject_checks_spaces():
    with pytest.raises(SpaceMismatch):
        qm.q_inject(E1, [F1])


def test_q_map_acts_on_point_and_tail():
    f = qm.LinearMap(INT, A, B, lambda k: F1.scale(2))
    got = qm.q_map(f, one_gen(E1, "e2"))
    assert got == one_gen(F1.scale(2), "f1").scale(2)


def test_q_functor_preserves_identity_and_composition():
    rig = zmod(3)
    a = Free(("e1", "e2"))
    f = qm.LinearMap(rig, a, a, lambda k: basis_elem(rig, a, "e1"))
    ident = qm.identity_map(rig, a)
    for g in qm.enum_generators(rig, a, 2):
        q = qm.q_gen_elem(rig, g)
        assert qm.q_map(ident, q) == q
        assert qm.q_map(f, qm.q_map(f, q)) == qm.q_map(
            qm.LinearMap(rig, a, a, lambda k: f.apply(f.on_basis(k))), q
        )


# ---------------------------------------------------------------------------
# comonad structure

def test_counit_by_degree():
    assert qm.counit(one_gen(E1.scale(5))) == E1.scale(5)
    assert qm.counit(one_gen(E1, "e2")) == E2
    assert qm.counit(one_gen(E1, "e1", "e2")).is_zero


def test_comult_of_low_degrees():
    QQ = QSpace(QSpace(A))

    def outer(point_gen, *tail_gens):
        shell = QGenerator(
            basis_elem(INT, QSpace(A), point_gen), Monomial.of(tail_gens)
        )
        return qm.q_gen_elem(INT, shell)

    pt = gen(E1)
    assert qm.comult(one_gen(E1)) == outer(pt)
    assert qm.comult(one_gen(E1, "e2")) == outer(pt, gen(E1, "e2"))
    # degree 2: the two set partitions of {1, 2}
    got = qm.comult(one_gen(E1, "e1", "e2"))
    expected = outer(pt, gen(E1, "e1", "e2")) + outer(pt, gen(E1, "e1"), gen(E1, "e2"))
    assert got == expected
    assert got.space == QQ


def test_comonoid_counit_keeps_degree_zero():
    q = one_gen(E1).scale(3) + one_gen(E1, "e1").scale(7)
    assert qm.comonoid_counit(q).payload == 3


def test_comonoid_comult_subset_sum():
    got = qm.comonoid_comult(one_gen(E1, "e2"))
    lhs = tensor_elem(one_gen(E1), one_gen(E1, "e2"))
    rhs = tensor_elem(one_gen(E1, "e2"), one_gen(E1))
    assert got == lhs + rhs


def test_comonoid_comult_degree_two_multiplicities():
    got = qm.comonoid_comult(one_gen(E1, "e1", "e1"))
    middle = tensor_elem(one_gen(E1, "e1"), one_gen(E1, "e1"))
    assert got.coeffs[next(iter(middle.coeffs))].payload == 2


# ---------------------------------------------------------------------------
# monoidal structure

def test_monoidal_unit():
    mi = qm.monoidal_unit(INT)
    one = basis_elem(INT, qm.UNIT_SPACE, "1")
    assert mi == qm.q_inject(one, [])


def test_monoidal_mult_partial_iso_sum():
    p = one_gen(E1, "e2")
    q = qm.q_inject(F1, [basis_elem(INT, B, "f2")])
    got = qm.monoidal_mult(p, q)
    T = Tensor((A, B))
    x0y0 = tensor_elem(E1, F1)
    x1 = E2
    y1 = basis_elem(INT, B, "f2")
    matched = qm.q_inject(x0y0, [tensor_elem(x1, y1)])
    unmatched = qm.q_inject(x0y0, [tensor_elem(x1, F1), tensor_elem(E1, y1)])
    assert got == matched + unmatched
    assert got.space == QSpace(T)


def test_deriving_appends_to_the_tail():
    got = qm.deriving(one_gen(E1, "e1"), E2.scale(2) + E1)
    assert got == one_gen(E1, "e1", "e2").scale(2) + one_gen(E1, "e1", "e1")


def test_deriving_checks_spaces():
    with pytest.raises(SpaceMismatch):
        qm.deriving(one_gen(E1), F1)


def test_fusion_on_points():
    p = one_gen(E1)
    q = one_gen(F1)
    got = qm.fusion(p, q)
    point = tensor_elem(E1, basis_elem(INT, QSpace(B), gen(F1)))
    assert got == qm.q_inject(point, [])


def test_fusion_factors_through_comult_small():
    rig = zmod(3)
    a = Free(("e1",))
    b = Free(("f1",))
    for g1 in qm.enum_generators(rig, a, 2):
        for g2 in qm.enum_generators(rig, b, 2):
            p, q = qm.q_gen_elem(rig, g1), qm.q_gen_elem(rig, g2)
            assert qm.fusion(p, q) == qm.monoidal_mult(p, qm.comult(q))


# ---------------------------------------------------------------------------
# storage

def prod_gen(x, y, *tail):
    prod = Product((A, B))
    point = qm.inject_elem(x, prod, 0) + qm.inject_elem(y, prod, 1)
    return qm.q_gen_elem(INT, QGenerator(point, Monomial.of(tail)))


def test_storage_splits_a_mixed_generator():
    # <(x0, y0), (x1, 0)> -> <x0, x1> (x) <y0>
    q = prod_gen(E1, F1, (0, "e2"))
    got = qm.storage(q)
    assert got == tensor_elem(one_gen(E1, "e2"), qm.q_inject(F1, []))


def test_storage_inv_formula():
    t = tensor_elem(one_gen(E1, "e1"), qm.q_inject(F1, [basis_elem(INT, B, "f2")]))
    got = qm.storage_inv(t)
    assert got == prod_gen(E1, F1, (0, "e1"), (1, "f2"))


def test_storage_round_trips():
    rig = zmod(2)
    prod = Product((Free(("e1",)), Free(("f1",))))
    for g in qm.enum_generators(rig, prod, 2):
        q = qm.q_gen_elem(rig, g)
        assert qm.storage_inv(qm.storage(q)) == q


def test_storage_needs_a_binary_product():
    with pytest.raises(SpaceMismatch):
        qm.storage(one_gen(E1))


# ---------------------------------------------------------------------------
# bialgebra and codereliction

def test_bialg_unit_is_the_zero_point():
    u = qm.bialg_unit(INT, A)
    assert u == qm.q_inject(zero_elem(INT, A), [])


def test_bialg_mult_adds_points_and_joins_tails():
    got = qm.bialg_mult(one_gen(E1, "e1"), one_gen(E2, "e2"))
    assert got == qm.q_gen_elem(INT, gen(E1 + E2, "e1", "e2"))


def test_codereliction():
    assert qm.codereliction(E1) == qm.q_inject(zero_elem(INT, A), [E1])
    # eta is linear, unlike the point bracket
    assert qm.codereliction(E1 + E2) == qm.codereliction(E1) + qm.codereliction(E2)


def test_deriving_is_multiplication_by_a_codereliction():
    q = one_gen(E1, "e2").scale(3)
    y = E1.scale(2) + E2
    assert qm.deriving(q, y) == qm.bialg_mult(q, qm.codereliction(y))


def test_enum_generators_count():
    rig = zmod(2)
    a = Free(("e1", "e2"))
    gens = qm.enum_generators(rig, a, 2)
    # 4 points x (1 + 2 + 3) tails of degree <= 2
    assert len(gens) == 4 * 6
    assert len(set(gens)) == len(gens)
