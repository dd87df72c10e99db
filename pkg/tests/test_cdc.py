"""Derived differential calculus and the axiom checker over Poly and Mat."""

import pytest
from hypothesis import given, settings, strategies as st

from cdcat.algebra import INT, NAT, RAT, zmod
from cdcat.cdc import (
    PolyBackend,
    PolySampler,
    check_axioms,
    decompose_iterated,
    derivative_on_subset,
    is_D_linear,
    is_k_linear,
    iterated_D,
    nth_derivative,
    partial_derivative,
    reconstruct_from_iterated,
)
from cdcat.errors import ArityError
from cdcat.matcat import MatBackend, MatSampler
from cdcat.poly import parse_poly_map, substitute

BE = PolyBackend(INT)


def p(src, arity=1):
    return parse_poly_map(src, INT, arity)


# ---------------------------------------------------------------------------
# partial and nth derivatives

def test_partial_of_product():
    # D_1(x y) = v y on (x, y, v)
    f = p("[x1*x2]", arity=2)
    assert partial_derivative(BE, f, [1, 1], 1) == p("[x2*x3]", arity=3)
    assert partial_derivative(BE, f, [1, 1], 2) == p("[x1*x3]", arity=3)


def test_partial_index_out_of_range():
    with pytest.raises(ArityError):
        partial_derivative(BE, p("[x1]"), [1], 2)


def test_nth_derivatives_of_cubic():
    f = p("[x1^3]")
    assert nth_derivative(BE, f, 1, 1) == p("[3*x1^2*x2]", arity=2)
    assert nth_derivative(BE, f, 1, 2) == p("[6*x1*x2*x3]", arity=3)
    assert nth_derivative(BE, f, 1, 3) == p("[6*x2*x3*x4]", arity=4)
    assert nth_derivative(BE, f, 1, 4).is_zero


def test_derivative_on_subset():
    # f^({2}) at n = 2 feeds slots 0 and 2 into f^(1)
    f = p("[x1^3]")
    assert derivative_on_subset(BE, f, 1, [2], 2) == p("[3*x1^2*x3]", arity=3)
    assert derivative_on_subset(BE, f, 1, [], 2) == p("[x1^3]", arity=3)
    with pytest.raises(ArityError):
        derivative_on_subset(BE, f, 1, [3], 2)


def test_nth_derivative_is_symmetric_and_additive_in_directions():
    from cdcat.faa import validate_family

    f = p("[x1^3 + 2*x1^2]")
    family = [nth_derivative(BE, f, 1, n) for n in range(4)]
    assert validate_family(BE, 1, 1, family) is None


# ---------------------------------------------------------------------------
# iterated D and its partition-sum decomposition

def test_decompose_cubic_second_order():
    # D^2(x^3) on slots (x, r, s, v) is 6 x r s + 3 x^2 v
    f = p("[x1^3]")
    expected = p("[6*x1*x2*x3 + 3*x1^2*x4]", arity=4)
    assert decompose_iterated(BE, f, 1, 2) == expected
    assert iterated_D(BE, f, 2) == expected


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=0, max_value=10_000), st.integers(min_value=0, max_value=3))
def test_decompose_matches_iterated_D(seed, n):
    sampler = PolySampler(INT, seed=seed, max_arity=2, max_degree=3)
    A = sampler.random_object()
    f = sampler.random_morphism(A, sampler.random_object())
    assert decompose_iterated(BE, f, A, n) == iterated_D(BE, f, n)


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=0, max_value=10_000), st.integers(min_value=0, max_value=3))
def test_reconstruct_recovers_nth_derivative(seed, n):
    sampler = PolySampler(INT, seed=seed, max_arity=2, max_degree=3)
    A = sampler.random_object()
    f = sampler.random_morphism(A, sampler.random_object())
    got = reconstruct_from_iterated(BE, iterated_D(BE, f, n), A, n)
    assert got == nth_derivative(BE, f, A, n)


def test_chain_rule_for_partials():
    # D_i(g f) = Dg (f pi, D_i f)
    sampler = PolySampler(INT, seed=3, max_arity=2, max_degree=3)
    for _ in range(10):
        blocks = [1, 1]
        A = sum(blocks)
        B = sampler.random_object()
        f = sampler.random_morphism(A, B)
        g = sampler.random_morphism(B, 1)
        for i in (1, 2):
            lhs = partial_derivative(BE, substitute(g, f), blocks, i)
            ext = blocks + [blocks[i - 1]]
            orig = BE.pairing([BE.proj(ext, j) for j in range(len(blocks))])
            rhs = BE.compose(
                BE.D(g),
                BE.pairing([BE.compose(f, orig), partial_derivative(BE, f, blocks, i)]),
            )
            assert lhs == rhs


# ---------------------------------------------------------------------------
# linearity predicates

def test_is_k_linear():
    sampler = PolySampler(INT, seed=0)
    ok, _ = is_k_linear(BE, p("[2*x1 + 3*x2]", arity=2), sampler)
    assert ok
    bad, witness = is_k_linear(BE, p("[x1^2]"), sampler)
    assert not bad and witness is not None


def test_is_D_linear():
    ok, _ = is_D_linear(BE, p("[2*x1]"))
    assert ok
    bad, witness = is_D_linear(BE, p("[x1^2]"))
    assert not bad and witness is not None


def test_every_mat_map_is_D_linear():
    mat = MatBackend(5)
    for f in mat.all_maps(2, 1):
        ok, _ = is_D_linear(mat, f)
        assert ok


# ---------------------------------------------------------------------------
# the axiom suite

@pytest.mark.parametrize("rig", [NAT, INT, RAT, zmod(5)])
def test_poly_axioms_pass(rig):
    backend = PolyBackend(rig)
    sampler = PolySampler(rig, seed=1, max_arity=2, max_degree=2)
    report = check_axioms(backend, sampler, samples=25)
    assert report.passed, report.render()
    assert len(report.checks) == 7


def test_mat_axioms_pass():
    backend = MatBackend(4)
    sampler = MatSampler(backend, seed=2)
    report = check_axioms(backend, sampler, samples=40)
    assert report.passed, report.render()


def test_axiom_checker_catches_a_broken_differential():
    class Broken(PolyBackend):
        def D(self, f):
            df = super().D(f)
            return df + df  # doubled derivative

    backend = Broken(INT)
    sampler = PolySampler(INT, seed=0, max_arity=2, max_degree=2)
    report = check_axioms(backend, sampler, samples=20)
    assert not report.passed
    failing = [c for c in report.checks if not c.passed]
    assert failing and all(c.counterexample for c in failing)
