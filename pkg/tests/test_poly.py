"""Polynomial maps, the map grammar, and the finite table world."""

import pytest
from hypothesis import given, settings, strategies as st

from cdcat.algebra import INT, NAT, RAT, rig_value, zmod
from cdcat.cdc import PolySampler
from cdcat.errors import (
    ArityError,
    NegationUnsupported,
    ParseError,
    SizeLimit,
    UnknownVariable,
)
from cdcat.poly import (
    FinFnBackend,
    FinModule,
    Polynomial,
    PolyMap,
    TableMap,
    is_linear_syntactic,
    parse_poly_map,
    poly_D,
    substitute,
    table_compose,
    table_from_poly,
)


def p(src, rig=INT, arity=1):
    return parse_poly_map(src, rig, arity)


# ---------------------------------------------------------------------------
# arithmetic and substitution

def test_substitution_oracle():
    # x^2 after x+1 is x^2 + 2x + 1
    assert substitute(p("[x1^2]"), p("[x1 + 1]")) == p("[x1^2 + 2*x1 + 1]")


def test_binomial_expansion_via_parser():
    assert p("[(x1 + 1)^3]") == p("[x1^3 + 3*x1^2 + 3*x1 + 1]")


def test_poly_D_oracle():
    # D(xy)(x, v) = v1*y + x*v2, direction variables are x3, x4
    assert poly_D(p("[x1*x2]", arity=2)) == p("[x2*x3 + x1*x4]", arity=4)


def test_poly_D_of_linear_map():
    assert poly_D(p("[x1 + x2]", arity=2)) == p("[x3 + x4]", arity=4)


def test_partial_multiplicity_lands_in_the_rig():
    # d/dx x^3 = 3x^2 vanishes over Z/3
    cubic = parse_poly_map("[x1^3]", zmod(3), 1)
    assert cubic.components[0].partial(0).is_zero
    assert poly_D(cubic).is_zero


def test_identity_and_projections():
    assert PolyMap.identity(INT, 2) == p("[x1; x2]", arity=2)
    assert PolyMap.proj(INT, [2, 1], 1) == p("[x3]", arity=3)
    assert PolyMap.proj(INT, [2, 1], 0) == p("[x1; x2]", arity=3)


def test_eval():
    f = p("[x1^2 + x2]", arity=2)
    vals = f.eval((rig_value(INT, 3), rig_value(INT, 4)))
    assert [v.payload for v in vals] == [13]


def test_composition_mismatch():
    with pytest.raises(ArityError):
        substitute(p("[x1]", arity=1), p("[x1; x2]", arity=2))


# ---------------------------------------------------------------------------
# parser

def test_parse_unknown_variable():
    with pytest.raises(UnknownVariable):
        p("[x3]", arity=2)


def test_parse_minus_needs_negatives():
    with pytest.raises(NegationUnsupported):
        p("[x1 - x1]", rig=NAT)
    assert p("[x1 - x1]", rig=INT).is_zero


def test_rational_literals_need_rat():
    assert p("[1/2]", rig=RAT).components[0] == Polynomial.const(RAT, 1, "1/2")
    with pytest.raises(ParseError):
        p("[1/2]", rig=INT)


def test_parse_error_reports_position():
    with pytest.raises(ParseError) as info:
        p("[x1 +]")
    assert "position" in str(info.value)


def test_parse_rejects_trailing_input():
    with pytest.raises(ParseError):
        p("[x1] junk")


def test_zmod_literals_reduce():
    assert p("[5]", rig=zmod(3)) == p("[2]", rig=zmod(3))


def test_render_without_unary_minus():
    f = p("[0 - x1 + 2]")
    text = f.to_str()
    assert "-" not in text or text.startswith("[0 - ")
    assert p(f"{text}") == f


@settings(max_examples=60)
@given(st.integers(min_value=0, max_value=10_000), st.integers(min_value=1, max_value=3))
def test_print_parse_round_trip(seed, arity):
    sampler = PolySampler(INT, seed=seed, max_arity=arity, max_degree=3)
    f = sampler.random_morphism(arity, 2)
    assert parse_poly_map(f.to_str(), INT, arity) == f


@settings(max_examples=40)
@given(st.integers(min_value=0, max_value=10_000))
def test_print_parse_round_trip_rat(seed):
    sampler = PolySampler(RAT, seed=seed, max_arity=2, max_degree=2)
    f = sampler.random_morphism(2, 1)
    assert parse_poly_map(f.to_str(), RAT, 2) == f


def test_is_linear_syntactic():
    assert is_linear_syntactic(p("[2*x1 + x2]", arity=2))
    assert not is_linear_syntactic(p("[x1^2]"))
    assert not is_linear_syntactic(p("[x1 + 1]"))


# ---------------------------------------------------------------------------
# finite tables

def test_fermat_tables_coincide():
    # x^3 = x pointwise over Z/3
    cube = table_from_poly(parse_poly_map("[x1^3]", zmod(3), 1))
    ident = table_from_poly(parse_poly_map("[x1]", zmod(3), 1))
    assert cube == ident


def test_table_functoriality():
    rig = zmod(5)
    f = parse_poly_map("[x1^2 + 1; 2*x1]", rig, 1)
    g = parse_poly_map("[x1*x2; x1 + x2]", rig, 2)
    assert table_from_poly(substitute(g, f)) == table_compose(
        table_from_poly(g), table_from_poly(f)
    )


def test_table_from_poly_size_limit():
    f = parse_poly_map("[x1]", zmod(7), 1)
    big = PolyMap(zmod(7), 8, 1, [Polynomial.var(zmod(7), 8, 0)])
    with pytest.raises(SizeLimit):
        table_from_poly(big, limit=100)
    assert table_from_poly(f).table[(3,)] == (3,)


def test_table_pairing_and_proj():
    be = FinFnBackend(3)
    A = be.module(1)
    f = TableMap.from_callable(A, A, lambda x: ((x[0] * 2) % 3,))
    g = TableMap.identity(A)
    paired = be.pairing([f, g])
    assert paired.table[(2,)] == (1, 2)
    assert be.compose(be.proj([A, A], 0), paired) == f
    assert be.compose(be.proj([A, A], 1), paired) == g


def test_fin_backend_module_structure():
    be = FinFnBackend(2)
    A = be.module(2)
    f = TableMap.from_callable(A, A, lambda x: (x[1], x[0]))
    assert be.add(f, f).is_zero
    assert be.scale(0, f).is_zero
    assert len(list(be.all_maps(be.module(1), be.module(1)))) == 4


def test_fin_module_needs_zmod():
    from cdcat.errors import SpecMismatch

    with pytest.raises(SpecMismatch):
        FinModule(INT, 2)
