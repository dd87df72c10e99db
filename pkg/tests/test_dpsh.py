"""Differential presheaves over Mat(Z/m) and the embedding machinery."""

import pytest

from cdcat import dpsh
from cdcat.errors import InvalidSequence, ObjectMismatch
from cdcat.matcat import MatMap
from cdcat.qmodality import q_gen_elem, q_inject


def small_base(modulus=2, objects=(1,)):
    return dpsh.FiniteCdcBase(modulus, list(objects))


# ---------------------------------------------------------------------------
# the presheaf flavours and their axioms

def test_representable_differential_of_identity():
    base = small_base(2, (1, 2))
    y2 = dpsh.representable(base, 2)
    be = base.backend
    assert y2.diff(2, be.identity(2)) == be.proj([2, 2], 1)


def test_representable_passes_axioms():
    base = small_base(3, (1,))
    report = dpsh.check_presheaf(dpsh.representable(base, 1))
    assert report.passed, report.render()


def test_unit_and_tensor_pass_axioms():
    base = small_base(2, (1,))
    unit = dpsh.unit_presheaf(base)
    y1 = dpsh.representable(base, 1)
    for X in (unit, dpsh.presheaf_tensor(unit, y1), dpsh.presheaf_tensor(y1, y1)):
        report = dpsh.check_presheaf(X)
        assert report.passed, report.render()


def test_q_presheaf_passes_axioms():
    base = small_base(2, (1,))
    report = dpsh.check_presheaf(dpsh.presheaf_Q(dpsh.representable(base, 1), bound=2))
    assert report.passed, report.render()
    assert report.config["degree_bound"] == 2


def test_q_presheaf_differential_of_a_point():
    # D<xi0> = <xi0 pi0; D xi0>
    base = small_base(2, (1, 2))
    y1 = dpsh.representable(base, 1)
    QX = dpsh.presheaf_Q(y1, bound=1)
    be = base.backend
    for xi in y1.spanning(1):
        q = q_inject(QX._to_elem(1, xi), [])
        pi0 = be.proj([1, 1], 0)
        expected = q_inject(
            QX._to_elem(2, y1.act(pi0, xi)), [QX._to_elem(2, y1.diff(1, xi))]
        )
        assert QX.diff(1, q) == expected


def test_sabotaged_differential_fails_chain_axiom():
    base = small_base(2, (1, 2))

    class Sabotaged(dpsh.ReprPresheaf):
        def diff(self, A, xi):
            if A == 1:
                return self.base.backend.zero(2, self.target)
            return super().diff(A, xi)

    report = dpsh.check_presheaf(Sabotaged(base, 1))
    assert not report.passed
    by_name = {c.name: c for c in report.checks}
    chain = by_name["axiom-iii-chain-compatibility"]
    assert not chain.passed
    assert chain.counterexample


# ---------------------------------------------------------------------------
# classification of derivative sequences

def test_hom_element_round_trip():
    base = small_base(3, (1, 2))
    for f in base.all_maps(2, 2):
        elem = dpsh.mat_to_elem(base, f)
        assert dpsh.elem_to_mat(base, elem, 2, 2) == f


def test_classify_round_trip_on_canonical_generators():
    base = small_base(2, (1, 2))
    y2 = dpsh.representable(base, 2)
    be = base.backend
    for f in base.all_maps(2, 2):
        sequence = [f, be.D(f)]
        cm = dpsh.classify(base, y2, 2, sequence)
        for n in range(2):
            got = cm.eval((n + 1) * 2, dpsh.canonical_generator(base, 2, n))
            assert got == sequence[n]


def test_classified_map_is_zero_beyond_support():
    base = small_base(2, (1,))
    y1 = dpsh.representable(base, 1)
    cm = dpsh.classify(base, y1, 1, [base.backend.identity(1)])
    q = dpsh.canonical_generator(base, 1, 1)
    assert cm.eval(2, q) == y1.zero(2)


def test_classify_rejects_asymmetric_sequences():
    base = small_base(2, (1,))
    y1 = dpsh.representable(base, 1)
    be = base.backend
    asym = MatMap(be.rig, 3, 1, ((0, 1, 0),))
    with pytest.raises(InvalidSequence) as info:
        dpsh.classify(base, y1, 1, [be.zero(1, 1), be.zero(2, 1), asym])
    assert "not symmetric" in str(info.value) or "not additive" in str(info.value)


def test_classified_map_is_linear_in_q():
    base = small_base(2, (1,))
    y1 = dpsh.representable(base, 1)
    be = base.backend
    f = be.identity(1)
    cm = dpsh.classify(base, y1, 1, [f, be.D(f)])
    q1 = dpsh.canonical_generator(base, 1, 1)
    assert cm.eval(2, q1 + q1) == y1.add(cm.eval(2, q1), cm.eval(2, q1))


# ---------------------------------------------------------------------------
# Faa di Bruno presheaf maps and the Yoneda embedding

def test_yoneda_preserves_identity_and_composition():
    base = small_base(2, (1,))
    be = base.backend
    assert dpsh.yoneda_map(base, be.identity(1)) == dpsh.presheaf_map_identity(base, 1)
    for f in base.all_maps(1, 1):
        for g in base.all_maps(1, 1):
            lhs = dpsh.yoneda_map(base, be.compose(g, f))
            rhs = dpsh.presheaf_map_compose(
                dpsh.yoneda_map(base, g), dpsh.yoneda_map(base, f)
            )
            assert lhs == rhs


def test_presheaf_map_compose_checks_objects():
    base = small_base(2, (1, 2))
    be = base.backend
    f = dpsh.yoneda_map(base, be.zero(1, 2))
    with pytest.raises(ObjectMismatch):
        dpsh.presheaf_map_compose(f, f)


def test_yoneda_maps_respect_the_differential():
    base = small_base(2, (1, 2))
    for f in base.all_maps(1, 2):
        assert dpsh.respects_differential(base, dpsh.yoneda_map(base, f)) is None


def test_corrupted_family_fails_differential_respect():
    base = small_base(2, (1, 2))
    be = base.backend
    f = be.identity(1)
    alpha = dpsh.FaaPresheafMap(base, 1, 1, [f, be.proj([1, 1], 0)])
    assert dpsh.respects_differential(base, alpha) is not None


def test_full_fidelity_smallest_case():
    base = small_base(2, (1,))
    report = dpsh.full_fidelity(base, 1, 1, support_bound=2, degree_bound=1)
    assert report.passed, report.render()
    by_name = {c.name: c for c in report.checks}
    # 2 level-0 choices x 2 admissible level-1 entries x 1 level-2 entry
    assert by_name["candidate-count"].checked == 4
    assert by_name["yoneda-injective"].checked == 2


def test_full_fidelity_candidate_growth():
    base = small_base(2, (1, 2))
    report = dpsh.full_fidelity(base, 1, 2, support_bound=2, degree_bound=1)
    assert report.passed, report.render()
