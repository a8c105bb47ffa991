import pytest

from monocat.algebra import build_preprojective
from monocat.ar_theory import (
    ars_dimension_check,
    check_component_translation,
    dtr,
    find_ar_conflation_ending_at,
    find_ar_sequence,
    is_almost_split_conflation,
    is_almost_split_sequence,
    is_left_almost_split_morph,
    is_right_almost_split_map,
    is_right_almost_split_morph,
    translation_agreement_across_kinds,
)
from monocat.exact_structures import (
    ALL_KINDS,
    StructureKind,
    classify_projective,
    enumerate_conflations,
    s_indecomposables,
)
from monocat.modules import (
    enumerate_indecomposables,
    identity_map,
    is_isomorphic,
    is_projective_module,
    jordan_module,
)
from monocat.morphism import identity_morph_map, is_isomorphic_morph, zero_to_object
from monocat.exact_structures import morph_direct_sum


def J(a, i):
    return jordan_module(a, i)


def test_identity_not_right_almost_split(L2):
    universe = enumerate_indecomposables(L2, 2)
    assert not is_right_almost_split_map(identity_map(J(L2, 2)), universe)


def test_module_level_ar_sequence(L2):
    universe = enumerate_indecomposables(L2, 2)
    seq = find_ar_sequence(J(L2, 1), universe)
    assert seq is not None
    assert is_isomorphic(seq.middle, J(L2, 2))
    assert is_isomorphic(seq.i.source, J(L2, 1))
    assert is_almost_split_sequence(seq.i, seq.p, universe)


def test_split_conflation_not_almost_split(L2, modL2):
    inds = s_indecomposables(modL2, 6)
    x, y = inds[0], inds[2]
    total, injs, projs = morph_direct_sum([x, y])
    from monocat.exact_structures import Conflation

    c = Conflation(injs[0], projs[1])
    assert not is_almost_split_conflation(c, inds)


def test_ar_conflations_all_kinds_L2(modL2):
    inds = s_indecomposables(modL2, 6)
    for kind in ALL_KINDS:
        for y in inds:
            if classify_projective(kind, y, modL2):
                continue
            conf = find_ar_conflation_ending_at(y, kind, modL2, 6)
            assert conf is not None, (kind, y)
            assert is_almost_split_conflation(conf, inds)


def test_ar_end_checks(L2, modL2):
    inds = s_indecomposables(modL2, 6)
    y = zero_to_object(J(L2, 1))
    conf = find_ar_conflation_ending_at(y, StructureKind.CANONICAL, modL2, 6)
    assert is_right_almost_split_morph(conf.p, inds)
    assert is_left_almost_split_morph(conf.i, inds)
    # the identity is not left almost split (it is a section)
    assert not is_left_almost_split_morph(identity_morph_map(y), inds)


def test_projective_end_rejected(L2, modL2):
    y = zero_to_object(J(L2, 2))
    with pytest.raises(ValueError):
        find_ar_conflation_ending_at(y, StructureKind.CANONICAL, modL2, 6)


def test_dtr_over_preprojective():
    pi2 = build_preprojective(2, 2)
    inds = enumerate_indecomposables(pi2, 4)
    simples = [m for m in inds if m.total_dim == 1]
    projs = [m for m in inds if m.total_dim == 2]
    for P in projs:
        assert dtr(P).total_dim == 0
    s1, s2 = simples
    assert is_isomorphic(dtr(s1), s2)
    assert is_isomorphic(dtr(s2), s1)
    # tau-orbit of order two: translating twice returns to the start
    assert is_isomorphic(dtr(dtr(s1)), s1)
    # cross-check against the almost split sequence search
    for s in simples:
        seq = find_ar_sequence(s, inds)
        assert seq is not None
        assert is_isomorphic(seq.i.source, dtr(s))


def test_dtr_semisimple_gamma(setting2):
    from monocat.functor_cat import gamma_indecomposables

    for g in gamma_indecomposables(setting2):
        assert dtr(g).total_dim == 0


def test_component_translation_L2(modL2):
    inds = s_indecomposables(modL2, 6)
    tested = 0
    for y in inds:
        if classify_projective(StructureKind.CANONICAL, y, modL2):
            continue
        rep = check_component_translation(y, modL2, 6)
        assert rep["status"] == "pass", rep
        tested += 1
    assert tested == 3


def test_translation_agreement_vacuous_L2(modL2):
    # every object is scw-projective over Lambda_2, so nothing to compare;
    # the helper still runs on the cw-non-projective object against canonical
    inds = s_indecomposables(modL2, 6)
    socle = [o for o in inds if o.a.total_dim == 1 and o.b.total_dim == 2][0]
    rep = translation_agreement_across_kinds(socle, modL2, 6)
    assert rep["status"] == "pass"
    assert set(rep["kinds_compared"]) == {"canonical", "cw"}


def test_ars_dimension_equalities_L2(modL2):
    for kind in (StructureKind.CANONICAL, StructureKind.CW):
        rep = ars_dimension_check(kind, modL2, 6)
        assert rep["all_pass"], rep
