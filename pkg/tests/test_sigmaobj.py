import pytest

from opchain.enoperads import en_free_component, en_operad
from opchain.homcore import GF, GradedSummary, QQ, ZZ, homology
from opchain.sigmaobj import (ExplicitComponent, SigmaObject, above_arity, coinvariants,
                              dual_sigma, equivariant_hom, invariants, shift_sigma, skeleton,
                              suspend)


@pytest.fixture(scope="module")
def E2():
    return en_operad(2).underlying


def test_explicit_action_is_a_group_action(E2):
    for r in (2, 3):
        assert E2.component(r).check() == []
        assert E2.component(r).is_free()


@pytest.mark.parametrize("r", [2, 3])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_free_and_explicit_coinvariants_agree(n, r):
    M = en_operad(n).underlying
    for ring in (ZZ, GF(2)):
        a = homology(coinvariants(M, r, use_free=True), ring=ring)
        b = homology(coinvariants(M, r, use_free=False), ring=ring)
        assert a == b
        a = homology(invariants(M, r, use_free=True), ring=ring)
        b = homology(invariants(M, r, use_free=False), ring=ring)
        assert a == b


@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_free_and_explicit_agree_after_suspension_and_duals(E2, k):
    M = dual_sigma(suspend(E2, k))
    for r in (2, 3):
        assert homology(coinvariants(M, r)) == homology(coinvariants(M, r, use_free=False))


def test_braid_group_homology(E2):
    # E_2(r)_Σ computes the homology of the braid group B_r
    assert homology(coinvariants(E2, 2)) == GradedSummary({0: 1, 1: 1})
    assert homology(coinvariants(E2, 3)) == GradedSummary({0: 1, 1: 1})
    assert homology(coinvariants(E2, 4)) == GradedSummary({0: 1, 1: 1}, {2: (2,)})


def test_rp_infinity_truncation():
    # E_3(2)_Σ: chains of RP^2
    E3 = en_operad(3).underlying
    assert homology(coinvariants(E3, 2)) == GradedSummary({0: 1}, {1: (2,)})
    assert homology(coinvariants(E3, 2), ring=GF(2)) == GradedSummary({0: 1, 1: 1, 2: 1})


def test_free_component_square_zero():
    for n, r in ((2, 3), (3, 3), (2, 4)):
        assert en_free_component(n, r).square_zero_defect() is None


def test_shift_and_suspension_degrees(E2):
    M = shift_sigma(E2, 2)
    assert homology(M.component(2).complex) == GradedSummary({2: 1, 3: 1})
    S = suspend(E2, 1)
    # E_2(3) has Poincaré polynomial 1 + 3t + 2t^2; arity 3 moves down by 2
    h = homology(S.component(3).complex)
    assert [h.rank(d) for d in (-2, -1, 0)] == [1, 3, 2]


def test_skeleton_and_above_arity(E2):
    sk = skeleton(E2, 2)
    assert sk.is_zero_at(3) and not sk.is_zero_at(2)
    up = above_arity(E2, 2)
    assert up.is_zero_at(2) and not up.is_zero_at(3)
    with pytest.raises(ValueError):
        skeleton(E2, -1)


def test_equivariant_hom_pipelines_agree(E2):
    from opchain.enoperads import commutative_operad
    C = commutative_operad().underlying
    M = dual_sigma(suspend(E2, 2))
    for r in (2, 3):
        a = homology(equivariant_hom(M, C, r, use_free=True))
        b = homology(equivariant_hom(M, C, r, use_free=False))
        assert a == b
    # maps E_2(r) -> E_2(r) commuting with Σ_r: free on (r!)-dim orbit space
    a = homology(equivariant_hom(E2, E2, 2, use_free=True), ring=QQ)
    b = homology(equivariant_hom(E2, E2, 2, use_free=False), ring=QQ)
    assert a == b


def test_json_roundtrip(E2):
    doc = E2.to_json(r_max=3)
    back = SigmaObject.from_json(doc)
    for r in (1, 2, 3):
        assert back.component(r).complex == E2.component(r).complex


def test_zero_component():
    z = ExplicitComponent.zero(3)
    assert z.complex.total_dim() == 0
    assert homology(z.coinvariants()).is_zero()
