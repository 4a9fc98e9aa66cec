import math

import pytest

from opchain.enoperads import commutative_operad, en_operad
from opchain.homcore import GF, GradedSummary, QQ, ZZ, homology
from opchain.koszul import (CobarTheta, check_cooperad, cobar, cobar_en, cobar_homology,
                            dual_cooperad, linfinity, two_vertex_trees, verify_cobar)
from opchain.operadcore import (check_filtration, check_operad, check_twisting,
                                theta_weights)


@pytest.mark.parametrize("P,n,r", [(commutative_operad(4), 1, 4), (commutative_operad(4), 0, 4),
                                   (en_operad(1, 4), 1, 4), (en_operad(2, 4), 2, 4)])
def test_dual_cooperad_axioms(P, n, r):
    assert check_cooperad(dual_cooperad(P, n, r)).passed


def test_cocomposition_transposes_composition():
    D = dual_cooperad(en_operad(2, 3), 2, 3)
    S = D.suspended
    for a in D.basis(2):
        for b in D.basis(2):
            for x, c in S.compose_basis(2, 1, 2, a, b).items():
                assert D.cocompose(2, 1, 2, x)[(a, b)] == c
    assert D.composition_matrix(2, 1, 2)
    with pytest.raises(ValueError):
        D.cocompose(3, 1, 2, ((1, 2, 3, 4),))  # arity 4 lies beyond the truncation


def test_cooperad_checker_catches_a_sign_flip():
    D = dual_cooperad(en_operad(2, 4), 2, 4)
    x0 = next(iter(D.composition_table(2, 1, 3)))
    orig = D.cocompose

    def flipped(m, i, k, x):
        out = orig(m, i, k, x)
        if (m, i, k, x) == (2, 1, 3, x0):
            return {ab: -c for ab, c in out.items()}
        return out

    D.cocompose = flipped
    assert not check_cooperad(D).passed


def test_two_vertex_tree_count():
    # shapes with an inner vertex of arity l >= 2 and a root of arity >= 2
    for r in range(3, 7):
        expect = sum(math.comb(r, l) for l in range(2, r))
        assert len(two_vertex_trees(r)) == expect


@pytest.mark.parametrize("n,r_max", [(1, 4), (2, 4), (3, 3)])
def test_cobar_twisting_and_filtration(n, r_max):
    P = cobar_en(n, r_max)
    rep = check_twisting(P)
    assert rep.passed
    assert all(not v for v in rep.residuals.values())
    assert check_filtration(P).passed
    assert theta_weights(P) <= {2}


def test_cobar_operad_axioms():
    assert check_operad(cobar_en(2, 4), 4).passed
    assert check_operad(linfinity(4), 4).passed


def test_twisting_checker_catches_a_sign_flip():
    D = dual_cooperad(en_operad(2, 4), 2, 4)
    base = CobarTheta(D)
    flip = {}

    def sign(r, x, k, a, l, b):
        s = base.default_sign(r, x, k, a, l, b)
        if r == 3 and not flip:
            flip[(x, a, b)] = True
        return -s if (x, a, b) in flip else s

    P = cobar(D, 4, sign)
    rep = check_twisting(P, square_zero=False)
    assert not rep.passed


def test_linfinity_homology_is_lie():
    L = linfinity(5, QQ)
    for r in range(2, 6):
        h = cobar_homology(L, r, QQ)
        assert h == GradedSummary({0: math.factorial(r - 1)})


@pytest.mark.parametrize("n,r", [(1, 3), (2, 3), (3, 3)])
def test_cobar_homology_matches_en(n, r):
    P = cobar_en(n, r)
    E = en_operad(n).underlying.component(r).complex
    for ring in (ZZ, GF(2)):
        assert cobar_homology(P, r, ring) == homology(E, ring=ring)


def test_verify_cobar_report():
    rep = verify_cobar(linfinity(4))
    assert rep.passed
    names = [g.name for g in rep.gates]
    assert any("twisting" in s for s in names) and any("⊂" in s for s in names)


def test_cobar_validation():
    D = dual_cooperad(commutative_operad(3), 1, 3)
    with pytest.raises(ValueError):
        cobar(D, 4)
    with pytest.raises(ValueError):
        cobar(D, 1)
    with pytest.raises(ValueError):
        dual_cooperad(en_operad(2, 2), 2, 3)
