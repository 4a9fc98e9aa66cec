import pytest
from hypothesis import given, settings, strategies as st

from opchain.enoperads import commutative_operad, en_operad
from opchain.homcore import GradedSummary, homology
from opchain.operadcore import (Element, FreeOperad, QuasiFreeOperad, TruncationOverflow,
                                UnitOperad, check_operad, check_twisting, derivation_from_generator_map,
                                morphism_from_generator_map, operad_skeleton, partial_compose,
                                trees)
from opchain.sigmaobj import above_arity, shift_sigma, skeleton


class ToyGens:
    """Generators with fixed degrees and trivial action (sign twisted by parity)."""

    def __init__(self, degs):
        self.degs = degs

    def deg(self, k, label):
        return self.degs[label]

    def act(self, sigma, label):
        return 1, label


def test_tree_helpers():
    t = ("x", (("y", (3, 1)), 2))
    assert trees.leaves(t) == [3, 1, 2]
    assert trees.arity(t) == 3 and trees.weight(t) == 2
    assert trees.vertices(t) == [("x", 2), ("y", 2)]
    assert not trees.is_canonical(t)
    g = ToyGens({"x": 1, "y": 1})
    s, c = trees.canonicalize(t, g)
    assert trees.is_canonical(c)
    assert c == ("x", (("y", (1, 3)), 2))


def test_koszul_sign_of_a_swap():
    assert trees.koszul_sign([1, 1], [1, 0]) == -1
    assert trees.koszul_sign([1, 2], [1, 0]) == 1
    assert trees.koszul_sign([1, 1, 1], [2, 1, 0]) == -1


def test_graft_sign_counts_decorations_after_the_leaf():
    g = ToyGens({"x": 1, "y": 1})
    p = ("x", (1, ("x", (2, 3))))
    q = ("y", (1, 2))
    s, t = trees.graft(p, 1, q, g)
    # the inner x follows leaf 1 in preorder: sign (-1)^{1·1}
    assert s == -1 and t == ("x", (("y", (1, 2)), ("x", (3, 4))))
    s, t = trees.graft(p, 3, q, g)
    assert s == 1


def test_set_partitions_are_bell_numbers():
    assert [len(trees.set_partitions(tuple(range(n)))) for n in range(1, 7)] == [1, 2, 5, 15, 52, 203]


def _gens(n=2, top=3, shift=0):
    M = above_arity(skeleton(en_operad(n).underlying, top), 1)
    return shift_sigma(M, shift) if shift else M


@pytest.mark.parametrize("shift", [0, 1])
def test_free_operad_axioms(shift):
    F = FreeOperad(_gens(2, 3, shift), 4)
    assert check_operad(F, 4).passed


def test_free_operad_axioms_full_group():
    F = FreeOperad(_gens(2, 2, 1), 4)
    assert check_operad(F, 4, full_group=True).passed


def test_free_operad_counts():
    # one generator of arity 2 in degree 0, symmetric: binary trees count (2r-3)!!
    C = commutative_operad(2)
    M = above_arity(C.underlying, 1)
    F = FreeOperad(M, 5)
    assert [len(F.basis(r)) for r in range(2, 6)] == [1, 3, 15, 105]
    with pytest.raises(TruncationOverflow):
        F.basis(6)


def test_free_operad_rejects_arity_one_generators():
    with pytest.raises(ValueError):
        FreeOperad(en_operad(2).underlying, 3)


def test_free_homology_is_generated_homology():
    F = FreeOperad(_gens(2, 2), 3)
    # arity 3: three tree shapes, each H(E_2(2))^{⊗2} = (1 + t)^2 by Künneth
    h = homology(F.complex(3))
    assert h == GradedSummary({0: 3, 1: 6, 2: 3})


def test_zero_twisting_is_the_free_operad():
    M = _gens(2, 3)
    Q = QuasiFreeOperad(M, 3)
    assert check_twisting(Q).passed
    mats = derivation_from_generator_map(Q.free_part, None)
    assert all(m.is_zero() for ms in mats.values() for m in ms.values())


def test_unit_operad_and_elements():
    I = UnitOperad()
    assert check_operad(I, 3).passed
    E = en_operad(2, 3)
    x = Element.basis(2, ((1, 2),))
    y = partial_compose(E, x, 1, x)
    assert y.arity == 3 and y.terms == {((1, 2, 3),): 1}
    with pytest.raises(IndexError):
        partial_compose(E, x, 3, x)


def test_skeleton_rejects_nonrestricting_theta():
    from opchain.koszul import linfinity
    L = linfinity(4)
    sk = operad_skeleton(L, 3)
    assert sk.generator_labels(4) == []
    assert check_twisting(sk).passed
    bad = QuasiFreeOperad(L.M, 4, lambda k, x: {("c", (("c", (1, 2, 3)), 4)): 1} if k == 2 else {})
    with pytest.raises(ValueError):
        operad_skeleton(bad, 2)


def test_identity_morphism_of_a_free_operad():
    M = _gens(2, 2)
    P = QuasiFreeOperad(M, 3)
    F = P.free_part
    f = lambda k, x: {trees.corolla(x, k): 1}
    res = morphism_from_generator_map(P, F, f)
    assert res.passed


@settings(max_examples=40, deadline=None)
@given(st.permutations([1, 2, 3, 4]), st.permutations([1, 2, 3, 4]))
def test_free_action_is_a_group_action(s, w):
    from opchain.perms import compose
    F = FreeOperad(_gens(2, 3, 1), 4)
    s, w = tuple(s), tuple(w)
    for t in F.basis(4)[:40]:
        a, t1 = F.act(w, t)
        b, t2 = F.act(s, t1)
        c, t3 = F.act(compose(s, w), t)
        assert (a * b, t2) == (c, t3)
