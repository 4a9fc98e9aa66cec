import json

import pytest

from opchain.enoperads import commutative_operad
from opchain.homcore import GF, QQ, ZZ
from opchain.koszul import cobar_en
from opchain.sigmaobj import skeleton
from opchain.tower import (CONCLUSION, CobarGenerators, E1Table, arity2_class, build_phi,
                           coinvariant_homology_table, e1_table, homotopy_class, pi_report,
                           postcompose_rescaling, symbolic_linearity, transpose_back,
                           transpose_to_linfinity_morphism, zero_map)


@pytest.mark.parametrize("n", [1, 2])
@pytest.mark.parametrize("ring", [ZZ, GF(2)])
def test_e1_pattern_small(n, ring):
    T = e1_table(CobarGenerators(n), commutative_operad(4, ring), 4, ring=ring)
    assert T.matches_lemma_pattern()
    assert T.rank(2, 2) == 1


def test_e1_uses_only_the_generators():
    # a cobar operad and its bare generator object give the same table
    a = e1_table(cobar_en(2, 3), commutative_operad(3), 3)
    b = e1_table(CobarGenerators(2), commutative_operad(3), 3)
    assert a.to_json() == b.to_json()


def test_e1_locality():
    """Zeroing the generators above arity s leaves the rows <= s unchanged."""
    G = CobarGenerators(2)
    full = e1_table(G, commutative_operad(4), 4)

    class Truncated:
        M = skeleton(G.M, 3)
        ring = ZZ

    cut = e1_table(Truncated, commutative_operad(4), 4, t_max=full.t_max)
    for (s, t), v in full.entries.items():
        if s <= 3:
            assert cut.cell(s, t) == v
        else:
            assert cut.cell(s, t).is_zero()


def test_e1_table_serialization():
    T = e1_table(CobarGenerators(1), commutative_operad(3), 3)
    doc = json.loads(T.dumps())
    assert doc["entries"]["2,2"]["ranks"]["0"] == 1
    assert T.rows()[0] == (2, 2, 0, 1, [])
    assert E1Table(ZZ, [2], 2).nonzero_cells() == []


@pytest.mark.parametrize("n", [1, 2])
@pytest.mark.parametrize("c", [-2, 0, 1, 3])
def test_build_phi_over_z(n, c):
    f = build_phi(n, c, 4)
    assert f.result().passed
    assert all(f.obstruction_cycles.values())
    assert homotopy_class(f) == c


@pytest.mark.parametrize("p", [2, 3])
def test_build_phi_over_finite_fields(p):
    for c in range(p):
        f = build_phi(2, c, 4, GF(p))
        assert f.result().passed and homotopy_class(f) == c


def test_phi_json_and_scalar_reduction():
    f = build_phi(2, 5, 3, GF(3))
    doc = f.to_json()
    assert doc["class_scalar"] == "2"
    assert set(doc["arities"]) == {"2", "3"}


def test_zero_map_and_rescaling():
    z = zero_map(2, 4)
    assert z.result().passed and homotopy_class(z) == 0
    f = build_phi(2, 1, 4)
    for c in (-1, 2, 3):
        g = postcompose_rescaling(f, c)
        assert g.result().passed
        assert homotopy_class(g) == c
    assert homotopy_class(postcompose_rescaling(build_phi(1, 2, 4), 3)) == 6
    with pytest.raises(ValueError):
        postcompose_rescaling(f, "1/3")


def test_homotopy_class_rejects_non_morphisms():
    f = build_phi(2, 1, 4)
    broken = postcompose_rescaling(f, 1)
    broken.images[3] = {}
    with pytest.raises(ValueError):
        homotopy_class(broken)


@pytest.mark.parametrize("n", [1, 2])
def test_transposition(n):
    f = build_phi(n, 1, 3)
    t = transpose_to_linfinity_morphism(f)
    assert t.passed
    assert t.arity2_is_cycle
    assert t.lambda_factor == 1
    back = transpose_back(t, n, 3)
    assert back.images == f.images


def test_transposition_of_zero():
    t = transpose_to_linfinity_morphism(zero_map(2, 3))
    assert t.passed and t.arity2_image == {} and t.lambda_factor == 0


def test_arity2_class_is_linear():
    classes = [arity2_class(build_phi(2, c, 2)) for c in (1, 2, 3)]
    base = classes[0]
    assert base and any(base)
    for c, v in zip((1, 2, 3), classes):
        assert v == [c * x for x in base]


def test_pi_report_f2():
    rep = pi_report(2, 4, GF(2))
    assert rep["passed"]
    assert len(rep["hits"]) == 2
    assert {tuple(h["class"]) for h in rep["hits"].values()} == {("0",), ("1",)}
    assert rep["conclusion"] == CONCLUSION == "pi_0 = k; pi_i = * (i>0)"
    assert "connectivity lemma" in rep["conditional_on"]


def test_pi_report_z_and_q():
    assert pi_report(2, 3, ZZ)["conclusion"] == CONCLUSION
    rep = pi_report(1, 4, QQ)
    assert rep["gates"]["arity-2 restriction linear and injective in c"]


def test_symbolic_linearity():
    assert symbolic_linearity(2, 4)


@pytest.mark.parametrize("n,s_max", [(1, 4), (2, 4)])
def test_coinvariant_table(n, s_max):
    T = coinvariant_homology_table(n, s_max)
    assert T.all_agree and T.vanishing_holds
    assert T.rows[0].coinvariants.rank(n - 1) == 1
    json.dumps(T.to_json())
