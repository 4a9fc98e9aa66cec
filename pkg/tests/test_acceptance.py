"""The acceptance criteria, each run exactly and reported as one verdict line.

Run with ``pytest tests/test_acceptance.py -v``; the verdicts are repeated in
the "acceptance criteria" section of the terminal summary.
"""
import math
import random
import time

import pytest
from conftest import record

from opchain.enoperads import BarrattEccles, associative_operad, commutative_operad, en_operad
from opchain.homcore import GF, QQ, ZZ, homology, matmul, smith_normal_form
from opchain.koszul import CobarTheta, cobar, cobar_en, cobar_homology, dual_cooperad, linfinity
from opchain.operadcore import FreeOperad, check_filtration, check_operad, check_twisting
from opchain.sigmaobj import above_arity, shift_sigma, skeleton
from opchain.tower import (CONCLUSION, CobarGenerators, build_phi, coinvariant_homology_tables,
                           e1_tables, homotopy_class, pi_report, symbolic_linearity,
                           transpose_to_linfinity_morphism)

RINGS = [ZZ, QQ, GF(2), GF(3)]
S_MAX = {1: 5, 2: 5, 3: 4}

pytestmark = pytest.mark.slow


def test_criterion_1_e1_pattern():
    start = time.time()
    bad = []
    for n, s_max in S_MAX.items():
        tables = e1_tables(CobarGenerators(n), commutative_operad(s_max), s_max, RINGS)
        for ring, T in tables.items():
            if not T.matches_lemma_pattern():
                bad.append((n, ring.short, T.nonzero_cells()))
    elapsed = time.time() - start
    ok = not bad and elapsed < 300
    record(1, ok, f"rank 1 exactly at (2,2) for n=1,2,3 over Z,Q,F2,F3 in {elapsed:.0f}s"
           + (f"; mismatches {bad}" if bad else ""))
    assert ok


def test_criterion_2_coinvariant_vanishing():
    bad_vanish, bad_rank, untwisted = [], [], {}
    for n, s_max in S_MAX.items():
        for ring, T in coinvariant_homology_tables(n, s_max, RINGS).items():
            for row in T.rows:
                bound = row.vanishing_bound
                if any(d > bound for d in row.coinvariants.support()):
                    bad_vanish.append((n, row.s, ring.short))
                # the twisted coinvariants are Λ^n E_n(s): degree d sits at d + n(1-s)
                if any(d - n * (1 - row.s) > bound for d in row.twisted_coinvariants.support()):
                    bad_vanish.append((n, row.s, ring.short, "twisted"))
                if not row.agree:
                    bad_vanish.append((n, row.s, ring.short, "reindexing"))
            two = T.rows[0]
            # H_{n-1} of the coinvariants entering E_1^{2,2}: those of E_n(2) ⊗ sgn^n
            if two.twisted_coinvariants.rank(n - 1 + n * (1 - 2)) != 1:
                bad_rank.append((n, ring.short))
            untwisted[(n, ring.short)] = two.coinvariants.rank(n - 1)
    ok = not bad_vanish and not bad_rank
    record(2, ok, "H_d(E_n(s)_Σ) = 0 for d > (n-1)(s-1); rank H_{n-1}(E_n(2)_Σ) = 1 (sgn^n-twisted, "
                  "as in the E_1 identification)"
           + (f"; failures {bad_vanish + bad_rank}" if not ok else ""))
    print("untwisted rank H_{n-1}(E_n(2)_Σ):", untwisted)
    assert ok


def test_criterion_2_note_untwisted_reading_for_odd_n():
    """Without the sign twist E_3(2)_Σ is a model of RP^2, whose H_2 vanishes
    over Z, Q and F_3; only the twisted coinvariants carry the rank-one class."""
    from opchain.sigmaobj import coinvariants
    X = coinvariants(en_operad(3).underlying, 2)
    assert [homology(X, ring=r).rank(2) for r in RINGS] == [0, 0, 1, 0]


def test_criterion_3_cobar_well_formed():
    bad = []
    for n, r_max in ((1, 4), (2, 4), (3, 3)):
        P = cobar_en(n, r_max)
        rep = check_twisting(P)
        if not rep.passed or any(rep.residuals.values()):
            bad.append((n, "twisting"))
        if not check_filtration(P).passed:
            bad.append((n, "filtration"))
    ok = not bad
    record(3, ok, "twisting residual exactly zero and ∂_θ(sk_s M) ⊂ F(sk_{s-1} M) for n=1,2,3"
           + (f"; failures {bad}" if bad else ""))
    assert ok


def test_criterion_4_cobar_homology_matches_en():
    start = time.time()
    bad = []
    for n, r_top in ((1, 4), (2, 4), (3, 3)):
        P = cobar_en(n, r_top)
        E = en_operad(n).underlying
        for r in range(1, r_top + 1):
            for ring in (ZZ, GF(2)):
                a = cobar_homology(P, r, ring)
                b = homology(E.component(r).complex, ring=ring)
                if a != b:
                    bad.append((n, r, ring.short, a, b))
    elapsed = time.time() - start
    ok = not bad and elapsed < 600
    record(4, ok, f"H(B^c(D_n)(r)) = H(E_n(r)) over Z and F2 for all listed (n, r) in {elapsed:.0f}s"
           + (f"; mismatches {bad}" if bad else ""))
    assert ok


def test_criterion_5_morphism_construction():
    bad = []
    cases = [(ZZ, range(-2, 4)), (GF(2), range(2)), (GF(3), range(3))]
    for n in (1, 2):
        for ring, cs in cases:
            for c in cs:
                f = build_phi(n, c, 4, ring)
                res = f.result()
                if not res.passed or homotopy_class(f) != ring(c):
                    bad.append((n, ring.short, c))
    ok = not bad
    record(5, ok, "build_phi(n, c, 4) has zero residual and homotopy_class = c for n=1,2"
           + (f"; failures {bad}" if bad else ""))
    assert ok


def test_criterion_6_classification_coordinate():
    bad = []
    for ring in (GF(2), GF(3)):
        for n, s_max in ((1, 4), (2, 4), (3, 3)):
            rep = pi_report(n, s_max, ring)
            hit = {tuple(h["class"]) for h in rep["hits"].values()}
            if not rep["passed"] or len(hit) != ring.p ** rep["e1_22_rank"]:
                bad.append((n, ring.short))
            if rep["conclusion"] != CONCLUSION:
                bad.append((n, ring.short, rep["conclusion"]))
    for n in (1, 2):
        if not symbolic_linearity(n, 4):
            bad.append((n, "Q linearity"))
    rep = pi_report(2, 4, QQ)
    if rep["conclusion"] != CONCLUSION or "connectivity lemma" not in rep["conditional_on"]:
        bad.append("Q report")
    ok = not bad
    record(6, ok, "every class of E_1^{2,2} over F2, F3 is hit; linear in c over Q; "
                  f"conclusion '{CONCLUSION}' (conditional on the connectivity lemma)"
           + (f"; failures {bad}" if bad else ""))
    assert ok


def test_criterion_7_linfinity_homology():
    bad = []
    for ring, r_top in ((QQ, 5), (ZZ, 4)):
        L = linfinity(r_top, ring)
        for r in range(2, r_top + 1):
            h = cobar_homology(L, r, ring)
            if h.rank(0) != math.factorial(r - 1) or h.support() != [0] or h.torsion:
                bad.append((ring.short, r, h))
    # the SNF route: ranks of the boundary maps over Z computed from invariant factors
    L = linfinity(4)
    X = L.complex(4)
    from opchain.homcore import invariant_factors
    r1 = len(invariant_factors(X.d(1).to_dense(), X.dim(1))) if X.dim(0) and X.dim(1) else 0
    if X.dim(0) - r1 != math.factorial(3):
        bad.append(("SNF", X.dim(0), r1))
    ok = not bad
    record(7, ok, "rank H_0(L∞(r)) = (r-1)! and H_{≠0} = 0 (r ≤ 5 over Q, r ≤ 4 over Z)"
           + (f"; failures {bad}" if bad else ""))
    assert ok


def test_criterion_8_transposition():
    bad = []
    for n in (1, 2):
        t = transpose_to_linfinity_morphism(build_phi(n, 1, 3))
        if not (t.passed and t.arity2_is_cycle and t.lambda_factor == 1):
            bad.append((n, t.passed, t.arity2_is_cycle, t.lambda_factor))
    ok = not bad
    record(8, ok, "transposed morphism ΛL∞ -> Λ^n E_n has zero residual; arity-2 image is the cycle λ_{n-1}"
           + (f"; failures {bad}" if bad else ""))
    assert ok


def _flipped_cobar():
    D = dual_cooperad(en_operad(2, 4), 2, 4)
    base = CobarTheta(D)
    chosen = {}

    def sign(r, x, k, a, l, b):
        s = base.default_sign(r, x, k, a, l, b)
        if r == 3 and not chosen:
            chosen[(x, a, b)] = True
        return -s if (x, a, b) in chosen else s

    return cobar(D, 4, sign)


def test_criterion_9_property_suites():
    bad = []
    operads = [en_operad(1, 4), en_operad(2, 4), en_operad(3, 4), commutative_operad(4),
               associative_operad(4), BarrattEccles(None, 4, 3),
               FreeOperad(shift_sigma(above_arity(skeleton(en_operad(2).underlying, 3), 1), 1), 4),
               linfinity(4), cobar_en(1, 4), cobar_en(2, 4)]
    for P in operads:
        if not check_operad(P, 4).passed:
            bad.append(P.name)
    if not check_operad(cobar_en(3, 3), 3).passed:
        bad.append("B^c(D_3)")
    # ∂² = 0 on every component built above (also a gate of check_operad)
    for P in (linfinity(4), cobar_en(2, 4)):
        for r in range(1, 5):
            if P.complex(r).check_square_zero():
                bad.append((P.name, r, "∂²"))
    rng = random.Random(20240917)
    for _ in range(1000):
        m, n = rng.randint(1, 12), rng.randint(1, 12)
        A = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)]
        S, U, V = smith_normal_form(A)
        if matmul(matmul(U, A), V) != S:
            bad.append(("SNF", A))
            break
    # mutations: a single sign flip in θ, and in one operad composition
    if check_twisting(_flipped_cobar(), square_zero=False).passed:
        bad.append("twisting mutation not caught")
    from test_enoperads import _FlippedComposition
    mutant = _FlippedComposition(en_operad(2, 3), (2, 1, 2, ((1, 2), (2, 1)), ((1, 2),)))
    if check_operad(mutant, 3).passed:
        bad.append("axiom mutation not caught")
    ok = not bad
    record(9, ok, "axioms to arity 4 (E_1, E_2, E_3, C, A, E, free, cobar), ∂² = 0, "
                  "1000 SNF identities, both mutations caught" + (f"; failures {bad}" if bad else ""))
    assert ok
