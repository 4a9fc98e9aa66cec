import itertools
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from opchain.homcore import (BasedComplex, CoefficientRing, GF, GradedSummary, NotAComplex, QQ,
                             SparseMatrix, ZZ, determinant, dual, hom_complex, homology,
                             homology_class, invariant_factors, kernel_basis, matmul, rank, shift,
                             smith_normal_form, solve_linear, tensor)


# -- rings ----------------------------------------------------------------------

def test_ring_parsing_and_coercion():
    assert CoefficientRing.parse("Z") is ZZ
    assert CoefficientRing.parse("F3") == GF(3)
    assert CoefficientRing.parse("Fp:5") == GF(5)
    assert QQ("1/3") == Fraction(1, 3)
    assert GF(3)(5) == 2
    assert GF(5)("1/2") == 3
    with pytest.raises(ValueError):
        ZZ("1/3")
    with pytest.raises(ValueError):
        GF(4)
    with pytest.raises(ValueError):
        CoefficientRing.parse("R")


# -- Smith normal form ------------------------------------------------------------

matrices = st.integers(1, 12).flatmap(
    lambda m: st.integers(1, 12).flatmap(
        lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=m, max_size=m)))


def _is_smith(S):
    diag = []
    for i, row in enumerate(S):
        for j, v in enumerate(row):
            if i != j and v:
                return False
        if i < len(row):
            diag.append(row[i])
    nz = [d for d in diag if d]
    if any(d < 0 for d in nz) or any(d == 0 for d in diag[:len(nz)]):
        return False
    return all(b % a == 0 for a, b in zip(nz, nz[1:]))


@settings(max_examples=1000, deadline=None)
@given(matrices)
def test_smith_identity(A):
    S, U, V = smith_normal_form(A)
    assert matmul(matmul(U, A), V) == S
    assert abs(determinant(U)) == 1 and abs(determinant(V)) == 1
    assert _is_smith(S)


@settings(max_examples=200, deadline=None)
@given(matrices)
def test_invariant_factors_match_rank_over_q(A):
    f = invariant_factors(A)
    assert len(f) == rank(A, QQ)
    # F_p rank drops exactly at the factors divisible by p
    for p in (2, 3):
        assert rank(A, GF(p)) == sum(1 for d in f if d % p)


def test_known_smith_forms():
    assert invariant_factors([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == [2, 6, 12]
    assert invariant_factors([[0, 0], [0, 0]]) == []
    assert invariant_factors([[6]]) == [6]


@settings(max_examples=200, deadline=None)
@given(matrices, st.data())
def test_solve_linear_over_z(A, data):
    n = len(A[0])
    x = data.draw(st.lists(st.integers(-5, 5), min_size=n, max_size=n))
    b = [sum(a * v for a, v in zip(row, x)) for row in A]
    y = solve_linear(A, b, ZZ)
    assert y is not None
    assert [sum(a * v for a, v in zip(row, y)) for row in A] == b


def test_solve_linear_detects_no_integral_solution():
    assert solve_linear([[2]], [1], ZZ) is None
    assert solve_linear([[2]], [1], QQ) == [Fraction(1, 2)]
    assert solve_linear([[1, 1], [1, 1]], [0, 1], QQ) is None


def test_kernel_basis_is_a_kernel():
    rng = random.Random(3)
    for _ in range(50):
        A = [[rng.randint(-2, 2) for _ in range(6)] for _ in range(4)]
        for ring in (QQ, GF(3)):
            K = kernel_basis([[ring(x) for x in row] for row in A], ring)
            assert len(K) == 6 - rank(A, ring)
            for v in K:
                assert all(ring.normalize(sum(a * x for a, x in zip(row, v))) == 0 for row in A)


# -- sparse matrices -------------------------------------------------------------

def test_sparse_roundtrip_and_product():
    A = [[1, 0, 2], [0, -3, 0]]
    B = [[1, 1], [0, 1], [4, 0]]
    SA, SB = SparseMatrix.from_dense(A), SparseMatrix.from_dense(B)
    assert SA.to_dense() == A
    assert (SA @ SB).to_dense() == matmul(A, B)
    assert SA.T.to_dense() == [list(c) for c in zip(*A)]
    assert (SA - SA).is_zero()
    assert SA.over(GF(2)).to_dense() == [[1, 0, 0], [0, 1, 0]]


# -- complexes and homology ---------------------------------------------------------

def simplex_boundary_complex(n):
    """Simplicial chains of the boundary of the n-simplex (a sphere S^{n-1})."""
    verts = range(n + 1)
    basis = {d: list(itertools.combinations(verts, d + 1)) for d in range(n)}
    diff = {}
    for d in range(1, n):
        idx = {f: i for i, f in enumerate(basis[d - 1])}
        ent = {}
        for j, s in enumerate(basis[d]):
            for k in range(len(s)):
                ent[(idx[s[:k] + s[k + 1:]], j)] = (-1) ** k
        diff[d] = SparseMatrix.from_dict((len(basis[d - 1]), len(basis[d])), ent)
    return BasedComplex(ZZ, basis, diff)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_sphere_homology(n):
    h = homology(simplex_boundary_complex(n))
    assert h == GradedSummary({0: 1, n - 1: 1})


def rp2_complex():
    # cellular chains of RP^2: Z <-0- Z <-2- Z
    return BasedComplex(ZZ, {0: ["v"], 1: ["e"], 2: ["f"]}, {2: [[2]]})


def test_torsion_and_change_of_rings():
    X = rp2_complex()
    assert homology(X) == GradedSummary({0: 1}, {1: (2,)})
    assert homology(X, ring=QQ) == GradedSummary({0: 1})
    assert homology(X, ring=GF(2)) == GradedSummary({0: 1, 1: 1, 2: 1})
    assert homology(X, ring="F3") == GradedSummary({0: 1})


def test_not_a_complex_is_rejected():
    X = BasedComplex(ZZ, {0: ["a"], 1: ["b"], 2: ["c"]}, {1: [[1]], 2: [[1]]})
    assert X.check_square_zero() == [2]
    with pytest.raises(NotAComplex):
        homology(X)


def test_summary_json_roundtrip():
    h = GradedSummary({0: 1, 2: 3}, {1: (2, 4)})
    assert GradedSummary.from_json(h.to_json()) == h
    assert h.shifted(2).rank(4) == 3


def test_complex_json_roundtrip():
    X = simplex_boundary_complex(3)
    assert BasedComplex.from_json(X.dumps()) == X


def test_shift_dual_hom_tensor():
    S = simplex_boundary_complex(3)
    assert homology(shift(S, 3)) == homology(S).shifted(3)
    # the dual of the 2-sphere has cohomology in degrees 0 and -2
    assert homology(dual(S)) == GradedSummary({0: 1, -2: 1})
    assert not hom_complex(S, S).check_square_zero()
    T = tensor(S, rp2_complex())
    assert not T.check_square_zero()
    # Künneth over a field
    assert homology(T, ring=GF(2)) == GradedSummary({0: 1, 1: 1, 2: 2, 3: 1, 4: 1})


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000))
def test_random_complex_homology_matches_rank_formula(seed):
    """∂_2 drawn from integral combinations of the kernel of a random ∂_1;
    Betti numbers must equal dim - rank - rank."""
    rng = random.Random(seed)
    dims = [rng.randint(1, 5) for _ in range(3)]
    d1 = [[rng.randint(-2, 2) for _ in range(dims[1])] for _ in range(dims[0])]
    K = kernel_basis(d1, QQ)
    cols = []
    for _ in range(dims[2]):
        v = [Fraction(0)] * dims[1]
        for kv in K:
            c = rng.randint(-2, 2)
            v = [a + c * b for a, b in zip(v, kv)]
        den = math.lcm(*(a.denominator for a in v))
        cols.append([int(a * den) for a in v])
    d2 = [list(r) for r in zip(*cols)] if cols else [[0] * dims[2] for _ in range(dims[1])]
    X = BasedComplex(ZZ, {d: list(range(dims[d])) for d in range(3)}, {1: d1, 2: d2})
    assert not X.check_square_zero()
    h = homology(X, ring=QQ)
    r1, r2 = rank(d1, QQ), rank(d2, QQ)
    assert h.rank(0) == dims[0] - r1
    assert h.rank(1) == dims[1] - r1 - r2
    assert h.rank(2) == dims[2] - r2
    hz = homology(X)
    assert [hz.rank(d) for d in range(3)] == [h.rank(d) for d in range(3)]


def test_homology_class_coordinates():
    S = simplex_boundary_complex(3)
    # the sum of faces with alternating signs is the fundamental cycle
    z = [0] * S.dim(2)
    for j, f in enumerate(S.labels(2)):
        missing = ({0, 1, 2, 3} - set(f)).pop()
        z[j] = (-1) ** missing
    orders, coords = homology_class(S, 2, z)
    assert orders == [0] and abs(coords[0]) == 1
    # a boundary has class zero
    orders, coords = homology_class(S, 1, S.d(2).apply(z[:1] + [0] * (len(z) - 1)))
    assert coords == [] or all(c == 0 for c in coords)
