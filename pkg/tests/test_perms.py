import itertools

from hypothesis import given, strategies as st

from opchain.perms import (adjacent_factors, all_perms, compose, identity, inverse, perm_tables,
                           sign, substitute, transposition)

perms = st.integers(1, 6).flatmap(lambda r: st.permutations(list(range(1, r + 1))).map(tuple))


@given(perms)
def test_inverse_and_identity(s):
    r = len(s)
    assert compose(s, inverse(s)) == identity(r) == compose(inverse(s), s)


@given(perms)
def test_adjacent_factorization(s):
    r = len(s)
    out = identity(r)
    for i in adjacent_factors(s):
        out = compose(out, transposition(r, i))
    assert out == s
    assert sign(s) == (-1) ** len(adjacent_factors(s))


@given(perms, perms)
def test_sign_is_a_character(s, w):
    if len(s) == len(w):
        assert sign(compose(s, w)) == sign(s) * sign(w)


def test_block_substitution():
    # letter 2 of 312 becomes the block 2..3 read as 21, letters above shift
    assert substitute((3, 1, 2), 2, (2, 1)) == (4, 1, 3, 2)
    assert substitute((1, 2), 1, (1,)) == (1, 2)


def test_tables_match_direct_products():
    T = perm_tables(4)
    P = all_perms(4)
    assert len(P) == 24 and len(set(P)) == 24
    for a, b in itertools.product(range(24), repeat=2):
        assert T.perms[T.mult[a, b]] == compose(P[a], P[b])
