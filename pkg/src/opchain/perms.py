"""Permutations of {1..r} in one-line "output word" notation.

A permutation is a tuple ``w`` with ``w[j-1] = w(j)``.  The composite
``compose(s, w)`` is ``s∘w`` (apply ``w`` first).
"""
import itertools
from functools import lru_cache

import numpy as np


def identity(r):
    return tuple(range(1, r + 1))


def compose(s, w):
    return tuple(s[x - 1] for x in w)


def inverse(s):
    out = [0] * len(s)
    for k, x in enumerate(s):
        out[x - 1] = k + 1
    return tuple(out)


def sign(s):
    # parity via cycle decomposition
    seen = [False] * len(s)
    parity = 0
    for start in range(len(s)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = s[j] - 1
            length += 1
        parity += length - 1
    return -1 if parity % 2 else 1


def transposition(r, i):
    """The adjacent transposition exchanging i and i+1."""
    w = list(range(1, r + 1))
    w[i - 1], w[i] = w[i], w[i - 1]
    return tuple(w)


def adjacent_factors(s):
    """Indices i_1..i_k with s = t_{i_1} ∘ ... ∘ t_{i_k} (t_i adjacent transpositions)."""
    w = list(s)
    factors = []
    # bubble sort w into the identity by right multiplication w ∘ t_i,
    # which swaps positions i, i+1 of the word
    changed = True
    while changed:
        changed = False
        for i in range(len(w) - 1):
            if w[i] > w[i + 1]:
                w[i], w[i + 1] = w[i + 1], w[i]
                factors.append(i + 1)
                changed = True
    # s ∘ t_{f1} ∘ ... ∘ t_{fk} = id  =>  s = t_{fk} ∘ ... ∘ t_{f1}
    return factors[::-1]


def substitute(w, i, u):
    """Block substitution w ∘_i u: letter i of w becomes the word of u on
    the block i..i+n-1, larger letters shift up by n-1."""
    n = len(u)
    out = []
    for x in w:
        if x < i:
            out.append(x)
        elif x == i:
            out.extend(y + i - 1 for y in u)
        else:
            out.append(x + n - 1)
    return tuple(out)


@lru_cache(maxsize=None)
def all_perms(r):
    return tuple(itertools.permutations(range(1, r + 1)))


@lru_cache(maxsize=None)
def perm_index(r):
    return {p: i for i, p in enumerate(all_perms(r))}


class PermTables:
    """Integer-indexed multiplication tables for Σ_r (index = lexicographic rank)."""

    def __init__(self, r):
        self.r = r
        self.perms = all_perms(r)
        idx = perm_index(r)
        N = len(self.perms)
        self.mult = np.empty((N, N), dtype=np.int32)
        for i, s in enumerate(self.perms):
            for j, w in enumerate(self.perms):
                self.mult[i, j] = idx[compose(s, w)]
        self.inv = np.array([idx[inverse(s)] for s in self.perms], dtype=np.int32)
        self.sgn = np.array([sign(s) for s in self.perms], dtype=np.int64)
        pairs = list(itertools.combinations(range(1, r + 1), 2))
        ori = np.zeros((N, len(pairs)), dtype=np.int8)
        for k, p in enumerate(self.perms):
            where = {x: q for q, x in enumerate(p)}
            for m, (a, b) in enumerate(pairs):
                ori[k, m] = where[a] < where[b]
        self.orientation = ori
        self.identity = idx[identity(r)]


@lru_cache(maxsize=None)
def perm_tables(r):
    return PermTables(r)
