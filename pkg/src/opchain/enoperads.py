"""The chain Barratt–Eccles operad, its E_n filtration, C, A and rescalings.

A d-simplex of E(r) is a tuple (w_0, ..., w_d) of permutations of r letters
with adjacent entries distinct.  E_n(r) keeps the tuples in which, for every
pair of letters i < j, the relative order of i and j changes at most n-1 times
along the tuple.
"""
import itertools
from functools import lru_cache

import numpy as np

from .homcore import BasedComplex, ZZ
from .operadcore.operad import Operad, SuspendedOperad, check_morphism
from .perms import compose, identity, perm_tables, substitute
from .sigmaobj import ExplicitComponent, FreeComponent, FreeMatrix, SigmaObject


# -- enumeration --------------------------------------------------------------------

def _row_keys(A):
    A = np.ascontiguousarray(A)
    if A.shape[1] == 0:
        return np.zeros(len(A), dtype="V1")
    return A.view(np.dtype((np.void, A.dtype.itemsize * A.shape[1]))).ravel()


@lru_cache(maxsize=32)
def orbit_levels(n, r, d_max=None):
    """Orbit representatives (w_0 = e) of E_n(r) per degree.

    Returns a list W with W[d] an array of shape (N_d, d) holding the
    permutation indices of w_1..w_d, rows in lexicographic order.  n=None means
    the whole Barratt–Eccles component (then d_max is required).
    """
    if n is None and d_max is None:
        raise ValueError("the unfiltered component needs a degree bound")
    T = perm_tables(r)
    N = len(T.perms)
    ori = T.orientation
    npairs = ori.shape[1]
    W = [np.zeros((1, 0), dtype=np.int16)]
    last = np.full(1, T.identity, dtype=np.int64)
    cnt = np.zeros((1, npairs), dtype=np.int16)
    while d_max is None or len(W) <= d_max:
        newW, newlast, newcnt = [], [], []
        for v in range(N):
            ok = last != v
            c = cnt + (ori[last] != ori[v])
            if n is not None and npairs:
                ok &= c.max(axis=1) <= n - 1
            if ok.any():
                sel = np.nonzero(ok)[0]
                newW.append(np.hstack([W[-1][sel], np.full((len(sel), 1), v, dtype=np.int16)]))
                newlast.append(np.full(len(sel), v, dtype=np.int64))
                newcnt.append(c[sel])
        if not newW:
            break
        Wn = np.vstack(newW)
        order = np.lexsort(Wn.T[::-1])
        W.append(Wn[order])
        last = np.concatenate(newlast)[order]
        cnt = np.vstack(newcnt)[order]
    return W


class RepLabels:
    """Lazy sequence of representative tuples (e, w_1, ..., w_d)."""

    def __init__(self, rows, r):
        self.rows = rows
        self.r = r
        self.perms = perm_tables(r).perms

    def __len__(self):
        return len(self.rows)

    def __getitem__(self, k):
        if isinstance(k, slice):
            return [self[j] for j in range(*k.indices(len(self)))]
        e = identity(self.r)
        return (e,) + tuple(self.perms[int(x)] for x in self.rows[k])

    def __iter__(self):
        for k in range(len(self)):
            yield self[k]


def _free_boundary(W, r, d):
    """Boundary ∂_d of the free presentation (faces of normalized tuples)."""
    T = perm_tables(r)
    A = W[d].astype(np.int64)
    B = W[d - 1]
    kb = _row_keys(B.astype(np.int16))
    M = len(A)
    cols_all = np.arange(M)
    rows, cols, coef, gs = [], [], [], []
    for k in range(d + 1):
        if k == 0:
            w1 = A[:, 0]
            # (w_1, ..., w_d) = w_1 · (e, w_1^{-1} w_2, ...)
            face = T.mult[T.inv[w1][:, None], A[:, 1:]] if d > 1 else np.zeros((M, 0), dtype=np.int64)
            keep = np.ones(M, dtype=bool)
            g = w1
            c = np.ones(M, dtype=np.int64)
        else:
            face = np.delete(A, k - 1, axis=1)
            if k < d:
                prev = A[:, k - 2] if k >= 2 else np.full(M, T.identity)
                keep = prev != A[:, k]
            else:
                keep = np.ones(M, dtype=bool)
            g = np.full(M, T.identity, dtype=np.int64)
            c = np.full(M, -1 if k % 2 else 1, dtype=np.int64)
        fk = _row_keys(face[keep].astype(np.int16))
        pos = np.searchsorted(kb, fk)
        rows.append(pos)
        cols.append(cols_all[keep])
        coef.append(c[keep])
        gs.append(g[keep])
    return FreeMatrix((len(B), M), np.concatenate(rows), np.concatenate(cols),
                      np.concatenate(coef), np.concatenate(gs))


@lru_cache(maxsize=32)
def en_free_component(n, r, d_max=None):
    """E_n(r) (or E(r) up to d_max when n is None) as a free Σ_r-complex."""
    W = orbit_levels(n, r, d_max)
    reps = {d: RepLabels(W[d], r) for d in range(len(W))}
    bd = {d: _free_boundary(W, r, d) for d in range(1, len(W))}
    return FreeComponent(r, reps, bd)


def _literal(g, rep):
    return tuple(compose(g, w) for w in rep)


@lru_cache(maxsize=32)
def en_component(n, r, d_max=None):
    """E_n(r) as an explicit component; basis tuples in lexicographic order."""
    return en_free_component(n, r, d_max).expanded(label=_literal)


def complexity(tuple_, r=None):
    """Maximal number of order changes of a letter pair along the tuple."""
    r = r or len(tuple_[0])
    worst = 0
    for i, j in itertools.combinations(range(1, r + 1), 2):
        seq = [w.index(i) < w.index(j) for w in tuple_]
        worst = max(worst, sum(1 for a, b in zip(seq, seq[1:]) if a != b))
    return worst


def is_nondegenerate(t):
    return all(a != b for a, b in zip(t, t[1:]))


def be_boundary(t):
    """∂(w_0..w_d) = Σ (-1)^k (..ŵ_k..), degenerate faces dropped."""
    out = {}
    d = len(t) - 1
    if d == 0:
        return out
    for k in range(d + 1):
        f = t[:k] + t[k + 1:]
        if is_nondegenerate(f):
            out[f] = out.get(f, 0) + (-1 if k % 2 else 1)
    return {k: v for k, v in out.items() if v}


def barratt_eccles_component(r, d_max):
    """E(r) in degrees 0..d_max as an explicit component (diagonal action)."""
    if r < 1 or d_max < 0:
        raise ValueError("need r >= 1 and d_max >= 0")
    return en_component(None, r, d_max)


def complexity_filter(r, n):
    """The component E_n(r)."""
    if n < 1 or r < 1:
        raise ValueError("need n >= 1 and r >= 1")
    return en_component(n, r)


# -- composition ------------------------------------------------------------------

@lru_cache(maxsize=None)
def _shuffles(p, q):
    """Lattice paths from (0,0) to (p,q) with Eilenberg–Zilber signs."""
    out = []
    for asteps in itertools.combinations(range(p + q), p):
        aset = set(asteps)
        ia = ib = 0
        path = [(0, 0)]
        inv = 0
        for s in range(p + q):
            if s in aset:
                ia += 1
                inv += ib  # b-steps preceding this a-step
            else:
                ib += 1
            path.append((ia, ib))
        out.append((tuple(path), -1 if inv % 2 else 1))
    return tuple(out)


def be_compose_basis(a, i, b):
    """Composite of two simplices as {simplex: coefficient}."""
    p, q = len(a) - 1, len(b) - 1
    out = {}
    cache = {}
    for path, s in _shuffles(p, q):
        t = []
        for ia, ib in path:
            key = (ia, ib)
            w = cache.get(key)
            if w is None:
                w = cache[key] = substitute(a[ia], i, b[ib])
            t.append(w)
        t = tuple(t)
        if is_nondegenerate(t):
            out[t] = out.get(t, 0) + s
    return {k: v for k, v in out.items() if v}


def be_compose(x, i, y):
    """x ∘_i y for chains {simplex: coef} of E(m), E(n)."""
    if not x or not y:
        return {}
    m = len(next(iter(x))[0])
    if not 1 <= i <= m:
        raise IndexError(f"slot {i} out of range for arity {m}")
    out = {}
    for a, u in x.items():
        for b, v in y.items():
            for t, c in be_compose_basis(a, i, b).items():
                out[t] = out.get(t, 0) + u * v * c
    return {k: v for k, v in out.items() if v}


class BarrattEccles(Operad):
    """E_n ⊂ E (n=None: the whole operad, truncated at degree d_max)."""

    def __init__(self, n=None, r_max=None, d_max=None, ring=ZZ):
        if n is not None and n < 1:
            raise ValueError("the level n must be >= 1")
        if n is None and d_max is None:
            raise ValueError("the unfiltered Barratt–Eccles operad needs d_max")
        self.n = n
        self.d_max = d_max
        self.degree_cap = d_max
        self.r_max = r_max
        self.ring = ring
        self.name = "E" if n is None else f"E_{n}"
        self.unit_label = ((1,),)
        self.underlying = SigmaObject(lambda r: en_component(n, r, d_max) if r >= 1 else None,
                                      lambda r: en_free_component(n, r, d_max) if r >= 1 else None,
                                      r_max, ring, self.name)

    def degree(self, r, label):
        return len(label) - 1

    def _huge(self, r):
        f = en_free_component(self.n, r, self.d_max)
        return sum(f.dim(d) for d in f.degrees) > 60000

    def check_basis(self, r):
        if not self._huge(r):
            return self.basis(r)
        # equivariance of the unit maps reduces this gate to orbit representatives
        f = en_free_component(self.n, r, self.d_max)
        return [rep for d in f.degrees for rep in f.reps[d]]

    def free_check_component(self, r):
        return en_free_component(self.n, r, self.d_max) if self._huge(r) else None

    def admissible(self, t):
        if self.d_max is not None and len(t) - 1 > self.d_max:
            return False
        return self.n is None or complexity(t) <= self.n - 1

    def compose_basis(self, m, i, n, a, b):
        res = be_compose_basis(a, i, b)
        if self.d_max is not None or self.n is None:
            res = {t: v for t, v in res.items() if self.admissible(t)}
        return res

    def act(self, sigma, label):
        return 1, tuple(compose(sigma, w) for w in label)

    def d_basis(self, r, label):
        return be_boundary(label)


def en_operad(n, r_max=None, ring=ZZ):
    return BarrattEccles(n, r_max, None, ring)


# -- commutative and associative operads ---------------------------------------------

class Commutative(Operad):
    """C(r) = k·μ_r in degree 0 with trivial action, r >= 1."""

    unit_label = "c"

    def __init__(self, r_max=None, ring=ZZ):
        self.r_max = r_max
        self.ring = ring
        self.name = "C"
        comp = lambda r: ExplicitComponent.trivial(r, BasedComplex(ring, {0: ["c"]})) if r >= 1 else None
        self.underlying = SigmaObject(comp, None, r_max, ring, "C")

    def degree(self, r, label):
        return 0

    def compose_basis(self, m, i, n, a, b):
        return {"c": 1}

    def act(self, sigma, label):
        return 1, label

    def d_basis(self, r, label):
        return {}

    def basis(self, r):
        return ["c"] if r >= 1 and (self.r_max is None or r <= self.r_max) else []


class Associative(Operad):
    """A(r) = regular representation of Σ_r, composition by block substitution."""

    unit_label = (1,)

    def __init__(self, r_max=None, ring=ZZ):
        self.r_max = r_max
        self.ring = ring
        self.name = "A"
        from .perms import all_perms

        def comp(r):
            if r < 1:
                return None
            cx = BasedComplex(ring, {0: list(all_perms(r))})
            return ExplicitComponent.from_action(r, cx, lambda s, d, w: (1, compose(s, w)))

        self.underlying = SigmaObject(comp, None, r_max, ring, "A")

    def degree(self, r, label):
        return 0

    def compose_basis(self, m, i, n, a, b):
        return {substitute(a, i, b): 1}

    def act(self, sigma, label):
        return 1, compose(sigma, label)

    def d_basis(self, r, label):
        return {}

    def basis(self, r):
        from .perms import all_perms
        return list(all_perms(r)) if r >= 1 and (self.r_max is None or r <= self.r_max) else []


def commutative_operad(r_max=None, ring=ZZ):
    return Commutative(r_max, ring)


def associative_operad(r_max=None, ring=ZZ):
    return Associative(r_max, ring)


def augmentation(r, label):
    """E_n -> C: degree-0 simplices go to μ_r, higher ones to zero."""
    return {"c": 1} if len(label) == 1 else {}


def check_augmentation(n, r_max):
    return check_morphism(en_operad(n, r_max), Commutative(r_max), augmentation, r_max)


# -- canonical cycles -----------------------------------------------------------------

def alternating(start, d):
    """The alternating (d+1)-tuple of arity-2 permutations beginning with start."""
    e, t = (1, 2), (2, 1)
    seq = [start]
    for _ in range(d):
        seq.append(t if seq[-1] == e else e)
    return tuple(seq)


def canonical_generators(n):
    """μ, λ_{n-1} in E_n(2) and the dual cochains μ^∨, λ_{n-1}^∨.

    Returns a dict of {simplex: coef} chains; λ is None for n = 1.  The dual
    cochains are given as linear forms on the basis of E_n(2).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    e, t = (1, 2), (2, 1)
    mu = {(e,): 1}
    mu_dual = {(e,): 1, (t,): 1}
    if n == 1:
        return {"mu": mu, "lambda": None, "mu_dual": mu_dual, "lambda_dual": {(e,): 1}}
    a, b = alternating(e, n - 1), alternating(t, n - 1)
    lam = {a: 1, b: -1 if n % 2 else 1}
    return {"mu": mu, "lambda": lam, "mu_dual": mu_dual, "lambda_dual": {a: 1}}


# -- rescalings ---------------------------------------------------------------------------

class RescalingMorphism:
    """ρ_c: C -> C acting by c^{r-1} in arity r."""

    def __init__(self, c, r_max=None, ring=ZZ):
        self.c = ring(c)
        self.r_max = r_max
        self.ring = ring

    def multiplier(self, r):
        return self.ring.normalize(self.c ** (r - 1)) if r >= 1 else 0

    def __call__(self, r, label):
        m = self.multiplier(r)
        return {"c": m} if m else {}

    def then(self, other):
        """other ∘ self."""
        return RescalingMorphism(self.ring.normalize(self.c * other.c), self.r_max, self.ring)

    def verify(self, r_max=None):
        top = r_max or self.r_max or 5
        return check_morphism(Commutative(top, self.ring), Commutative(top, self.ring), self, top, self.ring)


def rescaling(c, r_max=None, ring=ZZ):
    return RescalingMorphism(c, r_max, ring)


def lambda_n(n, P, r_max=None):
    """Λⁿ of an operad."""
    return SuspendedOperad(P, n)
