"""Dual cooperads, the cobar construction and the L∞ operad.

For an operad P and an integer n the cooperad D = Λ^{-n} P^∨ has the labels
of P as (dual) basis; its cocompositions are transposes of the compositions
of Λ^n P.  The cobar construction is the quasi-free operad on the generators
M = D~[-1] (labels again those of P) whose twisting map θ transposes the
two-vertex compositions.
"""
import itertools

from .enoperads import commutative_operad
from .homcore import homology
from .operadcore.operad import SuspendedOperad, VerificationReport, _GateRun, add_into
from .operadcore.quasifree import QuasiFreeOperad, check_filtration, check_twisting
from .perms import identity, substitute, transposition
from .sigmaobj import above_arity, dual_sigma, shift_sigma, suspend


def _parity(e):
    return -1 if e % 2 else 1


class CooperadData:
    """Λ^{-n} P^∨ up to arity r_max, with cocompositions read off Λ^n P."""

    def __init__(self, P, n, r_max):
        if r_max < 1:
            raise ValueError("r_max must be >= 1")
        if P.r_max is not None and P.r_max < r_max:
            raise ValueError(f"operad truncated at arity {P.r_max} < {r_max}")
        if P.basis(1) != [P.unit_label]:
            raise ValueError("the operad must be the unit line in arity 1")
        self.P = P
        self.n = n
        self.r_max = r_max
        self.ring = P.ring
        self.suspended = SuspendedOperad(P, n)
        self.underlying = suspend(dual_sigma(P.underlying), -n)
        self.name = f"Λ^{-n}{P.name}^∨"
        self._tables = {}

    def degree(self, r, label):
        """Degree of the dual basis element of `label` in D(r)."""
        return -self.suspended.degree(r, label)

    def basis(self, r):
        return self.P.basis(r)

    def composition_table(self, m, i, k):
        """{x: {(a, b): coefficient of x in a ∘_i b}} computed in Λ^n P."""
        key = (m, i, k)
        hit = self._tables.get(key)
        if hit is None:
            hit = {}
            S = self.suspended
            for a in self.P.basis(m):
                for b in self.P.basis(k):
                    for x, c in S.compose_basis(m, i, k, a, b).items():
                        hit.setdefault(x, {})[(a, b)] = c
            self._tables[key] = hit
        return hit

    def cocompose(self, m, i, k, x):
        """Δ_i(x) = {(a, b): coef}: the transpose of ∘_i at the dual basis of x."""
        if m + k - 1 > self.r_max:
            raise ValueError("cocomposition beyond the truncation")
        return dict(self.composition_table(m, i, k).get(x, {}))

    def composition_matrix(self, m, i, k):
        """The ∘_i matrix recovered from the cocomposition (double transpose)."""
        out = {}
        for x, row in self.composition_table(m, i, k).items():
            for ab, c in row.items():
                out.setdefault(ab, {})[x] = c
        return out


def dual_cooperad(P, n, r_max):
    return CooperadData(P, n, r_max)


def check_cooperad(D, r_max=None):
    """Coassociativity (sequential and parallel) and coequivariance of D,
    exhaustive on dual basis elements up to r_max."""
    r_max = r_max or D.r_max
    S = D.suspended
    rep = VerificationReport(f"cooperad {D.name}")
    gs = _GateRun("coassociativity (sequential)")
    gp = _GateRun("coassociativity (parallel)")
    deg = lambda r, x: S.degree(r, x)
    for m in range(2, r_max + 1):
        for n in range(2, r_max + 2 - m):
            for k in range(2, r_max + 3 - m - n):
                r = m + n + k - 2
                for i in range(1, m + 1):
                    for x in D.basis(r):
                        for j in range(i, i + n):
                            # (Δ_i ⊗ 1) Δ_j  versus  (1 ⊗ Δ_{j-i+1}) Δ_i
                            lhs, rhs = {}, {}
                            for (z, c), u in D.cocompose(m + n - 1, j, k, x).items():
                                for (a, b), v in D.cocompose(m, i, n, z).items():
                                    add_into(lhs, {(a, b, c): u * v})
                            for (a, y), u in D.cocompose(m, i, n + k - 1, x).items():
                                for (b, c), v in D.cocompose(n, j - i + 1, k, y).items():
                                    add_into(rhs, {(a, b, c): u * v})
                            gs.check(lhs == rhs, (x, i, j))
                        for j in range(i + 1, m + 1):
                            lhs, rhs = {}, {}
                            for (z, b), u in D.cocompose(m + k - 1, i, n, x).items():
                                for (a, c), v in D.cocompose(m, j, k, z).items():
                                    add_into(lhs, {(a, b, c): u * v})
                            for (z, c), u in D.cocompose(m + n - 1, j + n - 1, k, x).items():
                                for (a, b), v in D.cocompose(m, i, n, z).items():
                                    add_into(rhs, {(a, b, c): u * v * _parity(deg(n, b) * deg(k, c))})
                            gp.check(lhs == rhs, (x, i, j))
    rep.gates += [gs.gate, gp.gate]
    g = _GateRun("coequivariance")
    for m in range(2, r_max + 1):
        for k in range(2, r_max + 2 - m):
            r = m + k - 1
            for i in range(1, m + 1):
                for t in range(1, m):
                    s = transposition(m, t)
                    big = substitute(s, s[i - 1], identity(k))
                    for x in D.basis(r):
                        # ⟨x, big·(a∘_i b)⟩ = ⟨x, (s·a)∘_{s(i)} b⟩
                        sx, x2 = S.act(_inverse(big), x)
                        lhs = {ab: sx * c for ab, c in D.cocompose(m, i, k, x2).items()}
                        rhs = {}
                        for (a2, b), c in D.cocompose(m, s[i - 1], k, x).items():
                            sa, a = S.act(_inverse(s), a2)
                            add_into(rhs, {(a, b): sa * c})
                        g.check(lhs == rhs, ("σ", s, i, x))
    rep.gates.append(g.gate)
    return rep


def _inverse(p):
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v - 1] = i + 1
    return tuple(out)


# -- cobar ----------------------------------------------------------------------

def two_vertex_trees(r):
    """(slot, inner leaf set S, root children template) for every canonical
    two-vertex shape on leaves 1..r; root arity r-|S|+1 >= 2, |S| >= 2."""
    out = []
    for l in range(2, r):
        for S in itertools.combinations(range(1, r + 1), l):
            rest = [j for j in range(1, r + 1) if j not in S]
            i = 1 + sum(1 for j in rest if j < S[0])
            out.append((i, S, rest))
    return out


class CobarTheta:
    """θ for the cobar construction, computed lazily one arity at a time."""

    def __init__(self, D, sign=None):
        self.D = D
        self.sign = sign or self.default_sign
        self._images = {}

    def default_sign(self, r, x, k, a, l, b):
        S = self.D.suspended
        n = self.D.n
        da, db = S.degree(k, a), S.degree(l, b)
        P = self.D.P
        e = da * db + da
        e += n * (1 - r) * P.degree(r, x) + n * (1 - k) * P.degree(k, a) + n * (1 - l) * P.degree(l, b)
        return _parity(e)

    def images(self, r):
        hit = self._images.get(r)
        if hit is not None:
            return hit
        D = self.D
        S = D.suspended
        out = {}
        for i, Sset, rest in two_vertex_trees(r):
            l = len(Sset)
            k = r - l + 1
            planar = rest[:i - 1] + list(Sset) + rest[i - 1:]
            pi = tuple(planar)
            kids = tuple(rest[:i - 1]) + (None,) + tuple(rest[i - 1:])
            for (a, b), terms in _pair_products(D, k, i, l):
                for y, g in terms.items():
                    s, x = S.act(pi, y)
                    coef = g * s * self.sign(r, x, k, a, l, b)
                    tree = (a, kids[:i - 1] + ((b, Sset),) + kids[i:])
                    row = out.setdefault(x, {})
                    v = row.get(tree, 0) + coef
                    if v:
                        row[tree] = v
                    else:
                        row.pop(tree, None)
        self._images[r] = out
        return out

    def __call__(self, r, x):
        if r < 3:
            return {}
        return self.images(r).get(x, {})


def _pair_products(D, k, i, l):
    S = D.suspended
    for a in D.P.basis(k):
        for b in D.P.basis(l):
            terms = S.compose_basis(k, i, l, a, b)
            if terms:
                yield (a, b), terms


def cobar(D, r_max=None, sign=None):
    """B^c(D) = (F(D~[-1]), δ + ∂_θ) truncated at arity r_max."""
    r_max = r_max or D.r_max
    if r_max < 2:
        raise ValueError("the cobar construction needs r_max >= 2")
    if r_max > D.r_max:
        raise ValueError("cooperad truncated below r_max")
    M = shift_sigma(above_arity(D.underlying, 1), -1)
    M.max_arity = r_max
    M.name = f"{D.name}~[-1]"
    theta = CobarTheta(D, sign)
    P = QuasiFreeOperad(M, r_max, theta, name=f"B^c({D.name})",
                        provenance={"cobar_of": D.name, "n": D.n})
    P.cooperad = D
    P.theta_map = theta
    return P


def cobar_en(n, r_max):
    """B^c(D_n) with D_n = Λ^{-n} E_n^∨."""
    from .enoperads import en_operad
    return cobar(dual_cooperad(en_operad(n, r_max), n, r_max), r_max)


def linfinity(r_max, ring=None):
    """L∞ = B^c(Λ^{-1} C^∨)."""
    from .homcore import ZZ
    C = commutative_operad(r_max, ring or ZZ)
    return cobar(dual_cooperad(C, 1, r_max), r_max)


def cobar_homology(P, r, ring=None):
    return homology(P.complex(r), ring=ring)


def verify_cobar(P):
    """Twisting equation, (δ + ∂_θ)² = 0 and the filtration inclusion."""
    rep = check_twisting(P)
    rep.gates += check_filtration(P).gates
    return rep
