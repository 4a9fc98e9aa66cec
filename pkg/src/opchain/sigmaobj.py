"""Σ*-objects: arity-indexed complexes with symmetric-group actions.

Two component representations are used:

* ExplicitComponent: a BasedComplex plus the images of the adjacent
  transpositions as signed permutations of each degree's basis;
* FreeComponent: a complex with a free Σ_r action given by orbit
  representatives and a boundary with coefficients in the group ring.  This is
  what makes the large E_n(s) computations feasible.
"""
import json
from collections import deque

import numpy as np

from .homcore import BasedComplex, SparseMatrix, ZZ, dual as dual_complex, shift as shift_complex
from .perms import (adjacent_factors, all_perms, compose, identity, perm_index, perm_tables,
                    sign as perm_sign, transposition)


class NotFreeError(ValueError):
    """Coinvariants over Z acquire 2-torsion (an orbit meets its own negative)."""


def _compose_signed(a, b):
    """Signed permutation a∘b (b applied first); each is (perm, sign) arrays."""
    pa, sa = a
    pb, sb = b
    return pa[pb], sa[pb] * sb


class ExplicitComponent:
    """Arity-r component: complex plus generator images of t_1..t_{r-1}.

    gens[i-1][d] = (perm, sign): t_i · b_j = sign[j] · b_{perm[j]} in degree d.
    """

    def __init__(self, r, complex_, gens):
        self.arity = r
        self.complex = complex_
        self.gens = gens
        self._full = {}

    @property
    def ring(self):
        return self.complex.ring

    @property
    def degrees(self):
        return self.complex.degrees

    def labels(self, d):
        return self.complex.labels(d)

    def dim(self, d):
        return self.complex.dim(d)

    @classmethod
    def zero(cls, r, ring=ZZ):
        return cls(r, BasedComplex(ring, {}), [dict() for _ in range(max(r - 1, 0))])

    @classmethod
    def from_action(cls, r, complex_, act):
        """act(sigma, degree, label) -> (sign, label); only transpositions are queried."""
        gens = []
        for i in range(1, r):
            t = transposition(r, i)
            per = {}
            for d in complex_.degrees:
                n = complex_.dim(d)
                perm = np.empty(n, dtype=np.int64)
                sg = np.empty(n, dtype=np.int64)
                for j, lab in enumerate(complex_.labels(d)):
                    s, lab2 = act(t, d, lab)
                    perm[j] = complex_.index(d, lab2)
                    sg[j] = s
                per[d] = (perm, sg)
            gens.append(per)
        return cls(r, complex_, gens)

    @classmethod
    def trivial(cls, r, complex_, sign_power=0):
        """Every permutation acts by sgn(σ)^sign_power times the identity."""
        s = -1 if sign_power % 2 else 1
        gens = [{d: (np.arange(complex_.dim(d)), np.full(complex_.dim(d), s, dtype=np.int64))
                 for d in complex_.degrees} for _ in range(1, r)]
        return cls(r, complex_, gens)

    def action(self, sigma):
        """Signed permutation of each degree for a general permutation sigma."""
        sigma = tuple(sigma)
        hit = self._full.get(sigma)
        if hit is not None:
            return hit
        out = {}
        factors = adjacent_factors(sigma)
        for d in self.degrees:
            n = self.dim(d)
            cur = (np.arange(n), np.ones(n, dtype=np.int64))
            for i in reversed(factors):  # rightmost factor acts first
                cur = _compose_signed(self.gens[i - 1][d], cur)
            out[d] = cur
        if len(self._full) < 800:
            self._full[sigma] = out
        return out

    def act(self, sigma, d, label):
        perm, sg = self.action(sigma)[d]
        j = self.complex.index(d, label)
        return int(sg[j]), self.labels(d)[perm[j]]

    def act_index(self, sigma, d, j):
        perm, sg = self.action(sigma)[d]
        return int(sg[j]), int(perm[j])

    def action_matrix(self, sigma, d):
        perm, sg = self.action(sigma)[d]
        n = self.dim(d)
        return SparseMatrix((n, n), perm, np.arange(n), sg)

    def check(self, full_group=True):
        """Problems with the group law or with equivariance of ∂ (empty list if none)."""
        problems = []
        r = self.arity
        if r <= 1:
            return problems
        # differential commutes with the generators
        for i in range(1, r):
            for d in self.degrees:
                if self.dim(d - 1) == 0:
                    continue
                lhs = self.complex.d(d) @ self.action_matrix(transposition(r, i), d)
                rhs = self.action_matrix(transposition(r, i), d - 1) @ self.complex.d(d)
                diff = lhs - rhs
                if self.ring.kind == "Fp":
                    diff = diff.over(self.ring)
                if diff.nnz:
                    problems.append(f"t_{i} does not commute with ∂_{d}")
        # group law (Coxeter relations checked through all products)
        group = all_perms(r) if full_group else [transposition(r, i) for i in range(1, r)]
        e = identity(r)
        for d in self.degrees:
            pe, se = self.action(e)[d]
            if not (np.array_equal(pe, np.arange(self.dim(d))) and np.all(se == 1)):
                problems.append("identity acts nontrivially")
        for s in group:
            for t in group:
                st = compose(s, t)
                for d in self.degrees:
                    a = _compose_signed(self.action(s)[d], self.action(t)[d])
                    b = self.action(st)[d]
                    if not (np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1])):
                        problems.append(f"action({s})action({t}) != action({st}) in degree {d}")
                        return problems
        return problems

    def is_free(self):
        """Trivial stabilizers of basis elements (up to sign)."""
        r = self.arity
        e = identity(r)
        for s in all_perms(r):
            if s == e:
                continue
            for d in self.degrees:
                perm, _ = self.action(s)[d]
                if np.any(perm == np.arange(self.dim(d))):
                    return False
        return True

    # -- orbits ---------------------------------------------------------------
    def orbits(self, d):
        """(orbit_id, sign, reps, consistent) for the degree-d basis.

        b_j ≡ sign[j] · rep_{orbit_id[j]} modulo the action; consistent[o] is
        False when some group element sends an orbit element to its negative.
        """
        n = self.dim(d)
        oid = np.full(n, -1, dtype=np.int64)
        sg = np.zeros(n, dtype=np.int64)
        reps, consistent = [], []
        gens = [g[d] for g in self.gens]
        for start in range(n):
            if oid[start] >= 0:
                continue
            o = len(reps)
            reps.append(start)
            ok = True
            oid[start] = o
            sg[start] = 1
            queue = deque([start])
            while queue:
                j = queue.popleft()
                for perm, s in gens:
                    k = int(perm[j])
                    v = int(s[j]) * int(sg[j])
                    if oid[k] < 0:
                        oid[k] = o
                        sg[k] = v
                        queue.append(k)
                    elif sg[k] != v:
                        ok = False
            consistent.append(ok)
        return oid, sg, reps, consistent

    def _orbit_complex(self, kind):
        ring = self.ring
        char2 = ring.characteristic == 2
        data = {d: self.orbits(d) for d in self.degrees}
        keep = {}
        for d, (oid, sg, reps, cons) in data.items():
            if kind == "co" and ring.kind == "Z" and not all(cons):
                raise NotFreeError(f"coinvariants in degree {d} have 2-torsion")
            keep[d] = [o for o in range(len(reps)) if cons[o] or char2]
        basis = {d: [self.labels(d)[data[d][2][o]] for o in keep[d]] for d in self.degrees}
        pos = {d: {o: k for k, o in enumerate(keep[d])} for d in self.degrees}
        diff = {}
        for d in self.degrees:
            if d - 1 not in data:
                continue
            oid_t, sg_t, reps_t, _ = data[d - 1]
            oid_s, sg_s, reps_s, _ = data[d]
            cols = self.complex.d(d).columns()
            ent = {}
            if kind == "co":
                # ∂[rep] = Σ v [b_i] and [b_i] = sign_i [rep of its orbit]
                for o in keep[d]:
                    for i, v in cols.get(reps_s[o], {}).items():
                        ot = int(oid_t[i])
                        if ot in pos[d - 1]:
                            key = (pos[d - 1][ot], pos[d][o])
                            ent[key] = ent.get(key, 0) + v * int(sg_t[i])
            else:
                # ∂ of a signed orbit sum, read off on the target representatives
                is_rep = {reps_t[o]: o for o in keep[d - 1]}
                for j in range(self.dim(d)):
                    o = int(oid_s[j])
                    if o not in pos[d]:
                        continue
                    for i, v in cols.get(j, {}).items():
                        ot = is_rep.get(i)
                        if ot is not None:
                            key = (pos[d - 1][ot], pos[d][o])
                            ent[key] = ent.get(key, 0) + v * int(sg_s[j])
            diff[d] = SparseMatrix.from_dict((len(basis[d - 1]), len(basis[d])), ent)
        return BasedComplex(ring, basis, diff)

    def coinvariants(self):
        return self._orbit_complex("co")

    def invariants(self):
        return self._orbit_complex("inv")

    # -- derived components ------------------------------------------------------
    def shifted(self, k):
        gens = [{d + k: v for d, v in g.items()} for g in self.gens]
        return ExplicitComponent(self.arity, shift_complex(self.complex, k), gens)

    def twisted(self, k):
        if k % 2 == 0:
            return self
        gens = [{d: (p, -s) for d, (p, s) in g.items()} for g in self.gens]
        return ExplicitComponent(self.arity, self.complex, gens)

    def suspended(self, n):
        return self.shifted(n * (1 - self.arity)).twisted(n)

    def dualized(self):
        # signed permutation matrices are orthogonal: inverse-transpose = itself
        gens = [{-d: v for d, v in g.items()} for g in self.gens]
        return ExplicitComponent(self.arity, dual_complex(self.complex), gens)

    def to_json(self):
        return {
            "arity": self.arity,
            "complex": self.complex.to_json(),
            "transpositions": [
                {str(d): [[int(p), int(s)] for p, s in zip(*g[d])] for d in sorted(g)}
                for g in self.gens],
        }

    @classmethod
    def from_json(cls, doc):
        cx = BasedComplex.from_json(doc["complex"])
        gens = []
        for g in doc["transpositions"]:
            gens.append({int(d): (np.array([x[0] for x in v], dtype=np.int64),
                                  np.array([x[1] for x in v], dtype=np.int64))
                         for d, v in g.items()})
        return cls(doc["arity"], cx, gens)


class FreeMatrix:
    """Boundary of a free Σ_r-complex on orbit representatives.

    Entry (row j, col i, coef c, group element h) means ∂x_i ∋ c · (h ∗ x_j).
    """

    __slots__ = ("shape", "rows", "cols", "coef", "g")

    def __init__(self, shape, rows, cols, coef, g):
        self.shape = shape
        self.rows = np.asarray(rows, dtype=np.int64)
        self.cols = np.asarray(cols, dtype=np.int64)
        self.coef = np.asarray(coef, dtype=np.int64)
        self.g = np.asarray(g, dtype=np.int64)

    def summed(self, character=None):
        """Group-ring coefficients pushed to k: c·χ(h) summed."""
        c = self.coef if character is None else self.coef * character[self.g]
        return SparseMatrix(self.shape, self.rows, self.cols, c)


class FreeComponent:
    """Free Σ_r-complex: basis (g, i) = g ∗ x_i with x_i orbit representatives."""

    def __init__(self, r, reps, boundary, ring=ZZ):
        self.arity = r
        self.reps = {d: v for d, v in reps.items() if len(v)}
        self.boundary = boundary
        self.ring = ring
        self.tables = perm_tables(r)

    @property
    def degrees(self):
        return sorted(self.reps)

    def n_reps(self, d):
        return len(self.reps.get(d, ()))

    def dim(self, d):
        return self.n_reps(d) * len(self.tables.perms)

    def _map(self, f):
        return {d: f(d, m) for d, m in self.boundary.items()}

    def shifted(self, k):
        s = -1 if k % 2 else 1
        bd = {d + k: FreeMatrix(m.shape, m.rows, m.cols, m.coef * s, m.g) for d, m in self.boundary.items()}
        return FreeComponent(self.arity, {d + k: v for d, v in self.reps.items()}, bd, self.ring)

    def twisted(self, k):
        if k % 2 == 0:
            return self
        sg = self.tables.sgn
        bd = {d: FreeMatrix(m.shape, m.rows, m.cols, m.coef * sg[m.g], m.g) for d, m in self.boundary.items()}
        return FreeComponent(self.arity, self.reps, bd, self.ring)

    def suspended(self, n):
        return self.shifted(n * (1 - self.arity)).twisted(n)

    def dualized(self):
        inv = self.tables.inv
        bd = {}
        for d, m in self.boundary.items():
            s = -1 if d % 2 else 1
            bd[1 - d] = FreeMatrix((m.shape[1], m.shape[0]), m.cols, m.rows, m.coef * s, inv[m.g])
        return FreeComponent(self.arity, {-d: v for d, v in self.reps.items()}, bd, self.ring)

    def square_zero_defect(self, chunk=2_000_000):
        """First (degree, rep index) with ∂∂x ≠ 0, or None; computed on the
        group ring without expanding the orbits."""
        G = len(self.tables.perms)
        mult = self.tables.mult
        for d in sorted(self.boundary):
            A, B = self.boundary[d], self.boundary.get(d - 1)
            if B is None or not len(A.cols) or not len(B.cols):
                continue
            oa = np.argsort(A.cols, kind="stable")
            ar, ac, acoef, ag = A.rows[oa], A.cols[oa], A.coef[oa], A.g[oa]
            ob = np.argsort(B.cols, kind="stable")
            br, bcoef, bg = B.rows[ob], B.coef[ob], B.g[ob]
            starts = np.searchsorted(B.cols[ob], np.arange(B.shape[1] + 1))
            counts = (starts[1:] - starts[:-1])[ar]
            # split the entries of A at column boundaries, about `chunk` products each
            load = np.cumsum(counts)
            lo = 0
            while lo < len(ar):
                hi = int(np.searchsorted(load, (load[lo - 1] if lo else 0) + chunk, side="right"))
                hi = max(hi, lo + 1)
                while hi < len(ar) and ac[hi] == ac[hi - 1]:
                    hi += 1
                cnt = counts[lo:hi]
                ia = np.repeat(np.arange(lo, hi), cnt)
                off = np.arange(len(ia)) - np.repeat(np.cumsum(cnt) - cnt, cnt)
                ib = starts[ar[ia]] + off
                key = (ac[ia] * B.shape[0] + br[ib]) * G + mult[ag[ia], bg[ib]]
                val = acoef[ia] * bcoef[ib]
                uk, inv = np.unique(key, return_inverse=True)
                tot = np.zeros(len(uk), dtype=np.int64)
                np.add.at(tot, inv, val)
                if self.ring.kind == "Fp":
                    tot %= self.ring.p
                bad = np.nonzero(tot)[0]
                if len(bad):
                    return d, int(uk[bad[0]] // (G * B.shape[0]))
                lo = hi
        return None

    def _orbit_complex(self, character=None):
        diff = {d: m.summed(character) for d, m in self.boundary.items() if d in self.reps and d - 1 in self.reps}
        return BasedComplex(self.ring, self.reps, diff)

    def coinvariants(self):
        return self._orbit_complex()

    def invariants(self):
        # the norm element N·x_i spans the invariants of each free orbit
        return self._orbit_complex()

    def hom_to(self, target):
        """Equivariant Hom into an explicit component: basis (x_i, y), f(x_i) = y."""
        ring = target.ring
        basis, where = {}, {}
        for p in self.degrees:
            for q in target.degrees:
                lst = basis.setdefault(q - p, [])
                for i, x in enumerate(self.reps[p]):
                    for j, y in enumerate(target.labels(q)):
                        where[(p, i, q, j)] = len(lst)
                        lst.append((x, y))
        perms = self.tables.perms
        entries = {}
        for p in self.degrees:
            m = self.boundary.get(p + 1)
            out_rows = {}
            if m is not None:
                for jrow, icol, c, h in zip(m.rows.tolist(), m.cols.tolist(), m.coef.tolist(), m.g.tolist()):
                    out_rows.setdefault(jrow, []).append((icol, c, h))
            for q in target.degrees:
                d = q - p
                sgn = -1 if d % 2 else 1
                dy = target.complex.d(q).columns()
                tgt = entries.setdefault(d, {})
                for i in range(self.n_reps(p)):
                    for j in range(target.dim(q)):
                        col = where[(p, i, q, j)]
                        for j2, v in dy.get(j, {}).items():
                            key = (where[(p, i, q - 1, j2)], col)
                            tgt[key] = tgt.get(key, 0) + v
                        # f∘∂ evaluated on x_{i'} with ∂x_{i'} ∋ c h∗x_i
                        for i2, c, h in out_rows.get(i, ()):
                            s, j3 = target.act_index(perms[h], q, j)
                            key = (where[(p + 1, i2, q, j3)], col)
                            tgt[key] = tgt.get(key, 0) - sgn * c * s
        diff = {d: SparseMatrix.from_dict((len(basis.get(d - 1, [])), len(basis[d])), e)
                for d, e in entries.items() if d in basis}
        return BasedComplex(ring, basis, diff)

    def hom_to_trivial(self, degree=0, sign_power=0, label="1"):
        """Hom_Σ(X, k) for k in one degree with the action sgn^sign_power (vectorized)."""
        character = self.tables.sgn if sign_power % 2 else None
        basis = {degree - p: [(x, label) for x in v] for p, v in self.reps.items()}
        diff = {}
        for p, m in self.boundary.items():
            # ∂_p : X_p -> X_{p-1};  [x_j ↦ 1] in degree degree-(p-1) maps to degree degree-p
            d = degree - (p - 1)
            if d not in basis or d - 1 not in basis:
                continue
            sgn = -1 if d % 2 else 1
            c = m.coef if character is None else m.coef * character[m.g]
            diff[d] = SparseMatrix((m.shape[1], m.shape[0]), m.cols, m.rows, -sgn * c)
        return BasedComplex(self.ring, basis, diff)

    def expanded(self, label=None, sort=True):
        """The explicit component with basis g ∗ x_i (labels label(g, x_i))."""
        T = self.tables
        perms = T.perms
        G = len(perms)
        label = label or (lambda g, x: (g, x))
        basis, order = {}, {}
        for d in self.degrees:
            labs = [label(perms[g], x) for x in self.reps[d] for g in range(G)]
            if sort:
                o = sorted(range(len(labs)), key=lambda k: labs[k])
            else:
                o = list(range(len(labs)))
            pos = np.empty(len(labs), dtype=np.int64)
            pos[np.asarray(o, dtype=np.int64)] = np.arange(len(labs))
            basis[d] = [labs[k] for k in o]
            order[d] = pos  # position of the raw index i*G + g
        diff = {}
        for d, m in self.boundary.items():
            if d not in basis or d - 1 not in basis:
                continue
            # ∂(g ∗ x_i) = Σ c (g h) ∗ x_j
            gg = np.arange(G)
            rows = (m.rows[None, :] * G + T.mult[gg[:, None], m.g[None, :]]).ravel()
            cols = (m.cols[None, :] * G + gg[:, None]).ravel()
            vals = np.broadcast_to(m.coef[None, :], (G, len(m.coef))).ravel()
            diff[d] = SparseMatrix((len(basis[d - 1]), len(basis[d])),
                                   order[d - 1][rows], order[d][cols], vals)
        cx = BasedComplex(self.ring, basis, diff)
        gens = []
        idx = perm_index(self.arity)
        for i in range(1, self.arity):
            t = idx[transposition(self.arity, i)]
            per = {}
            for d in self.degrees:
                n = self.n_reps(d)
                raw = np.arange(n * G)
                img = (raw // G) * G + T.mult[t, raw % G]
                perm = np.empty(n * G, dtype=np.int64)
                perm[order[d][raw]] = order[d][img]
                per[d] = (perm, np.ones(n * G, dtype=np.int64))
            gens.append(per)
        return ExplicitComponent(self.arity, cx, gens)


class SigmaObject:
    """Arity-indexed components built lazily from a constructor.

    explicit(r) returns an ExplicitComponent; free(r) an optional
    FreeComponent presentation of the same object (or None).
    """

    def __init__(self, explicit, free=None, max_arity=None, ring=ZZ, name=""):
        self._explicit = explicit
        self._free = free
        self.max_arity = max_arity
        self.ring = ring
        self.name = name
        self._cache = {}
        self._fcache = {}

    def component(self, r):
        if self.max_arity is not None and r > self.max_arity or r < 0:
            return ExplicitComponent.zero(r, self.ring)
        hit = self._cache.get(r)
        if hit is None:
            hit = self._explicit(r)
            if hit is None:
                hit = ExplicitComponent.zero(r, self.ring)
            self._cache[r] = hit
        return hit

    def free_component(self, r):
        if self._free is None or (self.max_arity is not None and r > self.max_arity):
            return None
        if r not in self._fcache:
            self._fcache[r] = self._free(r)
        return self._fcache[r]

    def __getitem__(self, r):
        return self.component(r)

    def is_zero_at(self, r):
        if self.max_arity is not None and r > self.max_arity:
            return True
        f = self.free_component(r)
        if f is not None:
            return not f.degrees
        return self.component(r).complex.total_dim() == 0

    @classmethod
    def from_components(cls, comps, ring=ZZ, name=""):
        comps = dict(comps)
        top = max(comps) if comps else 0
        return cls(lambda r: comps.get(r), None, top, ring, name)

    def map(self, explicit_op, free_op=None, name=""):
        free = None
        if self._free is not None and free_op is not None:
            free = lambda r: (None if self.free_component(r) is None else free_op(self.free_component(r)))
        return SigmaObject(lambda r: explicit_op(self.component(r)), free, self.max_arity, self.ring, name)

    def to_json(self, r_max=None):
        top = r_max if r_max is not None else self.max_arity
        if top is None:
            raise ValueError("an arity bound is needed to serialize an unbounded Σ*-object")
        return {"name": self.name, "arities": [self.component(r).to_json() for r in range(0, top + 1)]}

    def dumps(self, r_max=None):
        return json.dumps(self.to_json(r_max), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, doc):
        if isinstance(doc, str):
            doc = json.loads(doc)
        comps = {c["arity"]: ExplicitComponent.from_json(c) for c in doc["arities"]}
        ring = next(iter(comps.values())).ring if comps else ZZ
        return cls.from_components(comps, ring, doc.get("name", ""))


# -- operations -------------------------------------------------------------------

def suspend(M, n):
    """ΛⁿM: arity-r component shifted by n(1-r), action twisted by sgnⁿ."""
    if n == 0:
        return M
    return M.map(lambda c: c.suspended(n), lambda f: f.suspended(n), name=f"Λ^{n}{M.name}")


def desuspend(M, n):
    return suspend(M, -n)


def shift_sigma(M, k):
    return M.map(lambda c: c.shifted(k), lambda f: f.shifted(k), name=f"{M.name}[{k}]")


def dual_sigma(M):
    return M.map(lambda c: c.dualized(), lambda f: f.dualized(), name=f"{M.name}^∨")


def skeleton(M, s):
    """Components of arity > s replaced by zero."""
    if s < 0:
        raise ValueError("skeleton index must be nonnegative")
    top = s if M.max_arity is None else min(s, M.max_arity)
    out = SigmaObject(M.component, M.free_component if M._free else None, top, M.ring, f"sk_{s}{M.name}")
    out._cache = {r: c for r, c in M._cache.items() if r <= top}
    return out


def above_arity(M, k):
    """Components of arity <= k replaced by zero (e.g. k=1 gives a coaugmentation coideal)."""
    free = None
    if M._free is not None:
        free = lambda r: M.free_component(r) if r > k else None
    return SigmaObject(lambda r: M.component(r) if r > k else None, free, M.max_arity, M.ring,
                       f"{M.name}>{k}")


def coinvariants(M, r, use_free=True):
    f = M.free_component(r) if use_free else None
    if f is not None:
        return f.coinvariants()
    return M.component(r).coinvariants()


def invariants(M, r, use_free=True):
    f = M.free_component(r) if use_free else None
    if f is not None:
        return f.invariants()
    return M.component(r).invariants()


def conjugation_component(S, T):
    """Hom(S, T) with Σ_r acting by conjugation, as an explicit component."""
    from .homcore import hom_complex
    H = hom_complex(S.complex, T.complex)
    r = S.arity

    def act(sigma, d, label):
        x, y = label
        # (σ f σ^{-1}) sends σx to σy
        for p in S.degrees:
            if S.complex.has_label(p, x) and T.complex.has_label(p + d, y):
                sx, x2 = S.act(sigma, p, x)
                sy, y2 = T.act(sigma, p + d, y)
                return sx * sy, (x2, y2)
        raise KeyError(label)

    return ExplicitComponent.from_action(r, H, act)


def _one_dimensional(comp):
    """(degree, sign power, label) if comp is a line on which Σ_r acts by a character."""
    if comp.complex.total_dim() != 1:
        return None
    d = comp.degrees[0]
    signs = {int(g[d][1][0]) for g in comp.gens}
    if len(signs) > 1:
        return None
    return d, (0 if signs in ({1}, set()) else 1), comp.labels(d)[0]


def equivariant_hom(M, N, r, use_free=True):
    """Complex of Σ_r-equivariant maps M(r) -> N(r)."""
    f = M.free_component(r) if use_free else None
    target = N.component(r)
    if f is not None:
        line = _one_dimensional(target)
        if line is not None:
            return f.hom_to_trivial(*line)
        return f.hom_to(target)
    return conjugation_component(M.component(r), target).invariants()


class EquivariantMap:
    """Degree-k map of Σ*-objects: images[r][label] = {target label: coef}."""

    def __init__(self, degree, images):
        self.degree = degree
        self.images = images

    def image(self, r, label):
        return self.images.get(r, {}).get(label, {})

    def matrix(self, r, source, target, d):
        """Matrix from degree d of source to degree d+degree of target."""
        S, T = source.complex, target.complex
        ent = {}
        for j, lab in enumerate(S.labels(d)):
            for t, v in self.image(r, lab).items():
                ent[(T.index(d + self.degree, t), j)] = v
        return SparseMatrix.from_dict((T.dim(d + self.degree), S.dim(d)), ent)

    def equivariance_defects(self, r, source, target_act):
        """Generators t_i and labels where f(t·x) != t·f(x)."""
        bad = []
        for i in range(1, r):
            t = transposition(r, i)
            for d in source.degrees:
                for lab in source.labels(d):
                    s, lab2 = source.act(t, d, lab)
                    lhs = {k: s * v for k, v in self.image(r, lab2).items()}
                    rhs = {}
                    for k, v in self.image(r, lab).items():
                        s2, k2 = target_act(t, k)
                        rhs[k2] = rhs.get(k2, 0) + s2 * v
                    lhs = {k: v for k, v in lhs.items() if v}
                    rhs = {k: v for k, v in rhs.items() if v}
                    if lhs != rhs:
                        bad.append((i, lab))
        return bad


def sign_of(sigma):
    return perm_sign(sigma)
