"""Based chain complexes over Z, Q or F_p and their homology."""
import json
from dataclasses import dataclass, field

from .reduce import reduce_complex
from .rings import ZZ, QQ, CoefficientRing
from .snf import invariant_factors, rank as dense_rank, smith_normal_form, solve_linear
from .sparse import SparseMatrix


class NotAComplex(ValueError):
    pass


@dataclass(frozen=True)
class GradedSummary:
    """Per-degree rank and torsion invariant factors of a homology computation."""
    ranks: dict = field(default_factory=dict)
    torsion: dict = field(default_factory=dict)

    def rank(self, d):
        return self.ranks.get(d, 0)

    def torsion_at(self, d):
        return tuple(self.torsion.get(d, ()))

    def support(self):
        return sorted(d for d in set(self.ranks) | set(self.torsion)
                      if self.ranks.get(d, 0) or self.torsion.get(d))

    def normalized(self):
        return {d: (self.rank(d), self.torsion_at(d)) for d in self.support()}

    def __eq__(self, other):
        if not isinstance(other, GradedSummary):
            return NotImplemented
        return self.normalized() == other.normalized()

    def __hash__(self):
        return hash(tuple(self.normalized().items()))

    def is_zero(self):
        return not self.support()

    def shifted(self, k):
        return GradedSummary({d + k: r for d, r in self.ranks.items()},
                             {d + k: t for d, t in self.torsion.items()})

    def to_json(self):
        degs = sorted(set(self.ranks) | set(self.torsion))
        return {"ranks": {str(d): self.rank(d) for d in degs},
                "torsion": {str(d): list(self.torsion_at(d)) for d in degs}}

    @classmethod
    def from_json(cls, doc):
        return cls({int(d): int(r) for d, r in doc["ranks"].items()},
                   {int(d): tuple(t) for d, t in doc.get("torsion", {}).items() if t})

    def __repr__(self):
        parts = []
        for d in self.support():
            t = self.torsion_at(d)
            parts.append(f"{d}: {self.rank(d)}" + (f" + torsion {list(t)}" if t else ""))
        return "GradedSummary{" + ", ".join(parts) + "}"


class BasedComplex:
    """A finitely generated chain complex with chosen bases.

    basis: degree -> list of labels; differential: degree d -> SparseMatrix of
    ∂_d with shape (dim_{d-1}, dim_d).  Treated as immutable.
    """

    def __init__(self, ring, basis, differential=None, check_shapes=True):
        if isinstance(ring, str):
            ring = CoefficientRing.parse(ring)
        self.ring = ring
        self.basis = {int(d): b for d, b in basis.items() if len(b)}
        diff = {}
        for d, m in (differential or {}).items():
            d = int(d)
            if m is None:
                continue
            if not isinstance(m, SparseMatrix):
                m = SparseMatrix.from_dense(m, self.dim(d))
            if ring.kind == "Fp":
                m = m.over(ring)
            if m.nnz == 0:
                continue
            if check_shapes and m.shape != (self.dim(d - 1), self.dim(d)):
                raise ValueError(f"∂_{d} has shape {m.shape}, expected {(self.dim(d - 1), self.dim(d))}")
            diff[d] = m
        self.differential = diff
        self._index = {}
        self._cache = {}

    # -- basic structure --------------------------------------------------
    @property
    def degrees(self):
        return sorted(self.basis)

    def dim(self, d):
        b = self.basis.get(d)
        return len(b) if b is not None else 0

    def total_dim(self):
        return sum(len(b) for b in self.basis.values())

    def labels(self, d):
        return self.basis.get(d, [])

    def d(self, deg):
        """∂_deg as a SparseMatrix (zero if absent)."""
        m = self.differential.get(deg)
        if m is None:
            return SparseMatrix((self.dim(deg - 1), self.dim(deg)))
        return m

    def index(self, d, label):
        idx = self._index.get(d)
        if idx is None:
            idx = self._index[d] = {lab: i for i, lab in enumerate(self.labels(d))}
        return idx[label]

    def has_label(self, d, label):
        if d not in self._index:
            self._index[d] = {lab: i for i, lab in enumerate(self.labels(d))}
        return label in self._index[d]

    def boundary_of(self, d, label):
        """∂ of a basis element as {label: coefficient}."""
        j = self.index(d, label)
        cols = self._cache.get(("columns", d))
        if cols is None:
            cols = self._cache[("columns", d)] = self.d(d).columns()
        labs = self.labels(d - 1)
        return {labs[i]: v for i, v in cols.get(j, {}).items()}

    def check_square_zero(self):
        """Degrees d where ∂_{d-1}∂_d ≠ 0 (empty list means ∂² = 0)."""
        bad = []
        for d in sorted(self.differential):
            if d - 1 in self.differential:
                prod = self.differential[d - 1] @ self.differential[d]
                if self.ring.kind == "Fp":
                    prod = prod.over(self.ring)
                if prod.nnz:
                    bad.append(d)
        return bad

    def is_complex(self):
        return not self.check_square_zero()

    def __eq__(self, other):
        if not isinstance(other, BasedComplex):
            return NotImplemented
        if self.ring != other.ring or self.degrees != other.degrees:
            return False
        for d in self.degrees:
            if list(self.labels(d)) != list(other.labels(d)):
                return False
            if self.d(d) != other.d(d):
                return False
        return True

    __hash__ = object.__hash__

    def __repr__(self):
        dims = {d: self.dim(d) for d in self.degrees}
        return f"BasedComplex(ring={self.ring.short}, dims={dims})"

    def change_ring(self, ring):
        return BasedComplex(ring, self.basis, {d: m.over(ring) for d, m in self.differential.items()})

    # -- serialization ----------------------------------------------------
    def to_json(self):
        return {
            "ring": self.ring.label,
            "degrees": self.degrees,
            "basis": {str(d): [label_to_json(x) for x in self.labels(d)] for d in self.degrees},
            "differential": {
                str(d): [[i, j, str(v)] for i, j, v in sorted(m.triples(), key=lambda t: (t[1], t[0]))]
                for d, m in sorted(self.differential.items())},
        }

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, doc):
        if isinstance(doc, str):
            doc = json.loads(doc)
        ring = CoefficientRing.parse(doc["ring"])
        basis = {int(d): [label_from_json(x) for x in labs] for d, labs in doc["basis"].items()}
        diff = {}
        for d, triples in doc.get("differential", {}).items():
            d = int(d)
            shape = (len(basis.get(d - 1, [])), len(basis.get(d, [])))
            diff[d] = SparseMatrix(shape, [t[0] for t in triples], [t[1] for t in triples],
                                   [ring(t[2]) for t in triples])
        return cls(ring, basis, diff)


def label_to_json(x):
    if isinstance(x, tuple):
        return [label_to_json(y) for y in x]
    return x


def label_from_json(x):
    if isinstance(x, list):
        return tuple(label_from_json(y) for y in x)
    return x


# -- homology ------------------------------------------------------------------

def _reduction(X, base_ring, lo, hi):
    key = ("reduction", base_ring, lo, hi)
    hit = X._cache.get(key)
    if hit is None:
        dims = {d: X.dim(d) for d in range(lo - 1, hi + 2)}
        hit = reduce_complex(dims, lambda d: X.differential.get(d), base_ring, lo, hi)
        X._cache[key] = hit
    return hit


def _residual_rank(res, d, ring):
    A, ncols = res.dense(d)
    if not A or not ncols:
        return 0, []
    if ring.kind == "Fp":
        A = [[x % ring.p for x in row] for row in A]
    if ring.kind == "Z":
        f = invariant_factors(A, ncols)
        return len(f), [abs(x) for x in f if abs(x) > 1]
    return dense_rank(A, ring, ncols), []


def homology(X, degrees=None, ring=None, check=True):
    """Homology of a based complex as a GradedSummary.

    degrees restricts the computation to a window; ring may change
    coefficients from Z to Q or F_p (universal coefficients are not applied:
    the complex itself is tensored with the ring).
    """
    target = ring or X.ring
    if isinstance(target, str):
        target = CoefficientRing.parse(target)
    if target != X.ring and X.ring != ZZ:
        raise ValueError(f"cannot change coefficients from {X.ring} to {target}")
    if check:
        bad = X.check_square_zero()
        if bad:
            raise NotAComplex(f"∂² ≠ 0 at degrees {bad}")
    if degrees is None:
        degs = X.degrees
    else:
        degs = sorted(set(degrees))
    if not degs:
        return GradedSummary({}, {})
    lo, hi = min(degs), max(degs)
    res = _reduction(X, X.ring, lo, hi)
    ranks, torsion = {}, {}
    incoming = {}
    for d in range(lo, hi + 2):
        incoming[d] = _residual_rank(res, d, target)
    for d in degs:
        cells = res.cells.get(d) or []
        r_out = incoming[d][0]
        r_in, tors = incoming[d + 1]
        ranks[d] = len(cells) - r_out - r_in
        if tors:
            torsion[d] = tuple(sorted(tors))
    return GradedSummary(ranks, torsion)


# -- constructions ---------------------------------------------------------------

def shift(X, d):
    """Degree m of the result is degree m-d of X; differential times (-1)^d."""
    sgn = -1 if d % 2 else 1
    return BasedComplex(X.ring, {m + d: b for m, b in X.basis.items()},
                        {m + d: mat.scale(sgn) for m, mat in X.differential.items()})


def dual(X):
    """Degree j of the dual is the dual of degree -j of X (labels kept).

    δ(f) = -(-1)^{|f|} f∘∂, so the evaluation pairing is a chain map.
    """
    basis = {-m: b for m, b in X.basis.items()}
    diff = {}
    for k, mat in X.differential.items():
        j = 1 - k  # ∂^∨_j is the transpose of ∂_{1-j}
        diff[j] = mat.T.scale(-1 if j % 2 == 0 else 1)
    return BasedComplex(X.ring, basis, diff)


def tensor(X, Y):
    if X.ring != Y.ring:
        raise ValueError("ring mismatch")
    basis, where = {}, {}
    for p in X.degrees:
        for q in Y.degrees:
            lst = basis.setdefault(p + q, [])
            for i, x in enumerate(X.labels(p)):
                for j, y in enumerate(Y.labels(q)):
                    where[(p, i, q, j)] = len(lst)
                    lst.append((x, y))
    entries = {}
    for p in X.degrees:
        for q in Y.degrees:
            k = p + q
            sgn = -1 if p % 2 else 1
            dx = X.d(p).columns()
            dy = Y.d(q).columns()
            for i in range(X.dim(p)):
                for j in range(Y.dim(q)):
                    col = where[(p, i, q, j)]
                    tgt = entries.setdefault(k, {})
                    for i2, v in dx.get(i, {}).items():
                        key = (where[(p - 1, i2, q, j)], col)
                        tgt[key] = tgt.get(key, 0) + v
                    for j2, v in dy.get(j, {}).items():
                        key = (where[(p, i, q - 1, j2)], col)
                        tgt[key] = tgt.get(key, 0) + sgn * v
    diff = {k: SparseMatrix.from_dict((len(basis.get(k - 1, [])), len(basis[k])), e)
            for k, e in entries.items()}
    return BasedComplex(X.ring, basis, diff)


def hom_complex(X, Y):
    """Hom(X, Y): degree d = maps raising degree by d, δf = ∂f - (-1)^d f∂.

    The basis element (x, y) is the map sending x to y and other basis
    elements to zero.
    """
    if X.ring != Y.ring:
        raise ValueError("ring mismatch")
    basis, where = {}, {}
    for p in X.degrees:
        for q in Y.degrees:
            lst = basis.setdefault(q - p, [])
            for i, x in enumerate(X.labels(p)):
                for j, y in enumerate(Y.labels(q)):
                    where[(p, i, q, j)] = len(lst)
                    lst.append((x, y))
    entries = {}
    for p in X.degrees:
        dx_rows = {}
        for i2, c, v in X.d(p + 1).triples():  # ∂_X[x, x'] with x in degree p
            dx_rows.setdefault(i2, []).append((c, v))
        for q in Y.degrees:
            d = q - p
            sgn = -1 if d % 2 else 1
            dy = Y.d(q).columns()
            tgt = entries.setdefault(d, {})
            for i in range(X.dim(p)):
                for j in range(Y.dim(q)):
                    col = where[(p, i, q, j)]
                    for j2, v in dy.get(j, {}).items():
                        key = (where[(p, i, q - 1, j2)], col)
                        tgt[key] = tgt.get(key, 0) + v
                    for i2, v in dx_rows.get(i, ()):
                        key = (where[(p + 1, i2, q, j)], col)
                        tgt[key] = tgt.get(key, 0) - sgn * v
    diff = {d: SparseMatrix.from_dict((len(basis.get(d - 1, [])), len(basis[d])), e)
            for d, e in entries.items() if d in basis}
    return BasedComplex(X.ring, basis, diff)


def direct_sum(complexes):
    """Direct sum; labels become (summand index, label)."""
    ring = complexes[0].ring
    basis, offset = {}, {}
    for k, X in enumerate(complexes):
        for d in X.degrees:
            offset[(k, d)] = len(basis.get(d, []))
            basis.setdefault(d, []).extend((k, x) for x in X.labels(d))
    entries = {}
    for k, X in enumerate(complexes):
        for d, m in X.differential.items():
            r0, c0 = offset[(k, d - 1)], offset[(k, d)]
            for i, j, v in m.triples():
                entries.setdefault(d, {})[(i + r0, j + c0)] = v
    diff = {d: SparseMatrix.from_dict((len(basis.get(d - 1, [])), len(basis[d])), e)
            for d, e in entries.items()}
    return BasedComplex(ring, basis, diff)


def chain_map_residual(X, Y, maps, degree=0):
    """∂_Y f - (-1)^degree f ∂_X for per-degree matrices f_d: X_d -> Y_{d+degree}."""
    out = {}
    sgn = -1 if degree % 2 else 1
    for d in set(X.degrees) | {d + 1 for d in X.degrees}:
        f_d = maps.get(d, SparseMatrix((Y.dim(d + degree), X.dim(d))))
        f_dm = maps.get(d - 1, SparseMatrix((Y.dim(d - 1 + degree), X.dim(d - 1))))
        lhs = Y.d(d + degree) @ f_d
        rhs = f_dm @ X.d(d)
        r = lhs - rhs.scale(sgn)
        if X.ring.kind == "Fp":
            r = r.over(X.ring)
        if r.nnz:
            out[d] = r
    return out


def homology_class(X, d, z, ring=None):
    """Coordinates of the class of a cycle z (dense vector on degree d).

    Returns (orders, coords): H_d ≅ ⊕ Z/orders[i] (order 0 means free) and the
    coordinates of [z].  Intended for small complexes.
    """
    ring = ring or X.ring
    n = X.dim(d)
    if len(z) != n:
        raise ValueError("cycle has wrong length")
    dz = X.d(d).apply(list(z))
    if any(ring(v) != 0 for v in dz):
        raise ValueError("not a cycle")
    dout = X.d(d).to_dense() if X.dim(d - 1) else []
    din = X.d(d + 1).to_dense() if X.dim(d + 1) else [[] for _ in range(n)]
    if ring.kind == "Z":
        # kernel of ∂_d: trailing columns of V in U ∂ V = S
        if dout:
            S, U, V = smith_normal_form(dout, n)
            r = sum(1 for i in range(min(len(S), n)) if S[i][i])
        else:
            V, r = [[1 if i == j else 0 for j in range(n)] for i in range(n)], 0
        K = [row[r:] for row in V]
        kdim = n - r

        def kcoords(v):
            y = solve_linear([list(row) for row in V], list(v), QQ)
            return [int(y[r + k]) for k in range(kdim)]

        B = [kcoords([din[i][j] for i in range(n)]) for j in range(X.dim(d + 1))]
        Bk = [[B[j][k] for j in range(len(B))] for k in range(kdim)]
        if Bk and Bk[0]:
            S2, U2, _ = smith_normal_form(Bk)
            diag = [S2[i][i] if i < len(S2[0]) else 0 for i in range(kdim)]
        else:
            U2 = [[1 if i == j else 0 for j in range(kdim)] for i in range(kdim)]
            diag = [0] * kdim
        c = kcoords(z)
        w = [sum(u * x for u, x in zip(row, c)) for row in U2]
        orders, coords = [], []
        for s, x in zip(diag, w):
            if s == 1:
                continue
            orders.append(s)
            coords.append(x % s if s else x)
        return orders, coords
    # fields: complement of the boundaries inside the cycles
    from .snf import kernel_basis, row_echelon
    K = kernel_basis(dout, ring, n) if dout else [[ring(int(i == j)) for i in range(n)] for j in range(n)]
    Bcols = [[ring(din[i][j]) for i in range(n)] for j in range(X.dim(d + 1))]
    cols = Bcols + K
    M = [[col[i] for col in cols] for i in range(n)]
    _, piv = row_echelon(M, ring, len(cols)) if n else ([], [])
    H = [cols[p] for p in piv if p >= len(Bcols)]
    A = [[col[i] for col in Bcols + H] for i in range(n)]
    sol = solve_linear(A, [ring(x) for x in z], ring)
    coords = sol[len(Bcols):] if H else []
    return [0] * len(H), list(coords)
