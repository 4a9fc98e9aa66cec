"""Smith normal form over Z and dense linear algebra over Z, Q and F_p.

Matrices here are small dense lists of python ints (or ring elements).
Pivots are chosen with minimal absolute value to keep entries small.
"""
from fractions import Fraction

from .rings import ZZ


def _copy(A):
    return [list(row) for row in A]


def _eye(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _shape(A, ncols=None):
    m = len(A)
    n = len(A[0]) if m else (ncols or 0)
    return m, n


def _nearest_quotient(a, b):
    q, r = divmod(a, b)
    # pick the quotient leaving the remainder of least absolute value
    if 2 * abs(r) > abs(b):
        q += 1 if (b > 0) == (r > 0) else -1
    return q


class _Work:
    """Matrix under row/column operations, optionally recording U and V."""

    def __init__(self, A, ncols=None, track=True):
        self.m, self.n = _shape(A, ncols)
        self.S = _copy(A)
        self.track = track
        self.U = _eye(self.m) if track else None
        self.V = _eye(self.n) if track else None

    def swap_rows(self, i, j):
        if i != j:
            self.S[i], self.S[j] = self.S[j], self.S[i]
            if self.track:
                self.U[i], self.U[j] = self.U[j], self.U[i]

    def swap_cols(self, i, j):
        if i != j:
            for row in self.S:
                row[i], row[j] = row[j], row[i]
            if self.track:
                for row in self.V:
                    row[i], row[j] = row[j], row[i]

    def add_row(self, src, dst, q):
        """row_dst += q * row_src"""
        if q:
            rs, rd = self.S[src], self.S[dst]
            for k in range(self.n):
                if rs[k]:
                    rd[k] += q * rs[k]
            if self.track:
                us, ud = self.U[src], self.U[dst]
                for k in range(self.m):
                    if us[k]:
                        ud[k] += q * us[k]

    def add_col(self, src, dst, q):
        if q:
            for row in self.S:
                if row[src]:
                    row[dst] += q * row[src]
            if self.track:
                for row in self.V:
                    if row[src]:
                        row[dst] += q * row[src]

    def negate_row(self, i):
        self.S[i] = [-x for x in self.S[i]]
        if self.track:
            self.U[i] = [-x for x in self.U[i]]


def _smith(A, ncols=None, track=True):
    W = _Work(A, ncols, track)
    m, n = W.m, W.n
    S = W.S
    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = S[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        W.swap_rows(t, best[1])
        W.swap_cols(t, best[2])
        while True:
            p = S[t][t]
            dirty = False
            for i in range(t + 1, m):
                if S[i][t]:
                    W.add_row(t, i, -_nearest_quotient(S[i][t], p))
                    if S[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if S[t][j]:
                    W.add_col(t, j, -_nearest_quotient(S[t][j], p))
                    if S[t][j]:
                        dirty = True
            if dirty:
                # move the smallest leftover of row/column t into the pivot
                cand = [(abs(S[i][t]), i, t) for i in range(t + 1, m) if S[i][t]]
                cand += [(abs(S[t][j]), t, j) for j in range(t + 1, n) if S[t][j]]
                _, i, j = min(cand)
                W.swap_rows(t, i)
                W.swap_cols(t, j)
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if S[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            W.add_row(bad, t, 1)
        if S[t][t] < 0:
            W.negate_row(t)
        t += 1
    return W


def smith_normal_form(A, ncols=None):
    """Return (S, U, V) with U·A·V = S diagonal, d_1 | d_2 | ..., U and V unimodular."""
    W = _smith([[int(x) for x in row] for row in A], ncols, track=True)
    return W.S, W.U, W.V


def invariant_factors(A, ncols=None):
    """Nonzero diagonal entries of the Smith normal form (ascending by divisibility)."""
    if not A or not A[0]:
        return []
    W = _smith([[int(x) for x in row] for row in A], ncols, track=False)
    return [W.S[i][i] for i in range(min(W.m, W.n)) if W.S[i][i]]


def matmul(A, B):
    n = len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [0] * n
        for k, a in enumerate(row):
            if a:
                bk = B[k]
                for j in range(n):
                    if bk[j]:
                        acc[j] += a * bk[j]
        out.append(acc)
    return out


def determinant(A):
    """Exact determinant by fraction-free (Bareiss) elimination."""
    M = _copy(A)
    n = len(M)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def row_echelon(A, ring, ncols=None):
    """Reduced row echelon form over a field. Returns (R, pivot_columns)."""
    M = [[ring(x) for x in row] for row in A]
    m, n = _shape(M, ncols)
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = ring.inv(M[r][c])
        M[r] = [ring.normalize(x * inv) for x in M[r]]
        for i in range(m):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [ring.normalize(a - f * b) for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return M, pivots


def rank(A, ring=ZZ, ncols=None):
    if not A:
        return 0
    if ring.kind == "Z":
        return len(invariant_factors(A, ncols))
    return len(row_echelon(A, ring, ncols)[1])


def solve_linear(A, b, ring=ZZ):
    """A solution x of A·x = b over the ring, or None when there is none.

    Over Z, integral solvability is decided through the Smith normal form.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    if len(b) != m:
        raise ValueError("shape mismatch between A and b")
    if n == 0:
        return [] if all(ring(x) == 0 for x in b) else None
    if ring.kind == "Z":
        S, U, V = smith_normal_form(A)
        Ub = [sum(u * int(x) for u, x in zip(row, b)) for row in U]
        y = [0] * n
        for i in range(m):
            d = S[i][i] if i < n else 0
            if d:
                if Ub[i] % d:
                    return None
                y[i] = Ub[i] // d
            elif Ub[i]:
                return None
        return [sum(V[i][j] * y[j] for j in range(n)) for i in range(n)]
    aug = [[ring(x) for x in row] + [ring(bi)] for row, bi in zip(A, b)]
    R, pivots = row_echelon(aug, ring)
    if n in pivots:
        return None
    x = [ring(0)] * n
    for row, c in zip(R, pivots):
        x[c] = row[n]
    return x


def kernel_basis(A, ring, ncols=None):
    """Basis of the right kernel over a field (list of vectors)."""
    m, n = _shape(A, ncols)
    if m == 0:
        return [[ring(1) if i == j else ring(0) for i in range(n)] for j in range(n)]
    R, pivots = row_echelon(A, ring, n)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [ring(0)] * n
        v[f] = ring(1)
        for row, c in zip(R, pivots):
            v[c] = ring.normalize(-row[f])
        basis.append(v)
    return basis


def as_fraction(x):
    return x if isinstance(x, Fraction) else Fraction(x)
