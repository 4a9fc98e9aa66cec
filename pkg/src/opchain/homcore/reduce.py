"""Top-down sparse Gaussian elimination of a chain complex.

Eliminating a unit entry b = <∂τ, σ> removes the pair (τ, σ) and leaves a
chain-homotopy-equivalent complex (the classical reduction lemma).  The
boundary matrices are processed from the top degree down; rows pivoted in
∂_{d+1} are dead columns of ∂_d.  What survives is a small residual complex
whose boundaries contain no units of the ring.
"""
import heapq
from collections import defaultdict


def _unit_test(ring):
    if ring.kind == "Z":
        return lambda v: v == 1 or v == -1
    return lambda v: True  # every stored (nonzero) value is a unit


def eliminate(matrix, ring, dead_cols=()):
    """Eliminate unit pivots of one sparse matrix.

    Returns (pivot_rows, pivot_cols, residual) where residual maps a surviving
    column index to a {row: value} dict.
    """
    is_unit = _unit_test(ring)
    norm = ring.normalize
    dead = set(dead_cols)
    C = {}
    R = defaultdict(dict)
    for r_, c_, v in matrix.triples():
        if c_ in dead:
            continue
        v = norm(v)
        if v == 0:
            continue
        C.setdefault(c_, {})[r_] = v
        R[r_][c_] = v
    heap = [(len(cs), r_) for r_, cs in R.items() if cs]
    heapq.heapify(heap)
    prow, pcol = [], []
    while heap:
        k, r_ = heapq.heappop(heap)
        rr = R.get(r_)
        if not rr:
            continue
        if len(rr) != k:
            heapq.heappush(heap, (len(rr), r_))
            continue
        best = None
        for c_, v in rr.items():
            if is_unit(v):
                ln = len(C[c_])
                if best is None or ln < best[0]:
                    best = (ln, c_, v)
        if best is None:
            continue
        _, c_, b = best
        binv = ring.inv(b)
        pc = C.pop(c_)
        for x in pc:
            del R[x][c_]
        for k2, v2 in list(rr.items()):
            f = norm(v2 * binv)
            col = C[k2]
            for x, u in pc.items():
                nv = norm(col.get(x, 0) - f * u)
                if nv:
                    col[x] = nv
                    R[x][k2] = nv
                else:
                    col.pop(x, None)
                    R[x].pop(k2, None)
                if x != r_:
                    heapq.heappush(heap, (len(R[x]), x))
        del R[r_]
        prow.append(r_)
        pcol.append(c_)
    return prow, pcol, C


class Residual:
    """Residual complex after elimination, for degrees lo..hi.

    cells[d] lists surviving basis indices of degree d; matrices[d] is the
    residual ∂_d as a dict-of-columns over surviving indices (for lo..hi+1).
    """

    def __init__(self, ring, cells, matrices, lo, hi):
        self.ring = ring
        self.cells = cells
        self.matrices = matrices
        self.lo, self.hi = lo, hi

    def dense(self, d):
        """Residual ∂_d as a dense matrix (rows: cells[d-1] or all residual rows)."""
        mat = self.matrices.get(d, {})
        cols = self.cells.get(d)
        if cols is None:
            cols = sorted(mat)
        rows_keep = self.cells.get(d - 1)
        if rows_keep is None:
            rows_keep = sorted({x for j in cols for x in mat.get(j, {})})
        ridx = {x: i for i, x in enumerate(rows_keep)}
        out = [[0] * len(cols) for _ in rows_keep]
        for jj, j in enumerate(cols):
            for x, v in mat.get(j, {}).items():
                if x in ridx:
                    out[ridx[x]][jj] = v
        return out, len(cols)


def reduce_complex(dims, boundary, ring, lo, hi):
    """Reduce the complex for homology in degrees lo..hi.

    dims: degree -> dimension; boundary: degree d -> SparseMatrix ∂_d.
    """
    prows, pcols, res = {}, {}, {}
    dead = ()
    for d in range(hi + 1, lo - 1, -1):
        mat = boundary(d)
        if mat is None or dims.get(d, 0) == 0 or dims.get(d - 1, 0) == 0:
            prows[d - 1], pcols[d], res[d] = [], [], {}
            dead = ()
            continue
        pr, pc, C = eliminate(mat, ring, dead)
        prows[d - 1], pcols[d], res[d] = pr, pc, C
        dead = pr
    cells = {}
    for d in range(lo - 1, hi + 2):
        gone = set(prows.get(d, ())) | set(pcols.get(d, ()))
        if d == hi + 1 or d == lo - 1:
            # only needed as row/column index sets of the edge matrices
            cells[d] = None
            continue
        cells[d] = [i for i in range(dims.get(d, 0)) if i not in gone]
    return Residual(ring, cells, res, lo, hi)
