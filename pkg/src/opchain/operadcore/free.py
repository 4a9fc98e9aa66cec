"""Free operads on a Σ*-object, with canonical decorated trees as basis."""
from ..homcore import BasedComplex, SparseMatrix
from ..sigmaobj import ExplicitComponent, SigmaObject
from . import trees
from .operad import Operad, TruncationOverflow


class GeneratorData:
    """Degrees, actions and differentials of the decorations (labels of M)."""

    def __init__(self, M):
        self.M = M
        self._deg = {}

    def component(self, k):
        return self.M.component(k)

    def degrees_of(self, k):
        hit = self._deg.get(k)
        if hit is None:
            comp = self.M.component(k)
            hit = self._deg[k] = {lab: d for d in comp.degrees for lab in comp.labels(d)}
        return hit

    def deg(self, k, label):
        return self.degrees_of(k)[label]

    def act(self, sigma, label):
        k = len(sigma)
        return self.M.component(k).act(tuple(sigma), self.deg(k, label), label)

    def boundary(self, k, label):
        comp = self.M.component(k)
        return comp.complex.boundary_of(self.deg(k, label), label)

    def labels(self, k):
        comp = self.M.component(k)
        return [lab for d in comp.degrees for lab in comp.labels(d)]


def _tree_key(t):
    return (trees.weight(t), repr(t))


class FreeOperad(Operad):
    """F(M) truncated at arity r_max; basis elements are canonical trees."""

    unit_label = 1

    def __init__(self, M, r_max, name=None):
        for r in (0, 1):
            comp = M.component(r)
            if comp.complex.total_dim():
                raise ValueError(f"generators must vanish in arity {r}")
        self.M = M
        self.gens = GeneratorData(M)
        self.r_max = r_max
        self.ring = M.ring
        self.name = name or f"F({M.name})"
        self._trees = {}
        self._complex = {}
        self.underlying = SigmaObject(self._component, None, r_max, self.ring, self.name)

    # -- basis ---------------------------------------------------------------------
    def trees(self, r):
        """Canonical trees of arity r grouped by degree (sorted lists)."""
        if self.r_max is not None and r > self.r_max:
            raise TruncationOverflow(f"arity {r} exceeds truncation {self.r_max}")
        hit = self._trees.get(r)
        if hit is None:
            if r == 1:
                hit = {0: [1]}
            else:
                hit = {}
                for t in trees.enumerate_trees(tuple(range(1, r + 1)), self._decorations):
                    hit.setdefault(self.degree(r, t), []).append(t)
                for d in hit:
                    hit[d].sort(key=_tree_key)
            self._trees[r] = hit
        return hit

    def _decorations(self, k):
        if self.r_max is not None and k > self.r_max:
            return []
        return self.gens.labels(k)

    def basis(self, r):
        return [t for d in sorted(self.trees(r)) for t in self.trees(r)[d]]

    def weight_part(self, r, w):
        """Basis of F_w(M)(r)."""
        return [t for t in self.basis(r) if trees.weight(t) == w]

    # -- structure -----------------------------------------------------------------
    def degree(self, r, t):
        return trees.tree_degree(t, self.gens)

    def compose_basis(self, m, i, n, a, b):
        s, t = trees.graft(a, i, b, self.gens)
        return {t: s}

    def act(self, sigma, t):
        return trees.act(tuple(sigma), t, self.gens)

    def internal_d(self, t):
        """The differential induced by that of M (a derivation of degree -1)."""
        def vmap(label, k):
            return [(c, ("label", y)) for y, c in self.gens.boundary(k, label).items()]
        return trees.apply_vertex_map(t, vmap, -1, self.gens)

    def d_basis(self, r, t):
        return self.internal_d(t)

    # -- complexes -----------------------------------------------------------------
    def complex(self, r):
        """The arity-r component as a based complex (with this operad's ∂)."""
        hit = self._complex.get(r)
        if hit is None:
            hit = self._complex[r] = _tree_complex(self, r, self.d_basis)
        return hit

    def _component(self, r):
        if r < 1:
            return None
        return ExplicitComponent.from_action(r, self.complex(r), lambda s, d, t: self.act(s, t))

    def corolla(self, label, k):
        return trees.corolla(label, k)


def _tree_complex(P, r, dfun):
    tr = P.trees(r)
    index = {d: {t: j for j, t in enumerate(v)} for d, v in tr.items()}
    diff = {}
    for d, v in tr.items():
        if d - 1 not in tr:
            continue
        ent = {}
        tgt = index[d - 1]
        for j, t in enumerate(v):
            for u, c in dfun(r, t).items():
                key = (tgt[u], j)
                ent[key] = ent.get(key, 0) + c
        diff[d] = SparseMatrix.from_dict((len(tr[d - 1]), len(v)), ent)
    return BasedComplex(P.ring, tr, diff)


def free_operad(M, r_max):
    return FreeOperad(M, r_max)
