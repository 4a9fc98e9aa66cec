"""Quasi-free operads (F(M), δ + ∂_θ), generator-determined morphisms, skeleta."""
from ..homcore import SparseMatrix
from ..sigmaobj import EquivariantMap, skeleton
from . import trees
from .free import FreeOperad
from .operad import Gate, VerificationReport, _GateRun, add_into


def _as_callable(theta):
    if theta is None:
        return lambda k, label: {}
    if isinstance(theta, EquivariantMap):
        return theta.image
    return theta


class QuasiFreeOperad(FreeOperad):
    """F(M) with differential δ + ∂_θ, θ: M -> F(M) of degree -1.

    theta(k, label) returns {tree of arity k: coef}; it may be an
    EquivariantMap or a plain callable (evaluated lazily and cached).
    """

    def __init__(self, M, r_max, theta=None, name=None, provenance=None):
        super().__init__(M, r_max, name)
        self._theta = _as_callable(theta)
        self._theta_cache = {}
        self.provenance = provenance
        self._free = None

    def theta(self, k, label):
        key = (k, label)
        hit = self._theta_cache.get(key)
        if hit is None:
            hit = self._theta_cache[key] = {t: c for t, c in self._theta(k, label).items() if c}
        return hit

    @property
    def free_part(self):
        """F(M) with its internal differential only."""
        if self._free is None:
            self._free = FreeOperad(self.M, self.r_max, f"F({self.M.name})")
        return self._free

    def theta_derivation(self, t):
        """∂_θ(t): θ applied vertex by vertex with Koszul signs."""
        def vmap(label, k):
            return [(c, ("tree", T)) for T, c in self.theta(k, label).items()]
        return trees.apply_vertex_map(t, vmap, -1, self.gens)

    def d_basis(self, r, t):
        out = dict(self.internal_d(t))
        add_into(out, self.theta_derivation(t))
        return out

    def generator_labels(self, k):
        return self.gens.labels(k)


def derivation_from_generator_map(P, theta, r_max=None):
    """Matrices of the derivation ∂_θ on the tree basis of the free operad P.

    Returns {arity: {degree d: SparseMatrix from degree d to d-1}}.
    """
    theta = _as_callable(theta)
    Q = QuasiFreeOperad(P.M, P.r_max, theta)
    out = {}
    for r in range(1, (r_max or P.r_max) + 1):
        tr = P.trees(r)
        mats = {}
        for d, v in tr.items():
            tgt = {t: j for j, t in enumerate(tr.get(d - 1, []))}
            ent = {}
            for j, t in enumerate(v):
                for u, c in Q.theta_derivation(t).items():
                    key = (tgt[u], j)
                    ent[key] = ent.get(key, 0) + c
            mats[d] = SparseMatrix.from_dict((len(tr.get(d - 1, [])), len(v)), ent)
        out[r] = mats
    return out


def _reduce(terms, ring):
    if ring.kind == "Z":
        return {k: v for k, v in terms.items() if v}
    return {k: ring(v) for k, v in terms.items() if ring(v) != 0}


def twisting_residual(P, k, label):
    """δ_F θ(x) + θ(δx) + ∂_θ θ(x) for one generator x of arity k."""
    th = P.theta(k, label)
    res = {}
    for t, c in th.items():
        add_into(res, P.internal_d(t), c)
        add_into(res, P.theta_derivation(t), c)
    for y, c in P.gens.boundary(k, label).items():
        add_into(res, P.theta(k, y), c)
    return _reduce(res, P.ring)


def check_twisting(P, square_zero=True):
    """Per-arity twisting equation δ(θ) + ∂_θ·θ = 0, and (δ + ∂_θ)² = 0.

    The report carries ``residuals[arity] = {generator: nonzero residual}``.
    """
    rep = VerificationReport(f"twisting of {P.name}")
    rep.residuals = {}
    for k in range(2, P.r_max + 1):
        g = _GateRun(f"twisting equation, arity {k}")
        bad = {}
        for x in P.generator_labels(k):
            res = twisting_residual(P, k, x)
            g.check(not res, (x, res))
            if res:
                bad[x] = res
        rep.residuals[k] = bad
        rep.gates.append(g.gate)
    if square_zero:
        for r in range(2, P.r_max + 1):
            cx = P.complex(r)
            bad = cx.check_square_zero()
            rep.gates.append(Gate(f"(δ + ∂_θ)² = 0, arity {r}", not bad, len(cx.degrees), bad or None))
    return rep


def check_filtration(P):
    """∂_θ(sk_s M) ⊂ F(sk_{s-1} M): θ of an arity-s generator only uses
    decorations of arity < s."""
    rep = VerificationReport(f"filtration of {P.name}")
    for s in range(2, P.r_max + 1):
        g = _GateRun(f"θ(M({s})) ⊂ F(sk_{s - 1} M)")
        for x in P.generator_labels(s):
            for t in P.theta(s, x):
                g.check(all(k < s for _, k in trees.vertices(t)), (x, t))
        rep.gates.append(g.gate)
    return rep


def theta_weights(P):
    """Set of tree weights occurring in θ up to the truncation."""
    out = set()
    for s in range(2, P.r_max + 1):
        for x in P.generator_labels(s):
            out.update(trees.weight(t) for t in P.theta(s, x))
    return out


def operad_skeleton(P, s):
    """sk_s P = (F(sk_s M), ∂_θ) as a quasi-free operad."""
    if s < 0:
        raise ValueError("skeleton index must be nonnegative")
    for k in range(2, min(s, P.r_max) + 1):
        for x in P.generator_labels(k):
            for t in P.theta(k, x):
                if any(a > s for _, a in trees.vertices(t)):
                    raise ValueError(f"θ does not restrict to sk_{s}: generator {x!r} of arity {k}")
    M = skeleton(P.M, s)
    return QuasiFreeOperad(M, P.r_max, lambda k, x: P.theta(k, x) if k <= s else {},
                           name=f"sk_{s}{P.name}", provenance=P.provenance)


# -- morphisms out of quasi-free operads ---------------------------------------------

class GeneratorMap(EquivariantMap):
    """Degree-0 map f: M -> Q on generators; images[k][label] = {Q label: coef}."""

    def __init__(self, images, ring=None):
        super().__init__(0, images)
        self.ring = ring

    def __call__(self, k, label):
        return self.image(k, label)

    def arities(self):
        return sorted(self.images)

    def scaled(self, factor):
        return GeneratorMap({k: {x: {y: factor(k) * v for y, v in im.items()} for x, im in imgs.items()}
                             for k, imgs in self.images.items()}, self.ring)


def tree_image(t, f, Q):
    """φ_f(t) in Q, as {Q label: coef}, composing left to right in planar order."""
    if trees.is_leaf(t):
        return {Q.unit_label: 1}
    value, _ = _planar_image(t, f, Q)
    if not value:
        return {}
    L = trees.leaves(t)
    sigma = tuple(L)
    if sigma == tuple(range(1, len(L) + 1)):
        return value
    out = {}
    for y, c in value.items():
        s, y2 = Q.act(sigma, y)
        add_into(out, {y2: s * c})
    return out


def _planar_image(t, f, Q):
    """(value, arity) with leaves numbered in the planar order of t."""
    if trees.is_leaf(t):
        return {Q.unit_label: 1}, 1
    label, ch = t
    k = len(ch)
    acc = dict(f(k, label))
    ar = k
    pos = 1
    for c in ch:
        if trees.is_leaf(c):
            pos += 1
            continue
        val, m = _planar_image(c, f, Q)
        nxt = {}
        for a, u in acc.items():
            for b, v in val.items():
                add_into(nxt, Q.compose_basis(ar, pos, m, a, b), u * v)
        acc = nxt
        ar += m - 1
        pos += m
        if not acc:
            return {}, ar
    return acc, ar


def morphism_residual(P, Q, f, k, label):
    """δ_Q f(x) − f(δ_M x) − φ_f(θ x) for one generator."""
    res = {}
    for y, c in f(k, label).items():
        add_into(res, Q.d_basis(k, y), c)
    for y, c in P.gens.boundary(k, label).items():
        add_into(res, f(k, y), -c)
    for t, c in P.theta(k, label).items():
        add_into(res, tree_image(t, f, Q), -c)
    return _reduce(res, Q.ring)


class MorphismResult:
    """φ_f together with its defining-equation residual per arity."""

    def __init__(self, P, Q, f, residuals):
        self.P, self.Q, self.f = P, Q, f
        self.residuals = residuals

    @property
    def passed(self):
        return all(not v for v in self.residuals.values())

    def __call__(self, r, t):
        return tree_image(t, self.f, self.Q)

    def first_nonzero_arity(self):
        return next((k for k in sorted(self.residuals) if self.residuals[k]), None)


def morphism_from_generator_map(P, Q, f, r_max=None):
    r_max = r_max or P.r_max
    if Q.r_max is not None and Q.r_max < r_max:
        raise ValueError(f"target truncated at arity {Q.r_max} < {r_max}")
    residuals = {}
    for k in range(2, r_max + 1):
        bad = {}
        for x in P.generator_labels(k):
            res = morphism_residual(P, Q, f, k, x)
            if res:
                bad[x] = res
        residuals[k] = bad
    return MorphismResult(P, Q, f, residuals)
