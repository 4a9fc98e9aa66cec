"""E_1 data of the skeletal tower, the morphisms φ_c and their classification.

For P = B^c(D_n) and Q = C the tower of mapping spaces along the arity
filtration of P is only materialized through its E_1 page,
E_1^{st} = H_{t-s}(Hom_Σ(M(s), Q(s))).  Morphisms are built one arity at a
time by solving the defining equation δ(f) - φ_f·θ = 0 on generators.
"""
import json
from dataclasses import dataclass, field
from functools import lru_cache

from .enoperads import alternating, commutative_operad, en_operad, canonical_generators
from .homcore import GradedSummary, ZZ, homology, homology_class, solve_linear
from .koszul import cobar, cobar_en, dual_cooperad
from .operadcore.operad import SuspendedOperad, add_into
from .operadcore.quasifree import GeneratorMap, morphism_from_generator_map, tree_image
from .sigmaobj import coinvariants, dual_sigma, equivariant_hom, invariants, suspend


class ObstructionError(RuntimeError):
    """The arity-s equation for a morphism has no solution."""

    def __init__(self, arity, message=""):
        super().__init__(message or f"unsolvable obstruction in arity {arity}")
        self.arity = arity


def _restrict(summary, d):
    return GradedSummary({d: summary.rank(d)} if summary.rank(d) else {},
                         {d: summary.torsion_at(d)} if summary.torsion_at(d) else {})


# -- E_1 tables -------------------------------------------------------------------------

@dataclass
class E1Table:
    ring: object
    s_range: list
    t_max: int
    entries: dict = field(default_factory=dict)  # (s, t) -> GradedSummary in degree t-s

    def cell(self, s, t):
        return self.entries.get((s, t), GradedSummary())

    def rank(self, s, t):
        return self.cell(s, t).rank(t - s)

    def nonzero_cells(self):
        return sorted(k for k, v in self.entries.items() if not v.is_zero())

    def matches_lemma_pattern(self):
        """Rank one at (2,2) without torsion, zero in every other cell."""
        return (self.nonzero_cells() == [(2, 2)]
                and self.rank(2, 2) == 1 and not self.cell(2, 2).torsion_at(0))

    def to_json(self):
        return {"ring": self.ring.label, "s_range": list(self.s_range), "t_max": self.t_max,
                "entries": {f"{s},{t}": v.to_json() for (s, t), v in sorted(self.entries.items())}}

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True, indent=1)

    def rows(self):
        """Flat (s, t, degree, rank, torsion) rows."""
        return [(s, t, t - s, v.rank(t - s), list(v.torsion_at(t - s)))
                for (s, t), v in sorted(self.entries.items())]


def e1_table(P, Q, s_max, t_max=None, ring=None):
    """E_1^{st} = H_{t-s}(Hom_Σ(M(s), Q(s))) for 2 <= s <= s_max, s <= t <= t_max."""
    ring = ring or P.ring
    return e1_tables(P, Q, s_max, [ring], t_max)[ring]


def e1_tables(P, Q, s_max, rings, t_max=None):
    """E_1 tables over several rings; each Hom complex is built and reduced once."""
    complexes = {}
    for s in range(2, s_max + 1):
        if not (P.M.is_zero_at(s) or Q.underlying.is_zero_at(s)):
            complexes[s] = equivariant_hom(P.M, Q.underlying, s)
    out = {}
    for ring in rings:
        homs = {s: homology(X, ring=ring) if X is not None else GradedSummary()
                for s, X in ((s, complexes.get(s)) for s in range(2, s_max + 1))}
        top = t_max
        if top is None:
            top = max([s + max([d for d in h.support()] + [0]) for s, h in homs.items()] + [2])
        table = E1Table(ring, list(range(2, s_max + 1)), top)
        for s, h in homs.items():
            for t in range(s, top + 1):
                table.entries[(s, t)] = _restrict(h, t - s)
        out[ring] = table
    return out


@dataclass
class CoinvariantRow:
    s: int
    coinvariants: GradedSummary        # H_*(E_n(s)_Σ)
    dual_invariants: GradedSummary     # H_*((D_n(s)^∨)^Σ)
    twisted_coinvariants: GradedSummary  # H_*((Λ^n E_n(s))_Σ)
    vanishing_bound: int

    @property
    def agree(self):
        return self.dual_invariants == self.twisted_coinvariants

    @property
    def vanishes_above_bound(self):
        return all(d <= self.vanishing_bound for d in self.coinvariants.support())

    def e1_degree(self, t):
        """The degree of H_*(E_n(s)_Σ) that E_1^{st} is read from."""
        return t - self.s - 1


@dataclass
class CoinvariantTable:
    n: int
    ring: object
    rows: list

    @property
    def all_agree(self):
        return all(r.agree for r in self.rows)

    @property
    def vanishing_holds(self):
        return all(r.vanishes_above_bound for r in self.rows)

    def to_json(self):
        return {"n": self.n, "ring": self.ring.label,
                "rows": [{"s": r.s, "coinvariants": r.coinvariants.to_json(),
                          "dual_invariants": r.dual_invariants.to_json(),
                          "twisted_coinvariants": r.twisted_coinvariants.to_json(),
                          "agree": r.agree, "vanishes_above_bound": r.vanishes_above_bound}
                         for r in self.rows]}


def coinvariant_homology_table(n, s_max, ring=ZZ):
    """H_*(E_n(s)_Σ) for 2 <= s <= s_max, with the reindexing cross-check.

    The invariants of the dual of D_n(s) and the coinvariants of the
    sign-twisted shift Λ^n E_n(s) are computed by separate pipelines and must
    agree degreewise (the norm map identifies them for free actions).
    """
    return coinvariant_homology_tables(n, s_max, [ring])[ring]


def coinvariant_homology_tables(n, s_max, rings):
    """coinvariant_homology_table over several rings, sharing the reductions."""
    E = en_operad(n).underlying
    D = suspend(dual_sigma(E), -n)
    rows = {ring: [] for ring in rings}
    for s in range(2, s_max + 1):
        co = coinvariants(E, s)
        inv = invariants(dual_sigma(D), s)
        tw = coinvariants(suspend(E, n), s)
        for ring in rings:
            rows[ring].append(CoinvariantRow(s, homology(co, ring=ring), homology(inv, ring=ring),
                                             homology(tw, ring=ring), (n - 1) * (s - 1)))
    return {ring: CoinvariantTable(n, ring, rows[ring]) for ring in rings}


# -- morphisms φ_c ------------------------------------------------------------------------

@lru_cache(maxsize=16)
def _cobar(n, r_max):
    return cobar_en(n, r_max)


class PhiMap(GeneratorMap):
    """A generator map B^c(D_n) -> C with its provenance."""

    def __init__(self, images, ring, n, r_max, c=None):
        super().__init__(images, ring)
        self.n = n
        self.r_max = r_max
        self.c = c
        self.obstruction_cycles = {}
        self._result = None

    @property
    def source(self):
        return _cobar(self.n, self.r_max)

    @property
    def target(self):
        return commutative_operad(self.r_max, self.ring)

    def result(self):
        if self._result is None:
            self._result = morphism_from_generator_map(self.source, self.target, self)
        return self._result

    def to_json(self):
        from .homcore import label_to_json
        return {"n": self.n, "r_max": self.r_max, "ring": self.ring.label,
                "class_scalar": str(homotopy_class(self)),
                "arities": {str(k): [[label_to_json(x), {y: str(v) for y, v in im.items()}]
                                     for x, im in sorted(imgs.items(), key=lambda kv: repr(kv[0]))]
                            for k, imgs in sorted(self.images.items())}}


def _seed_labels(n):
    e, t = (1, 2), (2, 1)
    return alternating(e, n - 1), alternating(t, n - 1)


def build_phi(n, c, r_max, ring=ZZ):
    """Generator map f with f(λ^∨_{n-1}) = c·μ and zero residual up to r_max."""
    if r_max < 2:
        raise ValueError("r_max must be >= 2")
    c = ring(c)
    P = _cobar(n, r_max)
    a, b = _seed_labels(n)
    comp2 = P.M.component(2)
    if P.gens.deg(2, a) != 0:
        raise AssertionError("λ^∨ is expected in generator degree 0")
    s, b2 = comp2.act((2, 1), 0, a)
    assert b2 == b
    images = {2: {}}
    if c:
        images[2] = {a: {"c": c}, b: {"c": ring.normalize(s * c)}}
    f = PhiMap(images, ring, n, r_max, c)
    for k in range(3, r_max + 1):
        images[k] = _solve_arity(P, f, k, ring)
    return f


def _solve_arity(P, f, k, ring):
    comp = P.M.component(k)
    labels0 = comp.labels(0)
    if not labels0:
        return {}
    oid, sg, reps, cons = comp.orbits(0)
    # φ_f(θ x) for x in degree 1 (a degree -1 cochain: the obstruction)
    g = {}
    for x in comp.labels(1):
        val = {}
        for t, c in P.theta(k, x).items():
            add_into(val, tree_image(t, f, _target(f)), c)
        v = ring.normalize(val.get("c", 0))
        if v:
            g[x] = v
    # the obstruction is a cycle: g(δz) = 0 for z in degree 2
    ok = True
    for z in comp.labels(2):
        tot = sum(c * g.get(x, 0) for x, c in comp.complex.boundary_of(2, z).items())
        if ring.normalize(tot) != 0:
            ok = False
            break
    f.obstruction_cycles[k] = ok
    # f(δx) = -g(x) on the orbit representatives of degree 1 (equivariance does the rest)
    _, _, reps1, _ = comp.orbits(1)
    labels1 = comp.labels(1)
    index0 = {lab: j for j, lab in enumerate(labels0)}
    usable = [o for o in range(len(reps)) if cons[o] or ring.characteristic == 2]
    col = {o: j for j, o in enumerate(usable)}
    A, rhs = [], []
    for r in reps1:
        x = labels1[r]
        row = [0] * len(usable)
        for y, c in comp.complex.boundary_of(1, x).items():
            j = index0[y]
            o = int(oid[j])
            if o in col:
                row[col[o]] += c * int(sg[j])
        A.append([ring(v) for v in row])
        rhs.append(ring(-g.get(x, 0)))
    if not usable:
        if any(ring.normalize(v) for v in rhs):
            raise ObstructionError(k)
        return {}
    sol = solve_linear(A, rhs, ring) if A else [ring(0)] * len(usable)
    if sol is None:
        raise ObstructionError(k)
    out = {}
    for j, y in enumerate(labels0):
        o = int(oid[j])
        if o in col:
            v = ring.normalize(int(sg[j]) * sol[col[o]]) if ring.kind != "Q" else int(sg[j]) * sol[col[o]]
            if v:
                out[y] = {"c": v}
    return out


def _target(f):
    return commutative_operad(f.r_max, f.ring)


def zero_map(n, r_max, ring=ZZ):
    return PhiMap({k: {} for k in range(2, r_max + 1)}, ring, n, r_max, ring(0))


def homotopy_class(f):
    """The scalar c with f(λ^∨_{n-1}) = c·μ (requires a genuine morphism)."""
    res = f.result()
    if not res.passed:
        raise ValueError(f"not a morphism: nonzero residual in arity {res.first_nonzero_arity()}")
    a, _ = _seed_labels(f.n)
    return f.ring(f.image(2, a).get("c", 0))


def postcompose_rescaling(f, c):
    """ρ_c ∘ φ_f; raises ValueError when c is not in the coefficient ring."""
    c = f.ring(c)
    images = {k: {x: {y: f.ring.normalize(v * c ** (k - 1)) for y, v in im.items()}
                  for x, im in imgs.items()} for k, imgs in f.images.items()}
    images = {k: {x: im for x, im in imgs.items() if any(im.values())} for k, imgs in images.items()}
    return PhiMap(images, f.ring, f.n, f.r_max, None)


# -- transposition to L∞ ----------------------------------------------------------------

@lru_cache(maxsize=8)
def suspended_linfinity(r_max):
    """ΛL∞, presented as B^c(C^∨) (generators in degree -1, one per arity)."""
    return cobar(dual_cooperad(commutative_operad(r_max), 0, r_max), r_max)


@dataclass
class TransposeResult:
    n: int
    generator_map: GeneratorMap
    residuals: dict
    arity2_image: dict
    arity2_is_cycle: bool
    lambda_factor: int  # image = factor · λ_{n-1} (0 if not a multiple)

    @property
    def passed(self):
        return all(not v for v in self.residuals.values())


def transpose_to_linfinity_morphism(f, r_max=None):
    """The morphism ΛL∞ -> Λ^n E_n dual to f: B^c(D_n) -> C.

    The arity-r generator of ΛL∞ goes to Σ_x ε(x) f(x̄) x, the pairing of f
    with the basis of E_n(r), with the sign ε(x) = (-1)^{r + n(1-r)|x|}.
    """
    r_max = r_max or f.r_max
    res = f.result()
    if not res.passed:
        raise ValueError("input generator map is not a morphism")
    n = f.n
    L = suspended_linfinity(r_max)
    E = en_operad(n, r_max)
    target = SuspendedOperad(E, n)
    images = {}
    for r in range(2, r_max + 1):
        out = {}
        for x, im in f.images.get(r, {}).items():
            v = im.get("c", 0)
            if v:
                e = r + n * (1 - r) * E.degree(r, x)
                out[x] = v if e % 2 == 0 else -v
        images[r] = {"c": out} if out else {}
    g = GeneratorMap(images, f.ring)
    result = morphism_from_generator_map(L, target, g, r_max)
    img2 = g.image(2, "c")
    dimg = {}
    for x, v in img2.items():
        add_into(dimg, target.d_basis(2, x), v)
    lam = canonical_generators(n)["lambda"] if n > 1 else {(( 1, 2),): 1, ((2, 1),): -1}
    factor = 0
    if img2:
        x0 = next(iter(lam))
        k = img2.get(x0, 0) * lam[x0]
        if all(img2.get(x, 0) == k * lam[x] for x in lam) and set(img2) <= set(lam):
            factor = k
    return TransposeResult(n, g, result.residuals, img2, not {k: v for k, v in dimg.items() if v}, factor)


def transpose_back(result, n, r_max, ring=ZZ):
    """Undo transpose_to_linfinity_morphism: the generator map B^c(D_n) -> C
    whose arity-r values are the pairings of the ΛL∞ images, signs removed."""
    E = en_operad(n, r_max)
    images = {}
    for r in range(2, r_max + 1):
        out = {}
        for x, v in result.generator_map.image(r, "c").items():
            e = r + n * (1 - r) * E.degree(r, x)
            out[x] = {"c": v if e % 2 == 0 else -v}
        images[r] = out
    return PhiMap(images, ring, n, r_max)


# -- π_0 report -----------------------------------------------------------------------

CONCLUSION = "pi_0 = k; pi_i = * (i>0)"


def arity2_class(f, X=None):
    """Coordinates of [f|_{M(2)}] in H_0(Hom_Σ(M(2), C(2)))."""
    P = f.source
    ring = f.ring
    X = X or equivariant_hom(P.M, commutative_operad(2).underlying, 2)
    basis = X.labels(0)
    z = [ring(f.image(2, x).get("c", 0)) for x, _ in basis]
    return homology_class(X, 0, z, ring)[1]


class CobarGenerators:
    """The generator Σ*-object M = D_n~[-1] of B^c(D_n), without θ.

    Enough for E_1 tables at any s: only free orbit presentations are used.
    """

    def __init__(self, n):
        from .sigmaobj import above_arity, shift_sigma
        D = suspend(dual_sigma(en_operad(n).underlying), -n)
        self.n = n
        self.M = shift_sigma(above_arity(D, 1), -1)
        self.ring = ZZ


def pi_report(n, s_max, ring=ZZ, probes=None, phi_r_max=None):
    """E_1 table, hits of E_1^{2,2} by the φ_c and the resulting π_0 statement."""
    phi_r_max = phi_r_max or min(s_max, 4 if n <= 2 else 3)
    G = CobarGenerators(n)
    table = e1_table(G, commutative_operad(s_max, ring), s_max, ring=ring)
    X = equivariant_hom(G.M, commutative_operad(2).underlying, 2)
    H22 = homology(X, degrees=[0], ring=ring)
    gates = {"E1 pattern": table.matches_lemma_pattern()}
    if ring.kind == "Fp":
        probes = list(range(ring.p))
    elif probes is None:
        probes = list(range(-2, 4))
    hits = {}
    for c in probes:
        f = build_phi(n, c, phi_r_max, ring)
        hits[str(ring(c))] = (tuple(arity2_class(f, X)), f.result().passed, homotopy_class(f) == ring(c))
    if ring.kind == "Fp":
        classes = {h[0] for h in hits.values()}
        gates["every class of E1^{2,2} is hit"] = len(classes) == ring.p ** H22.rank(0)
    if ring.kind == "Q":
        gates["arity-2 restriction linear and injective in c"] = symbolic_linearity(n, phi_r_max)
    gates["residuals zero"] = all(h[1] for h in hits.values())
    gates["class scalar recovered"] = all(h[2] for h in hits.values())
    ok = all(gates.values())
    return {
        "n": n, "s_max": s_max, "ring": ring.label,
        "e1": table.to_json(),
        "e1_22_rank": H22.rank(0),
        "hits": {c: {"class": [str(v) for v in h[0]], "residual_zero": h[1], "class_scalar_ok": h[2]}
                 for c, h in hits.items()},
        "gates": gates,
        "passed": ok,
        "conclusion": CONCLUSION if ok else "inconclusive",
        "conditional_on": "the connectivity lemma for towers of fibrations (quoted, not re-proved)",
    }


def symbolic_linearity(n, r_max):
    """Over Q: the arity-2 part of build_phi(n, c) is c times a fixed nonzero
    class, and ρ_c∘φ_1 solves the arity-s equations for a formal c."""
    import sympy
    from .homcore import QQ
    c = sympy.Symbol("c")
    f1 = build_phi(n, 1, r_max, QQ)
    a, b = _seed_labels(n)
    base = f1.image(2, a).get("c", 0)
    if base == 0:
        return False
    fc = {k: {x: {y: sympy.Rational(v.numerator, v.denominator) * c ** (k - 1) for y, v in im.items()}
              for x, im in imgs.items()} for k, imgs in f1.images.items()}
    P = f1.source
    Q = commutative_operad(r_max)
    fmap = GeneratorMap(fc)
    for k in range(2, r_max + 1):
        for x in P.generator_labels(k):
            res = {}
            for y, v in fmap(k, x).items():
                add_into(res, Q.d_basis(k, y), v)
            for y, v in P.gens.boundary(k, x).items():
                add_into(res, fmap(k, y), -v)
            for t, v in P.theta(k, x).items():
                add_into(res, tree_image(t, fmap, Q), -v)
            if any(sympy.expand(v) != 0 for v in res.values()):
                return False
    # arity 2: f_c = c · f_1 exactly
    return all(sympy.expand(fc[2][x]["c"] - c * f1.image(2, x)["c"]) == 0 for x in fc.get(2, {}))
