"""Operads given by partial compositions on basis labels, and their axioms."""
from dataclasses import dataclass, field

from ..homcore import ZZ
from ..perms import all_perms, identity, substitute, transposition
from ..sigmaobj import ExplicitComponent, SigmaObject


class TruncationOverflow(ValueError):
    """A composite would exceed the arity truncation of the operad."""


class Element:
    """A homogeneous-arity linear combination of basis labels."""

    __slots__ = ("arity", "terms")

    def __init__(self, arity, terms=None):
        self.arity = arity
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def basis(cls, arity, label, coef=1):
        return cls(arity, {label: coef})

    def __add__(self, other):
        if self.arity != other.arity:
            raise ValueError("arity mismatch")
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return Element(self.arity, out)

    def __neg__(self):
        return Element(self.arity, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, c):
        return Element(self.arity, {k: c * v for k, v in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, Element) and self.arity == other.arity and self.terms == other.terms

    def __hash__(self):
        return hash((self.arity, frozenset(self.terms.items())))

    def is_zero(self):
        return not self.terms

    def over(self, ring):
        return Element(self.arity, {k: ring(v) for k, v in self.terms.items() if ring(v) != 0})

    def __repr__(self):
        return f"Element(arity={self.arity}, {self.terms})"


def add_into(acc, terms, scale=1):
    for k, v in terms.items():
        nv = acc.get(k, 0) + scale * v
        if nv:
            acc[k] = nv
        else:
            acc.pop(k, None)
    return acc


class Operad:
    """Base class: subclasses supply degree, compose_basis and the action.

    Compositions are degree-0 chain maps P(m) ⊗ P(n) -> P(m+n-1) given on basis
    labels; elements of arity 1 include the unit label.
    """

    name = "operad"
    ring = ZZ
    r_max = None
    unit_label = None

    def degree(self, r, label):
        raise NotImplementedError

    def compose_basis(self, m, i, n, a, b):
        raise NotImplementedError

    def act(self, sigma, label):
        comp = self.underlying.component(len(sigma))
        return comp.act(tuple(sigma), self.degree(len(sigma), label), label)

    def d_basis(self, r, label):
        comp = self.underlying.component(r)
        return comp.complex.boundary_of(self.degree(r, label), label)

    def basis(self, r):
        comp = self.underlying.component(r)
        return [lab for d in comp.degrees for lab in comp.labels(d)]

    def unit(self):
        return Element.basis(1, self.unit_label)

    def check_basis(self, r):
        """Basis labels used by unit and ∂² gates (operads with huge free
        components may return orbit representatives instead)."""
        return self.basis(r)

    def free_check_component(self, r):
        """A free orbit presentation of the arity-r component, offered when the
        explicit basis is too large for label-by-label checks (else None)."""
        return None

    # -- element level -----------------------------------------------------------
    def compose(self, p, i, q):
        return partial_compose(self, p, i, q)

    def act_element(self, sigma, p):
        out = {}
        for lab, v in p.terms.items():
            s, lab2 = self.act(sigma, lab)
            add_into(out, {lab2: s * v})
        return Element(p.arity, out)

    def d_element(self, p):
        out = {}
        for lab, v in p.terms.items():
            add_into(out, self.d_basis(p.arity, lab), v)
        return Element(p.arity, out)


def partial_compose(P, p, i, q):
    """p ∘_i q for Elements p, q of the operad P."""
    if not 1 <= i <= p.arity:
        raise IndexError(f"slot {i} out of range for arity {p.arity}")
    r = p.arity + q.arity - 1
    if P.r_max is not None and r > P.r_max:
        raise TruncationOverflow(f"arity {r} exceeds truncation {P.r_max}")
    out = {}
    for a, u in p.terms.items():
        for b, v in q.terms.items():
            add_into(out, P.compose_basis(p.arity, i, q.arity, a, b), u * v)
    return Element(r, out)


def _reduce(terms, ring):
    if ring.kind == "Z":
        return {k: v for k, v in terms.items() if v}
    return {k: ring(v) for k, v in terms.items() if ring(v) != 0}


# -- suspension ------------------------------------------------------------------

class SuspendedOperad(Operad):
    """Λⁿ P = End_{k[n]} ⊗ P (arity-wise Hadamard product), on the labels of P."""

    def __init__(self, P, n):
        from ..sigmaobj import suspend
        self.P = P
        self.n = n
        self.ring = P.ring
        self.r_max = P.r_max
        self.unit_label = P.unit_label
        self.name = f"Λ^{n}{P.name}"
        self.underlying = suspend(P.underlying, n) if hasattr(P, "underlying") else None

    def degree(self, r, label):
        return self.P.degree(r, label) + self.n * (1 - r)

    def compose_basis(self, m, i, k, a, b):
        n = self.n
        e = self.P.degree(m, a) * n * (1 - k) + n * (k - 1) * (i - 1)
        s = -1 if e % 2 else 1
        res = self.P.compose_basis(m, i, k, a, b)
        return res if s == 1 else {x: -v for x, v in res.items()}

    def act(self, sigma, label):
        s, lab = self.P.act(sigma, label)
        if self.n % 2:
            from ..perms import sign
            s *= sign(sigma)
        return s, lab

    def d_basis(self, r, label):
        res = self.P.d_basis(r, label)
        if (self.n * (1 - r)) % 2:
            return {x: -v for x, v in res.items()}
        return res

    def basis(self, r):
        return self.P.basis(r)

    def check_basis(self, r):
        return self.P.check_basis(r)

    def free_check_component(self, r):
        fc = self.P.free_check_component(r)
        return None if fc is None else fc.suspended(self.n)


class UnitOperad(Operad):
    """The operad I: the unit line in arity 1, zero elsewhere."""

    name = "I"
    unit_label = "1"

    def __init__(self, ring=ZZ):
        from ..homcore import BasedComplex
        self.ring = ring
        one = ExplicitComponent(1, BasedComplex(ring, {0: ["1"]}), [])
        self.underlying = SigmaObject(lambda r: one if r == 1 else None, None, None, ring, "I")

    def degree(self, r, label):
        return 0

    def compose_basis(self, m, i, n, a, b):
        return {"1": 1} if m == 1 and n == 1 else {}

    def act(self, sigma, label):
        return 1, label

    def d_basis(self, r, label):
        return {}

    def basis(self, r):
        return ["1"] if r == 1 else []


# -- axiom checking -------------------------------------------------------------------

@dataclass
class Gate:
    name: str
    passed: bool
    checked: int = 0
    counterexample: object = None

    def to_json(self):
        return {"gate": self.name, "passed": self.passed, "checked": self.checked,
                "counterexample": None if self.counterexample is None else repr(self.counterexample)}


@dataclass
class VerificationReport:
    subject: str
    gates: list = field(default_factory=list)

    @property
    def passed(self):
        return all(g.passed for g in self.gates)

    def gate(self, name):
        return next(g for g in self.gates if g.name == name)

    def to_json(self):
        return {"subject": self.subject, "passed": self.passed, "gates": [g.to_json() for g in self.gates]}

    def lines(self):
        return [f"{'PASS' if g.passed else 'FAIL'}  {g.name} ({g.checked} checks)"
                + ("" if g.passed else f"  first counterexample: {g.counterexample!r}")
                for g in self.gates]


class _GateRun:
    def __init__(self, name):
        self.gate = Gate(name, True)

    def check(self, ok, witness):
        self.gate.checked += 1
        if not ok and self.gate.passed:
            self.gate.passed = False
            self.gate.counterexample = witness


def _eq(x, y, ring):
    return _reduce(x, ring) == _reduce(y, ring)


def _compose_terms(P, m, i, n, terms_a, terms_b):
    out = {}
    for a, u in terms_a.items():
        for b, v in terms_b.items():
            add_into(out, P.compose_basis(m, i, n, a, b), u * v)
    return out


def check_operad(P, r_max, ring=None, full_group=False):
    """Exhaustive check of unit, associativity, equivariance and chain-map axioms.

    Every basis pair/triple whose composite has arity <= r_max is checked.
    Equivariance is checked on the adjacent transpositions (which generate
    Σ_r, the action itself being a group action) unless full_group is set;
    compositions with the unit are covered by the unit gate.
    """
    ring = ring or P.ring
    rep = VerificationReport(P.name)
    top = r_max
    basis = {r: list(P.basis(r)) for r in range(1, top)}
    basis[top] = list(P.check_basis(top))
    deg = {r: {lab: P.degree(r, lab) for lab in basis[r]} for r in basis}
    unit = P.unit_label

    g = _GateRun("unit")
    for m in range(1, top + 1):
        for a in basis[m]:
            for i in range(1, m + 1):
                g.check(_eq(P.compose_basis(m, i, 1, a, unit), {a: 1}, ring), ("p∘_i 1", m, i, a))
            g.check(_eq(P.compose_basis(1, 1, m, unit, a), {a: 1}, ring), ("1∘_1 p", m, a))
    rep.gates.append(g.gate)

    g = _GateRun("associativity (sequential)")
    gp = _GateRun("associativity (parallel)")
    for m in range(2, top + 1):
        for n in range(2, top + 2 - m):
            for k in range(2, top + 3 - m - n):
                for a in basis[m]:
                    for b in basis[n]:
                        for i in range(1, m + 1):
                            ab = P.compose_basis(m, i, n, a, b)
                            for c in basis[k]:
                                for j in range(i, i + n):
                                    lhs = _compose_terms(P, m + n - 1, j, k, ab, {c: 1})
                                    bc = P.compose_basis(n, j - i + 1, k, b, c)
                                    rhs = _compose_terms(P, m, i, n + k - 1, {a: 1}, bc)
                                    g.check(_eq(lhs, rhs, ring), ("seq", a, i, b, j, c))
                                for j in range(i + 1, m + 1):
                                    lhs = _compose_terms(P, m + n - 1, j + n - 1, k, ab, {c: 1})
                                    ac = P.compose_basis(m, j, k, a, c)
                                    rhs = _compose_terms(P, m + k - 1, i, n, ac, {b: 1})
                                    s = -1 if (deg[n][b] * deg[k][c]) % 2 else 1
                                    gp.check(_eq(lhs, {x: s * v for x, v in rhs.items()}, ring),
                                             ("par", a, i, b, j, c))
    rep.gates.append(g.gate)
    rep.gates.append(gp.gate)

    g = _GateRun("equivariance")
    for m in range(2, top + 1):
        for n in range(2, top + 2 - m):
            gm = all_perms(m) if full_group else [transposition(m, t) for t in range(1, m)]
            gn = all_perms(n) if full_group else [transposition(n, t) for t in range(1, n)]
            for a in basis[m]:
                for b in basis[n]:
                    for i in range(1, m + 1):
                        ab = P.compose_basis(m, i, n, a, b)
                        for s in gm:
                            sa, a2 = P.act(s, a)
                            lhs = {x: sa * v for x, v in P.compose_basis(m, s[i - 1], n, a2, b).items()}
                            rhs = _act_terms(P, substitute(s, s[i - 1], identity(n)), ab)
                            g.check(_eq(lhs, rhs, ring), ("σ·p", s, a, i, b))
                        for t in gn:
                            sb, b2 = P.act(t, b)
                            lhs = {x: sb * v for x, v in P.compose_basis(m, i, n, a, b2).items()}
                            rhs = _act_terms(P, substitute(identity(m), i, t), ab)
                            g.check(_eq(lhs, rhs, ring), ("τ·q", t, a, i, b))
    rep.gates.append(g.gate)

    g = _GateRun("composition is a chain map")
    cap = getattr(P, "degree_cap", None)
    g.check(not _reduce(P.d_basis(1, unit), ring), ("d(unit)", unit))
    for m in range(2, top + 1):
        for n in range(2, top + 2 - m):
            for a in basis[m]:
                da = P.d_basis(m, a)
                for b in basis[n]:
                    if cap is not None and deg[m][a] + deg[n][b] > cap:
                        continue  # the composite is cut off by the degree truncation
                    db = P.d_basis(n, b)
                    s = -1 if deg[m][a] % 2 else 1
                    for i in range(1, m + 1):
                        lhs = {}
                        for x, v in P.compose_basis(m, i, n, a, b).items():
                            add_into(lhs, P.d_basis(m + n - 1, x), v)
                        rhs = _compose_terms(P, m, i, n, da, {b: 1})
                        add_into(rhs, _compose_terms(P, m, i, n, {a: 1}, db), s)
                        g.check(_eq(lhs, rhs, ring), ("d(p∘q)", a, i, b))
    rep.gates.append(g.gate)

    g = _GateRun("∂² = 0")
    for r in range(1, top + 1):
        fc = P.free_check_component(r)
        if fc is not None:
            bad = fc.square_zero_defect()
            g.gate.checked += sum(fc.n_reps(d) for d in fc.degrees) - 1
            g.check(bad is None, ("∂² on orbit representative (degree, index)", bad))
            continue
        for a in basis[r]:
            dd = {}
            for x, v in P.d_basis(r, a).items():
                add_into(dd, P.d_basis(r, x), v)
            g.check(not _reduce(dd, ring), ("∂²", a))
    rep.gates.append(g.gate)
    return rep


def _act_terms(P, sigma, terms):
    out = {}
    for x, v in terms.items():
        s, y = P.act(sigma, x)
        add_into(out, {y: s * v})
    return out


def check_morphism(P, Q, phi, r_max, ring=None):
    """phi(r, label) -> {Q label: coef}; checks compositions, action, differential."""
    ring = ring or Q.ring
    rep = VerificationReport(f"{P.name} -> {Q.name}")
    g = _GateRun("preserves compositions")
    ge = _GateRun("equivariant")
    gd = _GateRun("chain map")

    def phi_terms(r, terms):
        out = {}
        for x, v in terms.items():
            add_into(out, phi(r, x), v)
        return out

    for m in range(1, r_max + 1):
        for a in P.basis(m):
            da = P.d_basis(m, a)
            lhs = phi_terms(m, da)
            rhs = {}
            for y, v in phi(m, a).items():
                add_into(rhs, Q.d_basis(m, y), v)
            gd.check(_eq(lhs, rhs, ring), ("d", a))
            for s in all_perms(m):
                sa, a2 = P.act(s, a)
                lhs = {y: sa * v for y, v in phi(m, a2).items()}
                rhs = _act_terms(Q, s, phi(m, a))
                ge.check(_eq(lhs, rhs, ring), ("σ", s, a))
            for n in range(1, r_max + 2 - m):
                for b in P.basis(n):
                    for i in range(1, m + 1):
                        lhs = phi_terms(m + n - 1, P.compose_basis(m, i, n, a, b))
                        rhs = _compose_terms(Q, m, i, n, phi(m, a), phi(n, b))
                        g.check(_eq(lhs, rhs, ring), ("∘", a, i, b))
    rep.gates += [g.gate, ge.gate, gd.gate]
    return rep
