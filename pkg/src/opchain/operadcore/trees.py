"""Decorated trees: the basis of a free operad.

A tree is either a leaf (a positive int, its label) or a vertex
``(decoration, children)`` where ``children`` is a tuple of trees.  Input j of
the decoration is wired to ``children[j-1]``.  The canonical form sorts the
children of every vertex by their smallest leaf.

A tree stands for the tensor of its decorations read in preorder, so every
reordering of decorations carries a Koszul sign.  Functions that need the
degree or the symmetric-group action of a decoration take a ``gens`` object
with ``deg(k, label)`` and ``act(sigma, label) -> (sign, label)``.
"""
import itertools
from functools import lru_cache


def is_leaf(t):
    return isinstance(t, int)


def leaves(t):
    """Leaf labels in planar (left-to-right) order."""
    if is_leaf(t):
        return [t]
    out = []
    for c in t[1]:
        out.extend(leaves(c))
    return out


def arity(t):
    return 1 if is_leaf(t) else sum(arity(c) for c in t[1])


def min_leaf(t):
    while not is_leaf(t):
        t = t[1][0]
    return t


def weight(t):
    """Number of internal vertices."""
    return 0 if is_leaf(t) else 1 + sum(weight(c) for c in t[1])


def vertices(t):
    """(decoration, arity) of each vertex in preorder."""
    if is_leaf(t):
        return []
    out = [(t[0], len(t[1]))]
    for c in t[1]:
        out.extend(vertices(c))
    return out


def tree_degree(t, gens):
    return sum(gens.deg(k, x) for x, k in vertices(t))


def is_canonical(t):
    if is_leaf(t):
        return True
    mins = [min_leaf(c) for c in t[1]]
    return mins == sorted(mins) and all(is_canonical(c) for c in t[1])


def relabel(t, f):
    """Apply f to every leaf (no re-canonicalization)."""
    if is_leaf(t):
        return f(t)
    return (t[0], tuple(relabel(c, f) for c in t[1]))


def corolla(label, k):
    return (label, tuple(range(1, k + 1)))


def koszul_sign(degrees, order):
    """Sign of reading blocks of the given degrees in the order ``order``
    (a permutation of their indices) instead of 0, 1, 2, ...."""
    e = 0
    for a in range(len(order)):
        for b in range(a + 1, len(order)):
            if order[a] > order[b]:
                e += degrees[order[a]] * degrees[order[b]]
    return -1 if e % 2 else 1


def canonicalize(t, gens):
    """(sign, canonical tree) equal to t in the free operad."""
    if is_leaf(t):
        return 1, t
    label, ch = t
    sign = 1
    kids, degs = [], []
    for c in ch:
        s, c2 = canonicalize(c, gens)
        sign *= s
        kids.append(c2)
        degs.append(tree_degree(c2, gens))
    order = sorted(range(len(kids)), key=lambda j: min_leaf(kids[j]))
    if order == list(range(len(kids))):
        return sign, (label, tuple(kids))
    # child j moves to position pos[j]; the decoration is acted on accordingly
    pos = [0] * len(order)
    for newpos, j in enumerate(order):
        pos[j] = newpos + 1
    sign *= koszul_sign(degs, order)
    s, label2 = gens.act(tuple(pos), label)
    return sign * s, (label2, tuple(kids[j] for j in order))


def act(sigma, t, gens):
    """σ·t: leaf l becomes σ(l), then re-canonicalize."""
    return canonicalize(relabel(t, lambda l: sigma[l - 1]), gens)


def graft(p, i, q, gens):
    """p ∘_i q on canonical trees, as (sign, canonical tree)."""
    nq = arity(q)
    if is_leaf(q):
        return 1, p
    if is_leaf(p):
        return 1, q
    dq = tree_degree(q, gens)
    after = [0]  # total degree of p-vertices following leaf i in preorder
    seen = [False]

    def walk(node):
        if is_leaf(node):
            if node == i:
                seen[0] = True
                return relabel(q, lambda l: l + i - 1)
            return node if node < i else node + nq - 1
        label, ch = node
        if seen[0]:
            after[0] += gens.deg(len(ch), label)
        return (label, tuple(walk(c) for c in ch))

    out = walk(p)
    sign = -1 if (dq * after[0]) % 2 else 1
    return sign, out


def plug(tp, children, gens):
    """Substitute children[l-1] for leaf l of tp.

    The reference reading order is [decorations of tp][children[0]]...; the
    result is read in preorder, and the sign converts between the two.
    Returns (sign, tree); canonical when tp and the children are and the
    children are listed by increasing smallest leaf.
    """
    cdeg = [tree_degree(c, gens) for c in children]
    total = tree_degree(tp, gens)
    emitted = [0]  # degree of tp decorations emitted so far
    order = []
    e = [0]

    def walk(node):
        if is_leaf(node):
            order.append(node - 1)
            e[0] += cdeg[node - 1] * (total - emitted[0])
            return children[node - 1]
        label, ch = node
        emitted[0] += gens.deg(len(ch), label)
        return (label, tuple(walk(c) for c in ch))

    out = walk(tp)
    sign = (-1 if e[0] % 2 else 1) * koszul_sign(cdeg, order)
    return sign, out


def apply_vertex_map(t, vmap, map_degree, gens):
    """Extend a map on decorations to t as a derivation.

    vmap(label, k) returns [(coef, replacement)] where a replacement is either
    a decoration of the same arity (tagged ("label", x)) or a tree on leaves
    1..k (tagged ("tree", T)).  The sign (-1)^{map_degree · deg(before)}
    accounts for the decorations preceding the vertex in preorder.
    Returns {tree: coef}.
    """
    out = {}

    def add(tree, c):
        v = out.get(tree, 0) + c
        if v:
            out[tree] = v
        else:
            out.pop(tree, None)

    def rec(node, before, wrap):
        if is_leaf(node):
            return
        label, ch = node
        s0 = -1 if (map_degree * before) % 2 else 1
        for c, (kind, rep) in vmap(label, len(ch)):
            if kind == "label":
                add(wrap((rep, ch)), s0 * c)
            else:
                s, new = plug(rep, ch, gens)
                add(wrap(new), s0 * s * c)
        acc = before + gens.deg(len(ch), label)
        for j, child in enumerate(ch):
            def wrap_j(new, j=j):
                return wrap((label, ch[:j] + (new,) + ch[j + 1:]))
            rec(child, acc, wrap_j)
            acc += tree_degree(child, gens)

    rec(t, 0, lambda x: x)
    return out


@lru_cache(maxsize=None)
def set_partitions(S):
    """Partitions of the tuple S into blocks, blocks ordered by smallest element."""
    if not S:
        return ((),)
    first, rest = S[0], S[1:]
    out = []
    for k in range(len(rest) + 1):
        for sub in itertools.combinations(rest, k):
            remaining = tuple(x for x in rest if x not in sub)
            for p in set_partitions(remaining):
                out.append(((first,) + sub,) + p)
    return tuple(out)


def enumerate_trees(S, decorations):
    """All canonical trees with leaf set S (a sorted tuple).

    decorations(k) lists the labels of arity-k generators.
    """
    if len(S) == 1:
        return [S[0]]
    out = []
    for part in set_partitions(tuple(S)):
        if len(part) < 2:
            continue
        labs = decorations(len(part))
        if not labs:
            continue
        subtrees = [enumerate_trees(b, decorations) for b in part]
        for kids in itertools.product(*subtrees):
            for x in labs:
                out.append((x, tuple(kids)))
    return out

