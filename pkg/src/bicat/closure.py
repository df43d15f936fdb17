"""Equality and enumeration of 2-cells by bounded congruence closure.

For a pair of parallel normal words ``f, g`` the *universe* is the set of all
canonical layer sequences from ``f`` to ``g`` with at most ``max_layers``
layers.  Classes are generated inside the universe by four local moves:
interchange of layers acting on disjoint parts of the word, substitution of
a whiskered 2-relation (either way round), cancellation of an atom against
its formal inverse, and 1-normalisation (built into canonical layers).
"""

from __future__ import annotations

from .errors import BoundaryError
from .finite import BOUNDED, EXACT, FAILS, HOLDS, UNKNOWN, FiniteCategory, Verdict, Witness
from .presentation import (DEFAULT_BOUNDS, Enumerated, Layer, OneCellWord, TwoCellTerm,
                           canonical_term, inverse_term, one_cells, term_str, vcompose,
                           word_str)


class UnionFind:
    def __init__(self):
        self.parent = {}

    def add(self, x):
        self.parent.setdefault(x, x)

    def find(self, x):
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra
        return ra != rb


def paths_from(P, word, n):
    """All layer sequences of length <= n starting at ``word``.

    Returns ``(by_target, truncated)`` where ``truncated`` records whether
    some path of length ``n`` could still be extended.
    """
    word = P.normalize(word)
    key = ("paths", word, n)
    hit = P._cache.get(key)
    if hit is not None:
        return hit
    by_target = {}
    truncated = False
    stack = [(word, ())]
    while stack:
        here, path = stack.pop()
        by_target.setdefault(here, []).append(path)
        outs = P.out_layers(here)
        if len(path) == n:
            if outs:
                truncated = True
            continue
        for layer, tgt in outs:
            stack.append((tgt, path + (layer,)))
    res = (by_target, truncated)
    P._cache[key] = res
    return res


def interchanges(P, l1, l2):
    """Ways to swap adjacent layers ``l1`` (first) and ``l2`` acting on
    disjoint parts of the word.  Returns a list of ``(l2', l1')`` pairs."""
    key = ("swap", l1, l2)
    hit = P._cache.get(key)
    if hit is not None:
        return hit
    s1, t1 = P.atom_boundary(l1.atom)
    s2, t2 = P.atom_boundary(l2.atom)
    n2 = len(s2.gens)
    out = set()
    # l2 acts inside the part applied after l1's atom
    for r in P.word_class(l1.post):
        objs = P.objects_along(r, t1.target)
        for k in range(len(r) - n2 + 1):
            if r[k:k + n2] != s2.gens or objs[k] != s2.source:
                continue
            u, v = r[:k], r[k + n2:]
            if P.nf(v) != l2.post or P.nf(l1.pre + t1.gens + u) != l2.pre:
                continue
            out.add((Layer(P.nf(l1.pre + s1.gens + u), l2.atom, l2.post),
                     Layer(l1.pre, l1.atom, P.nf(u + t2.gens + v))))
    # l2 acts inside the part applied before l1's atom
    start = P.layer_boundary(l1)[0].source
    for r in P.word_class(l1.pre):
        objs = P.objects_along(r, start)
        for k in range(len(r) - n2 + 1):
            if r[k:k + n2] != s2.gens or objs[k] != s2.source:
                continue
            u, v = r[:k], r[k + n2:]
            if P.nf(u) != l2.pre or P.nf(v + t1.gens + l1.post) != l2.post:
                continue
            out.add((Layer(l2.pre, l2.atom, P.nf(v + s1.gens + l1.post)),
                     Layer(P.nf(u + t2.gens + v), l1.atom, l1.post)))
    res = sorted(out, key=lambda pr: (P.layer_key(pr[0]), P.layer_key(pr[1])))
    P._cache[key] = res
    return res


def relation_instances(P, X, Y, b):
    """Whiskered 2-relations living in the hom from X to Y.

    Returns ``(index, exact)`` with ``index`` mapping a first layer to the
    list of ``(lhs, rhs)`` rewrites starting with that layer.
    """
    key = ("relinst", X, Y, b.max_word_length)
    hit = P._cache.get(key)
    if hit is not None:
        return hit
    index = {}
    exact = True
    for T1, T2 in P.two_relations:
        U, V = T1.source.source, T1.source.target
        pres = one_cells(P, X, U, b)
        posts = one_cells(P, V, Y, b)
        exact = exact and pres.exact and posts.exact
        for pre in pres:
            for post in posts:
                sides = []
                for T in (T1, T2):
                    sides.append(tuple(
                        Layer(P.nf(pre.gens + l.pre), l.atom, P.nf(l.post + post.gens))
                        for l in T.layers))
                for lhs, rhs in ((sides[0], sides[1]), (sides[1], sides[0])):
                    if lhs and lhs != rhs:
                        bucket = index.setdefault(lhs[0], [])
                        if (lhs, rhs) not in bucket:
                            bucket.append((lhs, rhs))
    res = (index, exact)
    P._cache[key] = res
    return res


SLACK = 2


def _instances_cover(P, universe, n):
    """Whether the bounded relation index already holds every instance a
    path of ``universe`` could use.

    With length-preserving 1-rules a whiskered instance matching a layer has
    whisker words no longer than that layer's, so layers whose whiskers fit
    in ``n`` letters are fully covered.
    """
    if any(len(l) != len(r) for l, r in P.rules):
        return False
    return all(len(l.pre) <= n and len(l.post) <= n for p in universe for l in p)


class HomClosure:
    """Congruence classes of the layer sequences from ``source`` to ``target``.

    Moves are explored in a universe ``SLACK`` layers longer than ``n`` so that
    an identification needing a brief detour (insert a relation layer, then
    cancel) is still found; classes and representatives are reported for the
    paths of length at most ``n``.
    """

    def __init__(self, P, source, target, n, b=DEFAULT_BOUNDS):
        self.P = P
        self.source = P.normalize(source)
        self.target = P.normalize(target)
        self.n = n
        wide = n + SLACK
        by_target, truncated = paths_from(P, self.source, wide)
        universe = set(by_target.get(self.target, []))
        index, inst_exact = relation_instances(P, self.source.source, self.source.target, b)
        if not inst_exact:
            inst_exact = _instances_cover(P, universe, b.max_word_length)
        self.saturated = not truncated and inst_exact
        uf = UnionFind()
        for p in universe:
            uf.add(p)
        steps = 0
        budget = max(b.max_rewrite_steps, 1) * (SLACK + 1)
        for p in sorted(universe, key=P.path_key):
            for q in self._neighbours(p, index):
                steps += 1
                if q in universe:
                    uf.union(p, q)
                elif len(q) > wide:
                    self.saturated = False
            if steps > budget:
                self.saturated = False
                break
        self.members = {p for p in universe if len(p) <= n}
        classes = {}
        for p in self.members:
            classes.setdefault(uf.find(p), []).append(p)
        self._rep = {}
        self.classes = []
        for cls in classes.values():
            cls.sort(key=P.path_key)
            for p in cls:
                self._rep[p] = cls[0]
            self.classes.append(cls)
        self.classes.sort(key=lambda c: P.path_key(c[0]))

    def _neighbours(self, p, index):
        P = self.P
        for i in range(len(p)):
            if i + 1 < len(p):
                a, b = p[i], p[i + 1]
                if b == Layer(a.pre, a.atom.inverted(), a.post):
                    yield p[:i] + p[i + 2:]
                for l2, l1 in interchanges(P, a, b):
                    yield p[:i] + (l2, l1) + p[i + 2:]
            for lhs, rhs in index.get(p[i], ()):
                if p[i:i + len(lhs)] == lhs:
                    yield p[:i] + rhs + p[i + len(lhs):]

    def rep(self, path):
        return self._rep.get(path)

    def class_of(self, path):
        r = self._rep.get(path)
        if r is None:
            return None
        for cls in self.classes:
            if cls[0] == r:
                return cls
        return None

    def representatives(self):
        return [cls[0] for cls in self.classes]


def hom_closure(P, source, target, b=DEFAULT_BOUNDS, n=None):
    n = b.max_layers if n is None else n
    source, target = P.normalize(source), P.normalize(target)
    key = ("closure", source, target, n, b)
    hit = P._cache.get(key)
    if hit is None:
        hit = HomClosure(P, source, target, n, b)
        P._cache[key] = hit
    return hit


def _path(P, t):
    return canonical_term(P, t).layers


def _term(P, source, target, path):
    return TwoCellTerm(P.normalize(source), P.normalize(target), tuple(path))


def class_rep(P, t, b=DEFAULT_BOUNDS):
    """Canonical representative of the class of ``t``."""
    t = canonical_term(P, t)
    base = hom_closure(P, t.source, t.target, b)
    r = base.rep(t.layers)
    if r is not None:
        return _term(P, t.source, t.target, r)
    big = hom_closure(P, t.source, t.target, b, n=len(t.layers))
    cls = big.class_of(t.layers) or [t.layers]
    inside = [base.rep(p) for p in cls if p in base.members]
    if inside:
        return _term(P, t.source, t.target, min(inside, key=P.path_key))
    return _term(P, t.source, t.target, cls[0])


def hom_exact(P, f, g, b=DEFAULT_BOUNDS):
    cl = hom_closure(P, f, g, b)
    return cl.saturated and P.is_acyclic_from(f.source)


def equal_two_cells(P, s, t, b=DEFAULT_BOUNDS):
    s, t = canonical_term(P, s), canonical_term(P, t)
    if (s.source, s.target) != (t.source, t.target):
        return Verdict(FAILS, EXACT, (Witness(
            "boundary", f"{s.source.gens}=>{s.target.gens} vs {t.source.gens}=>{t.target.gens}"),), b)
    n = max(b.max_layers, len(s), len(t))
    cl = hom_closure(P, s.source, s.target, b, n=n)
    if cl.rep(s.layers) == cl.rep(t.layers):
        return Verdict(HOLDS, EXACT, (), b)
    if cl.saturated:
        cert = EXACT if P.is_acyclic_from(s.source.source) else BOUNDED
        return Verdict(FAILS, cert, (Witness(
            "separated", f"{term_str(s)} and {term_str(t)} lie in distinct classes"),), b)
    return Verdict(UNKNOWN, BOUNDED, (Witness(
        "bound", f"no identification of {term_str(s)} and {term_str(t)} within the bound"),), b)


def two_cells(P, f, g, b=DEFAULT_BOUNDS):
    """Class representatives of 2-cells f => g."""
    f, g = P.normalize(f), P.normalize(g)
    if (f.source, f.target) != (g.source, g.target):
        raise BoundaryError(f"{f.gens} and {g.gens} are not parallel")
    key = ("two_cells", f, g, b)
    hit = P._cache.get(key)
    if hit is not None:
        return hit
    cl = hom_closure(P, f, g, b)
    res = Enumerated((_term(P, f, g, r) for r in cl.representatives()), hom_exact(P, f, g, b))
    P._cache[key] = res
    return res


def is_identity_class(P, t, b=DEFAULT_BOUNDS):
    t = canonical_term(P, t)
    if t.source != t.target:
        return False
    return class_rep(P, t, b).is_identity


def is_invertible(P, t, b=DEFAULT_BOUNDS):
    t = canonical_term(P, t)
    key = ("invertible", t, b)
    hit = P._cache.get(key)
    if hit is not None:
        return hit
    res = _is_invertible(P, t, b)
    P._cache[key] = res
    return res


def _is_invertible(P, t, b):
    if all(P.two_gen[l.atom.name].invertible for l in t.layers):
        return Verdict(HOLDS, EXACT, (), b)
    back = two_cells(P, t.target, t.source, b)
    for u in back:
        if is_identity_class(P, vcompose(P, u, t), b) and is_identity_class(P, vcompose(P, t, u), b):
            return Verdict(HOLDS, EXACT, (), b)
    sat = (hom_closure(P, t.target, t.source, b).saturated
           and hom_closure(P, t.source, t.source, b).saturated
           and hom_closure(P, t.target, t.target, b).saturated)
    wit = (Witness("no-inverse", f"no inverse for {term_str(t)} among {len(back)} candidates"),)
    if sat:
        cert = EXACT if P.is_acyclic_from(t.source.source) and back.exact else BOUNDED
        return Verdict(FAILS, cert, wit, b)
    return Verdict(UNKNOWN, BOUNDED, wit, b)


def hom_category(P, X, Y, b=DEFAULT_BOUNDS):
    """The hom-category from X to Y, with 2-cell class representatives as morphisms."""
    key = ("hom_category", X, Y, b)
    hit = P._cache.get(key)
    if hit is not None:
        return hit
    objs = one_cells(P, X, Y, b)
    exact = objs.exact
    morphisms = {}
    identities = {}
    for f in objs:
        for g in objs:
            cells = two_cells(P, f, g, b)
            exact = exact and cells.exact
            for c in cells:
                morphisms[c] = (f, g)
        identities[f] = TwoCellTerm(f, f, ())
    composition = {}
    for m1, (s1, t1) in morphisms.items():
        for m2, (s2, t2) in morphisms.items():
            if t1 == s2:
                composition[(m2, m1)] = class_rep(P, vcompose(P, m2, m1), b)
    labels = {m: term_str(m) for m in morphisms}
    cat = FiniteCategory(list(objs), morphisms, identities, composition, labels, exact,
                         {f: word_str(f) for f in objs})
    P._cache[key] = cat
    return cat
