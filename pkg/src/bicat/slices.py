"""Slice 2-categories of cones for a (cone flavor, morphism flavor) pair.

A 1-cell ``(X, mu) -> (Y, nu)`` is a pair ``(f, phi)`` with ``f: X -> Y`` and
``phi: nu.Delta(f) => mu`` a modification: an identity for strict morphisms,
invertible for pseudo, arbitrary for lax.  A 2-cell ``(f, phi) => (g, psi)``
is a 2-cell ``alpha: f => g`` with ``psi_i (nu_i * alpha) = phi_i``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .closure import class_rep, equal_two_cells, is_invertible, two_cells
from .diagram import (Modification, cone_text, enumerate_all_cones, enumerate_modifications,
                      identity_modification, postcompose_cone)
from .errors import FlavorError, UnknownNameError
from .finite import EXACT, HOLDS, FiniteCategory
from .presentation import (DEFAULT_BOUNDS, FLAVORS, LAX, PSEUDO, STRICT, OneCellWord,
                           TwoCellTerm, one_cells, term_str, vcompose, whisker, word_str)


@dataclass(frozen=True)
class SliceOneCell:
    source: int
    target: int
    f: OneCellWord
    phi: Modification
    flavor: str

    def text(self, unicode=False):
        if self.flavor == STRICT:
            return word_str(self.f, unicode)
        return f"({word_str(self.f, unicode)}, {self.phi.text(unicode)})"

    def key(self, b=DEFAULT_BOUNDS):
        return (self.source, self.target, self.f.gens, self.phi.key(b))


@dataclass(frozen=True)
class SliceTwoCell:
    source: int
    target: int
    alpha: TwoCellTerm

    def text(self, unicode=False):
        return term_str(self.alpha, unicode)


class SliceTwoCategory:
    """Cones over ``F`` of one flavor with slice morphisms of another.

    Homs are built on demand and memoised.
    """

    def __init__(self, F, cone_flavor, morphism_flavor, b=DEFAULT_BOUNDS):
        for fl in (cone_flavor, morphism_flavor):
            if fl not in FLAVORS:
                raise FlavorError(f"unknown flavor {fl!r}")
        self.F = F
        self.A = F.target
        self.cone_flavor = cone_flavor
        self.morphism_flavor = morphism_flavor
        self.bounds = b
        cones, exact = enumerate_all_cones(F, cone_flavor, b)
        self.objects = list(cones)
        self._exact = exact
        self._index = {c.key(b): n for n, c in enumerate(self.objects)}
        self._one = {}
        self._two = {}
        self._hom = {}

    def __repr__(self):
        return (f"SliceTwoCategory({self.cone_flavor} cones, {self.morphism_flavor} morphisms, "
                f"{len(self.objects)} objects)")

    @property
    def exact(self):
        return self._exact

    def index(self, cone):
        if isinstance(cone, int):
            if not 0 <= cone < len(self.objects):
                raise UnknownNameError(f"no object {cone}")
            return cone
        n = self._index.get(cone.key(self.bounds))
        if n is None:
            raise UnknownNameError(f"cone {cone_text(cone)} is not an object of this slice")
        return n

    def one_cells(self, a, c):
        a, c = self.index(a), self.index(c)
        hit = self._one.get((a, c))
        if hit is not None:
            return hit
        b, A = self.bounds, self.A
        mu, nu = self.objects[a], self.objects[c]
        words = one_cells(A, mu.summit, nu.summit, b)
        exact = words.exact
        out = []
        for f in words:
            pc = postcompose_cone(nu, f, b)
            if self.morphism_flavor == STRICT:
                if pc.key(b) == mu.key(b):
                    out.append(SliceOneCell(a, c, f, identity_modification(mu), STRICT))
                continue
            mods, ex = enumerate_modifications(pc, mu, b)
            exact = exact and ex
            for phi in mods:
                if self.morphism_flavor == PSEUDO:
                    vs = [is_invertible(A, t, b) for t in phi.components.values()]
                    if any(v.certificate != EXACT for v in vs):
                        exact = False
                    if not all(v.status == HOLDS for v in vs):
                        continue
                out.append(SliceOneCell(a, c, f, phi, self.morphism_flavor))
        res = (tuple(out), exact)
        self._one[(a, c)] = res
        return res

    def two_cells(self, s, t):
        """2-cells between two parallel slice 1-cells."""
        key = (s.key(self.bounds), t.key(self.bounds))
        hit = self._two.get(key)
        if hit is not None:
            return hit
        b, A = self.bounds, self.A
        nu = self.objects[s.target]
        cells = two_cells(A, s.f, t.f, b)
        exact = cells.exact
        out = []
        for alpha in cells:
            ok = True
            for i, w in nu.components.items():
                lhs = vcompose(A, t.phi.components[i], whisker(A, w, alpha, None))
                v = equal_two_cells(A, lhs, s.phi.components[i], b)
                if v.certificate != EXACT:
                    exact = False
                if v.status != HOLDS:
                    ok = False
                    break
            if ok:
                out.append(SliceTwoCell(s.source, s.target, alpha))
        res = (tuple(out), exact)
        self._two[key] = res
        return res

    def compose_one(self, t, s):
        """``t . s`` for ``s: a -> c`` and ``t: c -> d``: ``(g f, phi_i (psi_i * f))``."""
        b, A = self.bounds, self.A
        g, f = t.f, s.f
        gf = A.normalize(OneCellWord(f.source, g.target, f.gens + g.gens))
        comps = {i: class_rep(A, vcompose(A, s.phi.components[i],
                                          whisker(A, None, t.phi.components[i], f)), b)
                 for i in s.phi.components}
        src = postcompose_cone(self.objects[t.target], gf, b)
        return SliceOneCell(s.source, t.target, gf,
                            Modification(src, self.objects[s.source], comps), s.flavor)

    def find_one(self, cell):
        cells, _ = self.one_cells(cell.source, cell.target)
        k = cell.key(self.bounds)
        for n, c in enumerate(cells):
            if c.key(self.bounds) == k:
                return n
        return None

    def hom(self, a, c):
        """The hom-category: slice 1-cells and slice 2-cells."""
        a, c = self.index(a), self.index(c)
        hit = self._hom.get((a, c))
        if hit is not None:
            return hit
        b, A = self.bounds, self.A
        cells, exact = self.one_cells(a, c)
        morphisms, identities, labels = {}, {}, {}
        for n, s in enumerate(cells):
            for m, t in enumerate(cells):
                if s.f.source != t.f.source:
                    continue
                twos, ex = self.two_cells(s, t)
                exact = exact and ex
                for cell in twos:
                    mid = (n, m, cell.alpha.layers)
                    morphisms[mid] = (n, m)
                    labels[mid] = cell.text()
            identities[n] = (n, n, ())
        composition = {}
        for (n1, m1, l1), _ in morphisms.items():
            for (n2, m2, l2), _ in morphisms.items():
                if m1 != n2:
                    continue
                f, g, h = cells[n1].f, cells[m1].f, cells[m2].f
                comp = class_rep(A, vcompose(A, TwoCellTerm(g, h, l2), TwoCellTerm(f, g, l1)), b)
                composition[((n2, m2, l2), (n1, m1, l1))] = (n1, m2, comp.layers)
        cat = FiniteCategory(list(range(len(cells))), morphisms, identities, composition,
                             labels, exact)
        self._hom[(a, c)] = cat
        return cat

    def to_dict(self, unicode=False):
        objs = [cone_text(c, unicode) for c in self.objects]
        ones, twos = [], []
        exact = self.exact
        for a in range(len(self.objects)):
            for c in range(len(self.objects)):
                cells, ex = self.one_cells(a, c)
                exact = exact and ex
                for n, s in enumerate(cells):
                    ones.append({"source": a, "target": c, "index": n, "f": word_str(s.f, unicode),
                                 "modification": [term_str(s.phi.components[i], unicode)
                                                  for i in self.F.source.objects]})
                if cells:
                    hom = self.hom(a, c)
                    exact = exact and hom.exact
                    for mid, (n, m) in hom.morphisms.items():
                        twos.append({"source": a, "target": c, "from": n, "to": m,
                                     "alpha": hom.label(mid)})
        return {"cone_flavor": self.cone_flavor, "morphism_flavor": self.morphism_flavor,
                "objects": objs, "one_cells": ones, "two_cells": twos,
                "certificate": "exact" if exact else "bounded"}


def build_slice(F, cone_flavor, morphism_flavor, b=DEFAULT_BOUNDS):
    key = ("slice", F._key, cone_flavor, morphism_flavor, b)
    hit = F.target._cache.get(key)
    if hit is None:
        hit = SliceTwoCategory(F, cone_flavor, morphism_flavor, b)
        F.target._cache[key] = hit
    return hit


def slice_hom(S, a, c):
    return S.hom(a, c)
