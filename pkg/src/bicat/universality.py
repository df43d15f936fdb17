"""Terminality in slices and limit predicates via post-composition."""

from __future__ import annotations

from dataclasses import dataclass, field

from .closure import class_rep, hom_category
from .diagram import (cone_text, enumerate_cones, enumerate_modifications,
                      identity_modification, postcompose_cone, postwhisker_modification,
                      vcompose_modifications, check_transformation)
from .errors import FlavorError, UnknownNameError
from .finite import (EXACT, FAILS, HOLDS, UNKNOWN, FiniteCategory, Verdict, Witness,
                     combine, verdict)
from .presentation import DEFAULT_BOUNDS, FLAVORS, term_str, word_str

ISO = "iso"
BI = "bi"
STRENGTHS = (ISO, BI)


class FunctorBetweenFiniteCategories:
    def __init__(self, source, target, object_map, morphism_map, complete=True, notes=()):
        self.source = source
        self.target = target
        self.object_map = dict(object_map)
        self.morphism_map = dict(morphism_map)
        self.complete = complete
        self.notes = tuple(notes)

    def check(self):
        """Violations of typing, identities or composition."""
        S, T = self.source, self.target
        bad = []
        for m, (s, t) in S.morphisms.items():
            img = self.morphism_map.get(m)
            if img is None or T.morphisms.get(img) != (self.object_map.get(s), self.object_map.get(t)):
                bad.append(("typing", m))
        for x in S.objects:
            if self.morphism_map.get(S.identities[x]) != T.identities.get(self.object_map.get(x)):
                bad.append(("identity", x))
        for (g, f), gf in S.composition.items():
            lhs = self.morphism_map.get(gf)
            fg, ff = self.morphism_map.get(g), self.morphism_map.get(f)
            if lhs != T.composition.get((fg, ff)):
                bad.append(("composition", g, f))
        return bad


@dataclass
class FunctorAnalysis:
    injective_on_objects: bool
    surjective_on_objects: bool
    faithful: bool
    full: bool
    essentially_surjective: bool
    witnesses: dict = field(default_factory=dict)

    @property
    def is_isomorphism(self):
        return self.injective_on_objects and self.surjective_on_objects and \
            self.faithful and self.full

    @property
    def is_equivalence(self):
        return self.full and self.faithful and self.essentially_surjective


def analyze_functor(Fc):
    S, T = Fc.source, Fc.target
    om, mm = Fc.object_map, Fc.morphism_map
    wit = {k: [] for k in ("injective_on_objects", "surjective_on_objects", "faithful",
                           "full", "essentially_surjective")}
    seen = {}
    for x in S.objects:
        y = om[x]
        if y in seen:
            wit["injective_on_objects"].append(
                f"{S.label_object(seen[y])} and {S.label_object(x)} both map to {T.label_object(y)}")
        else:
            seen[y] = x
    image = set(om.values())
    for y in T.objects:
        if y not in image:
            wit["surjective_on_objects"].append(f"{T.label_object(y)} is not in the image")
    for x in S.objects:
        for x2 in S.objects:
            hits = {}
            for m in S.hom(x, x2):
                img = mm[m]
                if img in hits:
                    wit["faithful"].append(f"{S.label(hits[img])} and {S.label(m)} both map to "
                                           f"{T.label(img)}")
                else:
                    hits[img] = m
            for n in T.hom(om[x], om[x2]):
                if n not in hits:
                    wit["full"].append(f"{T.label(n)} has no preimage")
    for y in T.objects:
        if y in image:
            continue
        if not any(T.is_iso(n) for z in image for n in T.hom(z, y)):
            wit["essentially_surjective"].append(
                f"{T.label_object(y)} is not isomorphic to any image")
    flags = {k: not v for k, v in wit.items()}
    return FunctorAnalysis(witnesses={k: v for k, v in wit.items() if v}, **flags)


def cone_category(F, X, flavor, b=DEFAULT_BOUNDS):
    """Cones ``Delta X => F`` of a flavor with modifications between them."""
    cones, exact = enumerate_cones(F, X, flavor, b)
    A = F.target
    keys = [c.key(b) for c in cones]
    morphisms, identities, labels, mods = {}, {}, {}, {}
    for n, mu in enumerate(cones):
        for m, nu in enumerate(cones):
            ms, ex = enumerate_modifications(mu, nu, b)
            exact = exact and ex
            for phi in ms:
                mid = (n, m, phi.key(b))
                morphisms[mid] = (keys[n], keys[m])
                labels[mid] = phi.text()
                mods[mid] = phi
        identities[keys[n]] = (n, n, identity_modification(mu).key(b))
    composition = {}
    for m1, (s1, t1) in morphisms.items():
        for m2, (s2, t2) in morphisms.items():
            if t1 != s2:
                continue
            comp = vcompose_modifications(mods[m2], mods[m1], b)
            composition[(m2, m1)] = (m1[0], m2[1], comp.key(b))
    cat = FiniteCategory(keys, morphisms, identities, composition, labels, exact,
                         {k: cone_text(c) for k, c in zip(keys, cones)})
    cat.cones = dict(zip(keys, cones))
    cat.modifications = mods
    return cat


def _as_flavor(lam, flavor, b):
    if flavor not in FLAVORS:
        raise FlavorError(f"unknown flavor {flavor!r}")
    if lam.flavor == flavor:
        return lam
    re = lam.with_flavor(flavor)
    v = check_transformation(re, b)
    if v.status != HOLDS:
        raise FlavorError(f"candidate is not a valid {flavor} cone")
    return re


def post_composition(F, lam, X, cone_flavor, b=DEFAULT_BOUNDS):
    """The functor ``A(X, L) -> Cones(Delta X, F)`` given by post-composition."""
    lam = _as_flavor(lam, cone_flavor, b)
    A = F.target
    L = lam.summit
    key = ("postcomp", F._key, lam.key(b), cone_flavor, X, b)
    hit = A._cache.get(key)
    if hit is not None:
        return hit
    S = hom_category(A, X, L, b)
    T = cone_category(F, X, cone_flavor, b)
    om, mm = {}, {}
    complete = True
    notes = []
    for f in S.objects:
        k = postcompose_cone(lam, f, b).key(b)
        if k in T.cones:
            om[f] = k
        else:
            complete = False
            notes.append(f"image of {word_str(f)} lies outside the enumerated cones")
    for m, (f, g) in S.morphisms.items():
        if f not in om or g not in om:
            continue
        phi = postwhisker_modification(lam, m, b)
        src, tgt = om[f], om[g]
        mid = None
        for cand, (s, t) in T.morphisms.items():
            if s == src and t == tgt and cand[2] == phi.key(b):
                mid = cand
                break
        if mid is None:
            complete = False
            notes.append(f"image of {term_str(m)} lies outside the enumerated modifications")
        else:
            mm[m] = mid
    res = FunctorBetweenFiniteCategories(S, T, om, mm, complete, notes)
    res.exact = S.exact and T.exact and complete
    A._cache[key] = res
    return res


def is_limit(F, lam, cone_flavor, strength=ISO, b=DEFAULT_BOUNDS):
    if strength not in STRENGTHS:
        raise ValueError(f"unknown strength {strength!r}")
    lam = _as_flavor(lam, cone_flavor, b)
    per_x = []
    for X in F.target.objects:
        Fc = post_composition(F, lam, X, cone_flavor, b)
        if not Fc.complete:
            per_x.append(Verdict(UNKNOWN, "bounded", tuple(
                Witness("bound", n) for n in Fc.notes), b))
            continue
        an = analyze_functor(Fc)
        if strength == ISO:
            flags = ("injective_on_objects", "surjective_on_objects", "faithful", "full")
        else:
            flags = ("full", "faithful", "essentially_surjective")
        wit = [Witness(k, f"at {X}: {w}") for k in flags for w in an.witnesses.get(k, ())]
        per_x.append(verdict(not wit, Fc.exact, wit, b))
    return combine(per_x, b)


def is_two_terminal(S, c):
    """Every hom into ``c`` has one object and only its identity."""
    c = S.index(c)
    per = []
    for a in range(len(S.objects)):
        hom = S.hom(a, c)
        src = cone_text(S.objects[a])
        cells, _ = S.one_cells(a, c)
        wit = []
        if len(hom.objects) == 0:
            wit.append(Witness("empty hom", f"no morphism {src} -> {cone_text(S.objects[c])}"))
        elif len(hom.objects) > 1:
            wit.append(Witness("extra morphisms",
                               f"{len(cells)} morphisms {src} -> {cone_text(S.objects[c])}: " +
                               ", ".join(x.text() for x in cells),
                               tuple(x.text(True) for x in cells)))
        extra = [m for m in hom.morphisms if m[2]]
        if extra:
            wit.append(Witness("extra 2-cells", f"non-identity 2-cells between morphisms from {src}: " +
                               ", ".join(hom.label(m) for m in extra)))
        per.append(verdict(not wit, S.exact and hom.exact, wit, S.bounds))
    return combine(per, S.bounds)


def is_bi_terminal(S, c):
    """Every hom into ``c`` is nonempty with exactly one morphism between each pair."""
    c = S.index(c)
    per = []
    for a in range(len(S.objects)):
        hom = S.hom(a, c)
        src = cone_text(S.objects[a])
        cells, _ = S.one_cells(a, c)
        wit = []
        if not hom.objects:
            wit.append(Witness("empty hom", f"no morphism {src} -> {cone_text(S.objects[c])}"))
        for x in hom.objects:
            for y in hom.objects:
                n = len(hom.hom(x, y))
                if n != 1:
                    wit.append(Witness("hom size", f"{n} 2-cells {cells[x].text()} => "
                                       f"{cells[y].text()} from {src}",
                                       (cells[x].text(True), cells[y].text(True))))
        per.append(verdict(not wit, S.exact and hom.exact, wit, S.bounds))
    return combine(per, S.bounds)
