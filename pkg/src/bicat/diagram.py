"""2-functors, transformations of the three strengths, and modifications.

Transformations are stored on generators only.  For a 1-generator
``u: i -> j`` of the index presentation the component ``mu_u`` is a 2-cell
``G(u) . mu_i => mu_j . F(u)``; components at composite words follow from
the extension law ``mu_{vu} = (mu_v * Fu)(Gv * mu_u)``.
"""

from __future__ import annotations

from itertools import product

from .closure import class_rep, equal_two_cells, is_invertible, two_cells
from .errors import BoundaryError, FlavorError, UnknownNameError
from .finite import EXACT, FAILS, HOLDS, Verdict, Witness, combine, verdict
from .presentation import (DEFAULT_BOUNDS, FLAVORS, LAX, PSEUDO, STRICT, Bounds,
                           OneCellWord, TwoCellTerm, canonical_term, identity_term,
                           inverse_term, one_cells, term_str, vcompose, vcompose_all,
                           whisker, word_str)


class TwoFunctor:
    """A strict 2-functor given on generators."""

    def __init__(self, name, source, target, objects, one_cells, two_cells=None):
        self.name = name
        self.source = source
        self.target = target
        self.objects = dict(objects)
        self.one_cells = {k: target.normalize(v) for k, v in one_cells.items()}
        self.two_cells = {k: canonical_term(target, v) for k, v in (two_cells or {}).items()}
        missing = [o for o in source.objects if o not in self.objects] + \
            [g.name for g in source.one_generators if g.name not in self.one_cells] + \
            [g.name for g in source.two_generators if g.name not in self.two_cells]
        if missing:
            raise UnknownNameError(f"functor {name}: no assignment for {missing}")
        self.apex = None
        self._key = (name, source.signature(), target.signature(),
                     tuple(sorted(self.objects.items())),
                     tuple(sorted(self.one_cells.items(), key=lambda kv: kv[0])),
                     tuple(sorted(self.two_cells.items(), key=lambda kv: kv[0])))

    def __repr__(self):
        return f"TwoFunctor({self.name!r}: {self.source.name} -> {self.target.name})"

    def __eq__(self, other):
        return isinstance(other, TwoFunctor) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def map_word(self, w):
        A = self.target
        start = self.objects[w.source]
        gens = ()
        for g in w.gens:
            gens += self.one_cells[g].gens
        end = self.objects[w.target]
        return A.normalize(OneCellWord(start, end, gens))

    def _map_atom(self, atom):
        t = self.two_cells[atom.name]
        return inverse_term(self.target, t) if atom.inverse else t

    def map_term(self, t):
        A, I = self.target, self.source
        out = identity_term(A, self.map_word(t.source))
        for l in t.layers:
            s, _ = I.atom_boundary(l.atom)
            pre = I.word(l.pre, s.source) if l.pre else None
            post = I.word(l.post, s.target) if l.post else None
            img = whisker(A, self.map_word(post) if post else None, self._map_atom(l.atom),
                          self.map_word(pre) if pre else None)
            out = vcompose(A, img, out)
        return out


def constant_functor(I, A, X):
    if X not in A.objects:
        raise UnknownNameError(f"unknown object {X!r}")
    D = TwoFunctor(f"Delta_{X}", I, A, {o: X for o in I.objects},
                   {g.name: A.identity_word(X) for g in I.one_generators},
                   {g.name: identity_term(A, A.identity_word(X)) for g in I.two_generators})
    D.apex = X
    return D


def check_functor(F, b=DEFAULT_BOUNDS):
    I, A = F.source, F.target
    bad = []
    for o, img in F.objects.items():
        if img not in A.objects:
            bad.append(Witness("object", f"{o} maps to unknown object {img}"))
    for g in I.one_generators:
        w = F.one_cells[g.name]
        if (w.source, w.target) != (F.objects[g.source], F.objects[g.target]):
            bad.append(Witness("boundary", f"{g.name} maps to {word_str(w)}: "
                               f"{w.source} -> {w.target}, expected "
                               f"{F.objects[g.source]} -> {F.objects[g.target]}"))
    if bad:
        return verdict(False, True, bad, b)
    for g in I.two_generators:
        t = F.two_cells[g.name]
        want = (F.map_word(g.source), F.map_word(g.target))
        if (t.source, t.target) != want:
            bad.append(Witness("boundary", f"{g.name} maps to {term_str(t)} with wrong boundary"))
    for lhs, rhs in I.one_relations:
        if F.map_word(lhs) != F.map_word(rhs):
            bad.append(Witness("relation", f"{word_str(lhs)} = {word_str(rhs)} not preserved"))
    if bad:
        return verdict(False, True, bad, b)
    checks = [equal_two_cells(A, F.map_term(l), F.map_term(r), b) for l, r in I.two_relations]
    return combine(checks, b)


class Transformation:
    """A strict, pseudo or lax transformation ``F => G`` given on generators."""

    def __init__(self, flavor, source, target, components, morphisms=None, name=None):
        if flavor not in FLAVORS:
            raise FlavorError(f"unknown flavor {flavor!r}")
        if source.source is not target.source and source.source != target.source:
            raise BoundaryError("transformation between functors on different index categories")
        self.flavor = flavor
        self.source = source
        self.target = target
        self.name = name
        A = target.target
        self.components = {i: A.normalize(w) for i, w in components.items()}
        missing = [i for i in source.source.objects if i not in self.components]
        if missing:
            raise UnknownNameError(f"no component at {missing}")
        morphisms = dict(morphisms or {})
        self.morphisms = {}
        for g in source.source.one_generators:
            if g.name in morphisms:
                self.morphisms[g.name] = canonical_term(A, morphisms[g.name])
            else:
                src, tgt = self.naturality_boundary(g.name)
                if src != tgt:
                    raise BoundaryError(f"no component at 1-cell {g.name} and the square "
                                        f"{word_str(src)} / {word_str(tgt)} does not commute")
                self.morphisms[g.name] = TwoCellTerm(src, src, ())
        for k, t in self.morphisms.items():
            if (t.source, t.target) != self.naturality_boundary(k):
                s, e = self.naturality_boundary(k)
                raise BoundaryError(f"component at {k} should go {word_str(s)} => {word_str(e)}")

    def __repr__(self):
        return f"Transformation({self.flavor}, {self.source.name} => {self.target.name})"

    @property
    def summit(self):
        return self.source.apex

    def naturality_boundary(self, gen):
        I, A = self.source.source, self.target.target
        g = I.one_gen[gen]
        Fu, Gu = self.source.one_cells[gen], self.target.one_cells[gen]
        mi, mj = self.components[g.source], self.components[g.target]
        src = A.normalize(OneCellWord(mi.source, Gu.target, mi.gens + Gu.gens))
        tgt = A.normalize(OneCellWord(Fu.source, mj.target, Fu.gens + mj.gens))
        return src, tgt

    def with_flavor(self, flavor):
        return Transformation(flavor, self.source, self.target, self.components,
                              self.morphisms, self.name)

    def key(self, b=DEFAULT_BOUNDS):
        A = self.target.target
        return (self.summit, tuple(sorted((i, w.gens) for i, w in self.components.items())),
                tuple(sorted((k, class_rep(A, t, b).layers) for k, t in self.morphisms.items())))

    def __eq__(self, other):
        return isinstance(other, Transformation) and self.source == other.source and \
            self.target == other.target and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())


Cone = Transformation


def make_cone(F, summit, components, morphisms=None, flavor=STRICT, name=None):
    return Transformation(flavor, constant_functor(F.source, F.target, summit), F,
                          components, morphisms, name)


def component_at(mu, w):
    """Component of ``mu`` at a word of the index presentation."""
    I, A = mu.source.source, mu.target.target
    I.check_word(w)
    start = mu.components[w.source]
    out = identity_term(A, start)
    src_word = I.identity_word(w.source)
    for g in w.gens:
        gen = I.one_gen[g]
        Gv = mu.target.one_cells[g]
        Fu = mu.source.map_word(src_word)
        step1 = whisker(A, Gv, out, None)
        step2 = whisker(A, None, mu.morphisms[g], Fu)
        out = vcompose(A, step2, step1)
        src_word = OneCellWord(w.source, gen.target, src_word.gens + (g,))
    return out


def check_transformation(mu, b=DEFAULT_BOUNDS):
    I, A = mu.source.source, mu.target.target
    checks = []
    for g in I.one_generators:
        t = mu.morphisms[g.name]
        if mu.flavor == STRICT:
            if not t.is_identity and not equal_two_cells(A, t, identity_term(A, t.source), b):
                checks.append(verdict(False, True, [Witness(
                    "non-identity", f"component at {g.name} is {term_str(t)}, not an identity")], b))
        elif mu.flavor == PSEUDO:
            v = is_invertible(A, t, b)
            if v.status == FAILS:
                v = Verdict(FAILS, v.certificate, (Witness(
                    "non-invertible", f"component at {g.name} is {term_str(t)}, not invertible"),), b)
            checks.append(v)
    for lhs, rhs in I.one_relations:
        checks.append(equal_two_cells(A, component_at(mu, lhs), component_at(mu, rhs), b))
    for beta in I.two_generators:
        checks.append(_two_cell_condition(mu, beta, b))
    return combine(checks, b)


def _two_cell_condition(mu, beta, b):
    """mu_w' (G beta * mu_i) = (mu_j * F beta) mu_w for beta: w => w'."""
    A = mu.target.target
    i, j = beta.source.source, beta.source.target
    left = vcompose(A, component_at(mu, beta.target),
                    whisker(A, None, mu.target.two_cells[beta.name], mu.components[i]))
    right = vcompose(A, whisker(A, mu.components[j], mu.source.two_cells[beta.name], None),
                     component_at(mu, beta.source))
    v = equal_two_cells(A, left, right, b)
    if v.status == FAILS:
        return Verdict(FAILS, v.certificate, (Witness(
            "2-cell condition", f"condition at {beta.name} fails"),), b)
    return v


class Modification:
    """Components ``phi_i: mu_i => nu_i`` between parallel transformations."""

    def __init__(self, source, target, components):
        if source.source != target.source or source.target != target.target:
            raise BoundaryError("modification between non-parallel transformations")
        self.source = source
        self.target = target
        A = source.target.target
        self.components = {i: canonical_term(A, t) for i, t in components.items()}
        for i, t in self.components.items():
            if (t.source, t.target) != (source.components[i], target.components[i]):
                raise BoundaryError(f"modification component at {i} has the wrong boundary")

    def __repr__(self):
        return "Modification(" + ", ".join(term_str(t) for t in self.components.values()) + ")"

    def key(self, b=DEFAULT_BOUNDS):
        A = self.source.target.target
        return tuple(sorted((i, class_rep(A, t, b).layers) for i, t in self.components.items()))

    def is_identity(self, b=DEFAULT_BOUNDS):
        return all(not layers for _, layers in self.key(b))

    def text(self, unicode=False):
        return "(" + ", ".join(term_str(self.components[i], unicode)
                               for i in self.source.source.source.objects) + ")"


def identity_modification(mu):
    A = mu.target.target
    return Modification(mu, mu, {i: identity_term(A, w) for i, w in mu.components.items()})


def vcompose_modifications(psi, phi, b=DEFAULT_BOUNDS):
    """``psi . phi`` with ``phi`` first."""
    A = phi.source.target.target
    return Modification(phi.source, psi.target, {
        i: class_rep(A, vcompose(A, psi.components[i], phi.components[i]), b)
        for i in phi.components})


def check_modification(phi, b=DEFAULT_BOUNDS):
    mu, nu = phi.source, phi.target
    I, A = mu.source.source, mu.target.target
    checks = []
    for g in I.one_generators:
        checks.append(_modification_condition(mu, nu, phi.components, g, b))
    return combine(checks, b)


def _modification_condition(mu, nu, comps, g, b):
    """nu_u (Gu * phi_i) = (phi_j * Fu) mu_u."""
    A = mu.target.target
    Gu, Fu = mu.target.one_cells[g.name], mu.source.one_cells[g.name]
    left = vcompose(A, nu.morphisms[g.name], whisker(A, Gu, comps[g.source], None))
    right = vcompose(A, whisker(A, None, comps[g.target], Fu), mu.morphisms[g.name])
    v = equal_two_cells(A, left, right, b)
    if v.status == FAILS:
        return Verdict(FAILS, v.certificate, (Witness(
            "modification condition", f"condition at {g.name} fails"),), b)
    return v


def _functor_key(F):
    return F._key


def enumerate_cones(F, X, flavor, b=DEFAULT_BOUNDS):
    """Every valid cone ``Delta X => F`` of the given flavor within bounds.

    Returns ``(cones, exact)``.
    """
    if flavor not in FLAVORS:
        raise FlavorError(f"unknown flavor {flavor!r}")
    I, A = F.source, F.target
    key = ("cones", _functor_key(F), X, flavor, b)
    hit = A._cache.get(key)
    if hit is not None:
        return hit
    delta = constant_functor(I, A, X)
    exact = True
    choices = []
    for i in I.objects:
        ws = one_cells(A, X, F.objects[i], b)
        exact = exact and ws.exact
        choices.append(list(ws))
    found = []
    seen = set()
    for comps in product(*choices):
        components = dict(zip(I.objects, comps))
        options = []
        for g in I.one_generators:
            mi, mj = components[g.source], components[g.target]
            Gu = F.one_cells[g.name]
            src = A.normalize(OneCellWord(X, Gu.target, mi.gens + Gu.gens))
            tgt = mj
            if flavor == STRICT:
                options.append([TwoCellTerm(src, src, ())] if src == tgt else [])
                continue
            cells = two_cells(A, src, tgt, b)
            exact = exact and cells.exact
            if flavor == PSEUDO:
                keep = []
                for c in cells:
                    v = is_invertible(A, c, b)
                    if v.certificate != EXACT:
                        exact = False
                    if v.status == HOLDS:
                        keep.append(c)
                cells = keep
            options.append(list(cells))
        for cells in product(*options):
            mu = Transformation(flavor, delta, F, components,
                                {g.name: c for g, c in zip(I.one_generators, cells)})
            v = check_transformation(mu, b)
            if v.certificate != EXACT:
                exact = False
            if v.status == HOLDS:
                k = mu.key(b)
                if k not in seen:
                    seen.add(k)
                    found.append(mu)
    res = (tuple(found), exact)
    A._cache[key] = res
    return res


def enumerate_all_cones(F, flavor, b=DEFAULT_BOUNDS):
    out, exact = [], True
    for X in F.target.objects:
        cones, ex = enumerate_cones(F, X, flavor, b)
        out.extend(cones)
        exact = exact and ex
    return tuple(out), exact


def enumerate_modifications(mu, nu, b=DEFAULT_BOUNDS):
    """All modifications ``mu => nu`` (one per tuple of class representatives).

    Returns ``(modifications, exact)``.
    """
    if mu.source != nu.source or mu.target != nu.target:
        raise BoundaryError("cones are not parallel")
    I, A = mu.source.source, mu.target.target
    key = ("mods", mu.source._key, mu.target._key, mu.key(b), nu.key(b), b)
    hit = A._cache.get(key)
    if hit is not None:
        return hit
    exact = True
    choices = []
    for i in I.objects:
        cells = two_cells(A, mu.components[i], nu.components[i], b)
        exact = exact and cells.exact
        choices.append(list(cells))
    out = []
    for comps in product(*choices):
        comp = dict(zip(I.objects, comps))
        ok = True
        for g in I.one_generators:
            v = _modification_condition(mu, nu, comp, g, b)
            if v.certificate != EXACT:
                exact = False
            if v.status != HOLDS:
                ok = False
                break
        if ok:
            out.append(Modification(mu, nu, comp))
    res = (tuple(out), exact)
    A._cache[key] = res
    return res


def postcompose_cone(lam, f, b=DEFAULT_BOUNDS):
    """The cone ``lam . Delta f`` for ``f: X -> summit(lam)``."""
    A = lam.target.target
    L = lam.summit
    if f.target != L:
        raise BoundaryError(f"{word_str(f)} does not end at the summit {L}")
    delta = constant_functor(lam.source.source, A, f.source)
    comps = {i: A.normalize(OneCellWord(f.source, w.target, f.gens + w.gens))
             for i, w in lam.components.items()}
    morphs = {g: class_rep(A, whisker(A, None, t, f), b) for g, t in lam.morphisms.items()}
    return Transformation(lam.flavor, delta, lam.target, comps, morphs)


def postwhisker_modification(lam, alpha, b=DEFAULT_BOUNDS):
    """The modification ``lam * Delta alpha`` with components ``lam_i * alpha``."""
    A = lam.target.target
    alpha = canonical_term(A, alpha)
    src = postcompose_cone(lam, alpha.source, b)
    tgt = postcompose_cone(lam, alpha.target, b)
    return Modification(src, tgt, {i: class_rep(A, whisker(A, w, alpha, None), b)
                                   for i, w in lam.components.items()})


def cone_text(mu, unicode=False):
    parts = [word_str(mu.components[i], unicode) for i in mu.source.source.objects]
    nontriv = [term_str(t, unicode) for t in mu.morphisms.values() if not t.is_identity]
    body = ", ".join(parts)
    if nontriv:
        body += "; " + ", ".join(nontriv)
    return f"({mu.summit}, [{body}])"
