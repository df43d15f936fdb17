"""Finitely presented 2-categories: generators, relations, 1-cell words and
layered 2-cell terms.

Words are stored in diagrammatic order: ``gens[0]`` is applied first.  The
written form ``g . f`` therefore corresponds to ``gens == ("f", "g")``.

A 2-cell term is a sequence of *layers*; each layer whiskers one atom (a
2-generator or the formal inverse of an invertible one) by a word applied
before it (``pre``) and a word applied after it (``post``).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

from .errors import BoundaryError, ConfluenceError, UnknownNameError

STRICT = "strict"
PSEUDO = "pseudo"
LAX = "lax"
FLAVORS = (STRICT, PSEUDO, LAX)


@dataclass(frozen=True)
class Bounds:
    max_word_length: int = 6
    max_layers: int = 6
    max_rewrite_steps: int = 20000

    def to_dict(self):
        return {
            "max_word_length": self.max_word_length,
            "max_layers": self.max_layers,
            "max_rewrite_steps": self.max_rewrite_steps,
        }


DEFAULT_BOUNDS = Bounds()


@dataclass(frozen=True)
class OneCellWord:
    source: str
    target: str
    gens: tuple = ()

    def __len__(self):
        return len(self.gens)

    @property
    def is_identity(self):
        return not self.gens


@dataclass(frozen=True)
class Atom:
    name: str
    inverse: bool = False

    def inverted(self):
        return Atom(self.name, not self.inverse)


@dataclass(frozen=True)
class Layer:
    pre: tuple
    atom: Atom
    post: tuple


@dataclass(frozen=True)
class TwoCellTerm:
    source: OneCellWord
    target: OneCellWord
    layers: tuple = ()

    @property
    def is_identity(self):
        return not self.layers

    def __len__(self):
        return len(self.layers)


@dataclass(frozen=True)
class OneGenerator:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class TwoGenerator:
    name: str
    source: OneCellWord
    target: OneCellWord
    invertible: bool = False


class Enumerated(tuple):
    """A sorted tuple of results plus an exactness flag."""

    def __new__(cls, items=(), exact=True):
        obj = super().__new__(cls, items)
        obj.exact = bool(exact)
        return obj


class Presentation:
    """Generators and relations of a finitely presented 2-category.

    Values are immutable after construction; the ``_cache`` dictionary only
    memoises pure functions of the presentation.
    """

    def __init__(self, name, objects, one_generators=(), two_generators=(),
                 one_relations=(), two_relations=()):
        self.name = name
        self.objects = tuple(objects)
        self.one_generators = tuple(one_generators)
        self.two_generators = tuple(two_generators)
        self.one_relations = tuple(one_relations)
        self._cache = {}
        self._validate_names()
        self.one_gen = {g.name: g for g in self.one_generators}
        self.two_gen = {g.name: g for g in self.two_generators}
        self.gen_index = {g.name: i for i, g in enumerate(self.one_generators)}
        self.two_index = {g.name: i for i, g in enumerate(self.two_generators)}
        for g in self.one_generators:
            if g.source not in self.objects or g.target not in self.objects:
                raise UnknownNameError(f"1-cell {g.name}: unknown boundary object")
        for g in self.two_generators:
            self.check_word(g.source)
            self.check_word(g.target)
            if (g.source.source, g.source.target) != (g.target.source, g.target.target):
                raise BoundaryError(f"2-cell {g.name}: source and target words not parallel")
        for lhs, rhs in self.one_relations:
            self.check_word(lhs)
            self.check_word(rhs)
            if (lhs.source, lhs.target) != (rhs.source, rhs.target):
                raise BoundaryError("1-relation sides are not parallel")
        self.rules = self._orient_rules()
        self._check_confluence()
        self.two_relations = tuple(
            (canonical_term(self, lhs), canonical_term(self, rhs))
            for lhs, rhs in two_relations
        )
        for lhs, rhs in self.two_relations:
            if (lhs.source, lhs.target) != (rhs.source, rhs.target):
                raise BoundaryError("2-relation sides are not parallel")

    def __repr__(self):
        return (f"Presentation({self.name!r}, {len(self.objects)} objects, "
                f"{len(self.one_generators)} 1-cells, {len(self.two_generators)} 2-cells)")

    def __eq__(self, other):
        if not isinstance(other, Presentation):
            return NotImplemented
        return self.signature() == other.signature()

    def __hash__(self):
        return hash(self.signature())

    def signature(self):
        return (self.name, self.objects, self.one_generators, self.two_generators,
                self.one_relations, self.two_relations)

    def _validate_names(self):
        seen = set()
        for n in list(self.objects) + [g.name for g in self.one_generators] + \
                [g.name for g in self.two_generators]:
            if n in seen:
                raise BoundaryError(f"duplicate name {n!r}")
            seen.add(n)

    # -- words ---------------------------------------------------------

    def identity_word(self, obj):
        if obj not in self.objects:
            raise UnknownNameError(f"unknown object {obj!r}")
        return OneCellWord(obj, obj, ())

    def word(self, gens, source=None):
        """Build a typed word from diagrammatic generator names."""
        gens = tuple(gens)
        if not gens:
            if source is None:
                raise BoundaryError("empty word needs a base object")
            return self.identity_word(source)
        for g in gens:
            if g not in self.one_gen:
                raise UnknownNameError(f"unknown 1-cell {g!r}")
        w = OneCellWord(self.one_gen[gens[0]].source, self.one_gen[gens[-1]].target, gens)
        self.check_word(w)
        return w

    def check_word(self, w):
        if w.source not in self.objects or w.target not in self.objects:
            raise UnknownNameError(f"unknown object in word {w}")
        here = w.source
        for g in w.gens:
            gen = self.one_gen.get(g)
            if gen is None:
                raise UnknownNameError(f"unknown 1-cell {g!r}")
            if gen.source != here:
                raise BoundaryError(f"word {w.gens} is not composable at {g}")
            here = gen.target
        if here != w.target:
            raise BoundaryError(f"word {w.gens} does not end at {w.target}")

    def word_key(self, gens):
        return (len(gens), tuple(self.gen_index[g] for g in gens))

    def _orient_rules(self):
        rules = set()
        for lhs, rhs in self.one_relations:
            a, b = lhs.gens, rhs.gens
            if a == b:
                continue
            if self.word_key(a) < self.word_key(b):
                a, b = b, a
            rules.add((a, b))
        return tuple(sorted(rules, key=lambda r: (self.word_key(r[0]), self.word_key(r[1]))))

    def nf(self, gens, max_steps=20000):
        """Rewrite to normal form with the oriented 1-relations."""
        gens = tuple(gens)
        key = ("nf", gens)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        cur = gens
        steps = 0
        while steps < max_steps:
            nxt = self._rewrite_once(cur)
            if nxt is None:
                break
            cur = nxt
            steps += 1
        self._cache[key] = cur
        return cur

    def _rewrite_once(self, gens):
        for i in range(len(gens)):
            for lhs, rhs in self.rules:
                if gens[i:i + len(lhs)] == lhs:
                    return gens[:i] + rhs + gens[i + len(lhs):]
        return None

    def _check_confluence(self):
        for l1, r1 in self.rules:
            for l2, r2 in self.rules:
                peaks = []
                for k in range(1, min(len(l1), len(l2))):
                    if l1[-k:] == l2[:k]:
                        peaks.append((r1 + l2[k:], l1[:-k] + r2))
                if (l1, r1) != (l2, r2):
                    for p in range(len(l1) - len(l2) + 1):
                        if l1[p:p + len(l2)] == l2:
                            peaks.append((r1, l1[:p] + r2 + l1[p + len(l2):]))
                for u, v in peaks:
                    if self.nf(u) != self.nf(v):
                        raise ConfluenceError(
                            f"critical pair {u} / {v} does not join in {self.name}")

    def normalize(self, w):
        return OneCellWord(w.source, w.target, self.nf(w.gens))

    def word_class(self, gens, max_size=20000):
        """All words congruent to ``gens`` (bounded by ``max_size``)."""
        gens = tuple(gens)
        key = ("class", gens)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        if not self.rules:
            out = (gens,)
        else:
            seen = {gens}
            todo = deque([gens])
            pairs = [(l, r) for l, r in self.rules] + [(r, l) for l, r in self.rules]
            while todo and len(seen) < max_size:
                cur = todo.popleft()
                for lhs, rhs in pairs:
                    n = len(lhs)
                    for i in range(len(cur) - n + 1):
                        if cur[i:i + n] == lhs:
                            new = cur[:i] + rhs + cur[i + n:]
                            if new not in seen:
                                seen.add(new)
                                todo.append(new)
            out = tuple(sorted(seen, key=self.word_key))
        self._cache[key] = out
        return out

    def objects_along(self, gens, base):
        objs = [base]
        for g in gens:
            objs.append(self.one_gen[g].target)
        return objs

    def is_acyclic_from(self, obj):
        """True iff no directed cycle of 1-generators is reachable from ``obj``."""
        key = ("acyclic", obj)
        if key in self._cache:
            return self._cache[key]
        out_edges = {}
        for g in self.one_generators:
            out_edges.setdefault(g.source, []).append(g.target)
        state = {}

        def visit(v):
            state[v] = 1
            for u in out_edges.get(v, ()):
                s = state.get(u)
                if s == 1:
                    return False
                if s is None and not visit(u):
                    return False
            state[v] = 2
            return True

        res = visit(obj)
        self._cache[key] = res
        return res

    # -- atoms and layers ---------------------------------------------

    def atoms(self):
        out = []
        for g in self.two_generators:
            out.append(Atom(g.name))
            if g.invertible:
                out.append(Atom(g.name, True))
        return out

    def atom_boundary(self, atom):
        g = self.two_gen.get(atom.name)
        if g is None:
            raise UnknownNameError(f"unknown 2-cell {atom.name!r}")
        if atom.inverse:
            if not g.invertible:
                raise BoundaryError(f"{atom.name} is not invertible")
            return g.target, g.source
        return g.source, g.target

    def layer_key(self, layer):
        return (self.word_key(layer.pre), self.two_index[layer.atom.name],
                layer.atom.inverse, self.word_key(layer.post))

    def path_key(self, layers):
        return (len(layers), tuple(self.layer_key(l) for l in layers))

    def layer_boundary(self, layer):
        s, t = self.atom_boundary(layer.atom)
        if layer.pre:
            start = self.one_gen[layer.pre[0]].source
        else:
            start = s.source
        if layer.post:
            end = self.one_gen[layer.post[-1]].target
        else:
            end = s.target
        src = OneCellWord(start, end, self.nf(layer.pre + s.gens + layer.post))
        tgt = OneCellWord(start, end, self.nf(layer.pre + t.gens + layer.post))
        return src, tgt

    def canonical_layer(self, layer):
        return Layer(self.nf(layer.pre), layer.atom, self.nf(layer.post))

    def out_layers(self, word):
        """Every canonical layer whose source is ``word`` (normalised),
        paired with its normalised target."""
        word = self.normalize(word)
        key = ("out", word)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        found = {}
        atoms = self.atoms()
        for rep in self.word_class(word.gens):
            objs = self.objects_along(rep, word.source)
            for atom in atoms:
                s, t = self.atom_boundary(atom)
                n = len(s.gens)
                for k in range(len(rep) - n + 1):
                    if rep[k:k + n] != s.gens or objs[k] != s.source:
                        continue
                    layer = Layer(self.nf(rep[:k]), atom, self.nf(rep[k + n:]))
                    if layer not in found:
                        tgt = OneCellWord(word.source, word.target,
                                          self.nf(rep[:k] + t.gens + rep[k + n:]))
                        found[layer] = tgt
        out = tuple(sorted(found.items(), key=lambda kv: self.layer_key(kv[0])))
        self._cache[key] = out
        return out

    def with_invertible(self, names):
        """Copy of this presentation with the named 2-generators invertible."""
        names = set(names)
        missing = names - set(self.two_gen)
        if missing:
            raise UnknownNameError(f"unknown 2-cells {sorted(missing)}")
        gens = [TwoGenerator(g.name, g.source, g.target, g.invertible or g.name in names)
                for g in self.two_generators]
        return Presentation(self.name, self.objects, self.one_generators, gens,
                            self.one_relations, self.two_relations)


# -- 1-cell operations -----------------------------------------------------

def normalize_one_cell(P, w, b=DEFAULT_BOUNDS):
    P.check_word(w)
    return OneCellWord(w.source, w.target, P.nf(w.gens, b.max_rewrite_steps))


def compose_one(P, g, f):
    """``g . f``: first ``f``, then ``g``."""
    if f.target != g.source:
        raise BoundaryError(f"cannot compose {g.gens} after {f.gens}: {f.target} != {g.source}")
    return P.normalize(OneCellWord(f.source, g.target, f.gens + g.gens))


def one_cells(P, X, Y, b=DEFAULT_BOUNDS):
    """Distinct normal forms of words X -> Y of length <= max_word_length."""
    for o in (X, Y):
        if o not in P.objects:
            raise UnknownNameError(f"unknown object {o!r}")
    key = ("one_cells", X, Y, b.max_word_length)
    hit = P._cache.get(key)
    if hit is not None:
        return hit
    out_edges = {}
    for g in P.one_generators:
        out_edges.setdefault(g.source, []).append(g)
    found = set()
    truncated = False
    frontier = [((), X)]
    for depth in range(b.max_word_length + 1):
        nxt = []
        for gens, here in frontier:
            if here == Y:
                found.add(P.nf(gens))
            if depth == b.max_word_length:
                if out_edges.get(here):
                    truncated = True
                continue
            for g in out_edges.get(here, ()):
                nxt.append((gens + (g.name,), g.target))
        frontier = nxt
    words = sorted(found, key=P.word_key)
    exact = P.is_acyclic_from(X) and not truncated
    res = Enumerated((OneCellWord(X, Y, w) for w in words), exact)
    P._cache[key] = res
    return res


# -- 2-cell term operations ------------------------------------------------

def identity_term(P, w):
    w = P.normalize(w)
    return TwoCellTerm(w, w, ())


def atom_term(P, name, inverse=False):
    atom = Atom(name, inverse)
    s, t = P.atom_boundary(atom)
    return TwoCellTerm(P.normalize(s), P.normalize(t), (Layer((), atom, ()),))


def canonical_term(P, t):
    """Normalise boundaries and whisker words; checks composability."""
    layers = tuple(P.canonical_layer(l) for l in t.layers)
    src, tgt = P.normalize(t.source), P.normalize(t.target)
    cur = src
    for l in layers:
        ls, lt = P.layer_boundary(l)
        if ls != cur:
            raise BoundaryError(f"layer {l} does not start at {cur.gens}")
        cur = lt
    if cur != tgt:
        raise BoundaryError(f"term ends at {cur.gens}, declared {tgt.gens}")
    return TwoCellTerm(src, tgt, layers)


def _term_from_layers(P, start, layers):
    cur = P.normalize(start)
    src = cur
    for l in layers:
        ls, lt = P.layer_boundary(l)
        if ls != cur:
            raise BoundaryError(f"layer {l} does not start at {cur.gens}")
        cur = lt
    return TwoCellTerm(src, cur, tuple(layers))


def whisker(P, left, t, right):
    """Written ``left * t * right``: ``right`` is applied before ``t`` and
    ``left`` after it.  Either may be None for an identity."""
    left_gens = left.gens if left is not None else ()
    right_gens = right.gens if right is not None else ()
    if right is not None and right.target != t.source.source:
        raise BoundaryError("right whisker does not end at the term's source object")
    if left is not None and left.source != t.source.target:
        raise BoundaryError("left whisker does not start at the term's target object")
    src_obj = right.source if right is not None else t.source.source
    tgt_obj = left.target if left is not None else t.source.target
    src = OneCellWord(src_obj, tgt_obj, P.nf(right_gens + t.source.gens + left_gens))
    tgt = OneCellWord(src_obj, tgt_obj, P.nf(right_gens + t.target.gens + left_gens))
    layers = tuple(Layer(P.nf(right_gens + l.pre), l.atom, P.nf(l.post + left_gens))
                   for l in t.layers)
    return TwoCellTerm(src, tgt, layers)


def vcompose(P, t2, t1):
    """Written ``t2 & t1``: ``t1`` first."""
    if P.normalize(t1.target) != P.normalize(t2.source):
        raise BoundaryError(f"cannot stack: {t1.target.gens} != {t2.source.gens}")
    return TwoCellTerm(P.normalize(t1.source), P.normalize(t2.target), t1.layers + t2.layers)


def vcompose_all(P, terms):
    """Vertical composite of ``terms`` listed in application order."""
    terms = list(terms)
    out = terms[0]
    for t in terms[1:]:
        out = vcompose(P, t, out)
    return out


def hcompose(P, t2, t1):
    """Written ``t2 * t1`` with t1: f => f' (X -> Y) and t2: g => g' (Y -> Z).

    Realised as ``(g' * t1) & (t2 * f)``: t2 is applied first.
    """
    if t1.source.target != t2.source.source:
        raise BoundaryError("horizontal boundaries do not meet")
    first = whisker(P, None, t2, t1.source)
    second = whisker(P, t2.target, t1, None)
    return vcompose(P, second, first)


def hcompose_other(P, t2, t1):
    """The other interchange order: ``(t2 * f') & (g * t1)``."""
    if t1.source.target != t2.source.source:
        raise BoundaryError("horizontal boundaries do not meet")
    first = whisker(P, t2.source, t1, None)
    second = whisker(P, None, t2, t1.target)
    return vcompose(P, second, first)


def inverse_term(P, t):
    """Formal inverse of a term all of whose atoms are invertible."""
    layers = []
    for l in reversed(t.layers):
        P.atom_boundary(l.atom.inverted())
        layers.append(Layer(l.pre, l.atom.inverted(), l.post))
    return TwoCellTerm(t.target, t.source, tuple(layers))


def word_str(w, unicode=False):
    if not w.gens:
        return f"id({display_name(w.source, unicode)})"
    sep = "" if unicode else " . "
    return sep.join(display_name(g, unicode) for g in reversed(w.gens))


_GREEK = {"lambda": "λ", "gamma": "γ", "alpha": "α", "beta": "β", "mu": "μ",
          "nu": "ν", "phi": "φ", "psi": "ψ", "Delta": "Δ"}


def display_name(name, unicode=False):
    if not unicode:
        return name
    for k, v in _GREEK.items():
        if name.startswith(k):
            rest = name[len(k):]
            if rest.startswith("_"):
                rest = rest[1:]
            return v + rest
    return name


def layer_str(layer, unicode=False):
    star = "∗" if unicode else " * "
    parts = []
    if layer.post:
        parts.append(_gens_str(layer.post, unicode))
    name = display_name(layer.atom.name, unicode)
    parts.append(name + ("^-1" if layer.atom.inverse else ""))
    if layer.pre:
        parts.append(_gens_str(layer.pre, unicode))
    return star.join(parts)


def _gens_str(gens, unicode):
    sep = "" if unicode else " . "
    return sep.join(display_name(g, unicode) for g in reversed(gens))


def term_str(t, unicode=False):
    if not t.layers:
        return f"id({word_str(t.source, unicode)})" if t.source.gens else word_str(t.source, unicode)
    if len(t.layers) == 1:
        return layer_str(t.layers[0], unicode)
    sep = "" if unicode else " & "
    return sep.join(f"({layer_str(l, unicode)})" for l in reversed(t.layers))


def gens_of(words: Iterable[OneCellWord]):
    return tuple(w.gens for w in words)
