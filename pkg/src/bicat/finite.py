"""Finite categories given by explicit composition tables, and verdicts."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

HOLDS = "holds"
FAILS = "fails"
UNKNOWN = "unknown_at_bound"
EXACT = "exact"
BOUNDED = "bounded"


@dataclass(frozen=True)
class Witness:
    kind: str
    text: str
    data: tuple = ()

    def to_dict(self):
        return {"kind": self.kind, "text": self.text}


@dataclass(frozen=True)
class Verdict:
    status: str
    certificate: str = EXACT
    witnesses: tuple = ()
    bounds: object = None

    def __post_init__(self):
        if self.status not in (HOLDS, FAILS, UNKNOWN):
            raise ValueError(f"bad status {self.status!r}")
        if self.certificate not in (EXACT, BOUNDED):
            raise ValueError(f"bad certificate {self.certificate!r}")
        if self.status == FAILS and not self.witnesses:
            raise ValueError("a failing verdict needs at least one witness")

    def __bool__(self):
        return self.status == HOLDS

    @property
    def holds(self):
        return self.status == HOLDS

    def to_dict(self):
        return {
            "status": self.status,
            "certificate": self.certificate,
            "witnesses": [w.to_dict() for w in self.witnesses],
            "bounds": self.bounds.to_dict() if self.bounds is not None else None,
        }


def verdict(ok, exact, witnesses=(), bounds=None):
    return Verdict(HOLDS if ok else FAILS, EXACT if exact else BOUNDED,
                   tuple(witnesses), bounds)


def combine(verdicts, bounds=None):
    """Conjunction: any fails dominates, then unknown; certificate is the weakest."""
    verdicts = list(verdicts)
    cert = EXACT if all(v.certificate == EXACT for v in verdicts) else BOUNDED
    failing = [v for v in verdicts if v.status == FAILS]
    if failing:
        wit = tuple(w for v in failing for w in v.witnesses)
        return Verdict(FAILS, cert, wit, bounds)
    if any(v.status == UNKNOWN for v in verdicts):
        wit = tuple(w for v in verdicts for w in v.witnesses)
        return Verdict(UNKNOWN, BOUNDED, wit, bounds)
    return Verdict(HOLDS, cert, (), bounds)


class FiniteCategory:
    """Objects, morphisms ``id -> (source, target)``, identities and a
    composition table ``(g, f) -> g∘f`` (f first)."""

    def __init__(self, objects, morphisms, identities, composition, labels=None, exact=True,
                 object_labels=None):
        self.objects = list(objects)
        self.morphisms = dict(morphisms)
        self.identities = dict(identities)
        self.composition = dict(composition)
        self.labels = dict(labels or {})
        self.exact = exact
        self.object_labels = dict(object_labels or {})

    def __repr__(self):
        return f"FiniteCategory({len(self.objects)} objects, {len(self.morphisms)} morphisms)"

    def hom(self, x, y):
        return [m for m, (s, t) in self.morphisms.items() if s == x and t == y]

    def compose(self, g, f):
        return self.composition[(g, f)]

    def label(self, m):
        return self.labels.get(m, str(m))

    def label_object(self, x):
        return self.object_labels.get(x, str(x))

    def is_iso(self, m):
        s, t = self.morphisms[m]
        for n in self.hom(t, s):
            if self.composition[(n, m)] == self.identities[s] and \
                    self.composition[(m, n)] == self.identities[t]:
                return True
        return False

    def check_laws(self):
        """Exhaustive associativity and unit check; returns violations."""
        bad = []
        for x in self.objects:
            i = self.identities.get(x)
            if i is None or self.morphisms[i] != (x, x):
                bad.append(("identity", x))
        for m, (s, t) in self.morphisms.items():
            if self.composition.get((m, self.identities[s])) != m:
                bad.append(("right unit", m))
            if self.composition.get((self.identities[t], m)) != m:
                bad.append(("left unit", m))
        for f, g in product(self.morphisms, repeat=2):
            if self.morphisms[f][1] != self.morphisms[g][0]:
                continue
            gf = self.composition.get((g, f))
            if gf is None or self.morphisms[gf] != (self.morphisms[f][0], self.morphisms[g][1]):
                bad.append(("composite", g, f))
        for f, g, h in product(self.morphisms, repeat=3):
            if self.morphisms[f][1] != self.morphisms[g][0] or \
                    self.morphisms[g][1] != self.morphisms[h][0]:
                continue
            left = self.composition[(h, self.composition[(g, f)])]
            right = self.composition[(self.composition[(h, g)], f)]
            if left != right:
                bad.append(("associativity", h, g, f))
        return bad
