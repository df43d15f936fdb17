"""Line-oriented DSL for presentations, 2-functors and cones.

Example::

    2category A
    objects: X, L
    1cells:
      f: X -> L
      g: X -> L
    2cells:
      invertible alpha: (f) => (g)
    relations:
      f = f

Term syntax: ``g . f`` composes words (f first), ``*`` whiskers or composes
horizontally, ``t2 & t1`` stacks vertically (t1 first), ``id(w)`` is an
identity and ``name^-1`` a declared inverse.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import BicatError, BoundaryError, DSLSyntaxError, UnknownNameError
from .presentation import (FLAVORS, STRICT, OneCellWord, OneGenerator, Presentation,
                           TwoCellTerm, TwoGenerator, atom_term, hcompose, identity_term,
                           vcompose, whisker)

_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z0-9_]+)|(?P<op>\^-1|=>|->|[.*&()=,:]))")


def _tokenize(text, line, col0):
    pos = 0
    toks = []
    while pos < len(text):
        if not text[pos:].strip():
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise DSLSyntaxError(f"unexpected character {text[bad]!r}", line, col0 + bad + 1)
        kind = "name" if m.group("name") else "op"
        val = m.group(kind)
        toks.append((kind, val, col0 + m.start(kind) + 1))
        pos = m.end()
    return toks


class _Expr:
    """Recursive-descent evaluator for words and terms over a presentation."""

    def __init__(self, P, text, line, col0=0):
        self.P = P
        self.col0 = col0
        self.toks = _tokenize(text, line, col0)
        self.i = 0
        self.line = line

    def error(self, msg):
        if self.i < len(self.toks):
            col = self.toks[self.i][2]
        else:
            col = self.toks[-1][2] if self.toks else self.col0 + 1
        raise DSLSyntaxError(msg, self.line, col)

    def peek(self):
        return self.toks[self.i][1] if self.i < len(self.toks) else None

    def take(self, val=None):
        if self.i >= len(self.toks):
            self.error("unexpected end of expression")
        tok = self.toks[self.i]
        if val is not None and tok[1] != val:
            self.error(f"expected {val!r}, found {tok[1]!r}")
        self.i += 1
        return tok

    def parse(self):
        v = self.vert()
        if self.i != len(self.toks):
            self.error(f"unexpected token {self.peek()!r}")
        return v

    def vert(self):
        v = self.horiz()
        while self.peek() == "&":
            self.take("&")
            lower = self.horiz()
            try:
                v = vcompose(self.P, self.as_term(v), self.as_term(lower))
            except BoundaryError as e:
                self.error(str(e))
        return v

    def horiz(self):
        v = self.comp()
        while self.peek() == "*":
            self.take("*")
            right = self.comp()
            try:
                v = self.star(v, right)
            except BoundaryError as e:
                self.error(str(e))
        return v

    def star(self, left, right):
        P = self.P
        lw, rw = isinstance(left, OneCellWord), isinstance(right, OneCellWord)
        if lw and rw:
            return self.concat(left, right)
        if lw:
            return whisker(P, left, right, None)
        if rw:
            return whisker(P, None, left, right)
        return hcompose(P, left, right)

    def comp(self):
        v = self.atom()
        while self.peek() == ".":
            self.take(".")
            right = self.atom()
            if not (isinstance(v, OneCellWord) and isinstance(right, OneCellWord)):
                self.error("'.' composes 1-cell words only")
            v = self.concat(v, right)
        return v

    def concat(self, g, f):
        if f.target != g.source:
            self.error(f"cannot compose: {f.target} != {g.source}")
        return OneCellWord(f.source, g.target, f.gens + g.gens)

    def atom(self):
        kind_val = self.peek()
        if kind_val == "(":
            self.take("(")
            v = self.vert()
            self.take(")")
            return v
        kind, name, _ = self.take()
        if kind != "name":
            self.error(f"unexpected {name!r}")
        P = self.P
        if name == "id" and self.peek() == "(":
            self.take("(")
            if self.i < len(self.toks) and self.toks[self.i][1] in P.objects \
                    and self.i + 1 < len(self.toks) and self.toks[self.i + 1][1] == ")":
                obj = self.take()[1]
                self.take(")")
                return P.identity_word(obj)
            inner = self.vert()
            self.take(")")
            if not isinstance(inner, OneCellWord):
                self.error("id(...) takes a 1-cell word")
            return TwoCellTerm(P.normalize(inner), P.normalize(inner), ())
        if name in P.one_gen:
            return P.word((name,))
        if name in P.two_gen:
            inverse = False
            if self.peek() == "^-1":
                self.take("^-1")
                if not P.two_gen[name].invertible:
                    self.error(f"{name} is not declared invertible")
                inverse = True
            return atom_term(P, name, inverse)
        raise UnknownNameError(f"line {self.line}: unknown name {name!r}")

    def as_term(self, v):
        if isinstance(v, OneCellWord):
            return identity_term(self.P, v)
        return v


def parse_word(P, text, line=0, col0=0):
    v = _Expr(P, text, line, col0).parse()
    if not isinstance(v, OneCellWord):
        raise DSLSyntaxError("expected a 1-cell word", line)
    return v


def parse_term(P, text, line=0, col0=0):
    e = _Expr(P, text, line, col0)
    v = e.parse()
    return e.as_term(v)


def _parse_cell_or_term(P, text, line, col0=0):
    return _Expr(P, text, line, col0).parse()


# -- documents -------------------------------------------------------------

@dataclass
class FunctorDecl:
    name: str
    source: str
    target: str
    objects: dict
    one_cells: dict
    two_cells: dict


@dataclass
class ConeDecl:
    name: str
    summit: str
    functor: str
    flavor: str
    objects: dict
    morphisms: dict


@dataclass
class Document:
    presentations: dict = field(default_factory=dict)
    functors: dict = field(default_factory=dict)
    cones: dict = field(default_factory=dict)
    order: list = field(default_factory=list)

    def presentation(self, name=None):
        if name is None:
            return list(self.presentations.values())[-1]
        return self.presentations[name]

    def key(self):
        return (
            tuple((n, p.signature()) for n, p in self.presentations.items()),
            tuple((n, f.source, f.target, tuple(f.objects.items()), tuple(f.one_cells.items()),
                   tuple(f.two_cells.items())) for n, f in self.functors.items()),
            tuple((n, c.summit, c.functor, c.flavor, tuple(c.objects.items()),
                   tuple(c.morphisms.items())) for n, c in self.cones.items()),
        )

    def __eq__(self, other):
        return isinstance(other, Document) and self.key() == other.key()


_HEADER = re.compile(r"^(2category|2functor|cone)\b\s*(.*)$")


def _strip(line):
    i = line.find("#")
    return (line if i < 0 else line[:i]).rstrip()


def parse_document(text, invertible=None):
    """Parse a DSL file.  ``invertible`` maps presentation names to 2-cells
    that should be made invertible (used to derive reductions)."""
    invertible = invertible or {}
    blocks = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line.strip():
            continue
        m = _HEADER.match(line.strip())
        if m and not raw[:1].isspace():
            blocks.append((m.group(1), m.group(2), lineno, []))
        elif not blocks:
            raise DSLSyntaxError("expected a 2category, 2functor or cone block", lineno, 1)
        else:
            blocks[-1][3].append((lineno, line))
    doc = Document()
    for kind, head, lineno, body in blocks:
        if kind == "2category":
            P = _parse_category(head, lineno, body, invertible)
            doc.presentations[P.name] = P
            doc.order.append(("2category", P.name))
        elif kind == "2functor":
            F = _parse_functor(doc, head, lineno, body)
            doc.functors[F.name] = F
            doc.order.append(("2functor", F.name))
        else:
            C = _parse_cone(doc, head, lineno, body)
            doc.cones[C.name] = C
            doc.order.append(("cone", C.name))
    return doc


def parse_presentation(text, name=None):
    """Parse ``text`` and return the named (default: last) presentation."""
    return parse_document(text).presentation(name)


def _sections(body, allowed):
    out = {k: [] for k in allowed}
    current = None
    for lineno, line in body:
        s = line.strip()
        for k in allowed:
            if s.startswith(k + ":"):
                current = k
                tail = s[len(k) + 1:]
                rest = tail.strip()
                if rest:
                    col = line.index(k) + len(k) + 1 + len(tail) - len(tail.lstrip())
                    out[k].append((lineno, rest, col))
                break
        else:
            if current is None:
                raise DSLSyntaxError(f"unexpected line {s!r}", lineno, 1)
            out[current].append((lineno, s, len(line) - len(line.lstrip())))
    return out


def _name_ok(name, lineno, col=1):
    if not re.fullmatch(r"[A-Za-z0-9_]+", name):
        raise DSLSyntaxError(f"bad name {name!r}", lineno, col)
    return name


def _split_decl(s, lineno, base=0):
    """``name: rest`` -> (name, rest, 0-based column of rest in the line)."""
    if ":" not in s:
        raise DSLSyntaxError("expected 'name: ...'", lineno, base + 1)
    name, rest = s.split(":", 1)
    return name.strip(), rest.strip(), base + len(name) + 1 + len(rest) - len(rest.lstrip())


def _parse_category(head, lineno, body, invertible):
    name = _name_ok(head.strip(), lineno)
    secs = _sections(body, ["objects", "1cells", "2cells", "relations"])
    objects = []
    for ln, s, _ in secs["objects"]:
        for o in s.split(","):
            if o.strip():
                objects.append(_name_ok(o.strip(), ln))
    one = []
    for ln, s, col in secs["1cells"]:
        g, rest, _ = _split_decl(s, ln, col)
        m = re.fullmatch(r"([A-Za-z0-9_]+)\s*->\s*([A-Za-z0-9_]+)", rest)
        if not m:
            raise DSLSyntaxError("expected 'name: A -> B'", ln, 1)
        for o in m.groups():
            if o not in objects:
                raise UnknownNameError(f"line {ln}: unknown object {o!r}")
        one.append(OneGenerator(_name_ok(g, ln), m.group(1), m.group(2)))
    try:
        P0 = Presentation(name, objects, one)
    except BicatError as e:
        raise type(e)(f"line {lineno}: {e}") from None
    make_inv = set(invertible.get(name, ()))
    two = []
    for ln, s, col in secs["2cells"]:
        inv = False
        if s.startswith("invertible "):
            inv = True
            rest = s[len("invertible "):]
            col += len(s) - len(rest.lstrip())
            s = rest.strip()
        g, rest, col = _split_decl(s, ln, col)
        if "=>" not in rest:
            raise DSLSyntaxError("expected '(w1) => (w2)'", ln, col + 1)
        a, b = rest.split("=>", 1)
        src = parse_word(P0, a, ln, col)
        tgt = parse_word(P0, b, ln, col + len(a) + 2)
        if (src.source, src.target) != (tgt.source, tgt.target):
            raise BoundaryError(f"line {ln}: 2-cell {g} is not between parallel words")
        two.append(TwoGenerator(_name_ok(g, ln), src, tgt, inv or g in make_inv))
    unknown = make_inv - {g.name for g in two}
    if unknown:
        raise UnknownNameError(f"cannot make unknown 2-cells invertible: {sorted(unknown)}")
    P0 = Presentation(name, objects, one, two)
    one_rel, two_rel_text = [], []
    for ln, s, col in secs["relations"]:
        if s.count("=") - s.count("=>") != 1:
            raise DSLSyntaxError("expected exactly one '='", ln, col + 1)
        lhs, rhs = re.split(r"=(?!>)", s, 1)
        rcol = col + len(lhs) + 1
        l = _parse_cell_or_term(P0, lhs, ln, col)
        r = _parse_cell_or_term(P0, rhs, ln, rcol)
        if isinstance(l, OneCellWord) and isinstance(r, OneCellWord):
            if (l.source, l.target) != (r.source, r.target):
                raise BoundaryError(f"line {ln}: 1-relation sides are not parallel")
            one_rel.append((l, r))
        else:
            two_rel_text.append((ln, lhs, rhs, col, rcol))
    try:
        P1 = Presentation(name, objects, one, two, one_rel)
    except BicatError as e:
        raise type(e)(f"in {name}: {e}") from None
    two_rel = []
    for ln, lhs, rhs, col, rcol in two_rel_text:
        l, r = parse_term(P1, lhs, ln, col), parse_term(P1, rhs, ln, rcol)
        if (l.source, l.target) != (r.source, r.target):
            raise BoundaryError(f"line {ln}: 2-relation sides are not parallel")
        two_rel.append((l, r))
    return Presentation(name, objects, one, two, one_rel, two_rel)


def _parse_functor(doc, head, lineno, body):
    m = re.fullmatch(r"([A-Za-z0-9_]+)\s*:\s*([A-Za-z0-9_]+)\s*->\s*([A-Za-z0-9_]+)", head.strip())
    if not m:
        raise DSLSyntaxError("expected '2functor NAME: I -> A'", lineno, 1)
    name, src, tgt = m.groups()
    for p in (src, tgt):
        if p not in doc.presentations:
            raise UnknownNameError(f"line {lineno}: unknown 2category {p!r}")
    I, A = doc.presentations[src], doc.presentations[tgt]
    secs = _sections(body, ["on objects", "on 1cells", "on 2cells"])
    objects, ones, twos = {}, {}, {}
    for ln, s, col in secs["on objects"]:
        k, v, _ = _split_decl(s, ln, col)
        if k not in I.objects or v not in A.objects:
            raise UnknownNameError(f"line {ln}: unknown object in {s!r}")
        objects[k] = v
    for ln, s, col in secs["on 1cells"]:
        k, v, vcol = _split_decl(s, ln, col)
        if k not in I.one_gen:
            raise UnknownNameError(f"line {ln}: unknown 1-cell {k!r}")
        ones[k] = parse_word(A, v, ln, vcol)
    for ln, s, col in secs["on 2cells"]:
        k, v, vcol = _split_decl(s, ln, col)
        if k not in I.two_gen:
            raise UnknownNameError(f"line {ln}: unknown 2-cell {k!r}")
        twos[k] = parse_term(A, v, ln, vcol)
    return FunctorDecl(name, src, tgt, objects, ones, twos)


def _parse_cone(doc, head, lineno, body):
    m = re.fullmatch(r"([A-Za-z0-9_]+)\s*:\s*Delta\s+([A-Za-z0-9_]+)\s*=>\s*([A-Za-z0-9_]+)"
                     r"(?:\s+(strict|pseudo|lax))?", head.strip())
    if not m:
        raise DSLSyntaxError("expected 'cone NAME: Delta OBJ => FUNCTOR [flavor]'", lineno, 1)
    name, summit, fname, flavor = m.groups()
    flavor = flavor or STRICT
    F = doc.functors.get(fname)
    if F is None:
        raise UnknownNameError(f"line {lineno}: unknown 2functor {fname!r}")
    I, A = doc.presentations[F.source], doc.presentations[F.target]
    if summit not in A.objects:
        raise UnknownNameError(f"line {lineno}: unknown object {summit!r}")
    objects, morphisms = {}, {}
    for ln, line in body:
        s = line.strip()
        col = len(line) - len(line.lstrip())
        m1 = re.fullmatch(r"at\s+1cell\s+([A-Za-z0-9_]+)\s*:\s*(.+)", s)
        m0 = re.fullmatch(r"at\s+([A-Za-z0-9_]+)\s*:\s*(.+)", s)
        if m1:
            if m1.group(1) not in I.one_gen:
                raise UnknownNameError(f"line {ln}: unknown 1-cell {m1.group(1)!r}")
            morphisms[m1.group(1)] = parse_term(A, m1.group(2), ln, col + m1.start(2))
        elif m0:
            if m0.group(1) not in I.objects:
                raise UnknownNameError(f"line {ln}: unknown object {m0.group(1)!r}")
            objects[m0.group(1)] = parse_word(A, m0.group(2), ln, col + m0.start(2))
        else:
            raise DSLSyntaxError("expected 'at OBJ: word' or 'at 1cell GEN: term'", ln, col + 1)
    return ConeDecl(name, summit, fname, flavor, objects, morphisms)


# -- printing --------------------------------------------------------------

def format_word(w):
    if not w.gens:
        return f"id({w.source})"
    return " . ".join(reversed(w.gens))


def _format_layer(l):
    parts = []
    if l.post:
        parts.append(" . ".join(reversed(l.post)))
    parts.append(l.atom.name + ("^-1" if l.atom.inverse else ""))
    if l.pre:
        parts.append(" . ".join(reversed(l.pre)))
    return " * ".join(parts)


def format_term(t):
    if not t.layers:
        return f"id({format_word(t.source)})"
    return " & ".join(_format_layer(l) for l in reversed(t.layers))


def format_presentation(P):
    lines = [f"2category {P.name}", "objects: " + ", ".join(P.objects)]
    if P.one_generators:
        lines.append("1cells:")
        lines += [f"  {g.name}: {g.source} -> {g.target}" for g in P.one_generators]
    if P.two_generators:
        lines.append("2cells:")
        for g in P.two_generators:
            inv = "invertible " if g.invertible else ""
            lines.append(f"  {inv}{g.name}: ({format_word(g.source)}) => ({format_word(g.target)})")
    if P.one_relations or P.two_relations:
        lines.append("relations:")
        lines += [f"  {format_word(a)} = {format_word(b)}" for a, b in P.one_relations]
        lines += [f"  {format_term(a)} = {format_term(b)}" for a, b in P.two_relations]
    return "\n".join(lines) + "\n"


def format_functor(F):
    lines = [f"2functor {F.name}: {F.source} -> {F.target}"]
    if F.objects:
        lines.append("on objects:")
        lines += [f"  {k}: {v}" for k, v in F.objects.items()]
    if F.one_cells:
        lines.append("on 1cells:")
        lines += [f"  {k}: {format_word(v)}" for k, v in F.one_cells.items()]
    if F.two_cells:
        lines.append("on 2cells:")
        lines += [f"  {k}: {format_term(v)}" for k, v in F.two_cells.items()]
    return "\n".join(lines) + "\n"


def format_cone(C):
    lines = [f"cone {C.name}: Delta {C.summit} => {C.functor} {C.flavor}"]
    lines += [f"  at {k}: {format_word(v)}" for k, v in C.objects.items()]
    lines += [f"  at 1cell {k}: {format_term(v)}" for k, v in C.morphisms.items()]
    return "\n".join(lines) + "\n"


def format_document(doc):
    chunks = []
    for kind, name in doc.order:
        if kind == "2category":
            chunks.append(format_presentation(doc.presentations[name]))
        elif kind == "2functor":
            chunks.append(format_functor(doc.functors[name]))
        else:
            chunks.append(format_cone(doc.cones[name]))
    return "\n".join(chunks)
