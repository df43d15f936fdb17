"""The shipped counter-example corpus and the four verdict matrices.

Instances live as DSL files next to ``expected.json``; invertible reductions
are derived from their base file by flipping invertible flags at parse time.
``BICAT_CORPUS_DIR`` points the loader at another directory.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .diagram import TwoFunctor, check_transformation, make_cone
from .dsl import parse_document
from .errors import FlavorError
from .finite import FAILS, HOLDS, Verdict, Witness
from .presentation import DEFAULT_BOUNDS, FLAVORS, PSEUDO, STRICT
from .slices import build_slice
from .universality import BI, ISO, is_bi_terminal, is_limit, is_two_terminal

LIMIT = "limit"
TERMINAL = "terminal"


def corpus_dir():
    env = os.environ.get("BICAT_CORPUS_DIR")
    if env:
        return Path(env)
    return Path(str(resources.files("bicat") / "corpus_data"))


@dataclass
class Model:
    """Presentations, functors and cones realised from a parsed document."""
    document: object
    presentations: dict
    functors: dict
    cones: dict


def realize(doc):
    functors = {}
    for name, fd in doc.functors.items():
        functors[name] = TwoFunctor(name, doc.presentations[fd.source],
                                    doc.presentations[fd.target],
                                    fd.objects, fd.one_cells, fd.two_cells)
    cones = {}
    for name, cd in doc.cones.items():
        cones[name] = make_cone(functors[cd.functor], cd.summit, cd.objects, cd.morphisms,
                                cd.flavor, name)
    return Model(doc, dict(doc.presentations), functors, cones)


def load_file(path, invertible=None):
    return realize(parse_document(Path(path).read_text(encoding="utf-8"), invertible))


@dataclass(frozen=True)
class Expectation:
    question: str
    cone_flavor: str
    slice_flavor: str
    strength: str
    expected: str
    note: str = ""

    def label(self):
        if self.question == LIMIT:
            return f"{self.strength}-limit of {self.cone_flavor} cones"
        word = "2-terminal" if self.strength == ISO else "bi-terminal"
        return f"{word} in {self.slice_flavor} slice of {self.cone_flavor} cones"


@dataclass
class CorpusInstance:
    name: str
    base: str
    invertible: tuple
    anchor: str
    model: Model
    expectations: list = field(default_factory=list)

    @property
    def I(self):
        return self.F.source

    @property
    def A(self):
        return self.F.target

    @property
    def F(self):
        return next(iter(self.model.functors.values()))

    @property
    def candidate(self):
        return next(iter(self.model.cones.values()))


def corpus_instances(directory=None):
    directory = Path(directory) if directory else corpus_dir()
    data = json.loads((directory / "expected.json").read_text(encoding="utf-8"))
    out = []
    for entry in data["instances"]:
        text = (directory / f"{entry['base']}.bicat").read_text(encoding="utf-8")
        inv = {"A": entry["invertible"]} if entry["invertible"] else None
        model = realize(parse_document(text, inv))
        exps = [Expectation(e["question"], e["cone_flavor"], e.get("slice_flavor"),
                            e["strength"], e["expected"], e.get("note", ""))
                for e in entry["expect"]]
        out.append(CorpusInstance(entry["name"], entry["base"], tuple(entry["invertible"]),
                                  entry["anchor"], model, exps))
    return out


def table_spec(directory=None):
    directory = Path(directory) if directory else corpus_dir()
    return json.loads((directory / "expected.json").read_text(encoding="utf-8"))["tables"]


def evaluate(inst, question, cone_flavor, slice_flavor=None, strength=ISO, b=DEFAULT_BOUNDS):
    """Run one question against an instance's candidate cone."""
    F, lam = inst.F, inst.candidate
    if question == LIMIT:
        return is_limit(F, lam, cone_flavor, strength, b)
    if slice_flavor is None:
        raise ValueError("a terminality question needs a slice flavor")
    if lam.flavor != cone_flavor:
        lam = lam.with_flavor(cone_flavor)
        if check_transformation(lam, b).status != HOLDS:
            raise FlavorError(f"candidate is not a valid {cone_flavor} cone")
    S = build_slice(F, cone_flavor, slice_flavor, b)
    return is_two_terminal(S, lam) if strength == ISO else is_bi_terminal(S, lam)


@dataclass
class Check:
    instance: str
    expectation: Expectation
    verdict: Verdict

    @property
    def ok(self):
        return self.verdict.status == self.expectation.expected

    def to_dict(self):
        e = self.expectation
        return {"question": e.question, "instance": self.instance, "flavor": e.cone_flavor,
                "slice_flavor": e.slice_flavor, "strength": e.strength,
                "expected": e.expected, "match": self.ok, "note": e.note,
                **self.verdict.to_dict()}


@dataclass
class Cell:
    row: str
    column: str
    text: str
    ok: bool
    detail: str = ""
    certificate: str = "exact"


@dataclass
class Report:
    checks: list
    tables: list
    implications: list
    bounds: object

    @property
    def ok(self):
        return all(c.ok for c in self.checks) and \
            all(cell.ok for t in self.tables for cell in t["cells"]) and \
            all(i["violations"] == 0 for i in self.implications)

    @property
    def mismatches(self):
        return [c for c in self.checks if not c.ok]

    def to_dict(self):
        return {
            "ok": self.ok,
            "bounds": self.bounds.to_dict(),
            "checks": [c.to_dict() for c in self.checks],
            "tables": [{"id": t["id"], "title": t["title"], "cells": [
                {"row": c.row, "column": c.column, "text": c.text, "ok": c.ok,
                 "detail": c.detail, "certificate": c.certificate} for c in t["cells"]]}
                for t in self.tables],
            "implications": self.implications,
        }

    def text(self, unicode=False):
        tick = "✓" if unicode else "ok"
        lines = []
        for t in self.tables:
            lines.append(f"Table {t['id']}: {t['title']}")
            cols = ["strict cones", "pseudo cones", "lax cones"]
            lines.append(f"  {'slice':<8}| " + " | ".join(f"{c:<30}" for c in cols))
            for row in t["row_order"]:
                cells = [c for c in t["cells"] if c.row == row]
                shown = []
                for c in cells:
                    mark = tick if c.ok else "MISMATCH"
                    shown.append(f"{c.text} [{mark}]"[:30].ljust(30))
                lines.append(f"  {row:<8}| " + " | ".join(shown))
            lines.append("")
        bad = self.mismatches
        lines.append(f"{len(self.checks)} expectations, {len(bad)} mismatches")
        for c in bad:
            lines.append(f"  MISMATCH {c.instance}: {c.expectation.label()} expected "
                         f"{c.expectation.expected}, got {c.verdict.status} "
                         f"({c.verdict.certificate})")
            for w in c.verdict.witnesses[:3]:
                lines.append(f"    {w.kind}: {w.text}")
        for i in self.implications:
            lines.append(f"  {i['name']}: {i['checked']} checked, {i['violations']} violations")
        lines.append("PASS" if self.ok else "FAIL")
        return "\n".join(lines)


def _compute(cache, inst, q, c, s, st, b):
    key = (inst.name, q, c, s, st)
    if key not in cache:
        try:
            cache[key] = evaluate(inst, q, c, s, st, b)
        except FlavorError as err:
            cache[key] = Verdict(FAILS, "exact", (Witness("flavor", str(err)),), b)
    return cache[key]


def verify_paper(b=DEFAULT_BOUNDS, directory=None):
    instances = corpus_instances(directory)
    by_name = {i.name: i for i in instances}
    cache = {}
    checks = []
    for inst in instances:
        for e in inst.expectations:
            v = _compute(cache, inst, e.question, e.cone_flavor, e.slice_flavor, e.strength, b)
            checks.append(Check(inst.name, e, v))
    tables = []
    for t in table_spec(directory):
        cells = []
        for row, entries in t["rows"].items():
            for col, entry in zip(FLAVORS, entries):
                if entry.get("implication"):
                    cells.append(_implication_cell(cache, instances, row, col, entry, b))
                else:
                    cells.append(_counter_cell(cache, by_name[entry["instance"]], row, col,
                                               entry, t["direction"], b))
        tables.append({"id": t["id"], "title": t["title"], "cells": cells,
                       "row_order": list(t["rows"])})
    implications = _global_implications(cache, instances, b)
    return Report(checks, tables, implications, b)


def _implication_cell(cache, instances, row, col, entry, b):
    c, s, st = entry["cone_flavor"], entry["slice_flavor"], entry["strength"]
    applicable, bad, cert = [], [], "exact"
    for inst in instances:
        lim = _compute(cache, inst, LIMIT, c, None, st, b)
        if lim.status != HOLDS:
            continue
        applicable.append(inst.name)
        term = _compute(cache, inst, TERMINAL, c, s, st, b)
        if "bounded" in (lim.certificate, term.certificate):
            cert = "bounded"
        if term.status != HOLDS:
            bad.append(inst.name)
    ok = bool(applicable) and not bad
    detail = f"holds on {', '.join(applicable)}" if ok else \
        f"violated by {', '.join(bad)}" if bad else "no applicable instance"
    return Cell(row, col, "implication", ok, detail, cert)


def _counter_cell(cache, inst, row, col, entry, direction, b):
    c, s, st = entry["cone_flavor"], entry["slice_flavor"], entry["strength"]
    lim = _compute(cache, inst, LIMIT, c, None, st, b)
    term = _compute(cache, inst, TERMINAL, c, s, st, b)
    if direction == "limit_implies_terminal":
        ok = lim.status == HOLDS and term.status == FAILS
    else:
        ok = term.status == HOLDS and lim.status == FAILS
    cert = "exact" if lim.certificate == term.certificate == "exact" else "bounded"
    detail = f"limit {lim.status}, terminal {term.status}"
    return Cell(row, col, inst.name, ok, detail, cert)


def _global_implications(cache, instances, b):
    """2-terminal implies bi-terminal and iso-limit implies bi-limit, everywhere."""
    term_checked = term_bad = lim_checked = lim_bad = 0
    for inst in instances:
        for c in FLAVORS:
            try:
                iso = _compute(cache, inst, LIMIT, c, None, ISO, b)
            except FlavorError:
                continue
            if iso.witnesses and iso.witnesses[0].kind == "flavor":
                continue
            if iso.status == HOLDS:
                lim_checked += 1
                if _compute(cache, inst, LIMIT, c, None, BI, b).status != HOLDS:
                    lim_bad += 1
            for s in FLAVORS:
                t = _compute(cache, inst, TERMINAL, c, s, ISO, b)
                if t.status == HOLDS:
                    term_checked += 1
                    if _compute(cache, inst, TERMINAL, c, s, BI, b).status != HOLDS:
                        term_bad += 1
    return [{"name": "2-terminal implies bi-terminal", "checked": term_checked,
             "violations": term_bad},
            {"name": "iso-limit implies bi-limit", "checked": lim_checked,
             "violations": lim_bad}]
