import json
import shutil

import pytest

from bicat.corpus import (LIMIT, TERMINAL, corpus_dir, corpus_instances, evaluate, load_file,
                          table_spec, verify_paper)
from bicat.diagram import check_transformation
from bicat.finite import FAILS, HOLDS
from bicat.presentation import Bounds

NAMES = ["ce_strict_gap", "ce_lax_extra", "ce_lax_extra_inv", "ce_lax_terminal",
         "ce_lax_terminal_inv", "ce_laxcone_strict", "ce_laxlimit_notterminal",
         "ce_laxlimit_notterminal_inv", "ce_laxterminal_notlimit", "ce_laxterminal_notlimit_inv"]


@pytest.fixture(scope="module")
def report(b):
    return verify_paper(b)


def test_ten_instances(corpus):
    assert sorted(corpus) == sorted(NAMES)
    for inst in corpus.values():
        assert inst.anchor and inst.expectations


def test_candidates_are_valid(corpus, b):
    for inst in corpus.values():
        assert check_transformation(inst.candidate, b).status == HOLDS, inst.name


def test_reductions_only_flip_invertibility(corpus):
    for inst in corpus.values():
        if not inst.invertible:
            continue
        base = corpus[inst.base].A
        sig = lambda P: [(g.name, g.source, g.target) for g in P.two_generators]
        assert sig(base) == sig(inst.A)
        assert {g.name for g in inst.A.two_generators if g.invertible} == set(inst.invertible)
        assert base.one_relations == inst.A.one_relations


def test_instance_expectations(corpus, b):
    gap = corpus["ce_strict_gap"]
    assert evaluate(gap, TERMINAL, "strict", "strict", "iso", b).status == HOLDS
    assert evaluate(gap, LIMIT, "strict", None, "iso", b).status == FAILS
    ln = corpus["ce_laxlimit_notterminal"]
    assert evaluate(ln, LIMIT, "lax", None, "iso", b).status == HOLDS
    assert evaluate(ln, TERMINAL, "lax", "lax", "iso", b).status == FAILS
    inv = corpus["ce_lax_terminal_inv"]
    assert evaluate(inv, TERMINAL, "strict", "pseudo", "iso", b).status == HOLDS
    assert evaluate(inv, LIMIT, "strict", None, "iso", b).status == FAILS


def test_unproven_expectation_is_flagged(corpus):
    notes = [e for e in corpus["ce_lax_terminal"].expectations if e.note]
    assert notes and all(e.cone_flavor == "lax" for e in notes)


def test_table_cells_cover_corpus(report):
    assert [t["id"] for t in report.tables] == [1, 2, 3, 4]
    named = {c.text for t in report.tables for c in t["cells"] if c.text != "implication"}
    assert named == set(NAMES)
    for t in report.tables:
        assert len(t["cells"]) == 3 * len(t["row_order"])
        for c in t["cells"]:
            if c.text == "implication" and c.ok:
                assert c.detail.startswith("holds on ")


def test_cited_cells(report):
    cell = lambda tid, row, col: [c for c in report.tables[tid - 1]["cells"]
                                  if c.row == row and c.column == col][0]
    c = cell(1, "lax", "strict")
    assert c.text == "ce_lax_extra" and c.ok and c.detail == "limit holds, terminal fails"
    c = cell(2, "strict", "lax")
    assert c.text == "ce_laxcone_strict" and c.certificate == "bounded"
    assert all(cell(3, "pseudo", fl).text == "implication" and cell(3, "pseudo", fl).ok
               for fl in ("strict", "pseudo", "lax"))


def test_global_implications_hold(report):
    assert [i["violations"] for i in report.implications] == [0, 0]
    assert all(i["checked"] > 0 for i in report.implications)


def test_report_serializes(report):
    d = json.loads(json.dumps(report.to_dict()))
    assert d["ok"] == report.ok
    assert len(d["checks"]) == len(report.checks) == 56
    assert report.text().splitlines()[-1] == ("PASS" if report.ok else "FAIL")


def test_corpus_dir_override(tmp_path, monkeypatch, b):
    for p in corpus_dir().iterdir():
        if p.is_file():
            shutil.copy(p, tmp_path / p.name)
    data = json.loads((tmp_path / "expected.json").read_text())
    data["instances"] = data["instances"][:1]
    (tmp_path / "expected.json").write_text(json.dumps(data))
    monkeypatch.setenv("BICAT_CORPUS_DIR", str(tmp_path))
    assert [i.name for i in corpus_instances()] == ["ce_strict_gap"]
    assert len(table_spec()) == 4


def test_load_file(b):
    model = load_file(corpus_dir() / "ce_lax_extra.bicat")
    assert list(model.cones) == ["lambda"] and list(model.functors) == ["F"]


@pytest.mark.parametrize("name", ["ce_strict_gap", "ce_lax_extra", "ce_laxterminal_notlimit",
                                  "ce_lax_terminal_inv"])
def test_larger_bounds_keep_statuses(corpus, b, name):
    inst = corpus[name]
    bigger = Bounds(b.max_word_length + 1, b.max_layers + 1, b.max_rewrite_steps)
    for e in inst.expectations:
        small = evaluate(inst, e.question, e.cone_flavor, e.slice_flavor, e.strength, b)
        large = evaluate(inst, e.question, e.cone_flavor, e.slice_flavor, e.strength, bigger)
        if small.status in (HOLDS, FAILS):
            assert large.status == small.status, e
