import pytest
from hypothesis import given, settings, strategies as st

from bicat.corpus import corpus_dir
from bicat.dsl import (format_document, format_presentation, format_term, parse_document,
                       parse_presentation, parse_term, parse_word)
from bicat.errors import BoundaryError, DSLSyntaxError, UnknownNameError
from bicat.presentation import OneCellWord, OneGenerator, Presentation, TwoGenerator

FILES = sorted(corpus_dir().glob("*.bicat"))

HEAD = "2category A\nobjects: X, L, B\n1cells:\n  f: X -> L\n  lambda0: L -> B\n"


def test_corpus_is_present():
    assert len(FILES) == 6


@pytest.mark.parametrize("path", FILES, ids=[p.stem for p in FILES])
def test_round_trip(path):
    doc = parse_document(path.read_text())
    again = parse_document(format_document(doc))
    assert again == doc
    assert format_document(again) == format_document(doc)


@pytest.mark.parametrize("path", FILES, ids=[p.stem for p in FILES])
def test_round_trip_with_inverses(path):
    doc = parse_document(path.read_text())
    names = [g.name for g in doc.presentations["A"].two_generators]
    inv = parse_document(path.read_text(), {"A": names})
    assert all(g.invertible for g in inv.presentations["A"].two_generators)
    assert parse_document(format_document(inv)) == inv


def test_unknown_name_in_boundary():
    text = HEAD + "2cells:\n  gamma0: (lambda0 . f) => (lambda0 . h)\n"
    with pytest.raises(UnknownNameError):
        parse_presentation(text)


def test_syntax_error_position():
    text = HEAD + "2cells:\n  gamma0: (lambda0 . f) => (lambda0 $ f)\n"
    with pytest.raises(DSLSyntaxError) as e:
        parse_presentation(text)
    assert (e.value.line, e.value.column) == (7, 37)


def test_error_column_in_relation_and_cone():
    text = HEAD + "  g: X -> L\nrelations:\n  lambda0 . f = lambda0 . g . f\n"
    with pytest.raises(DSLSyntaxError) as e:
        parse_presentation(text)
    assert (e.value.line, e.value.column) == (8, 31)
    doc = HEAD + "2category I\nobjects: 0\n\n2functor F: I -> A\non objects:\n  0: B\n\n" \
        "cone c: Delta L => F\n  at 0: lambda0 ! f\n"
    with pytest.raises(DSLSyntaxError) as e:
        parse_document(doc)
    assert (e.value.line, e.value.column) == (14, 17)


def test_boundary_mismatch():
    with pytest.raises(BoundaryError):
        parse_presentation(HEAD + "relations:\n  f = lambda0 . f\n")


def test_inverse_needs_declaration():
    P = parse_presentation(HEAD + "  g: X -> L\n2cells:\n  alpha: (f) => (g)\n")
    with pytest.raises(DSLSyntaxError, match="not declared invertible"):
        parse_term(P, "alpha^-1")


def test_operator_precedence():
    P = parse_presentation(HEAD + "  g: X -> L\n2cells:\n  alpha: (f) => (g)\n"
                              "  beta: (g) => (f)\n")
    t = parse_term(P, "lambda0 * beta & lambda0 * alpha")
    assert [l.atom.name for l in t.layers] == ["alpha", "beta"]
    assert t.source == t.target == parse_word(P, "lambda0 . f")
    assert format_term(t) == "lambda0 * beta & lambda0 * alpha"


names = st.sampled_from(["p", "q", "r", "s", "t", "u"])


@st.composite
def presentations(draw):
    objs = draw(st.lists(st.sampled_from(["X", "Y", "Z", "W"]), min_size=1, max_size=4,
                         unique=True))
    gen_names = draw(st.lists(names, max_size=5, unique=True))
    gens = [OneGenerator(n, draw(st.sampled_from(objs)), draw(st.sampled_from(objs)))
            for n in gen_names]
    twos = []
    for n, g in enumerate(gens[:3]):
        w = OneCellWord(g.source, g.target, (g.name,))
        twos.append(TwoGenerator(f"c{n}", w, w, draw(st.booleans())))
    return Presentation("P", objs, gens, twos)


@settings(max_examples=60, deadline=None)
@given(presentations())
def test_generated_presentations_round_trip(P):
    Q = parse_presentation(format_presentation(P))
    assert Q.signature() == P.signature()
