import itertools

import pytest

from bicat.closure import equal_two_cells, two_cells
from bicat.diagram import (TwoFunctor, check_functor, check_modification,
                           check_transformation, component_at, constant_functor, cone_text,
                           enumerate_all_cones, enumerate_cones, enumerate_modifications,
                           identity_modification, postcompose_cone, postwhisker_modification,
                           vcompose_modifications)
from bicat.dsl import parse_term, parse_word
from bicat.errors import UnknownNameError
from bicat.finite import FAILS, HOLDS
from bicat.presentation import FLAVORS, OneCellWord, compose_one, identity_term, vcompose, whisker

NAMES = ["ce_strict_gap", "ce_lax_extra", "ce_lax_extra_inv", "ce_lax_terminal",
         "ce_lax_terminal_inv", "ce_laxcone_strict", "ce_laxlimit_notterminal",
         "ce_laxlimit_notterminal_inv", "ce_laxterminal_notlimit", "ce_laxterminal_notlimit_inv"]


def held(v):
    return v.status == HOLDS


def texts(cones):
    return sorted(cone_text(c) for c in cones)


def test_functors_hold(corpus, b):
    for inst in corpus.values():
        assert held(check_functor(inst.F, b)), inst.name


def test_boundary_violation_detected(corpus, b):
    F = corpus["ce_laxcone_strict"].F
    bad = TwoFunctor("bad", F.source, F.target, F.objects,
                     {"x": F.one_cells["x"], "y": F.one_cells["x"]})
    v = check_functor(bad, b)
    assert v.status == FAILS and v.witnesses[0].kind == "boundary"


def test_constant_functor(corpus, b):
    inst = corpus["ce_strict_gap"]
    D = constant_functor(inst.I, inst.A, "L")
    assert set(D.objects.values()) == {"L"}
    assert held(check_functor(D, b))
    with pytest.raises(UnknownNameError):
        constant_functor(inst.I, inst.A, "Q")


def test_component_at_composite(corpus, b):
    inst = corpus["ce_laxcone_strict"]
    lam, A, I = inst.candidate, inst.A, inst.I
    assert component_at(lam, I.identity_word("0")).is_identity
    yx = I.word(("x", "y"), "0")
    got = component_at(lam, yx)
    want = vcompose(A, parse_term(A, "lambda_y"), parse_term(A, "b * lambda_x"))
    assert (got.source, got.target) == (parse_word(A, "b . a . lambda0"), parse_word(A, "lambda0"))
    assert held(equal_two_cells(A, got, want, b))


def test_strict_components_are_identities(corpus):
    inst = corpus["ce_strict_gap"]
    t = component_at(inst.candidate, inst.I.word(("u",), "0"))
    assert t.is_identity and t.source == parse_word(inst.A, "b . lambda0")


def test_extension_law(corpus, b):
    inst = corpus["ce_laxcone_strict"]
    lam, A, I = inst.candidate, inst.A, inst.I
    words = [I.word(w, "0") for w in [("x",), ("x", "y"), ("x", "y", "x")]]
    for f in words:
        for g in [I.word(("y",), "1"), I.word(("y", "x"), "1")]:
            if f.target != g.source:
                continue
            gf = compose_one(I, g, f)
            Gg, Ff = inst.F.map_word(g), lam.source.map_word(f)
            rhs = vcompose(A, whisker(A, None, component_at(lam, g), Ff),
                           whisker(A, Gg, component_at(lam, f), None))
            assert held(equal_two_cells(A, component_at(lam, gf), rhs, b))


def test_free_loop_flavors(corpus, b):
    lam = corpus["ce_laxcone_strict"].candidate
    assert held(check_transformation(lam, b))
    assert check_transformation(lam.with_flavor("pseudo"), b).status == FAILS
    assert held(check_transformation(corpus["ce_strict_gap"].candidate, b))


def test_cone_listings(corpus, b):
    assert texts(enumerate_all_cones(corpus["ce_strict_gap"].F, "strict", b)[0]) == [
        "(L, [lambda0, lambda1, b . lambda0])",
        "(X, [lambda0 . f, lambda1 . f, b . lambda0 . f])",
        "(X, [lambda0 . g, lambda1 . g, b . lambda0 . g])"]
    assert texts(enumerate_all_cones(corpus["ce_laxterminal_notlimit"].F, "lax", b)[0]) == [
        "(A, [id(A), f])", "(X, [alpha0, alpha1; alpha])", "(X, [alpha0, f . alpha0])"]
    F = corpus["ce_lax_terminal"].F
    assert texts(enumerate_cones(F, "X", "strict", b)[0]) == [
        "(X, [alpha0, alpha1, b . alpha0])",
        "(X, [lambda0 . f, lambda1 . f, b . lambda0 . f])"]
    assert len(enumerate_all_cones(F, "strict", b)[0]) == 3


@pytest.mark.parametrize("name", NAMES)
def test_flavor_chain(corpus, b, name):
    F = corpus[name].F
    for X in F.target.objects:
        keys = [{c.key(b) for c in enumerate_cones(F, X, fl, b)[0]} for fl in FLAVORS]
        assert keys[0] <= keys[1] <= keys[2]


@pytest.mark.parametrize("name", NAMES)
def test_enumerated_cones_revalidate(corpus, b, name):
    F = corpus[name].F
    for fl in FLAVORS:
        for c in enumerate_all_cones(F, fl, b)[0]:
            assert held(check_transformation(c, b))


def test_gamma_modification(corpus, b):
    for name in ("ce_strict_gap", "ce_laxcone_strict"):
        inst = corpus[name]
        A, lam = inst.A, inst.candidate
        lf = postcompose_cone(lam, parse_word(A, "f"), b)
        lg = postcompose_cone(lam, parse_word(A, "g"), b)
        mods, exact = enumerate_modifications(lf, lg, b)
        assert len(mods) == 1
        phi = mods[0]
        assert phi.components["0"].layers == parse_term(A, "gamma0").layers
        assert phi.components["1"].layers == parse_term(A, "gamma1").layers
        assert held(check_modification(phi, b))
    assert exact is False
    inst = corpus["ce_strict_gap"]
    lf = postcompose_cone(inst.candidate, parse_word(inst.A, "f"), b)
    mods, exact = enumerate_modifications(lf, lf, b)
    assert exact and [m.is_identity(b) for m in mods] == [True]


@pytest.mark.parametrize("name", NAMES)
def test_identity_modification_always_present(corpus, b, name):
    F = corpus[name].F
    for c in enumerate_all_cones(F, "lax", b)[0][:6]:
        keys = [m.key(b) for m in enumerate_modifications(c, c, b)[0]]
        assert identity_modification(c).key(b) in keys


def test_postcompose_unit_and_listing(corpus, b):
    inst = corpus["ce_strict_gap"]
    lam, A = inst.candidate, inst.A
    assert postcompose_cone(lam, A.identity_word("L"), b).key(b) == lam.key(b)
    assert cone_text(postcompose_cone(lam, parse_word(A, "f"), b)) == \
        "(X, [lambda0 . f, lambda1 . f, b . lambda0 . f])"
    t = corpus["ce_laxterminal_notlimit"]
    got = postcompose_cone(t.candidate, parse_word(t.A, "alpha0"), b)
    assert cone_text(got) == "(X, [alpha0, f . alpha0])"


@pytest.mark.parametrize("name", NAMES)
def test_postcompose_is_associative(corpus, b, name):
    inst = corpus[name]
    lam, A = inst.candidate, inst.A
    L = lam.summit
    from bicat.presentation import one_cells
    for Y in A.objects:
        for f in one_cells(A, Y, L, b):
            for X in A.objects:
                for g in one_cells(A, X, Y, b):
                    one = postcompose_cone(postcompose_cone(lam, f, b), g, b)
                    two = postcompose_cone(lam, compose_one(A, f, g), b)
                    assert one.key(b) == two.key(b)


def test_postwhisker(corpus, b):
    inst = corpus["ce_lax_extra"]
    lam, A = inst.candidate, inst.A
    f = parse_word(A, "f")
    assert postwhisker_modification(lam, identity_term(A, f), b).is_identity(b)
    phi = postwhisker_modification(lam, parse_term(A, "alpha"), b)
    assert phi.text() == "(lambda0 * alpha, lambda1 * alpha, b . lambda0 * alpha)"
    assert held(check_modification(phi, b))


def test_no_two_cell_reaches_gamma(corpus, b):
    inst = corpus["ce_strict_gap"]
    A = inst.A
    assert list(two_cells(A, parse_word(A, "f"), parse_word(A, "g"), b)) == []


def test_postwhisker_respects_vertical_composition(corpus, b):
    inst = corpus["ce_laxlimit_notterminal_inv"]
    lam, A = inst.candidate, inst.A
    a, ai = parse_term(A, "alpha"), parse_term(A, "alpha^-1")
    for t2, t1 in [(ai, a), (a, ai)] + [(x, y) for x, y in itertools.product([a], [ai])]:
        whole = postwhisker_modification(lam, vcompose(A, t2, t1), b)
        parts = vcompose_modifications(postwhisker_modification(lam, t2, b),
                                       postwhisker_modification(lam, t1, b), b)
        assert whole.key(b) == parts.key(b)
