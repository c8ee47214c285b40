from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from coha_workbench.current import (
    CurrentElement, CutoffExceeded, TwistWeights, current_algebra_suite, heisenberg_check, partial_u, rescale_map,
    rescaling_check, trivial_bracket, trivial_u_derivation_witness, twisted_bracket, u_action,
)
from coha_workbench.lie import serre_quotient, simple_presentation
from coha_workbench.quiver import MixedSigns, linear_quiver

G = serre_quotient(simple_presentation(linear_quiver(2)), (2, 2))
W11 = TwistWeights((1, 1))
W23 = TwistWeights((2, 3))


def B(label, p=0, coeff=1, g=G):
    return CurrentElement.basis(g, label, p, coeff)


def G12(p=0, coeff=1):
    (lab, c), = G.bracket_basis("G1", "G2").items()
    return B(lab, p, coeff * c)


def test_twisted_bracket_examples():
    assert twisted_bracket(G, W11, B("G1", 1), B("G2", 1)) == G12(2, Fraction(1, 4))
    assert twisted_bracket(G, W11, B("G1"), B("G2")) == G12()
    assert not twisted_bracket(G, W11, B("G1", 1), B("G1"))


def test_trivial_bracket_examples():
    assert trivial_bracket(G, B("G1", 1), B("G2", 1)) == G12(2)
    assert trivial_bracket(G, B("G1"), B("G2")) == twisted_bracket(G, W11, B("G1"), B("G2"))


def test_cutoff_exceeded():
    (lab, _), = G.bracket_basis("G1", "G2").items()
    g = serre_quotient(simple_presentation(linear_quiver(2)), (1, 1), strict=False)
    with pytest.raises(CutoffExceeded):
        twisted_bracket(g, W11, B(lab, g=g), B("G1", g=g))


def test_u_and_partial_examples():
    assert u_action(B("G1")) == B("G1", 1)
    assert partial_u(W11, B("G1", 2)) == B("G1", 1, 2)
    # |d| = 3 at d = (0, 1) for r = (2, 3)
    assert partial_u(W23, B("G2", 2)) == B("G2", 1, 6)
    assert not partial_u(W23, B("G2", 0))


def test_trivial_bracket_breaks_u_derivation():
    key, lhs, rhs = trivial_u_derivation_witness(G)
    assert lhs != rhs


def test_heisenberg_examples():
    rep = heisenberg_check(G, W11, 3)
    assert rep.passed, rep.failures()
    for p in range(4):
        X = B("G1", p)
        assert partial_u(W11, u_action(X)) - u_action(partial_u(W11, X)) == X
    charges = heisenberg_check(G, W23, 3).data["central_charges"]
    assert charges == {"0,1": 3, "1,0": 2, "1,1": 5}


def test_rescale_examples():
    assert rescale_map(W23, B("G1", 1)) == B("G1", 1, Fraction(1, 2))
    assert rescale_map(W23, B("G1", 0)) == B("G1", 0)


@pytest.mark.parametrize("r", [(1, 1), (2, 3), (-1, -2)])
def test_suites_pass_on_a2(r):
    w = TwistWeights(r)
    assert current_algebra_suite(G, w, 3).passed
    assert rescaling_check(G, w, 3).passed


def test_suite_on_a3():
    g = serre_quotient(simple_presentation(linear_quiver(3)), (1, 1, 1), strict=False)
    assert current_algebra_suite(g, TwistWeights((1, 2, 5)), 2).passed


def test_twist_weights_validate():
    with pytest.raises(MixedSigns):
        TwistWeights((1, -1))
    with pytest.raises(ValueError):
        TwistWeights((0, 1))((1, 0))


coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)
labels = st.sampled_from(["G1", "G2"])


@settings(max_examples=100)
@given(st.tuples(st.integers(1, 4), st.integers(1, 4)),
       st.lists(st.tuples(labels, st.integers(0, 3), coeffs), min_size=1, max_size=3),
       st.lists(st.tuples(labels, st.integers(0, 3), coeffs), min_size=1, max_size=3))
def test_rescaling_transport_random(r, xs, ys):
    w = TwistWeights(r)
    X = CurrentElement()
    Y = CurrentElement()
    for lab, p, c in xs:
        X = X + B(lab, p, c)
    for lab, p, c in ys:
        Y = Y + B(lab, p, c)
    assert twisted_bracket(G, w, rescale_map(w, X), rescale_map(w, Y)) == rescale_map(w, trivial_bracket(G, X, Y))
    # u is a derivation and the twisted bracket is antisymmetric, bilinearly
    assert u_action(twisted_bracket(G, w, X, Y)) == twisted_bracket(G, w, u_action(X), Y) + twisted_bracket(G, w, X, u_action(Y))
    assert twisted_bracket(G, w, X, Y) == -twisted_bracket(G, w, Y, X)
