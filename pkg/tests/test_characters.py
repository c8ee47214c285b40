import json

import pytest
from hypothesis import given, settings, strategies as st

from coha_workbench.characters import (
    Character, character_of_lie, pbw_character_check, pbw_monomial_count, plethystic_exp, tensor_polynomial_ring,
)
from coha_workbench.lie import serre_quotient, simple_presentation
from coha_workbench.quiver import linear_quiver

from oracles import plethystic_exp_one_variable


def test_exp_examples():
    f = Character((5,), (0, 0), {((1,), 0): 1})
    assert plethystic_exp(f).coefficient((3,), 0) == 1
    f = Character((3,), (0, 8), {((1,), 2): 1})
    e = plethystic_exp(f)
    assert e.coefficient((2,), 4) == 1
    assert e.poly((2,)) == {4: 1}
    f = Character((3,), (0, 4), {((1,), 1): 1})
    assert plethystic_exp(f, signed=True).coefficient((2,), 2) == 0
    assert plethystic_exp(f, signed=False).coefficient((2,), 2) == 1


def test_exp_rejects_constant_term():
    with pytest.raises(ValueError):
        plethystic_exp(Character.one((2,), (0, 2)))


def test_coefficient_outside_cutoff_refused():
    with pytest.raises(ValueError):
        Character.one((2,), (0, 2)).coefficient((3,), 0)


def test_tensor_polynomial_ring_examples():
    one = Character.one((0,), (0, 6))
    assert tensor_polynomial_ring(one, 1) == Character((0,), (0, 6), {((0,), k): 1 for k in (0, 2, 4, 6)})
    two = tensor_polynomial_ring(one, 2)
    assert two.coefficient((0,), 4) == 3
    assert tensor_polynomial_ring(tensor_polynomial_ring(one, 1), 1) == two
    with pytest.raises(ValueError):
        tensor_polynomial_ring(one, 0)


def test_pbw_a2():
    g = serre_quotient(simple_presentation(linear_quiver(2)), (2, 2))
    rep = pbw_character_check(character_of_lie(g, (0, 8)))
    assert rep.passed, rep.failures()


def test_pbw_empty_is_unit():
    empty = Character((2, 2), (0, 8))
    assert pbw_monomial_count(empty) == Character.one((2, 2), (0, 8))
    assert pbw_character_check(empty).passed


def test_jordan_pbw_counts_partitions():
    # one class at t: u^p t has weight 1 + p, so weight-N counts are partition numbers
    n = Character((6,), (0, 12), {((1,), 0): 1})
    rep = pbw_character_check(n)
    assert rep.passed
    chi = pbw_monomial_count(n)
    parts = plethystic_exp_one_variable({k: 1 for k in range(1, 7)}, 6)
    for N in range(1, 7):
        total = sum(chi.coefficient((d,), 2 * (N - d)) for d in range(1, N + 1))
        assert total == parts[N]


def test_pbw_signed_odd_classes():
    n = Character((3, 3), (0, 9), {((1, 0), 1): 1, ((0, 1), 0): 2, ((1, 1), 3): 1})
    assert pbw_character_check(n, signed=True).passed
    assert pbw_character_check(n, signed=False).passed


def test_serialization_round_trip():
    c = Character((2, 1), (0, 4), {((1, 0), 2): "1/3", ((2, 1), 0): -2})
    data = json.loads(c.dumps())
    assert all(set(row) == {"d", "k", "c"} for row in data)
    assert Character.from_list((2, 1), (0, 4), data) == c


small = st.dictionaries(st.tuples(st.integers(0, 2), st.integers(0, 2)).filter(any).map(lambda d: (d, 0)),
                        st.integers(0, 2), max_size=3)


def _char(coeffs, k_of=lambda d: 0):
    return Character((3, 3), (0, 6), {(d, k_of(d) + k): v for (d, k), v in coeffs.items()})


@settings(max_examples=40, deadline=None)
@given(small, small, st.booleans())
def test_exp_is_multiplicative(f, g, odd):
    k_of = (lambda d: d[0] % 2) if odd else (lambda d: 0)
    F, Gc = _char(f, k_of), _char(g, k_of)
    assert plethystic_exp(F + Gc) == plethystic_exp(F) * plethystic_exp(Gc)


@settings(max_examples=30, deadline=None)
@given(small)
def test_signed_and_unsigned_agree_in_even_degrees(f):
    F = _char(f, lambda d: 2 * d[1])
    assert plethystic_exp(F, True) == plethystic_exp(F, False)


@given(st.integers(1, 3), st.integers(0, 2))
def test_single_class_powers(d, k):
    f = Character((6,), (0, 12), {((d,), 2 * k): 1})
    e = plethystic_exp(f)
    for m in range(1, 6 // d + 1):
        if 2 * k * m <= 12:
            assert e.coefficient((m * d,), 2 * k * m) == 1
