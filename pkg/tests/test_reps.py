import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from coha_workbench.quiver import build_double, corpus, jordan, kronecker, linear_quiver
from coha_workbench.replab import (
    PrimeField, QuiverRepFq, batch_rank_mod_p, ext1_dim, ext_quiver, gl_order, hom_dim, moment_map,
    nullspace_mod_p, rank_mod_p,
)

from oracles import brute_gl_order

A2 = linear_quiver(2)


def test_prime_field():
    assert PrimeField(7).inv[3] == 5
    assert PrimeField(7).primitive_root() == 3
    for bad in (1, 4, 9):
        with pytest.raises(ValueError):
            PrimeField(bad)


def test_gl_order_examples():
    assert gl_order((2,), 2) == 6
    assert gl_order((1, 1), 3) == 4
    assert gl_order((0,), 5) == 1


@pytest.mark.parametrize("n,q", [(1, 2), (2, 2), (2, 3), (3, 2)])
def test_gl_order_vs_brute(n, q):
    assert gl_order((n,), q) == brute_gl_order(n, q)


def test_moment_map_examples():
    DJ = build_double(jordan())
    for a in range(5):
        for b in range(5):
            mu = moment_map(QuiverRepFq(DJ, (1,), 5, {"a": [[a]], "a*": [[b]]}))
            assert mu["1"][0, 0] == 0
    D = build_double(A2)
    mu = moment_map(QuiverRepFq(D, (1, 1), 5, {"a": [[2]], "a*": [[3]]}))
    assert (mu["1"][0, 0], mu["2"][0, 0]) == ((-6) % 5, 6 % 5)
    zero = moment_map(QuiverRepFq(D, (2, 1), 3))
    assert all(not m.any() for m in zero.values())
    with pytest.raises(ValueError):
        moment_map(QuiverRepFq(A2, (1, 1), 3))


def test_rep_shape_validation():
    with pytest.raises(ValueError):
        QuiverRepFq(A2, (1, 1), 3, {"a": [[1, 2]]})
    with pytest.raises(ValueError):
        QuiverRepFq(A2, (1, 1), 3, {"zz": [[1]]})


def test_hom_ext_examples():
    S1, S2 = QuiverRepFq.simple(A2, "1", 3), QuiverRepFq.simple(A2, "2", 3)
    assert hom_dim(S1, S1) == 1
    assert ext1_dim(S1, S2) == 1
    assert ext1_dim(S2, S1) == 0
    P1 = QuiverRepFq(A2, (1, 1), 3, {"a": [[1]]})
    assert hom_dim(P1, S1) == 1 and hom_dim(S1, P1) == 0 and hom_dim(S2, P1) == 1


@pytest.mark.parametrize("name", sorted(corpus()))
def test_ext_quiver_of_vertex_simples_is_q(name):
    Q = corpus()[name]
    E, zeta, rep = ext_quiver([QuiverRepFq.simple(Q, v, 2) for v in Q.vertices], Q.vertices)
    assert rep.passed
    assert sorted((a.src, a.tgt) for a in E.arrows) == sorted((a.src, a.tgt) for a in Q.arrows)
    assert zeta(tuple(range(1, Q.n + 1))) == tuple(range(1, Q.n + 1))


def test_ext_quiver_jordan_two_loops():
    J = jordan()
    S = [QuiverRepFq(J, (1,), 5, {"a": [[lam]]}) for lam in (1, 3)]
    E, zeta, rep = ext_quiver(S)
    assert rep.passed
    assert len(E.arrows) == 2 and all(a.src == a.tgt for a in E.arrows)
    assert {a.src for a in E.arrows} == {"1", "2"}


def test_ext_quiver_flags_isomorphic_inputs():
    S = QuiverRepFq.simple(A2, "1", 2)
    _, _, rep = ext_quiver([S, S])
    assert not rep.passed
    assert rep.failures()[0].name.startswith("simplicity")


def test_ext_quiver_non_vertex_simples_on_kronecker():
    # two non-isomorphic bricks of dimension (1,1) for the Kronecker quiver
    K = kronecker()
    M = QuiverRepFq(K, (1, 1), 3, {"a": [[1]], "b": [[0]]})
    N = QuiverRepFq(K, (1, 1), 3, {"a": [[0]], "b": [[1]]})
    E, zeta, rep = ext_quiver([M, N])
    assert rep.passed
    assert zeta((1, 1)) == (2, 2)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 5), st.integers(1, 5), st.sampled_from([2, 3, 5, 7]), st.integers(0, 2 ** 31))
def test_rank_and_nullspace_agree(r, c, q, seed):
    A = np.random.default_rng(seed).integers(0, q, size=(r, c))
    rk = rank_mod_p(A, q)
    N = nullspace_mod_p(A, q)
    assert N.shape[0] == c - rk
    assert not ((A @ N.T) % q).any()
    assert batch_rank_mod_p(A[None], q)[0] == rk
