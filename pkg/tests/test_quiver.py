import pytest
from hypothesis import given, settings, strategies as st

from coha_workbench.quiver import (
    Arrow, MixedSigns, ModTwoBilinearForm, NonBilinear, Quiver, QuiverError, ReservedNameError, affine_dn,
    build_double, build_triple, corpus, det_weight, euler_form, jordan, kronecker, linear_quiver, psi_witness,
    solve_psi, symmetrized_euler, tau_form, verify_psi,
)

A2 = linear_quiver(2)


def test_euler_form_examples():
    assert euler_form(jordan())((1,), (1,)) == 0
    assert euler_form(A2)((1, 1), (1, 1)) == 1
    assert euler_form(kronecker())((1, 1), (1, 1)) == 0


def test_symmetrized_examples():
    S = symmetrized_euler(A2)
    assert S((1, 0), (0, 1)) == -1
    assert symmetrized_euler(jordan())((3,), (5,)) == 0


@given(st.lists(st.integers(0, 5), min_size=2, max_size=2))
def test_symmetrized_diagonal_is_twice_euler(d):
    for Q in (A2, kronecker()):
        assert symmetrized_euler(Q)(d, d) == 2 * euler_form(Q)(d, d)


def test_triple_construction():
    T = build_triple(jordan())
    assert T.n == 1 and len(T.arrows) == 3
    assert all(a.src == a.tgt for a in T.arrows)
    assert euler_form(T)((1,), (1,)) == -2
    T2 = build_triple(A2)
    assert T2.arrow_names() == ["a", "a*", "ω_1", "ω_2"]
    assert T2.arrow("a*").src == "2" and T2.arrow("a*").tgt == "1"


def test_reserved_names():
    Q = Quiver(("1", "2"), (Arrow("a*", "1", "2"),))
    with pytest.raises(ReservedNameError):
        build_double(Q)
    Q = Quiver(("1",), (Arrow("ω_1", "1", "1"),))
    with pytest.raises(ReservedNameError):
        build_triple(Q)


def test_malformed_quiver():
    with pytest.raises(QuiverError):
        Quiver(("1",), (Arrow("a", "1", "2"),))
    with pytest.raises(QuiverError):
        Quiver.from_dict({"vertices": ["1"]})
    with pytest.raises(QuiverError):
        Quiver(("1", "1"), ())


def test_tau_examples():
    assert tau_form(build_triple(jordan())).to_list() == [[0]]
    T = tau_form(build_triple(A2))
    assert T((1, 0), (0, 1)) == 1
    assert T.to_list() == [[0, 1], [1, 0]]


def test_tau_refuses_non_bilinear():
    # on A2 itself <d,d><e,e> is not bilinear mod 2
    with pytest.raises(NonBilinear) as exc:
        tau_form(A2)
    d, e = exc.value.witness
    M = euler_form(A2)

    def tau(x, y):
        return (M(x, y) + M(x, x) * M(y, y)) % 2

    basis = [(1, 0), (0, 1)]
    linear = sum(d[i] * e[j] * tau(basis[i], basis[j]) for i in range(2) for j in range(2)) % 2
    assert tau(d, e) != linear


def test_psi_examples():
    assert solve_psi(build_triple(jordan())).to_list() == [[0]]
    TA = build_triple(A2)
    psi = solve_psi(TA)
    assert psi.to_list() == [[0, 1], [0, 0]]
    assert verify_psi(TA, psi)
    assert not verify_psi(TA, ModTwoBilinearForm.zero(TA))
    assert psi_witness(TA, ModTwoBilinearForm.zero(TA)) == (0, 1)
    TJ = build_triple(jordan())
    assert verify_psi(TJ, ModTwoBilinearForm.zero(TJ))


@pytest.mark.parametrize("Q", [jordan(), A2, kronecker(), affine_dn(4), linear_quiver(3)])
def test_euler_form_of_base_is_psi(Q):
    T = build_triple(Q)
    assert verify_psi(T, solve_psi(T))
    assert verify_psi(T, ModTwoBilinearForm(T.vertices, euler_form(Q).matrix))


def test_verify_psi_shape_mismatch():
    with pytest.raises(QuiverError):
        verify_psi(build_triple(A2), ModTwoBilinearForm(("1",), ((0,),)))


@settings(max_examples=50)
@given(st.data())
def test_psi_stable_under_symmetric_forms(data):
    Q = data.draw(st.sampled_from(list(corpus().values())))
    T = build_triple(Q)
    n = T.n
    entries = data.draw(st.lists(st.integers(0, 1), min_size=n * n, max_size=n * n))
    S = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            S[i][j] = S[j][i] = entries[i * n + j]
    psi = solve_psi(T)
    assert verify_psi(T, psi + ModTwoBilinearForm(T.vertices, S)) == verify_psi(T, psi)


@settings(max_examples=50)
@given(st.data())
def test_tau_vanishes_on_diagonal(data):
    Q = data.draw(st.sampled_from(list(corpus().values())))
    T = build_triple(Q)
    d = data.draw(st.lists(st.integers(0, 6), min_size=T.n, max_size=T.n))
    assert tau_form(T)(d, d) == 0


def test_det_weight():
    assert det_weight((1, 1), (1, 1)) == 2
    assert det_weight((2, 3), (1, 0)) == 2
    assert det_weight({"1": -1, "2": -2}, {"1": 1, "2": 1}) == -3
    with pytest.raises(MixedSigns):
        det_weight((1, -1), (1, 1))
    with pytest.raises(ValueError):
        det_weight((0, 1), (1, 1))


@given(st.lists(st.integers(1, 9), min_size=3, max_size=3),
       st.lists(st.integers(0, 9), min_size=3, max_size=3),
       st.lists(st.integers(0, 9), min_size=3, max_size=3))
def test_det_weight_additive(r, d, e):
    de = [x + y for x, y in zip(d, e)]
    assert det_weight(r, de) == det_weight(r, d) + det_weight(r, e)


def test_round_trip(tmp_path):
    for Q in corpus().values():
        p = tmp_path / "q.json"
        import json
        p.write_text(json.dumps(Q.to_dict()))
        assert Quiver.load(p) == Q


def test_dim_accepts_dicts():
    assert A2.dim({"2": 3}) == (0, 3)
    with pytest.raises(QuiverError):
        A2.dim({"9": 1})
    with pytest.raises(QuiverError):
        A2.dim((1,))
