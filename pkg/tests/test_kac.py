import pytest

from coha_workbench.quiver import Arrow, Quiver, jordan, kronecker, linear_quiver
from coha_workbench.replab import BudgetExceeded, QuiverRepFq, kac_bruteforce, kac_hua, kac_polynomials, poly_eval
from coha_workbench.replab.kac import conjugate, partitions, radical_dimension

A2 = linear_quiver(2)


def test_bruteforce_examples():
    assert kac_bruteforce(jordan(), (1,), 2) == 2
    assert kac_bruteforce(A2, (1, 1), 2) == 1
    for q in (2, 3):
        assert kac_bruteforce(A2, (2, 0), q) == 0


def test_hua_examples():
    assert kac_hua(jordan(), (2,)) == [0, 1]
    assert kac_hua(A2, (1, 1)) == [1]


def test_partitions():
    assert [len(partitions(n)) for n in range(8)] == [1, 1, 2, 3, 5, 7, 11, 15]
    assert conjugate((3, 1)) == (2, 1, 1)


@pytest.mark.parametrize("Q,dmax,primes", [
    (jordan(), (3,), (2, 3)),
    (A2, (2, 2), (2, 3)),
    (kronecker(), (1, 1), (2, 3)),
])
def test_dual_oracles_agree(Q, dmax, primes):
    polys = kac_polynomials(Q, dmax)
    for q in primes:
        for d, poly in polys.items():
            try:
                b = kac_bruteforce(Q, d, q, orbit_budget=10 ** 5)
            except BudgetExceeded:
                continue
            assert b == poly_eval(poly, q), (d, q)


def test_kronecker_values_are_whatever_oracles_agree_on():
    polys = kac_polynomials(kronecker(), (1, 1))
    for q in (2, 3):
        assert kac_bruteforce(kronecker(), (1, 1), q) == poly_eval(polys[(1, 1)], q)


def test_a2_roots_are_exactly_the_support():
    polys = kac_polynomials(A2, (2, 2))
    support = {d for d, p in polys.items() if any(p)}
    assert support == {(1, 0), (0, 1), (1, 1)}


def test_radical_of_simple_and_split():
    S = QuiverRepFq.simple(A2, "1", 3)
    assert radical_dimension(S) == (1, 0)
    split = QuiverRepFq(A2, (1, 1), 3)
    k, r = radical_dimension(split)
    assert k == 2 and (r is None or k - r != 1)


def test_orbit_budget():
    with pytest.raises(BudgetExceeded):
        kac_bruteforce(jordan(), (3,), 3, orbit_budget=100)


def test_three_loop_quiver_agrees():
    Q = Quiver(("1",), (Arrow("a", "1", "1"), Arrow("b", "1", "1")))
    polys = kac_polynomials(Q, (2,))
    assert kac_bruteforce(Q, (2,), 2) == poly_eval(polys[(2,)], 2)
