"""Two independent routes to Kac polynomials.

``kac_bruteforce`` counts isomorphism classes of absolutely indecomposable
representations over F_q by orbit enumeration.  ``kac_hua`` extracts the
polynomial from Hua's generating function, evaluated exactly at several
integer values of q and interpolated.
"""
import itertools
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from ..characters import dims_upto, log_series
from ..quiver import Quiver, euler_form
from .counting import arrow_shapes, decode, split
from .field import DEFAULT_ORBIT_BUDGET, BudgetExceeded, PrimeField, rank_mod_p
from .reps import QuiverRepFq, end_basis


def poly_eval(coeffs: Sequence[int], q) -> object:
    """Evaluate a coefficient list (constant term first) at q."""
    out = 0
    for c in reversed(coeffs):
        out = out * q + c
    return out


def poly_str(coeffs: Sequence[int]) -> str:
    parts = []
    for k, c in enumerate(coeffs):
        if c:
            parts.append(f"{c}" if k == 0 else f"{c}*q^{k}" if k > 1 else f"{c}*q")
    return " + ".join(parts) or "0"


# ---------------------------------------------------------------- orbits

def _gl_generators(d: Sequence[int], q: int) -> List[Tuple[int, np.ndarray]]:
    """(vertex, matrix) pairs generating prod_i GL_{d_i}(F_q)."""
    g = PrimeField(q).primitive_root()
    gens = []
    for i, n in enumerate(d):
        for a in range(n):
            for b in range(n):
                if a != b:
                    m = np.eye(n, dtype=np.int64)
                    m[a, b] = 1
                    gens.append((i, m))
        if n and q > 2:
            m = np.eye(n, dtype=np.int64)
            m[0, 0] = g
            gens.append((i, m))
    return gens


def _inverse_mod(m: np.ndarray, q: int) -> np.ndarray:
    n = m.shape[0]
    inv = PrimeField(q).inv
    A = np.concatenate([m % q, np.eye(n, dtype=np.int64)], axis=1)
    for c in range(n):
        r = c + int(np.nonzero(A[c:, c])[0][0])
        A[[c, r]] = A[[r, c]]
        A[c] = (A[c] * inv[A[c, c]]) % q
        f = A[:, c].copy()
        f[c] = 0
        A = (A - f[:, None] * A[c][None, :]) % q
    return A[:, n:]


def orbit_labels(Q: Quiver, d, q: int, orbit_budget: Optional[int] = None):
    """Label every representation (by enumeration index) with its GL_d-orbit."""
    d = Q.dim(d)
    shapes = arrow_shapes(Q, d)
    nx = sum(r * c for _, (r, c) in shapes)
    N = q ** nx
    budget = DEFAULT_ORBIT_BUDGET if orbit_budget is None else int(orbit_budget)
    if N > budget:
        raise BudgetExceeded(N, budget, "representations")
    idx = np.arange(N, dtype=np.int64)
    flat = decode(idx, nx, q)
    X = split(flat, shapes)
    powers = q ** np.arange(nx - 1, -1, -1, dtype=np.int64)
    rows, cols = [], []
    for i, g in _gl_generators(d, q):
        gi = _inverse_mod(g, q)
        parts = []
        for name, _ in shapes:
            a = Q.arrow(name)
            m = X[name]
            if Q.index(a.tgt) == i:
                m = np.einsum("ij,bjk->bik", g, m) % q
            if Q.index(a.src) == i:
                m = np.einsum("bij,jk->bik", m, gi) % q
            parts.append(m.reshape(N, -1))
        img = np.concatenate(parts, axis=1) @ powers if nx else np.zeros(N, dtype=np.int64)
        rows.append(idx)
        cols.append(img)
    if rows:
        r = np.concatenate(rows)
        c = np.concatenate(cols)
    else:
        r = c = np.zeros(0, dtype=np.int64)
    graph = coo_matrix((np.ones(r.size, dtype=np.int8), (r, c)), shape=(N, N))
    ncomp, labels = connected_components(graph, directed=True, connection="weak")
    return ncomp, labels, flat, shapes


def _vertex_blocks(Q: Quiver, d, basis: np.ndarray) -> List[np.ndarray]:
    """Split End-basis coordinates into per-vertex square blocks."""
    out = []
    o = 0
    for n in d:
        out.append(basis[:, o:o + n * n].reshape(basis.shape[0], n, n))
        o += n * n
    return out


def radical_dimension(rep: QuiverRepFq, budget: Optional[int] = None) -> Tuple[int, Optional[int]]:
    """(dim End, dim rad) by screening every element of End for nilpotency.

    When the nilpotent elements form a subspace it is the radical and End is
    local; otherwise End is not local and ``None`` is returned for rad.
    """
    q = rep.q
    B = end_basis(rep)
    k = B.shape[0]
    total = q ** k
    budget = DEFAULT_ORBIT_BUDGET if budget is None else int(budget)
    if total > budget:
        raise BudgetExceeded(total, budget, "endomorphisms")
    coeffs = decode(np.arange(total, dtype=np.int64), k, q)
    elems = (coeffs @ B) % q
    nil = np.ones(total, dtype=bool)
    for blk, n in zip(_vertex_blocks(rep.quiver, rep.d, elems), rep.d):
        if n == 0:
            continue
        p = blk.copy()
        for _ in range(n - 1):
            p = np.einsum("bij,bjk->bik", p, blk) % q
        nil &= (p.reshape(total, -1) == 0).all(axis=1)
    count = int(nil.sum())
    r = rank_mod_p(coeffs[nil], q) if count > 1 else 0
    if q ** r != count:
        return k, None
    return k, r


def kac_bruteforce(Q: Quiver, d, q: int, orbit_budget: Optional[int] = None) -> int:
    """Number of isomorphism classes of absolutely indecomposable d-dimensional
    representations of Q over F_q (dim End - dim rad = 1)."""
    PrimeField(q)
    d = Q.dim(d)
    if sum(d) == 0:
        return 0
    ncomp, labels, flat, shapes = orbit_labels(Q, d, q, orbit_budget)
    first = np.full(ncomp, -1, dtype=np.int64)
    order = np.arange(labels.size)[::-1]
    first[labels[order]] = order
    count = 0
    for rep_idx in first:
        M = split(flat[rep_idx:rep_idx + 1], shapes)
        rep = QuiverRepFq(Q, d, q, {name: m[0] for name, m in M.items()})
        k, r = radical_dimension(rep, orbit_budget)
        if r is not None and k - r == 1:
            count += 1
    return count


# ---------------------------------------------------------------- Hua

@lru_cache(maxsize=None)
def partitions(n: int, largest: Optional[int] = None) -> Tuple[Tuple[int, ...], ...]:
    largest = n if largest is None else largest
    if n == 0:
        return ((),)
    out = []
    for k in range(min(n, largest), 0, -1):
        for rest in partitions(n - k, k):
            out.append((k,) + rest)
    return tuple(out)


def conjugate(lam: Sequence[int]) -> Tuple[int, ...]:
    return tuple(sum(1 for x in lam if x > k) for k in range(lam[0] if lam else 0))


def _pair(lam, mu) -> int:
    a, b = conjugate(lam), conjugate(mu)
    return sum(x * y for x, y in zip(a, b))


def _b(lam, x: Fraction) -> Fraction:
    out = Fraction(1)
    for k in set(lam):
        m = lam.count(k)
        for i in range(1, m + 1):
            out *= 1 - x ** i
    return out


def hua_series(Q: Quiver, dmax, q) -> Dict[Tuple[int, ...], Fraction]:
    """Coefficients of Hua's partition sum up to dmax, evaluated at q."""
    q = Fraction(q)
    dmax = Q.dim(dmax)
    out = {}
    arrows = [(Q.index(a.src), Q.index(a.tgt)) for a in Q.arrows]
    for D in dims_upto(dmax):
        tot = Fraction(0)
        for pis in itertools.product(*[partitions(n) for n in D]):
            num = sum(_pair(pis[s], pis[t]) for s, t in arrows)
            den = Fraction(1)
            for lam in pis:
                den *= q ** _pair(lam, lam) * _b(lam, 1 / q)
            tot += q ** num / den
        out[D] = tot
    return out


def _interpolate(xs: Sequence[Fraction], ys: Sequence[Fraction]) -> List[Fraction]:
    """Coefficients (constant first) of the Lagrange interpolant."""
    n = len(xs)
    coeffs = [Fraction(0)] * n
    for i in range(n):
        basis = [Fraction(1)]
        den = Fraction(1)
        for j in range(n):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xs[j] * basis[k + 1]
            den *= xs[i] - xs[j]
        for k in range(n):
            coeffs[k] += ys[i] * basis[k] / den
    return coeffs


def kac_polynomials(Q: Quiver, dmax, extra: int = 2) -> Dict[Tuple[int, ...], List[int]]:
    """Kac polynomials for every nonzero d <= dmax, via Hua's formula

        sum_pi (...) t^|pi| = Exp( sum_d a_d(q) t^d / (q - 1) ).
    """
    dmax = Q.dim(dmax)
    E = euler_form(Q)
    dims = [D for D in dims_upto(dmax) if any(D)]
    degs = {D: max(0, 1 - E(D, D)) for D in dims}
    npts = max(degs.values(), default=0) + 1 + extra
    xs = [Fraction(2 + i) for i in range(npts)]
    logs = []
    for x in xs:
        H = hua_series(Q, dmax, x)
        L = log_series({D: {0: v} for D, v in H.items()}, dmax)
        logs.append({D: p.get(0, Fraction(0)) for D, p in L.items()})
    kac: Dict[Tuple[int, ...], List[int]] = {}
    for D in dims:
        ys = []
        for x, L in zip(xs, logs):
            v = L.get(D, Fraction(0))
            for n in range(2, max(D) + 1):
                if all(c % n == 0 for c in D):
                    sub = tuple(c // n for c in D)
                    v -= Fraction(poly_eval(kac[sub], x ** n), x ** n - 1) / n
            ys.append((x - 1) * v)
        m = degs[D] + 1
        c = _interpolate(xs[:m], ys[:m])
        for x, y in zip(xs[m:], ys[m:]):
            if poly_eval(c, x) != y:
                raise ArithmeticError(f"Hua interpolation for d={D} exceeds the degree bound {degs[D]}")
        if any(v.denominator != 1 for v in c):
            raise ArithmeticError(f"non-integral Kac polynomial at d={D}: {c}")
        c = [int(v) for v in c]
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        kac[D] = c
    return kac


def kac_hua(Q: Quiver, d) -> List[int]:
    """The Kac polynomial a_d(q) as integer coefficients, constant term first."""
    d = Q.dim(d)
    if sum(d) == 0:
        return [0]
    return kac_polynomials(Q, d)[d]
