"""Point counts of moment-map zero loci over prime fields.

Configurations are enumerated in a fixed order: arrows in declaration order,
each matrix row-major, entries 0..q-1, the first entry most significant.  The
enumeration range is cut into contiguous blocks, and the per-block integer
counts are summed, so results do not depend on how blocks are scheduled.
"""
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..quiver import Quiver, build_double
from .field import BudgetExceeded, PrimeField, batch_rank_mod_p, nullspace_mod_p, resolve_budget, row_basis_mod_p
from .reps import gl_order

BLOCK = 1 << 12


def arrow_shapes(Q: Quiver, d, names=None) -> List[Tuple[str, Tuple[int, int]]]:
    names = names if names is not None else Q.arrow_names()
    out = []
    for name in names:
        a = Q.arrow(name)
        out.append((name, (d[Q.index(a.tgt)], d[Q.index(a.src)])))
    return out


def decode(indices: np.ndarray, nentries: int, q: int) -> np.ndarray:
    """Base-q digits of configuration indices, most significant first."""
    powers = q ** np.arange(nentries - 1, -1, -1, dtype=np.int64)
    return (indices[:, None] // powers[None, :]) % q


def split(flat: np.ndarray, shapes) -> Dict[str, np.ndarray]:
    out = {}
    o = 0
    for name, (r, c) in shapes:
        out[name] = flat[:, o:o + r * c].reshape(flat.shape[0], r, c)
        o += r * c
    return out


def moment_operator(D: Quiver, d, X: Dict[str, np.ndarray]) -> np.ndarray:
    """Batched matrices of the linear map y -> mu(x, y) for fixed unstarred x.

    Rows index the entries of the per-vertex moment map components, columns the
    entries of the starred arrows (in star-pair order, row-major).
    """
    offs, o = [], 0
    for n in d:
        offs.append(o)
        o += n * n
    nrows = o
    B = next(iter(X.values())).shape[0] if X else 1
    cols = []
    for a, s in D.star_pairs:
        arr = D.arrow(a)
        si, ti = D.index(arr.src), D.index(arr.tgt)
        ds, dt = d[si], d[ti]
        x = X[a]
        for r in range(ds):
            for c in range(dt):
                col = np.zeros((B, nrows), dtype=x.dtype)
                # x E_rc contributes column c of mu_t, equal to x[:, r]
                for k in range(dt):
                    col[:, offs[ti] + k * dt + c] += x[:, k, r]
                # - E_rc x contributes row r of mu_s, equal to -x[c, :]
                for k in range(ds):
                    col[:, offs[si] + r * ds + k] -= x[:, c, k]
                cols.append(col)
    if not cols:
        return np.zeros((B, nrows, 0), dtype=np.int64)
    return np.stack(cols, axis=2)


def _double(Q: Quiver) -> Quiver:
    return Q if Q.star_pairs else build_double(Q)


def _fast_block(args):
    Q, d, q, start, stop = args
    D = _double(Q)
    unstarred = [a for a, _ in D.star_pairs]
    shapes = arrow_shapes(D, d, unstarred)
    nx = sum(r * c for _, (r, c) in shapes)
    ny = nx
    total = 0
    for lo in range(start, stop, BLOCK):
        hi = min(stop, lo + BLOCK)
        idx = np.arange(lo, hi, dtype=np.int64)
        X = split(decode(idx, nx, q), shapes)
        L = moment_operator(D, d, X)
        if L.shape[2] == 0:
            total += hi - lo
            continue
        ranks = batch_rank_mod_p(L, q)
        for nul, cnt in zip(*np.unique(ny - ranks, return_counts=True)):
            total += int(cnt) * q ** int(nul)
    return total


def _naive_block(args):
    Q, d, q, start, stop = args
    D = _double(Q)
    names = [a for a, _ in D.star_pairs] + [s for _, s in D.star_pairs]
    shapes = arrow_shapes(D, d, names)
    n = sum(r * c for _, (r, c) in shapes)
    total = 0
    for lo in range(start, stop, BLOCK):
        hi = min(stop, lo + BLOCK)
        idx = np.arange(lo, hi, dtype=np.int64)
        M = split(decode(idx, n, q), shapes)
        zero = np.ones(hi - lo, dtype=bool)
        mu = _batched_moment(D, d, M, q)
        for m in mu:
            zero &= (m.reshape(hi - lo, -1) == 0).all(axis=1)
        total += int(zero.sum())
    return total


def _batched_moment(D: Quiver, d, M, q):
    B = next(iter(M.values())).shape[0]
    mu = [np.zeros((B, n, n), dtype=np.int64) for n in d]
    for a, s in D.star_pairs:
        arr = D.arrow(a)
        si, ti = D.index(arr.src), D.index(arr.tgt)
        x, y = M[a], M[s]
        if x.size == 0 or y.size == 0:
            continue
        mu[ti] = mu[ti] + x @ y
        mu[si] = mu[si] - y @ x
    return [m % q for m in mu]


def _run_blocks(fn, Q, d, q, size, jobs):
    jobs = max(1, int(jobs or 1))
    if jobs == 1 or size < 2 * BLOCK:
        return fn((Q, d, q, 0, size))
    step = -(-size // jobs)
    tasks = [(Q, d, q, lo, min(size, lo + step)) for lo in range(0, size, step)]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return sum(ex.map(fn, tasks))


def count_preprojective(Q: Quiver, d, q: int, mode: str = "fast", jobs: int = 1,
                        budget: Optional[int] = None) -> int:
    """Number of F_q-points of the zero fibre of the moment map on the double of Q."""
    PrimeField(q)
    d = Q.dim(d)
    D = _double(Q)
    nx = sum(r * c for _, (r, c) in arrow_shapes(D, d, [a for a, _ in D.star_pairs]))
    budget = resolve_budget(budget)
    if mode == "fast":
        cost = q ** nx
        if cost > budget:
            raise BudgetExceeded(cost, budget)
        return _run_blocks(_fast_block, Q, d, q, cost, jobs)
    if mode == "naive":
        cost = q ** (2 * nx)
        if cost > budget:
            raise BudgetExceeded(cost, budget)
        return _run_blocks(_naive_block, Q, d, q, cost, jobs)
    raise ValueError(f"unknown mode {mode!r}")


def stack_count(Q: Quiver, d, q: int, **kw) -> dict:
    """CountReport row {"q", "d", "raw", "gl", "stack"}."""
    d = Q.dim(d)
    raw = count_preprojective(Q, d, q, **kw)
    gl = gl_order(d, q)
    return {"q": q, "d": list(d), "raw": raw, "gl": gl, "stack": Fraction(raw, gl)}


def total_space_operators(D: Quiver, d, mats: Dict[str, np.ndarray]) -> List[np.ndarray]:
    """Each arrow as an endomorphism of the total space, block placed at (tgt, src)."""
    offs, o = [], 0
    for n in d:
        offs.append(o)
        o += n
    N = o
    ops = []
    for a in D.arrows:
        m = mats[a.name]
        if m.size == 0:
            continue
        s, t = D.index(a.src), D.index(a.tgt)
        A = np.zeros((N, N), dtype=np.int64)
        A[offs[t]:offs[t] + d[t], offs[s]:offs[s] + d[s]] = m
        ops.append(A)
    return ops


def is_nilpotent_rep(D: Quiver, d, mats, q: int) -> bool:
    """Iterate W_0 = V, W_{k+1} = sum_a x_a(W_k) until it vanishes or stalls."""
    N = sum(d)
    ops = total_space_operators(D, d, mats)
    W = np.eye(N, dtype=np.int64)
    dim = N
    for _ in range(N + 1):
        if dim == 0:
            return True
        if not ops:
            return True
        img = np.concatenate([(A @ W.T) % q for A in ops], axis=1)
        basis = row_basis_mod_p(img.T, q)
        if basis.shape[0] >= dim:
            return False
        W = basis
        dim = basis.shape[0]
    return dim == 0


def count_nilpotent(Q: Quiver, d, q: int, mode: str = "naive", budget: Optional[int] = None) -> int:
    """Points of the moment-map zero fibre whose arrow algebra acts nilpotently."""
    PrimeField(q)
    d = Q.dim(d)
    if sum(d) == 0:
        return 1
    D = _double(Q)
    unstarred = [a for a, _ in D.star_pairs]
    starred = [s for _, s in D.star_pairs]
    shx = arrow_shapes(D, d, unstarred)
    shy = arrow_shapes(D, d, starred)
    nx = sum(r * c for _, (r, c) in shx)
    budget = resolve_budget(budget)
    total = 0
    if mode == "naive":
        cost = q ** (2 * nx)
        if cost > budget:
            raise BudgetExceeded(cost, budget)
        names = unstarred + starred
        shapes = arrow_shapes(D, d, names)
        for lo in range(0, cost, BLOCK):
            hi = min(cost, lo + BLOCK)
            M = split(decode(np.arange(lo, hi, dtype=np.int64), 2 * nx, q), shapes)
            mu = _batched_moment(D, d, M, q)
            zero = np.ones(hi - lo, dtype=bool)
            for m in mu:
                zero &= (m.reshape(hi - lo, -1) == 0).all(axis=1)
            for b in np.nonzero(zero)[0]:
                if is_nilpotent_rep(D, d, {k: v[b] for k, v in M.items()}, q):
                    total += 1
        return total
    if mode == "fast":
        cost = q ** nx
        if cost > budget:
            raise BudgetExceeded(cost, budget)
        for lo in range(0, cost, BLOCK):
            hi = min(cost, lo + BLOCK)
            X = split(decode(np.arange(lo, hi, dtype=np.int64), nx, q), shx)
            L = moment_operator(D, d, X)
            for b in range(hi - lo):
                ker = nullspace_mod_p(L[b], q, ncols=nx)
                k = ker.shape[0]
                coeffs = decode(np.arange(q ** k, dtype=np.int64), k, q) if k else np.zeros((1, 0), dtype=np.int64)
                Y = (coeffs @ ker) % q if k else np.zeros((1, nx), dtype=np.int64)
                Ys = split(Y, shy)
                xb = {name: X[name][b] for name in unstarred}
                for j in range(Y.shape[0]):
                    mats = dict(xb)
                    mats.update({name: Ys[name][j] for name in starred})
                    if is_nilpotent_rep(D, d, mats, q):
                        total += 1
        return total
    raise ValueError(f"unknown mode {mode!r}")
