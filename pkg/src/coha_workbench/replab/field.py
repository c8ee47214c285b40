"""Prime fields and Gaussian elimination mod p on numpy integer arrays."""
import os
from typing import Optional

import numpy as np

DEFAULT_BUDGET = 2 * 10 ** 8
DEFAULT_ORBIT_BUDGET = 10 ** 6
BUDGET_ENV = "COHA_WORKBENCH_BUDGET"


class BudgetExceeded(RuntimeError):
    def __init__(self, estimated, budget, what="configurations"):
        super().__init__(f"estimated {estimated} {what} exceeds budget {budget}")
        self.estimated = estimated
        self.budget = budget


def resolve_budget(budget: Optional[int] = None) -> int:
    if budget is not None:
        return int(budget)
    env = os.environ.get(BUDGET_ENV)
    if env:
        return int(float(env))
    return DEFAULT_BUDGET


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    i = 2
    while i * i <= q:
        if q % i == 0:
            return False
        i += 1
    return True


class PrimeField:
    def __init__(self, q: int):
        q = int(q)
        if not is_prime(q):
            raise ValueError(f"{q} is not prime (prime powers are not supported)")
        self.q = q
        self.inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            self.inv[a] = pow(a, q - 2, q)

    def __repr__(self):
        return f"F_{self.q}"

    def primitive_root(self) -> int:
        q = self.q
        if q == 2:
            return 1
        factors = [p for p in range(2, q) if (q - 1) % p == 0 and is_prime(p)]
        for g in range(2, q):
            if all(pow(g, (q - 1) // p, q) != 1 for p in factors):
                return g
        raise AssertionError("no primitive root")


def _inverse_table(p: int) -> np.ndarray:
    inv = np.zeros(p, dtype=np.int64)
    for a in range(1, p):
        inv[a] = pow(a, p - 2, p)
    return inv


def batch_rank_mod_p(A: np.ndarray, p: int) -> np.ndarray:
    """Ranks of a stack of matrices A[b] over F_p."""
    A = np.array(A, dtype=np.int64) % p
    if A.ndim != 3:
        raise ValueError("expected a (batch, rows, cols) array")
    B, m, n = A.shape
    rank = np.zeros(B, dtype=np.int64)
    if B == 0 or m == 0 or n == 0:
        return rank
    inv = _inverse_table(p)
    rows = np.arange(m)
    for col in range(n):
        mask = (A[:, :, col] != 0) & (rows[None, :] >= rank[:, None])
        has = mask.any(axis=1)
        if not has.any():
            continue
        b = np.nonzero(has)[0]
        piv = mask[b].argmax(axis=1)
        r = rank[b]
        top = A[b, r].copy()
        A[b, r] = A[b, piv]
        A[b, piv] = top
        lead = A[b, r, col]
        A[b, r] = (A[b, r] * inv[lead][:, None]) % p
        f = A[b, :, col].copy()
        f[rows[None, :] <= r[:, None]] = 0
        A[b] = (A[b] - f[:, :, None] * A[b, r][:, None, :]) % p
        rank[b] += 1
        if (rank >= m).all():
            break
    return rank


def rank_mod_p(A: np.ndarray, p: int) -> int:
    A = np.asarray(A, dtype=np.int64)
    if A.size == 0:
        return 0
    return int(batch_rank_mod_p(A[None], p)[0])


def rref_mod_p(A: np.ndarray, p: int):
    """Reduced row echelon form and pivot columns of a single matrix."""
    A = np.array(A, dtype=np.int64) % p
    m, n = A.shape
    inv = _inverse_table(p)
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        A[[r, k]] = A[[k, r]]
        A[r] = (A[r] * inv[A[r, c]]) % p
        f = A[:, c].copy()
        f[r] = 0
        A = (A - f[:, None] * A[r][None, :]) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def nullspace_mod_p(A: np.ndarray, p: int, ncols: Optional[int] = None) -> np.ndarray:
    """Rows forming a basis of {x : A x = 0} over F_p."""
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[1] if A.ndim == 2 and A.size else (ncols or 0)
    if A.size == 0:
        return np.eye(n, dtype=np.int64)
    R, piv = rref_mod_p(A, p)
    free = [c for c in range(n) if c not in piv]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for i, fc in enumerate(free):
        basis[i, fc] = 1
        for j, pc in enumerate(piv):
            basis[i, pc] = (-R[j, fc]) % p
    return basis


def row_basis_mod_p(A: np.ndarray, p: int) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    if A.size == 0:
        return np.zeros((0, A.shape[1] if A.ndim == 2 else 0), dtype=np.int64)
    R, _ = rref_mod_p(A, p)
    return R
