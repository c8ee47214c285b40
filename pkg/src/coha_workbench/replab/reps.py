"""Quiver representations over prime fields: moment maps, Hom/Ext, Ext-quivers."""
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..quiver import Arrow, Quiver, euler_form
from ..reports import CheckReport
from .field import PrimeField, nullspace_mod_p, rank_mod_p


def gl_order(d: Sequence[int], q: int) -> int:
    """|GL_d(F_q)| = prod_i prod_{k < d_i} (q^{d_i} - q^k)."""
    out = 1
    for n in d:
        for k in range(n):
            out *= q ** n - q ** k
    return out


@dataclass
class QuiverRepFq:
    quiver: Quiver
    d: Tuple[int, ...]
    q: int
    mats: Dict[str, np.ndarray] = field(default_factory=dict)

    def __post_init__(self):
        self.d = self.quiver.dim(self.d)
        PrimeField(self.q)
        mats = {}
        for a in self.quiver.arrows:
            shape = (self.d[self.quiver.index(a.tgt)], self.d[self.quiver.index(a.src)])
            m = self.mats.get(a.name)
            m = np.zeros(shape, dtype=np.int64) if m is None else np.array(m, dtype=np.int64).reshape(shape) % self.q
            if m.shape != shape:
                raise ValueError(f"arrow {a.name} needs a {shape} matrix")
            mats[a.name] = m
        extra = set(self.mats) - set(mats)
        if extra:
            raise ValueError(f"unknown arrows {sorted(extra)}")
        self.mats = mats

    @classmethod
    def simple(cls, Q: Quiver, vertex: str, q: int) -> "QuiverRepFq":
        d = tuple(int(v == vertex) for v in Q.vertices)
        return cls(Q, d, q)


def moment_map(rep: QuiverRepFq) -> Dict[str, np.ndarray]:
    """Component at i: sum_{t(a)=i} x_a x_a* - sum_{s(a)=i} x_a* x_a (mod q)."""
    D = rep.quiver
    if not D.star_pairs:
        raise ValueError("moment map needs a doubled quiver")
    return moment_map_arrays(D, rep.d, rep.mats, rep.q)


def moment_map_arrays(D: Quiver, d, mats, q: Optional[int] = None) -> Dict[str, np.ndarray]:
    out = {v: np.zeros((d[i], d[i]), dtype=np.result_type(*[m.dtype for m in mats.values()]) if mats else np.int64)
           for i, v in enumerate(D.vertices)}
    for a, s in D.star_pairs:
        arr = D.arrow(a)
        x, y = mats[a], mats[s]
        if x.shape != (y.shape[1], y.shape[0]):
            raise ValueError(f"shape mismatch between {a} and {s}")
        out[arr.tgt] = out[arr.tgt] + x @ y
        out[arr.src] = out[arr.src] - y @ x
    if q is not None:
        out = {v: m % q for v, m in out.items()}
    return out


def _intertwiner_system(Q: Quiver, dM, dN, M: Dict[str, np.ndarray], N: Dict[str, np.ndarray]) -> Tuple[np.ndarray, List[int]]:
    """Matrix of phi -> (phi_t M_a - N_a phi_s)_a on unknowns phi_i of shape dN_i x dM_i."""
    offs = []
    o = 0
    for i in range(Q.n):
        offs.append(o)
        o += dN[i] * dM[i]
    nunk = o
    rows = []
    for a in Q.arrows:
        s, t = Q.index(a.src), Q.index(a.tgt)
        Ma, Na = M[a.name], N[a.name]
        for r in range(dN[t]):
            for c in range(dM[s]):
                row = np.zeros(nunk, dtype=np.int64)
                for k in range(dM[t]):
                    row[offs[t] + r * dM[t] + k] += Ma[k, c]
                for k in range(dN[s]):
                    row[offs[s] + k * dM[s] + c] -= Na[r, k]
                rows.append(row)
    A = np.array(rows, dtype=np.int64).reshape(len(rows), nunk)
    return A, offs


def hom_dim(M: QuiverRepFq, N: QuiverRepFq) -> int:
    if M.quiver != N.quiver or M.q != N.q:
        raise ValueError("representations over different quivers or fields")
    A, _ = _intertwiner_system(M.quiver, M.d, N.d, M.mats, N.mats)
    nunk = sum(a * b for a, b in zip(M.d, N.d))
    return nunk - rank_mod_p(A, M.q) if A.size else nunk


def end_basis(M: QuiverRepFq) -> np.ndarray:
    A, _ = _intertwiner_system(M.quiver, M.d, M.d, M.mats, M.mats)
    nunk = sum(x * x for x in M.d)
    if A.size == 0:
        return np.eye(nunk, dtype=np.int64)
    return nullspace_mod_p(A, M.q)


def ext1_dim(M: QuiverRepFq, N: QuiverRepFq) -> int:
    """dim Ext^1 = dim Hom - <dim M, dim N> for the hereditary path algebra."""
    e = hom_dim(M, N) - euler_form(M.quiver)(M.d, N.d)
    if e < 0:
        raise ArithmeticError(f"negative ext dimension {e}")
    return e


def ext_quiver(simples: Sequence[QuiverRepFq], labels: Optional[Sequence[str]] = None):
    """Ext-quiver of a family of simples, the dimension map zeta, and a report
    comparing <zeta m, zeta m'> on the base quiver with <m, m'> on the Ext-quiver."""
    if not simples:
        raise ValueError("need at least one representation")
    Q = simples[0].quiver
    labels = list(labels) if labels else [str(i + 1) for i in range(len(simples))]
    rep = CheckReport("ext-quiver")
    n = len(simples)
    H = [[hom_dim(simples[i], simples[j]) for j in range(n)] for i in range(n)]
    screen = None
    for i in range(n):
        for j in range(n):
            want = 1 if i == j else 0
            if H[i][j] != want:
                screen = {"pair": [labels[i], labels[j]], "hom": H[i][j]}
                break
        if screen:
            break
    rep.add("simplicity screen (hom = delta)", screen is None, {"labels": labels}, witness=screen)
    arrows = []
    for i in range(n):
        for j in range(n):
            e = ext1_dim(simples[i], simples[j])
            for k in range(e):
                arrows.append(Arrow(f"e{labels[i]}_{labels[j]}_{k + 1}", labels[i], labels[j]))
    E = Quiver(tuple(labels), tuple(arrows))
    dims = [s.d for s in simples]

    def zeta(m):
        return tuple(sum(m[k] * dims[k][v] for k in range(n)) for v in range(Q.n))

    eQ, eE = euler_form(Q), euler_form(E)
    bad = None
    for i in range(n):
        for j in range(n):
            ei = tuple(int(k == i) for k in range(n))
            ej = tuple(int(k == j) for k in range(n))
            lhs, rhs = eQ(zeta(ei), zeta(ej)), eE(ei, ej)
            if lhs != rhs:
                bad = {"pair": [labels[i], labels[j]], "base": lhs, "ext": rhs}
                break
        if bad:
            break
    rep.add("<zeta m, zeta m'>_Q = <m, m'>_ext", bad is None, {"labels": labels}, witness=bad)
    rep.data["ext_quiver"] = E.to_dict()
    return E, zeta, rep
