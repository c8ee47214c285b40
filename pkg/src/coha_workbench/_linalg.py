"""Exact sparse linear algebra over the rationals.

Vectors are dicts mapping hashable column keys to ``Fraction`` values, zero
entries never stored.  ``Echelon`` keeps an incrementally built echelon basis
and can express a vector in terms of the vectors that were inserted.
"""
from fractions import Fraction
from typing import Dict, Hashable, List, Optional, Tuple


Vec = Dict[Hashable, Fraction]


def vec_add(u: Vec, v: Vec, scale=1) -> Vec:
    """Return u + scale*v."""
    out = dict(u)
    for k, c in v.items():
        x = out.get(k, 0) + scale * c
        if x:
            out[k] = x
        else:
            out.pop(k, None)
    return out


def vec_scale(u: Vec, s) -> Vec:
    if not s:
        return {}
    return {k: c * s for k, c in u.items()}


class Echelon:
    """Incremental row echelon form with provenance tracking.

    Each stored row has a pivot (its smallest key under ``order``) and a record
    of which inserted vectors it is a combination of.  ``reduce`` fully reduces a
    vector and reports the combination of inserted vectors that was removed.
    """

    def __init__(self, order=None):
        self._order = order if order is not None else (lambda k: k)
        self._rows: Dict[Hashable, Tuple[Vec, Vec]] = {}
        self.n_inserted = 0

    def __len__(self):
        return len(self._rows)

    @property
    def rank(self) -> int:
        return len(self._rows)

    def reduce(self, v: Vec) -> Tuple[Vec, Vec]:
        """Return (remainder, combo) with v = remainder + sum combo[i]*inserted[i]."""
        v = dict(v)
        combo: Vec = {}
        while True:
            hits = [k for k in v if k in self._rows]
            if not hits:
                return v, combo
            k = min(hits, key=self._order)
            row, tag = self._rows[k]
            c = v[k] / row[k]
            v = vec_add(v, row, -c)
            combo = vec_add(combo, tag, c)

    def insert(self, v: Vec, tag: Optional[Hashable] = None) -> bool:
        """Insert v; return True if it was independent of the stored rows."""
        ident = self.n_inserted if tag is None else tag
        self.n_inserted += 1
        rem, combo = self.reduce(v)
        if not rem:
            return False
        pivot = min(rem, key=self._order)
        lead = rem[pivot]
        row = {k: c / lead for k, c in rem.items()}
        tag_vec = vec_add({ident: Fraction(1)}, combo, -1)
        self._rows[pivot] = (row, {k: c / lead for k, c in tag_vec.items()})
        return True


def rank_of(vectors: List[Vec], order=None) -> int:
    ech = Echelon(order)
    for v in vectors:
        ech.insert(v)
    return ech.rank


def nullspace(rows: List[List[Fraction]], ncols: int) -> List[List[Fraction]]:
    """Basis of {x : rows . x = 0} over Q via reduced row echelon form."""
    m = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        lead = m[r][c]
        m[r] = [x / lead for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        x = [Fraction(0)] * ncols
        x[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            x[pc] = -m[i][fc]
        basis.append(x)
    return basis
