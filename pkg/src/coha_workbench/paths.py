"""Exact arithmetic in path algebras.

Paths compose left to right: in a1 a2 ... ar the target of a_k is the source
of a_{k+1}.  This is the only composition convention used in the package.
"""
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from ._linalg import Echelon, nullspace
from .quiver import (Quiver, build_double, build_triple, affine_dn, dn_star_names)
from .reports import CheckReport


class PathError(ValueError):
    pass


class InhomogeneousRelation(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Path:
    """Either the idempotent e_v (``arrows == ()``) or a composable arrow word."""

    arrows: Tuple[str, ...]
    vertex: Optional[str] = None

    def __len__(self):
        return len(self.arrows)

    def __str__(self):
        return "".join(self.arrows) if self.arrows else f"e_{self.vertex}"


def idempotent(v: str) -> Path:
    return Path((), v)


def path_endpoints(Q: Quiver, p: Path) -> Tuple[str, str]:
    if not p.arrows:
        return p.vertex, p.vertex
    return Q.arrow(p.arrows[0]).src, Q.arrow(p.arrows[-1]).tgt


def make_path(Q: Quiver, word: Sequence[str]) -> Path:
    word = tuple(word)
    if not word:
        raise PathError("use idempotent(v) for length-zero paths")
    for a, b in zip(word, word[1:]):
        if Q.arrow(a).tgt != Q.arrow(b).src:
            raise PathError(f"{a} and {b} are not composable")
    return Path(word)


def concat(Q: Quiver, p: Path, q: Path) -> Optional[Path]:
    """p followed by q, or None when the endpoints do not match."""
    if path_endpoints(Q, p)[1] != path_endpoints(Q, q)[0]:
        return None
    if not p.arrows:
        return q
    if not q.arrows:
        return p
    return Path(p.arrows + q.arrows)


class PathSum:
    """A finite Q-linear combination of paths with exact rational coefficients."""

    __slots__ = ("quiver", "terms")

    def __init__(self, quiver: Quiver, terms: Optional[Mapping[Path, object]] = None):
        self.quiver = quiver
        clean = {}
        for p, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                clean[p] = clean.get(p, 0) + c
        self.terms: Dict[Path, Fraction] = {p: c for p, c in clean.items() if c}

    @classmethod
    def word(cls, Q: Quiver, word, coeff=1) -> "PathSum":
        if isinstance(word, str):
            word = [word]
        return cls(Q, {make_path(Q, word): coeff})

    @classmethod
    def vertex(cls, Q: Quiver, v: str, coeff=1) -> "PathSum":
        return cls(Q, {idempotent(v): coeff})

    @classmethod
    def unit(cls, Q: Quiver) -> "PathSum":
        return cls(Q, {idempotent(v): 1 for v in Q.vertices})

    def _same(self, other):
        if other.quiver != self.quiver:
            raise PathError("path sums live over different quivers")

    def __add__(self, other: "PathSum") -> "PathSum":
        self._same(other)
        t = dict(self.terms)
        for p, c in other.terms.items():
            t[p] = t.get(p, 0) + c
        return PathSum(self.quiver, t)

    def __neg__(self):
        return PathSum(self.quiver, {p: -c for p, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "PathSum":
        return PathSum(self.quiver, {p: c * Fraction(s) for p, c in self.terms.items()})

    def __rmul__(self, s):
        return self.scale(s)

    def __mul__(self, other):
        if isinstance(other, PathSum):
            return multiply(self, other)
        return self.scale(other)

    def __eq__(self, other):
        return isinstance(other, PathSum) and self.quiver == other.quiver and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def lengths(self):
        return {len(p) for p in self.terms}

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0].arrows, kv[0].vertex or ""))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for p, c in self.sorted_terms():
            if c == 1:
                parts.append(f"+{p}")
            elif c == -1:
                parts.append(f"-{p}")
            else:
                parts.append(f"{'+' if c > 0 else '-'}{abs(c)}*{p}")
        s = " ".join(parts)
        return s[1:] if s.startswith("+") else s


def multiply(p: PathSum, q: PathSum) -> PathSum:
    p._same(q)
    Q = p.quiver
    out: Dict[Path, Fraction] = {}
    for a, c in p.terms.items():
        for b, d in q.terms.items():
            ab = concat(Q, a, b)
            if ab is not None:
                out[ab] = out.get(ab, 0) + c * d
    return PathSum(Q, out)


def commutator(x: PathSum, y: PathSum) -> PathSum:
    return multiply(x, y) - multiply(y, x)


class Potential(PathSum):
    """A path sum all of whose paths are (nonempty) cycles."""

    __slots__ = ()

    def __init__(self, quiver: Quiver, terms=None):
        super().__init__(quiver, terms)
        for p in self.terms:
            if not p.arrows:
                raise PathError("potentials contain no idempotents")
            s, t = path_endpoints(quiver, p)
            if s != t:
                raise PathError(f"{p} is not a cycle")

    @classmethod
    def of(cls, ps: PathSum) -> "Potential":
        return cls(ps.quiver, ps.terms)

    def __add__(self, other):
        return Potential.of(PathSum.__add__(self, other))

    def to_list(self) -> list:
        return [{"coeff": str(c), "cycle": list(p.arrows)} for p, c in self.sorted_terms()]

    @classmethod
    def from_list(cls, Q: Quiver, data: list) -> "Potential":
        terms = {}
        try:
            for item in data:
                p = make_path(Q, [str(a) for a in item["cycle"]])
                terms[p] = terms.get(p, 0) + Fraction(str(item["coeff"]))
        except KeyError as exc:
            raise PathError(f"malformed potential entry: missing {exc}") from exc
        return cls(Q, terms)

    @classmethod
    def load(cls, Q: Quiver, path) -> "Potential":
        with open(path) as fh:
            return cls.from_list(Q, json.load(fh))


def cyclic_derivative(W: PathSum, a: str) -> PathSum:
    """Sum over occurrences of a of the rotated word with that occurrence removed."""
    Q = W.quiver
    arr = Q.arrow(a)  # raises KeyError for unknown arrows
    out: Dict[Path, Fraction] = {}
    for p, c in W.terms.items():
        w = p.arrows
        for i, x in enumerate(w):
            if x != a:
                continue
            rest = w[i + 1:] + w[:i]
            key = Path(rest) if rest else idempotent(arr.tgt)
            out[key] = out.get(key, 0) + c
    return PathSum(Q, out)


def _omega_sum(T: Quiver) -> PathSum:
    return PathSum(T, {Path((name,)): 1 for _, name in T.loops})


def canonical_cubic(Q: Quiver, star_names=None) -> Potential:
    """(sum_i ω_i)(sum_a [a, a*]) on the triple quiver, incomposable words dropped."""
    T = build_triple(Q, star_names)
    rho = preprojective_relation(T)
    return Potential.of(multiply(_omega_sum(T), rho))


def preprojective_relation(D: Quiver) -> PathSum:
    """rho = sum over arrows a of a a* - a* a, on any quiver carrying star pairs."""
    if not D.star_pairs:
        raise PathError("quiver has no starred arrows; pass a double or triple quiver")
    rho = PathSum(D)
    for a, s in D.star_pairs:
        A = PathSum.word(D, [a])
        S = PathSum.word(D, [s])
        rho = rho + commutator(A, S)
    return rho


def preprojective_components(Q: Quiver, over: Optional[Quiver] = None) -> Dict[str, PathSum]:
    """e_i rho e_i for each vertex, on the double of Q (or on ``over`` if given)."""
    D = over if over is not None else build_double(Q)
    rho = preprojective_relation(D)
    out = {}
    for v in D.vertices:
        e = PathSum.vertex(D, v)
        out[v] = multiply(multiply(e, rho), e)
    return out


def verify_dimensional_reduction_relations(Q: Quiver, star_names=None) -> CheckReport:
    """Compare the cyclic derivatives of the canonical cubic potential with the
    preprojective components and the commutators with ω = sum of loops."""
    T = build_triple(Q, star_names)
    W = canonical_cubic(Q, star_names)
    omega = _omega_sum(T)
    comps = preprojective_components(Q, over=T)
    rep = CheckReport("dimred")
    for v, loop in T.loops:
        lhs = cyclic_derivative(W, loop)
        rep.add(f"dW/d{loop} = e_{v} rho e_{v}", lhs == comps[v], {"vertex": v},
                witness={"lhs": repr(lhs), "rhs": repr(comps[v])})
    for a, s in T.star_pairs:
        A = PathSum.word(T, [a])
        S = PathSum.word(T, [s])
        lhs = cyclic_derivative(W, a)
        rhs = commutator(S, omega)
        rep.add(f"dW/d{a} = {s}ω - ω{s}", lhs == rhs, {"arrow": a},
                witness={"lhs": repr(lhs), "rhs": repr(rhs)})
        lhs = cyclic_derivative(W, s)
        rhs = commutator(omega, A)
        rep.add(f"dW/d{s} = ω{a} - {a}ω", lhs == rhs, {"arrow": s},
                witness={"lhs": repr(lhs), "rhs": repr(rhs)})
    total = PathSum(T)
    for c in comps.values():
        total = total + c
    rep.add("sum of components = rho", total == preprojective_relation(T), {})
    return rep


def jacobi_relations(W: PathSum) -> List[PathSum]:
    return [cyclic_derivative(W, a) for a in W.quiver.arrow_names()]


def paths_of_length(Q: Quiver, k: int) -> List[Path]:
    if k == 0:
        return [idempotent(v) for v in Q.vertices]
    out_arrows: Dict[str, List[str]] = {v: [] for v in Q.vertices}
    for a in Q.arrows:
        out_arrows[a.src].append(a.name)
    tgt = {a.name: a.tgt for a in Q.arrows}
    words = [(a.name,) for a in Q.arrows]
    for _ in range(k - 1):
        words = [w + (b,) for w in words for b in out_arrows[tgt[w[-1]]]]
    return [Path(w) for w in words]


def truncated_quotient_dims(Q: Quiver, relations: Iterable[PathSum], L: int) -> List[int]:
    """dim_k of C[Q]/(relations) for k = 0..L, for length-homogeneous relations."""
    rels = []
    for r in relations:
        if r.quiver != Q:
            raise PathError("relation over a different quiver")
        if not r:
            continue
        ls = r.lengths()
        if len(ls) != 1:
            raise InhomogeneousRelation(f"relation {r!r} mixes path lengths {sorted(ls)}")
        rels.append((ls.pop(), r))
    by_len = {k: paths_of_length(Q, k) for k in range(L + 1)}
    dims = []
    for k in range(L + 1):
        ech = Echelon(order=lambda p: (p.arrows, p.vertex or ""))
        for ell, r in rels:
            if ell > k:
                continue
            for j in range(k - ell + 1):
                for p in by_len[j]:
                    left = multiply(PathSum(Q, {p: 1}), r)
                    if not left:
                        continue
                    for q in by_len[k - ell - j]:
                        v = multiply(left, PathSum(Q, {q: 1}))
                        if v:
                            ech.insert(v.terms)
        dims.append(len(by_len[k]) - ech.rank)
    return dims


# torus weights

def path_weight(p: Path, w: Mapping[str, Sequence[int]], rank: int) -> Tuple[int, ...]:
    tot = [0] * rank
    for a in p.arrows:
        for i, x in enumerate(w.get(a, (0,) * rank)):
            tot[i] += x
    return tuple(tot)


def homogeneous_weight(p: PathSum, w: Mapping[str, Sequence[int]]) -> Optional[Tuple[int, ...]]:
    """The common weight of all paths in p, or None if they differ (or p = 0)."""
    if not p.terms:
        return None
    rank = len(next(iter(w.values()))) if w else 1
    if any(len(v) != rank for v in w.values()):
        raise ValueError("weight vectors of different lengths")
    ws = {path_weight(q, w, rank) for q in p.terms}
    return ws.pop() if len(ws) == 1 else None


def solve_positive_weight(W: PathSum) -> Optional[Dict[str, Tuple[int]]]:
    """Integer rank-one arrow weights giving every cycle of W one positive weight."""
    cycles = [p for p, _ in W.sorted_terms()]
    if not cycles:
        return None
    arrows = W.quiver.arrow_names()
    counts = [[sum(1 for x in c.arrows if x == a) for a in arrows] for c in cycles]
    first = counts[0]
    rows = [[x - y for x, y in zip(row, first)] for row in counts[1:]]
    basis = nullspace(rows, len(arrows)) if rows else [
        [Fraction(int(i == j)) for j in range(len(arrows))] for i in range(len(arrows))]
    for b in basis:
        s = sum(x * y for x, y in zip(first, b))
        if s == 0:
            continue
        if s < 0:
            b = [-x for x in b]
        den = 1
        for x in b:
            den = den * x.denominator // _gcd(den, x.denominator)
        ints = [int(x * den) for x in b]
        g = 0
        for x in ints:
            g = _gcd(g, abs(x))
        ints = [x // g for x in ints] if g else ints
        return {a: (x,) for a, x in zip(arrows, ints)}
    return None


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a



def dn_deformation_potential(n: int, triple: bool = False) -> Potential:
    """W0 = x_{2,0} x_{0,2} on the affine D_n double (or triple) quiver."""
    if n < 4:
        raise ValueError("affine D_n needs n >= 4")
    Q = affine_dn(n)
    names = dn_star_names(n)
    D = build_triple(Q, names) if triple else build_double(Q, names)
    return Potential(D, {make_path(D, ["x_{2,0}", "x_{0,2}"]): 1})
