"""Truncated characters in a cohomological variable q and dimension variables t^d.

A ``Character`` stores rational coefficients c[d][k] of q^k t^d for d up to a
cutoff and k inside a band [kmin, kmax].  The plethystic exponential uses the
Adams operations psi_n(q^k t^d) = q^(nk) t^(nd); in signed mode a class of odd
degree k picks up the sign (-1)^(n+1), so it contributes exterior rather than
symmetric powers.
"""
import json
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Tuple

from .reports import CheckReport

Poly = Dict[int, Fraction]


def _leq(a, b):
    return all(x <= y for x, y in zip(a, b))


def _padd(a: Poly, b: Poly, s=1) -> Poly:
    out = dict(a)
    for k, c in b.items():
        x = out.get(k, 0) + s * c
        if x:
            out[k] = x
        else:
            out.pop(k, None)
    return out


def _pmul(a: Poly, b: Poly) -> Poly:
    out: Poly = {}
    for i, x in a.items():
        for j, y in b.items():
            out[i + j] = out.get(i + j, 0) + x * y
    return {k: c for k, c in out.items() if c}


def dims_upto(cutoff) -> List[Tuple[int, ...]]:
    """All dimension vectors below the cutoff, ordered by total size."""
    out = [()]
    for m in cutoff:
        out = [d + (i,) for d in out for i in range(m + 1)]
    return sorted(out, key=lambda d: (sum(d), d))


class Character:
    def __init__(self, cutoff, band, coeffs: Optional[Mapping[Tuple[Tuple[int, ...], int], object]] = None):
        self.cutoff = tuple(int(x) for x in cutoff)
        self.band = (int(band[0]), int(band[1]))
        self.c: Dict[Tuple[Tuple[int, ...], int], Fraction] = {}
        for (d, k), v in (coeffs or {}).items():
            d = tuple(d)
            v = Fraction(v)
            if v and self.contains(d, k):
                self.c[(d, k)] = self.c.get((d, k), 0) + v
        self.c = {key: v for key, v in self.c.items() if v}

    def contains(self, d, k) -> bool:
        return len(d) == len(self.cutoff) and _leq(d, self.cutoff) and self.band[0] <= k <= self.band[1]

    @classmethod
    def one(cls, cutoff, band) -> "Character":
        return cls(cutoff, band, {((0,) * len(cutoff), 0): 1})

    @classmethod
    def monomial(cls, cutoff, band, d, k=0, coeff=1) -> "Character":
        return cls(cutoff, band, {(tuple(d), k): coeff})

    def coefficient(self, d, k) -> Fraction:
        d = tuple(d)
        if not self.contains(d, k):
            raise ValueError(f"(d={list(d)}, k={k}) lies outside cutoff {list(self.cutoff)} / band {self.band}")
        return self.c.get((d, k), Fraction(0))

    def poly(self, d) -> Poly:
        d = tuple(d)
        return {k: v for (e, k), v in self.c.items() if e == d}

    def slices(self) -> Dict[Tuple[int, ...], Poly]:
        out: Dict[Tuple[int, ...], Poly] = {}
        for (d, k), v in self.c.items():
            out.setdefault(d, {})[k] = v
        return out

    def _compatible(self, other):
        if self.cutoff != other.cutoff or self.band != other.band:
            raise ValueError("characters with different cutoffs or bands")

    def __add__(self, other):
        self._compatible(other)
        t = dict(self.c)
        for key, v in other.c.items():
            t[key] = t.get(key, 0) + v
        return Character(self.cutoff, self.band, t)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, s):
        return Character(self.cutoff, self.band, {key: v * Fraction(s) for key, v in self.c.items()})

    def __mul__(self, other):
        self._compatible(other)
        out: Dict = {}
        for (d, k), v in self.c.items():
            for (e, l), w in other.c.items():
                de = tuple(x + y for x, y in zip(d, e))
                if _leq(de, self.cutoff):
                    out[(de, k + l)] = out.get((de, k + l), 0) + v * w
        return Character(self.cutoff, self.band, out)

    def __eq__(self, other):
        return (isinstance(other, Character) and self.cutoff == other.cutoff
                and self.band == other.band and self.c == other.c)

    def __repr__(self):
        terms = " + ".join(f"{v}*q^{k}t^{list(d)}" for (d, k), v in sorted(self.c.items()))
        return f"Character({terms or '0'})"

    def to_list(self) -> list:
        return [{"d": list(d), "k": k, "c": str(v)} for (d, k), v in sorted(self.c.items())]

    @classmethod
    def from_list(cls, cutoff, band, data: list) -> "Character":
        return cls(cutoff, band, {(tuple(x["d"]), int(x["k"])): Fraction(str(x["c"])) for x in data})

    def dumps(self) -> str:
        return json.dumps(self.to_list())


def exp_series(G: Mapping[Tuple[int, ...], Poly], cutoff) -> Dict[Tuple[int, ...], Poly]:
    """Ordinary exponential of a series with zero constant term, via
    |D| F_D = sum_{0 < E <= D} |E| G_E F_{D-E}, with |D| the total size."""
    zero = (0,) * len(cutoff)
    F: Dict[Tuple[int, ...], Poly] = {zero: {0: Fraction(1)}}
    for D in dims_upto(cutoff):
        if D == zero:
            continue
        acc: Poly = {}
        for E, g in G.items():
            if not g or not _leq(E, D) or E == zero:
                continue
            rest = tuple(x - y for x, y in zip(D, E))
            if rest in F:
                acc = _padd(acc, _pmul({k: v * sum(E) for k, v in g.items()}, F[rest]))
        n = sum(D)
        F[D] = {k: v / n for k, v in acc.items()}
    return F


def log_series(F: Mapping[Tuple[int, ...], Poly], cutoff) -> Dict[Tuple[int, ...], Poly]:
    """Inverse of exp_series for F with constant term 1."""
    zero = (0,) * len(cutoff)
    G: Dict[Tuple[int, ...], Poly] = {}
    for D in dims_upto(cutoff):
        if D == zero:
            continue
        acc = {k: v * sum(D) for k, v in F.get(D, {}).items()}
        for E, g in G.items():
            if _leq(E, D) and E != D:
                rest = tuple(x - y for x, y in zip(D, E))
                acc = _padd(acc, _pmul({k: v * sum(E) for k, v in g.items()}, F.get(rest, {})), -1)
        G[D] = {k: v / sum(D) for k, v in acc.items()}
    return G


def adams_log(f: Character, signed: bool) -> Dict[Tuple[int, ...], Poly]:
    """sum_n psi_n(f)/n, truncated to the cutoff in d."""
    G: Dict[Tuple[int, ...], Poly] = {}
    for (d, k), v in f.c.items():
        n = 1
        while True:
            nd = tuple(n * x for x in d)
            if not _leq(nd, f.cutoff):
                break
            sign = -1 if (signed and k % 2 and n % 2 == 0) else 1
            slot = G.setdefault(nd, {})
            slot[n * k] = slot.get(n * k, 0) + sign * v / n
            n += 1
    return G


def plethystic_exp(f: Character, signed: bool = True) -> Character:
    zero = (0,) * len(f.cutoff)
    if any(d == zero for d, _ in f.c):
        raise ValueError("plethystic_exp needs a zero d=0 slice")
    F = exp_series(adams_log(f, signed), f.cutoff)
    return Character(f.cutoff, f.band, {(d, k): v for d, p in F.items() for k, v in p.items()})


def tensor_polynomial_ring(f: Character, rank: int = 1) -> Character:
    """Multiply by (1 - q^2)^(-rank), i.e. tensor with rank generators of degree 2."""
    if rank < 1:
        raise ValueError("rank must be at least 1")
    out = f
    for _ in range(rank):
        t = {}
        for (d, k), v in out.c.items():
            j = k
            while j <= f.band[1]:
                t[(d, j)] = t.get((d, j), 0) + v
                j += 2
        out = Character(f.cutoff, f.band, t)
    return out


def character_of_lie(g, band) -> Character:
    """Graded dimension of a GradedLieData as a character."""
    coeffs = {}
    for e in g.elements:
        coeffs[(e.degree, e.cdeg)] = coeffs.get((e.degree, e.cdeg), 0) + 1
    return Character(g.cutoff, band, coeffs)


def pbw_monomial_count(n_char: Character, signed: bool = True) -> Character:
    """Count PBW monomials of n[u]: multisets of (basis slot, u-power) pairs,
    odd slots used at most once in signed mode."""
    kmax = n_char.band[1]
    items = []
    for (d, k), v in sorted(n_char.c.items()):
        if v.denominator != 1 or v < 0:
            raise ValueError("PBW enumeration needs nonnegative integer multiplicities")
        if k < 0:
            raise ValueError("PBW enumeration needs nonnegative cohomological degrees")
        for copy in range(int(v)):
            p = 0
            while k + 2 * p <= kmax:
                items.append((d, k + 2 * p, (k % 2 == 1) and signed))
                p += 1
    zero = (0,) * len(n_char.cutoff)
    counts: Dict[Tuple[Tuple[int, ...], int], int] = {}

    def rec(i, D, K):
        if i == len(items):
            counts[(D, K)] = counts.get((D, K), 0) + 1
            return
        d, k, odd = items[i]
        m = 0
        while True:
            if m and (odd and m > 1):
                break
            nd = tuple(x + m * y for x, y in zip(D, d))
            nk = K + m * k
            if not _leq(nd, n_char.cutoff) or nk > kmax:
                break
            rec(i + 1, nd, nk)
            m += 1

    rec(0, zero, 0)
    return Character(n_char.cutoff, n_char.band, counts)


def pbw_character_check(n_char: Character, cutoff=None, signed: bool = True) -> CheckReport:
    """Compare Exp(n_char / (1-q^2)) with the direct PBW monomial count."""
    if cutoff is not None and tuple(cutoff) != n_char.cutoff:
        n_char = Character(cutoff, n_char.band, n_char.c)
    zero = (0,) * len(n_char.cutoff)
    if any(d == zero for d, _ in n_char.c):
        raise ValueError("n_char must have zero d=0 slice")
    a = plethystic_exp(tensor_polynomial_ring(n_char, 1), signed)
    b = pbw_monomial_count(n_char, signed)
    rep = CheckReport("pbw")
    witness = None
    for key in sorted(set(a.c) | set(b.c)):
        if a.c.get(key, 0) != b.c.get(key, 0):
            witness = {"d": list(key[0]), "k": key[1], "plethystic": a.c.get(key, 0), "enumerated": b.c.get(key, 0)}
            break
    rep.add("plethystic = PBW enumeration", witness is None,
            {"cutoff": list(n_char.cutoff), "band": list(n_char.band), "signed": signed}, witness=witness)
    rep.data["character"] = a.to_list()
    return rep
