"""The current algebra n[u] with the weight-twisted bracket

    [x u^p, y u^q] = |d|^p |e|^q / |d+e|^(p+q) [x, y] u^(p+q),

for x of degree d and y of degree e, where |d| = sum_i r_i d_i.  The
derivation ``partial_u`` sends x u^p to p |d| x u^(p-1); together with
multiplication by u it generates a Heisenberg action whose central charge on
the degree-d component is |d|.
"""
import itertools
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from ._linalg import Echelon
from .lie import GradedLieData, _add
from .quiver import det_weight
from .reports import CheckReport


class CutoffExceeded(KeyError):
    pass


class TwistWeights:
    """Vertex weights r_i, all of one sign, defining |d| = sum r_i d_i."""

    def __init__(self, r: Sequence[int]):
        self.r = tuple(int(x) for x in r)
        det_weight(self.r, (0,) * len(self.r))  # validates signs

    def __call__(self, d) -> int:
        v = det_weight(self.r, d)
        if v == 0 and any(d):
            raise ValueError(f"|d| vanishes at d={d}")
        return v

    def __repr__(self):
        return f"TwistWeights({list(self.r)})"


Key = Tuple[str, int]


class CurrentElement:
    """A finite combination of x u^p for basis labels x of a graded Lie algebra."""

    __slots__ = ("terms", "degrees")

    def __init__(self, terms: Optional[Mapping[Key, object]] = None, degrees: Optional[Mapping[str, tuple]] = None):
        self.degrees = dict(degrees or {})
        t: Dict[Key, Fraction] = {}
        for (lab, p), c in (terms or {}).items():
            if p < 0:
                raise ValueError("u-powers are nonnegative")
            c = Fraction(c)
            if c:
                t[(lab, p)] = t.get((lab, p), 0) + c
        self.terms = {k: c for k, c in t.items() if c}
        missing = {lab for lab, _ in self.terms} - set(self.degrees)
        if missing:
            raise ValueError(f"no degree for labels {sorted(missing)}")

    @classmethod
    def basis(cls, g: GradedLieData, label: str, p: int = 0, coeff=1) -> "CurrentElement":
        return cls({(label, p): coeff}, {label: g.element(label).degree})

    def _merge_deg(self, other):
        d = dict(self.degrees)
        d.update(other.degrees)
        return d

    def __add__(self, other):
        t = dict(self.terms)
        for k, c in other.terms.items():
            t[k] = t.get(k, 0) + c
        return CurrentElement(t, self._merge_deg(other))

    def __neg__(self):
        return CurrentElement({k: -c for k, c in self.terms.items()}, self.degrees)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        return CurrentElement({k: c * Fraction(s) for k, c in self.terms.items()}, self.degrees)

    def __rmul__(self, s):
        return self.scale(s)

    def __eq__(self, other):
        return isinstance(other, CurrentElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for (lab, p), c in sorted(self.terms.items()):
            u = "" if p == 0 else ("u" if p == 1 else f"u^{p}")
            parts.append(f"{c}*{lab}{u}")
        return " + ".join(parts)

    def degree_of(self, label):
        return self.degrees[label]


def _bracket(g: GradedLieData, x: CurrentElement, y: CurrentElement, factor) -> CurrentElement:
    out: Dict[Key, Fraction] = {}
    degs = x._merge_deg(y)
    for (a, p), c in x.terms.items():
        for (b, q), d in y.terms.items():
            da, db = degs[a], degs[b]
            if not g.in_cutoff(_add(da, db)):
                raise CutoffExceeded(f"[{a},{b}] has degree {_add(da, db)} beyond cutoff {g.cutoff}")
            f = factor(da, p, db, q)
            for lab, v in g.bracket_basis(a, b).items():
                k = (lab, p + q)
                out[k] = out.get(k, 0) + c * d * f * v
    for lab, _ in out:
        degs.setdefault(lab, g.element(lab).degree)
    return CurrentElement(out, degs)


def twisted_bracket(g: GradedLieData, w: TwistWeights, x: CurrentElement, y: CurrentElement) -> CurrentElement:
    def factor(d, p, e, q):
        return Fraction(w(d) ** p * w(e) ** q, w(_add(d, e)) ** (p + q))
    return _bracket(g, x, y, factor)


def trivial_bracket(g: GradedLieData, x: CurrentElement, y: CurrentElement) -> CurrentElement:
    return _bracket(g, x, y, lambda d, p, e, q: 1)


def u_action(x: CurrentElement) -> CurrentElement:
    return CurrentElement({(lab, p + 1): c for (lab, p), c in x.terms.items()}, x.degrees)


def partial_u(w: TwistWeights, x: CurrentElement) -> CurrentElement:
    """x u^p -> p |deg x| x u^(p-1)."""
    out = {}
    for (lab, p), c in x.terms.items():
        if p:
            out[(lab, p - 1)] = c * p * w(x.degrees[lab])
    return CurrentElement(out, x.degrees)


def rescale_map(w: TwistWeights, x: CurrentElement) -> CurrentElement:
    """Change of coordinates u' = u/|d|: x u'^p = |d|^(-p) x u^p."""
    return CurrentElement({(lab, p): c / Fraction(w(x.degrees[lab])) ** p for (lab, p), c in x.terms.items()},
                          x.degrees)


def basis_currents(g: GradedLieData, upow: int) -> List[CurrentElement]:
    return [CurrentElement.basis(g, e.label, p) for e in g.elements for p in range(upow + 1)]


def _pairs(g: GradedLieData, upow: int):
    E = g.elements
    for x in E:
        for y in E:
            if g.in_cutoff(_add(x.degree, y.degree)):
                for p in range(upow + 1):
                    for q in range(upow + 1):
                        yield (CurrentElement.basis(g, x.label, p), CurrentElement.basis(g, y.label, q),
                               (x.label, p, y.label, q))


def _triples(g: GradedLieData, upow: int):
    E = g.elements
    for x, y, z in itertools.product(E, repeat=3):
        if not g.in_cutoff(_add(_add(x.degree, y.degree), z.degree)):
            continue
        for p, q, s in itertools.product(range(upow + 1), repeat=3):
            yield (CurrentElement.basis(g, x.label, p), CurrentElement.basis(g, y.label, q),
                   CurrentElement.basis(g, z.label, s), (x, y, z), (x.label, p, y.label, q, z.label, s))


def heisenberg_check(g: GradedLieData, w: TwistWeights, upow: int = 3) -> CheckReport:
    """partial_u is a derivation, [partial_u, u] = |d| on degree d, and
    partial_u is injective on elements whose u-powers are all >= 1."""
    rep = CheckReport("heisenberg")
    inputs = {"r": list(w.r), "cutoff": list(g.cutoff), "upow": upow}
    bad = None
    for X, Y, key in _pairs(g, upow):
        lhs = partial_u(w, twisted_bracket(g, w, X, Y))
        rhs = twisted_bracket(g, w, partial_u(w, X), Y) + twisted_bracket(g, w, X, partial_u(w, Y))
        if lhs != rhs:
            bad = key
            break
    rep.add("partial_u is a derivation", bad is None, inputs, witness=bad)

    bad = None
    charges = {}
    for X in basis_currents(g, upow):
        (lab, p), = X.terms
        d = X.degrees[lab]
        comm = partial_u(w, u_action(X)) - u_action(partial_u(w, X))
        charges[d] = w(d)
        if comm != X.scale(w(d)):
            bad = (lab, p)
            break
    rep.add("[partial_u, u] = |d| id", bad is None, inputs, witness=bad)
    rep.data["central_charges"] = {",".join(map(str, d)): c for d, c in sorted(charges.items())}

    ech = Echelon()
    count = 0
    for X in basis_currents(g, upow):
        (lab, p), = X.terms
        if p == 0:
            continue
        count += 1
        ech.insert(partial_u(w, X).terms)
    rep.add("partial_u injective on positive u-powers", ech.rank == count, inputs,
            witness={"rank": ech.rank, "dim": count})
    return rep


def current_algebra_suite(g: GradedLieData, w: TwistWeights, upow: int = 3) -> CheckReport:
    """Antisymmetry, Jacobi and the two derivation laws of the twisted bracket,
    plus the Heisenberg checks, on every in-cutoff basis pair/triple."""
    rep = CheckReport("current")
    inputs = {"r": list(w.r), "cutoff": list(g.cutoff), "upow": upow}
    bad_anti = bad_u = None
    for X, Y, key in _pairs(g, upow):
        (lx, _), = X.terms
        (ly, _), = Y.terms
        sign = -1 if (g.element(lx).parity and g.element(ly).parity) else 1
        if bad_anti is None and twisted_bracket(g, w, X, Y) != twisted_bracket(g, w, Y, X).scale(-sign):
            bad_anti = key
        if bad_u is None:
            lhs = u_action(twisted_bracket(g, w, X, Y))
            rhs = twisted_bracket(g, w, u_action(X), Y) + twisted_bracket(g, w, X, u_action(Y))
            if lhs != rhs:
                bad_u = key
    rep.add("twisted antisymmetry", bad_anti is None, inputs, witness=bad_anti)
    rep.add("u is a derivation", bad_u is None, inputs, witness=bad_u)

    bad = None
    for X, Y, Z, (x, y, z), key in _triples(g, upow):
        total = CurrentElement()
        for (A, a), (B, b), (C, c) in (((X, x), (Y, y), (Z, z)), ((Y, y), (Z, z), (X, x)),
                                       ((Z, z), (X, x), (Y, y))):
            s = -1 if (a.parity and c.parity) else 1
            total = total + twisted_bracket(g, w, A, twisted_bracket(g, w, B, C)).scale(s)
        if total:
            bad = key
            break
    rep.add("twisted Jacobi", bad is None, inputs, witness=bad)
    rep.extend(heisenberg_check(g, w, upow))
    rep.suite = "current"
    return rep


def rescaling_check(g: GradedLieData, w: TwistWeights, upow: int = 3) -> CheckReport:
    """twisted(R X, R Y) == R(trivial(X, Y)) for the rescaling R, on all basis pairs."""
    rep = CheckReport("rescaling")
    bad = None
    n = 0
    for X, Y, key in _pairs(g, upow):
        n += 1
        lhs = twisted_bracket(g, w, rescale_map(w, X), rescale_map(w, Y))
        rhs = rescale_map(w, trivial_bracket(g, X, Y))
        if lhs != rhs:
            bad = key
            break
    rep.add("rescaling intertwines twisted and trivial brackets", bad is None,
            {"r": list(w.r), "cutoff": list(g.cutoff), "upow": upow, "pairs": n}, witness=bad)
    return rep


def trivial_u_derivation_witness(g: GradedLieData, upow: int = 1):
    """First basis pair where u fails to be a derivation of the untwisted bracket."""
    for X, Y, key in _pairs(g, upow):
        lhs = u_action(trivial_bracket(g, X, Y))
        rhs = trivial_bracket(g, u_action(X), Y) + trivial_bracket(g, X, u_action(Y))
        if lhs != rhs:
            return key, lhs, rhs
    return None
