"""Graded Lie (super)algebras given by generators and Serre relations.

Everything is computed inside the tensor algebra on the generator alphabet.
The free Lie algebra is spanned by standard bracketings of Lyndon words (plus
the squares [l, l] of odd Lyndon elements in the super case), and the ideal
generated by the Serre relators is built degree by degree as the span of
ad(x_i)(I_{c - e_i}) together with the relators of content c.
"""
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from ._linalg import Echelon, vec_add, vec_scale
from .quiver import IntBilinearForm, Quiver, symmetrized_euler
from .reports import CheckReport


class CutoffTooSmall(ValueError):
    pass


class PresentationError(ValueError):
    pass


@dataclass(frozen=True)
class GradedGenerator:
    label: str
    degree: Tuple[int, ...]
    cdeg: int = 0
    multiplicity: int = 1

    def __post_init__(self):
        object.__setattr__(self, "degree", tuple(int(x) for x in self.degree))
        if not any(self.degree):
            raise PresentationError(f"generator {self.label} has degree 0")
        if self.multiplicity < 1:
            raise PresentationError("multiplicity must be positive")


@dataclass(frozen=True)
class Letter:
    label: str
    degree: Tuple[int, ...]
    cdeg: int

    @property
    def parity(self) -> int:
        return self.cdeg % 2


def expand_generators(gens: Sequence[GradedGenerator]) -> List[Letter]:
    """One letter per copy, sorted by label (the alphabet order)."""
    letters = []
    for g in gens:
        if g.multiplicity == 1:
            letters.append(Letter(g.label, g.degree, g.cdeg))
        else:
            letters += [Letter(f"{g.label}#{k}", g.degree, g.cdeg) for k in range(1, g.multiplicity + 1)]
    letters.sort(key=lambda l: l.label)
    if len({l.label for l in letters}) != len(letters):
        raise PresentationError("duplicate generator labels")
    if len({len(l.degree) for l in letters}) > 1:
        raise PresentationError("generator degrees have different lengths")
    return letters


@dataclass
class LiePresentation:
    generators: List[GradedGenerator]
    pairing: List[List[int]]
    serre_pairs: Optional[List[Tuple[str, str]]] = None

    def __post_init__(self):
        if isinstance(self.pairing, IntBilinearForm):
            self.pairing = [list(r) for r in self.pairing.matrix]
        n = len(self.pairing)
        if any(self.pairing[i][j] != self.pairing[j][i] for i in range(n) for j in range(n)):
            raise PresentationError("pairing must be symmetric")

    def pair(self, d, e) -> int:
        P = self.pairing
        return sum(d[i] * P[i][j] * e[j] for i in range(len(d)) for j in range(len(e)))

    def letters(self) -> List[Letter]:
        return expand_generators(self.generators)

    def relator_specs(self) -> List[Tuple[int, int, int]]:
        """(i, j, n) meaning ad(x_i)^n (x_j) for letter indices i, j."""
        letters = self.letters()
        index = {l.label: k for k, l in enumerate(letters)}
        if self.serre_pairs is not None:
            try:
                pairs = [(index[a], index[b]) for a, b in self.serre_pairs]
            except KeyError as exc:
                raise PresentationError(f"unknown label in serre pairs: {exc}") from exc
        else:
            pairs = []
            for i, li in enumerate(letters):
                for j, lj in enumerate(letters):
                    if self.pair(li.degree, li.degree) == 2 or self.pair(li.degree, lj.degree) == 0:
                        pairs.append((i, j))
        specs = []
        for i, j in pairs:
            n = 1 - self.pair(letters[i].degree, letters[j].degree)
            if i == j and n < 1:
                continue
            if n < 1:
                raise PresentationError(
                    f"Serre exponent {n} for ({letters[i].label}, {letters[j].label}) is not positive")
            specs.append((i, j, n))
        return specs

    def to_dict(self) -> dict:
        out = {"generators": [{"label": g.label, "degree": list(g.degree), "cdeg": g.cdeg,
                               "multiplicity": g.multiplicity} for g in self.generators],
               "pairing": [list(r) for r in self.pairing]}
        if self.serre_pairs is not None:
            out["serre_pairs"] = [list(p) for p in self.serre_pairs]
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "LiePresentation":
        try:
            gens = [GradedGenerator(str(g["label"]), tuple(g["degree"]), int(g.get("cdeg", 0)),
                                    int(g.get("multiplicity", 1))) for g in data["generators"]]
            pairing = [[int(x) for x in row] for row in data["pairing"]]
        except (KeyError, TypeError) as exc:
            raise PresentationError(f"malformed presentation: {exc}") from exc
        pairs = data.get("serre_pairs")
        if pairs is not None:
            pairs = [tuple(str(x) for x in p) for p in pairs]
        return cls(gens, pairing, pairs)

    @classmethod
    def load(cls, path) -> "LiePresentation":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))


def presentation_for_quiver(Q: Quiver, generators: Sequence[GradedGenerator], serre_pairs=None) -> LiePresentation:
    return LiePresentation(list(generators), [list(r) for r in symmetrized_euler(Q).matrix], serre_pairs)


# tensor algebra helpers; words are tuples of letter indices

def _tmul(u, v):
    out = {}
    for a, c in u.items():
        for b, d in v.items():
            w = a + b
            x = out.get(w, 0) + c * d
            if x:
                out[w] = x
            else:
                out.pop(w, None)
    return out


def _tbracket(u, pu, v, pv):
    sign = -1 if (pu and pv) else 1
    return vec_add(_tmul(u, v), _tmul(v, u), -sign)


def _is_lyndon(w) -> bool:
    n = len(w)
    return all(w < w[i:] + w[:i] for i in range(1, n))


def _leq(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


class _FreeLie:
    """Lyndon data and tensor expansions for an alphabet truncated at a cutoff."""

    def __init__(self, letters: List[Letter], cutoff):
        self.letters = letters
        self.cutoff = tuple(cutoff)
        self.n = len(letters)
        self._std: Dict[tuple, dict] = {}
        self.words = self._lyndon_words()

    def degree(self, word):
        d = (0,) * len(self.cutoff)
        for i in word:
            d = _add(d, self.letters[i].degree)
        return d

    def cdeg(self, word) -> int:
        return sum(self.letters[i].cdeg for i in word)

    def parity(self, word) -> int:
        return sum(self.letters[i].parity for i in word) % 2

    def content(self, word):
        c = [0] * self.n
        for i in word:
            c[i] += 1
        return tuple(c)

    def _lyndon_words(self):
        out = []
        stack = [((i,), self.letters[i].degree) for i in range(self.n)]
        stack = [s for s in stack if _leq(s[1], self.cutoff)]
        while stack:
            w, d = stack.pop()
            if _is_lyndon(w):
                out.append(w)
            for i in range(self.n):
                e = _add(d, self.letters[i].degree)
                if _leq(e, self.cutoff):
                    stack.append((w + (i,), e))
        out.sort()
        return out

    def standard(self, w) -> dict:
        """Tensor expansion of the standard bracketing of a Lyndon word."""
        if w in self._std:
            return self._std[w]
        if len(w) == 1:
            val = {w: Fraction(1)}
        else:
            for k in range(1, len(w)):
                if _is_lyndon(w[k:]):
                    u, v = w[:k], w[k:]
                    break
            val = _tbracket(self.standard(u), self.parity(u), self.standard(v), self.parity(v))
        self._std[w] = val
        return val

    def bracket_label(self, w) -> str:
        if len(w) == 1:
            return self.letters[w[0]].label
        for k in range(1, len(w)):
            if _is_lyndon(w[k:]):
                return f"[{self.bracket_label(w[:k])},{self.bracket_label(w[k:])}]"

    def candidates(self):
        """(label, word-or-square key, tensor vector, degree, cdeg, content) for a free basis."""
        out = []
        for w in self.words:
            out.append((self.bracket_label(w), self.standard(w), self.degree(w), self.cdeg(w),
                        self.content(w)))
        for w in self.words:
            if self.parity(w):
                d2 = _add(self.degree(w), self.degree(w))
                if _leq(d2, self.cutoff):
                    s = self.standard(w)
                    lab = self.bracket_label(w)
                    out.append((f"[{lab},{lab}]", _tbracket(s, 1, s, 1), d2, 2 * self.cdeg(w),
                                tuple(2 * x for x in self.content(w))))
        return out


def free_lie_dims(generators: Sequence[GradedGenerator], cutoff) -> Dict[Tuple[int, ...], int]:
    """Graded dimensions of the free Lie (super)algebra up to the cutoff."""
    letters = expand_generators(generators)
    F = _FreeLie(letters, cutoff)
    dims: Dict[Tuple[int, ...], int] = {}
    for lab, vec, d, k, c in F.candidates():
        dims[d] = dims.get(d, 0) + 1
    return dict(sorted(dims.items()))


@dataclass(frozen=True)
class BasisElement:
    label: str
    degree: Tuple[int, ...]
    cdeg: int = 0

    @property
    def parity(self) -> int:
        return self.cdeg % 2


@dataclass
class GradedLieData:
    """Basis and structure constants of a graded Lie algebra up to a cutoff."""

    cutoff: Tuple[int, ...]
    elements: List[BasisElement]
    brackets: Dict[Tuple[str, str], Dict[str, Fraction]] = field(default_factory=dict)
    notes: Dict[str, object] = field(default_factory=dict)

    def __post_init__(self):
        self.cutoff = tuple(self.cutoff)
        self._by_label = {e.label: e for e in self.elements}

    def element(self, label: str) -> BasisElement:
        return self._by_label[label]

    def labels(self) -> List[str]:
        return [e.label for e in self.elements]

    def basis(self) -> Dict[Tuple[Tuple[int, ...], int], List[str]]:
        out: Dict[Tuple[Tuple[int, ...], int], List[str]] = {}
        for e in self.elements:
            out.setdefault((e.degree, e.cdeg), []).append(e.label)
        return out

    def dims(self) -> Dict[Tuple[int, ...], int]:
        out: Dict[Tuple[int, ...], int] = {}
        for e in self.elements:
            out[e.degree] = out.get(e.degree, 0) + 1
        return dict(sorted(out.items()))

    def in_cutoff(self, d) -> bool:
        return _leq(d, self.cutoff)

    def bracket_basis(self, x: str, y: str) -> Dict[str, Fraction]:
        try:
            return self.brackets[(x, y)]
        except KeyError:
            raise KeyError(f"bracket [{x},{y}] is outside the cutoff {self.cutoff}") from None

    def bracket(self, u: Mapping[str, Fraction], v: Mapping[str, Fraction]) -> Dict[str, Fraction]:
        out: Dict[str, Fraction] = {}
        for x, a in u.items():
            for y, b in v.items():
                out = vec_add(out, self.bracket_basis(x, y), a * b)
        return out

    def to_dict(self) -> dict:
        return {
            "cutoff": list(self.cutoff),
            "basis": [{"label": e.label, "degree": list(e.degree), "cdeg": e.cdeg} for e in self.elements],
            "brackets": structure_constants(self),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "GradedLieData":
        elems = [BasisElement(str(e["label"]), tuple(e["degree"]), int(e.get("cdeg", 0))) for e in data["basis"]]
        g = cls(tuple(data["cutoff"]), elems)
        g.brackets = table_from_rows(data["brackets"])
        return g


def structure_constants(g: GradedLieData) -> List[dict]:
    """All stored brackets as exchange rows {"x", "y", "result": {label: "p/q"}}."""
    rows = []
    order = {lab: k for k, lab in enumerate(g.labels())}
    for (x, y) in sorted(g.brackets, key=lambda p: (order[p[0]], order[p[1]])):
        res = g.brackets[(x, y)]
        rows.append({"x": x, "y": y,
                     "result": {k: str(res[k]) for k in sorted(res, key=lambda k: order.get(k, 0))}})
    return rows


def table_from_rows(rows: List[dict]) -> Dict[Tuple[str, str], Dict[str, Fraction]]:
    return {(r["x"], r["y"]): {k: Fraction(v) for k, v in r["result"].items()} for r in rows}


def serre_quotient(p: LiePresentation, cutoff, strict: bool = True) -> GradedLieData:
    """Free Lie algebra on the generators modulo the Serre ideal, up to ``cutoff``.

    With ``strict`` set, a relator ad(x_i)^n(x_j) with n >= 2 lying beyond the
    cutoff while [x_i, x_j] lies inside raises CutoffTooSmall: part of the
    ad-string it truncates would otherwise look free.
    """
    cutoff = tuple(cutoff)
    letters = p.letters()
    if any(len(l.degree) != len(cutoff) for l in letters):
        raise PresentationError("cutoff length differs from generator degrees")
    F = _FreeLie(letters, cutoff)

    relators: Dict[tuple, List[dict]] = {}
    for i, j, n in p.relator_specs():
        li, lj = letters[i], letters[j]
        d = lj.degree
        for _ in range(n):
            d = _add(d, li.degree)
        if not _leq(d, cutoff):
            if strict and n >= 2 and _leq(_add(li.degree, lj.degree), cutoff):
                raise CutoffTooSmall(
                    f"relator ad({li.label})^{n}({lj.label}) has degree {list(d)} beyond cutoff {list(cutoff)}")
            continue
        vec = {(j,): Fraction(1)}
        par = lj.parity
        for _ in range(n):
            vec = _tbracket({(i,): Fraction(1)}, li.parity, vec, par)
            par = (par + li.parity) % 2
        content = [0] * len(letters)
        content[i] += n
        content[j] += 1
        if vec:
            relators.setdefault(tuple(content), []).append(vec)

    cands: Dict[tuple, list] = {}
    for lab, vec, d, k, c in F.candidates():
        cands.setdefault(c, []).append((lab, vec, d, k))

    def word_order(w):
        return w

    ideal: Dict[tuple, List[dict]] = {}
    slices: Dict[tuple, Echelon] = {}
    elements: List[BasisElement] = []
    for c in sorted(cands, key=lambda c: (sum(c), c)):
        span = list(relators.get(c, []))
        for i in range(len(letters)):
            if c[i] == 0:
                continue
            prev = tuple(x - (1 if k == i else 0) for k, x in enumerate(c))
            for v in ideal.get(prev, []):
                par = sum(letters[k].parity * x for k, x in enumerate(prev)) % 2
                w = _tbracket({(i,): Fraction(1)}, letters[i].parity, v, par)
                if w:
                    span.append(w)
        ech = Echelon(word_order)
        basis_ideal = []
        for v in span:
            if ech.insert(v, tag=("I", ech.n_inserted)):
                basis_ideal.append(v)
        ideal[c] = basis_ideal
        for lab, vec, d, k in cands[c]:
            if ech.insert(vec, tag=("B", lab)):
                elements.append(BasisElement(lab, d, k))
        slices[c] = ech

    g = GradedLieData(cutoff, elements)
    reps = {lab: (vec, c) for c, lst in cands.items() for lab, vec, d, k in lst}
    par = {e.label: e.parity for e in elements}
    for x in elements:
        for y in elements:
            if not _leq(_add(x.degree, y.degree), cutoff):
                continue
            vx, cx = reps[x.label]
            vy, cy = reps[y.label]
            w = _tbracket(vx, par[x.label], vy, par[y.label])
            c = _add(cx, cy)
            if c not in slices:
                if w:
                    raise AssertionError("nonzero bracket in an empty slice")
                g.brackets[(x.label, y.label)] = {}
                continue
            rem, combo = slices[c].reduce(w)
            if rem:
                raise AssertionError("bracket escaped the free Lie slice")
            g.brackets[(x.label, y.label)] = {t[1]: v for t, v in combo.items() if t[0] == "B" and v}
    g.notes["relators"] = [f"ad({letters[i].label})^{n}({letters[j].label})" for i, j, n in p.relator_specs()]
    return g


def check_lie_axioms(g: GradedLieData) -> CheckReport:
    """Super-antisymmetry and super-Jacobi on every in-cutoff basis pair and triple."""
    rep = CheckReport("lie-axioms")
    E = g.elements
    bad = None
    for x in E:
        for y in E:
            if (x.label, y.label) not in g.brackets:
                continue
            sign = -1 if (x.parity and y.parity) else 1
            lhs = g.bracket_basis(x.label, y.label)
            rhs = vec_scale(g.bracket_basis(y.label, x.label), -sign)
            if lhs != rhs:
                bad = (x.label, y.label)
                break
        if bad:
            break
    rep.add("antisymmetry", bad is None, {"cutoff": g.cutoff}, witness=bad)
    bad = None
    for x in E:
        for y in E:
            if not g.in_cutoff(_add(x.degree, y.degree)):
                continue
            for z in E:
                if not g.in_cutoff(_add(_add(x.degree, y.degree), z.degree)):
                    continue
                total = {}
                for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
                    s = -1 if (a.parity and c.parity) else 1
                    inner = g.bracket_basis(b.label, c.label)
                    total = vec_add(total, g.bracket({a.label: Fraction(1)}, inner), s)
                if total:
                    bad = (x.label, y.label, z.label)
                    break
            if bad:
                break
        if bad:
            break
    rep.add("jacobi", bad is None, {"cutoff": g.cutoff}, witness=bad)
    return rep


def preprojective_root_data(Q: Quiver, sigma: Sequence, cutoff, multiplicities: Optional[Mapping] = None,
                            labels: Optional[Sequence[str]] = None,
                            cdegs: Optional[Mapping] = None) -> List[GradedGenerator]:
    """Generators indexed by sigma plus the multiples l*d (l >= 2) of isotropic d in sigma."""
    S = symmetrized_euler(Q)
    cutoff = Q.dim(cutoff)
    multiplicities = {tuple(k): v for k, v in (multiplicities or {}).items()}
    cdegs = {tuple(k): v for k, v in (cdegs or {}).items()}
    gens = []
    seen = set()
    for idx, d in enumerate(sigma):
        d = Q.dim(d)
        base = labels[idx] if labels else f"G{idx + 1}"
        mults = [1]
        if S(d, d) == 0:
            l = 2
            while _leq(tuple(l * x for x in d), cutoff):
                mults.append(l)
                l += 1
        for l in mults:
            e = tuple(l * x for x in d)
            if not _leq(e, cutoff) or e in seen:
                continue
            seen.add(e)
            lab = base if l == 1 else f"{base}x{l}"
            gens.append(GradedGenerator(lab, e, int(cdegs.get(e, 0)), int(multiplicities.get(e, 1))))
    return gens


def simple_presentation(Q: Quiver) -> LiePresentation:
    """Generators at the vertex simple roots with the symmetrized Euler pairing."""
    n = Q.n
    gens = [GradedGenerator(f"G{i + 1}", tuple(int(k == i) for k in range(n))) for i in range(n)]
    return presentation_for_quiver(Q, gens)
