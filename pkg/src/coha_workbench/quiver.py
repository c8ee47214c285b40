"""Quivers, dimension vectors and the bilinear forms attached to them.

Dimension vectors are plain tuples of nonnegative integers indexed by the
quiver's vertex order; a dict keyed by vertex id is accepted anywhere a
dimension vector is expected.
"""
import json
import random
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple


OMEGA_PREFIX = "ω_"
STAR = "*"


class QuiverError(ValueError):
    pass


class ReservedNameError(QuiverError):
    pass


class NonBilinear(ValueError):
    """The mod-2 form built from the Euler form is not bilinear for this quiver."""

    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


class MixedSigns(ValueError):
    pass


@dataclass(frozen=True)
class Arrow:
    name: str
    src: str
    tgt: str


@dataclass(frozen=True)
class Quiver:
    """A finite quiver with string vertex ids and named arrows.

    ``star_pairs`` records (a, a*) pairs for doubled quivers and ``loops`` the
    (vertex, loop) pairs added by the tripling, so later stages can recover the
    moment map and the canonical potential.
    """

    vertices: Tuple[str, ...]
    arrows: Tuple[Arrow, ...]
    star_pairs: Tuple[Tuple[str, str], ...] = field(default=())
    loops: Tuple[Tuple[str, str], ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(str(v) for v in self.vertices))
        arrows = tuple(a if isinstance(a, Arrow) else Arrow(*a) for a in self.arrows)
        object.__setattr__(self, "arrows", arrows)
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverError("duplicate vertex ids")
        vs = set(self.vertices)
        names = set()
        for a in arrows:
            if a.src not in vs or a.tgt not in vs:
                raise QuiverError(f"arrow {a.name!r} has an undeclared endpoint")
            if a.name in names:
                raise QuiverError(f"duplicate arrow name {a.name!r}")
            names.add(a.name)

    @property
    def n(self) -> int:
        return len(self.vertices)

    def index(self, v: str) -> int:
        return self.vertices.index(v)

    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise KeyError(name)

    def arrow_names(self) -> List[str]:
        return [a.name for a in self.arrows]

    def dim(self, d) -> Tuple[int, ...]:
        """Normalize a dimension vector given as sequence or vertex dict."""
        if isinstance(d, Mapping):
            out = tuple(int(d.get(v, 0)) for v in self.vertices)
            extra = set(d) - set(self.vertices)
            if extra:
                raise QuiverError(f"unknown vertices {sorted(extra)}")
        else:
            out = tuple(int(x) for x in d)
            if len(out) != self.n:
                raise QuiverError(f"dimension vector of length {len(out)} for {self.n} vertices")
        if any(x < 0 for x in out):
            raise QuiverError("dimension vectors are nonnegative")
        return out

    def adjacency(self) -> List[List[int]]:
        A = [[0] * self.n for _ in range(self.n)]
        for a in self.arrows:
            A[self.index(a.src)][self.index(a.tgt)] += 1
        return A

    # serialization
    def to_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "arrows": [{"name": a.name, "src": a.src, "tgt": a.tgt} for a in self.arrows],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Quiver":
        try:
            verts = [str(v) for v in data["vertices"]]
            arrows = [Arrow(str(a["name"]), str(a["src"]), str(a["tgt"])) for a in data["arrows"]]
        except (KeyError, TypeError) as exc:
            raise QuiverError(f"malformed quiver description: {exc}") from exc
        return cls(tuple(verts), tuple(arrows))

    @classmethod
    def load(cls, path) -> "Quiver":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))


@dataclass(frozen=True)
class IntBilinearForm:
    vertices: Tuple[str, ...]
    matrix: Tuple[Tuple[int, ...], ...]

    def __call__(self, d: Sequence[int], e: Sequence[int]) -> int:
        return sum(d[i] * self.matrix[i][j] * e[j]
                   for i in range(len(d)) for j in range(len(e)) if d[i] and e[j])

    def transpose(self) -> "IntBilinearForm":
        n = len(self.matrix)
        return IntBilinearForm(self.vertices, tuple(tuple(self.matrix[j][i] for j in range(n)) for i in range(n)))

    def is_symmetric(self) -> bool:
        return self.matrix == self.transpose().matrix

    def mod2(self) -> "ModTwoBilinearForm":
        return ModTwoBilinearForm(self.vertices, tuple(tuple(x % 2 for x in row) for row in self.matrix))

    def to_list(self):
        return [list(r) for r in self.matrix]


@dataclass(frozen=True)
class ModTwoBilinearForm:
    vertices: Tuple[str, ...]
    matrix: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "matrix", tuple(tuple(int(x) % 2 for x in r) for r in self.matrix))

    def __call__(self, d: Sequence[int], e: Sequence[int]) -> int:
        return sum(d[i] * self.matrix[i][j] * e[j] for i in range(len(d)) for j in range(len(e))) % 2

    def __add__(self, other: "ModTwoBilinearForm") -> "ModTwoBilinearForm":
        return ModTwoBilinearForm(self.vertices, tuple(
            tuple((a + b) % 2 for a, b in zip(r, s)) for r, s in zip(self.matrix, other.matrix)))

    def transpose(self) -> "ModTwoBilinearForm":
        n = len(self.matrix)
        return ModTwoBilinearForm(self.vertices, tuple(tuple(self.matrix[j][i] for j in range(n)) for i in range(n)))

    def to_list(self):
        return [list(r) for r in self.matrix]

    @classmethod
    def zero(cls, Q: Quiver) -> "ModTwoBilinearForm":
        return cls(Q.vertices, tuple(tuple(0 for _ in Q.vertices) for _ in Q.vertices))


def euler_form(Q: Quiver) -> IntBilinearForm:
    """Euler form <d,e> = sum d_i e_i - sum_arrows d_src e_tgt, as the matrix I - A."""
    A = Q.adjacency()
    n = Q.n
    M = tuple(tuple((1 if i == j else 0) - A[i][j] for j in range(n)) for i in range(n))
    return IntBilinearForm(Q.vertices, M)


def symmetrized_euler(Q: Quiver) -> IntBilinearForm:
    M = euler_form(Q).matrix
    n = Q.n
    return IntBilinearForm(Q.vertices, tuple(tuple(M[i][j] + M[j][i] for j in range(n)) for i in range(n)))


def _check_reserved(Q: Quiver):
    for a in Q.arrows:
        if a.name.endswith(STAR) or a.name.startswith(OMEGA_PREFIX):
            raise ReservedNameError(f"arrow name {a.name!r} collides with reserved double/triple names")


def build_double(Q: Quiver, star_names: Optional[Mapping[str, str]] = None) -> Quiver:
    """Double quiver: every arrow a gets a reversed partner, named a* unless renamed."""
    if star_names is None:
        _check_reserved(Q)
        star_names = {a.name: a.name + STAR for a in Q.arrows}
    arrows = list(Q.arrows)
    pairs = []
    for a in Q.arrows:
        s = star_names[a.name]
        arrows.append(Arrow(s, a.tgt, a.src))
        pairs.append((a.name, s))
    return Quiver(Q.vertices, tuple(arrows), star_pairs=tuple(pairs))


def build_triple(Q: Quiver, star_names: Optional[Mapping[str, str]] = None) -> Quiver:
    """Triple quiver: the double plus a loop named ω_<vertex> at every vertex."""
    D = build_double(Q, star_names)
    taken = set(D.arrow_names())
    arrows = list(D.arrows)
    loops = []
    for v in Q.vertices:
        name = OMEGA_PREFIX + v
        if name in taken:
            raise ReservedNameError(f"loop name {name!r} already used")
        arrows.append(Arrow(name, v, v))
        loops.append((v, name))
    return Quiver(Q.vertices, tuple(arrows), star_pairs=D.star_pairs, loops=tuple(loops))


def _tau_value(M, d, e) -> int:
    def ev(x, y):
        return sum(x[i] * M[i][j] * y[j] for i in range(len(x)) for j in range(len(y)))
    return (ev(d, e) + ev(d, d) * ev(e, e)) % 2


def tau_form(Q: Quiver, n_random: int = 100, seed: int = 0) -> ModTwoBilinearForm:
    """The mod-2 form tau(d,e) = <d,e> + <d,d><e,e>, verified to be bilinear.

    The matrix is read off from basis vectors; it is then compared with the
    defining expression on all basis pairs, all pairs of sums of two basis
    vectors, and ``n_random`` seeded random pairs with entries at most 4.
    """
    M = euler_form(Q).matrix
    n = Q.n
    basis = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    T = tuple(tuple(_tau_value(M, basis[i], basis[j]) for j in range(n)) for i in range(n))
    form = ModTwoBilinearForm(Q.vertices, T)
    samples = [(b, c) for b in basis for c in basis]
    sums = [tuple(x + y for x, y in zip(b, c)) for i, b in enumerate(basis) for c in basis[i + 1:]]
    samples += [(s, b) for s in sums for b in basis + sums]
    rng = random.Random(seed)
    for _ in range(n_random):
        d = tuple(rng.randint(0, 4) for _ in range(n))
        e = tuple(rng.randint(0, 4) for _ in range(n))
        samples.append((d, e))
    for d, e in samples:
        if form(d, e) != _tau_value(M, d, e):
            raise NonBilinear(
                f"tau is not bilinear mod 2 at d={list(d)}, e={list(e)}", witness=(d, e))
    return form


def solve_psi(Q: Quiver) -> ModTwoBilinearForm:
    """A form psi with psi + psi^T = tau: upper triangle of tau, zero elsewhere."""
    T = tau_form(Q).matrix
    n = Q.n
    return ModTwoBilinearForm(Q.vertices, tuple(
        tuple(T[i][j] if j > i else 0 for j in range(n)) for i in range(n)))


def verify_psi(Q: Quiver, psi: ModTwoBilinearForm) -> bool:
    n = Q.n
    if len(psi.matrix) != n or any(len(r) != n for r in psi.matrix):
        raise QuiverError(f"psi has shape {len(psi.matrix)}x? for a quiver with {n} vertices")
    T = tau_form(Q).matrix
    return all((psi.matrix[i][j] + psi.matrix[j][i]) % 2 == T[i][j] for i in range(n) for j in range(n))


def psi_witness(Q: Quiver, psi: ModTwoBilinearForm) -> Optional[Tuple[int, int]]:
    """First vertex index pair where psi + psi^T differs from tau, if any."""
    T = tau_form(Q).matrix
    n = Q.n
    for i in range(n):
        for j in range(n):
            if (psi.matrix[i][j] + psi.matrix[j][i]) % 2 != T[i][j]:
                return (i, j)
    return None


def det_weight(r, d) -> int:
    """|d| = sum r_i d_i for weights r that are all positive or all negative."""
    r = list(r.values()) if isinstance(r, Mapping) else list(r)
    d = list(d.values()) if isinstance(d, Mapping) else list(d)
    if len(r) != len(d):
        raise ValueError("weight and dimension vectors differ in length")
    if any(x == 0 for x in r):
        raise ValueError("weights must be nonzero")
    if not (all(x > 0 for x in r) or all(x < 0 for x in r)):
        raise MixedSigns(f"weights {r} have mixed signs")
    return sum(x * y for x, y in zip(r, d))


# small corpus of named quivers used in examples and tests

def jordan() -> Quiver:
    return Quiver(("1",), (Arrow("a", "1", "1"),))


def linear_quiver(n: int) -> Quiver:
    """Type A_n with arrows i -> i+1."""
    vs = tuple(str(i) for i in range(1, n + 1))
    arrows = tuple(Arrow(f"a{i}" if n > 2 else "a", str(i), str(i + 1)) for i in range(1, n))
    return Quiver(vs, arrows)


def kronecker() -> Quiver:
    return Quiver(("1", "2"), (Arrow("a", "1", "2"), Arrow("b", "1", "2")))


def dn_edges(n: int) -> List[Tuple[int, int]]:
    """Edges of the affine D_n graph on vertices 0..n, oriented as unstarred arrows."""
    if n < 4:
        raise ValueError("affine D_n needs n >= 4")
    edges = [(0, 2), (1, 2)]
    edges += [(k, k + 1) for k in range(2, n - 2)]
    edges += [(n - 2, n - 1), (n - 2, n)]
    return edges


def affine_dn(n: int) -> Quiver:
    """Affine D_n with vertex 2 joined to 0 and 1, a chain 2..n-2, and n-2 joined to n-1, n.

    Arrows are named x_{i,j} for i -> j; the reversed arrows of the double are
    the x_{j,i}, see ``dn_star_names``.
    """
    vs = tuple(str(i) for i in range(n + 1))
    arrows = tuple(Arrow(f"x_{{{i},{j}}}", str(i), str(j)) for i, j in dn_edges(n))
    return Quiver(vs, arrows)


def dn_star_names(n: int) -> Dict[str, str]:
    return {f"x_{{{i},{j}}}": f"x_{{{j},{i}}}" for i, j in dn_edges(n)}


def dn_delta(n: int) -> Tuple[int, ...]:
    """The minimal imaginary root of affine D_n."""
    return tuple(2 if 2 <= i <= n - 2 else 1 for i in range(n + 1))


def named_quiver(name: str) -> Quiver:
    name = name.lower()
    if name == "jordan":
        return jordan()
    if name == "kronecker":
        return kronecker()
    if name.startswith("a") and name[1:].isdigit():
        return linear_quiver(int(name[1:]))
    if name.startswith("d") and name[1:].isdigit():
        return affine_dn(int(name[1:]))
    raise KeyError(name)


def corpus() -> Dict[str, Quiver]:
    return {"jordan": jordan(), "A2": linear_quiver(2), "A3": linear_quiver(3),
            "kronecker": kronecker(), "D4": affine_dn(4)}
