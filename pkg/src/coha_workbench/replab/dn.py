"""Numerical check of a Kleinian-type relation among trace functions on the
zero fibre of the moment map for affine D_n at its minimal imaginary root.

Sample points: random complex unstarred arrows x, then a random vector in the
kernel of the linear map y -> mu(x, y), kept only when that map has the
generic rank dim gl_delta - 1 (the trace of mu vanishes identically).
"""
from typing import Callable, Dict, List, Optional

import numpy as np

from ..quiver import affine_dn, build_double, dn_delta, dn_star_names
from ..reports import CheckReport
from .counting import arrow_shapes, moment_operator, split
from .reps import moment_map_arrays

RTOL = 1e-6
RANK_TOL = 1e-9


class DegenerateSampling(RuntimeError):
    pass


def _x(i, j):
    return f"x_{{{i},{j}}}"


def _chain(n):
    """The arrow word 0 -> 2 -> 3 -> ... -> n-2."""
    return [_x(0, 2)] + [_x(k, k + 1) for k in range(2, n - 2)]


def _back(n):
    return [_x(k + 1, k) for k in range(n - 3, 1, -1)] + [_x(2, 0)]


def trace_word(D, mats: Dict[str, np.ndarray], word: List[str]) -> complex:
    """Trace of a cycle composed left to right (the matrix product is reversed)."""
    m = None
    for a in word:
        m = mats[a] if m is None else mats[a] @ m
    return complex(np.trace(m))


def dn_functions(n: int, D, mats) -> Dict[str, complex]:
    """The trace functions y, x, u, v and z = u - v."""
    left = _chain(n)
    right = _back(n)
    turn1 = [_x(n - 2, n - 1), _x(n - 1, n - 2)]
    turn2 = [_x(n - 2, n), _x(n, n - 2)]
    y = trace_word(D, mats, [_x(2, 0), _x(0, 2)])
    x = trace_word(D, mats, left + turn1 + turn2 + right)
    u = trace_word(D, mats, left + turn1 + right)
    v = trace_word(D, mats, left + turn2 + right)
    return {"y": y, "x": x, "u": u, "v": v, "z": u - v}


def _expected_rank(d):
    return sum(k * k for k in d) - 1


def _cgauss(rng, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def sample_zero_fibre(n: int, rng, sampler: Optional[Callable] = None, scale: float = 1.0):
    """One candidate sample: (matrices, rank of the linear system, accepted?)."""
    Q = affine_dn(n)
    D = build_double(Q, dn_star_names(n))
    d = dn_delta(n)
    unstarred = [a for a, _ in D.star_pairs]
    starred = [s for _, s in D.star_pairs]
    shx = arrow_shapes(D, d, unstarred)
    shy = arrow_shapes(D, d, starred)
    given = sampler(rng) if sampler is not None else None
    if given is None:
        X = {name: _cgauss(rng, shape) for name, shape in shx}
    else:
        X = {name: np.asarray(given[name], dtype=complex) for name, _ in shx}
    L = moment_operator(D, d, {k: v[None] for k, v in X.items()})[0]
    s = np.linalg.svd(L, compute_uv=False)
    smax = s[0] if s.size else 0.0
    rank = int((s > RANK_TOL * smax).sum()) if smax > 0 else 0
    if rank != _expected_rank(d):
        return None, rank, False
    if given is not None and all(name in given for name, _ in shy):
        Y = {name: np.asarray(given[name], dtype=complex) for name, _ in shy}
    else:
        _, _, vh = np.linalg.svd(L)
        ker = vh[rank:].conj()
        coeff = _cgauss(rng, ker.shape[0])
        flat = coeff @ ker
        Y = split(flat[None], shy)
        Y = {k: v[0] for k, v in Y.items()}
    mats = {**X, **Y}
    mats = {k: v * scale for k, v in mats.items()}
    return mats, rank, True


def zero_sampler(n: int) -> Callable:
    """A sampler that always proposes the zero representation."""
    Q = affine_dn(n)
    D = build_double(Q, dn_star_names(n))
    shapes = arrow_shapes(D, dn_delta(n))
    return lambda rng: {name: np.zeros(shape, dtype=complex) for name, shape in shapes}


def dn_singularity_check(n: int = 4, samples: int = 25, seed: int = 0, sampler: Optional[Callable] = None,
                         include_constant: bool = False, scale: float = 1.0,
                         max_attempts: Optional[int] = None) -> CheckReport:
    """Sample the zero fibre and test that the monomials (x^2, y^(n-1), y z^2)
    are numerically linearly dependent across samples."""
    if n < 4:
        raise ValueError("n must be at least 4")
    if samples < 10:
        raise ValueError("need at least 10 samples")
    if seed is None:
        raise ValueError("a seed is required")
    rng = np.random.default_rng(seed)
    Q = affine_dn(n)
    D = build_double(Q, dn_star_names(n))
    d = dn_delta(n)
    max_attempts = max_attempts or 4 * samples
    points, residuals, rejected = [], [], 0
    for _ in range(max_attempts):
        if len(points) == samples:
            break
        mats, rank, ok = sample_zero_fibre(n, rng, sampler, scale)
        if not ok:
            rejected += 1
            continue
        mu = moment_map_arrays(D, d, mats)
        norm = max(np.abs(m).max() for m in mats.values())
        residuals.append(max(float(np.abs(m).max()) for m in mu.values()) / max(norm, 1e-300) ** 2)
        points.append(dn_functions(n, D, mats))
    if not points:
        raise DegenerateSampling(f"no sample reached the generic rank {_expected_rank(d)} in {max_attempts} attempts")
    f = {k: np.array([p[k] for p in points]) for k in points[0]}
    rows = [f["x"] ** 2, f["y"] ** (n - 1), f["y"] * f["z"] ** 2]
    if include_constant:
        rows.append(np.ones(len(points), dtype=complex))
    M = np.vstack(rows)
    s = np.linalg.svd(M, compute_uv=False)
    k = M.shape[0] - 1
    ratio = float(s[k] / s[0]) if s[0] > 0 else 0.0
    rank = int((s > RTOL * s[0]).sum()) if s[0] > 0 else 0
    rep = CheckReport("dn")
    inputs = {"n": n, "samples": len(points), "seed": seed, "include_constant": include_constant}
    rep.add(f"monomials have numerical rank <= {k}", ratio < RTOL, inputs,
            witness={"ratio": ratio, "singular_values": [float(x) for x in s]})
    rep.data.update({
        "ratio": ratio,
        "numerical_rank": rank,
        "singular_values": [float(x) for x in s],
        "rejected": rejected,
        "max_moment_residual": float(max(residuals)),
        "max_abs": {key: float(np.abs(v).max()) for key, v in f.items()},
    })
    return rep
