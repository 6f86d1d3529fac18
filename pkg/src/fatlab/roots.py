"""Numerical root systems and structural type identification.

The maximal torus comes from the exact generic-element centralizer; the
roots are read off in floating point from a simultaneous eigenbasis of
``ad`` on it.  Irreducible components are the connected pieces of the
non-orthogonality graph, each identified by rank, root count and the short
root count.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .liealg import LieAlgebra
from .subalg import Subalgebra, cartan_subalgebra
from .symbols import TypeSum

TOL = 1e-7


class IdentificationError(RuntimeError):
    pass


@dataclass
class RootSystem:
    roots: np.ndarray  # (N, r) values of the roots on the torus basis
    gram: np.ndarray  # positive-definite form on the torus (minus B)
    rank: int

    def inner(self, a, b) -> float:
        return float(a @ np.linalg.solve(self.gram, b))


def _float(m) -> np.ndarray:
    return np.array([[float(x) for x in row] for row in m], dtype=float)


def root_system(g: LieAlgebra, seed: int = 7) -> RootSystem:
    t = cartan_subalgebra(g)
    r = t.dim
    if g.dim == 0:
        return RootSystem(np.zeros((0, 0)), np.zeros((0, 0)), 0)
    ads = [_float(g.ad(v)) for v in t.basis]
    gram = -_float([[g.form_coords(a, b) for b in t.basis] for a in t.basis])
    rng = np.random.default_rng(seed)
    w = rng.normal(size=r)
    m = sum(wi * a for wi, a in zip(w, ads)) if r else np.zeros((g.dim, g.dim))
    vals, vecs = np.linalg.eig(m)
    scale = max(1.0, float(np.max(np.abs(vals)))) if len(vals) else 1.0
    roots = []
    for k in range(len(vals)):
        if abs(vals[k]) <= TOL * scale:
            continue
        v = vecs[:, k]
        nv = np.vdot(v, v)
        roots.append([(np.vdot(v, a @ v) / nv).imag for a in ads])
    roots_arr = np.array(roots, dtype=float).reshape(len(roots), r)
    if len(roots) != g.dim - r:
        raise IdentificationError(f"found {len(roots)} roots, expected {g.dim - r}")
    return RootSystem(roots_arr, gram, r)


def _components(rs: RootSystem) -> list[list[int]]:
    n = len(rs.roots)
    if n == 0:
        return []
    ginv = np.linalg.inv(rs.gram)
    ip = rs.roots @ ginv @ rs.roots.T
    scale = float(np.max(np.abs(np.diag(ip))))
    adj = np.abs(ip) > TOL * 1e2 * scale
    seen = [False] * n
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        stack, comp = [s], []
        seen[s] = True
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in np.nonzero(adj[i])[0]:
                if not seen[j]:
                    seen[j] = True
                    stack.append(int(j))
        comps.append(sorted(comp))
    return comps


def _identify_component(sq_lengths: np.ndarray, rank: int) -> tuple[str, int]:
    n = len(sq_lengths)
    lo = float(sq_lengths.min())
    ratio = float(sq_lengths.max()) / lo
    short = int(np.sum(np.abs(sq_lengths - lo) <= 1e-6 * lo))
    r = rank
    if abs(ratio - 1) < 1e-6:
        if n == r * (r + 1):
            return ("A", r)
        if r >= 4 and n == 2 * r * (r - 1):
            return ("D", r)
        if (r, n) in ((6, 72), (7, 126), (8, 240)):
            return ("E", r)
    elif abs(ratio - 2) < 1e-6:
        if r == 4 and n == 48 and short == 24:
            return ("F", 4)
        if n == 2 * r * r:
            if short == 2 * r:
                return ("B", r)
            if short == 2 * r * (r - 1):
                return ("C", r)
    elif abs(ratio - 3) < 1e-6 and r == 2 and n == 12:
        return ("G", 2)
    raise IdentificationError(f"unrecognised root system: rank {r}, {n} roots, length ratio {ratio:.4f}")


def identify(g) -> TypeSum:
    """Structural type (simple summands + torus) of an algebra or subalgebra."""
    alg = g.own_algebra if isinstance(g, Subalgebra) else g
    rs = root_system(alg)
    if rs.rank == 0:
        return TypeSum()
    ginv = np.linalg.inv(rs.gram)
    terms = []
    used = 0
    for comp in _components(rs):
        roots = rs.roots[comp]
        r = int(np.linalg.matrix_rank(roots, tol=1e-6 * max(1.0, float(np.abs(roots).max()))))
        sq = np.einsum("ij,jk,ik->i", roots, ginv, roots)
        terms.append(_identify_component(sq, r))
        used += r
    return TypeSum.build(terms, rs.rank - used)
