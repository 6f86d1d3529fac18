"""Reductive pairs, invariant connections and canonical curvature.

A ``K``-invariant connection on a ``G``-structure over ``K/H`` is encoded by
a linear map ``Lambda: k -> g`` stored as its two blocks: the isotropy
homomorphism ``lam: h -> g`` and ``Lambda_m: m -> g``.  Matrices are
row-major ``dim(g) x dim(domain)`` lists of Fractions, with the domain basis
being the basis of ``h`` (resp. ``m``) held by the pair.

Curvature is only computed for canonical connections (``Lambda_m = 0``),
with the sign convention ``Omega(X, Y) = -lam([X, Y]_h)``.  Fatness only
depends on nondegeneracy, which is insensitive to that sign.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .exact import ZERO, combine, identity, inverse, matvec, nullspace, rank as mat_rank, vec, zeros
from .liealg import LieAlgebra
from .subalg import Subalgebra, Subspace, generated_subalgebra, orthogonal_complement, rank, span


class ConnectionError_(ValueError):
    """A map violates the invariant-connection axioms."""


class ReductivityError(ValueError):
    pass


@dataclass(eq=False)
class ReductivePair:
    """``k = h + m`` with ``m`` the B-orthocomplement of ``h`` and ``[h, m] <= m``."""

    k: LieAlgebra
    h: Subalgebra
    m: Subspace

    @cached_property
    def _split(self):
        cols = list(self.h.basis) + list(self.m.basis)
        # row-major matrix whose columns are cols, inverted: coords in h+m basis
        mat = [[c[i] for c in cols] for i in range(self.k.dim)]
        return inverse(mat) if self.k.dim else []

    def split(self, v: Sequence[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
        """Coordinates of ``v`` in the ``h`` basis and in the ``m`` basis."""
        y = matvec(self._split, vec(v))
        return y[: self.h.dim], y[self.h.dim:]

    def h_part(self, v) -> list[Fraction]:
        return self.split(v)[0]

    def m_part(self, v) -> list[Fraction]:
        return self.split(v)[1]


def make_pair(k: LieAlgebra, h: Subalgebra) -> ReductivePair:
    if h.ambient is not k:
        raise ReductivityError("h must be a subalgebra of k")
    m = orthogonal_complement(h)
    pair = ReductivePair(k, h, m)
    for x in h.basis:
        for y in m.basis:
            if any(pair.h_part(k.bracket_coords(x, y))):
                raise ReductivityError("[h, m] is not contained in m")
    return pair


def is_symmetric(p: ReductivePair) -> bool:
    """``[m, m] <= h``."""
    k = p.k
    basis = p.m.basis
    for i, x in enumerate(basis):
        for y in basis[i + 1:]:
            if any(p.m_part(k.bracket_coords(x, y))):
                return False
    return True


def is_maximal_rank(p: ReductivePair) -> bool:
    return rank(p.k) == rank(p.h)


# -- connections ------------------------------------------------------------------


@dataclass(eq=False)
class InvariantConnection:
    pair: ReductivePair
    g: LieAlgebra
    lam: list  # dim g x dim h
    Lambda_m: list  # dim g x dim m

    @property
    def is_canonical(self) -> bool:
        return not any(any(row) for row in self.Lambda_m)

    def Lambda(self, v: Sequence[Fraction]) -> list[Fraction]:
        """``Lambda`` applied to a vector of ``k``."""
        hc, mc = self.pair.split(v)
        out = matvec(self.lam, hc) if self.lam else [ZERO] * self.g.dim
        if self.Lambda_m and mc:
            out = [a + b for a, b in zip(out, matvec(self.Lambda_m, mc))]
        return out

    def lam_of(self, hc: Sequence[Fraction]) -> list[Fraction]:
        return matvec(self.lam, hc) if self.lam else [ZERO] * self.g.dim


def _columns(mat: list, ncols: int) -> list[list[Fraction]]:
    return [[row[j] for row in mat] for j in range(ncols)]


def connection_violations(conn: InvariantConnection) -> list[str]:
    """Empty iff ``lam`` is an injective homomorphism and ``Lambda`` is ``h``-equivariant."""
    pair, g = conn.pair, conn.g
    h = pair.h
    hk = h.own_algebra
    problems = []
    if len(conn.lam) != g.dim or any(len(r) != h.dim for r in conn.lam):
        return [f"lambda must be a {g.dim} x {h.dim} matrix"]
    if len(conn.Lambda_m) != g.dim or any(len(r) != pair.m.dim for r in conn.Lambda_m):
        return [f"Lambda_m must be a {g.dim} x {pair.m.dim} matrix"]
    cols = _columns(conn.lam, h.dim)
    if h.dim and mat_rank(cols, g.dim) != h.dim:
        problems.append("lambda is not injective")
    for i in range(h.dim):
        for j in range(i + 1, h.dim):
            lhs = conn.lam_of(hk.bracket_coords(hk.unit(i), hk.unit(j)))
            rhs = g.bracket_coords(cols[i], cols[j])
            if lhs != rhs:
                problems.append(f"lambda is not a homomorphism on basis pair ({i}, {j})")
                return problems
    k = pair.k
    for i, x in enumerate(h.basis):
        lx = cols[i]
        for j in range(k.dim):
            y = k.unit(j)
            if conn.Lambda(k.bracket_coords(x, y)) != g.bracket_coords(lx, conn.Lambda(y)):
                problems.append(f"equivariance fails for h[{i}] and k[{j}]")
                return problems
    return problems


def check_connection(conn: InvariantConnection) -> InvariantConnection:
    problems = connection_violations(conn)
    if problems:
        raise ConnectionError_("; ".join(problems))
    return conn


def lambda_matrix(spec, pair: ReductivePair, g: LieAlgebra) -> list:
    """Resolve ``"identity"``, ``"inclusion"``, a Subalgebra of ``g`` or an explicit matrix."""
    h = pair.h
    if isinstance(spec, str):
        if spec == "identity":
            if g.dim != h.dim:
                raise ConnectionError_("identity lambda needs dim g = dim h")
            return identity(h.dim)
        if spec == "inclusion":
            if g is not pair.k:
                raise ConnectionError_("inclusion lambda needs g = k")
            return h.matrix()
        raise ConnectionError_(f"unknown lambda {spec!r}")
    if isinstance(spec, Subalgebra):
        if spec.ambient is not g or spec.dim != h.dim:
            raise ConnectionError_("lambda subalgebra must live in g with dim h")
        return spec.matrix()
    return [vec(r) for r in spec]


def canonical_connection(pair: ReductivePair, g: LieAlgebra, lam="identity") -> InvariantConnection:
    conn = InvariantConnection(pair, g, lambda_matrix(lam, pair, g), zeros(g.dim, pair.m.dim))
    return check_connection(conn)


def equivariant_maps(pair: ReductivePair, g: LieAlgebra, lam) -> list[list]:
    """Basis of the maps ``Lambda_m: m -> g`` with ``Lambda_m [X, Y] = [lam X, Lambda_m Y]``."""
    lam = lambda_matrix(lam, pair, g)
    k, h, m = pair.k, pair.h, pair.m
    dg, dm = g.dim, m.dim
    nvar = dg * dm  # variable (a, b) = entry Lambda_m[a][b] at a * dm + b
    lcols = _columns(lam, h.dim)
    rows = []
    for i, x in enumerate(h.basis):
        adl = g.ad(lcols[i])
        for b, y in enumerate(m.basis):
            mc = pair.m_part(k.bracket_coords(x, y))
            for a in range(dg):
                row = [ZERO] * nvar
                for t, c in enumerate(mc):
                    if c:
                        row[a * dm + t] += c
                for s in range(dg):
                    if adl[a][s]:
                        row[s * dm + b] -= adl[a][s]
                rows.append(row)
    out = []
    for sol in nullspace(rows, nvar):
        out.append([[sol[a * dm + b] for b in range(dm)] for a in range(dg)])
    return out


def random_equivariant_connection(pair: ReductivePair, g: LieAlgebra, lam, seed: int = 0) -> InvariantConnection:
    rng = random.Random(seed)
    basis = equivariant_maps(pair, g, lam)
    lm = zeros(g.dim, pair.m.dim)
    for b in basis:
        c = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
        lm = [[x + c * y for x, y in zip(r1, r2)] for r1, r2 in zip(lm, b)]
    return check_connection(InvariantConnection(pair, g, lambda_matrix(lam, pair, g), lm))


# -- curvature and holonomy -----------------------------------------------------------


@dataclass(eq=False)
class CurvatureTensor:
    """``omega[i][j]`` is ``Omega(X_i, X_j)`` in ``g`` coordinates, ``X`` the ``m`` basis."""

    g: LieAlgebra
    omega: list

    @property
    def m_dim(self) -> int:
        return len(self.omega)


def curvature(conn: InvariantConnection) -> CurvatureTensor:
    if not conn.is_canonical:
        raise NotImplementedError("curvature is only implemented for canonical connections")
    pair, g = conn.pair, conn.g
    basis = pair.m.basis
    n = len(basis)
    zero = [ZERO] * g.dim
    omega = [[zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            hc = pair.h_part(pair.k.bracket_coords(basis[i], basis[j]))
            val = [-x for x in conn.lam_of(hc)]
            omega[i][j] = val
            omega[j][i] = [-x for x in val]
    return CurvatureTensor(g, omega)


def image_of_lambda(conn: InvariantConnection) -> Subalgebra:
    cols = _columns(conn.lam, conn.pair.h.dim)
    return Subalgebra(conn.g, cols, name=conn.pair.h.name)


def holonomy_algebra(conn: InvariantConnection) -> Subalgebra:
    """Subalgebra of ``g`` generated by the curvature values ``lam([X, Y]_h)``."""
    curv = curvature(conn)
    seeds = [curv.omega[i][j] for i in range(curv.m_dim) for j in range(i + 1, curv.m_dim)]
    return generated_subalgebra(conn.g, seeds)


def project_to_h(conn: InvariantConnection) -> InvariantConnection:
    """``proj_{lam(h)} o Lambda`` as a connection with structure algebra ``lam(h)``."""
    target = image_of_lambda(conn)
    pair = conn.pair
    hdim, mdim = pair.h.dim, pair.m.dim
    lam = identity(hdim)
    lm_cols = []
    for b in range(mdim):
        col = [row[b] for row in conn.Lambda_m]
        lm_cols.append(target.project_coords(col))
    Lambda_m = [[lm_cols[b][a] for b in range(mdim)] for a in range(hdim)]
    projected = InvariantConnection(pair, target.own_algebra, lam, Lambda_m)
    return check_connection(projected)
