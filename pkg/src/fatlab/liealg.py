"""Compact Lie algebras as exact structure constants plus an invariant form.

A :class:`LieAlgebra` stores ``[e_i, e_j] = sum_k c[i][j][k] e_k`` sparsely
and a symmetric matrix ``B``.  Constructors build the structure constants
from a matrix realization (see :mod:`fatlab._matrices`), with ``B`` the real
trace form of the defining representation.  Per type that gives

* ``su(n)``: ``B(S_ij, S_ij) = -1/2``; ``su(2)`` basis ``-i/2 sigma_k`` has
  ``B = -1/2 I``.  The Killing form is ``4n`` times ``B``.
* ``so(n)``: ``B(L_ij, L_ij) = -2``; Killing form ``(n - 2)`` times ``B``.
* ``sp(n)``: ``B`` is ``Re tr`` on ``2n x 2n`` complex matrices; Killing form
  ``2(n + 1)`` times ``B``.
* ``u(n)``: as ``su(n)`` plus ``B(Z, Z) = -n/4``; the Killing form is
  degenerate on ``Z`` while ``B`` is not.
* ``t(k)``: ``B = -identity``.
* ``g2``: restriction of the ``so(7)`` form; Killing form ``4`` times ``B``.
"""

from __future__ import annotations

import json
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from importlib import resources
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import _matrices as mx
from .exact import ZERO, frac, inverse, negative_definite


class AlgebraError(ValueError):
    """Unknown algebra kind, bad parameter, or malformed structure data."""


class OwnerMismatch(ValueError):
    """Vectors from different algebras were combined."""


class LieAlgebra:
    """Finite-dimensional real Lie algebra with exact structure constants.

    ``structure`` is either a dense ``dim x dim x dim`` nested sequence or a
    sparse mapping ``{(i, j): {k: value}}``.  Nothing is validated here so
    that deliberately broken data can be audited with :func:`check_algebra`.
    """

    def __init__(
        self,
        structure,
        form: Sequence[Sequence],
        *,
        labels: Sequence[str] | None = None,
        name: str | None = None,
        rep: Sequence[dict] | None = None,
        rep_size: int = 0,
        cartan: Sequence[int] | None = None,
        summands: Sequence[tuple["LieAlgebra", int]] | None = None,
        family: tuple[str, int] | None = None,
    ):
        self.dim = len(form)
        n = self.dim
        br: list[list[dict]] = [[{} for _ in range(n)] for _ in range(n)]
        if isinstance(structure, Mapping):
            for (i, j), row in structure.items():
                br[i][j] = {k: frac(v) for k, v in row.items() if v}
        else:
            for i in range(n):
                for j in range(n):
                    br[i][j] = {k: frac(v) for k, v in enumerate(structure[i][j]) if v}
        self._br = br
        self.B = tuple(tuple(frac(x) for x in row) for row in form)
        self.labels = tuple(labels) if labels is not None else tuple(f"e{i}" for i in range(n))
        self.name = name
        self.rep = tuple(rep) if rep is not None else None
        self.rep_size = rep_size
        self.cartan = tuple(cartan) if cartan is not None else None
        self.summands = tuple(summands) if summands is not None else None
        self.family = family

    def __repr__(self) -> str:
        return f"LieAlgebra({self.name or 'anonymous'}, dim={self.dim})"

    # -- raw coordinate arithmetic -----------------------------------------

    def bracket_coords(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> list[Fraction]:
        out = [ZERO] * self.dim
        xs = [(i, a) for i, a in enumerate(x) if a]
        ys = [(j, b) for j, b in enumerate(y) if b]
        br = self._br
        for i, a in xs:
            row = br[i]
            for j, b in ys:
                ab = a * b
                for k, c in row[j].items():
                    out[k] += ab * c
        return out

    def basis_bracket(self, i: int, j: int) -> dict:
        """Sparse ``[e_i, e_j]`` as ``{k: coefficient}``."""
        return self._br[i][j]

    def form_coords(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> Fraction:
        s = ZERO
        for i, a in enumerate(x):
            if a:
                row = self.B[i]
                for j, b in enumerate(y):
                    if b and row[j]:
                        s += a * row[j] * b
        return s

    def ad(self, x: Sequence[Fraction]) -> list[list[Fraction]]:
        """Matrix of ``ad_x`` acting on coordinate columns."""
        n = self.dim
        out = [[ZERO] * n for _ in range(n)]
        for i, a in enumerate(x):
            if not a:
                continue
            for j in range(n):
                for k, c in self._br[i][j].items():
                    out[k][j] += a * c
        return out

    def unit(self, i: int) -> list[Fraction]:
        e = [ZERO] * self.dim
        e[i] = Fraction(1)
        return e

    # -- views -----------------------------------------------------------------

    @cached_property
    def c(self) -> np.ndarray:
        """Dense structure-constant tensor ``c[i, j, k]`` (object dtype)."""
        n = self.dim
        out = np.full((n, n, n), ZERO, dtype=object)
        for i in range(n):
            for j in range(n):
                for k, v in self._br[i][j].items():
                    out[i, j, k] = v
        return out

    @cached_property
    def gram_inverse(self) -> list[list[Fraction]]:
        return inverse([list(r) for r in self.B]) if self.dim else []

    def basis(self) -> list["Vector"]:
        return [Vector(self.unit(i), self) for i in range(self.dim)]

    def vector(self, coords: Iterable) -> "Vector":
        return Vector(coords, self)

    def with_form(self, factor) -> "LieAlgebra":
        """Same brackets, ``B`` multiplied by a positive rational ``factor``."""
        factor = frac(factor)
        if factor <= 0:
            raise AlgebraError("form rescaling must be positive")
        return LieAlgebra(
            {(i, j): self._br[i][j] for i in range(self.dim) for j in range(self.dim) if self._br[i][j]},
            [[factor * x for x in row] for row in self.B],
            labels=self.labels,
            name=self.name,
            rep=self.rep,
            rep_size=self.rep_size,
            cartan=self.cartan,
            summands=self.summands,
            family=self.family,
        )

    @cached_property
    def rep_gram(self) -> list[list[Fraction]]:
        """``1/2 tr`` Gram matrix of the matrix realization."""
        if self.rep is None:
            raise AlgebraError(f"{self.name} has no matrix realization")
        return [[mx.half_trace(a, b) for b in self.rep] for a in self.rep]

    def sparse_structure(self) -> dict:
        return {
            (i, j): dict(self._br[i][j])
            for i in range(self.dim)
            for j in range(self.dim)
            if self._br[i][j]
        }


@dataclass(frozen=True)
class Vector:
    """Exact coordinates in the basis of ``owner``."""

    coords: tuple
    owner: LieAlgebra

    def __init__(self, coords: Iterable, owner: LieAlgebra):
        coords = tuple(frac(x) for x in coords)
        if len(coords) != owner.dim:
            raise AlgebraError(f"vector of length {len(coords)} in algebra of dim {owner.dim}")
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "owner", owner)

    def _same(self, other: "Vector") -> None:
        if self.owner is not other.owner:
            raise OwnerMismatch("vectors belong to different algebras")

    def __add__(self, other: "Vector") -> "Vector":
        self._same(other)
        return Vector([a + b for a, b in zip(self.coords, other.coords)], self.owner)

    def __sub__(self, other: "Vector") -> "Vector":
        self._same(other)
        return Vector([a - b for a, b in zip(self.coords, other.coords)], self.owner)

    def __neg__(self) -> "Vector":
        return Vector([-a for a in self.coords], self.owner)

    def __mul__(self, s) -> "Vector":
        s = frac(s)
        return Vector([s * a for a in self.coords], self.owner)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, Vector):
            return NotImplemented
        return self.owner is other.owner and self.coords == other.coords

    def __hash__(self) -> int:
        return hash((id(self.owner), self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)


def bracket(x: Vector, y: Vector) -> Vector:
    x._same(y)
    return Vector(x.owner.bracket_coords(x.coords, y.coords), x.owner)


def form_value(x: Vector, y: Vector) -> Fraction:
    x._same(y)
    return x.owner.form_coords(x.coords, y.coords)


# -- construction from matrices ----------------------------------------------


def coordinates_in(mats: Sequence[dict], gram_diag: Sequence[Fraction] | None, gram_inv, m: dict) -> list[Fraction] | None:
    """Exact coordinates of sparse matrix ``m`` in basis ``mats``, or ``None``."""
    proj = [mx.half_trace(m, e) for e in mats]
    if gram_diag is not None:
        coords = [p / g for p, g in zip(proj, gram_diag)]
    else:
        coords = [sum((gi[k] * proj[k] for k in range(len(proj)) if gi[k] and proj[k]), ZERO) for gi in gram_inv]
    if mx.linear_combination(coords, mats) != {k: v for k, v in m.items() if v}:
        return None
    return coords


def from_matrices(
    mats: Sequence[dict],
    *,
    labels=None,
    name=None,
    rep_size=0,
    cartan=None,
    family=None,
) -> LieAlgebra:
    """Structure constants of the span of realified matrices ``mats``.

    ``B`` is ``1/2 tr`` on the realified matrices.  Raises if the span is not
    closed under commutators.
    """
    n = len(mats)
    gram = [[mx.half_trace(a, b) for b in mats] for a in mats]
    diagonal = all(gram[i][j] == 0 for i in range(n) for j in range(n) if i != j)
    gram_diag = [gram[i][i] for i in range(n)] if diagonal else None
    gram_inv = None if diagonal else inverse(gram)
    structure = {}
    for i in range(n):
        for j in range(i + 1, n):
            comm = mx.commutator(mats[i], mats[j])
            if not comm:
                continue
            coords = coordinates_in(mats, gram_diag, gram_inv, comm)
            if coords is None:
                raise AlgebraError(f"matrix span not closed: [{i}, {j}] leaves the span")
            row = {k: v for k, v in enumerate(coords) if v}
            structure[(i, j)] = row
            structure[(j, i)] = {k: -v for k, v in row.items()}
    return LieAlgebra(
        structure,
        gram,
        labels=labels,
        name=name,
        rep=mats,
        rep_size=rep_size,
        cartan=cartan,
        family=family,
    )


# -- g2 ------------------------------------------------------------------------


def compute_g2_basis() -> list[list[Fraction]]:
    """B-orthogonal rational basis of the derivations of the 7-dim cross product.

    Coordinates are in the ``so(7)`` basis ``L_ij``.  This is the regeneration
    routine for ``data/g2_basis.json``.
    """
    from .exact import nullspace

    so7, _ = mx.so_real(7)
    table = mx.cross_table()
    nvar = len(so7)

    def apply(m, a):
        # column a of m as {row: value}
        return {r: v for (r, c), v in m.items() if c == a}

    def cross(u: dict, w: dict) -> dict:
        out: dict = {}
        for a, x in u.items():
            for b, y in w.items():
                if a == b:
                    continue
                s, c = table[(a, b)]
                out[c] = out.get(c, ZERO) + s * x * y
        return out

    # D(a x b) - Da x b - a x Db = 0, linear in the coefficients of D
    rows = []
    for a in range(7):
        for b in range(a + 1, 7):
            s, c = table[(a, b)]
            eq = [[ZERO] * nvar for _ in range(7)]
            for v, m in enumerate(so7):
                lhs = {r: s * x for r, x in apply(m, c).items()}
                t1 = cross(apply(m, a), {b: Fraction(1)})
                t2 = cross({a: Fraction(1)}, apply(m, b))
                for r in range(7):
                    eq[r][v] = lhs.get(r, ZERO) - t1.get(r, ZERO) - t2.get(r, ZERO)
            rows.extend(eq)
    kernel = nullspace(rows, nvar)
    # so(7) form is -2 * identity in these coordinates; Gram-Schmidt with plain dot
    ortho: list[list[Fraction]] = []
    for v in kernel:
        w = list(v)
        for u in ortho:
            uu = sum(x * x for x in u)
            t = sum(x * y for x, y in zip(w, u)) / uu
            w = [x - t * y for x, y in zip(w, u)]
        ortho.append(w)
    return ortho


def _load_g2_basis() -> list[list[Fraction]]:
    text = resources.files("fatlab.data").joinpath("g2_basis.json").read_text()
    data = json.loads(text)
    return [[Fraction(x) for x in row] for row in data["basis"]]


def _g2() -> LieAlgebra:
    coords = _load_g2_basis()
    so7, _ = mx.so_real(7)
    mats = [mx.realify_real(mx.linear_combination(v, so7)) for v in coords]
    return from_matrices(
        mats,
        labels=[f"G{i}" for i in range(len(mats))],
        name="g2",
        rep_size=14,
        family=("g2", 2),
    )


# -- public constructors ---------------------------------------------------------


_MINIMUM = {"su": 2, "so": 3, "sp": 1, "u": 1, "t": 0}


def make_algebra(kind: str, params: Sequence = ()) -> LieAlgebra:
    """Build ``su(n)``, ``so(n)``, ``sp(n)``, ``u(n)``, ``t(k)``, ``g2`` or a direct sum.

    For ``kind="direct_sum"`` the params are the summand algebras.
    """
    kind = kind.lower().strip()
    params = list(params)
    if kind in ("direct_sum", "sum"):
        return direct_sum(*params)
    if kind == "g2":
        if params:
            raise AlgebraError("g2 takes no parameters")
        return _g2()
    if kind not in _MINIMUM:
        raise AlgebraError(f"unknown algebra kind {kind!r}")
    if len(params) != 1 or not isinstance(params[0], int) or isinstance(params[0], bool):
        raise AlgebraError(f"{kind} takes exactly one integer parameter")
    n = params[0]
    if n < _MINIMUM[kind]:
        raise AlgebraError(f"{kind}({n}) out of range: need n >= {_MINIMUM[kind]}")
    if kind == "su":
        mats, labels, cartan, size = mx.su_basis(n)
        family = ("su", n)
    elif kind == "u":
        mats, labels, cartan, size = mx.u_basis(n)
        family = ("u", n)
    elif kind == "so":
        mats, labels, cartan, size = mx.so_basis(n)
        family = ("so", n)
    elif kind == "sp":
        mats, labels, cartan, size = mx.sp_basis(n)
        family = ("sp", n)
    else:
        mats, labels, cartan, size = mx.torus_basis(n)
        family = ("t", n)
        return LieAlgebra(
            {},
            [[-1 if i == j else 0 for j in range(n)] for i in range(n)],
            labels=labels,
            name=f"t({n})",
            rep=mats,
            rep_size=size,
            cartan=cartan,
            family=family,
        )
    return from_matrices(mats, labels=labels, name=f"{kind}({n})", rep_size=size, cartan=cartan, family=family)


def direct_sum(*algebras: LieAlgebra) -> LieAlgebra:
    """Block direct sum; cross brackets vanish and ``B`` is block diagonal."""
    dim = sum(a.dim for a in algebras)
    structure = {}
    form = [[ZERO] * dim for _ in range(dim)]
    labels: list[str] = []
    rep: list[dict] | None = [] if all(a.rep is not None for a in algebras) else None
    cartan: list[int] | None = [] if all(a.cartan is not None for a in algebras) else None
    summands = []
    offset = 0
    rep_offset = 0
    for idx, a in enumerate(algebras):
        summands.append((a, offset))
        for (i, j), row in a.sparse_structure().items():
            structure[(i + offset, j + offset)] = {k + offset: v for k, v in row.items()}
        for i in range(a.dim):
            for j in range(a.dim):
                form[i + offset][j + offset] = a.B[i][j]
        labels.extend(f"{lab}.{idx}" for lab in a.labels)
        if rep is not None:
            rep.extend(mx.shift(m, rep_offset) for m in a.rep)
            rep_offset += a.rep_size
        if cartan is not None:
            cartan.extend(c + offset for c in a.cartan)
        offset += a.dim
    name = "+".join(a.name or "?" for a in algebras) if algebras else "t(0)"
    return LieAlgebra(
        structure,
        form,
        labels=labels,
        name=name,
        rep=rep,
        rep_size=rep_offset,
        cartan=cartan,
        summands=summands,
    )


_TERM = re.compile(r"^\s*(su|so|sp|u|t)\s*\(\s*(\d+)\s*\)\s*$|^\s*(g2)\s*$", re.IGNORECASE)


def parse_algebra(text: str) -> LieAlgebra:
    """Build an algebra from a tag such as ``"su(3)+t(1)"`` or ``"g2"``."""
    terms = [t for t in re.split(r"\+|⊕", text)]
    algs = []
    for t in terms:
        m = _TERM.match(t)
        if not m:
            raise AlgebraError(f"cannot parse algebra term {t!r}")
        if m.group(3):
            algs.append(make_algebra("g2"))
        else:
            algs.append(make_algebra(m.group(1).lower(), [int(m.group(2))]))
    return algs[0] if len(algs) == 1 else direct_sum(*algs)


def symbolic_rank(name: str | None) -> int | None:
    """Rank read off a name tag, or ``None`` when the tag is unknown."""
    if not name:
        return None
    total = 0
    for t in re.split(r"\+|⊕", name):
        m = _TERM.match(t)
        if not m:
            return None
        if m.group(3):
            total += 2
            continue
        kind, n = m.group(1).lower(), int(m.group(2))
        total += {"su": n - 1, "so": n // 2, "sp": n, "u": n, "t": n}[kind]
    return total


# -- audit -------------------------------------------------------------------------


@dataclass(frozen=True)
class AlgebraAudit:
    """Outcome of :func:`check_algebra`; ``identity``/``indices`` name the first failure."""

    ok: bool
    dim: int
    identity: str | None = None
    indices: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok


def check_algebra(g: LieAlgebra) -> AlgebraAudit:
    """Exact audit of antisymmetry, Jacobi, symmetry/definiteness of B and invariance."""
    n = g.dim
    br = g._br

    def fail(identity, idx):
        return AlgebraAudit(False, n, identity, idx)

    for i in range(n):
        for j in range(i, n):
            a, b = br[i][j], br[j][i]
            for k in set(a) | set(b):
                if a.get(k, ZERO) != -b.get(k, ZERO):
                    return fail("antisymmetry", (i, j, k))

    def br_vec(x: dict, j: int) -> dict:
        out: dict = {}
        for m, v in x.items():
            for l, c in br[m][j].items():
                out[l] = out.get(l, ZERO) + v * c
        return out

    for i in range(n):
        for j in range(i + 1, n):
            ij = br[i][j]
            for k in range(j + 1, n):
                total = br_vec(ij, k)
                for l, v in br_vec(br[j][k], i).items():
                    total[l] = total.get(l, ZERO) + v
                for l, v in br_vec(br[k][i], j).items():
                    total[l] = total.get(l, ZERO) + v
                bad = next((l for l, v in sorted(total.items()) if v), None)
                if bad is not None:
                    return fail("jacobi", (i, j, k, bad))

    B = g.B
    for i in range(n):
        for j in range(i + 1, n):
            if B[i][j] != B[j][i]:
                return fail("form-symmetry", (i, j))
    if not negative_definite([list(r) for r in B]):
        return fail("form-definiteness", ())

    # beta[i][j][k] = B([e_i, e_j], e_k); need beta_ijk + beta_ikj = 0
    for i in range(n):
        rows = []
        for j in range(n):
            acc = [ZERO] * n
            for m, v in br[i][j].items():
                bm = B[m]
                for k in range(n):
                    if bm[k]:
                        acc[k] += v * bm[k]
            rows.append(acc)
        for j in range(n):
            for k in range(j, n):
                if rows[j][k] + rows[k][j]:
                    return fail("invariance", (i, j, k))
    return AlgebraAudit(True, n)


def random_direct_sum(rng: random.Random, max_summands: int = 3) -> LieAlgebra:
    """A small pseudorandom direct sum of classical pieces (for audits)."""
    pool = [("su", 2), ("su", 3), ("so", 3), ("so", 4), ("so", 5), ("sp", 1), ("sp", 2), ("u", 2), ("t", 1), ("t", 2)]
    picks = [pool[rng.randrange(len(pool))] for _ in range(rng.randint(2, max_summands))]
    return direct_sum(*(make_algebra(k, [n]) for k, n in picks))
