"""Subspaces, subalgebras and embeddings inside a fixed ambient algebra.

Subspaces are stored as tuples of exact column vectors in ambient
coordinates.  Orthogonality always refers to the ambient invariant form.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from . import _matrices as mx
from .exact import ZERO, combine, frac, inverse, matmul, matvec, nullspace, rank as mat_rank, rref, vec
from .liealg import AlgebraError, LieAlgebra, coordinates_in, symbolic_rank


class SubalgebraError(ValueError):
    pass


class ClosureError(SubalgebraError):
    """Span is not closed under the bracket; ``witness`` is the offending pair."""

    def __init__(self, witness: tuple[int, int]):
        super().__init__(f"span not closed under bracket: witness pair {witness}")
        self.witness = witness


class EmbeddingError(SubalgebraError):
    pass


class RankDisagreement(AssertionError):
    pass


class Subspace:
    """Linearly independent columns spanning a subspace of ``ambient``."""

    def __init__(self, ambient: LieAlgebra, vectors: Sequence[Sequence]):
        self.ambient = ambient
        cols = tuple(tuple(frac(x) for x in v) for v in vectors)
        for v in cols:
            if len(v) != ambient.dim:
                raise SubalgebraError("vector length does not match ambient dimension")
        if mat_rank(cols, ambient.dim) != len(cols):
            raise SubalgebraError("basis vectors are linearly dependent")
        self.basis = cols

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __repr__(self) -> str:
        return f"{type(self).__name__}(dim={self.dim} in {self.ambient.name or 'anonymous'})"

    @cached_property
    def _solver(self):
        # rows P of the basis matrix form an invertible block
        k = self.dim
        if k == 0:
            return [], []
        _, pivots = rref(self.basis, self.ambient.dim)
        block = [[self.basis[j][p] for j in range(k)] for p in pivots]
        return pivots, inverse(block)

    def coords(self, v: Sequence[Fraction]) -> list[Fraction] | None:
        """Coordinates of ``v`` in this basis, or ``None`` if ``v`` is outside the span."""
        v = [frac(x) for x in v]
        if self.dim == 0:
            return [] if not any(v) else None
        pivots, inv = self._solver
        y = matvec(inv, [v[p] for p in pivots])
        if combine(y, self.basis, self.ambient.dim) != v:
            return None
        return y

    def contains(self, v) -> bool:
        return self.coords(v) is not None

    def issubspace(self, other: "Subspace") -> bool:
        return all(other.contains(v) for v in self.basis)

    def echelon(self) -> tuple:
        """Reduced echelon form of the span (canonical, for comparisons)."""
        r, _ = rref(self.basis, self.ambient.dim)
        return tuple(tuple(row) for row in r)

    def same_span(self, other: "Subspace") -> bool:
        return self.ambient is other.ambient and self.echelon() == other.echelon()

    def matrix(self) -> list[list[Fraction]]:
        """``dim(ambient) x dim`` inclusion matrix (row-major)."""
        return [[v[i] for v in self.basis] for i in range(self.ambient.dim)]

    def vector(self, coords: Sequence) -> list[Fraction]:
        return combine(vec(coords), self.basis, self.ambient.dim)

    @cached_property
    def projector(self) -> list[list[Fraction]]:
        """B-orthogonal projection onto this subspace, as ``dim x dim(ambient)`` coordinates map."""
        k = self.dim
        if k == 0:
            return []
        g = self.ambient
        gram = [[g.form_coords(a, b) for b in self.basis] for a in self.basis]
        bt = [[g.form_coords(a, g.unit(i)) for i in range(g.dim)] for a in self.basis]
        return matmul(inverse(gram), bt)

    def project_coords(self, v: Sequence[Fraction]) -> list[Fraction]:
        return matvec(self.projector, v)

    def project(self, v: Sequence[Fraction]) -> list[Fraction]:
        return self.vector(self.project_coords(v))


class Subalgebra(Subspace):
    """Bracket-closed subspace with its intrinsic structure constants.

    ``own_algebra`` carries the structure constants in this basis and the
    pullback of the ambient form; ``source`` is the algebra it was embedded
    from, if any.
    """

    def __init__(self, ambient: LieAlgebra, vectors: Sequence[Sequence], *, source: LieAlgebra | None = None, name: str | None = None):
        super().__init__(ambient, vectors)
        k = self.dim
        structure = {}
        for i in range(k):
            for j in range(i + 1, k):
                b = ambient.bracket_coords(self.basis[i], self.basis[j])
                if not any(b):
                    continue
                y = self.coords(b)
                if y is None:
                    raise ClosureError((i, j))
                row = {t: x for t, x in enumerate(y) if x}
                structure[(i, j)] = row
                structure[(j, i)] = {t: -x for t, x in row.items()}
        form = [[ambient.form_coords(a, b) for b in self.basis] for a in self.basis]
        self.source = source
        if name is None and source is not None:
            name = source.name
        labels = source.labels if source is not None and source.dim == k else None
        self.own_algebra = LieAlgebra(structure, form, labels=labels, name=name, cartan=source.cartan if source is not None else None)

    @property
    def name(self) -> str | None:
        return self.own_algebra.name

    @property
    def inclusion(self) -> list[list[Fraction]]:
        return self.matrix()


# -- constructors ------------------------------------------------------------


def span(ambient: LieAlgebra, vectors: Sequence[Sequence]) -> Subspace:
    """Subspace spanned by arbitrary (possibly dependent) vectors; echelon basis."""
    r, _ = rref([vec(v) for v in vectors], ambient.dim)
    return Subspace(ambient, r)


def span_subalgebra(ambient: LieAlgebra, vectors: Sequence[Sequence], name: str | None = None) -> Subalgebra:
    r, _ = rref([vec(v) for v in vectors], ambient.dim)
    return Subalgebra(ambient, r, name=name)


def generated_subalgebra(ambient: LieAlgebra, vectors: Sequence[Sequence]) -> Subalgebra:
    """Smallest subalgebra containing ``vectors``: breadth-first span growth."""
    current, _ = rref([vec(v) for v in vectors], ambient.dim)
    while True:
        new = list(current)
        for i, a in enumerate(current):
            for b in current[i + 1:]:
                new.append(ambient.bracket_coords(a, b))
        grown, _ = rref(new, ambient.dim)
        if len(grown) == len(current):
            return Subalgebra(ambient, grown)
        current = grown


def full(g: LieAlgebra) -> Subalgebra:
    return Subalgebra(g, [g.unit(i) for i in range(g.dim)], source=g)


def zero(g: LieAlgebra) -> Subalgebra:
    return Subalgebra(g, [], name="0")


def _as_subspace(x) -> Subspace:
    return full(x) if isinstance(x, LieAlgebra) else x


# -- embeddings ----------------------------------------------------------------


def _check_homomorphism(sub: LieAlgebra, s: Subalgebra) -> None:
    if s.own_algebra.sparse_structure() != sub.sparse_structure():
        raise EmbeddingError("image brackets do not reproduce the structure constants of the source")


def embed_columns(sub: LieAlgebra, ambient: LieAlgebra, columns: Sequence[Sequence]) -> Subalgebra:
    """Subalgebra with prescribed images of the basis of ``sub``; homomorphism checked."""
    if len(columns) != sub.dim:
        raise EmbeddingError(f"need {sub.dim} image columns, got {len(columns)}")
    s = Subalgebra(ambient, columns, source=sub)
    _check_homomorphism(sub, s)
    return s


def rep_coordinates(ambient: LieAlgebra, m: dict) -> list[Fraction]:
    if ambient.rep is None:
        raise EmbeddingError(f"{ambient.name} has no matrix realization")
    # trace Gram of the realization, which survives a rescaled ``B``
    gram = ambient.rep_gram
    n = ambient.dim
    diagonal = all(gram[i][j] == 0 for i in range(n) for j in range(n) if i != j)
    coords = coordinates_in(
        ambient.rep,
        [gram[i][i] for i in range(n)] if diagonal else None,
        None if diagonal else inverse(gram),
        m,
    )
    if coords is None:
        raise EmbeddingError(f"matrix is not an element of {ambient.name}")
    return coords


def embed_images(sub: LieAlgebra, ambient: LieAlgebra, images: Sequence[dict]) -> Subalgebra:
    """Embed ``sub`` by sending its basis to the realified matrices ``images``."""
    return embed_columns(sub, ambient, [rep_coordinates(ambient, m) for m in images])


def _need_rep(a: LieAlgebra) -> None:
    if a.rep is None:
        raise EmbeddingError(f"{a.name} has no matrix realization")


def embed(kind: str, sub: LieAlgebra, ambient: LieAlgebra, matrix=None, elements=None) -> Subalgebra:
    """Named embeddings of ``sub`` into ``ambient``.

    ``block_upper_left``
        realization of ``sub`` placed in the upper-left corner.
    ``vector_so_in_so`` / ``defining_sp_in_su``
        the same, with the families checked (``so(n) < so(m)``,
        ``sp(n) < su(2n)``).
    ``diagonal_torus``
        ``t(k)`` onto the first ``k`` Cartan basis elements of ``ambient``
        (or onto ``elements``, a list of basis indices).
    ``highest_root_su2``
        ``su(2)`` on the coordinates ``0`` and ``n-1`` of ``su(n)``.
    ``s_u_block``
        ``su(p) + t(1)`` into ``su(p+1)`` as ``s(u(p) x u(1))``.
    ``realify``
        complex realization of ``sub`` read as a real one: ``su(n)``,
        ``u(n)`` into ``so(2n)``; ``sp(n)`` into ``so(4n)``.
    ``custom``
        ``matrix`` is the ``dim(ambient) x dim(sub)`` inclusion matrix.
    """
    kind = kind.lower()
    if kind == "custom":
        if matrix is None:
            raise EmbeddingError("custom embedding needs an inclusion matrix")
        rows = [vec(r) for r in matrix]
        cols = [[rows[i][j] for i in range(len(rows))] for j in range(len(rows[0]) if rows else 0)]
        if sub is None:
            return Subalgebra(ambient, cols)
        return embed_columns(sub, ambient, cols)
    if kind == "diagonal_torus":
        if sub.family is None or sub.family[0] != "t":
            raise EmbeddingError("diagonal_torus embeds t(k)")
        idx = list(elements) if elements is not None else list((ambient.cartan or ())[: sub.dim])
        if len(idx) != sub.dim:
            raise EmbeddingError(f"{ambient.name} has no {sub.dim} Cartan elements")
        return embed_columns(sub, ambient, [ambient.unit(i) for i in idx])
    _need_rep(sub)
    _need_rep(ambient)
    if kind in ("block_upper_left", "vector_so_in_so", "defining_sp_in_su"):
        if kind == "vector_so_in_so" and not (
            sub.family and ambient.family and sub.family[0] == ambient.family[0] == "so" and sub.family[1] < ambient.family[1]
        ):
            raise EmbeddingError("vector_so_in_so needs so(n) inside so(m), n < m")
        if kind == "defining_sp_in_su" and not (
            sub.family and ambient.family and sub.family[0] == "sp" and ambient.family == ("su", 2 * sub.family[1])
        ):
            raise EmbeddingError("defining_sp_in_su needs sp(n) inside su(2n)")
        if sub.rep_size > ambient.rep_size:
            raise EmbeddingError(f"{sub.name} does not fit inside {ambient.name}")
        return embed_images(sub, ambient, sub.rep)
    if kind == "highest_root_su2":
        if sub.family != ("su", 2) or not ambient.family or ambient.family[0] != "su":
            raise EmbeddingError("highest_root_su2 embeds su(2) into su(n)")
        n = ambient.family[1]
        h = mx.HALF
        images = [
            mx.realify({(0, n - 1): (0, -h), (n - 1, 0): (0, -h)}),
            mx.realify({(0, n - 1): (-h, 0), (n - 1, 0): (h, 0)}),
            mx.realify({(0, 0): (0, -h), (n - 1, n - 1): (0, h)}),
        ]
        return embed_images(sub, ambient, images)
    if kind == "s_u_block":
        parts = sub.summands
        if (
            not parts
            or len(parts) != 2
            or parts[0][0].family is None
            or parts[0][0].family[0] != "su"
            or parts[1][0].family != ("t", 1)
        ):
            raise EmbeddingError("s_u_block embeds su(p)+t(1)")
        p = parts[0][0].family[1]
        if ambient.family != ("su", p + 1):
            raise EmbeddingError(f"s_u_block needs ambient su({p + 1})")
        torus = mx.realify({**{(t, t): (0, -mx.HALF) for t in range(p)}, (p, p): (0, Fraction(p, 2))})
        return embed_images(sub, ambient, list(parts[0][0].rep) + [torus])
    if kind == "realify":
        if not ambient.family or ambient.family[0] != "so":
            raise EmbeddingError("realify targets so(N)")
        if ambient.rep_size != 2 * sub.rep_size:
            raise EmbeddingError(f"{sub.name} realified has size {sub.rep_size}, {ambient.name} needs {ambient.rep_size // 2}")
        return embed_images(sub, ambient, [mx.realify_real(m) for m in sub.rep])
    raise EmbeddingError(f"unknown embedding kind {kind!r}")


# -- subspace calculus -----------------------------------------------------------


def orthogonal_complement(s, within: Subspace | None = None) -> Subspace:
    """B-orthocomplement of ``s``, taken inside ``within`` (default: the ambient)."""
    s = _as_subspace(s)
    g = s.ambient
    scope = within.basis if within is not None else [g.unit(i) for i in range(g.dim)]
    rows = [[g.form_coords(a, w) for w in scope] for a in s.basis]
    ker = nullspace(rows, len(scope))
    return Subspace(g, [combine(y, scope, g.dim) for y in ker])


def sum_space(a, b) -> Subspace:
    a, b = _as_subspace(a), _as_subspace(b)
    return span(a.ambient, list(a.basis) + list(b.basis))


def intersect(a, b) -> Subspace:
    """Exact intersection; a :class:`Subalgebra` when both inputs are."""
    a, b = _as_subspace(a), _as_subspace(b)
    if a.ambient is not b.ambient:
        raise SubalgebraError("intersection needs a shared ambient")
    g = a.ambient
    ka, kb = a.dim, b.dim
    rows = [[a.basis[j][i] for j in range(ka)] + [-b.basis[j][i] for j in range(kb)] for i in range(g.dim)]
    ker = nullspace(rows, ka + kb)
    vectors = [combine(y[:ka], a.basis, g.dim) for y in ker]
    r, _ = rref(vectors, g.dim)
    if isinstance(a, Subalgebra) and isinstance(b, Subalgebra):
        return Subalgebra(g, r)
    return Subspace(g, r)


def is_factorization(g: LieAlgebra, h: Subspace, l: Subspace) -> bool:
    """``g = h + l`` with both summands proper."""
    if h.ambient is not g or l.ambient is not g:
        raise SubalgebraError("factorization needs subalgebras of g")
    return sum_space(h, l).dim == g.dim and h.dim < g.dim and l.dim < g.dim


def bracket_span(a, b) -> Subspace:
    a, b = _as_subspace(a), _as_subspace(b)
    g = a.ambient
    return span(g, [g.bracket_coords(x, y) for x in a.basis for y in b.basis])


def is_ideal(h, n) -> bool:
    """``[h, n] <= n``."""
    h, n = _as_subspace(h), _as_subspace(n)
    g = h.ambient
    return all(n.contains(g.bracket_coords(x, y)) for x in h.basis for y in n.basis)


def maximal_common_ideal(h, s) -> Subalgebra:
    """Largest ideal of ``h`` contained in ``s``.

    Decreasing fixpoint ``I_0 = s``, ``I_{t+1} = {x in I_t : [h, x] <= I_t}``;
    membership in ``I_t`` is tested against its B-orthocomplement.
    """
    h, s = _as_subspace(h), _as_subspace(s)
    g = h.ambient
    current = list(s.basis)
    while True:
        if not current:
            return Subalgebra(g, [])
        cur = Subspace(g, current)
        perp = orthogonal_complement(cur)
        images = [[g.bracket_coords(x, v) for v in current] for x in h.basis]
        rows = []
        for img in images:
            for w in perp.basis:
                rows.append([g.form_coords(w, v) for v in img])
        ker = nullspace(rows, len(current))
        if len(ker) == len(current):
            return Subalgebra(g, current)
        nxt = [combine(y, current, g.dim) for y in ker]
        current, _ = rref(nxt, g.dim)


def complement_ideal(h, n) -> Subalgebra:
    """B-orthocomplement of the ideal ``n`` inside ``h``; ``h = result + n`` as algebras."""
    h, n = _as_subspace(h), _as_subspace(n)
    if not n.issubspace(h) or not is_ideal(h, n):
        raise SubalgebraError("n is not an ideal of h")
    comp = orthogonal_complement(n, within=h)
    out = Subalgebra(h.ambient, comp.basis)
    g = h.ambient
    if not all(not any(g.bracket_coords(x, y)) for x in out.basis for y in n.basis):
        raise SubalgebraError("complement does not commute with the ideal")
    return out


# -- rank ---------------------------------------------------------------------------

RANK_SEED = 20240101
RANK_SAMPLES = 5


def generic_rank(g: LieAlgebra, samples: int = RANK_SAMPLES, seed: int = RANK_SEED) -> int:
    """Minimum of ``dim ker ad_x`` over pseudorandom integer vectors ``x``."""
    if g.dim == 0:
        return 0
    rng = random.Random(seed)
    best = g.dim
    for _ in range(samples):
        x = [Fraction(rng.randint(-7, 7)) for _ in range(g.dim)]
        best = min(best, g.dim - mat_rank(g.ad(x), g.dim))
    return best


def rank(g) -> int:
    """Rank, cross-checked against the name tag when there is one."""
    alg = g.own_algebra if isinstance(g, Subalgebra) else g
    numeric = generic_rank(alg)
    symbolic = symbolic_rank(alg.name)
    if symbolic is not None and symbolic != numeric:
        raise RankDisagreement(f"rank of {alg.name}: table says {symbolic}, generic element gives {numeric}")
    return numeric


def centralizer(g: LieAlgebra, x: Sequence[Fraction]) -> Subalgebra:
    return Subalgebra(g, nullspace(g.ad(vec(x)), g.dim))


def cartan_subalgebra(g: LieAlgebra, samples: int = RANK_SAMPLES, seed: int = RANK_SEED) -> Subalgebra:
    """Centralizer of the most regular pseudorandom element (a maximal torus when compact)."""
    rng = random.Random(seed)
    best = None
    for _ in range(max(samples, 1)):
        x = [Fraction(rng.randint(-7, 7)) for _ in range(g.dim)]
        k = nullspace(g.ad(x), g.dim)
        if best is None or len(k) < len(best):
            best = k
    return Subalgebra(g, best or [])
