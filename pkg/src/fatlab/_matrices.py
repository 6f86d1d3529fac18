"""Sparse matrix realizations of the classical compact algebras.

Every algebra is carried by real matrices: complex ``N x N`` matrices are
realified to ``2N x 2N`` by ``a + ib -> [[a, -b], [b, a]]`` on each entry, so
the invariant form is always ``B(X, Y) = 1/2 tr(XY)`` on the realified
matrices, which equals ``Re tr(XY)`` on the complex ones.

Basis conventions (complex, 0-based indices, ``i < j``):

* ``su(n)``: ``S_ij = -i/2 (E_ij + E_ji)``, ``A_ij = -1/2 (E_ij - E_ji)``
  in lexicographic pair order, then ``D_k = -i/2 diag(1,..,1,-k,0,..)`` for
  ``k = 1..n-1``.  For ``n = 2`` this is ``e_k = -i/2 sigma_k``.
* ``u(n)``: the ``su(n)`` basis followed by ``Z = -i/2 I``.
* ``so(n)``: ``L_ij = E_ij - E_ji``.
* ``sp(n)``: ``2n x 2n`` complex matrices ``X`` with ``X^T J + J X = 0``,
  ``J = [[0, I], [-I, 0]]``: first ``diag(A, conj(A))`` for ``A`` running over
  ``S_ij, A_ij, H_j = -i/2 E_jj``, then ``[[0, S], [-conj(S), 0]]`` for
  ``S`` over ``-1/2 (E_ij + E_ji), -1/2 E_jj`` and their multiples by ``i``.
* ``t(k)``: ``T_j = i E_jj``, so ``B = -identity``.
"""

from __future__ import annotations

from fractions import Fraction

from .exact import ZERO

HALF = Fraction(1, 2)

Sparse = dict  # {(row, col): Fraction}


def realify(entries: dict) -> Sparse:
    """Realify a complex sparse matrix ``{(r, c): (re, im)}``."""
    out: Sparse = {}
    for (r, c), (a, b) in entries.items():
        a, b = Fraction(a), Fraction(b)
        if a:
            out[(2 * r, 2 * c)] = a
            out[(2 * r + 1, 2 * c + 1)] = a
        if b:
            out[(2 * r, 2 * c + 1)] = -b
            out[(2 * r + 1, 2 * c)] = b
    return out


def realify_real(m: Sparse) -> Sparse:
    """Treat a real matrix as complex with zero imaginary part and realify."""
    return realify({k: (v, 0) for k, v in m.items()})


def mul(a: Sparse, b: Sparse) -> Sparse:
    rows: dict[int, list] = {}
    for (r, c), v in b.items():
        rows.setdefault(r, []).append((c, v))
    out: Sparse = {}
    for (r, t), v in a.items():
        for c, w in rows.get(t, ()):
            key = (r, c)
            s = out.get(key, ZERO) + v * w
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return out


def add(a: Sparse, b: Sparse, scale=1) -> Sparse:
    out = dict(a)
    for k, v in b.items():
        s = out.get(k, ZERO) + scale * v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def scale(a: Sparse, s) -> Sparse:
    if not s:
        return {}
    return {k: s * v for k, v in a.items()}


def commutator(a: Sparse, b: Sparse) -> Sparse:
    return add(mul(a, b), mul(b, a), -1)


def half_trace(a: Sparse, b: Sparse) -> Fraction:
    """``1/2 tr(AB)``, the invariant form on realified matrices."""
    s = ZERO
    for (r, c), v in a.items():
        w = b.get((c, r))
        if w:
            s += v * w
    return s * HALF


def shift(a: Sparse, offset: int) -> Sparse:
    return {(r + offset, c + offset): v for (r, c), v in a.items()}


def transpose(a: Sparse) -> Sparse:
    return {(c, r): v for (r, c), v in a.items()}


def linear_combination(coeffs, mats) -> Sparse:
    out: Sparse = {}
    for c, m in zip(coeffs, mats):
        if c:
            out = add(out, m, c)
    return out


# -- classical bases ---------------------------------------------------------


def _su_complex(n: int):
    mats, labels = [], []
    for i in range(n):
        for j in range(i + 1, n):
            mats.append({(i, j): (0, -HALF), (j, i): (0, -HALF)})
            labels.append(f"S{i}{j}")
            mats.append({(i, j): (-HALF, 0), (j, i): (HALF, 0)})
            labels.append(f"A{i}{j}")
    cartan = []
    for k in range(1, n):
        d = {(t, t): (0, -HALF) for t in range(k)}
        d[(k, k)] = (0, Fraction(k, 2))
        cartan.append(len(mats))
        mats.append(d)
        labels.append(f"D{k}")
    return mats, labels, cartan


def su_basis(n: int):
    mats, labels, cartan = _su_complex(n)
    return [realify(m) for m in mats], labels, cartan, 2 * n


def u_basis(n: int):
    mats, labels, cartan = _su_complex(n)
    cartan = cartan + [len(mats)]
    mats.append({(t, t): (0, -HALF) for t in range(n)})
    labels.append("Z")
    return [realify(m) for m in mats], labels, cartan, 2 * n


def so_real(n: int):
    mats, labels = [], []
    for i in range(n):
        for j in range(i + 1, n):
            mats.append({(i, j): Fraction(1), (j, i): Fraction(-1)})
            labels.append(f"L{i}{j}")
    return mats, labels


def so_index(n: int, i: int, j: int) -> int:
    """Position of ``L_ij`` (``i < j``) in the ``so(n)`` basis."""
    return i * n - i * (i + 1) // 2 + (j - i - 1)


def so_basis(n: int):
    mats, labels = so_real(n)
    cartan = [so_index(n, 2 * t, 2 * t + 1) for t in range(n // 2)]
    return [realify_real(m) for m in mats], labels, cartan, 2 * n


def sp_complex(n: int):
    mats, labels = [], []

    def diag_block(entries):
        # diag(A, conj(A))
        d = {}
        for (r, c), (a, b) in entries.items():
            d[(r, c)] = (a, b)
            d[(r + n, c + n)] = (a, -b)
        return d

    def off_block(entries):
        # [[0, S], [-conj(S), 0]]
        d = {}
        for (r, c), (a, b) in entries.items():
            d[(r, c + n)] = (a, b)
            d[(r + n, c)] = (-a, b)
        return d

    cartan = []
    for i in range(n):
        for j in range(i + 1, n):
            mats.append(diag_block({(i, j): (0, -HALF), (j, i): (0, -HALF)}))
            labels.append(f"S{i}{j}")
            mats.append(diag_block({(i, j): (-HALF, 0), (j, i): (HALF, 0)}))
            labels.append(f"A{i}{j}")
    for j in range(n):
        cartan.append(len(mats))
        mats.append(diag_block({(j, j): (0, -HALF)}))
        labels.append(f"H{j}")
    for i in range(n):
        for j in range(i, n):
            if i == j:
                re = {(i, i): (-HALF, 0)}
                im = {(i, i): (0, -HALF)}
            else:
                re = {(i, j): (-HALF, 0), (j, i): (-HALF, 0)}
                im = {(i, j): (0, -HALF), (j, i): (0, -HALF)}
            mats.append(off_block(re))
            labels.append(f"P{i}{j}")
            mats.append(off_block(im))
            labels.append(f"Q{i}{j}")
    return mats, labels, cartan


def sp_basis(n: int):
    mats, labels, cartan = sp_complex(n)
    return [realify(m) for m in mats], labels, cartan, 4 * n


def torus_basis(k: int):
    mats = [realify({(j, j): (0, 1)}) for j in range(k)]
    return mats, [f"T{j}" for j in range(k)], list(range(k)), 2 * k


# -- octonions ---------------------------------------------------------------

# Oriented Fano-plane triples (1-based): e_a x e_b = e_c cyclically.
FANO_TRIPLES = ((1, 2, 3), (1, 4, 5), (1, 7, 6), (2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 6, 5))


def cross_table() -> dict:
    """``{(a, b): (sign, c)}`` for the 7-dimensional cross product, 0-based."""
    table = {}
    for a, b, c in FANO_TRIPLES:
        a, b, c = a - 1, b - 1, c - 1
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            table[(x, y)] = (1, z)
            table[(y, x)] = (-1, z)
    return table
