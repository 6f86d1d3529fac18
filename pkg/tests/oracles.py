"""Independent reference computations used to derive and freeze expected values.

Nothing here imports the package's arithmetic: Pfaffians are summed over
perfect matchings, determinants over permutations, and Lie brackets are
taken between explicit sympy matrices.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations

import numpy as np
import sympy as sp

I = sp.I
HALF = sp.Rational(1, 2)


def perm_sign(p) -> int:
    sign, seen = 1, [False] * len(p)
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def det_leibniz(a) -> Fraction:
    n = len(a)
    total = Fraction(0)
    for p in permutations(range(n)):
        term = Fraction(perm_sign(p))
        for i in range(n):
            term *= a[i][p[i]]
            if not term:
                break
        total += term
    return total


def pfaffian_matchings(a) -> Fraction:
    """Sum over perfect matchings of ``{0..n-1}`` with the crossing sign."""
    n = len(a)
    if n % 2:
        return Fraction(0)

    def rec(rest):
        if not rest:
            return Fraction(1)
        i, others = rest[0], rest[1:]
        total = Fraction(0)
        for pos, j in enumerate(others):
            if a[i][j]:
                total += (-1) ** pos * a[i][j] * rec(others[:pos] + others[pos + 1:])
        return total

    return rec(tuple(range(n)))


# -- explicit matrix realizations --------------------------------------------------------


def E(n, i, j):
    m = sp.zeros(n, n)
    m[i, j] = 1
    return m


def su_matrices(n):
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            out.append(-I * HALF * (E(n, i, j) + E(n, j, i)))
            out.append(-HALF * (E(n, i, j) - E(n, j, i)))
    for k in range(1, n):
        d = sp.zeros(n, n)
        for t in range(k):
            d[t, t] = 1
        d[k, k] = -k
        out.append(-I * HALF * d)
    return out


def so_matrices(n):
    return [E(n, i, j) - E(n, j, i) for i in range(n) for j in range(i + 1, n)]


def pauli_su2():
    s1 = sp.Matrix([[0, 1], [1, 0]])
    s2 = sp.Matrix([[0, -I], [I, 0]])
    s3 = sp.Matrix([[1, 0], [0, -1]])
    return [-I * HALF * s for s in (s1, s2, s3)]


def form(x, y):
    """``Re tr(XY)``, the invariant form in the package's normalization."""
    return sp.re(sp.expand((x * y).trace()))


def structure_from_matrices(mats):
    """Exact ``c[i][j][k]`` for a B-orthogonal matrix basis."""
    n = len(mats)
    norms = [form(m, m) for m in mats]
    for i in range(n):
        for j in range(i + 1, n):
            assert form(mats[i], mats[j]) == 0
    c = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            br = mats[i] * mats[j] - mats[j] * mats[i]
            for k in range(n):
                v = sp.nsimplify(form(br, mats[k]) / norms[k])
                c[i][j][k] = Fraction(int(sp.fraction(v)[0]), int(sp.fraction(v)[1]))
    return c, [Fraction(int(sp.fraction(x)[0]), int(sp.fraction(x)[1])) for x in norms]


def float_span_closure(mats, tol=1e-9) -> int:
    """Dimension of the matrix Lie algebra generated by ``mats`` (numpy, SVD ranks)."""
    basis = []

    def add(m):
        cand = basis + [m.ravel()]
        a = np.array(cand)
        if np.linalg.matrix_rank(a, tol=tol) > len(basis):
            basis.append(m.ravel())
            return True
        return False

    shape = mats[0].shape
    for m in mats:
        add(np.asarray(m, dtype=complex))
    grew = True
    while grew:
        grew = False
        cur = [b.reshape(shape) for b in basis]
        for x in cur:
            for y in cur:
                if add(x @ y - y @ x):
                    grew = True
    return len(basis)
