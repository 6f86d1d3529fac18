"""Exact rational linear algebra on lists of ``Fraction``.

Matrices are plain row-major lists of lists; vectors are lists or tuples.
Everything here is deliberately dependency-free so results are lossless.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

ZERO = Fraction(0)
ONE = Fraction(1)


def frac(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to ``Fraction``.

    Floats are rejected: silently importing binary rounding would defeat
    the point of exact data.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot convert {type(x).__name__} to an exact scalar")


def frac_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def vec(xs: Iterable) -> list[Fraction]:
    return [frac(x) for x in xs]


def mat(rows: Iterable[Iterable]) -> list[list[Fraction]]:
    return [vec(r) for r in rows]


def zeros(n: int, m: int) -> list[list[Fraction]]:
    return [[ZERO] * m for _ in range(n)]


def identity(n: int) -> list[list[Fraction]]:
    out = zeros(n, n)
    for i in range(n):
        out[i][i] = ONE
    return out


def transpose(a: Sequence[Sequence[Fraction]], ncols: int | None = None) -> list[list[Fraction]]:
    if not a:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*a)]


def matmul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    if not a:
        return []
    inner = len(b)
    ncols = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [ZERO] * ncols
        for t in range(inner):
            r = row[t]
            if r:
                brow = b[t]
                for j in range(ncols):
                    v = brow[j]
                    if v:
                        acc[j] += r * v
        out.append(acc)
    return out


def matvec(a: Sequence[Sequence[Fraction]], x: Sequence[Fraction]) -> list[Fraction]:
    out = []
    for row in a:
        s = ZERO
        for r, v in zip(row, x):
            if r and v:
                s += r * v
        out.append(s)
    return out


def dot(x: Sequence[Fraction], y: Sequence[Fraction]) -> Fraction:
    s = ZERO
    for a, b in zip(x, y):
        if a and b:
            s += a * b
    return s


def is_zero(x: Sequence[Fraction]) -> bool:
    return not any(x)


def combine(coeffs: Sequence[Fraction], vectors: Sequence[Sequence[Fraction]], n: int) -> list[Fraction]:
    """Return sum_i coeffs[i] * vectors[i] as a length-``n`` list."""
    out = [ZERO] * n
    for c, v in zip(coeffs, vectors):
        if c:
            for j, x in enumerate(v):
                if x:
                    out[j] += c * x
    return out


def rref(rows: Sequence[Sequence[Fraction]], ncols: int | None = None):
    """Reduced row echelon form. Returns ``(R, pivots)``; zero rows dropped."""
    a = [list(r) for r in rows]
    if ncols is None:
        ncols = len(a[0]) if a else 0
    pivots: list[int] = []
    r = 0
    nrows = len(a)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        pr = a[r]
        inv = 1 / pr[c]
        if inv != 1:
            for j in range(c, ncols):
                if pr[j]:
                    pr[j] *= inv
        for i in range(nrows):
            if i != r:
                f = a[i][c]
                if f:
                    ri = a[i]
                    for j in range(c, ncols):
                        if pr[j]:
                            ri[j] -= f * pr[j]
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank(rows: Sequence[Sequence[Fraction]], ncols: int | None = None) -> int:
    return len(rref(rows, ncols)[1])


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Basis of ``{x : A x = 0}`` with ``A`` given by ``rows`` (``ncols`` unknowns)."""
    r, pivots = rref(rows, ncols)
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    basis = []
    for f in free:
        x = [ZERO] * ncols
        x[f] = ONE
        for row, p in zip(r, pivots):
            if row[f]:
                x[p] = -row[f]
        basis.append(x)
    return basis


def independent_columns(cols: Sequence[Sequence[Fraction]], n: int) -> list[list[Fraction]]:
    """Echelon basis for the span of ``cols`` (each a length-``n`` vector)."""
    r, _ = rref(cols, n)
    return r


def solve(a: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> list[Fraction] | None:
    """Some solution of ``a x = b`` or ``None`` if inconsistent."""
    n = len(a[0]) if a else 0
    aug = [list(row) + [bi] for row, bi in zip(a, b)]
    r, pivots = rref(aug, n + 1)
    if pivots and pivots[-1] == n:
        return None
    x = [ZERO] * n
    for row, p in zip(r, pivots):
        x[p] = row[n]
    return x


def inverse(a: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    n = len(a)
    aug = [list(row) + e for row, e in zip(a, identity(n))]
    r, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in r[:n]]


def det(a: Sequence[Sequence[Fraction]]) -> Fraction:
    """Determinant by fraction Gaussian elimination."""
    m = [list(r) for r in a]
    n = len(m)
    d = ONE
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c]), None)
        if p is None:
            return ZERO
        if p != c:
            m[c], m[p] = m[p], m[c]
            d = -d
        piv = m[c][c]
        d *= piv
        for i in range(c + 1, n):
            f = m[i][c]
            if f:
                f = f / piv
                ri, rc = m[i], m[c]
                for j in range(c, n):
                    if rc[j]:
                        ri[j] -= f * rc[j]
    return d


def pfaffian(a: Sequence[Sequence[Fraction]]) -> Fraction:
    """Pfaffian of an exact skew-symmetric matrix.

    Skew Schur-complement elimination on a 2x2 pivot block; odd size gives 0
    and the empty matrix gives 1.
    """
    m = [list(r) for r in a]
    n = len(m)
    if n % 2:
        return ZERO
    result = ONE
    while m:
        size = len(m)
        k = next((j for j in range(1, size) if m[0][j]), None)
        if k is None:
            return ZERO
        if k != 1:
            m[1], m[k] = m[k], m[1]
            for row in m:
                row[1], row[k] = row[k], row[1]
            result = -result
        piv = m[0][1]
        result *= piv
        r0, r1 = m[0], m[1]
        rest = []
        for i in range(2, size):
            ri = m[i]
            a_i0, a_i1 = ri[0], ri[1]
            new = ri[2:]
            if a_i0 or a_i1:
                for j in range(2, size):
                    t = a_i1 * r0[j] - a_i0 * r1[j]
                    if t:
                        new[j - 2] -= t / piv
            rest.append(new)
        m = rest
    return result


def is_skew(a: Sequence[Sequence[Fraction]]) -> bool:
    n = len(a)
    return all(a[i][j] == -a[j][i] for i in range(n) for j in range(i, n))


def negative_definite(a: Sequence[Sequence[Fraction]]) -> bool:
    """Sylvester test: leading principal minors alternate in sign, starting negative.

    Elimination pivots are ratios of consecutive leading minors, so all
    pivots negative is the same condition.
    """
    m = [list(r) for r in a]
    n = len(m)
    for c in range(n):
        piv = m[c][c]
        if piv >= 0:
            return False
        for i in range(c + 1, n):
            f = m[i][c]
            if f:
                f = f / piv
                for j in range(c, n):
                    if m[c][j]:
                        m[i][j] -= f * m[c][j]
    return True


def definite(q: Sequence[Sequence[Fraction]]) -> bool:
    """True iff the symmetric matrix ``q`` is positive or negative definite."""
    if not q:
        return True
    if negative_definite(q):
        return True
    return negative_definite([[-x for x in row] for row in q])


def bilinear(x: Sequence[Fraction], q: Sequence[Sequence[Fraction]], y: Sequence[Fraction]) -> Fraction:
    return dot(x, matvec(q, y))


def cayley_orthogonal(skew: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    """Rational orthogonal matrix ``(I - S)(I + S)^{-1}`` from a skew ``S``."""
    n = len(skew)
    i_minus = [[(ONE if i == j else ZERO) - skew[i][j] for j in range(n)] for i in range(n)]
    i_plus = [[(ONE if i == j else ZERO) + skew[i][j] for j in range(n)] for i in range(n)]
    return matmul(i_minus, inverse(i_plus))
