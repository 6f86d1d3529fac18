"""Nondegeneracy of skew pencils and the fat-bundle decision pipeline.

A bundle with structure algebra ``g`` and fibre ``G/L`` is fat when every
nonzero ``u`` in the B-orthocomplement of ``l`` makes ``B(Omega(., .), u)``
nondegenerate on the horizontal space.  Writing ``u = sum_a u_a e_a`` over a
basis of ``l``-perp turns this into a pencil of skew matrices
``F(u) = sum_a u_a F_a`` that must have no singular member on the sphere.

:func:`decide_fat` works in stages.  Cheap exact facts come first (empty
pencil, odd size, singular basis members), then exact polynomial reasoning
on the Pfaffian whenever it is a linear form, a quadratic form or a binary
form, and only then a seeded float search for the smallest singular value.
"""

from __future__ import annotations

import random
from math import isqrt
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
import sympy

from .exact import (
    ZERO,
    cayley_orthogonal,
    combine,
    definite,
    det,
    frac_str,
    is_skew,
    matmul,
    nullspace,
    pfaffian,
    transpose,
    vec,
)
from .homspace import (
    InvariantConnection,
    ReductivePair,
    curvature,
    image_of_lambda,
    is_maximal_rank,
    is_symmetric,
    project_to_h,
)
from .liealg import LieAlgebra
from .subalg import (
    Subalgebra,
    Subspace,
    complement_ideal,
    intersect,
    maximal_common_ideal,
    orthogonal_complement,
    span,
    sum_space,
)

FAT, NOT_FAT, UNDETERMINED = "Fat", "NotFat", "Undetermined"


class PencilError(ValueError):
    pass


@dataclass(frozen=True)
class SearchConfig:
    """Every knob of the float stage in one record."""

    seed: int = 0
    starts: int = 32
    max_iter: int = 500
    tau_fat: float = 1e-8
    tau_deg: float = 1e-12
    max_denominator: int = 10**6


@dataclass
class SkewPencil:
    m_dim: int
    u_dim: int
    F: list  # u_dim exact skew m_dim x m_dim matrices
    provenance: str = ""
    u_basis: list = field(default_factory=list)  # the e_a in g coordinates, when known

    def __post_init__(self):
        if len(self.F) != self.u_dim:
            raise PencilError(f"expected {self.u_dim} matrices, got {len(self.F)}")
        for a, f in enumerate(self.F):
            if len(f) != self.m_dim or any(len(r) != self.m_dim for r in f):
                raise PencilError(f"F[{a}] is not {self.m_dim} x {self.m_dim}")
            if not is_skew(f):
                raise PencilError(f"F[{a}] is not skew-symmetric")

    def at(self, u: Sequence) -> list:
        """The exact matrix ``F(u)``."""
        u = vec(u)
        n = self.m_dim
        out = [[ZERO] * n for _ in range(n)]
        for c, f in zip(u, self.F):
            if c:
                for i in range(n):
                    ri, fi = out[i], f[i]
                    for j in range(n):
                        if fi[j]:
                            ri[j] += c * fi[j]
        return out

    def pf(self, u: Sequence) -> Fraction:
        return pfaffian(self.at(u))

    def is_zero(self) -> bool:
        return not any(x for f in self.F for r in f for x in r)


@dataclass
class FatnessVerdict:
    """Outcome of :func:`decide_fat`.

    ``witness`` is a float unit vector in pencil coordinates.  When the
    degenerate direction is rational, ``exact_witness`` holds it and
    ``F(exact_witness)`` is exactly singular; otherwise ``certificate``
    records an exact sign change of the Pfaffian between two rational points.
    """

    status: str
    certificate: str
    witness: tuple | None = None
    exact_witness: tuple | None = None
    margin: float | None = None
    reason: str = ""
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "certificate": self.certificate,
            "reason": self.reason,
            "witness": None if self.witness is None else [float(x) for x in self.witness],
            "exact_witness": None if self.exact_witness is None else [frac_str(x) for x in self.exact_witness],
            "margin": self.margin,
            "details": self.details,
        }


# -- construction ---------------------------------------------------------------------


def build_pencil(curv, g: LieAlgebra, l: Subspace) -> SkewPencil:
    if curv.g is not g:
        raise PencilError("curvature takes values in a different algebra")
    if l.ambient is not g:
        raise PencilError("l must be a subspace of g")
    perp = orthogonal_complement(l)
    n = curv.m_dim
    F = []
    for u in perp.basis:
        f = [[ZERO] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                v = g.form_coords(curv.omega[i][j], u)
                f[i][j], f[j][i] = v, -v
        F.append(f)
    return SkewPencil(n, perp.dim, F, provenance=f"B(Omega, u), u in l-perp of {g.name or 'g'}", u_basis=list(perp.basis))


def is_u_fat(p: SkewPencil, u: Sequence) -> bool:
    u = vec(u)
    if len(u) != p.u_dim:
        raise PencilError(f"u must have length {p.u_dim}")
    if not any(u):
        raise PencilError("u must be nonzero")
    if p.m_dim % 2:
        return False
    return p.pf(u) != 0


# -- exact stage ------------------------------------------------------------------------


def _unit(u: Sequence) -> tuple:
    x = np.array([float(c) for c in u])
    return tuple(x / np.linalg.norm(x))


def _e(a: int, n: int) -> list:
    return [Fraction(int(i == a)) for i in range(n)]


def _not_fat_exact(u, reason: str, certificate: str = "exact-pfaffian") -> FatnessVerdict:
    u = tuple(vec(u))
    return FatnessVerdict(NOT_FAT, certificate, witness=_unit(u), exact_witness=u, reason=reason)


def _fat_exact(reason: str) -> FatnessVerdict:
    return FatnessVerdict(FAT, "exact-pfaffian", reason=reason)


def _rationalize(x: np.ndarray, max_den: int) -> list:
    return [Fraction(float(c)).limit_denominator(max_den) for c in x]


def _rationalize_projective(x: np.ndarray, max_den: int) -> list:
    """Rational point on the line through ``x``; the largest coordinate becomes exactly 1."""
    x = np.asarray(x, dtype=float)
    return _rationalize(x / x[int(np.argmax(np.abs(x)))], max_den)


def pfaffian_quadratic_form(p: SkewPencil) -> list:
    """Symmetric ``Q`` with ``Pf(F(u)) = u^T Q u`` (pencils of 4 x 4 matrices)."""
    if p.m_dim != 4:
        raise PencilError("the Pfaffian is quadratic only for m_dim = 4")
    d = [pfaffian(f) for f in p.F]
    q = [[ZERO] * p.u_dim for _ in range(p.u_dim)]
    for a in range(p.u_dim):
        q[a][a] = d[a]
        for b in range(a + 1, p.u_dim):
            s = pfaffian([[x + y for x, y in zip(r1, r2)] for r1, r2 in zip(p.F[a], p.F[b])])
            q[a][b] = q[b][a] = (s - d[a] - d[b]) / 2
    return q


def _quadratic_zero(q: list, max_den: int) -> FatnessVerdict:
    """NotFat verdict for a non-definite quadratic Pfaffian."""
    n = len(q)
    ker = nullspace(q, n)
    if ker:
        return _not_fat_exact(ker[0], "Pfaffian quadratic form is degenerate")
    qf = np.array([[float(x) for x in r] for r in q])
    _, v = np.linalg.eigh(qf)
    vp = _rationalize(v[:, -1], max_den)
    vn = _rationalize(v[:, 0], max_den)

    def val(x):
        return sum(x[i] * q[i][j] * x[j] for i in range(n) for j in range(n))

    qp, qn = val(vp), val(vn)
    if not (qp > 0 > qn):  # pragma: no cover - eigenvector rounding is far finer than needed
        raise ArithmeticError("failed to separate signs of an indefinite form")
    # on the line vp + t vn the form is qp + 2 t b + t^2 qn; rational roots give an exact zero
    b = sum(vp[i] * q[i][j] * vn[j] for i in range(n) for j in range(n))
    disc = b * b - qp * qn
    root = _rational_sqrt(disc)
    if root is not None:
        t = (-b + root) / qn
        u = [x + t * y for x, y in zip(vp, vn)]
        return _not_fat_exact(u, "Pfaffian quadratic form is indefinite")
    tf = (-float(b) + float(disc) ** 0.5) / float(qn)
    wf = _unit([float(x) + tf * float(y) for x, y in zip(vp, vn)])
    return FatnessVerdict(
        NOT_FAT,
        "exact-sign-change",
        witness=wf,
        reason="Pfaffian quadratic form is indefinite",
        details={"positive": [frac_str(x) for x in vp], "negative": [frac_str(x) for x in vn]},
    )


def _rational_sqrt(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    a, b = isqrt(x.numerator), isqrt(x.denominator)
    if a * a == x.numerator and b * b == x.denominator:
        return Fraction(a, b)
    return None


def binary_pfaffian(p: SkewPencil) -> list:
    """Coefficients ``c_k`` (highest first) of ``Pf(t F_0 + F_1)``, a polynomial of degree ``m_dim/2``."""
    d = p.m_dim // 2
    xs = list(range(d + 1))
    ys = [p.pf([Fraction(t), Fraction(1)]) for t in xs]
    t = sympy.Symbol("t")
    poly = sympy.interpolate(list(zip(xs, [sympy.Rational(y.numerator, y.denominator) for y in ys])), t)
    coeffs = sympy.Poly(poly, t).all_coeffs() if poly != 0 else [0]
    coeffs = [Fraction(int(sympy.fraction(c)[0]), int(sympy.fraction(c)[1])) for c in coeffs]
    return [ZERO] * (d + 1 - len(coeffs)) + coeffs


def _binary_decision(p: SkewPencil) -> FatnessVerdict:
    coeffs = binary_pfaffian(p)
    if coeffs[0] == 0:  # Pf(F_0) = 0 was caught by the basis probe
        return _not_fat_exact(_e(0, 2), "Pfaffian vanishes at the first basis vector")
    t = sympy.Symbol("t")
    poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in coeffs], t)
    if poly.count_roots() == 0:
        return _fat_exact("binary Pfaffian has no real zero")
    rational = [r for r in sympy.roots(poly, filter="Q")]
    if rational:
        r = sympy.Rational(rational[0])
        return _not_fat_exact([Fraction(int(r.p), int(r.q)), Fraction(1)], "binary Pfaffian has a rational zero")
    sqf = sympy.Poly(sympy.sqf_part(poly.as_expr()), t)
    lo, hi = sqf.intervals()[0][0]
    root = float(sqf.refine_root(lo, hi, eps=1e-14)[0])
    return FatnessVerdict(
        NOT_FAT,
        "exact-sign-change",
        witness=_unit([root, 1.0]),
        reason="binary Pfaffian has a real zero",
        details={"isolating_interval": [str(lo), str(hi)], "polynomial": [frac_str(c) for c in coeffs]},
    )


# -- float stage --------------------------------------------------------------------------


def _normalized_floats(p: SkewPencil) -> tuple[np.ndarray, np.ndarray]:
    """Each ``F_a`` divided by its largest entry, and the divisors."""
    mats, scales = [], []
    for f in p.F:
        a = np.array([[float(x) for x in r] for r in f])
        s = float(np.max(np.abs(a))) if a.size else 0.0
        s = s if s > 0 else 1.0
        mats.append(a / s)
        scales.append(s)
    return np.array(mats), np.array(scales)


def _objective(F: np.ndarray, u: np.ndarray):
    m = np.tensordot(u, F, axes=1)
    U, s, Vt = np.linalg.svd(m)
    # singular values of a real skew matrix come in pairs; average the smallest pair
    k = 2 if len(s) >= 2 else 1
    val = float(np.mean(s[-k:] ** 2))
    grad = np.zeros_like(u)
    for j in range(1, k + 1):
        grad += 2 * s[-j] * np.einsum("i,aij,j->a", U[:, -j], F, Vt[-j])
    return val, grad / k, float(s[-1])


def sphere_search(p: SkewPencil, config: SearchConfig = SearchConfig()):
    """Seeded multi-start projected descent of ``sigma_min(F(u))`` over the unit sphere.

    The search runs on the normalized matrices; the returned unit vector is
    expressed in the original pencil coordinates.  Returns
    ``(sigma_min, u)`` of the best start; ties go to the lowest index.
    """
    F, scales = _normalized_floats(p)
    rng = np.random.default_rng(config.seed)
    starts = rng.normal(size=(config.starts, p.u_dim))
    best = None
    for idx, u in enumerate(starts):
        u = u / np.linalg.norm(u)
        val, grad, smin = _objective(F, u)
        step = 1.0
        for _ in range(config.max_iter):
            g = grad - (grad @ u) * u
            if np.linalg.norm(g) < 1e-15:
                break
            while step > 1e-16:
                cand = u - step * g
                cand /= np.linalg.norm(cand)
                cval, cgrad, csmin = _objective(F, cand)
                if cval < val:
                    u, val, grad, smin = cand, cval, cgrad, csmin
                    step *= 2
                    break
                step /= 2
            else:
                break
        if best is None or smin < best[0]:
            best = (smin, u, idx)
    u = best[1] / scales
    return best[0], u / np.linalg.norm(u)


def _rational_candidates(p: SkewPencil, u: np.ndarray, max_den: int):
    """Rational points near a float zero of the Pfaffian, for exact checking.

    First the rounded point itself.  Then the rounded point projected onto
    the rationalized tangent plane of the zero set: on a smooth zero the
    gradient of ``Pf`` is proportional to ``x^T F_a y`` for a basis ``x, y``
    of the kernel, so rational linear factors are recovered exactly.
    """
    ur = _rationalize_projective(u, max_den)
    yield ur
    mats = np.array([[[float(x) for x in r] for r in f] for f in p.F])
    _, _, vt = np.linalg.svd(np.tensordot(u, mats, axes=1))
    x, y = vt[-1], vt[-2]
    grad = np.einsum("i,aij,j->a", x, mats, y)
    if not np.any(grad):
        return
    n = _rationalize_projective(grad, max_den)
    nn = sum(c * c for c in n)
    t = sum(a * b for a, b in zip(n, ur)) / nn
    yield [a - t * b for a, b in zip(ur, n)]


# -- decision ---------------------------------------------------------------------------


def decide_fat(p: SkewPencil, config: SearchConfig = SearchConfig()) -> FatnessVerdict:
    if p.u_dim == 0:
        return FatnessVerdict(FAT, "exact-pfaffian", reason="l-perp is zero (vacuous)")
    if p.m_dim % 2:
        return _not_fat_exact(_e(0, p.u_dim), "odd horizontal dimension", certificate="odd-dim")
    if p.m_dim == 0:
        return _fat_exact("horizontal space is zero (vacuous)")
    for a, f in enumerate(p.F):
        if pfaffian(f) == 0:
            return _not_fat_exact(_e(a, p.u_dim), f"F({a}) is singular")
    if p.u_dim == 1:
        return _fat_exact("single nonzero Pfaffian")
    if p.m_dim == 2:
        # Pf is a linear form in u_dim >= 2 variables: it always has a kernel
        ker = nullspace([[f[0][1] for f in p.F]], p.u_dim)
        return _not_fat_exact(ker[0], "Pfaffian is a linear form with a kernel")
    if p.m_dim == 4:
        q = pfaffian_quadratic_form(p)
        if definite(q):
            return _fat_exact("Pfaffian quadratic form is definite")
        return _quadratic_zero(q, config.max_denominator)
    if p.u_dim == 2:
        return _binary_decision(p)
    smin, u = sphere_search(p, config)
    if smin > config.tau_fat:
        return FatnessVerdict(FAT, "sphere-search", witness=tuple(float(x) for x in u), margin=smin,
                              reason=f"smallest singular value {smin:.3e} exceeds the fat threshold")
    if smin < config.tau_deg:
        for ur in _rational_candidates(p, u, config.max_denominator):
            if any(ur) and det(p.at(ur)) == 0:
                return FatnessVerdict(NOT_FAT, "sphere-search", witness=tuple(float(x) for x in u),
                                      exact_witness=tuple(ur), margin=smin,
                                      reason="rationalized witness is exactly singular")
        reason = f"smallest singular value {smin:.3e} but no nearby rational point is exactly singular"
    else:
        reason = f"smallest singular value {smin:.3e} lies between the thresholds"
    return FatnessVerdict(UNDETERMINED, "sphere-search", witness=tuple(float(x) for x in u), margin=smin,
                          reason=reason)


def verdict_consistent(p: SkewPencil, v: FatnessVerdict, samples: int = 100, seed: int = 0) -> bool:
    """Cross-check a verdict with exact evaluations."""
    if v.status == NOT_FAT:
        if v.exact_witness is not None:
            return not is_u_fat(p, v.exact_witness)
        if "positive" in v.details:
            return p.pf(vec(v.details["positive"])) > 0 > p.pf(vec(v.details["negative"]))
        return "isolating_interval" in v.details
    if v.status == FAT and p.u_dim:
        rng = random.Random(seed)
        for _ in range(samples):
            u = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(p.u_dim)]
            if any(u) and not is_u_fat(p, u):
                return False
    return True


# -- pencil transformations -------------------------------------------------------------


def random_rational_orthogonal(n: int, rng: random.Random) -> list:
    s = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            x = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
            s[i][j], s[j][i] = x, -x
    return cayley_orthogonal(s)


def rotate_pencil(p: SkewPencil, r_m: list | None = None, r_u: list | None = None) -> SkewPencil:
    """``F'_a = sum_b r_u[a][b] R^T F_b R`` for orthogonal ``R = r_m`` and ``r_u``."""
    mats = p.F
    if r_m is not None:
        rt = transpose(r_m)
        mats = [matmul(matmul(rt, f), r_m) for f in mats]
    if r_u is not None:
        n = p.m_dim
        mats = [
            [[sum((r_u[a][b] * mats[b][i][j] for b in range(p.u_dim)), ZERO) for j in range(n)] for i in range(n)]
            for a in range(p.u_dim)
        ]
    return SkewPencil(p.m_dim, p.u_dim, mats, provenance=p.provenance + " (rotated)")


def scale_pencil(p: SkewPencil, c: Fraction) -> SkewPencil:
    return SkewPencil(p.m_dim, p.u_dim, [[[c * x for x in r] for r in f] for f in p.F], provenance=p.provenance)


# -- Lemma: two equivalent nondegeneracy conditions --------------------------------------


def condition_pencil(pair: ReductivePair, lam: InvariantConnection | None, xspace: Subspace, V: Subspace) -> SkewPencil:
    """``F_a[i][j] = B_g(x_a, lam([v_i, v_j]_h))`` over a basis ``x_a`` of ``xspace``."""
    k = pair.k
    g = xspace.ambient
    n = V.dim
    F = []
    vals = {}
    for i in range(n):
        for j in range(i + 1, n):
            hc = pair.h_part(k.bracket_coords(V.basis[i], V.basis[j]))
            vals[i, j] = lam.lam_of(hc) if lam is not None else pair.h.vector(hc)
    for x in xspace.basis:
        f = [[ZERO] * n for _ in range(n)]
        for (i, j), y in vals.items():
            v = g.form_coords(x, y)
            f[i][j], f[j][i] = v, -v
        F.append(f)
    return SkewPencil(n, xspace.dim, F, provenance="B(X, [Y, Z]_h)")


def lemma1_condition(pair: ReductivePair, lam, xspace: Subspace, V: Subspace, config: SearchConfig = SearchConfig()) -> bool | None:
    """Every nonzero ``X`` in ``xspace`` gives a nondegenerate form on ``V``; ``None`` if undetermined."""
    if V.dim == 0:
        return True
    v = decide_fat(condition_pencil(pair, lam, xspace, V), config)
    return None if v.status == UNDETERMINED else v.status == FAT


@dataclass
class EquivalenceReport:
    hypothesis: bool
    checked: int = 0
    agreements: int = 0
    nondegenerate: int = 0  # agreements where both conditions hold
    undetermined: int = 0
    faults: list = field(default_factory=list)
    note: str = ""

    @property
    def ok(self) -> bool:
        return self.hypothesis and not self.faults


def _random_subspace(k: LieAlgebra, dim: int, rng: random.Random, inside: Subspace | None = None) -> Subspace:
    basis = inside.basis if inside is not None else [k.unit(i) for i in range(k.dim)]
    while True:
        vecs = [combine([Fraction(rng.randint(-3, 3)) for _ in basis], basis, k.dim) for _ in range(dim)]
        s = span(k, vecs)
        if s.dim == dim:
            return s


def check_lemma1_equivalence(pair: ReductivePair, l: Subalgebra, V: Subspace | None = None, trials: int = 10,
                             conn: InvariantConnection | None = None, seed: int = 0,
                             config: SearchConfig = SearchConfig()) -> EquivalenceReport:
    """Compare the ``l``-perp condition with the ``(lam h cap l)``-perp-in-``lam h`` condition.

    ``conn`` supplies ``lam: h -> g``; by default ``g = k`` with the inclusion.
    """
    if conn is None:
        lamh, lam = pair.h, None
    else:
        lamh, lam = image_of_lambda(conn), conn
    g = lamh.ambient
    if sum_space(lamh, l).dim != g.dim:
        return EquivalenceReport(False, note="hypothesis violated: g != lam(h) + l")
    A = orthogonal_complement(l)
    C = orthogonal_complement(intersect(lamh, l), within=lamh)
    rng = random.Random(seed)
    spaces = [V] if V is not None else []
    for _ in range(trials):
        d = rng.randint(0, min(4, pair.m.dim))
        spaces.append(_random_subspace(pair.k, d, rng, inside=pair.m if rng.random() < 0.7 else None))
    rep = EquivalenceReport(True)
    for s in spaces:
        c1 = lemma1_condition(pair, lam, A, s, config)
        c2 = lemma1_condition(pair, lam, C, s, config)
        rep.checked += 1
        if c1 is None or c2 is None:
            rep.undetermined += 1
        elif c1 == c2:
            rep.agreements += 1
            rep.nondegenerate += c1
        else:
            rep.faults.append({"V": [[frac_str(x) for x in b] for b in s.basis], "A": c1, "C": c2})
    return rep


# -- bundle scenarios and the necessary conditions ----------------------------------------


@dataclass(eq=False)
class BundleScenario:
    """Canonical connection ``conn`` over ``K/H`` and the fibre subalgebra ``l <= g``."""

    pair: ReductivePair
    connection: InvariantConnection
    l: Subalgebra
    name: str = ""

    @property
    def g(self) -> LieAlgebra:
        return self.connection.g

    def pencil(self) -> SkewPencil:
        return build_pencil(curvature(self.connection), self.g, self.l)


def reduced_scenario(sc: BundleScenario) -> BundleScenario:
    """The same bundle with ``g`` replaced by ``lam(h)`` and ``l`` by ``lam(h) cap l``."""
    lamh = image_of_lambda(sc.connection)
    conn = project_to_h(sc.connection)
    meet = intersect(lamh, sc.l)
    coords = [lamh.coords(v) for v in meet.basis]
    return BundleScenario(sc.pair, conn, Subalgebra(conn.g, coords), name=sc.name + " (reduced)")


PASS, FAIL, NA = "pass", "fail", "not-applicable"


@dataclass
class ConditionResult:
    key: str
    title: str
    status: str
    detail: str = ""
    witness: dict = field(default_factory=dict)


@dataclass
class ConditionReport:
    conditions: list
    summary: str

    @property
    def all_pass(self) -> bool:
        return all(c.status in (PASS, NA) for c in self.conditions)

    def to_dict(self) -> dict:
        return {
            "summary": self.summary,
            "conditions": [
                {"key": c.key, "title": c.title, "status": c.status, "detail": c.detail, "witness": c.witness}
                for c in self.conditions
            ],
        }


def verify_necessary_conditions(sc: BundleScenario) -> ConditionReport:
    from .roots import identify
    from . import tables

    g, l = sc.g, sc.l
    lamh = image_of_lambda(sc.connection)
    meet = intersect(lamh, l)
    out = []

    total = sum_space(lamh, l).dim
    out.append(ConditionResult(
        "a", "g = lam(h) + l", PASS if total == g.dim else FAIL,
        f"dim(lam(h) + l) = {total}, dim g = {g.dim}",
    ))

    th, tm = identify(lamh), identify(meet)
    pair_text = f"({th}, {tm})"
    if lamh.dim - meet.dim <= 1:
        out.append(ConditionResult("b", "(h, h cap l) is a Berard-Bergery pair", PASS,
                                   f"pair {pair_text}: fibre H/(H cap L) has dimension <= 1 (degenerate circle case)"))
    else:
        matches = tables.bb_match(th, tm)
        if matches:
            flagged = [m for m in matches if m.slope_dependent]
            note = " (match depends on the unspecified slope a)" if flagged and len(flagged) == len(matches) else ""
            out.append(ConditionResult("b", "(h, h cap l) is a Berard-Bergery pair", PASS,
                                       f"pair {pair_text} matches Table 2 {matches[0].describe()}{note}"))
        else:
            raw = tables.table1_spelling(th, tm)
            shown = f"({raw[0]}, {raw[1]})" if raw else pair_text
            out.append(ConditionResult("b", "(h, h cap l) is a Berard-Bergery pair", FAIL,
                                       f"pair {shown} not in Table 2", {"pair": [str(th), str(tm)]}))

    sym, maxr = is_symmetric(sc.pair), is_maximal_rank(sc.pair)
    out.append(ConditionResult("c", "K/H is symmetric of maximal rank", PASS if sym and maxr else FAIL,
                               f"symmetric = {sym}, maximal rank = {maxr}"))

    n_prime = maximal_common_ideal(lamh, meet)
    h_prime = complement_ideal(lamh, n_prime)
    n = maximal_common_ideal(g, l)
    direct = intersect(h_prime, n).dim == 0 and sum_space(h_prime, n).dim == g.dim
    out.append(ConditionResult("d", "g = h' + n", PASS if direct else FAIL,
                               f"dim h' = {h_prime.dim}, dim n = {n.dim}, dim g = {g.dim}"))

    tg = identify(g)
    g_simple = tg.torus == 0 and len(tg.simple) == 1
    if lamh.dim == g.dim:
        out.append(ConditionResult("e", "G simple implies G = H", PASS, "lam(h) = g"))
    elif g_simple:
        out.append(ConditionResult("e", "G simple implies G = H", FAIL, f"g = {tg} is simple but lam(h) != g"))
    else:
        out.append(ConditionResult("e", "G simple implies G = H", NA, f"g = {tg} is not simple"))

    if all(c.status in (PASS, NA) for c in out):
        summary = "all conditions pass"
    else:
        first = next(c for c in out if c.status == FAIL)
        if first.key == "b":
            summary = f"{first.detail} ⇒ no fat canonical-connection bundle"
        else:
            summary = f"condition ({first.key}) fails ⇒ no fat canonical-connection bundle"
    return ConditionReport(out, summary)
