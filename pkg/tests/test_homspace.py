from fractions import Fraction

import numpy as np
import pytest

from fatlab.homspace import (
    ConnectionError_,
    InvariantConnection,
    ReductivityError,
    canonical_connection,
    check_connection,
    connection_violations,
    curvature,
    equivariant_maps,
    holonomy_algebra,
    image_of_lambda,
    is_maximal_rank,
    is_symmetric,
    make_pair,
    project_to_h,
    random_equivariant_connection,
)
from fatlab.liealg import make_algebra, parse_algebra
from fatlab.subalg import embed, span_subalgebra
from oracles import float_span_closure, so_matrices, su_matrices


def _pair(kind, sub, amb, **kw):
    k = parse_algebra(amb)
    h = embed(kind, parse_algebra(sub), k, **kw)
    return make_pair(k, h)


@pytest.fixture(scope="module")
def hopf():
    return _pair("diagonal_torus", "t(1)", "su(2)")


@pytest.fixture(scope="module")
def s4():
    return _pair("vector_so_in_so", "so(4)", "so(5)")


@pytest.fixture(scope="module")
def su3_block():
    return _pair("block_upper_left", "su(2)", "su(3)")


def test_symmetric_maximal_rank_pairs(hopf, s4, su3_block):
    assert is_symmetric(hopf) and is_maximal_rank(hopf)
    assert is_symmetric(s4) and is_maximal_rank(s4)
    assert not is_symmetric(su3_block) and not is_maximal_rank(su3_block)


def test_s_u_block_in_su3_is_symmetric_of_maximal_rank():
    p = _pair("s_u_block", "su(2)+t(1)", "su(3)")
    assert p.m.dim == 4
    assert is_symmetric(p) and is_maximal_rank(p)


def test_sp2_in_su4_is_symmetric_but_not_maximal_rank():
    p = _pair("defining_sp_in_su", "sp(2)", "su(4)")
    assert p.m.dim == 5
    assert is_symmetric(p) and not is_maximal_rank(p)


def test_split_reassembles_vectors(su3_block):
    k = su3_block.k
    v = [Fraction(i + 1, 3) for i in range(k.dim)]
    hc, mc = su3_block.split(v)
    back = [sum(c * b[i] for c, b in zip(hc, su3_block.h.basis)) + sum(c * b[i] for c, b in zip(mc, su3_block.m.basis))
            for i in range(k.dim)]
    assert back == v


def test_pair_needs_h_inside_k():
    # with a definite invariant form the orthocomplement is always reductive,
    # so the only way to fail is a subalgebra of a different algebra
    k = make_algebra("su", [2])
    h = span_subalgebra(k, [k.unit(2)])
    other = make_algebra("su", [2])
    with pytest.raises(ReductivityError):
        make_pair(other, h)


def test_hopf_curvature_value(hopf):
    conn = canonical_connection(hopf, hopf.h.own_algebra)
    omega = curvature(conn).omega
    assert len(omega) == 2
    assert omega[0][0] == [0] and omega[0][1] == [-omega[1][0][0]]
    # [X0, X1] = e2 in su(2), so Omega(X0, X1) = -lam(e2) = -1
    assert omega[0][1] == [Fraction(-1)]


def _holonomy_oracle(pair, mats):
    """Float closure of the curvature values realized as explicit matrices."""
    k = pair.k
    vals = []
    basis = pair.m.basis
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            hc = pair.h_part(k.bracket_coords(basis[i], basis[j]))
            kv = [sum(c * b[t] for c, b in zip(hc, pair.h.basis)) for t in range(k.dim)]
            vals.append(sum(float(x) * np.array(mats[t].tolist(), dtype=complex) for t, x in enumerate(kv)))
    vals = [v for v in vals if np.abs(v).max() > 1e-12]
    return float_span_closure(vals) if vals else 0


@pytest.mark.parametrize("name,mats,expected", [("s4", so_matrices(5), 6), ("hopf", su_matrices(2), 1),
                                                 ("su3_block", su_matrices(3), 3)])
def test_holonomy_matches_span_closure(name, mats, expected, request):
    pair = request.getfixturevalue(name)
    conn = canonical_connection(pair, pair.h.own_algebra)
    assert holonomy_algebra(conn).dim == expected == _holonomy_oracle(pair, mats)


def test_holonomy_through_the_inclusion():
    p = _pair("s_u_block", "su(2)+t(1)", "su(3)")
    conn = canonical_connection(p, p.k, "inclusion")
    hol = holonomy_algebra(conn)
    assert hol.dim == 4
    assert all(image_of_lambda(conn).contains(v) for v in hol.basis)


def test_zero_curvature_for_abelian_k():
    p = _pair("diagonal_torus", "t(1)", "t(3)")
    conn = canonical_connection(p, p.h.own_algebra)
    assert holonomy_algebra(conn).dim == 0


def test_equivariant_map_counts(hopf, su3_block, s4):
    assert equivariant_maps(hopf, hopf.h.own_algebra, "identity") == []
    assert len(equivariant_maps(su3_block, su3_block.k, "inclusion")) == 5
    assert len(equivariant_maps(s4, s4.k, "inclusion")) == 1
    p = _pair("defining_sp_in_su", "sp(2)", "su(4)")
    assert len(equivariant_maps(p, p.k, "inclusion")) == 1


def test_random_equivariant_connections_are_valid(su3_block):
    for seed in range(3):
        conn = random_equivariant_connection(su3_block, su3_block.k, "inclusion", seed=seed)
        assert connection_violations(conn) == []
    assert not conn.is_canonical
    with pytest.raises(NotImplementedError):
        curvature(conn)
    projected = project_to_h(conn)
    assert projected.g.dim == 3 and connection_violations(projected) == []


def test_connection_violations_are_reported(su3_block):
    k, h = su3_block.k, su3_block.h
    good = canonical_connection(su3_block, k, "inclusion")
    doubled = InvariantConnection(su3_block, k, [[2 * x for x in r] for r in good.lam], good.Lambda_m)
    assert any("homomorphism" in p for p in connection_violations(doubled))
    bad_m = [list(r) for r in good.Lambda_m]
    bad_m[0][0] = Fraction(1)
    with pytest.raises(ConnectionError_):
        check_connection(InvariantConnection(su3_block, k, good.lam, bad_m))
    flat = InvariantConnection(su3_block, k, [[0] * h.dim for _ in range(k.dim)], good.Lambda_m)
    assert "lambda is not injective" in connection_violations(flat)
    with pytest.raises(ConnectionError_):
        canonical_connection(su3_block, k, "identity")
    with pytest.raises(ConnectionError_):
        canonical_connection(su3_block, h.own_algebra, "inclusion")
    assert connection_violations(InvariantConnection(su3_block, k, [[0]], good.Lambda_m))[0].startswith("lambda must")
