import random
from fractions import Fraction

import pytest

from fatlab.liealg import (
    AlgebraError,
    LieAlgebra,
    OwnerMismatch,
    _load_g2_basis,
    bracket,
    check_algebra,
    compute_g2_basis,
    direct_sum,
    form_value,
    make_algebra,
    parse_algebra,
    random_direct_sum,
    symbolic_rank,
)
from oracles import pauli_su2, so_matrices, structure_from_matrices, su_matrices


def _matches_oracle(alg, mats):
    c, norms = structure_from_matrices(mats)
    n = alg.dim
    assert [alg.B[i][i] for i in range(n)] == norms
    for i in range(n):
        for j in range(n):
            got = alg.basis_bracket(i, j)
            for k in range(n):
                assert got.get(k, 0) == c[i][j][k], (i, j, k)


@pytest.mark.parametrize(
    "kind,n,mats",
    [("su", 2, su_matrices(2)), ("su", 3, su_matrices(3)), ("so", 4, so_matrices(4)), ("so", 5, so_matrices(5))],
)
def test_structure_constants_match_sympy_oracle(kind, n, mats):
    _matches_oracle(make_algebra(kind, [n]), mats)


def test_su2_is_the_pauli_algebra():
    # the su(2) basis is -i/2 times the Pauli matrices, in order
    _matches_oracle(make_algebra("su", [2]), pauli_su2())


@pytest.mark.parametrize("tag,dim", [
    ("su(2)", 3), ("su(4)", 15), ("so(3)", 3), ("so(6)", 15), ("so(7)", 21),
    ("sp(1)", 3), ("sp(2)", 10), ("sp(3)", 21), ("u(2)", 4), ("t(3)", 3), ("g2", 14),
])
def test_families_pass_the_audit(tag, dim):
    alg = parse_algebra(tag)
    audit = check_algebra(alg)
    assert audit.ok and bool(audit)
    assert alg.dim == audit.dim == dim


def test_empty_algebra_audit():
    alg = make_algebra("t", [0])
    assert alg.dim == 0
    assert check_algebra(alg).ok


def test_g2_data_file_matches_recomputation():
    assert _load_g2_basis() == compute_g2_basis()


def test_random_direct_sums_pass_the_audit():
    rng = random.Random(11)
    for _ in range(6):
        alg = random_direct_sum(rng)
        assert check_algebra(alg).ok, alg.name


def _su2_structure():
    a = make_algebra("su", [2])
    return a.sparse_structure(), [list(r) for r in a.B]


def test_audit_reports_antisymmetry_failure():
    s, b = _su2_structure()
    s[(1, 0)] = {2: Fraction(1, 2)}  # should be -1/2 times [e0, e1]
    audit = check_algebra(LieAlgebra(s, b))
    assert not audit.ok
    assert audit.identity == "antisymmetry"
    assert audit.indices[:2] == (0, 1)


def test_audit_reports_jacobi_failure():
    # antisymmetric but not a Lie bracket: [e0, e1] = e1, [e1, e2] = e0
    s = {(0, 1): {1: Fraction(1)}, (1, 0): {1: Fraction(-1)},
         (1, 2): {0: Fraction(1)}, (2, 1): {0: Fraction(-1)}}
    b = [[-1 if i == j else 0 for j in range(3)] for i in range(3)]
    audit = check_algebra(LieAlgebra(s, b))
    assert audit.identity == "jacobi"
    assert len(audit.indices) == 4


def test_audit_reports_invariance_failure():
    s, b = _su2_structure()
    b[2][2] = Fraction(-1)  # brackets intact, form no longer invariant
    audit = check_algebra(LieAlgebra(s, b))
    assert audit.identity == "invariance"


def test_audit_reports_definiteness_failure():
    s, b = _su2_structure()
    b = [[-x for x in r] for r in b]
    assert check_algebra(LieAlgebra(s, b)).identity == "form-definiteness"


def test_audit_reports_form_asymmetry():
    b = [[-1, Fraction(1, 3)], [0, -1]]
    assert check_algebra(LieAlgebra({}, b)).identity == "form-symmetry"


def test_direct_sum_is_block_diagonal():
    a, b = make_algebra("su", [2]), make_algebra("so", [4])
    s = direct_sum(a, b)
    assert s.dim == 9
    assert check_algebra(s).ok
    for i in range(3):
        for j in range(3, 9):
            assert not s.basis_bracket(i, j)
            assert s.B[i][j] == 0
    assert s.basis_bracket(3 + 0, 3 + 1) == {k + 3: v for k, v in b.basis_bracket(0, 1).items()}
    assert [x.dim for x, _ in s.summands] == [3, 6]


def test_parse_algebra_accepts_sums_and_rejects_junk():
    assert parse_algebra("su(3)+t(1)").dim == 9
    assert parse_algebra("su(2)⊕su(2)").dim == 6
    with pytest.raises(AlgebraError):
        parse_algebra("sl(2)")
    with pytest.raises(AlgebraError):
        make_algebra("so", [2])
    with pytest.raises(AlgebraError):
        make_algebra("su", [Fraction(3)])


@pytest.mark.parametrize("tag,r", [("su(4)", 3), ("so(7)", 3), ("so(8)", 4), ("sp(3)", 3), ("g2", 2),
                                   ("u(3)", 3), ("su(3)+t(1)", 3), ("t(0)", 0)])
def test_symbolic_rank(tag, r):
    assert symbolic_rank(tag) == r


def test_symbolic_rank_unknown_tag():
    assert symbolic_rank(None) is None
    assert symbolic_rank("mystery") is None


def test_with_form_rescales_only_the_form():
    a = make_algebra("su", [3])
    b = a.with_form(3)
    assert b.B[0][0] == 3 * a.B[0][0]
    assert b.sparse_structure() == a.sparse_structure()
    assert check_algebra(b).ok
    with pytest.raises(AlgebraError):
        a.with_form(-1)


def test_vectors_track_their_owner():
    a, b = make_algebra("su", [2]), make_algebra("su", [2])
    x, y, z = a.basis()
    assert bracket(x, y) == a.vector(a.basis_bracket(0, 1).get(k, 0) for k in range(3))
    assert form_value(x, x) == Fraction(-1, 2)
    assert (x + y - y) == x
    with pytest.raises(OwnerMismatch):
        bracket(x, b.basis()[0])
    with pytest.raises(OwnerMismatch):
        form_value(x, b.basis()[1])
