import pytest

from fatlab.liealg import parse_algebra
from fatlab.roots import identify
from fatlab.symbols import TypeSum, normalize_simple, parse_typesum, simple_dim


@pytest.mark.parametrize("a,b", [
    ("B1", "A1"), ("C1", "A1"), ("C2", "B2"), ("D2", "A1+A1"), ("D3", "A3"), ("D1", "T"),
    ("A1+C2", "B2⊕A1"), ("Cbar2", "C2"), ("R", "T"), ("0", ""),
])
def test_low_rank_coincidences_fold(a, b):
    assert parse_typesum(a) == parse_typesum(b)


def test_distinct_types_stay_distinct():
    assert parse_typesum("B3") != parse_typesum("C3")
    assert parse_typesum("A1+T") != parse_typesum("A1")
    assert parse_typesum("D4") != parse_typesum("A1+A1+A1+A1")


@pytest.mark.parametrize("f,r,d", [("A", 3, 15), ("B", 3, 21), ("C", 3, 21), ("D", 4, 28),
                                   ("G", 2, 14), ("F", 4, 52), ("E", 6, 78), ("E", 7, 133), ("E", 8, 248)])
def test_simple_dimensions(f, r, d):
    assert simple_dim(f, r) == d


def test_typesum_arithmetic():
    t = parse_typesum("C3+A1") + parse_typesum("T")
    assert t.dim == 21 + 3 + 1 and t.rank == 5
    assert not t.semisimple
    assert str(parse_typesum("A1+T")) == "A1⊕T"
    assert normalize_simple("D", 2) == ((("A", 1), ("A", 1)), 0)
    assert TypeSum.build([("A", 0)]) == TypeSum()


def test_bad_type_terms():
    with pytest.raises(ValueError):
        parse_typesum("Q7")
    with pytest.raises(ValueError):
        normalize_simple("A", -1)


@pytest.mark.parametrize("tag,typ", [
    ("su(2)", "A1"), ("su(4)", "A3"), ("so(5)", "B2"), ("so(7)", "B3"), ("so(8)", "D4"),
    ("sp(3)", "C3"), ("g2", "G2"), ("u(3)", "A2+T"), ("t(2)", "T+T"), ("so(4)", "A1+A1"),
    ("su(3)+so(5)", "A2+B2"),
])
def test_identify_from_root_data(tag, typ):
    assert identify(parse_algebra(tag)) == parse_typesum(typ)
