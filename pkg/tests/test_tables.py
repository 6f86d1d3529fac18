import pytest

from fatlab.symbols import parse_typesum
from fatlab.tables import (
    CONSTRUCTIBLE_ROWS,
    RestrictionError,
    TableError,
    bb_match,
    dump_tables,
    entry_from_dict,
    eval_param,
    instantiate,
    is_bb_pair,
    load_tables,
    numeric_spot_check,
    parse_column,
    parse_tables,
    restriction_min,
    smallest_parameters,
    table1_instances,
    table1_spelling,
    tables_checksum,
    tables_disjoint,
    tables_text,
    tables_to_doc,
)

# frozen after a line-by-line comparison of every row with the source tables
TABLES_SHA256 = "0c1a07d9180c08638537c903e8c3b095e4f84af5cc6e59dd36b78aa955ad2185"

FAKE_ROW = {"row": "injected", "h": "C[2]", "hl": "C[1]", "restriction": "", "case": "C"}


def test_checksum_is_pinned():
    assert tables_checksum() == TABLES_SHA256


def test_row_counts():
    t = load_tables()
    assert len(t.table1) == 17
    assert len(t.table2) == 20
    assert [e.case for e in t.table2] == ["A"] * 10 + ["C"] * 8 + ["D"] * 2


def test_round_trip_is_bit_exact():
    text = tables_text()
    assert dump_tables(tables_to_doc(parse_tables(text))) == text


@pytest.mark.parametrize("expr,n,value", [("2n-1", 3, 5), ("n-2", 4, 2), ("n+1", 2, 3), ("7", None, 7), ("2n", 5, 10)])
def test_eval_param(expr, n, value):
    assert eval_param(expr, n) == value


def test_parse_column_keeps_compound_parameters():
    terms = parse_column("D[n+1] + R + A[1]")
    assert [t.family for t in terms] == ["D", "R", "A"]
    assert terms[0].parameter == "n+1"
    assert parse_column("Cbar[2]")[0].bar


@pytest.mark.parametrize("text,lo", [("", None), ("n>1", 2), ("n>2", 3), ("n>=4", 4)])
def test_restriction_min(text, lo):
    assert restriction_min(text) == lo


def test_bad_rows_are_rejected():
    with pytest.raises(TableError):
        entry_from_dict(2, {"row": 1, "h": "A[1]"})
    with pytest.raises(TableError):
        parse_tables('{"schema": "other", "version": 1}')


def test_instantiate_table1_row1():
    inst = instantiate(load_tables().row(1, 1), 2)
    raw = inst.raw
    assert (raw["g"], raw["h"], raw["l"], raw["hl"]) == ("A3", "C2", "A2", "C1")
    assert inst.types["h"] == parse_typesum("B2") and inst.types["hl"] == parse_typesum("A1")


def test_instantiate_table2_c_row():
    inst = instantiate(load_tables().row(2, 3), 3)
    assert (inst.raw["h"], inst.raw["hl"]) == ("C2⊕A1", "C2⊕R1")
    assert inst.pair == (parse_typesum("C2+A1"), parse_typesum("C2+T"))


def test_restriction_violation_raises():
    with pytest.raises(RestrictionError):
        instantiate(load_tables().row(1, 1), 1)
    with pytest.raises(RestrictionError):
        instantiate(load_tables().row(1, 6), None)


def test_instantiation_is_idempotent_under_normalization():
    for inst in table1_instances(6):
        for t in inst.types.values():
            assert parse_typesum(str(t)) == t


@pytest.mark.parametrize("h,s,expected", [
    ("C3+A1", "C3+T", True),
    ("C2", "C1", False),
    ("B4", "D4", True),
    ("A1+A1", "A1", True),  # diagonal, generated case
    ("C3+A1", "C3", True),  # R1 removed, generated case
    ("A2+T+A1", "A2+T+T", True),
    ("G2", "A2", False),
])
def test_bb_membership(h, s, expected):
    assert is_bb_pair(h, s) is expected


def test_bb_match_names_its_sources():
    cases = {m.case for m in bb_match("C3+A1", "C3")}
    assert "B" in cases
    flagged = bb_match("A1+T+A1", "A1+T")
    assert any(m.slope_dependent for m in flagged)


def test_table1_spelling_keeps_the_table_notation():
    assert table1_spelling("B2", "A1+T") == ("C2", "C1⊕T")
    assert table1_spelling("E8", "E7") is None


def test_tables_are_disjoint():
    rep = tables_disjoint(12)
    assert rep.disjoint and rep.pairs_checked == 85


def test_injected_row_collides_once():
    rep = tables_disjoint(12, extra_rows=[FAKE_ROW])
    assert len(rep.collisions) == 1
    assert rep.collisions[0]["pair"] == ["B2", "A1"]


def test_bound_below_every_restriction_checks_nothing():
    rep = tables_disjoint(1)
    assert rep.pairs_checked == 0 and rep.disjoint


def test_disjointness_grows_monotonically():
    counts = [tables_disjoint(n).pairs_checked for n in (2, 4, 8)]
    assert counts == sorted(counts) and counts[0] < counts[-1]


def test_spot_check_row1():
    res = numeric_spot_check(1, 2)
    assert res.status == "pass"
    assert res.dims == {"g": 15, "h": 10, "l": 8, "hl": 3}


def test_spot_check_row6_at_three():
    res = numeric_spot_check(6, 3)
    assert res.status == "pass"
    assert res.dims["hl"] == 8


def test_spinor_rows_are_skipped():
    for row in range(11, 18):
        assert numeric_spot_check(row).status == "skipped"
    assert "symbolic-only" in numeric_spot_check(11).detail


def test_spot_check_rejects_table2_rows():
    with pytest.raises(TableError):
        numeric_spot_check(load_tables().row(2, 1), 2)


@pytest.mark.slow
@pytest.mark.parametrize("row", CONSTRUCTIBLE_ROWS)
def test_spot_check_sweep(row):
    entry = load_tables().row(1, row)
    for n in smallest_parameters(entry, 3):
        assert numeric_spot_check(entry, n).status == "pass", (row, n)
