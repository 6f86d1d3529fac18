"""Classification tables: factorizations of simple algebras and Berard-Bergery pairs.

The data lives in ``data/tables.json``.  Each column is a sum of terms joined
by `` + `` (spaces required, since parameters may contain ``+``):

``X[expr]`` / ``Xbar[expr]``
    a simple algebra of family ``X`` in ``A B C D E F G`` with rank given by a
    linear expression in ``n`` (``2n-1``, ``n+1``, ``3``); ``bar`` marks the
    lowest-root copy and is ignored structurally.
``T``, ``R``
    a one-dimensional centre.
``R1``, ``Ra``
    circle subalgebras (``Ra`` has an unspecified slope ``a``).

Table 1 rows carry ``g, h, i1, l, i2, hl, restriction``; Table 2 rows carry
``h, hl, restriction, case``.  Restrictions are ``""``, ``"n>k"`` or
``"n>=k"``.  The file is written one row per line by :func:`dump_tables`, so
loading and dumping reproduces it byte for byte.

Table 2 stores cases (A), (C) and (D).  Case (B) rows come from case (A) by
dropping ``R1`` from the second column; case (E) pairs are assembled from
two case-(B) pairs, or stand alone as the diagonal pair ``(A1 + A1, A1)``.
"""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Iterable

from .symbols import TypeSum, parse_typesum

SIMPLE_FAMILIES = "ABCDEFG"
TORUS_TOKENS = ("T", "R", "R1", "Ra")
N_MAX = 12


class TableError(ValueError):
    pass


class RestrictionError(TableError):
    pass


# -- parsing --------------------------------------------------------------------------

_LINEAR = re.compile(r"^(?:(\d*)n)?([+-]?\d+)?$")
_TERM = re.compile(r"^([A-G])(bar)?\[([^\]]+)\]$")


def eval_param(expr: str, n: int | None) -> int:
    """Evaluate ``a*n + b`` written as ``2n-1``, ``n``, ``n+1`` or ``3``."""
    s = expr.replace(" ", "")
    m = _LINEAR.match(s)
    if not s or not m or (m.group(1) is None and m.group(2) is None):
        raise TableError(f"bad parameter expression {expr!r}")
    b = int(m.group(2)) if m.group(2) else 0
    if m.group(1) is None:
        if "n" in s:
            raise TableError(f"bad parameter expression {expr!r}")
        return b
    if n is None:
        raise TableError(f"parameter {expr!r} needs a value of n")
    a = int(m.group(1)) if m.group(1) else 1
    return a * n + b


@dataclass(frozen=True)
class AlgebraType:
    family: str  # A..G, or one of TORUS_TOKENS
    parameter: str = ""
    bar: bool = False

    @property
    def is_torus(self) -> bool:
        return self.family in TORUS_TOKENS

    def rank(self, n: int | None) -> int:
        return 1 if self.is_torus else eval_param(self.parameter, n)

    def render(self, n: int | None) -> str:
        if self.is_torus:
            return self.family
        return f"{self.family}{'bar' if self.bar else ''}{self.rank(n)}"

    def spelling(self) -> str:
        if self.is_torus:
            return self.family
        return f"{self.family}{'bar' if self.bar else ''}[{self.parameter}]"


def parse_column(text: str) -> tuple[AlgebraType, ...]:
    terms = []
    for raw in re.split(r"\s+\+\s+", text.strip()):
        t = raw.strip()
        if t in TORUS_TOKENS:
            terms.append(AlgebraType(t))
            continue
        m = _TERM.match(t)
        if not m:
            raise TableError(f"cannot parse term {t!r}")
        terms.append(AlgebraType(m.group(1), m.group(3).replace(" ", ""), bool(m.group(2))))
    return tuple(terms)


def column_type(terms: Iterable[AlgebraType], n: int | None) -> TypeSum:
    simple, torus = [], 0
    for t in terms:
        if t.is_torus:
            torus += 1
        else:
            r = t.rank(n)
            if r < 0:
                raise TableError(f"{t.spelling()} has negative rank at n = {n}")
            simple.append((t.family, r))
    return TypeSum.build(simple, torus)


def column_text(terms: Iterable[AlgebraType], n: int | None) -> str:
    parts = [t.render(n) for t in terms if t.is_torus or t.rank(n) > 0]
    return "⊕".join(parts) if parts else "0"


_RESTRICTION = re.compile(r"^n(>=|>)(\d+)$")


def restriction_min(text: str) -> int | None:
    """Smallest admissible ``n``, or ``None`` for rows without a parameter."""
    s = text.replace(" ", "")
    if not s:
        return None
    m = _RESTRICTION.match(s)
    if not m:
        raise TableError(f"bad restriction {text!r}")
    k = int(m.group(2))
    return k + 1 if m.group(1) == ">" else k


# -- entries ----------------------------------------------------------------------------

TABLE1_FIELDS = ("row", "g", "h", "i1", "l", "i2", "hl", "restriction")
TABLE2_FIELDS = ("row", "h", "hl", "restriction", "case")


@dataclass(frozen=True)
class ClassificationEntry:
    table: int
    row: int | str
    columns: dict  # column name -> tuple of AlgebraType
    embeddings: tuple = ()  # (i1, i2) for Table 1
    restriction: str = ""
    case: str | None = None

    @property
    def parametric(self) -> bool:
        return restriction_min(self.restriction) is not None or any(
            "n" in t.parameter for terms in self.columns.values() for t in terms
        )

    def admissible(self, n: int | None) -> bool:
        lo = restriction_min(self.restriction)
        if lo is None:
            return True
        return n is not None and n >= lo

    def parameters(self, n_max: int) -> list:
        """Admissible ``n`` up to ``n_max`` (``[None]`` for constant rows)."""
        lo = restriction_min(self.restriction)
        if lo is None:
            return [None]
        return list(range(lo, n_max + 1))

    def to_dict(self) -> dict:
        d = {"row": self.row}
        if self.table == 1:
            d.update(g=_spell(self.columns["g"]), h=_spell(self.columns["h"]), i1=self.embeddings[0],
                     l=_spell(self.columns["l"]), i2=self.embeddings[1], hl=_spell(self.columns["hl"]),
                     restriction=self.restriction)
        else:
            d.update(h=_spell(self.columns["h"]), hl=_spell(self.columns["hl"]),
                     restriction=self.restriction, case=self.case)
        return d


def _spell(terms) -> str:
    return " + ".join(t.spelling() for t in terms)


def entry_from_dict(table: int, d: dict) -> ClassificationEntry:
    fields = TABLE1_FIELDS if table == 1 else TABLE2_FIELDS
    missing = [f for f in fields if f not in d]
    if missing:
        raise TableError(f"Table {table} row {d.get('row')} lacks {missing}")
    names = ("g", "h", "l", "hl") if table == 1 else ("h", "hl")
    cols = {c: parse_column(d[c]) for c in names}
    restriction_min(d["restriction"])
    return ClassificationEntry(
        table,
        d["row"],
        cols,
        (d["i1"], d["i2"]) if table == 1 else (),
        d["restriction"],
        d.get("case") if table == 2 else None,
    )


@dataclass(frozen=True)
class Tables:
    version: int
    table1: tuple
    table2: tuple

    def row(self, table: int, row) -> ClassificationEntry:
        for e in self.table1 if table == 1 else self.table2:
            if e.row == row:
                return e
        raise KeyError(f"Table {table} has no row {row}")


def dump_tables(doc: dict) -> str:
    """Canonical text: header keys, then one JSON object per row."""
    lines = ["{"]
    lines.append(f'  "schema": {json.dumps(doc["schema"])},')
    lines.append(f'  "version": {json.dumps(doc["version"])},')
    for key, last in (("table1", False), ("table2", True)):
        rows = doc[key]
        lines.append(f'  "{key}": [')
        for i, r in enumerate(rows):
            lines.append("    " + json.dumps(r, ensure_ascii=False) + ("," if i < len(rows) - 1 else ""))
        lines.append("  ]" + ("" if last else ","))
    lines.append("}")
    return "\n".join(lines) + "\n"


def tables_text() -> str:
    return resources.files("fatlab.data").joinpath("tables.json").read_text(encoding="utf-8")


def tables_checksum() -> str:
    return hashlib.sha256(tables_text().encode("utf-8")).hexdigest()


def parse_tables(text: str) -> Tables:
    doc = json.loads(text)
    if doc.get("schema") != "fatlab-classification-tables":
        raise TableError("not a classification table file")
    if doc.get("version") != 1:
        raise TableError(f"unsupported table version {doc.get('version')}")
    return Tables(
        doc["version"],
        tuple(entry_from_dict(1, d) for d in doc["table1"]),
        tuple(entry_from_dict(2, d) for d in doc["table2"]),
    )


def tables_to_doc(t: Tables) -> dict:
    return {
        "schema": "fatlab-classification-tables",
        "version": t.version,
        "table1": [e.to_dict() for e in t.table1],
        "table2": [e.to_dict() for e in t.table2],
    }


@lru_cache(maxsize=1)
def load_tables() -> Tables:
    return parse_tables(tables_text())


# -- instantiation ------------------------------------------------------------------------


@dataclass(frozen=True)
class Instance:
    entry: ClassificationEntry
    n: int | None
    raw: dict  # column -> rendered text such as "C2" or "C1⊕T"
    types: dict  # column -> TypeSum

    @property
    def pair(self) -> tuple[TypeSum, TypeSum]:
        return self.types["h"], self.types["hl"]

    def describe(self) -> str:
        where = f"row {self.entry.row}" + (f", n = {self.n}" if self.n is not None else "")
        return f"{where}: ({self.raw['h']}, {self.raw['hl']})"


def instantiate(entry: ClassificationEntry, n: int | None = None) -> Instance:
    if not entry.admissible(n):
        raise RestrictionError(f"Table {entry.table} row {entry.row} requires {entry.restriction}, got n = {n}")
    if restriction_min(entry.restriction) is None:
        n = None
    raw = {c: column_text(t, n) for c, t in entry.columns.items()}
    types = {c: column_type(t, n) for c, t in entry.columns.items()}
    return Instance(entry, n, raw, types)


# -- Berard-Bergery membership ---------------------------------------------------------------


@dataclass(frozen=True)
class BBMatch:
    case: str
    source: str  # human description of the generating rows
    slope_dependent: bool = False

    def describe(self) -> str:
        return f"case ({self.case}) {self.source}"


def _drop_r1(entry: ClassificationEntry, n) -> TypeSum | None:
    terms = entry.columns["hl"]
    if not any(t.family == "R1" for t in terms):
        return None
    kept, dropped = [], False
    for t in terms:
        if t.family == "R1" and not dropped:
            dropped = True
            continue
        kept.append(t)
    return column_type(kept, n)


def _base_instances(max_rank: int, extra: tuple = ()) -> list[Instance]:
    out = []
    for e in load_tables().table2 + tuple(extra):
        for n in e.parameters(max_rank + 2):
            inst = instantiate(e, n)
            if inst.types["h"].rank <= max_rank:
                out.append(inst)
    return out


def bb_catalogue(max_rank: int, extra_rows: tuple = ()) -> dict:
    """All Table 2 pairs with ``rank(h) <= max_rank``, generated cases included."""
    cat: dict = {}

    def add(key, m):
        cat.setdefault(key, []).append(m)

    b_pairs = []
    for inst in _base_instances(max_rank, extra_rows):
        e = inst.entry
        add(inst.pair, BBMatch(e.case or "?", inst.describe(), slope_dependent=any(
            t.family == "Ra" for t in e.columns["hl"])))
        if e.case == "A":
            smaller = _drop_r1(e, inst.n)
            if smaller is not None:
                b_pairs.append((inst, smaller))
                add((inst.types["h"], smaller), BBMatch("B", f"from {inst.describe()} without R1"))
    a1 = TypeSum.build([("A", 1)])
    add((a1 + a1, a1), BBMatch("E", "diagonal A1 in A1⊕A1"))
    for i, (p, sp) in enumerate(b_pairs):
        for q, sq in b_pairs[i:]:
            h = p.types["h"] + q.types["h"]
            if h.rank <= max_rank:
                add((h, sp + sq + a1), BBMatch("E", f"from {p.describe()} and {q.describe()}"))
    return cat


@lru_cache(maxsize=64)
def _cached_catalogue(max_rank: int) -> dict:
    return bb_catalogue(max_rank)


def _as_type(x) -> TypeSum:
    return x if isinstance(x, TypeSum) else parse_typesum(str(x))


def bb_match(h, s) -> list[BBMatch]:
    """Every Table 2 reading (including generated cases) that yields ``(h, s)``."""
    h, s = _as_type(h), _as_type(s)
    return list(_cached_catalogue(max(h.rank, 1)).get((h, s), ()))


def is_bb_pair(h, s) -> bool:
    return bool(bb_match(h, s))


def table1_instances(n_max: int = N_MAX) -> list[Instance]:
    out = []
    for e in load_tables().table1:
        for n in e.parameters(n_max):
            out.append(instantiate(e, n))
    return out


def table1_spelling(h, s, n_max: int = N_MAX) -> tuple[str, str] | None:
    """Table 1 spelling of the pair ``(h, h cap l)``, if it occurs there."""
    h, s = _as_type(h), _as_type(s)
    for inst in table1_instances(n_max):
        if inst.pair == (h, s):
            return inst.raw["h"], inst.raw["hl"]
    return None


@dataclass
class DisjointnessReport:
    n_max: int
    pairs_checked: int
    collisions: list

    @property
    def disjoint(self) -> bool:
        return not self.collisions


def tables_disjoint(n_max: int = N_MAX, extra_rows: Iterable[dict] = ()) -> DisjointnessReport:
    """Table 1 pairs ``(h, h cap l)`` that also occur as Berard-Bergery pairs."""
    extra = tuple(entry_from_dict(2, d) for d in extra_rows)
    # a bound below every restriction enumerates nothing, constant rows included
    lo = min((restriction_min(e.restriction) for e in load_tables().table1 if e.restriction), default=0)
    insts = table1_instances(n_max) if n_max >= lo else []
    max_rank = max((i.types["h"].rank for i in insts), default=0)
    cat = bb_catalogue(max_rank, extra) if insts else {}
    collisions = []
    for inst in insts:
        for m in cat.get(inst.pair, ()):
            collisions.append({"table1": inst.describe(), "table2": m.describe(),
                               "pair": [str(inst.pair[0]), str(inst.pair[1])]})
    return DisjointnessReport(n_max, len(insts), collisions)


# -- numeric spot checks ----------------------------------------------------------------------

CONSTRUCTIBLE_ROWS = tuple(range(1, 11))


def _complex_structures(n: int):
    """Real ``4n x 4n`` matrices of ``i`` and of ``z -> J conj(z)`` on ``C^2n``.

    Both commute with the realified ``sp(n)``; together they generate the
    ``sp(1)`` of right quaternion multiplication.
    """
    from . import _matrices as mx

    i_mat = mx.realify({(r, r): (0, 1) for r in range(2 * n)})
    j_mat = {}
    for r in range(n):
        for a, b, s in ((r, r + n, 1), (r + n, r, -1)):
            j_mat[(2 * a, 2 * b)] = s
            j_mat[(2 * a + 1, 2 * b + 1)] = -s
    return i_mat, j_mat


def build_table1_triple(row: int, n: int | None):
    """Concrete ``(g, h, l)`` for a constructible Table 1 row."""
    from . import _matrices as mx
    from .liealg import make_algebra
    from .subalg import embed, generated_subalgebra, rep_coordinates, span_subalgebra

    if row in (1, 2):
        g = make_algebra("su", [2 * n])
        h = embed("defining_sp_in_su", make_algebra("sp", [n]), g)
        if row == 1:
            l = embed("block_upper_left", make_algebra("su", [2 * n - 1]), g)
        else:
            l = embed("s_u_block", make_algebra("sum", [make_algebra("su", [2 * n - 1]), make_algebra("t", [1])]), g)
        return g, h, l
    if row in (3, 4, 5):
        g = make_algebra("so", [7])
        h = embed("block_upper_left", make_algebra("g2"), g)
        if row == 5:
            return g, h, embed("vector_so_in_so", make_algebra("so", [6]), g)
        so5 = embed("vector_so_in_so", make_algebra("so", [5]), g)
        if row == 3:
            return g, h, so5
        return g, h, span_subalgebra(g, list(so5.basis) + [g.unit(mx.so_index(7, 5, 6))])
    if row in (6, 7):
        g = make_algebra("so", [2 * n + 2])
        h = embed("vector_so_in_so", make_algebra("so", [2 * n + 1]), g)
        l = embed("realify", make_algebra("su" if row == 6 else "u", [n + 1]), g)
        return g, h, l
    if row in (8, 9, 10):
        g = make_algebra("so", [4 * n])
        h = embed("vector_so_in_so", make_algebra("so", [4 * n - 1]), g)
        sp = embed("realify", make_algebra("sp", [n]), g)
        if row == 8:
            return g, h, sp
        i_mat, j_mat = _complex_structures(n)
        i_vec = rep_coordinates(g, mx.realify_real(i_mat))
        if row == 9:
            return g, h, span_subalgebra(g, list(sp.basis) + [i_vec])
        j_vec = rep_coordinates(g, mx.realify_real(j_mat))
        sp1 = generated_subalgebra(g, [i_vec, j_vec])
        return g, h, span_subalgebra(g, list(sp.basis) + list(sp1.basis))
    raise TableError(f"Table 1 row {row} is not constructible")


@dataclass
class SpotCheck:
    row: int
    n: int | None
    status: str  # pass | fail | skipped
    detail: str
    dims: dict | None = None


def numeric_spot_check(entry: ClassificationEntry | int, n: int | None = None) -> SpotCheck:
    """Build the row's algebras and compare the factorization with the table."""
    from .roots import identify
    from .subalg import intersect, is_factorization

    if isinstance(entry, int):
        entry = load_tables().row(1, entry)
    if entry.table != 1:
        raise TableError("spot checks apply to Table 1 rows")
    inst = instantiate(entry, n)
    if entry.row not in CONSTRUCTIBLE_ROWS:
        return SpotCheck(entry.row, inst.n, "skipped", "symbolic-only (spinor embedding)")
    g, h, l = build_table1_triple(entry.row, inst.n)
    meet = intersect(h, l)
    found = identify(meet)
    dims = {"g": g.dim, "h": h.dim, "l": l.dim, "hl": meet.dim}
    expected = {c: inst.types[c].dim for c in ("g", "h", "l", "hl")}
    problems = []
    if not is_factorization(g, h, l):
        problems.append("g != h + l")
    for c in expected:
        if dims[c] != expected[c]:
            problems.append(f"dim {c} = {dims[c]}, table gives {expected[c]}")
    if found != inst.types["hl"]:
        problems.append(f"h cap l has type {found}, table gives {inst.types['hl']}")
    if problems:
        return SpotCheck(entry.row, inst.n, "fail", "; ".join(problems), dims)
    return SpotCheck(entry.row, inst.n, "pass", f"g = h + l with h cap l of type {found}", dims)


def smallest_parameters(entry: ClassificationEntry, count: int = 2) -> list:
    lo = restriction_min(entry.restriction)
    return [None] if lo is None else list(range(lo, lo + count))
