"""Audit of the embedded classification tables.

    python demos/table_audit.py

Lists every row, checks that no factorization pair is also a fat pair up to
rank 12, and builds the smallest instance of each constructible row.
"""

from fatlab.tables import (
    CONSTRUCTIBLE_ROWS,
    load_tables,
    numeric_spot_check,
    smallest_parameters,
    tables_checksum,
    tables_disjoint,
)

t = load_tables()
print(f"tables sha256 {tables_checksum()}: {len(t.table1)} factorization rows, {len(t.table2)} fat-pair rows")
rep = tables_disjoint(12)
print(f"{rep.pairs_checked} factorization pairs up to n = 12, {len(rep.collisions)} also fat")
for row in CONSTRUCTIBLE_ROWS:
    entry = t.row(1, row)
    n = smallest_parameters(entry, 1)[0]
    res = numeric_spot_check(entry, n)
    print(f"row {row:>2} n = {n}: {res.status} {res.dims}")
