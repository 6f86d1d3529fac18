"""Command-line front end.

Verbs: ``check-algebra``, ``fat``, ``classify`` and ``tables {disjoint|list|spot-check}``.
Exit status: 0 fat or pass, 1 not fat or fail, 2 bad input, 3 undetermined.
Reports are deterministic for a fixed input and seed; ``--timing`` adds
wall-clock times, which are the only non-reproducible field.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import __version__
from .fatness import FAT, NOT_FAT, SearchConfig, decide_fat, verify_necessary_conditions
from .liealg import check_algebra
from .scenario import ScenarioError, algebras_in_file, load_scenario, read_json
from .subalg import SubalgebraError
from .tables import (
    N_MAX,
    RestrictionError,
    TableError,
    load_tables,
    numeric_spot_check,
    smallest_parameters,
    tables_checksum,
    tables_disjoint,
)

REPORT_VERSION = 1
EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_UNDETERMINED = 0, 1, 2, 3


class Report:
    def __init__(self, command: str):
        self.command = command
        self.lines: list[str] = []
        self.data: dict = {"report_version": REPORT_VERSION, "command": command}
        self.exit_code = EXIT_OK

    def line(self, text: str = "") -> None:
        self.lines.append(text)

    def render(self, fmt: str) -> str:
        self.data["exit_code"] = self.exit_code
        if fmt == "machine":
            return json.dumps(self.data, indent=2, sort_keys=True, ensure_ascii=False)
        return "\n".join(self.lines)


def _config(args) -> SearchConfig:
    seed = args.seed
    env = os.environ.get("FATLAB_SEED")
    if env is not None:
        try:
            seed = int(env)
        except ValueError as exc:
            raise ScenarioError(f"FATLAB_SEED must be an integer, got {env!r}") from exc
    return SearchConfig(seed=seed, tau_fat=args.tau_fat, tau_deg=args.tau_deg)


def cmd_check_algebra(args) -> Report:
    rep = Report("check-algebra")
    data = read_json(args.file)
    results = []
    for label, alg in algebras_in_file(data):
        audit = check_algebra(alg)
        status = "pass" if audit.ok else "fail"
        where = "" if audit.ok else f": {audit.identity} fails at indices {list(audit.indices)}"
        rep.line(f"{label} ({alg.name or 'unnamed'}, dim {alg.dim}): {status}{where}")
        results.append({"label": label, "name": alg.name, "dim": alg.dim, "status": status,
                        "identity": audit.identity, "indices": list(audit.indices) if audit.indices is not None else None})
        if not audit.ok:
            rep.exit_code = EXIT_FAIL
    rep.data["results"] = results
    rep.data["status"] = "pass" if rep.exit_code == EXIT_OK else "fail"
    return rep


def cmd_fat(args) -> Report:
    rep = Report("fat")
    config = _config(args)
    start = time.perf_counter()
    sc = load_scenario(args.file)
    pencil = sc.bundle.pencil()
    verdict = decide_fat(pencil, config)
    rep.line(f"scenario: {sc.name or args.file}")
    rep.line(f"k = {sc.k.name}, dim m = {pencil.m_dim}, dim l-perp = {pencil.u_dim}")
    rep.line(f"verdict: {verdict.status} ({verdict.certificate})")
    rep.line(f"reason: {verdict.reason}")
    if verdict.exact_witness is not None:
        rep.line("exact witness u: [" + ", ".join(str(x) for x in verdict.exact_witness) + "]")
    elif verdict.witness is not None and verdict.status != FAT:
        rep.line("witness u: [" + ", ".join(f"{x:.12g}" for x in verdict.witness) + "]")
    if verdict.margin is not None:
        rep.line(f"margin: {verdict.margin:.6e}")
    rep.data.update(scenario=sc.name, m_dim=pencil.m_dim, u_dim=pencil.u_dim, seed=config.seed,
                    verdict=verdict.to_dict(), status=verdict.status)
    if args.timing:
        rep.data["wall_time"] = time.perf_counter() - start
        rep.line(f"wall time: {rep.data['wall_time']:.3f} s")
    rep.exit_code = {FAT: EXIT_OK, NOT_FAT: EXIT_FAIL}.get(verdict.status, EXIT_UNDETERMINED)
    return rep


def cmd_classify(args) -> Report:
    rep = Report("classify")
    start = time.perf_counter()
    sc = load_scenario(args.file)
    report = verify_necessary_conditions(sc.bundle)
    rep.line(f"scenario: {sc.name or args.file}")
    for c in report.conditions:
        rep.line(f"({c.key}) {c.title}: {c.status} - {c.detail}")
    rep.line(report.summary)
    rep.data.update(scenario=sc.name, report=report.to_dict(), status="pass" if report.all_pass else "fail")
    if args.timing:
        rep.data["wall_time"] = time.perf_counter() - start
        rep.line(f"wall time: {rep.data['wall_time']:.3f} s")
    rep.exit_code = EXIT_OK if report.all_pass else EXIT_FAIL
    return rep


def cmd_tables(args) -> Report:
    rep = Report(f"tables {args.action}")
    tables = load_tables()
    rep.data["tables_sha256"] = tables_checksum()
    if args.action == "disjoint":
        res = tables_disjoint(args.nmax)
        rep.line(f"Table 1 pairs checked (n <= {res.n_max}): {res.pairs_checked}")
        rep.line(f"collisions with Table 2: {len(res.collisions)}")
        for c in res.collisions:
            rep.line(f"  {c['table1']} <-> {c['table2']}")
        rep.data.update(n_max=res.n_max, pairs_checked=res.pairs_checked, collisions=res.collisions,
                        status="pass" if res.disjoint else "fail")
        rep.exit_code = EXIT_OK if res.disjoint else EXIT_FAIL
    elif args.action == "list":
        rows = tables.table1 if args.table == 1 else tables.table2
        listed = []
        for e in rows:
            d = e.to_dict()
            listed.append(d)
            cols = " | ".join(f"{k}: {v}" for k, v in d.items() if k != "row")
            rep.line(f"{e.row:>2}  {cols}")
        rep.line(f"{len(rows)} rows in Table {args.table}")
        rep.data.update(table=args.table, rows=listed, count=len(rows), status="pass")
    else:
        entry = tables.row(1, args.row)
        n = args.n if args.n is not None else smallest_parameters(entry, 1)[0]
        res = numeric_spot_check(entry, n)
        rep.line(f"Table 1 row {res.row}" + (f", n = {res.n}" if res.n is not None else "") + f": {res.status}")
        rep.line(res.detail)
        rep.data.update(row=res.row, n=res.n, status=res.status, detail=res.detail, dims=res.dims)
        rep.exit_code = EXIT_FAIL if res.status == "fail" else EXIT_OK
    return rep


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed of the float search (FATLAB_SEED overrides)")
    common.add_argument("--tau-fat", type=float, default=SearchConfig.tau_fat)
    common.add_argument("--tau-deg", type=float, default=SearchConfig.tau_deg)
    common.add_argument("--nmax", type=int, default=N_MAX, help="parameter bound for table scans")
    common.add_argument("--format", choices=("text", "machine"), default="text")
    common.add_argument("--timing", action="store_true", help="include wall-clock times")

    parser = argparse.ArgumentParser(prog="fatlab", description="Decide fatness of homogeneous bundles.")
    parser.add_argument("--version", action="version", version=f"fatlab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-algebra", parents=[common], help="audit the algebras in a file")
    p.add_argument("file")
    p.set_defaults(func=cmd_check_algebra)

    p = sub.add_parser("fat", parents=[common], help="decide fatness of a scenario")
    p.add_argument("file")
    p.set_defaults(func=cmd_fat)

    p = sub.add_parser("classify", parents=[common], help="evaluate the necessary conditions")
    p.add_argument("file")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("tables", parents=[common], help="classification tables")
    p.add_argument("action", choices=("disjoint", "list", "spot-check"))
    p.add_argument("--table", type=int, choices=(1, 2), default=2)
    p.add_argument("--row", type=int, default=1)
    p.add_argument("--n", type=int, default=None)
    p.set_defaults(func=cmd_tables)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        rep = args.func(args)
    except (ScenarioError, SubalgebraError, TableError, RestrictionError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        if args.format == "machine":
            print(json.dumps({"report_version": REPORT_VERSION, "command": args.command,
                              "status": "input-error", "error": str(msg), "exit_code": EXIT_INPUT}, indent=2))
        else:
            print(f"error: {msg}", file=sys.stderr)
        return EXIT_INPUT
    print(rep.render(args.format))
    return rep.exit_code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
