"""Command-line front end.

    ree-sylow field-info --m 1
    ree-sylow group mul "Y(1;0;0)" "Y(0;1;0)"
    ree-sylow classes --m 1 --brute-force --format csv
    ree-sylow supertable --m 0 --format json
    ree-sylow verify --suite all --m 0

Exit status: 0 when every requested check passes, 1 on a failed check (a JSON
failure record goes to stderr), 2 on bad arguments.  Diagnostics are printed
but never change the exit status.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, field as dc_field
from importlib import resources
from typing import Any, Sequence

from . import classes as cl
from . import orbits as ob
from . import superchar as sc
from . import verify as vf
from .cyclo import Eisenstein
from .field import FieldError, make_field
from .group import ReeSylow

FORMATS = ("text", "csv", "json")


class CheckFailed(Exception):
    def __init__(self, command: str, failures: list[dict], output: bytes = b""):
        super().__init__(f"{len(failures)} check(s) failed")
        self.command = command
        self.failures = failures
        self.output = output

    def record(self) -> dict:
        return {"status": "fail", "command": self.command, "failures": self.failures}


# --- emission --------------------------------------------------------------------


@dataclass
class Table:
    columns: list[str]
    rows: list[list[Any]]
    title: str = ""
    notes: list[str] = dc_field(default_factory=list)


def _cell_text(x: Any) -> str:
    if isinstance(x, bool):
        return "yes" if x else "no"
    return str(x)


def _cell_json(x: Any) -> Any:
    if isinstance(x, Eisenstein):
        return x.to_json()
    return x


def to_json_bytes(obj: Any) -> bytes:
    return (json.dumps(obj, indent=2, ensure_ascii=False) + "\n").encode()


def emit_table(table: Table, fmt: str) -> bytes:
    """Serialise a table; the same table always gives the same bytes."""
    if fmt == "json":
        return to_json_bytes([{c: _cell_json(v) for c, v in zip(table.columns, row)} for row in table.rows])
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(table.columns)
        for row in table.rows:
            w.writerow([_cell_text(v) for v in row])
        return buf.getvalue().encode()
    cells = [table.columns] + [[_cell_text(v) for v in row] for row in table.rows]
    widths = [max(len(r[k]) for r in cells) for k in range(len(table.columns))]
    lines = [table.title] if table.title else []
    for i, r in enumerate(cells):
        lines.append("  ".join(s.ljust(w) for s, w in zip(r, widths)).rstrip())
        if i == 0:
            lines.append("  ".join("-" * w for w in widths))
    lines += table.notes
    return ("\n".join(lines) + "\n").encode()


def emit_record(record: dict, fmt: str) -> bytes:
    if fmt == "json":
        return to_json_bytes({k: _cell_json(v) for k, v in record.items()})
    return emit_table(Table(["key", "value"], [[k, v] for k, v in record.items()]), fmt)


def emit_report(reports: list[vf.SuiteReport], fmt: str) -> bytes:
    diags = [d for r in reports for d in r.diagnostics]
    if fmt == "json":
        return to_json_bytes(
            {
                "passed": all(r.passed for r in reports),
                "suites": [r.to_json() for r in reports],
                "diagnostics": diags,
            }
        )
    rows = []
    for r in reports:
        for c in r.checks:
            detail = json.dumps(c.detail, separators=(",", ":"))
            rows.append([r.suite, r.m, "PASS" if c.passed else "FAIL", c.name, detail])
    if fmt == "csv":
        return emit_table(Table(["suite", "m", "status", "check", "detail"], rows), "csv")
    lines = [f"{st} [{s} m={m}] {name} {detail}" for s, m, st, name, detail in rows]
    lines.append(f"diagnostics: {len(diags)}")
    lines += ["  " + json.dumps(d, separators=(",", ":")) for d in diags]
    status = "PASS" if all(r.passed for r in reports) else "FAIL"
    lines.append(f"{status}: {sum(len(r.checks) for r in reports)} checks in {len(reports)} suite(s)")
    return ("\n".join(lines) + "\n").encode()


def load_schema() -> dict:
    return json.loads(resources.files("ree_sylow").joinpath("schema/output.schema.json").read_text())


# --- table builders ----------------------------------------------------------------


def field_info(m: int) -> dict:
    F = make_field(m)
    return {
        "m": m,
        "q": F.q,
        "degree": F.degree,
        "theta": F.theta,
        "modulus": ",".join(str(c) for c in F.modulus),
        "generator_power_3theta": f"x^{3 * F.theta}",
    }


def classes_table(group: ReeSylow, brute_force: bool, jobs: int | None) -> Table:
    recs = cl.all_classes_bruteforce(group, jobs=jobs) if brute_force else cl.all_classes(group)
    rows = []
    for r in recs:
        kind, t = cl.superclass_key(r.representative)
        rows.append([group.format(r.representative), r.size, cl.superclass_label(group, kind, t)])
    how = "brute force" if brute_force else "closed form"
    return Table(["rep", "size", "superclass_label"], rows, f"{len(recs)} conjugacy classes, q={group.q} ({how})")


def superclasses_table(group: ReeSylow) -> Table:
    part = cl.superclass_partition(group)
    rows = []
    for p in part.parts:
        rows.append([p.label, p.kind, p.size, len({cl.class_of(group, x).representative for x in p.members})])
    return Table(["label", "kind", "size", "classes"], rows, f"{len(part)} superclasses, q={group.q}")


def orbits_table(group: ReeSylow, pattern: str | None) -> Table:
    if pattern is None:
        records = ob.classify_all(group)
    else:
        parts = pattern.split(";")
        if len(parts) != 3:
            raise ValueError(f"pattern must be a12;a13;a14, got {pattern!r}")
        A = ob.Pattern(*(group.field.parse(p) for p in parts))
        records = [ob.orbit_of(group, A)]
    fmt = group.field.format
    rows = [["(" + ";".join(fmt(a) for a in r.verge) + ")", r.family, r.size, r.stabilizer_order] for r in records]
    return Table(["verge", "family", "size", "stabilizer_order"], rows, f"{len(records)} orbit(s), q={group.q}")


def supertable_table(group: ReeSylow) -> Table:
    part = cl.superclass_partition(group)
    t = sc.build_supertable(group, part)
    rows = [[r.label] + [r.values[c] for c in t.columns] for r in t.rows]
    notes = ["sizes: " + " ".join(f"{c}={t.column_sizes[c]}" for c in t.columns)]
    return Table(["character"] + t.columns, rows, f"supercharacter table, q={group.q}", notes)


def chartable_table(group: ReeSylow) -> Table:
    from . import irrchar

    t = irrchar.build_char_table(group)
    rows = [[r.label] + vals for r, vals in zip(t.rows, t.cell_values(group))]
    notes = ["class sizes: " + " ".join(f"{lab}={c.size}" for lab, c in zip(t.column_labels, t.classes))]
    return Table(["character"] + t.column_labels, rows, "character table, q=3", notes)


# --- argument parsing -------------------------------------------------------------


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return n


def _nonneg(text: str) -> int:
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--m", type=_nonneg, default=0, help="field GF(3^(2m+1)); default 0")
    common.add_argument("--format", choices=FORMATS, default="text")
    common.add_argument("--samples", type=_positive, default=vf.DEFAULT_SAMPLES, help="sampled pairs for m >= 1")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--output", "-o", default=None, help="write here instead of stdout")
    common.add_argument("--jobs", type=_positive, default=None, help="worker processes (env REE_SYL_JOBS)")

    p = argparse.ArgumentParser(prog="ree-sylow", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("field-info", parents=[common], help="field parameters")

    g = sub.add_parser("group", parents=[common], help="group arithmetic on Y(t1;t3;t4)")
    g.add_argument("op", choices=("mul", "inv", "conj", "comm"))
    g.add_argument("x")
    g.add_argument("y", nargs="?")

    c = sub.add_parser("chevalley", parents=[common], help="matrix-model checks")
    c.add_argument("action", choices=("check",))

    o = sub.add_parser("orbits", parents=[common], help="U-orbits on the pattern space")
    o.add_argument("--pattern", default=None, help="a12;a13;a14")

    k = sub.add_parser("classes", parents=[common], help="conjugacy classes")
    k.add_argument("--brute-force", action="store_true")

    sub.add_parser("superclasses", parents=[common], help="the superclass partition")
    sub.add_parser("supertable", parents=[common], help="supercharacter table")

    t = sub.add_parser("chartable", parents=[common], help="irreducible characters (q = 3)")
    t.add_argument("--verify", action="store_true")

    v = sub.add_parser("verify", parents=[common], help="run verification suites")
    v.add_argument("--suite", action="append", choices=("all",) + vf.SUITES, default=None)
    return p


def _group_op(group: ReeSylow, args, parser) -> dict:
    try:
        x = group.parse(args.x)
        y = group.parse(args.y) if args.y is not None else None
    except (ValueError, FieldError) as exc:
        parser.error(str(exc))
    if args.op == "inv":
        if y is not None:
            parser.error("inv takes one element")
        z = group.inv(x)
    else:
        if y is None:
            parser.error(f"{args.op} takes two elements")
        z = {"mul": group.mul, "conj": group.conjugate, "comm": group.commutator}[args.op](x, y)
    rec = {"op": args.op, "x": group.format(x)}
    if y is not None:
        rec["y"] = group.format(y)
    rec["result"] = group.format(z)
    return rec


def _run(args, parser) -> bytes:
    fmt = args.format
    if args.command == "field-info":
        return emit_record(field_info(args.m), fmt)
    group = ReeSylow.from_m(args.m)
    if args.command == "group":
        return emit_record(_group_op(group, args, parser), fmt)
    if args.command == "chevalley":
        reports = [vf.suite_matrix(group, samples=args.samples, seed=args.seed)]
        return _checked("chevalley check", reports, fmt)
    if args.command == "orbits":
        try:
            return emit_table(orbits_table(group, args.pattern), fmt)
        except (ValueError, FieldError) as exc:
            parser.error(str(exc))
    if args.command == "classes":
        return emit_table(classes_table(group, args.brute_force, args.jobs), fmt)
    if args.command == "superclasses":
        return emit_table(superclasses_table(group), fmt)
    if args.command == "supertable":
        return emit_table(supertable_table(group), fmt)
    if args.command == "chartable":
        if group.q != 3:
            parser.error("chartable is only available for --m 0")
        if args.verify:
            return _checked("chartable --verify", [vf.suite_chartable(group)], fmt)
        return emit_table(chartable_table(group), fmt)
    if args.command == "verify":
        suites = args.suite or ["all"]
        names = list(vf.SUITES) if "all" in suites else list(dict.fromkeys(suites))
        reports = [vf.run_suite(n, args.m, args.samples, args.seed, args.jobs) for n in names]
        return _checked("verify", reports, fmt)
    parser.error(f"unknown command {args.command}")


def _checked(command: str, reports: list[vf.SuiteReport], fmt: str) -> bytes:
    out = emit_report(reports, fmt)
    failures = [f for r in reports for f in r.failures()]
    if failures:
        raise CheckFailed(command, failures, out)
    return out


def _write(data: bytes, path: str | None) -> None:
    if path is None:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
        return
    try:
        with open(path, "wb") as fh:
            fh.write(data)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.jobs is None and os.environ.get("REE_SYL_JOBS"):
        args.jobs = cl.default_jobs()
    try:
        _write(_run(args, parser), args.output)
    except CheckFailed as exc:
        _write(exc.output, args.output)
        sys.stderr.write(to_json_bytes(exc.record()).decode())
        return 1
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
