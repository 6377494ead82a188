"""Command-line front end: verify, construct, enumerate, bounds, tables.

Exit codes: 0 success (for ``verify``, a string C-group; for ``tables``, an
exact match), 1 negative answer, 2 bad input, 3 search budget exhausted.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path
from typing import Sequence

from . import __version__
from .bounds import ImprimitiveParams, bound_report, imprimitive_rank_bound, sweep_csv, sweep_rows
from .cgroup import CGroupReport, InvolutionString, verify
from .constructions import REGISTRY, GroupFileError, construct, load_group_file, read_string_file
from .enumeration import (DEDUPE_MODES, DEFAULT_NODE_BUDGET, PREDICATES, PolytopeRecord, SearchSpec,
                          enumerate_string_cgroups)
from .group import PermGroup
from .perm import CycleParseError, format_cycles, parse_cycles
from .tables import TABLES

EXIT_OK, EXIT_NO, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3

ENV_NODE_BUDGET = "STRINGC_NODE_BUDGET"
ENV_TIME_BUDGET = "STRINGC_TIME_BUDGET"

CSV_FIELDS = ("degree", "rank", "schlafli", "group_order", "transitive", "primitive", "blocks",
              "generators", "equivalence_key")


class InputError(Exception):
    pass


# -- serialization -----------------------------------------------------------

def _blocks(report: CGroupReport):
    return None if report.blocks is None else report.blocks.as_lists()


def record_to_json(rec: PolytopeRecord) -> dict:
    r = rec.report
    return {
        "degree": r.degree,
        "rank": r.rank,
        "schlafli": list(r.schlafli),
        "group_order": r.group_order,
        "transitive": r.transitive,
        "primitive": r.primitive,
        "blocks": _blocks(r),
        "generators": rec.string.cycle_strings(),
        "equivalence_key": rec.canonical_key,
    }


def record_from_json(obj: dict) -> InvolutionString:
    """The generator string of a JSON record, re-parsed from cycle notation."""
    degree = int(obj["degree"])
    return InvolutionString(tuple(parse_cycles(c, degree) for c in obj["generators"]))


def report_to_json(report: CGroupReport, s: InvolutionString) -> dict:
    w = report.intersection_witness
    return {
        "degree": report.degree,
        "rank": report.rank,
        "string_c_group": report.is_string_c_group,
        "string_property": report.string_ok,
        "intersection_property": report.intersection_ok,
        "independent": report.independent,
        "schlafli": list(report.schlafli),
        "group_order": report.group_order,
        "transitive": report.transitive,
        "primitive": report.primitive,
        "blocks": _blocks(report),
        "generators": s.cycle_strings(),
        "string_witness": None if report.string_witness is None else list(report.string_witness),
        "intersection_witness": None if w is None else w.as_dict(),
    }


def _csv_row(d: dict) -> dict:
    row = dict(d)
    row["schlafli"] = "-".join(map(str, d["schlafli"]))
    row["blocks"] = "" if d["blocks"] is None else " ".join(
        "{" + ",".join(map(str, b)) + "}" for b in d["blocks"])
    row["generators"] = " ".join(d["generators"])
    row["primitive"] = "" if d["primitive"] is None else d["primitive"]
    return row


def records_csv(rows: Sequence[dict]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n", extrasaction="ignore")
    w.writeheader()
    for d in rows:
        w.writerow(_csv_row(d))
    return buf.getvalue()


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# -- input helpers -----------------------------------------------------------

def _int_list(values) -> list[int]:
    out = []
    for v in values or ():
        out.extend(int(x) for x in str(v).split(",") if x.strip())
    return out


def _construction(label: str, params: list[int]):
    try:
        return construct(label, params)
    except (ValueError, AssertionError) as exc:
        raise InputError(str(exc)) from None


def _string_from_args(args) -> InvolutionString:
    sources = [x for x in (args.file, args.construction, args.gens) if x]
    if len(sources) != 1:
        raise InputError("give exactly one of --file, --construction or --gens")
    try:
        if args.file:
            return read_string_file(args.file)
        if args.construction:
            c = _construction(args.construction, _int_list(args.param))
            if not isinstance(c.obj, InvolutionString):
                raise InputError(f"construction {args.construction!r} is a group, not a generator string")
            return c.obj
        if args.degree is None:
            raise InputError("--gens needs --degree")
        return InvolutionString(tuple(parse_cycles(g, args.degree) for g in args.gens))
    except (CycleParseError, GroupFileError, OSError) as exc:
        raise InputError(str(exc)) from None
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _scope_group(args, degree: int) -> PermGroup | None:
    if args.scope and args.scope_file:
        raise InputError("give at most one of --scope and --scope-file")
    if args.scope_file:
        try:
            group, _ = load_group_file(args.scope_file)
        except (GroupFileError, OSError) as exc:
            raise InputError(str(exc)) from None
    elif args.scope:
        group = _construction(args.scope, _int_list(args.param)).group
    else:
        return None
    if group.degree != degree:
        raise InputError(f"scope has degree {group.degree}, search degree is {degree}")
    return group


def _budget_defaults() -> tuple[int, float | None]:
    try:
        nodes = int(os.environ.get(ENV_NODE_BUDGET, DEFAULT_NODE_BUDGET))
        seconds = os.environ.get(ENV_TIME_BUDGET)
        return nodes, None if seconds in (None, "") else float(seconds)
    except ValueError as exc:
        raise InputError(f"bad budget in environment: {exc}") from None


def _load_config(path) -> dict:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"config {path}: {exc}") from None
    if not isinstance(data, dict):
        raise InputError(f"config {path}: expected a JSON object")
    known = {"degree", "rank_min", "rank_max", "predicates", "dedupe", "node_budget",
             "time_budget", "workers", "scope", "scope_params", "scope_file"}
    unknown = set(data) - known
    if unknown:
        raise InputError(f"config {path}: unknown keys {sorted(unknown)}")
    return data


def _search_spec(args) -> SearchSpec:
    nodes, seconds = _budget_defaults()
    cfg = _load_config(args.config) if args.config else {}
    degree = args.degree if args.degree is not None else cfg.get("degree")
    if degree is None:
        raise InputError("--degree is required")
    preds = set(cfg.get("predicates", ()))
    preds |= {p for p in PREDICATES if getattr(args, p.replace("-", "_"))}
    if args.scope is None and args.scope_file is None:
        args.scope = cfg.get("scope")
        args.scope_file = cfg.get("scope_file")
        if args.param is None and "scope_params" in cfg:
            args.param = [str(x) for x in cfg["scope_params"]]

    def pick(name, default):
        v = getattr(args, name)
        return v if v is not None else cfg.get(name, default)

    try:
        return SearchSpec(
            degree=int(degree),
            rank_min=pick("rank_min", 3),
            rank_max=pick("rank_max", None),
            scope=_scope_group(args, int(degree)),
            predicates=frozenset(preds),
            dedupe=pick("dedupe", DEDUPE_MODES[0]),
            node_budget=pick("node_budget", nodes),
            time_budget=pick("time_budget", seconds),
            workers=pick("workers", 1),
        )
    except ValueError as exc:
        raise InputError(str(exc)) from None


# -- commands ----------------------------------------------------------------

def cmd_verify(args, out) -> int:
    s = _string_from_args(args)
    report = verify(s, method=args.method)
    data = report_to_json(report, s)
    if args.format == "json":
        out.write(_dump(data))
    elif args.format == "csv":
        out.write(records_csv([{**data, "equivalence_key": ""}]))
    else:
        out.write(f"generators: {' '.join(data['generators'])}\n")
        out.write(f"rank {report.rank}, degree {report.degree}, order {report.group_order}\n")
        out.write(f"schlafli type: {report.schlafli}\n")
        out.write(f"string property: {report.string_ok}")
        out.write(f" (witness {report.string_witness})\n" if report.string_witness else "\n")
        out.write(f"intersection property: {report.intersection_ok}")
        w = report.intersection_witness
        out.write(f" (witness I={list(w.I)} J={list(w.J)} element {w.element})\n" if w else "\n")
        out.write(f"independent: {report.independent}\n")
        out.write(f"{report.transitivity}, {report.primitivity}\n")
        if report.blocks is not None:
            out.write(f"blocks: {report.blocks.as_lists()}\n")
    return EXIT_OK if report.is_string_c_group else EXIT_NO


def cmd_construct(args, out) -> int:
    params = _int_list(args.param)
    if args.n is not None:
        params = [args.n] + params
    c = _construction(args.label, params)
    if isinstance(c.obj, InvolutionString):
        gens = c.obj.cycle_strings()
    else:
        gens = [format_cycles(g) for g in c.obj.generators]
    data = {"label": c.label, "parameters": c.parameters, "degree": c.group.degree,
            "kind": "string" if isinstance(c.obj, InvolutionString) else "group",
            "generators": gens, "checks": c.checks}
    if args.format == "json":
        out.write(_dump(data))
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["index", "generator"])
        w.writerows(enumerate(gens))
    else:
        out.write(f"degree {data['degree']}\n")
        out.write(f"# name: {c.label} {' '.join(map(str, c.parameters))}".rstrip() + "\n")
        out.write(f"# order: {c.checks['order']}\n")
        for g in gens:
            out.write(g + "\n")
    return EXIT_OK


def cmd_enumerate(args, out) -> int:
    spec = _search_spec(args)
    res = enumerate_string_cgroups(spec)
    rows = [record_to_json(r) for r in res]
    if args.format == "json":
        out.write(_dump({"complete": res.complete, "records": rows}))
    elif args.format == "csv":
        out.write(records_csv(rows))
    else:
        for d in rows:
            out.write(f"rank {d['rank']}  order {d['group_order']}  type {d['schlafli']}  "
                      f"{' '.join(d['generators'])}\n")
        out.write(f"{len(rows)} classes{'' if res.complete else ' (incomplete)'}\n")
    if not res.complete:
        print("search budget exhausted; results are partial", file=sys.stderr)
        return EXIT_BUDGET
    return EXIT_OK


def _parse_sweep(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(x) for x in text.split(":"))
    except ValueError:
        raise InputError(f"--sweep expects LO:HI, got {text!r}") from None
    if not 4 <= lo <= hi:
        raise InputError("--sweep needs 4 <= LO <= HI")
    return lo, hi


def cmd_bounds(args, out) -> int:
    if (args.n is None) == (args.sweep is None):
        raise InputError("give exactly one of --n and --sweep")
    if args.sweep:
        lo, hi = _parse_sweep(args.sweep)
        if args.format == "json":
            out.write(_dump(list(sweep_rows(lo, hi))))
        elif args.format == "text":
            raise InputError("--sweep supports csv and json output")
        else:
            out.write(sweep_csv(lo, hi))
        return EXIT_OK
    if args.n < 4:
        raise InputError("--n must be at least 4")
    args.format = args.format or "json"
    data = bound_report(args.n).as_dict()
    data["imprimitive_rank_bounds"] = (
        [{"k": p.k, "m": p.m, "rank_bound": imprimitive_rank_bound(p)}
         for p in ImprimitiveParams.all_for(args.n)] if args.n >= 10 else [])
    if args.format == "json":
        out.write(_dump(data))
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["field", "value"])
        for k in sorted(data):
            w.writerow([k, json.dumps(data[k])])
    else:
        for k in sorted(data):
            out.write(f"{k}: {data[k]}\n")
    return EXIT_OK


def cmd_tables(args, out) -> int:
    nodes, seconds = _budget_defaults()
    node_budget = args.node_budget if args.node_budget is not None else nodes
    time_budget = args.time_budget if args.time_budget is not None else seconds
    if node_budget <= 0 or (time_budget is not None and time_budget <= 0):
        raise InputError("budgets must be positive")
    diff = TABLES[args.table](node_budget=node_budget, time_budget=time_budget, workers=args.workers)
    if args.format == "json":
        out.write(_dump(diff.as_dict()))
    else:
        out.write("\n".join(diff.lines()) + "\n")
    if not diff.complete:
        return EXIT_BUDGET
    return EXIT_OK if diff.passed else EXIT_NO


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="stringc", description="String C-groups of small degree.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--seed", type=int, default=None, help="reserved; no command is randomized")
    sub = p.add_subparsers(dest="command", required=True)

    def fmt(sp, default="text"):
        sp.add_argument("--format", choices=("json", "csv", "text"), default=default)
        return sp

    v = sub.add_parser("verify", help="check the string and intersection properties")
    v.add_argument("--file", help="string file: degree line, then one generator per line")
    v.add_argument("--construction", choices=sorted(REGISTRY))
    v.add_argument("--param", action="append", help="integer parameter(s) for --construction")
    v.add_argument("--gens", nargs="+", help="generators in cycle notation")
    v.add_argument("--degree", type=int)
    v.add_argument("--method", choices=("auto", "naive", "sectional"), default="auto")
    fmt(v)
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("construct", help="print a named generator string or group")
    c.add_argument("label", choices=sorted(REGISTRY))
    c.add_argument("--n", type=int, help="main integer parameter")
    c.add_argument("--param", action="append", help="further integer parameters")
    fmt(c)
    c.set_defaults(func=cmd_construct)

    e = sub.add_parser("enumerate", help="all string C-groups matching the filters")
    e.add_argument("--config", help="JSON file with search settings; flags override it")
    e.add_argument("--degree", type=int)
    e.add_argument("--rank-min", type=int)
    e.add_argument("--rank-max", type=int)
    for pred in sorted(PREDICATES):
        e.add_argument(f"--{pred}", action="store_true")
    e.add_argument("--scope", choices=sorted(REGISTRY), help="search inside a named group")
    e.add_argument("--scope-file", help="search inside the group in this file")
    e.add_argument("--param", action="append", help="integer parameter(s) for --scope")
    e.add_argument("--dedupe", choices=DEDUPE_MODES)
    e.add_argument("--node-budget", type=int)
    e.add_argument("--time-budget", type=float)
    e.add_argument("--workers", type=int)
    fmt(e, "json")
    e.set_defaults(func=cmd_enumerate)

    b = sub.add_parser("bounds", help="closed-form rank and order bounds")
    b.add_argument("--n", type=int)
    b.add_argument("--sweep", help="LO:HI range, emitted as CSV unless --format json")
    fmt(b, None)
    b.set_defaults(func=cmd_bounds)

    t = sub.add_parser("tables", help="recompute a classification table and diff it")
    t.add_argument("table", type=int, choices=sorted(TABLES))
    t.add_argument("--node-budget", type=int)
    t.add_argument("--time-budget", type=float)
    t.add_argument("--workers", type=int, default=1)
    fmt(t)
    t.set_defaults(func=cmd_tables)
    return p


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args, out)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
