"""Command-line interface: analyze groups, verify the corpus, list the catalog.

Exit codes: 0 all checks passed, 1 a mathematical violation was found,
2 input or usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from .classify import full_report
from .config import order_guard
from .corpus import build, builtin_catalog, file_group_id, load_group, spec_id
from .errors import NacentError

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT = 2

REPORT_FIELDS = ("group_id", "order", "center_order", "cent_count", "nacent_count",
                 "category", "case", "case_data", "consequences", "violations")


def _run_one(task: tuple[str, str, str, int | None]) -> dict:
    group_id, source, ref, max_order = task
    if source == "file":
        G = load_group(ref, max_order=max_order)
    else:
        G = build(ref, max_order=max_order)
    return full_report(G, group_id=group_id).to_dict()


def _run_all(tasks, parallelism: int) -> list[dict]:
    if parallelism <= 1 or len(tasks) <= 1:
        results = [_run_one(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=parallelism) as pool:
            results = list(pool.map(_run_one, tasks, chunksize=4))
    return sorted(results, key=lambda r: r["group_id"])


def _emit(records: list[dict], fmt: str, out_path: str | None) -> None:
    if fmt == "json":
        text = "".join(json.dumps(r, sort_keys=True) + "\n" for r in records)
    else:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=REPORT_FIELDS, lineterminator="\n")
        writer.writeheader()
        for r in records:
            row = {}
            for key in REPORT_FIELDS:
                value = r.get(key)
                if isinstance(value, (dict, list)):
                    value = json.dumps(value, sort_keys=True)
                row[key] = value
            writer.writerow(row)
        text = buf.getvalue()
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _summary_record(records: list[dict]) -> dict:
    categories: dict[str, int] = {}
    cases: dict[str, int] = {}
    violations = 0
    for r in records:
        categories[r["category"]] = categories.get(r["category"], 0) + 1
        if r["case"]:
            cases[r["case"]] = cases.get(r["case"], 0) + 1
        if r["violations"]:
            violations += 1
    return {
        "group_id": "summary",
        "order": 0,
        "center_order": 0,
        "cent_count": 0,
        "nacent_count": 0,
        "category": "summary",
        "case": None,
        "case_data": {
            "groups": len(records),
            "categories": categories,
            "cases": cases,
            "groups_with_violations": violations,
        },
        "consequences": {},
        "violations": [],
    }


def cmd_analyze(args) -> int:
    tasks = []
    try:
        for ref in args.inputs:
            if os.path.exists(ref):
                tasks.append((file_group_id(ref), "file", ref, args.max_order))
            else:
                tasks.append((spec_id(ref), "spec", ref, args.max_order))
        records = _run_all(tasks, args.parallelism)
    except NacentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    _emit(records, args.format, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        specs = builtin_catalog(args.max_order)
        tasks = [(spec_id(s), "spec", s.name, args.max_order) for s in specs]
        if args.corpus:
            # explicit corpus files are only subject to the global guard,
            # not the catalog sweep bound
            paths = sorted(p for p in os.listdir(args.corpus) if p.endswith(".json"))
            for p in paths:
                full = os.path.join(args.corpus, p)
                tasks.append((file_group_id(full), "file", full, None))
        records = _run_all(tasks, args.parallelism)
    except NacentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    summary = _summary_record(records)
    _emit(records + [summary], args.format, args.out)
    bad = summary["case_data"]["groups_with_violations"]
    if bad:
        print(f"verify: {bad} group(s) violated a checked claim", file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_catalog(args) -> int:
    try:
        specs = builtin_catalog(args.max_order)
    except NacentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    for s in specs:
        print(s.name)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nacent",
        description="Centralizer-structure analysis over finite-group Cayley tables")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="classify specific groups and report")
    p.add_argument("inputs", nargs="+", metavar="SPEC_OR_FILE",
                   help="construction spec like 'heisenberg(7)' or a group file")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", default=None)
    p.add_argument("--max-order", type=int, default=None)
    p.add_argument("--parallelism", type=int, default=1)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify", help="run all checks over the built-in catalog")
    p.add_argument("--max-order", type=int, default=200)
    p.add_argument("--parallelism", type=int, default=1)
    p.add_argument("--corpus", default=None, help="directory of extra group files")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("catalog", help="list the built-in constructions")
    p.add_argument("--max-order", type=int, default=200)
    p.set_defaults(func=cmd_catalog)
    return parser


def _check_run_config(args) -> str | None:
    limit = order_guard()
    max_order = getattr(args, "max_order", None)
    if max_order is not None and max_order > limit:
        return (f"--max-order {max_order} exceeds the global order guard {limit} "
                f"(raise it with NACENT_MAX_ORDER)")
    if getattr(args, "parallelism", 1) < 1:
        return "--parallelism must be at least 1"
    return None


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    problem = _check_run_config(args)
    if problem:
        print(f"error: {problem}", file=sys.stderr)
        return EXIT_INPUT
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
