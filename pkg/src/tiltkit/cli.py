"""Command line front end: `tiltkit run <file.dsl>` and `tiltkit test-battery`.

Output is JSON by default (sorted keys, fixed separators, so identical inputs
produce byte-identical bytes); --pretty switches to a human-readable digest.
Exit codes: 0 success, 1 computation error, 2 parse error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .battery import run_battery
from .dsl import DslError, Limits, Session, run_text


def _emit_json(obj, stream):
    stream.write(json.dumps(obj, sort_keys=True, indent=2))
    stream.write("\n")


def _pretty_result(rec, stream):
    status = rec["status"].upper()
    stream.write(f"[{status}] {rec['command']}\n")
    if rec.get("error"):
        stream.write(f"    {rec['error']['code']}: {rec['error']['message']}\n")
        return
    payload = rec.get("payload", {})
    for key in sorted(payload):
        stream.write(f"    {key}: {json.dumps(payload[key], sort_keys=True)}\n")
    if rec.get("citations"):
        stream.write(f"    via: {', '.join(rec['citations'])}\n")


def cmd_run(args) -> int:
    try:
        with open(args.file, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"cannot read {args.file}: {exc}", file=sys.stderr)
        return 2
    limits = Limits(max_degree=args.max_degree, tower_depth=args.tower_depth,
                    resolution_length=args.resolution_length)
    session = Session(limits=limits)
    try:
        _, results = run_text(text, session)
    except DslError as exc:
        record = {"status": "parse-error", "message": str(exc),
                  "line": exc.line, "column": exc.column}
        if args.pretty:
            print(f"parse error: {exc}", file=sys.stderr)
        else:
            _emit_json(record, sys.stdout)
        return 2
    records = [r.to_record() for r in results]
    if args.pretty:
        for rec in records:
            _pretty_result(rec, sys.stdout)
    else:
        _emit_json(records, sys.stdout)
    return 1 if any(r["status"] == "error" for r in records) else 0


def cmd_battery(args) -> int:
    report = run_battery(seed=args.seed, max_degree=args.max_degree,
                         tower_depth=args.tower_depth)
    if args.pretty:
        for name, section in report["sections"].items():
            flag = "pass" if section["passed"] else "FAIL"
            print(f"[{flag}] {name}")
        print(f"overall: {'pass' if report['passed'] else 'FAIL'}")
    else:
        _emit_json(report, sys.stdout)
    return 0 if report["passed"] else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tiltkit",
        description="exact Koszul/grade/Thomason workbench over finitely "
                    "presented commutative rings")
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="execute a DSL session file")
    run_p.add_argument("file")
    run_p.add_argument("--pretty", action="store_true",
                       help="human-readable output instead of JSON")
    run_p.add_argument("--json", dest="json_out", action="store_true",
                       help="JSON output (the default)")
    run_p.add_argument("--max-degree", type=int, default=6,
                       help="graded-slice cutoff (default 6)")
    run_p.add_argument("--tower-depth", type=int, default=4,
                       help="tower truncation depth (default 4)")
    run_p.add_argument("--resolution-length", type=int, default=8,
                       help="largest allowed Ext/Tor index (default 8)")
    run_p.set_defaults(fn=cmd_run)

    bat_p = sub.add_parser("test-battery", help="run the verification batteries")
    bat_p.add_argument("--seed", type=int, default=0)
    bat_p.add_argument("--pretty", action="store_true")
    bat_p.add_argument("--max-degree", type=int, default=6)
    bat_p.add_argument("--tower-depth", type=int, default=4)
    bat_p.set_defaults(fn=cmd_battery)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
