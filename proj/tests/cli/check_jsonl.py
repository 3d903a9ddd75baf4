#!/usr/bin/env python3
"""Run a dickeent table command in both formats and validate the output.

Checks: every JSON line validates against the schema, the CSV header lists the
schema's properties in order, CSV and JSON rows carry the same values, and a
second run is byte-identical.
"""
import argparse
import csv
import io
import json
import math
import subprocess
import sys

import jsonschema


def run(cli, fmt, args):
    proc = subprocess.run([cli, "--format", fmt, *args], capture_output=True)
    if proc.returncode != 0:
        sys.exit(f"{fmt} run failed ({proc.returncode}): {proc.stderr.decode()}")
    return proc.stdout


def same(csv_cell, value):
    if value is None:
        return csv_cell in ("", "inf", "-inf", "nan")
    if isinstance(value, bool):
        return csv_cell == ("true" if value else "false")
    if isinstance(value, (int, float)):
        return math.isclose(float(csv_cell), value, rel_tol=1e-15, abs_tol=0.0)
    return csv_cell == value


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--cli", required=True)
    ap.add_argument("--schema", required=True)
    ap.add_argument("--rows", type=int, help="expected row count")
    ap.add_argument("args", nargs=argparse.REMAINDER)
    opts = ap.parse_args()
    args = opts.args[1:] if opts.args[:1] == ["--"] else opts.args

    with open(opts.schema) as f:
        schema = json.load(f)
    validator = jsonschema.Draft202012Validator(schema)

    raw = run(opts.cli, "jsonl", args)
    if raw != run(opts.cli, "jsonl", args):
        sys.exit("jsonl output differs between identical runs")
    rows = [json.loads(line) for line in raw.decode().splitlines()]
    if not rows:
        sys.exit("no rows")
    for i, row in enumerate(rows):
        errors = sorted(validator.iter_errors(row), key=str)
        if errors:
            sys.exit(f"row {i}: {errors[0].message}")
    if opts.rows is not None and len(rows) != opts.rows:
        sys.exit(f"expected {opts.rows} rows, got {len(rows)}")

    text = run(opts.cli, "csv", args)
    if text != run(opts.cli, "csv", args):
        sys.exit("csv output differs between identical runs")
    table = list(csv.reader(io.StringIO(text.decode(), newline="")))
    header, body = table[0], table[1:]
    if header != list(schema["properties"]):
        sys.exit(f"csv header {header} does not match schema {list(schema['properties'])}")
    if len(body) != len(rows):
        sys.exit("csv and jsonl row counts differ")
    for i, (cells, row) in enumerate(zip(body, rows)):
        for name, cell in zip(header, cells):
            if not same(cell, row[name]):
                sys.exit(f"row {i} column {name}: csv {cell!r} vs json {row[name]!r}")
    print(f"ok: {len(rows)} rows")


if __name__ == "__main__":
    main()
