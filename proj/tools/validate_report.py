#!/usr/bin/env python3
"""Validate a `farsa solve --output json` report against schemas/report.json."""

import argparse
import json
import sys

import jsonschema


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("schema")
    parser.add_argument("report")
    args = parser.parse_args()

    with open(args.schema, encoding="utf-8") as f:
        schema = json.load(f)
    with open(args.report, encoding="utf-8") as f:
        report = json.load(f)

    validator = jsonschema.Draft202012Validator(schema)
    errors = sorted(validator.iter_errors(report), key=lambda e: list(e.path))
    for err in errors:
        location = "/".join(str(p) for p in err.path) or "<root>"
        print(f"{args.report}: {location}: {err.message}", file=sys.stderr)
    if not errors and report["phi_iterations"] + report["beta_iterations"] > report["iterations"]:
        print(f"{args.report}: iteration counts are inconsistent", file=sys.stderr)
        return 1
    return 1 if errors else 0


if __name__ == "__main__":
    sys.exit(main())
