#!/usr/bin/env python3
"""Run the full acceptance battery and write a JSON report.

Usage: python scripts/run_acceptance.py [--quick] [--out report.json]
"""

import argparse
import json
import sys

from kacmod.cli import _jsonable
from kacmod.suite import run_suite


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--quick", action="store_true")
    ap.add_argument("--out", default="report.json")
    args = ap.parse_args()
    results = run_suite(quick=args.quick)
    ok = all(r["pass"] for r in results)
    with open(args.out, "w") as fh:
        json.dump(_jsonable({"pass": ok, "results": results}), fh, indent=2)
    print(f"wrote {args.out}; overall: {'PASS' if ok else 'FAIL'}")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
