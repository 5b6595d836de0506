#!/usr/bin/env python3
"""Run the Gr(2,n) verification over a parameter grid and print a summary.

Each case subdivides the zero chart, checks the seven bounded cones and
their active sets, and reports fan size and wall-clock time.  Cases are
`n,d,l` triples; the default grid covers the reference set plus the n = 4
corner.

Example:
    python3 scripts/run_grassmann_sweep.py
    python3 scripts/run_grassmann_sweep.py --cases 6,2,1 --vol
"""

import argparse
import sys
import time

from mockfan.grassmann import GrassmannSpec, verify, vol_expression

DEFAULT_CASES = ["4,2,1", "4,3,1", "5,2,1", "5,2,2", "5,3,1", "6,2,1"]


def parse_case(text: str) -> GrassmannSpec:
    parts = text.split(",")
    if len(parts) != 3:
        raise SystemExit(f"bad case {text!r}: expected n,d,l")
    return GrassmannSpec(*(int(p) for p in parts))


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--cases", nargs="+", default=DEFAULT_CASES,
                    help="n,d,l triples (default: %(default)s)")
    ap.add_argument("--vol", action="store_true",
                    help="also print the signed class sum per case")
    args = ap.parse_args(argv)

    all_ok = True
    print(f"{'case':>10}  {'cones':>6}  {'bounded':>7}  {'time':>7}  status")
    for text in args.cases:
        spec = parse_case(text)
        start = time.monotonic()
        report = verify(spec)
        elapsed = time.monotonic() - start
        fan = report.result.projected_fan
        status = "PASS" if report.passed else "FAIL"
        all_ok &= report.passed
        print(f"{text:>10}  {len(fan):>6}  {len(fan.bounded_cones()):>7}  "
              f"{elapsed:>6.1f}s  {status}")
        if not report.passed:
            print(report.render())
        elif args.vol:
            print(f"           vol = {vol_expression(spec, report).render()}")
    return 0 if all_ok else 1


if __name__ == "__main__":
    sys.exit(main())
