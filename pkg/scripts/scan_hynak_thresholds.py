#!/usr/bin/env python3
"""Scan the ellipsoid-versus-ball criterion across dimensions.

For each dimension the script reports the aspect-ratio threshold a*(n)
below which the elongated ellipsoid's strong-coupling truncation exceeds
the equal-volume ball's, together with criterion-gap samples g(a) on a
uniform grid.  Emits a CSV of gap samples and prints the threshold table.
"""

import argparse
import csv
import sys

from extrobin import hynak_check, hynak_threshold


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--dims", default="3,4,5,6,8,10", help="comma-separated dimensions")
    parser.add_argument("--samples", type=int, default=50, help="gap samples per dimension")
    parser.add_argument("--out", default="hynak_gap.csv", help="output CSV path ('-' for stdout)")
    args = parser.parse_args()

    dims = tuple(int(tok) for tok in args.dims.split(",") if tok.strip())
    print(f"{'n':>4}  {'threshold a*(n)':>18}")
    for n in dims:
        print(f"{n:>4}  {hynak_threshold(n):>18.12f}")

    sink = sys.stdout if args.out == "-" else open(args.out, "w", newline="")
    try:
        writer = csv.writer(sink, lineterminator="\n")
        writer.writerow(("n", "a", "gap", "holds"))
        for n in dims:
            for i in range(1, args.samples + 1):
                a = i / (args.samples + 1)
                result = hynak_check(n, a)
                writer.writerow((n, repr(a), repr(result.gap), str(result.holds).lower()))
    finally:
        if sink is not sys.stdout:
            sink.close()
    if args.out != "-":
        print(f"gap samples written to {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
