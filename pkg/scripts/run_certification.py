#!/usr/bin/env python3
"""Run the numerical certification suites and summarize the outcome.

Executes the Bessel-identity, dispersion, second-variation, and
quantitative-bound property suites on the default grids (or on a JSON grid
file), prints one line per suite, and optionally writes the full structured
report.  Exits 0 when every suite passes and 3 when any violation is found,
matching the CLI contract.
"""

import argparse
import json
import sys

from extrobin import parse_grid_file, run_suites


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--suite",
        default="all",
        choices=["bessel", "spectra", "variation", "quant", "all"],
    )
    parser.add_argument("--grid", default=None, help="JSON grid configuration file")
    parser.add_argument("--report", default=None, help="write the JSON report here")
    args = parser.parse_args()

    grid = parse_grid_file(args.grid) if args.grid else None
    reports = run_suites((args.suite,), grid)
    for report in reports:
        print(
            f"{report.suite}: {report.status} "
            f"({report.checks_run} checks, {len(report.violations)} violations; "
            f"{report.grid_summary})"
        )
        for violation in report.violations[:10]:
            print(f"  violation {violation.check_id}: {violation.to_dict()}")
    if args.report:
        with open(args.report, "w") as fh:
            json.dump([r.to_dict() for r in reports], fh, indent=2, sort_keys=True)
            fh.write("\n")
        print(f"report written to {args.report}")
    return 3 if any(r.status != "pass" for r in reports) else 0


if __name__ == "__main__":
    sys.exit(main())
