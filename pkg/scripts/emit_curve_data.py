#!/usr/bin/env python3
"""Emit the coupling-versus-eigenvalue curve for the exterior unit ball.

Writes one CSV block per dimension with header ``n,R,lambda,z,alpha``,
rows ascending in lambda, suitable for direct plotting.  The default
configuration reproduces the reference figure: n in {2, 3, 4, 5}, R = 1,
lambda from -25 to -1e-6.
"""

import argparse
import csv
import sys
from dataclasses import dataclass

from extrobin import BallGeometry, solution_from_lambda


@dataclass(frozen=True)
class CurveConfig:
    dims: tuple[int, ...] = (2, 3, 4, 5)
    radius: float = 1.0
    lambda_min: float = -25.0
    lambda_max: float = -1e-6
    points: int = 400


def curve_rows(config: CurveConfig) -> list[tuple[int, float, float, float, float]]:
    rows = []
    m = config.points - 1
    for n in config.dims:
        geom = BallGeometry(n, config.radius)
        for i in range(config.points):
            lam = ((m - i) * config.lambda_min + i * config.lambda_max) / m
            sol = solution_from_lambda(geom, lam)
            rows.append((n, config.radius, lam, sol.z, sol.alpha))
    return rows


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--dims", default="2,3,4,5", help="comma-separated dimensions")
    parser.add_argument("--radius", type=float, default=1.0)
    parser.add_argument("--lambda-min", type=float, default=-25.0)
    parser.add_argument("--lambda-max", type=float, default=-1e-6)
    parser.add_argument("--points", type=int, default=400)
    parser.add_argument("--out", default="curve.csv", help="output CSV path ('-' for stdout)")
    args = parser.parse_args()

    config = CurveConfig(
        dims=tuple(int(tok) for tok in args.dims.split(",") if tok.strip()),
        radius=args.radius,
        lambda_min=args.lambda_min,
        lambda_max=args.lambda_max,
        points=args.points,
    )
    rows = curve_rows(config)
    sink = sys.stdout if args.out == "-" else open(args.out, "w", newline="")
    try:
        writer = csv.writer(sink, lineterminator="\n")
        writer.writerow(("n", "R", "lambda", "z", "alpha"))
        for n, radius, lam, z, alpha in rows:
            writer.writerow((n, repr(radius), repr(lam), repr(z), repr(alpha)))
    finally:
        if sink is not sys.stdout:
            sink.close()
    if args.out != "-":
        print(f"wrote {len(rows)} rows to {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
