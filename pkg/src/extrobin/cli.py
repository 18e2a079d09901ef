"""Command-line interface for the exterior Robin eigenvalue toolkit.

Every subcommand emits plain text: a single record or a table, as JSON or
CSV, to stdout or to ``--out``.  Floats are printed as shortest
round-trip decimals (at most 17 significant digits), iteration orders are
fixed, and no timestamps or environment data enter the output, so
identical invocations produce byte-identical files.

Exit codes: 0 success, 1 input or constraint error, 2 solver failure or
no discrete eigenvalue, 3 verification violations.
"""

from __future__ import annotations

import csv as _csv
import io
import json
import math
import sys

import click

from .bessel import BesselOrder, gap_a, modified_bessel_K, ratio_f
from .counterexample import (
    EllipsoidSpec,
    compare_ellipsoid_ball,
    ellipsoid_hmax,
    equivalent_ball_radius,
    hynak_check,
    hynak_threshold,
    square_vs_disk,
)
from .errors import (
    ConstraintViolationError,
    DegenerateSpectrumError,
    DomainError,
    GridFileError,
    NoDiscreteEigenvalueError,
    RangeLimitError,
    SolverConvergenceError,
)
from .report import parse_grid_file, parse_spectrum_file
from .spectra import (
    BallGeometry,
    Z_MAX,
    Z_MIN,
    alpha_star,
    count_discrete,
    shifted_steklov,
    solution_from_lambda,
    solve_lambda,
)
from .variation import (
    PerturbationSpectrum,
    quant_bound,
    quant_ratio_check,
    second_variation,
)
from .verify import run_suites

EXIT_INPUT = 1
EXIT_SOLVER = 2
EXIT_VIOLATIONS = 3

_FORMAT_OPTION = click.option(
    "--format",
    "fmt",
    type=click.Choice(["json", "csv"]),
    default="json",
    show_default=True,
    help="output encoding",
)
_OUT_OPTION = click.option(
    "--out",
    type=click.Path(dir_okay=False, writable=True),
    default=None,
    help="write to this file instead of stdout",
)


def _fmt_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _write(text: str, out: str | None) -> None:
    if out is None:
        click.echo(text, nl=False)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _emit_record(record: dict, fmt: str, out: str | None) -> None:
    if fmt == "json":
        text = json.dumps(record, indent=2, sort_keys=True) + "\n"
    else:
        buf = io.StringIO()
        writer = _csv.writer(buf, lineterminator="\n")
        writer.writerow(record.keys())
        writer.writerow([_fmt_cell(v) for v in record.values()])
        text = buf.getvalue()
    _write(text, out)


def _emit_table(header: tuple[str, ...], rows: list[tuple], fmt: str, out: str | None) -> None:
    if fmt == "json":
        payload = [dict(zip(header, row)) for row in rows]
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    else:
        buf = io.StringIO()
        writer = _csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt_cell(v) for v in row])
        text = buf.getvalue()
    _write(text, out)


def _parse_int_list(text: str, flag: str) -> tuple[int, ...]:
    try:
        values = tuple(sorted({int(tok) for tok in text.split(",") if tok.strip()}))
    except ValueError as exc:
        raise click.UsageError(f"{flag} expects comma-separated integers: {exc}")
    if not values:
        raise click.UsageError(f"{flag} must name at least one value")
    return values


@click.group(name="extrobin")
def cli() -> None:
    """Principal Robin eigenvalue outside a ball.

    Dispersion solves, Steklov spectra, shape variations, asymptotic
    comparisons, and certified inequality suites.
    """


@cli.command(name="dispersion")
@click.option("--n", "n", type=int, required=True, help="space dimension, n >= 2")
@click.option("--radius", type=float, default=1.0, show_default=True, help="ball radius R")
@click.option("--alpha", type=float, default=None, help="Robin coupling (negative)")
@click.option("--lambda", "lam", type=float, default=None, help="prescribed eigenvalue (negative)")
@_FORMAT_OPTION
@_OUT_OPTION
def cmd_dispersion(n: int, radius: float, alpha: float | None, lam: float | None, fmt: str, out: str | None) -> None:
    """Solve the dispersion relation at one parameter point.

    Exactly one of --alpha / --lambda selects the direction: from the
    coupling to the eigenvalue (root solve) or back (closed form).
    """
    if (alpha is None) == (lam is None):
        raise click.UsageError("exactly one of --alpha / --lambda is required")
    geom = BallGeometry(n, radius)
    if alpha is not None:
        sol = solve_lambda(geom, alpha)
    else:
        sol = solution_from_lambda(geom, lam)
    record = {
        "n": n,
        "R": radius,
        "alpha": sol.alpha,
        "lambda": sol.lam,
        "z": sol.z,
        "K": sol.K_const,
        "a_n": sol.a_val,
        "u_boundary_sq": sol.u_boundary_sq,
        "alpha_star": alpha_star(geom),
    }
    _emit_record(record, fmt, out)


@cli.command(name="curve")
@click.option("--n", "dims_text", default="2,3,4,5", show_default=True, help="comma-separated dimensions")
@click.option("--radius", type=float, default=1.0, show_default=True, help="ball radius R")
@click.option("--lambda-min", type=float, required=True, help="most negative eigenvalue")
@click.option("--lambda-max", type=float, required=True, help="least negative eigenvalue")
@click.option("--points", type=int, default=200, show_default=True, help="rows per dimension block")
@_OUT_OPTION
def cmd_curve(dims_text: str, radius: float, lambda_min: float, lambda_max: float, points: int, out: str | None) -> None:
    """Emit dispersion-curve data as CSV: alpha against lambda per dimension.

    Header ``n,R,lambda,z,alpha``; rows ascend in lambda within each block
    and blocks ascend in dimension.
    """
    dims = _parse_int_list(dims_text, "--n")
    if points < 2:
        raise click.UsageError("--points must be >= 2")
    if not (lambda_min < lambda_max < 0.0):
        raise click.UsageError("range must satisfy lambda-min < lambda-max < 0")
    z_hi = radius * math.sqrt(-lambda_min)
    z_lo = radius * math.sqrt(-lambda_max)
    if z_hi > Z_MAX or z_lo < Z_MIN:
        raise click.UsageError(
            f"lambda range maps to z in [{z_lo:.3g}, {z_hi:.3g}], outside the "
            f"supported window [{Z_MIN:g}, {Z_MAX:g}]"
        )
    rows: list[tuple] = []
    for n in dims:
        BallGeometry(n, radius)
        for i in range(points):
            # Exact at both endpoints, unlike offset-plus-span stepping.
            lam = ((points - 1 - i) * lambda_min + i * lambda_max) / (points - 1)
            z = radius * math.sqrt(-lam)
            al = -ratio_f(n, z) / radius
            rows.append((n, radius, lam, z, al))
    _emit_table(("n", "R", "lambda", "z", "alpha"), rows, "csv", out)


@cli.command(name="steklov")
@click.option("--n", "n", type=int, required=True, help="space dimension, n >= 2")
@click.option("--radius", type=float, default=1.0, show_default=True, help="ball radius R")
@click.option("--alpha", type=float, required=True, help="Robin coupling (negative)")
@click.option("--kmax", type=int, default=10, show_default=True, help="largest harmonic degree")
@_FORMAT_OPTION
@_OUT_OPTION
def cmd_steklov(n: int, radius: float, alpha: float, kmax: int, fmt: str, out: str | None) -> None:
    """Tabulate the shifted Steklov levels of the solved exterior problem."""
    geom = BallGeometry(n, radius)
    sol = solve_lambda(geom, alpha)
    levels = shifted_steklov(sol, kmax)
    if fmt == "json":
        record = {
            "n": n,
            "R": radius,
            "alpha": alpha,
            "lambda": sol.lam,
            "alpha_star": alpha_star(geom),
            "count_with_multiplicity": count_discrete(geom, alpha) if n >= 3 else None,
            "count_distinct_degrees": (
                count_discrete(geom, alpha, with_multiplicity=False) if n >= 3 else None
            ),
            "levels": [{"k": l.k, "mu": l.mu, "multiplicity": l.dim} for l in levels],
        }
        _write(json.dumps(record, indent=2, sort_keys=True) + "\n", out)
    else:
        rows = [(l.k, l.mu, l.dim) for l in levels]
        _emit_table(("k", "mu", "multiplicity"), rows, "csv", out)


def _load_spectrum(path: str, kmax: int) -> PerturbationSpectrum:
    entries = parse_spectrum_file(path)
    return PerturbationSpectrum(entries=tuple(entries), k_max=kmax)


@cli.command(name="second-variation")
@click.option("--n", "n", type=int, required=True, help="space dimension, n >= 2")
@click.option("--radius", type=float, default=1.0, show_default=True, help="ball radius R")
@click.option("--alpha", type=float, required=True, help="Robin coupling (negative)")
@click.option("--spectrum", type=click.Path(dir_okay=False), required=True, help="perturbation coefficient file (lines 'k i b')")
@click.option("--kmax", type=int, default=64, show_default=True, help="degree cap for the spectrum")
@_FORMAT_OPTION
@_OUT_OPTION
def cmd_second_variation(n: int, radius: float, alpha: float, spectrum: str, kmax: int, fmt: str, out: str | None) -> None:
    """Second variation of the eigenvalue under a harmonic perturbation.

    The admissibility constraints are enforced: degree-0 coefficients
    violate volume preservation, degree-1 coefficients violate barycenter
    fixing.  A purely degree-1 spectrum is reported as the translational
    null mode.
    """
    geom = BallGeometry(n, radius)
    sol = solve_lambda(geom, alpha)
    spec = _load_spectrum(spectrum, kmax)
    rep = second_variation(sol, spec, allow_pure_translation=True)
    quant_holds: bool | None = None
    quant_margin: float | None = None
    notes = rep.notes
    if any(k >= 2 and b != 0.0 for k, _i, b in spec.entries):
        qc = quant_ratio_check(sol, spec)
        quant_holds = qc.holds
        quant_margin = qc.margin
    else:
        notes = notes + ("quant check skipped: no admissible modes of degree >= 2",)
    record = {
        "n": n,
        "R": radius,
        "alpha": alpha,
        "lambda": sol.lam,
        "u_boundary_sq": sol.u_boundary_sq,
        "lambda_ddot": rep.lambda_ddot,
        "S_ddot": rep.S_ddot,
        "Q": rep.Q_val,
        "quant_ratio": rep.quant_ratio,
        "quant_bound": rep.quant_bound,
        "quant_holds": quant_holds,
        "quant_margin": quant_margin,
        "notes": "; ".join(notes),
    }
    _emit_record(record, fmt, out)


@cli.command(name="quant-bound")
@click.option("--n", "n", type=int, required=True, help="space dimension, n >= 2")
@click.option("--radius", type=float, default=1.0, show_default=True, help="ball radius R")
@click.option("--alpha", type=float, required=True, help="Robin coupling (negative)")
@click.option("--spectrum", type=click.Path(dir_okay=False), default=None, help="optional spectrum to evaluate the ratio on")
@click.option("--kmax", type=int, default=64, show_default=True, help="degree cap for the spectrum")
@_FORMAT_OPTION
@_OUT_OPTION
def cmd_quant_bound(n: int, radius: float, alpha: float, spectrum: str | None, kmax: int, fmt: str, out: str | None) -> None:
    """Certified bound on lambda_ddot / S_ddot, optionally tested on a spectrum."""
    geom = BallGeometry(n, radius)
    sol = solve_lambda(geom, alpha)
    qb = quant_bound(sol)
    record = {
        "n": n,
        "R": radius,
        "alpha": alpha,
        "lambda": sol.lam,
        "ratio_bound": qb.ratio_bound,
        "deficit_constant": qb.deficit_constant,
    }
    if spectrum is not None:
        qc = quant_ratio_check(sol, _load_spectrum(spectrum, kmax))
        record["ratio"] = qc.ratio
        record["margin"] = qc.margin
        record["holds"] = qc.holds
    _emit_record(record, fmt, out)


@cli.group(name="counterexample")
def cmd_counterexample() -> None:
    """Asymptotic comparisons of non-ball domains against the ball."""


@cmd_counterexample.command(name="ellipsoid")
@click.option("--n", "n", type=int, required=True, help="space dimension, n >= 3")
@click.option("--a", "aspect", type=float, required=True, help="aspect parameter in (0, 1)")
@click.option("--alpha", type=float, required=True, help="Robin coupling (negative)")
@_FORMAT_OPTION
@_OUT_OPTION
def cmd_counterexample_ellipsoid(n: int, aspect: float, alpha: float, fmt: str, out: str | None) -> None:
    """Quadratic truncations: flattened ellipsoid against the equal-volume ball."""
    spec = EllipsoidSpec(n=n, a=aspect)
    comp = compare_ellipsoid_ball(spec, alpha)
    check = hynak_check(n, aspect)
    verdict = (
        "ellipsoid exceeds ball (asymptotic)"
        if comp.first_exceeds
        else "ball exceeds ellipsoid (asymptotic)"
    )
    record = {
        "n": n,
        "a": aspect,
        "alpha": alpha,
        "h_max_ellipsoid": ellipsoid_hmax(spec),
        "h_max_ball": -(aspect ** (1.0 / n)),
        "equivalent_ball_radius": equivalent_ball_radius(spec),
        "lambda_ellipsoid": comp.lambda_first,
        "lambda_ball": comp.lambda_second,
        "delta": comp.delta,
        "criterion_gap": check.gap,
        "threshold": hynak_threshold(n),
        "verdict": verdict,
        "note": comp.note,
    }
    _emit_record(record, fmt, out)


@cmd_counterexample.command(name="square")
@click.option("--alpha", type=float, required=True, help="Robin coupling (negative)")
@_FORMAT_OPTION
@_OUT_OPTION
def cmd_counterexample_square(alpha: float, fmt: str, out: str | None) -> None:
    """Quadratic truncations: square against the unit disk (planar case)."""
    comp = square_vs_disk(alpha)
    record = {
        "alpha": alpha,
        "lambda_square": comp.lambda_first,
        "lambda_disk": comp.lambda_second,
        "delta": comp.delta,
        "verdict": "disk exceeds square (asymptotic)",
        "note": comp.note,
    }
    _emit_record(record, fmt, out)


@cli.command(name="verify")
@click.option(
    "--suite",
    type=click.Choice(["bessel", "spectra", "variation", "quant", "all"]),
    default="all",
    show_default=True,
    help="which property suite to run",
)
@click.option("--grid", type=click.Path(dir_okay=False), default=None, help="JSON grid file overriding the defaults")
@_FORMAT_OPTION
@_OUT_OPTION
def cmd_verify(suite: str, grid: str | None, fmt: str, out: str | None) -> None:
    """Run property suites and report violations; exit 3 if any are found."""
    cfg = parse_grid_file(grid) if grid is not None else None
    reports = run_suites((suite,), cfg)
    if fmt == "json":
        text = json.dumps([r.to_dict() for r in reports], indent=2, sort_keys=True) + "\n"
    else:
        buf = io.StringIO()
        writer = _csv.writer(buf, lineterminator="\n")
        writer.writerow(
            ("record", "suite", "status", "checks_run", "check_id", "params", "lhs", "rhs", "margin")
        )
        for r in reports:
            writer.writerow(("summary", r.suite, r.status, r.checks_run, "", "", "", "", ""))
            for v in r.violations:
                writer.writerow(
                    (
                        "violation",
                        r.suite,
                        r.status,
                        r.checks_run,
                        v.check_id,
                        json.dumps(dict(v.params), sort_keys=True),
                        _fmt_cell(v.lhs),
                        _fmt_cell(v.rhs),
                        _fmt_cell(v.margin),
                    )
                )
        text = buf.getvalue()
    _write(text, out)
    if out is not None:
        for r in reports:
            click.echo(
                f"{r.suite}: {r.status} ({r.checks_run} checks, "
                f"{len(r.violations)} violations)"
            )
    if any(r.violations for r in reports):
        sys.exit(EXIT_VIOLATIONS)


@cli.command(name="bessel-table")
@click.option("--orders", default="0,1/2,1,3/2", show_default=True, help="comma-separated K orders (integers or half-integers)")
@click.option("--n", "dims_text", default="", help="comma-separated dimensions for ratio and gap columns")
@click.option("--zmin", type=float, default=1e-3, show_default=True, help="smallest argument")
@click.option("--zmax", type=float, default=700.0, show_default=True, help="largest argument")
@click.option("--points", type=int, default=50, show_default=True, help="log-spaced point count")
@_FORMAT_OPTION
@_OUT_OPTION
def cmd_bessel_table(orders: str, dims_text: str, zmin: float, zmax: float, points: int, fmt: str, out: str | None) -> None:
    """Dump scaled kernels e^z K_m(z) plus ratio and gap columns on a z grid."""
    try:
        order_list = [BesselOrder.parse(tok.strip()) for tok in orders.split(",") if tok.strip()]
    except DomainError as exc:
        raise click.UsageError(str(exc))
    if not order_list:
        raise click.UsageError("--orders must name at least one order")
    dims = _parse_int_list(dims_text, "--n") if dims_text else ()
    for n in dims:
        if n < 2:
            raise click.UsageError("--n dimensions must be >= 2")
    if not (0.0 < zmin < zmax <= 1e6):
        raise click.UsageError("need 0 < zmin < zmax <= 1e6")
    if not 2 <= points <= 100000:
        raise click.UsageError("--points must lie in [2, 100000]")
    header = (
        ("z",)
        + tuple(f"K_scaled_{o}" for o in order_list)
        + tuple(col for n in dims for col in (f"f_{n}", f"a_{n}"))
    )
    step = math.log(zmax / zmin) / (points - 1)
    rows: list[tuple] = []
    for i in range(points):
        z = zmin if i == 0 else zmax if i == points - 1 else zmin * math.exp(i * step)
        row: list = [z]
        for o in order_list:
            row.append(modified_bessel_K(o, z, scaled=True).mantissa)
        for n in dims:
            row.append(ratio_f(n, z))
            row.append(gap_a(n, z))
        rows.append(tuple(row))
    _emit_table(header, rows, fmt, out)


def main(argv: list[str] | None = None) -> None:
    """Entry point with the documented exit-code mapping."""
    try:
        cli.main(args=argv, prog_name="extrobin", standalone_mode=False)
    except click.exceptions.Exit as exc:
        sys.exit(exc.exit_code)
    except click.UsageError as exc:
        click.echo(f"error: {exc.format_message()}", err=True)
        sys.exit(EXIT_INPUT)
    except click.ClickException as exc:
        exc.show()
        sys.exit(EXIT_INPUT)
    except click.Abort:
        click.echo("aborted", err=True)
        sys.exit(EXIT_INPUT)
    except (DomainError, ConstraintViolationError, DegenerateSpectrumError, GridFileError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_INPUT)
    except (NoDiscreteEigenvalueError, RangeLimitError, SolverConvergenceError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_SOLVER)


if __name__ == "__main__":
    main()
