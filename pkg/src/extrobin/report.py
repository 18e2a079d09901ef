"""Verification grids, violation records, and structured reports.

A verification suite walks a deterministic parameter grid, runs sign and
identity checks, and returns a ``VerificationReport``.  The report carries
every violated check as a ``Violation`` record; a report passes exactly
when its violation list is empty.  Grids come from built-in defaults or
from a small JSON file (see ``parse_grid_file``).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .errors import GridFileError

_DEFAULT_K_RANGE = (2, 25)
_DEFAULT_Z_GRID = (1e-3, 700.0, 200)
_DEFAULT_DIMS = (3, 4, 5, 6, 7, 8, 9, 10)
_DEFAULT_RADII = (0.2, 1.0, 5.0)
_DEFAULT_MULTIPLIERS = (1.01, 1.1, 1.5, 3.0, 10.0, 50.0)


@dataclass(frozen=True)
class GridConfig:
    """Deterministic parameter grid for one verification run.

    ``alpha_absolute`` and ``alpha_multipliers`` are mutually exclusive:
    absolute values are used as-is, multipliers scale the critical value
    ``alpha_star = -(n-2)/R`` and therefore require every dimension to be
    at least 3 and every multiplier to exceed 1 (so ``alpha < alpha_star``).
    ``k_range`` bounds the spherical-harmonic degrees checked and
    ``z_grid = (z_min, z_max, points)`` is the log-spaced argument grid
    used by the kernel-identity checks.
    """

    dims: tuple[int, ...] = _DEFAULT_DIMS
    radii: tuple[float, ...] = _DEFAULT_RADII
    alpha_absolute: tuple[float, ...] | None = None
    alpha_multipliers: tuple[float, ...] | None = _DEFAULT_MULTIPLIERS
    k_range: tuple[int, int] = _DEFAULT_K_RANGE
    z_grid: tuple[float, float, int] = _DEFAULT_Z_GRID

    def __post_init__(self) -> None:
        if (self.alpha_absolute is None) == (self.alpha_multipliers is None):
            raise GridFileError(
                "exactly one of alpha_absolute / alpha_multipliers must be set"
            )
        if not self.dims:
            raise GridFileError("dims must be non-empty")
        for n in self.dims:
            if not isinstance(n, int) or isinstance(n, bool) or n < 2:
                raise GridFileError(f"dims entries must be integers >= 2, got {n!r}")
        if not self.radii:
            raise GridFileError("radii must be non-empty")
        for r in self.radii:
            if not (isinstance(r, (int, float)) and math.isfinite(r) and r > 0):
                raise GridFileError(f"radii entries must be positive, got {r!r}")
        if self.alpha_multipliers is not None:
            if any(n == 2 for n in self.dims):
                raise GridFileError(
                    "alpha multipliers are relative to alpha_star = -(n-2)/R, "
                    "which vanishes for n = 2; give absolute alpha values instead"
                )
            for m in self.alpha_multipliers:
                if not (isinstance(m, (int, float)) and math.isfinite(m) and m > 1.0):
                    raise GridFileError(
                        f"alpha multipliers must exceed 1, got {m!r}"
                    )
        if self.alpha_absolute is not None:
            for a in self.alpha_absolute:
                if not (isinstance(a, (int, float)) and math.isfinite(a) and a < 0):
                    raise GridFileError(
                        f"absolute alpha values must be negative, got {a!r}"
                    )
        lo, hi = self.k_range
        if not (isinstance(lo, int) and isinstance(hi, int) and 2 <= lo <= hi <= 200):
            raise GridFileError(
                f"k_range must satisfy 2 <= lo <= hi <= 200, got {self.k_range!r}"
            )
        zmin, zmax, pts = self.z_grid
        if not (0 < zmin < zmax <= 700.0):
            raise GridFileError(
                f"z_grid needs 0 < min < max <= 700, got {self.z_grid!r}"
            )
        if not (isinstance(pts, int) and pts >= 2):
            raise GridFileError(f"z_grid point count must be >= 2, got {pts!r}")

    def alphas_for(self, n: int, R: float) -> tuple[float, ...]:
        """Robin parameters this grid prescribes at dimension ``n``, radius ``R``."""
        if self.alpha_absolute is not None:
            return self.alpha_absolute
        star = -(n - 2) / R
        return tuple(m * star for m in self.alpha_multipliers)

    def z_values(self) -> tuple[float, ...]:
        """Log-spaced argument grid with exact endpoints."""
        zmin, zmax, pts = self.z_grid
        step = math.log(zmax / zmin) / (pts - 1)
        values = [zmin * math.exp(i * step) for i in range(pts)]
        values[0], values[-1] = zmin, zmax
        return tuple(values)


def default_certify_grids() -> tuple[GridConfig, ...]:
    """Built-in grids for the negativity certificate.

    Dimensions 3..10 run on multipliers of ``alpha_star``; the planar case
    has ``alpha_star = 0`` and runs on a log-spaced absolute ladder instead.
    Planar points whose eigenvalue falls outside the supported z window are
    skipped and counted, not failed.
    """
    planar_alphas = tuple(-(50.0 * (1e-3 / 50.0) ** (i / 7.0)) for i in range(8))
    return (
        GridConfig(),
        GridConfig(dims=(2,), alpha_absolute=planar_alphas, alpha_multipliers=None),
    )


@dataclass(frozen=True)
class Violation:
    """One failed check: identifier, grid point, and the failed comparison.

    ``margin`` is positive by exactly the amount the check failed; the
    passing direction is ``margin <= 0``.
    """

    check_id: str
    params: tuple[tuple[str, float], ...]
    lhs: float
    rhs: float
    margin: float

    def to_dict(self) -> dict:
        return {
            "check_id": self.check_id,
            "params": dict(self.params),
            "lhs": self.lhs,
            "rhs": self.rhs,
            "margin": self.margin,
        }


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one verification suite over one grid."""

    suite: str
    grid_summary: str
    checks_run: int
    violations: tuple[Violation, ...]
    metrics: tuple[tuple[str, float], ...] = field(default=())

    @property
    def status(self) -> str:
        """``"pass"`` exactly when no check was violated."""
        return "pass" if not self.violations else "fail"

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "status": self.status,
            "grid_summary": self.grid_summary,
            "checks_run": self.checks_run,
            "metrics": dict(self.metrics),
            "violations": [v.to_dict() for v in self.violations],
        }


def _as_tuple_of(value, kind, key: str, cast=None):
    if not isinstance(value, list) or not value:
        raise GridFileError(f"grid file: {key!r} must be a non-empty list")
    out = []
    for item in value:
        if kind is int:
            if not isinstance(item, int) or isinstance(item, bool):
                raise GridFileError(f"grid file: {key!r} entries must be integers")
            out.append(item)
        else:
            if not isinstance(item, (int, float)) or isinstance(item, bool):
                raise GridFileError(f"grid file: {key!r} entries must be numbers")
            out.append(float(item))
    return tuple(out)


_GRID_KEYS = {"dims", "radii", "alpha", "k_range", "z_grid"}


def parse_grid_file(path: str) -> GridConfig:
    """Load a ``GridConfig`` from a JSON file.

    Schema (every key optional, defaults as in ``GridConfig``)::

        {
          "dims": [3, 4],
          "radii": [0.2, 1.0],
          "alpha": {"multipliers": [1.5, 3.0]}   (or {"absolute": [-3.0]}),
          "k_range": [2, 25],
          "z_grid": {"min": 1e-3, "max": 700.0, "points": 200}
        }

    Malformed structure raises ``GridFileError``.
    """
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise GridFileError(f"grid file: cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise GridFileError(f"grid file: invalid JSON in {path}: {exc}") from exc
    if not isinstance(raw, dict):
        raise GridFileError("grid file: top level must be a JSON object")
    unknown = set(raw) - _GRID_KEYS
    if unknown:
        raise GridFileError(f"grid file: unknown keys {sorted(unknown)}")

    kwargs: dict = {}
    if "dims" in raw:
        kwargs["dims"] = _as_tuple_of(raw["dims"], int, "dims")
    if "radii" in raw:
        kwargs["radii"] = _as_tuple_of(raw["radii"], float, "radii")
    if "alpha" in raw:
        alpha = raw["alpha"]
        if (
            not isinstance(alpha, dict)
            or len(alpha) != 1
            or next(iter(alpha)) not in ("absolute", "multipliers")
        ):
            raise GridFileError(
                'grid file: "alpha" must be {"absolute": [...]} or '
                '{"multipliers": [...]}'
            )
        key, values = next(iter(alpha.items()))
        if key == "absolute":
            kwargs["alpha_absolute"] = _as_tuple_of(values, float, "alpha.absolute")
            kwargs["alpha_multipliers"] = None
        else:
            kwargs["alpha_multipliers"] = _as_tuple_of(
                values, float, "alpha.multipliers"
            )
    if "k_range" in raw:
        pair = raw["k_range"]
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(isinstance(v, int) and not isinstance(v, bool) for v in pair)
        ):
            raise GridFileError('grid file: "k_range" must be a pair of integers')
        kwargs["k_range"] = (pair[0], pair[1])
    if "z_grid" in raw:
        zg = raw["z_grid"]
        if not isinstance(zg, dict) or set(zg) != {"min", "max", "points"}:
            raise GridFileError(
                'grid file: "z_grid" must be {"min": ..., "max": ..., "points": ...}'
            )
        if not all(
            isinstance(zg[k], (int, float)) and not isinstance(zg[k], bool)
            for k in ("min", "max")
        ) or not isinstance(zg["points"], int) or isinstance(zg["points"], bool):
            raise GridFileError('grid file: "z_grid" fields have wrong types')
        kwargs["z_grid"] = (float(zg["min"]), float(zg["max"]), zg["points"])

    if "alpha" not in raw and any(n == 2 for n in kwargs.get("dims", ())):
        raise GridFileError(
            "grid file: dims containing 2 require explicit absolute alpha values"
        )
    return GridConfig(**kwargs)


def parse_spectrum_file(path: str) -> list[tuple[int, int, float]]:
    """Load perturbation-mode coefficients from a plain text file.

    Each non-blank line reads ``k i b``: harmonic degree, index within the
    degree, coefficient.  ``#`` starts a comment (full line or trailing).
    Malformed lines raise ``GridFileError``.
    """
    entries: list[tuple[int, int, float]] = []
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise GridFileError(f"spectrum file: cannot read {path}: {exc}") from exc
    for lineno, line in enumerate(lines, start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        parts = body.split()
        if len(parts) != 3:
            raise GridFileError(
                f"spectrum file: line {lineno}: expected 'k i b', got {body!r}"
            )
        try:
            k = int(parts[0])
            i = int(parts[1])
            b = float(parts[2])
        except ValueError as exc:
            raise GridFileError(
                f"spectrum file: line {lineno}: {exc}"
            ) from exc
        if not math.isfinite(b):
            raise GridFileError(
                f"spectrum file: line {lineno}: coefficient must be finite"
            )
        entries.append((k, i, b))
    return entries
