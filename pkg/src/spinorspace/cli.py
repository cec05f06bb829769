"""Command-line interface: ``spinorspace {sample,residuals,transport,convert,check}``.

Exit codes: 0 success, 1 invalid input, 2 numerical failure (singular
points, paths through the axis).
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import math
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import charts, checks
from .algebra import Spinor
from .calculus import Model, cr_residual_eta, cr_residual_xi
from .errors import SingularPointError, ValidationError
from .model_map import eta_to_xi, xi_to_eta
from .pseudo_model import (
    BranchContext,
    GammaMode,
    RegionTag,
    classify_region,
    xi_from_pseudo,
)
from .proper_model import eta_from_proper
from .transport import Path, transport_spinor

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_NUMERICAL = 2

TOL_ENV = "SPINORSPACE_TOL"

CHARTS = {
    "cartesian": None,
    "cylpar": charts.ChartId.CYLPAR,
    "parabolic": charts.ChartId.PARABOLIC,
    "spherical": charts.ChartId.SPHERICAL,
}
VARIANTS = {
    "vector": charts.DomainVariant.VECTOR,
    "extended": charts.DomainVariant.EXTENDED,
    "gprime": charts.DomainVariant.GPRIME,
    "gdoubleprime": charts.DomainVariant.GDOUBLEPRIME,
}
GAMMA_MODES = {
    "vector": GammaMode.PRINCIPAL_VECTOR,
    "extended": GammaMode.PRINCIPAL_EXTENDED,
    "lift": GammaMode.REAL_LIFT,
}
GRID_NAMES = {
    None: (("x1",), ("x2",), ("x3",)),
    charts.ChartId.SPHERICAL: (("y1", "r"), ("y2", "theta"), ("y3", "phi")),
}
CURVILINEAR_NAMES = (("y1",), ("y2",), ("y3",))
SAMPLE_COLUMNS = ["y1", "y2", "y3", "x1", "x2", "x3", "sheet", "re1", "im1", "re2", "im2"]
RESIDUAL_COLUMNS = ["x1", "x2", "x3", "status", "D1", "D2", "D3", "D4"]
TRANSPORT_COLUMNS = ["winding", "gamma_end", "re1", "im1", "re2", "im2", "sign_flip"]


class UsageError(Exception):
    """Bad command line; reported with exit code 1."""


@dataclass(frozen=True)
class RunConfig:
    tolerance: float = checks.DEFAULT_TOL
    axis_tolerance: float = 1e-12
    mute_angle: float = 0.0
    gamma_mode: GammaMode = GammaMode.PRINCIPAL_VECTOR
    output_format: str = "csv"
    seed: int = checks.DEFAULT_SEED

    def __post_init__(self):
        if not (self.tolerance > 0 and self.axis_tolerance > 0):
            raise ValidationError("tolerances must be positive")

    def context(self) -> BranchContext:
        return BranchContext(self.mute_angle, self.gamma_mode, self.axis_tolerance)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _default_tol() -> float:
    raw = os.environ.get(TOL_ENV)
    if raw is None:
        return checks.DEFAULT_TOL
    try:
        return float(raw)
    except ValueError:
        raise UsageError(f"{TOL_ENV}={raw!r} is not a number") from None


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--gamma-convention", choices=GAMMA_MODES, default="vector")
    p.add_argument("--mute-gamma", type=float, default=0.0, help="angle used on the x3 axis")
    p.add_argument("--axis-tol", type=float, default=1e-12)
    p.add_argument("--tol", type=float, default=None, help=f"tolerance (default ${TOL_ENV} or 1e-9)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None, help="output file (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="spinorspace", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("sample", help="evaluate a spinor field on a grid")
    p.add_argument("--model", choices=("pseudo", "proper"), default="pseudo")
    p.add_argument("--chart", choices=CHARTS, default="cartesian")
    p.add_argument("--variant", choices=VARIANTS, default="extended")
    p.add_argument("--sheet", type=int, choices=(1, 2), default=1, help="sheet for Cartesian grids")
    p.add_argument("--grid", required=True, help='e.g. "x1=-1:1:41,x2=-1:1:41,x3=0:0:1"')
    _common(p)

    p = sub.add_parser("residuals", help="Cauchy-Riemann residuals on a Cartesian grid")
    p.add_argument("--model", choices=("pseudo", "proper"), default="pseudo")
    p.add_argument("--grid", required=True)
    _common(p)

    p = sub.add_parser("transport", help="continue a spinor along a path file")
    p.add_argument("--model", choices=("pseudo", "proper"), default="pseudo")
    p.add_argument("--path", required=True, help='JSON {"points": [[x1,x2,x3], ...], "closed": bool}')
    _common(p)

    p = sub.add_parser("convert", help="map spinors between models or spherical domains")
    p.add_argument("--to", choices=("xi", "eta"), help="target model for --spinor")
    p.add_argument("--spinor", help="re1,im1,re2,im2")
    p.add_argument("--point", help="r,theta,phi of a spherical chart point")
    p.add_argument("--variant", choices=VARIANTS, default="extended", help="domain of --point")
    p.add_argument("--target", choices=VARIANTS, help="domain to convert --point into")
    _common(p)

    p = sub.add_parser("check", help="run the invariant suite")
    p.add_argument("--suite", choices=(*checks.SUITES, "all"), default="all")
    p.add_argument("--seed", type=int, default=checks.DEFAULT_SEED)
    _common(p)
    return parser


def parse_grid(text: str, chart) -> list[np.ndarray]:
    """Parse ``name=start:stop:count,...`` into three coordinate arrays."""
    names = GRID_NAMES.get(chart, CURVILINEAR_NAMES)
    axes: dict[int, np.ndarray] = {}
    for item in filter(None, (s.strip() for s in text.split(","))):
        name, sep, rng = item.partition("=")
        slot = next((i for i, alias in enumerate(names) if name.strip() in alias), None)
        if not sep or slot is None:
            raise UsageError(f"bad grid entry {item!r}; expected one of {[a[0] for a in names]}")
        if slot in axes:
            raise UsageError(f"coordinate {name!r} given twice")
        parts = rng.split(":")
        if len(parts) != 3:
            raise UsageError(f"bad range {rng!r}; expected start:stop:count")
        try:
            start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
        except ValueError:
            raise UsageError(f"bad range {rng!r}") from None
        if count < 1 or not (math.isfinite(start) and math.isfinite(stop)):
            raise UsageError(f"range {rng!r} must have finite bounds and a positive count")
        axes[slot] = np.linspace(start, stop, count)
    if len(axes) != 3:
        raise UsageError("grid must specify all three coordinates")
    return [axes[i] for i in range(3)]


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def _jsonable(value):
    if isinstance(value, (np.floating,)):
        return float(value)
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, list):
        return [_jsonable(v) for v in value]
    return value


def render(rows: list[dict], columns: list[str], fmt: str) -> str:
    if fmt == "json":
        records = [{c: _jsonable(row.get(c)) for c in columns if c in row} for row in rows]
        return json.dumps(records, allow_nan=False) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt(row.get(c)) for c in columns])
    return buf.getvalue()


def _spinor_cells(s: Spinor) -> dict:
    return {"re1": s.c1.real, "im1": s.c1.imag, "re2": s.c2.real, "im2": s.c2.imag}


def _config(args) -> RunConfig:
    tol = args.tol if args.tol is not None else _default_tol()
    try:
        return RunConfig(tol, args.axis_tol, args.mute_gamma, GAMMA_MODES[args.gamma_convention], args.format)
    except ValidationError as exc:
        raise UsageError(str(exc)) from None


def run_sample(args, cfg: RunConfig) -> tuple[list[dict], list[str]]:
    chart = CHARTS[args.chart]
    ctx = cfg.context()
    grid = parse_grid(args.grid, chart)
    model = Model(args.model)
    rows = []
    for y in itertools.product(*grid):
        y = tuple(float(c) for c in y)
        if chart is None:
            x = np.array(y)
            field = xi_from_pseudo if model is Model.XI else eta_from_proper
            s = field(x, ctx, sheet=args.sheet)
            sheet = args.sheet if ctx.gamma_mode is not GammaMode.PRINCIPAL_VECTOR else 1
        else:
            p = charts.ChartPoint(chart, *y, VARIANTS[args.variant])
            x = charts.to_cartesian(p)
            s = (charts.xi_in_chart if model is Model.XI else charts.eta_in_chart)(p, ctx)
            sheet = charts.sheet_of(p)
        row = {"y1": y[0], "y2": y[1], "y3": y[2], "x1": x[0], "x2": x[1], "x3": x[2], "sheet": sheet}
        row.update(_spinor_cells(s))
        rows.append(row)
    return rows, SAMPLE_COLUMNS


_SINGULAR = (RegionTag.AXIS_PLUS, RegionTag.AXIS_MINUS, RegionTag.ORIGIN)


def run_residuals(args, cfg: RunConfig) -> tuple[list[dict], list[str]]:
    ctx = cfg.context()
    grid = parse_grid(args.grid, None)
    model = Model(args.model)
    rows = []
    for x in itertools.product(*grid):
        x = tuple(float(c) for c in x)
        row = {"x1": x[0], "x2": x[1], "x3": x[2]}
        if classify_region(x, ctx) in _SINGULAR:
            row["status"] = "singular"
        else:
            r = cr_residual_xi(x, ctx) if model is Model.XI else cr_residual_eta(x, None, ctx)
            row.update(status="ok", D1=r.D1, D2=r.D2, D3=r.D3, D4=r.D4)
        rows.append(row)
    return rows, RESIDUAL_COLUMNS


def load_path(filename: str) -> Path:
    try:
        with open(filename, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read path file: {exc}") from None
    if not isinstance(data, dict) or "points" not in data:
        raise UsageError('path file must be an object with a "points" list')
    closed = data.get("closed", False)
    if not isinstance(closed, bool):
        raise UsageError('"closed" must be true or false')
    return Path(data["points"], closed)


def run_transport(args, cfg: RunConfig) -> tuple[list[dict], list[str]]:
    path = load_path(args.path)
    res = transport_spinor(path, Model(args.model), cfg.context())
    cells = _spinor_cells(res.final)
    if cfg.output_format == "json":
        record = {"gamma_end": res.gamma_end, "final": list(cells.values()), "sign_flip": res.sign_flip}
        if res.winding is not None:
            record = {"winding": res.winding, **record}
        return [record], ["winding", "gamma_end", "final", "sign_flip"]
    row = {"winding": res.winding, "gamma_end": res.gamma_end, "sign_flip": res.sign_flip, **cells}
    return [row], TRANSPORT_COLUMNS


def _floats(text: str, count: int, what: str) -> list[float]:
    try:
        values = [float(v) for v in text.split(",")]
    except ValueError:
        raise UsageError(f"{what} must be {count} comma-separated numbers") from None
    if len(values) != count:
        raise UsageError(f"{what} must be {count} comma-separated numbers")
    return values


def run_convert(args, cfg: RunConfig) -> tuple[list[dict], list[str]]:
    if args.spinor is not None:
        if args.to is None:
            raise UsageError("--spinor needs --to xi|eta")
        r1, i1, r2, i2 = _floats(args.spinor, 4, "--spinor")
        s = Spinor(complex(r1, i1), complex(r2, i2))
        out = xi_to_eta(s) if args.to == "eta" else eta_to_xi(s)
        return [_spinor_cells(out)], ["re1", "im1", "re2", "im2"]
    if args.point is not None:
        if args.target is None:
            raise UsageError("--point needs --target")
        r, theta, phi = _floats(args.point, 3, "--point")
        p = charts.ChartPoint(charts.ChartId.SPHERICAL, r, theta, phi, VARIANTS[args.variant])
        q = charts.convert_spherical_domain(p, VARIANTS[args.target])
        row = {"r": q.y1, "theta": q.y2, "phi": q.y3, "variant": args.target}
        row.update(_spinor_cells(charts.xi_in_chart(q, cfg.context())))
        return [row], ["r", "theta", "phi", "variant", "re1", "im1", "re2", "im2"]
    raise UsageError("convert needs --spinor or --point")


def run_check(args, cfg: RunConfig, out) -> int:
    results = checks.run_suite(args.suite, cfg.tolerance, args.seed)
    if cfg.output_format == "json":
        records = [
            {"suite": r.suite, "check": r.name, "passed": r.passed, "max_error": r.max_error, "threshold": r.threshold}
            for r in results
        ]
        out.write(json.dumps(records) + "\n")
    else:
        for r in results:
            out.write(r.line() + "\n")
        failed = sum(not r.passed for r in results)
        out.write(f"{len(results) - failed}/{len(results)} checks passed\n")
    return EXIT_OK if all(r.passed for r in results) else EXIT_INVALID


def _emit(text: str, target: str | None) -> None:
    if target is None:
        sys.stdout.write(text)
    else:
        with open(target, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


COMMANDS = {
    "sample": run_sample,
    "residuals": run_residuals,
    "transport": run_transport,
    "convert": run_convert,
}


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        cfg = _config(args)
        if args.command == "check":
            buf = io.StringIO()
            code = run_check(args, cfg, buf)
            _emit(buf.getvalue(), args.out)
            return code
        rows, columns = COMMANDS[args.command](args, cfg)
        _emit(render(rows, columns, cfg.output_format), args.out)
        return EXIT_OK
    except (UsageError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (SingularPointError, ArithmeticError) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
