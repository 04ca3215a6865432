"""Command-line sweeps of fundamental frequency versus load.

Examples::

    masonry-modal case1 --e-range 0:0.2:41 --N -500000 --method both
    masonry-modal case2 --p-range 0:22000:45 --N -300000,-500000,-800000 --out fig7.csv
    masonry-modal case3 --A-range 0:0.05:51 --method fem --format json --out fig8.json
    masonry-modal elastic --method both

Exit codes: 0 success, 2 usage error, 3 FE non-convergence (output is still
written), 4 I/O failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields
from typing import Optional, Sequence

import numpy as np

from . import analytical
from .analytical import Case1, Case2, Case3, ModalResult
from .constitutive import BeamSpec
from .errors import ConvergenceError, DomainError, LimitMomentError, MasonryModalError
from .fem.model import fe_frequency

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CONVERGENCE = 3
EXIT_IO = 4

CSV_FIELDS = ("case", "sweep_var", "sweep_value", "N", "omega_rad_s", "f_hz", "ratio", "x0_m", "method", "iters", "residual")
SWEEP_FLAGS = {"case1": ("e_range", "e"), "case2": ("p_range", "p"), "case3": ("A_range", "A")}
DEFAULT_RANGES = {"case1": "0:0.2:41", "case2": "0:22000:45", "case3": "0:0.05:51"}
METHODS = ("analytical", "fem")


class UsageError(MasonryModalError):
    pass


@dataclass(frozen=True)
class RunConfig:
    case: str
    spec: BeamSpec
    sweep: tuple
    N_values: tuple = (-500000.0,)
    sweep_var: str = ""
    n_elems: int = 30
    method: str = "both"
    out: Optional[str] = None
    fmt: str = "csv"
    jobs: int = 1

    @property
    def methods(self) -> tuple:
        return METHODS if self.method == "both" else (self.method,)


@dataclass(frozen=True)
class SweepRecord:
    case: str
    sweep_var: str
    sweep_value: float
    N: float
    omega_rad_s: float
    f_hz: float
    ratio: float
    x0_m: float
    method: str
    iters: int
    residual: float

    @property
    def failed(self) -> bool:
        return math.isnan(self.omega_rad_s)


def parse_range(text: str, name: str) -> tuple:
    """``start:stop:count`` -> closed, evenly spaced grid."""
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"--{name} expects start:stop:count, got {text!r}")
    try:
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise UsageError(f"--{name}: {exc}") from None
    if count < 1:
        raise UsageError(f"--{name}: count must be >= 1, got {count}")
    return tuple(float(v) for v in np.linspace(start, stop, count))


def parse_forces(text: str) -> tuple:
    try:
        values = tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError as exc:
        raise UsageError(f"--N: {exc}") from None
    if not values:
        raise UsageError("--N needs at least one value")
    bad = [v for v in values if not v < 0]
    if bad:
        raise UsageError(f"--N values must be compressive (negative), got {bad}")
    return values


def validate(config: RunConfig) -> None:
    spec = config.spec
    if config.n_elems < 1:
        raise UsageError(f"--n-elems must be >= 1, got {config.n_elems}")
    if config.case == "case1":
        worst = max(abs(v) for v in config.sweep)
        if worst > spec.h / 2.0:
            raise UsageError(f"--e-range: |e| = {worst} exceeds h/2 = {spec.h / 2.0}")
    elif any(v < 0 for v in config.sweep):
        flag = {"p": "p-range", "p_over_pbar": "p-ratio-range", "A": "A-range"}.get(config.sweep_var, "range")
        raise UsageError(f"--{flag}: values must be non-negative")


def _load_case(case: str, var: str, value: float, N: float, spec: BeamSpec):
    if case == "case1":
        return Case1(value)
    if case == "case2":
        p = value * analytical.case2_limit_loads(N, spec)[0] if var == "p_over_pbar" else value
        return Case2(p, N)
    if case == "case3":
        return Case3(value, N)
    return Case1(0.0)


def _record(config: RunConfig, value: float, N: float, method: str, result: Optional[ModalResult],
            iters: int = 0, residual: float = float("nan")) -> SweepRecord:
    if result is None:
        omega = f_hz = ratio = x0 = float("nan")
    else:
        omega, f_hz, ratio, x0 = result.omega, result.f_hz, result.ratio, result.x0
    return SweepRecord(config.case, config.sweep_var, float(value), float(N), float(omega), float(f_hz),
                       float(ratio), float(x0), method, int(iters), float(residual))


def _collapsed(config: RunConfig, value: float, N: float, method: str) -> SweepRecord:
    zero = ModalResult(omega=0.0, f_hz=0.0, ratio=0.0, x0=float("nan"))
    return _record(config, value, N, method, zero)


def evaluate_point(config: RunConfig, value: float, N: float) -> list:
    """All requested methods at one sweep point, in method order."""
    spec = config.spec
    case = _load_case(config.case, config.sweep_var, value, N, spec)
    out = []
    for method in config.methods:
        if method == "analytical":
            try:
                res = analytical.frequency(case, spec)
            except LimitMomentError:
                out.append(_collapsed(config, value, N, method))
                continue
            out.append(_record(config, value, N, method, res))
        else:
            try:
                res, state = fe_frequency(case, spec, N, config.n_elems)
            except LimitMomentError:
                out.append(_collapsed(config, value, N, method))
                continue
            except ConvergenceError as exc:
                log.warning("FE did not converge at %s=%g, N=%g: %s", config.sweep_var, value, N, exc)
                out.append(_record(config, value, N, method, None, exc.iterations, exc.residual))
                continue
            out.append(_record(config, value, N, method, res, state.iterations, state.residual))
    return out


def _evaluate_args(args):
    return evaluate_point(*args)


def run_case(config: RunConfig) -> list:
    """Evaluate every sweep point; output ordered by (N, sweep value, method)."""
    validate(config)
    tasks = [(config, v, N) for N in config.N_values for v in config.sweep]
    if config.jobs > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            chunks = list(pool.map(_evaluate_args, tasks))
    else:
        chunks = [evaluate_point(*t) for t in tasks]
    return [rec for chunk in chunks for rec in chunk]


def _fmt(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, int):
        return str(value)
    return f"{value:.12g}"


def render(records: Sequence[SweepRecord], fmt: str) -> str:
    if not records:
        raise UsageError("no records to write")
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_FIELDS)
        for rec in records:
            writer.writerow([_fmt(getattr(rec, name)) for name in CSV_FIELDS])
        return buf.getvalue()
    if fmt == "json":
        rows = []
        for rec in records:
            row = asdict(rec)
            rows.append({k: (None if isinstance(v, float) and not math.isfinite(v) else v) for k, v in row.items()})
        return json.dumps(rows, indent=1, allow_nan=False) + "\n"
    raise UsageError(f"unknown format {fmt!r}")


def emit(records: Sequence[SweepRecord], fmt: str, path: Optional[str]) -> None:
    """Write records as CSV or JSON to ``path`` (stdout when ``None``)."""
    text = render(records, fmt)
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def read_records(path: str) -> list:
    """Parse a JSON file written by :func:`emit`."""
    with open(path, encoding="utf-8") as fh:
        rows = json.load(fh)
    floats = {f.name for f in fields(SweepRecord) if f.type in ("float", float)}
    out = []
    for row in rows:
        row = {k: (float("nan") if v is None and k in floats else v) for k, v in row.items()}
        out.append(SweepRecord(**row))
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="masonry-modal", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="case", required=True)
    for name in ("case1", "case2", "case3", "elastic"):
        sp = sub.add_parser(name)
        sp.add_argument("--L", type=float, default=6.0, help="span (m)")
        sp.add_argument("--h", type=float, default=0.4, help="section height (m)")
        sp.add_argument("--b", type=float, default=1.0, help="section width (m)")
        sp.add_argument("--rho", type=float, default=1800.0, help="density (kg/m^3)")
        sp.add_argument("--E", type=float, default=3.0e9, help="Young's modulus (Pa)")
        sp.add_argument("--n-elems", type=int, default=30)
        sp.add_argument("--N", default="-500000", help="comma-separated axial forces (N), negative = compression")
        sp.add_argument("--method", choices=("analytical", "fem", "both"), default="both")
        sp.add_argument("--out", default=None, help="output file (default: stdout)")
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        sp.add_argument("--jobs", type=int, default=1, help="worker processes for the sweep")
        if name == "case1":
            sp.add_argument("--e-range", default=None, help="eccentricity start:stop:count (m)")
        elif name == "case2":
            group = sp.add_mutually_exclusive_group()
            group.add_argument("--p-range", default=None, help="transverse load start:stop:count (N/m)")
            group.add_argument("--p-ratio-range", default=None, help="p / p_bar start:stop:count")
        elif name == "case3":
            sp.add_argument("--A-range", default=None, help="imposed amplitude start:stop:count (m)")
    return parser


def _join_negative_values(argv: Sequence[str]) -> list:
    """Turn ``--flag -1,-2`` into ``--flag=-1,-2`` so argparse accepts it."""
    out = []
    it = iter(range(len(argv)))
    for i in it:
        tok = argv[i]
        if (tok.startswith("--") and "=" not in tok and i + 1 < len(argv)
                and argv[i + 1].startswith("-") and argv[i + 1][1:2] and (argv[i + 1][1].isdigit() or argv[i + 1][1] == ".")):
            out.append(f"{tok}={argv[i + 1]}")
            next(it, None)
        else:
            out.append(tok)
    return out


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    try:
        spec = BeamSpec(L=ns.L, h=ns.h, b=ns.b, E=ns.E, rho=ns.rho)
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    N_values = parse_forces(ns.N)
    if ns.case == "elastic":
        sweep, var, N_values = (0.0,), "none", N_values[:1]
    elif ns.case == "case2" and ns.p_ratio_range is not None:
        sweep, var = parse_range(ns.p_ratio_range, "p-ratio-range"), "p_over_pbar"
    else:
        attr, var = SWEEP_FLAGS[ns.case]
        text = getattr(ns, attr) or DEFAULT_RANGES[ns.case]
        sweep = parse_range(text, attr.replace("_", "-"))
    return RunConfig(case=ns.case, spec=spec, sweep=sweep, N_values=N_values, sweep_var=var,
                     n_elems=ns.n_elems, method=ns.method, out=ns.out, fmt=ns.format, jobs=max(ns.jobs, 1))


def main(argv: Optional[Sequence[str]] = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        ns = parser.parse_args(_join_negative_values(argv))
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        config = config_from_args(ns)
        records = run_case(config)
        emit(records, config.fmt, config.out)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    if any(rec.failed for rec in records):
        return EXIT_CONVERGENCE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
