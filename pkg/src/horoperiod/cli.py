"""Command-line surface.

Subcommands: period, solve, classify, thresholds, constants, scan.
All machine output is CSV or JSON; JSON reports carry schema_version and
floats are printed with 17 significant digits so comparisons are bit-stable
through text.

Exit codes:
    0   success
    2   domain error (inadmissible parameters, level below minimum, ...)
    3   convergence failure
    4   no branch exists (solve)
    5   partial scan (some grid points not ok)
    64  usage error (malformed or inconsistent flags)

The only environment input is HOROPERIOD_THREADS (default worker count,
overridden by --workers).
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass, fields

import numpy as np

from .classify import (
    ScanConfig,
    count_solutions,
    region_scan,
    threshold_gamma_weighted,
)
from .errors import (
    BoundaryDivergence,
    ConvergenceFailure,
    HoroperiodError,
    PeriodMismatch,
)
from .kernel import ProblemParams, constant_solutions
from .orbit import SolutionProfile, build_solution, pde_residual
from .period import PeriodValue, QuadratureConfig, period_energy, period_shape
from .kernel import ShapeCoords

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_CONVERGENCE = 3
EXIT_NO_BRANCH = 4
EXIT_PARTIAL = 5
EXIT_USAGE = 64

SCAN_CSV_HEADER = "p,q,gamma,constant_count,branch_count,infinite_family,status"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse with the sysexits usage code and negative grid specs as values."""

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # accept tokens like -5:-3:2 or -5,-3 as option values, not flags
        self._negative_number_matcher = re.compile(r"^-\d+.*$|^-\.\d+.*$")

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    """Tolerances, output and worker settings shared by all subcommands."""

    quad_tol: float = 1e-10
    ode_rtol: float = 1e-12
    ode_atol: float = 1e-12
    points_per_decade: int = 64
    format: str = "json"
    out: str | None = None
    workers: int = 1

    def quadrature(self) -> QuadratureConfig:
        return QuadratureConfig(target_tol=self.quad_tol)

    def scan(self) -> ScanConfig:
        return ScanConfig(points_per_decade=self.points_per_decade)


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _parse_grid(text: str) -> list[float]:
    """Grid spec: 'start:stop:count' (inclusive) or comma-separated values."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise UsageError(f"bad grid spec {text!r}, want start:stop:count")
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
        if count < 1:
            raise UsageError("grid count must be >= 1")
        return [float(v) for v in np.linspace(start, stop, count)]
    return [float(v) for v in text.split(",") if v.strip()]


def _load_config_file(path: str) -> dict:
    """key=value lines; '#' starts a comment."""
    out: dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key=value, got {raw!r}")
            key, value = line.split("=", 1)
            out[key.strip()] = value.strip()
    return out


def _resolve_config(args) -> RunConfig:
    cfg = RunConfig()
    file_values = _load_config_file(args.config) if args.config else {}
    known = {f.name for f in fields(RunConfig)}
    for key, value in file_values.items():
        if key not in known:
            raise UsageError(f"unknown config key {key!r}")
        if key == "out":
            cfg.out = value
        elif key == "format":
            cfg.format = value
        elif key in ("workers", "points_per_decade"):
            setattr(cfg, key, int(value))
        else:
            setattr(cfg, key, float(value))
    env_workers = os.environ.get("HOROPERIOD_THREADS")
    if env_workers is not None and "workers" not in file_values:
        cfg.workers = int(env_workers)
    # explicit flags override config and environment
    for key in ("quad_tol", "ode_rtol", "ode_atol", "points_per_decade", "out", "workers"):
        value = getattr(args, key, None)
        if value is not None:
            setattr(cfg, key, value)
    if getattr(args, "format", None) is not None:
        cfg.format = args.format
    if cfg.format not in ("json", "csv"):
        raise UsageError(f"unknown format {cfg.format!r}")
    if cfg.workers < 1:
        raise UsageError("workers must be >= 1")
    if cfg.quad_tol <= 0 or cfg.ode_rtol <= 0 or cfg.ode_atol <= 0:
        raise UsageError("tolerances must be positive")
    return cfg


def _emit(text: str, cfg: RunConfig):
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(payload: dict, cfg: RunConfig):
    _emit(json.dumps(payload, indent=2) + "\n", cfg)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _cmd_period(args, cfg: RunConfig) -> int:
    energy_chart = args.gamma is not None and args.E is not None
    shape_chart = args.alpha is not None and args.r is not None
    mixed = (args.alpha is not None or args.r is not None) and (
        args.gamma is not None or args.E is not None
    )
    if mixed or not (energy_chart or shape_chart):
        raise UsageError(
            "supply exactly one chart: --gamma with --E, or --alpha with --r"
        )
    if energy_chart:
        pv = period_energy(
            ProblemParams(p=args.p, gamma=args.gamma, q=args.q),
            args.E,
            cfg.quadrature(),
        )
        chart = "energy"
    else:
        pv = period_shape(
            args.p, args.q, ShapeCoords(alpha=args.alpha, r=args.r), cfg.quadrature()
        )
        chart = "shape"
    if cfg.format == "csv":
        _emit(
            "theta,error_estimate,nodes_used,chart\n"
            f"{_fmt(pv.value)},{_fmt(pv.error_estimate)},{pv.nodes_used},{chart}\n",
            cfg,
        )
    else:
        _emit_json(
            {
                "schema_version": "1",
                "kind": "period",
                "theta": pv.value,
                "error_estimate": pv.error_estimate,
                "nodes_used": pv.nodes_used,
                "chart": chart,
            },
            cfg,
        )
    return EXIT_OK


def _cmd_solve(args, cfg: RunConfig) -> int:
    if args.verify:
        with open(args.verify, "r", encoding="utf-8") as fh:
            payload = json.load(fh)
        profile = SolutionProfile.from_dict(payload)
        recomputed = pde_residual(profile.params, profile)
        ok = abs(recomputed - profile.residual_max) <= 1e-12
        _emit_json(
            {
                "schema_version": "1",
                "kind": "verification",
                "stored_residual_max": profile.residual_max,
                "recomputed_residual_max": recomputed,
                "verified": ok,
            },
            cfg,
        )
        return EXIT_OK if ok else EXIT_DOMAIN
    if args.p is None or args.m is None or args.gamma is None:
        raise UsageError("solve needs --p, --gamma and --m (or --verify FILE)")
    if args.m < 2:
        raise UsageError("m must be >= 2 (no 2pi-fundamental branch exists)")
    params = ProblemParams(p=args.p, gamma=args.gamma, q=args.q)
    report = count_solutions(params, m_max=args.m, scan=cfg.scan())
    matches = [b for b in report.branches if b.m == args.m]
    if not matches:
        sys.stderr.write(f"no m={args.m} branch for p={args.p}, q={args.q}, gamma={args.gamma}\n")
        return EXIT_NO_BRANCH
    branch = min(matches, key=lambda b: b.E)
    profile = build_solution(params, branch.E, args.m)
    _emit_json(profile.to_dict(), cfg)
    return EXIT_OK


def _cmd_classify(args, cfg: RunConfig) -> int:
    report = count_solutions(
        ProblemParams(p=args.p, gamma=args.gamma, q=args.q),
        m_max=args.m_max,
        scan=cfg.scan(),
    )
    _emit_json(report.to_dict(), cfg)
    return EXIT_OK if report.status == "ok" else EXIT_PARTIAL


def _cmd_thresholds(args, cfg: RunConfig) -> int:
    ps = _parse_grid(args.p_grid) if args.p_grid else [args.p]
    if ps == [None]:
        raise UsageError("thresholds needs --p or --p-grid")
    rows = []
    for p in ps:
        rows.append((p, args.l, threshold_gamma_weighted(p, args.q, args.l)))
    if cfg.format == "csv":
        lines = ["p,l,gamma"] + [f"{_fmt(p)},{l},{_fmt(g)}" for p, l, g in rows]
        _emit("\n".join(lines) + "\n", cfg)
    else:
        _emit_json(
            {
                "schema_version": "1",
                "kind": "thresholds",
                "q": args.q,
                "rows": [{"p": p, "l": l, "gamma": g} for p, l, g in rows],
            },
            cfg,
        )
    return EXIT_OK


def _cmd_constants(args, cfg: RunConfig) -> int:
    roots, gamma0 = constant_solutions(
        ProblemParams(p=args.p, gamma=args.gamma, q=args.q)
    )
    if cfg.format == "csv":
        lines = ["root"] + [_fmt(c) for c in roots]
        _emit("\n".join(lines) + "\n", cfg)
    else:
        _emit_json(
            {
                "schema_version": "1",
                "kind": "constants",
                "p": args.p,
                "q": args.q,
                "gamma": args.gamma,
                "roots": roots,
                "gamma0": gamma0,
            },
            cfg,
        )
    return EXIT_OK


def _cmd_scan(args, cfg: RunConfig) -> int:
    records = list(
        region_scan(
            _parse_grid(args.p_grid),
            _parse_grid(args.q_grid),
            _parse_grid(args.gamma_grid),
            m_max=args.m_max,
            scan=cfg.scan(),
            workers=cfg.workers,
        )
    )
    if cfg.format == "csv":
        lines = [SCAN_CSV_HEADER]
        for rec in records:
            lines.append(
                f"{_fmt(rec.p)},{_fmt(rec.q)},{_fmt(rec.gamma)},"
                f"{rec.constant_count},{rec.branch_count},"
                f"{'true' if rec.infinite_family else 'false'},{rec.status}"
            )
        _emit("\n".join(lines) + "\n", cfg)
    else:
        _emit_json(
            {
                "schema_version": "1",
                "kind": "region_scan",
                "records": [
                    {
                        "p": rec.p,
                        "q": rec.q,
                        "gamma": rec.gamma,
                        "constant_count": rec.constant_count,
                        "branch_count": rec.branch_count,
                        "infinite_family": rec.infinite_family,
                        "status": rec.status,
                        "thresholds_crossed": list(rec.thresholds_crossed),
                    }
                    for rec in records
                ],
            },
            cfg,
        )
    return EXIT_OK if all(r.status == "ok" for r in records) else EXIT_PARTIAL


# ---------------------------------------------------------------------------
# parser assembly
# ---------------------------------------------------------------------------


def build_parser() -> _Parser:
    parser = _Parser(
        prog="horoperiod",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--quad-tol", dest="quad_tol", type=float, default=None)
        sp.add_argument("--ode-rtol", dest="ode_rtol", type=float, default=None)
        sp.add_argument("--ode-atol", dest="ode_atol", type=float, default=None)
        sp.add_argument(
            "--points-per-decade", dest="points_per_decade", type=int, default=None
        )
        sp.add_argument("--format", choices=("json", "csv"), default=None)
        sp.add_argument("--out", default=None)
        sp.add_argument("--workers", type=int, default=None)
        sp.add_argument("--config", default=None, help="key=value config file")

    sp = sub.add_parser("period", help="half-period in the energy or shape chart")
    sp.add_argument("--p", type=float, required=True)
    sp.add_argument("--q", type=float, default=1.0)
    sp.add_argument("--gamma", type=float)
    sp.add_argument("--E", type=float)
    sp.add_argument("--alpha", type=float)
    sp.add_argument("--r", type=float)
    common(sp)
    sp.set_defaults(func=_cmd_period)

    sp = sub.add_parser("solve", help="find and certify an m-fold branch")
    sp.add_argument("--p", type=float)
    sp.add_argument("--q", type=float, default=1.0)
    sp.add_argument("--gamma", type=float)
    sp.add_argument("--m", type=int)
    sp.add_argument("--verify", metavar="FILE", help="re-check a profile JSON")
    common(sp)
    sp.set_defaults(func=_cmd_solve)

    sp = sub.add_parser("classify", help="constant roots plus branch count")
    sp.add_argument("--p", type=float, required=True)
    sp.add_argument("--q", type=float, default=1.0)
    sp.add_argument("--gamma", type=float, required=True)
    sp.add_argument("--m-max", dest="m_max", type=int, default=8)
    common(sp)
    sp.set_defaults(func=_cmd_classify)

    sp = sub.add_parser("thresholds", help="nonuniqueness thresholds gamma_{p,q,l}")
    sp.add_argument("--p", type=float)
    sp.add_argument("--p-grid", dest="p_grid")
    sp.add_argument("--q", type=float, default=1.0)
    sp.add_argument("--l", type=int, required=True)
    common(sp)
    sp.set_defaults(func=_cmd_thresholds)

    sp = sub.add_parser("constants", help="constant solutions census")
    sp.add_argument("--p", type=float, required=True)
    sp.add_argument("--q", type=float, default=1.0)
    sp.add_argument("--gamma", type=float, required=True)
    common(sp)
    sp.set_defaults(func=_cmd_constants)

    sp = sub.add_parser("scan", help="region scan over (p, q, gamma) grids")
    sp.add_argument("--p-grid", dest="p_grid", required=True)
    sp.add_argument("--q-grid", dest="q_grid", default="1")
    sp.add_argument("--gamma-grid", dest="gamma_grid", required=True)
    sp.add_argument("--m-max", dest="m_max", type=int, default=8)
    common(sp)
    sp.set_defaults(func=_cmd_scan)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _resolve_config(args)
        return args.func(args, cfg)
    except UsageError as exc:
        sys.stderr.write(f"horoperiod: error: {exc}\n")
        return EXIT_USAGE
    except ConvergenceFailure as exc:
        sys.stderr.write(f"horoperiod: convergence failure: {exc}\n")
        return EXIT_CONVERGENCE
    except PeriodMismatch as exc:
        sys.stderr.write(f"horoperiod: {exc}\n")
        return EXIT_NO_BRANCH
    except HoroperiodError as exc:
        sys.stderr.write(f"horoperiod: {exc}\n")
        return EXIT_DOMAIN
    except OSError as exc:
        sys.stderr.write(f"horoperiod: {exc}\n")
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
