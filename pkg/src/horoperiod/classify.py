"""Solution counting: thresholds, branch search in E, and region scans.

A non-constant m-fold branch exists at level E exactly when the half-period
equals pi/(2m).  For p < -1 the half-period lives strictly between
pi/sqrt(2q-2p) and pi/2, rises to pi/2 as E grows, and starts (as E -> e*)
at a closed-form limit that drops below pi/(2(l+1)) once gamma exceeds the
explicit threshold gamma_{p,q,l}.  Counting is therefore: scan the level
axis geometrically, bracket every crossing of pi/(2m), and polish each one.
Only lower bounds are claimed; every sign change found is reported.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Iterator

import numpy as np
from scipy.optimize import brentq

from .errors import (
    BoundaryDivergence,
    ConvergenceFailure,
    UnsupportedRegion,
)
from .kernel import (
    DEGENERATE_CUTOFF,
    ProblemParams,
    constant_solutions,
    critical_point,
    shape_from_turning,
    turning_points,
)
from .period import (
    QuadratureConfig,
    limit_energy_to_min,
    limit_r_to_infinity,
    period_shape,
)

_BRENT_RTOL = 4.0 * float(np.finfo(float).eps)


def threshold_gamma(p: float, l: int) -> float:
    """Explicit threshold gamma_{p,l} above which at least l non-constant
    branches exist (q = 1).

    Defined for p strictly below 1 - 2(l+1)^2; on the boundary the inner
    base vanishes under a negative exponent.
    """
    if l < 1:
        raise UnsupportedRegion(f"l must be >= 1, got {l}")
    lp1sq = (l + 1.0) ** 2
    if p >= 1.0 - 2.0 * lp1sq:
        raise BoundaryDivergence(
            f"threshold diverges for p >= {1.0 - 2.0 * lp1sq}, got p={p}"
        )
    base = (2.0 * lp1sq - 1.0 + p) / (1.0 + p)
    return (1.0 - lp1sq) / (1.0 + p) * base ** ((p - 1.0) / 2.0)


def threshold_gamma_weighted(p: float, q: float, l: int) -> float:
    """Weighted threshold gamma_{p,q,l}; reduces to threshold_gamma at q = 1.

    The defining scalar equation in w = u_gamma^-4,

        (1-p) + (1+p) w + (q-1)(1-w)^2/(1+w) = 2(l+1)^2,

    is strictly monotone in w over [0, 1] with range (2, q-p), so the region
    condition is q - p > 2(l+1)^2.
    """
    if l < 1:
        raise UnsupportedRegion(f"l must be >= 1, got {l}")
    if p > -1.0 or q < 1.0:
        raise UnsupportedRegion(f"need p <= -1 and q >= 1, got p={p}, q={q}")
    target = 2.0 * (l + 1.0) ** 2
    if q - p <= target:
        raise UnsupportedRegion(
            f"need q - p > 2(l+1)^2 = {target}, got q - p = {q - p}"
        )

    def f(w: float) -> float:
        return (1.0 - p) + (1.0 + p) * w + (q - 1.0) * (1.0 - w) ** 2 / (1.0 + w) - target

    w = brentq(f, 0.0, 1.0, xtol=1e-300, rtol=_BRENT_RTOL)
    log_u = -0.25 * math.log(w)
    # gamma = 2^-q (u^2 + u^-2)^(q-1) (u^(2-2p) - u^(-2-2p)), assembled in logs
    log_u2pu = math.log(math.exp(2.0 * log_u) + math.exp(-2.0 * log_u))
    log_diff = (2.0 - 2.0 * p) * log_u + math.log1p(-w)
    return math.exp(-q * math.log(2.0) + (q - 1.0) * log_u2pu + log_diff)


@dataclass(frozen=True)
class ScanConfig:
    """Level-axis scan policy for branch counting."""

    points_per_decade: int = 64
    decades: int = 12
    start_rel: float = 1e-10
    max_decades: int = 18
    asymptote_tol: float = 1e-3
    theta_tol: float = 1e-9
    root_tol: float = 1e-11
    match_tol: float = 1e-9
    max_nodes: int = 2**18


DEFAULT_SCAN = ScanConfig()


@dataclass(frozen=True)
class SolutionBranch:
    """One non-constant branch: fold symmetry m at energy level E."""

    m: int
    E: float
    theta_check: float


@dataclass
class ClassificationReport:
    """Constant roots and non-constant branches found for one instance."""

    params: ProblemParams
    constant_roots: list[float]
    branches: list[SolutionBranch]
    infinite_family: bool
    status: str = "ok"

    @property
    def lower_bound_count(self) -> int:
        return len(self.constant_roots) + len(self.branches)

    def to_dict(self) -> dict:
        return {
            "schema_version": "1",
            "kind": "classification",
            "p": self.params.p,
            "q": self.params.q,
            "gamma": self.params.gamma,
            "constant_roots": list(self.constant_roots),
            "branches": [
                {"m": b.m, "E": b.E, "theta_check": b.theta_check}
                for b in self.branches
            ],
            "infinite_family": self.infinite_family,
            "lower_bound_count": self.lower_bound_count,
            "status": self.status,
        }


def _theta_at(params, cd, delta, tol, max_nodes):
    """Half-period at level e* + delta; falls back to the best stalled value."""
    tp = turning_points(params, cd.e_star + delta, cd)
    cfg = QuadratureConfig(target_tol=tol, max_nodes=max_nodes)
    try:
        return period_shape(params.p, params.q, shape_from_turning(tp), cfg).value
    except ConvergenceFailure as exc:
        if exc.best is None:
            raise
        return exc.best.value


def count_solutions(
    params: ProblemParams,
    m_max: int = 8,
    scan: ScanConfig = DEFAULT_SCAN,
) -> ClassificationReport:
    """Count constant roots and bracket every m-fold branch, m in 2..m_max.

    At (p, q) = (-1, 1) the equation has a full family of non-constant
    solutions at one level; the report flags it and lists the single
    constant root.  For p > -1 (with q >= 1) only constants exist and no
    scan is run.  m = 1 is never scanned: the half-period stays strictly
    below pi/2 for p < -1.
    """
    if params.q < 1.0:
        raise UnsupportedRegion(f"count_solutions needs q >= 1, got q={params.q}")
    roots, _ = constant_solutions(params)
    if params.q == 1.0 and params.p == -1.0:
        return ClassificationReport(
            params=params, constant_roots=roots, branches=[], infinite_family=True
        )
    if params.p > -1.0:
        return ClassificationReport(
            params=params, constant_roots=roots, branches=[], infinite_family=False
        )

    cd = critical_point(params)
    scale = max(1.0, abs(cd.e_star))
    seed = limit_energy_to_min(params, cd)
    asymptote = limit_r_to_infinity()

    def theta(d):
        return _theta_at(params, cd, d, scan.theta_tol, scan.max_nodes)

    d0 = scan.start_rel * scale
    per_decade = scan.points_per_decade
    deltas: list[float] = []
    values: list[float] = []
    status = "ok"
    decades_done = 0
    while True:
        lo = d0 * 10.0**decades_done
        new = lo * 10.0 ** (np.arange(per_decade) / per_decade)
        for d in new:
            deltas.append(float(d))
            values.append(theta(float(d)))
        decades_done += 1
        if decades_done >= scan.decades and abs(values[-1] - asymptote) < scan.asymptote_tol:
            break
        if decades_done >= scan.max_decades:
            status = "incomplete"
            break

    grid = np.array([0.0] + deltas)
    theta_grid = np.array([seed] + values)
    floor = 4.0 * DEGENERATE_CUTOFF * scale

    branches: list[SolutionBranch] = []
    for m in range(2, m_max + 1):
        target = np.pi / (2.0 * m)
        resid = theta_grid - target
        for i in np.where(np.sign(resid[:-1]) != np.sign(resid[1:]))[0]:
            lo, hi = grid[i], grid[i + 1]
            if lo <= 0.0:
                lo = floor
                if np.sign(theta(lo) - target) == np.sign(resid[i + 1]):
                    continue  # crossing hides below the degenerate floor

            def f(d):
                return _theta_at(params, cd, d, scan.root_tol, scan.max_nodes) - target

            d_star = brentq(f, lo, hi, xtol=1e-300, rtol=_BRENT_RTOL)
            theta_check = _theta_at(params, cd, d_star, scan.root_tol, scan.max_nodes)
            if abs(theta_check - target) <= scan.match_tol:
                branches.append(
                    SolutionBranch(m=m, E=cd.e_star + d_star, theta_check=theta_check)
                )
    branches.sort(key=lambda b: (b.m, b.E))
    return ClassificationReport(
        params=params,
        constant_roots=roots,
        branches=branches,
        infinite_family=False,
        status=status,
    )


# ---------------------------------------------------------------------------
# region scans
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ScanRecord:
    """One grid point of a region scan."""

    p: float
    q: float
    gamma: float
    constant_count: int
    branch_count: int
    infinite_family: bool
    status: str
    thresholds_crossed: tuple[int, ...] = field(default=())


def _scan_point(args) -> ScanRecord:
    p, q, gamma, m_max, scan = args
    crossed: list[int] = []
    for l in range(1, m_max):
        try:
            if gamma > threshold_gamma_weighted(p, q, l):
                crossed.append(l)
        except (UnsupportedRegion, BoundaryDivergence):
            break
    try:
        report = count_solutions(ProblemParams(p=p, gamma=gamma, q=q), m_max, scan)
        return ScanRecord(
            p=p,
            q=q,
            gamma=gamma,
            constant_count=len(report.constant_roots),
            branch_count=len(report.branches),
            infinite_family=report.infinite_family,
            status=report.status,
            thresholds_crossed=tuple(crossed),
        )
    except Exception as exc:  # per-point errors never abort the scan
        return ScanRecord(
            p=p,
            q=q,
            gamma=gamma,
            constant_count=0,
            branch_count=0,
            infinite_family=False,
            status=f"error:{type(exc).__name__}",
            thresholds_crossed=tuple(crossed),
        )


def region_scan(
    p_values: Iterable[float],
    q_values: Iterable[float],
    gamma_values: Iterable[float],
    m_max: int = 8,
    scan: ScanConfig = DEFAULT_SCAN,
    workers: int = 1,
) -> Iterator[ScanRecord]:
    """Classify every grid point, in deterministic (p, q, gamma) index order.

    Per-point failures are embedded in the record status; the scan itself
    never aborts.  With workers > 1 the points are distributed across a
    process pool and re-emitted in grid order.
    """
    points = [
        (p, q, g, m_max, scan)
        for p in p_values
        for q in q_values
        for g in gamma_values
    ]
    if workers <= 1 or len(points) <= 1:
        for pt in points:
            yield _scan_point(pt)
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        yield from pool.map(_scan_point, points, chunksize=1)
