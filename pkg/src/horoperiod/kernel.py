"""Scalar layer: energies, critical points, turning points, coordinate charts.

Everything here is closed-form arithmetic plus bracketed one-dimensional
root finding.  The oscillation of the reduced variable u(tau) is governed
by the energy function

    E(u) = u^2 + u^-2 - (2*gamma/p) u^(2p)                      (q = 1)
    E(u) = (1/q)(u^2 + u^-2)^q - (2^q*gamma/p) u^(2p)           (q >= 1)

which is strictly convex on (0, inf) for p <= -1, q >= 1, with a unique
minimizer u_gamma > 1.  Levels E above the minimum cut the graph at the
two turning points 0 < u_minus < u_gamma < u_plus.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import (
    BelowMinimum,
    ConvergenceFailure,
    DegenerateLevel,
    DomainError,
    InvalidShape,
    NonpositiveArgument,
    UnsupportedRegion,
)

_BRENT_RTOL = 4.0 * float(np.finfo(float).eps)
_BRENT_XTOL = 1e-300  # positive but irrelevant; rtol governs

#: Relative cutoff below which a level is treated as sitting on the minimum.
DEGENERATE_CUTOFF = 1e-12


@dataclass(frozen=True)
class ProblemParams:
    """One problem instance: exponent pair (p, q) and isotropic constant gamma.

    gamma must be positive.  p and q are unrestricted here; each operation
    checks its own admissible region and raises UnsupportedRegion outside it.
    """

    p: float
    gamma: float
    q: float = 1.0

    def __post_init__(self):
        if not self.gamma > 0:
            raise NonpositiveArgument(f"gamma must be > 0, got {self.gamma}")


@dataclass(frozen=True)
class CriticalData:
    """Location and level of the energy minimum."""

    u_gamma: float
    e_star: float


@dataclass(frozen=True)
class TurningPoints:
    """The two roots 0 < u_minus < u_plus of E(u) = E."""

    u_minus: float
    u_plus: float


@dataclass(frozen=True)
class ShapeCoords:
    """Normalized oscillation coordinates alpha = 1/(u_plus*u_minus), r = u_plus/u_minus."""

    alpha: float
    r: float

    def __post_init__(self):
        if not (0.0 < self.alpha < 1.0 < self.r):
            raise InvalidShape(
                f"need 0 < alpha < 1 < r, got alpha={self.alpha}, r={self.r}"
            )


def _require_region(params: ProblemParams, *, p_max: float = 0.0):
    if params.p >= p_max:
        raise UnsupportedRegion(f"p must be < {p_max}, got {params.p}")
    if params.q < 1.0:
        raise UnsupportedRegion(f"q must be >= 1, got {params.q}")


def potential_energy(params: ProblemParams, u):
    """Evaluate the energy function at u (scalar or array).

    Requires u > 0 and p < 0; q >= 1.  Values may legitimately overflow to
    +inf for extreme u; callers that expand brackets rely on that.
    """
    _require_region(params)
    u = np.asarray(u, dtype=float)
    if np.any(u <= 0.0):
        raise NonpositiveArgument("u must be > 0")
    p, q, gamma = params.p, params.q, params.gamma
    with np.errstate(over="ignore"):
        upow = np.exp(2.0 * p * np.log(u))
        if q == 1.0:
            val = u * u + u**-2.0 - (2.0 * gamma / p) * upow
        else:
            val = (u * u + u**-2.0) ** q / q - (2.0**q * gamma / p) * upow
    return float(val) if val.ndim == 0 else val


def _stationarity(params: ProblemParams, u: float) -> float:
    """Zero exactly at the energy minimizer; strictly increasing on (1, inf)."""
    p, q, gamma = params.p, params.q, params.gamma
    lu = np.log(u)
    with np.errstate(over="ignore"):
        return (
            np.exp((2.0 - 2.0 * p) * lu)
            - np.exp((-2.0 - 2.0 * p) * lu)
            - 2.0**q * gamma * (u * u + u**-2.0) ** (1.0 - q)
        )


def critical_point(params: ProblemParams) -> CriticalData:
    """Locate the energy minimum u_gamma > 1 and its level e_star.

    Admissible region: p <= -1, q >= 1.  The stationarity equation is
    strictly monotone on (1, inf), negative at 1, so a doubling bracket
    always closes.
    """
    if params.p > -1.0:
        raise UnsupportedRegion(f"critical_point needs p <= -1, got p={params.p}")
    if params.q < 1.0:
        raise UnsupportedRegion(f"critical_point needs q >= 1, got q={params.q}")
    hi = 2.0
    for _ in range(2000):
        if _stationarity(params, hi) > 0.0:
            break
        hi *= 2.0
    else:
        raise ConvergenceFailure("could not bracket the energy minimizer")
    u_gamma = brentq(
        lambda u: _stationarity(params, u), 1.0, hi, xtol=_BRENT_XTOL, rtol=_BRENT_RTOL
    )
    return CriticalData(u_gamma=float(u_gamma), e_star=potential_energy(params, u_gamma))


def turning_points(
    params: ProblemParams, E: float, critical: CriticalData | None = None
) -> TurningPoints:
    """Find the two roots of potential_energy(.) = E.

    Raises BelowMinimum for E < e_star and DegenerateLevel when E is within
    DEGENERATE_CUTOFF (relative) of e_star -- the quadrature would lose all
    digits there and the caller should use the limit formula instead.
    """
    cd = critical or critical_point(params)
    scale = max(1.0, abs(cd.e_star))
    if E < cd.e_star - DEGENERATE_CUTOFF * scale:
        raise BelowMinimum(f"E={E} is below the minimum level {cd.e_star}")
    if abs(E - cd.e_star) < DEGENERATE_CUTOFF * scale:
        raise DegenerateLevel(
            f"E={E} is within resolution of the minimum level {cd.e_star}"
        )

    def f(u: float) -> float:
        return potential_energy(params, u) - E

    lo = cd.u_gamma
    for _ in range(4000):
        lo *= 0.5
        if f(lo) > 0.0:
            break
    else:
        raise ConvergenceFailure("could not bracket u_minus")
    u_minus = brentq(f, lo, cd.u_gamma, xtol=_BRENT_XTOL, rtol=_BRENT_RTOL)

    hi = cd.u_gamma
    for _ in range(4000):
        hi *= 2.0
        if f(hi) > 0.0:
            break
    else:
        raise ConvergenceFailure("could not bracket u_plus")
    u_plus = brentq(f, cd.u_gamma, hi, xtol=_BRENT_XTOL, rtol=_BRENT_RTOL)
    return TurningPoints(u_minus=float(u_minus), u_plus=float(u_plus))


def shape_from_turning(tp: TurningPoints) -> ShapeCoords:
    """alpha = 1/(u_plus*u_minus), r = u_plus/u_minus (raises InvalidShape if alpha >= 1)."""
    if not (0.0 < tp.u_minus < tp.u_plus):
        raise InvalidShape(f"need 0 < u_minus < u_plus, got {tp}")
    return ShapeCoords(alpha=1.0 / (tp.u_plus * tp.u_minus), r=tp.u_plus / tp.u_minus)


def turning_from_shape(shape: ShapeCoords) -> TurningPoints:
    """Invert the chart: u_minus = 1/sqrt(alpha*r), u_plus = sqrt(r/alpha)."""
    u_minus = 1.0 / np.sqrt(shape.alpha * shape.r)
    u_plus = np.sqrt(shape.r / shape.alpha)
    return TurningPoints(u_minus=float(u_minus), u_plus=float(u_plus))


def gamma_energy_from_shape(p: float, q: float, shape: ShapeCoords) -> tuple[float, float]:
    """Recover (gamma, E) from shape coordinates for exponents p <= -1, q >= 1.

    Uses the closed forms obtained by solving E(u_minus) = E(u_plus) = E:

        -2^q q gamma / p = [(r^2+a^2)^q - (1+a^2 r^2)^q] / [(a r)^(q-p) (1-r^(2p))]
            q E          = [(r^2+a^2)^q - r^(2p) (1+a^2 r^2)^q] / [(a r)^q (1-r^(2p))]

    evaluated in log space so large q does not overflow; raises DomainError
    if the true value itself exceeds the floating range.
    """
    if p > -1.0 or q < 1.0:
        raise UnsupportedRegion(f"need p <= -1 and q >= 1, got p={p}, q={q}")
    a, r = shape.alpha, shape.r
    A = r * r + a * a
    B = 1.0 + a * a * r * r
    log_ar = np.log(a * r)
    r2p = np.exp(2.0 * p * np.log(r))
    log_one_minus_r2p = np.log1p(-r2p)
    # log(A^q - B^q) = q log A + log1p(-(B/A)^q); A > B >= 1 always.
    log_diff_gamma = q * np.log(A) + np.log1p(-np.exp(q * (np.log(B) - np.log(A))))
    log_gamma = (
        log_diff_gamma
        + np.log(-p)
        - q * np.log(2.0)
        - np.log(q)
        - (q - p) * log_ar
        - log_one_minus_r2p
    )
    log_diff_E = q * np.log(A) + np.log1p(
        -np.exp(2.0 * p * np.log(r) + q * (np.log(B) - np.log(A)))
    )
    log_E = log_diff_E - np.log(q) - q * log_ar - log_one_minus_r2p
    if log_gamma > 709.0 or log_E > 709.0:
        raise DomainError("gamma or E overflows the floating range")
    return float(np.exp(log_gamma)), float(np.exp(log_E))


# ---------------------------------------------------------------------------
# constant solutions
# ---------------------------------------------------------------------------


def constant_equation_lhs(p: float, q: float, c):
    """Left side of the constant-solution equation c^-p ((c+1/c)/2)^(q-1) (c-1/c)/2."""
    c = np.asarray(c, dtype=float)
    with np.errstate(over="ignore"):
        val = (
            np.exp(-p * np.log(c))
            * ((c + 1.0 / c) / 2.0) ** (q - 1.0)
            * ((c - 1.0 / c) / 2.0)
        )
    return float(val) if val.ndim == 0 else val


def gamma0_threshold(p: float) -> float:
    """Peak value of the q = 1 constant equation for p > 1.

    Above this gamma no constant solution exists; below it there are two.
    """
    if p <= 1.0:
        raise UnsupportedRegion(f"gamma0 is defined for p > 1, got p={p}")
    return (p - 1.0) ** ((p - 1.0) / 2.0) / (p + 1.0) ** ((p + 1.0) / 2.0)


def _log_derivative_roots(p: float, q: float) -> list[float]:
    """Interior critical points of the constant equation on c in (1, inf).

    With x = (c^2-1)/(c^2+1) in (0,1) the log-derivative is
    (-p + (q-1) x + 1/x) / c-scale, so critical points solve the quadratic
    (q-1) x^2 - p x + 1 = 0.
    """
    a, b, cc = q - 1.0, -p, 1.0
    if a == 0.0:
        if b == 0.0:
            return []
        x = -cc / b
        xs = [x]
    else:
        disc = b * b - 4.0 * a * cc
        if disc <= 0.0:
            return []
        root = np.sqrt(disc)
        xs = [(-b - root) / (2.0 * a), (-b + root) / (2.0 * a)]
    out = []
    for x in xs:
        if 0.0 < x < 1.0:
            t = (1.0 + x) / (1.0 - x)  # t = c^2
            out.append(float(np.sqrt(t)))
    return sorted(out)


def constant_solutions(params: ProblemParams) -> tuple[list[float], float | None]:
    """All constant solutions c > 1, plus the threshold gamma0 when p > 1, q = 1.

    The left side vanishes at c = 1 and its sign structure on (1, inf) is
    resolved by the critical points of its logarithm: one root per monotone
    segment crossing gamma.  For q = 1 this reproduces the full census
    (two/one/zero roots around gamma0 for p > 1, a single root for p <= 1
    away from the p = 1 saturation case).
    """
    if params.q < 1.0:
        raise UnsupportedRegion(f"constant_solutions needs q >= 1, got q={params.q}")
    p, q, gamma = params.p, params.q, params.gamma

    def f(c: float) -> float:
        return constant_equation_lhs(p, q, c) - gamma

    # p = 1, q = 1: lhs = (1 - c^-2)/2 saturates at 1/2.
    if q == 1.0 and p == 1.0:
        if gamma >= 0.5:
            return [], None
        return [float(1.0 / np.sqrt(1.0 - 2.0 * gamma))], None

    gamma0 = None
    if q == 1.0 and p > 1.0:
        gamma0 = gamma0_threshold(p)
        c_star = float(np.sqrt((p + 1.0) / (p - 1.0)))
        rel = (gamma - gamma0) / gamma0
        if abs(rel) <= 4.0 * np.finfo(float).eps:
            return [c_star], gamma0
        if gamma > gamma0:
            return [], gamma0
        left = brentq(f, 1.0 + 1e-280, c_star, xtol=_BRENT_XTOL, rtol=_BRENT_RTOL)
        hi = c_star * 2.0
        while f(hi) > 0.0:
            hi *= 2.0
        right = brentq(f, c_star, hi, xtol=_BRENT_XTOL, rtol=_BRENT_RTOL)
        return [float(left), float(right)], gamma0

    # General case: split (1, inf) into monotone segments at the interior
    # critical points of log(lhs) and bracket each crossing.
    crits = _log_derivative_roots(p, q)
    roots: list[float] = []
    segments: list[tuple[float, float | None]] = []
    lo = 1.0
    for c in crits:
        segments.append((lo, c))
        lo = c
    segments.append((lo, None))
    for lo, hi in segments:
        f_lo = -gamma if lo == 1.0 else f(lo)
        if hi is None:
            # unbounded tail: lhs -> +inf when q > p (c^(q-p) growth), else -> 0
            tail_sign = 1.0 if q - p > 0.0 else -1.0
            if np.sign(f_lo) == tail_sign or f_lo == 0.0:
                continue
            hh = max(2.0 * lo, 2.0)
            for _ in range(4000):
                if np.sign(f(hh)) == tail_sign:
                    break
                hh *= 2.0
            else:
                continue
            hi = hh
        if np.sign(f_lo) == np.sign(f(hi)):
            continue
        lo_eff = lo if lo > 1.0 else 1.0 + 1e-280
        roots.append(float(brentq(f, lo_eff, hi, xtol=_BRENT_XTOL, rtol=_BRENT_RTOL)))
    return sorted(set(roots)), gamma0
