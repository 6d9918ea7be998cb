"""Period function of the reduced oscillation, in all three charts.

The half-period between a minimum and the next maximum of u(tau) is

    Theta = integral over [u_minus, u_plus] of du / u_tau,

an integral with inverse-square-root singularities at both turning points.
In the normalized chart (alpha, r) it becomes int_1^r ds/sqrt(F(s, alpha, r))
with F vanishing simply at both endpoints.  The engine substitutes
s^beta = x, x = ((r^beta-1)/2) z + ((r^beta+1)/2), maps the integral to
int_-1^1 dz/sqrt(J(z)) with J(+-1) = 0, writes J = (1 - z^2) W(z) and applies
Gauss-Chebyshev quadrature

    Theta ~ (pi/N) sum_k 1/sqrt(W(z_k)),   z_k = cos((2k-1) pi / (2N)),

doubling N until two refinements agree.  The Chebyshev nodes never touch
z = +-1, so W = J/(1-z^2) is evaluated without 0/0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceFailure, DomainError, UnsupportedRegion
from .kernel import (
    CriticalData,
    ProblemParams,
    ShapeCoords,
    critical_point,
    shape_from_turning,
    turning_points,
)

#: Below this r - 1 the quadrature has no digits left; the closed-form
#: limit is returned instead, with an O(r-1) error bound.
DEGENERATE_R = 1e-8


@dataclass(frozen=True)
class QuadratureConfig:
    """Node-doubling policy for the singular-endpoint quadrature."""

    target_tol: float = 1e-10
    initial_nodes: int = 16
    max_nodes: int = 2**20
    beta: float = 1.0

    def __post_init__(self):
        if self.target_tol <= 0:
            raise DomainError("target_tol must be positive")
        if self.initial_nodes < 8:
            raise DomainError("initial_nodes must be >= 8")
        if self.max_nodes < self.initial_nodes:
            raise DomainError("max_nodes must be >= initial_nodes")
        if self.beta <= 0:
            raise DomainError("beta must be positive")


DEFAULT_QUADRATURE = QuadratureConfig()


@dataclass(frozen=True)
class PeriodValue:
    """A computed half-period with its a-posteriori error estimate."""

    value: float
    error_estimate: float
    nodes_used: int


def _check_pq(p: float, q: float):
    if p > -1.0:
        raise UnsupportedRegion(f"period engine needs p <= -1, got p={p}")
    if q < 1.0:
        raise UnsupportedRegion(f"period engine needs q >= 1, got q={q}")


def integrand_F(p: float, q: float, s, alpha: float, r: float, _es=None):
    """Normalized-chart integrand F(s, alpha, r) on 1 <= s <= r.

    Vanishes at s = 1 and s = r and is positive between.  Evaluated in a
    regrouped form built from expm1/log1p so that no O(1) cancellation
    occurs near either endpoint or for r close to 1:

        F = B expm1( log1p(lam * expm1(q log(A/B))) / q )
            + (s^2 - 1)(alpha^2 r^2 / s^2 - 1),

    A = r^2 + alpha^2, B = 1 + alpha^2 r^2,
    lam = expm1(2p log1p(s-1)) / expm1(2p log1p(r-1)) in [0, 1].
    """
    if not (0.0 < alpha < 1.0 < r):
        raise DomainError(f"need 0 < alpha < 1 < r, got alpha={alpha}, r={r}")
    _check_pq(p, q)
    s_arr = np.asarray(s, dtype=float)
    es = s_arr - 1.0 if _es is None else np.asarray(_es, dtype=float)
    if np.any(es < -1e-15) or np.any(s_arr > r * (1.0 + 1e-15)):
        raise DomainError("s outside [1, r]")
    es = np.maximum(es, 0.0)
    lam = np.expm1(2.0 * p * np.log1p(es)) / np.expm1(2.0 * p * np.log1p(r - 1.0))
    a2 = alpha * alpha
    # (r^2+a^2) - (1+a^2 r^2) in factored form; r*r - 1.0 would cancel badly
    diff_AB = (r - 1.0) * (r + 1.0) * (1.0 - a2)
    tail = es * (s_arr + 1.0) * (a2 * r * r / (s_arr * s_arr) - 1.0)
    if q == 1.0:
        val = lam * diff_AB + tail
    else:
        B = 1.0 + a2 * r * r
        eta = _weighted_power_mean_log(lam, q * np.log1p(diff_AB / B)) / q
        val = B * np.expm1(eta) + tail
    return float(val) if val.ndim == 0 else val


def _weighted_power_mean_log(lam, tq):
    """log(lam e^tq + (1 - lam)) computed without overflow, for lam in [0,1], tq >= 0."""
    with np.errstate(over="ignore", divide="ignore"):
        g = lam * np.expm1(tq)
        out = np.log1p(g)
        if np.any(~np.isfinite(g)):
            # lam e^tq overflowed; log1p(g) ~ log(lam) + tq there
            out = np.where(
                np.isfinite(g), out, np.log(np.maximum(lam, 1e-320)) + tq
            )
    return out


def integrand_G(p: float, u, u_minus: float, u_plus: float):
    """Turning-point-chart integrand (q = 1): the u_tau^2 profile between u_minus and u_plus.

    Satisfies F(s, alpha, r) = G(s u_minus, u_minus, u_plus) / u_minus^2 under
    s = u/u_minus, which the tests check pointwise.
    """
    u = np.asarray(u, dtype=float)
    um2p = u_minus**(2.0 * p)
    up2p = u_plus**(2.0 * p)
    lam = (um2p - u ** (2.0 * p)) / (um2p - up2p)
    val = (
        lam * (u_plus**2 + u_plus**-2)
        + (1.0 - lam) * (u_minus**2 + u_minus**-2)
        - u * u
        - u**-2.0
    )
    return float(val) if val.ndim == 0 else val


def integrand_energy(params: ProblemParams, u, E: float):
    """u_tau^2 at level E in the raw u chart (used by quadrature cross-checks)."""
    u = np.asarray(u, dtype=float)
    p, q, gamma = params.p, params.q, params.gamma
    upow = np.exp(2.0 * p * np.log(u))
    if q == 1.0:
        val = E + (2.0 * gamma / p) * upow - u * u - u**-2.0
    else:
        val = (q * E + (2.0**q * q * gamma / p) * upow) ** (1.0 / q) - u * u - u**-2.0
    return float(val) if val.ndim == 0 else val


def _chebyshev_nodes(N: int):
    k = np.arange(1, N + 1)
    half_angle = (2 * k - 1) * np.pi / (4 * N)
    z = np.cos(2.0 * half_angle)
    one_plus_z = 2.0 * np.cos(half_angle) ** 2
    one_minus_z = 2.0 * np.sin(half_angle) ** 2
    return z, one_plus_z, one_minus_z


def _refine(w_eval, cfg: QuadratureConfig) -> PeriodValue:
    """Node-doubling Gauss-Chebyshev loop over W = J/(1-z^2).

    Keeps the refinement with the smallest successive difference; if the
    target is unreachable (max_nodes, or the integrand hits its floating
    noise floor and stops being positive) the best value is attached to
    the ConvergenceFailure.
    """
    N = cfg.initial_nodes
    prev = None
    best: tuple[float, float, int] | None = None
    while True:
        W = w_eval(N)
        valid = np.isfinite(W) & (W > 0.0)
        if not np.all(valid):
            break
        val = (np.pi / N) * float(np.sum(1.0 / np.sqrt(W)))
        if prev is not None:
            diff = abs(val - prev)
            if best is None or diff < best[1]:
                best = (val, diff, N)
            if diff < cfg.target_tol:
                return PeriodValue(value=val, error_estimate=diff, nodes_used=N)
        if N >= cfg.max_nodes:
            break
        prev = val
        N *= 2
    if best is None:
        raise ConvergenceFailure("quadrature produced no valid refinement")
    pv = PeriodValue(value=best[0], error_estimate=best[1], nodes_used=best[2])
    raise ConvergenceFailure(
        f"quadrature stalled at error {pv.error_estimate:.3e} "
        f"(target {cfg.target_tol:.1e}, N={pv.nodes_used})",
        best=pv,
    )


def _substituted_w(p: float, q: float, r: float, beta: float, f_of_s):
    """Build W(z) = J(z)/(1-z^2) for the s^beta = x substitution."""
    rbm1 = math.expm1(beta * math.log1p(r - 1.0))
    if not math.isfinite(rbm1):
        raise DomainError(f"r^beta overflows for r={r}, beta={beta}")
    log_rbm1 = math.log(rbm1)

    def w_eval(N: int):
        z, one_plus, one_minus = _chebyshev_nodes(N)
        xm1 = rbm1 * one_plus / 2.0
        x = 1.0 + xm1
        es = np.expm1(np.log1p(xm1) / beta)
        s = 1.0 + es
        F = f_of_s(s, es)
        logpref = (
            math.log(4.0) + 2.0 * math.log(beta) - 2.0 * log_rbm1
            + (2.0 * (beta - 1.0) / beta) * np.log(x)
        )
        J = np.exp(logpref) * F
        return J / (one_plus * one_minus)

    return w_eval


def period_shape(
    p: float,
    q: float,
    shape: ShapeCoords,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
) -> PeriodValue:
    """Half-period Theta{alpha, r} by singular-endpoint quadrature.

    For r - 1 < DEGENERATE_R the quadrature has no digits left and the
    closed-form r -> 1 limit is returned with error_estimate = r - 1.
    """
    _check_pq(p, q)
    alpha, r = shape.alpha, shape.r
    if r - 1.0 < DEGENERATE_R:
        return PeriodValue(
            value=limit_r_to_one(p, q, alpha), error_estimate=r - 1.0, nodes_used=0
        )

    def f_of_s(s, es):
        return integrand_F(p, q, s, alpha, r, _es=es)

    return _refine(_substituted_w(p, q, r, cfg.beta, f_of_s), cfg)


def period_energy(
    params: ProblemParams,
    E: float,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
    critical: CriticalData | None = None,
) -> PeriodValue:
    """Half-period at energy level E: turning points -> shape chart -> quadrature."""
    tp = turning_points(params, E, critical)
    return period_shape(params.p, params.q, shape_from_turning(tp), cfg)


def boundary_period(
    p: float, q: float, r: float, cfg: QuadratureConfig = DEFAULT_QUADRATURE
) -> PeriodValue:
    """The alpha = 0 boundary period, a strict lower bound for the interior.

    Uses the substitution exponent beta = (4q - 2p)/3, which flattens the
    integrand near r = 1 (cfg.beta is ignored here).
    """
    _check_pq(p, q)
    if r <= 1.0:
        raise DomainError(f"need r > 1, got r={r}")
    if r - 1.0 < DEGENERATE_R:
        return PeriodValue(
            value=boundary_limit_r_to_one(p, q), error_estimate=r - 1.0, nodes_used=0
        )
    beta = (4.0 * q - 2.0 * p) / 3.0
    den = math.expm1(2.0 * p * math.log1p(r - 1.0))  # r^(2p) - 1 < 0

    def f_of_s(s, es):
        lam = np.expm1(2.0 * p * np.log1p(es)) / den
        if q == 1.0:
            return lam * (r - 1.0) * (r + 1.0) - es * (s + 1.0)
        eta = _weighted_power_mean_log(lam, q * np.log1p((r - 1.0) * (r + 1.0))) / q
        return np.expm1(eta) - es * (s + 1.0)

    return _refine(_substituted_w(p, q, r, beta, f_of_s), cfg)


# ---------------------------------------------------------------------------
# closed-form limits of the period function
# ---------------------------------------------------------------------------


def limit_steep_potential(alpha: float, r: float) -> float:
    """Common limit of Theta{alpha, r} as p -> -inf or q -> +inf: arccos sqrt((1-a^2)/(r^2-a^2))."""
    if not (0.0 <= alpha < 1.0 < r):
        raise DomainError(f"need 0 <= alpha < 1 < r, got alpha={alpha}, r={r}")
    return float(np.arccos(np.sqrt((1.0 - alpha * alpha) / (r * r - alpha * alpha))))


def limit_r_to_one(p: float, q: float, alpha: float) -> float:
    """Limit of Theta{alpha, r} as r -> 1 (harmonic oscillation about the minimum)."""
    if not (0.0 <= alpha <= 1.0):
        raise DomainError(f"need 0 <= alpha <= 1, got alpha={alpha}")
    a2 = alpha * alpha
    den = (2.0 - 2.0 * p) + (2.0 + 2.0 * p) * a2
    if q != 1.0:
        den += (2.0 * q - 2.0) * (1.0 - a2) ** 2 / (1.0 + a2)
    if den <= 0.0:
        raise DomainError("nonpositive curvature in the r -> 1 limit")
    return float(np.pi / np.sqrt(den))


def limit_energy_to_min(
    params: ProblemParams, critical: CriticalData | None = None
) -> float:
    """Limit of the half-period as E decreases to the minimum level.

    Equals the r -> 1 limit evaluated at alpha = u_gamma^-2.
    """
    cd = critical or critical_point(params)
    return limit_r_to_one(params.p, params.q, cd.u_gamma**-2.0)


def limit_r_to_infinity() -> float:
    """Limit as r -> inf (equivalently E -> inf, or gamma -> 0): pi/2."""
    return float(np.pi / 2.0)


def boundary_limit_r_to_one(p: float, q: float) -> float:
    """Limit of the alpha = 0 boundary period as r -> 1: pi/sqrt(2q - 2p)."""
    _check_pq(p, q)
    return float(np.pi / np.sqrt(2.0 * q - 2.0 * p))
