"""Orbit integration, period measurement, solution profiles and certificates.

The reduced variable u(tau) obeys

    u_tautau = u^-3 - u + 2^q gamma u^(2p-1) (u_tau^2 + u^2 + u^-2)^(1-q),

with the conserved first integral from the kernel module.  A non-constant
2pi-periodic solution phi(theta) of the original equation corresponds to an
orbit whose half-period equals pi/(2m) for an integer m >= 2, via
phi(theta) = u(theta/2)^2.

Certification of a profile is independent of how it was built: derivatives
are recomputed spectrally from the phi samples, the equation residual and
the Heintze-Karcher integral are evaluated on the grid, and h-convexity is
the positivity of the curvature bracket

    A[phi] = phi_thth - phi_th^2/(2 phi) + (phi - 1/phi)/2.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq

from .errors import (
    DegenerateLevel,
    DriftExceeded,
    GridTooCoarse,
    NoEventFound,
    NonpositiveArgument,
    PeriodMismatch,
    StepFailure,
)
from .kernel import CriticalData, ProblemParams, critical_point, turning_points

_BRENT_RTOL = 4.0 * float(np.finfo(float).eps)


@dataclass
class OrbitProfile:
    """A sampled trajectory of the reduced oscillation at energy E."""

    tau: np.ndarray
    u: np.ndarray
    u_tau: np.ndarray
    params: ProblemParams
    E: float
    drift: float
    dense: object | None = field(default=None, repr=False)  # scipy OdeSolution


@dataclass
class SolutionProfile:
    """A sampled 2pi-periodic solution phi(theta) with its certificates.

    m = 0 marks a constant profile; m >= 2 an m-fold symmetric branch.
    """

    theta: np.ndarray
    phi: np.ndarray
    m: int
    params: ProblemParams
    E: float
    half_period: float
    residual_max: float
    hconvex_min: float
    hk_value: float

    def to_dict(self) -> dict:
        return {
            "schema_version": "1",
            "kind": "solution_profile",
            "p": self.params.p,
            "q": self.params.q,
            "gamma": self.params.gamma,
            "E": self.E,
            "m": self.m,
            "half_period": self.half_period,
            "residual_max": self.residual_max,
            "hconvex_min": self.hconvex_min,
            "hk_value": self.hk_value,
            "theta": self.theta.tolist(),
            "phi": self.phi.tolist(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SolutionProfile":
        params = ProblemParams(p=d["p"], gamma=d["gamma"], q=d["q"])
        return cls(
            theta=np.asarray(d["theta"], dtype=float),
            phi=np.asarray(d["phi"], dtype=float),
            m=int(d["m"]),
            params=params,
            E=float(d["E"]),
            half_period=float(d["half_period"]),
            residual_max=float(d["residual_max"]),
            hconvex_min=float(d["hconvex_min"]),
            hk_value=float(d["hk_value"]),
        )


def orbit_rhs(params: ProblemParams, u: float, u_tau: float) -> float:
    """Acceleration u_tautau of the reduced oscillation."""
    if u <= 0.0:
        raise NonpositiveArgument("u must be > 0")
    p, q, gamma = params.p, params.q, params.gamma
    if q == 1.0:
        return u**-3.0 - u + 2.0 * gamma * u ** (2.0 * p - 1.0)
    w = u_tau * u_tau + u * u + u**-2.0
    return u**-3.0 - u + 2.0**q * gamma * u ** (2.0 * p - 1.0) * w ** (1.0 - q)


def first_integral(params: ProblemParams, u, u_tau):
    """Conserved quantity along orbits; equals E on an exact trajectory."""
    u = np.asarray(u, dtype=float)
    u_tau = np.asarray(u_tau, dtype=float)
    p, q, gamma = params.p, params.q, params.gamma
    w = u_tau * u_tau + u * u + u**-2.0
    upow = np.exp(2.0 * p * np.log(u))
    if q == 1.0:
        val = w - (2.0 * gamma / p) * upow
    else:
        val = w**q / q - (2.0**q * gamma / p) * upow
    return float(val) if val.ndim == 0 else val


def integrate_orbit(
    params: ProblemParams,
    E: float,
    duration: float,
    rtol: float = 1e-10,
    atol: float = 1e-10,
    drift_tol: float = 1e-8,
    method: str = "RK45",
    samples: int = 2048,
    critical: CriticalData | None = None,
) -> OrbitProfile:
    """Integrate from the minimum turning point with zero velocity.

    The orbit starts at u(0) = u_minus, u_tau(0) = 0, pinning the rotation
    phase so profiles are canonical representatives.  The first-integral
    drift over the sampled trajectory is the quality gate: DriftExceeded
    (with the orbit attached) if it exceeds drift_tol.

    A level within resolution of the minimum returns the constant
    equilibrium orbit u = u_gamma.
    """
    cd = critical or critical_point(params)
    try:
        tp = turning_points(params, E, cd)
    except DegenerateLevel:
        tau = np.linspace(0.0, duration, samples)
        return OrbitProfile(
            tau=tau,
            u=np.full_like(tau, cd.u_gamma),
            u_tau=np.zeros_like(tau),
            params=params,
            E=cd.e_star,
            drift=abs(E - cd.e_star),
            dense=None,
        )

    def rhs(t, y):
        return [y[1], orbit_rhs(params, y[0], y[1])]

    sol = solve_ivp(
        rhs,
        (0.0, duration),
        [tp.u_minus, 0.0],
        method=method,
        rtol=rtol,
        atol=atol,
        dense_output=True,
    )
    if sol.status != 0:
        raise StepFailure(f"integrator stopped early: {sol.message}")
    tau = np.linspace(0.0, duration, samples)
    u, u_tau = sol.sol(tau)
    drift = float(np.max(np.abs(first_integral(params, u, u_tau) - E)))
    orbit = OrbitProfile(
        tau=tau, u=u, u_tau=u_tau, params=params, E=E, drift=drift, dense=sol.sol
    )
    if drift > drift_tol:
        raise DriftExceeded(
            f"first-integral drift {drift:.3e} exceeds {drift_tol:.1e}",
            orbit=orbit,
            drift=drift,
        )
    return orbit


def measure_half_period(orbit: OrbitProfile) -> float:
    """Tau gap between consecutive zeros of u_tau (turning events).

    Zeros are located by sign change on the sample grid and polished on the
    dense output.  The orbit starts at a turning point, so the first gap is
    the half-period.
    """
    if orbit.dense is None:
        raise NoEventFound("constant orbit has no turning events")
    v_scale = float(np.max(np.abs(orbit.u_tau)))
    if v_scale <= 0.0:
        raise NoEventFound("velocity identically zero")

    def v(t):
        return orbit.dense(t)[1]

    zeros = [0.0]
    tau, u_tau = orbit.tau, orbit.u_tau
    for i in np.where(np.sign(u_tau[:-1]) != np.sign(u_tau[1:]))[0]:
        if u_tau[i] == 0.0 or u_tau[i + 1] == 0.0:
            continue
        t0 = brentq(v, tau[i], tau[i + 1], xtol=1e-300, rtol=_BRENT_RTOL)
        if t0 - zeros[-1] > 1e-9:
            zeros.append(float(t0))
        if len(zeros) >= 3:
            break
    if len(zeros) < 2:
        raise NoEventFound("no turning event within the integrated span")
    return zeros[1] - zeros[0]


# ---------------------------------------------------------------------------
# spectral machinery on the periodic theta grid
# ---------------------------------------------------------------------------


def spectral_derivatives(values: np.ndarray, chop: bool = True):
    """First and second derivative of a 2pi-periodic sample set by FFT.

    With chop=True, Fourier modes below 10x the detected round-off plateau
    are zeroed before differentiating (only when the plateau is at least
    ten orders below the peak, so genuine spectra are never touched).
    Differentiating raw float64 samples otherwise amplifies one-ulp noise
    by k^2 and drowns small residuals.
    """
    n = len(values)
    k = np.fft.rfftfreq(n, d=1.0 / n)
    coeff = np.fft.rfft(values)
    if chop:
        mag = np.abs(coeff)
        peak = float(mag.max())
        floor = float(np.median(mag[2 * len(mag) // 3 :]))
        if peak > 0.0 and floor < 1e-10 * peak:
            thr = max(10.0 * floor, 100.0 * float(np.finfo(float).eps) * peak)
            coeff = np.where(mag < thr, 0.0, coeff)
    d1 = np.fft.irfft(1j * k * coeff, n)
    d2 = np.fft.irfft(-(k * k) * coeff, n)
    return d1, d2


def hconvex_bracket(phi: np.ndarray, chop: bool = True) -> np.ndarray:
    """Curvature bracket A[phi] on the grid; positivity is h-convexity."""
    d1, d2 = spectral_derivatives(phi, chop=chop)
    return d2 - d1 * d1 / (2.0 * phi) + (phi - 1.0 / phi) / 2.0


def _equation_residual(params: ProblemParams, phi: np.ndarray) -> float:
    d1, d2 = spectral_derivatives(phi)
    bracket = d2 - d1 * d1 / (2.0 * phi) + (phi - 1.0 / phi) / 2.0
    p, q, gamma = params.p, params.q, params.gamma
    lhs = np.exp(-p * np.log(phi)) * bracket
    if q != 1.0:
        weight = d1 * d1 / (2.0 * phi) + (phi + 1.0 / phi) / 2.0
        lhs = lhs * weight ** (q - 1.0)
    return float(np.max(np.abs(lhs - gamma)))


def pde_residual(params: ProblemParams, profile: SolutionProfile) -> float:
    """Max-norm residual of the original equation over the profile grid."""
    if len(profile.phi) < 256:
        raise GridTooCoarse(f"need >= 256 samples, got {len(profile.phi)}")
    return _equation_residual(params, profile.phi)


def hk_integral(profile: SolutionProfile) -> float:
    """Heintze-Karcher integral; nonnegative on h-convex profiles, zero on balls."""
    phi = profile.phi
    if len(phi) < 256:
        raise GridTooCoarse(f"need >= 256 samples, got {len(phi)}")
    d1, d2 = spectral_derivatives(phi)
    bracket = d2 - d1 * d1 / (2.0 * phi) + (phi - 1.0 / phi) / 2.0
    return float(np.mean((d2 - d1 * d1 / phi) * bracket) * 2.0 * np.pi)


# ---------------------------------------------------------------------------
# profile construction
# ---------------------------------------------------------------------------


def _certified(params, theta, phi, m, E, half_period) -> SolutionProfile:
    profile = SolutionProfile(
        theta=theta,
        phi=phi,
        m=m,
        params=params,
        E=E,
        half_period=half_period,
        residual_max=0.0,
        hconvex_min=0.0,
        hk_value=0.0,
    )
    profile.residual_max = _equation_residual(params, phi)
    profile.hconvex_min = float(np.min(hconvex_bracket(phi)))
    profile.hk_value = hk_integral(profile)
    return profile


def constant_profile(
    params: ProblemParams, c: float, grid_size: int = 1024
) -> SolutionProfile:
    """Profile of a constant solution phi = c (m = 0)."""
    if c <= 0.0:
        raise NonpositiveArgument("c must be > 0")
    theta = np.arange(grid_size) * 2.0 * np.pi / grid_size
    phi = np.full(grid_size, float(c))
    return _certified(params, theta, phi, 0, float("nan"), float("nan"))


def build_solution(
    params: ProblemParams,
    E: float,
    m: int,
    grid_size: int = 1024,
    match_tol: float = 1e-7,
    critical: CriticalData | None = None,
) -> SolutionProfile:
    """Build and certify the m-fold non-constant solution at level E.

    The caller supplies E with half-period pi/(2m) (from the classifier);
    PeriodMismatch is raised when the measured half-period disagrees beyond
    match_tol.  One half-oscillation is integrated at certification-grade
    tolerances, phi(theta) = u(theta/2)^2 is sampled by even reflection
    around the measured turning times (continuous across every seam), and
    all certificates are filled in.
    """
    if m < 2:
        raise PeriodMismatch("m must be >= 2", measured=float("nan"), expected=np.pi / (2 * m))
    cd = critical or critical_point(params)
    # Half-periods for p <= -1 never exceed pi/2, so this span always
    # contains the first turning event.
    span = 0.55 * np.pi
    orbit = integrate_orbit(
        params,
        E,
        span,
        rtol=1e-13,
        atol=1e-15,
        drift_tol=np.inf,
        method="DOP853",
        critical=cd,
    )
    measured = measure_half_period(orbit)
    expected = np.pi / (2.0 * m)
    if abs(measured - expected) > match_tol:
        raise PeriodMismatch(
            f"half-period {measured!r} does not match pi/(2*{m}) = {expected!r}",
            measured=measured,
            expected=expected,
        )
    n = max(256, grid_size - grid_size % (2 * m))
    theta = np.arange(n) * 2.0 * np.pi / n
    tau = np.mod(theta / 2.0, 2.0 * measured)
    tau = np.where(tau > measured, 2.0 * measured - tau, tau)
    u = orbit.dense(tau)[0]
    phi = u * u
    return _certified(params, theta, phi, m, E, measured)
