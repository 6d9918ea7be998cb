"""Shared test fixtures and independent oracles.

The tanh-sinh integrator below is the cross-check route for period values:
it integrates the raw energy-chart integral directly in u, with no shared
code or substitution with the production Gauss-Chebyshev engine.
"""

import numpy as np
import pytest

from horoperiod import ProblemParams, integrand_energy, turning_points


def tanh_sinh_period(params: ProblemParams, E: float, levels: int = 9) -> float:
    """Direct double-exponential evaluation of the half-period integral.

    Handles the inverse-square-root endpoint singularities through the
    tanh(sinh) map; refines the trapezoid step until two levels agree.
    """
    tp = turning_points(params, E)
    center = 0.5 * (tp.u_plus + tp.u_minus)
    half = 0.5 * (tp.u_plus - tp.u_minus)
    t_max = 4.0

    def level_sum(h: float) -> float:
        t = np.arange(-int(t_max / h), int(t_max / h) + 1) * h
        s = np.sinh(t) * (np.pi / 2.0)
        u = center + half * np.tanh(s)
        w = half * (np.pi / 2.0) * np.cosh(t) / np.cosh(s) ** 2
        f = integrand_energy(params, u, E)
        good = f > 0.0
        return float(np.sum(w[good] / np.sqrt(f[good])) * h)

    h = 0.5
    prev = level_sum(h)
    for _ in range(levels):
        h /= 2.0
        cur = level_sum(h)
        if abs(cur - prev) < 1e-12 * max(1.0, abs(cur)):
            return cur
        prev = cur
    return prev


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20240817)


@pytest.fixture(scope="session")
def oracle_period():
    return tanh_sinh_period
