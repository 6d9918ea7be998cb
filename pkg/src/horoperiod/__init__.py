"""Period function and solution classification for the isotropic weighted
curvature equation of h-convex curves, reduced to the circle.

Layers:

- kernel:   energies, critical points, turning points, coordinate charts,
            constant solutions.
- period:   the half-period function in all charts, with closed-form limits.
- orbit:    trajectory integration, period measurement, solution profiles
            and their certificates.
- classify: explicit thresholds, branch counting, region scans.
- cli:      command-line surface with CSV/JSON output.
"""

from .errors import (
    BelowMinimum,
    BoundaryDivergence,
    ConvergenceFailure,
    DegenerateLevel,
    DomainError,
    DriftExceeded,
    GridTooCoarse,
    HoroperiodError,
    InvalidShape,
    NoEventFound,
    NonpositiveArgument,
    PeriodMismatch,
    StepFailure,
    UnsupportedRegion,
)
from .kernel import (
    CriticalData,
    ProblemParams,
    ShapeCoords,
    TurningPoints,
    constant_solutions,
    critical_point,
    gamma_energy_from_shape,
    gamma0_threshold,
    potential_energy,
    shape_from_turning,
    turning_from_shape,
    turning_points,
)
from .period import (
    PeriodValue,
    QuadratureConfig,
    boundary_limit_r_to_one,
    boundary_period,
    integrand_F,
    integrand_G,
    integrand_energy,
    limit_energy_to_min,
    limit_r_to_infinity,
    limit_r_to_one,
    limit_steep_potential,
    period_energy,
    period_shape,
)
from .orbit import (
    OrbitProfile,
    SolutionProfile,
    build_solution,
    constant_profile,
    first_integral,
    hconvex_bracket,
    hk_integral,
    integrate_orbit,
    measure_half_period,
    orbit_rhs,
    pde_residual,
    spectral_derivatives,
)
from .classify import (
    ClassificationReport,
    ScanConfig,
    ScanRecord,
    SolutionBranch,
    count_solutions,
    region_scan,
    threshold_gamma,
    threshold_gamma_weighted,
)

__version__ = "0.1.0"
