"""Dynamics of a one-parameter family of third-order iterations on quadratics.

The library studies the rational operator the family induces on the extended
complex plane after sending the two roots to 0 and infinity: closed-form
fixed/critical point data with stability classification, a periodic-orbit
census by polynomial composition, and escape-time rasters of dynamical and
parameter planes.
"""
from .complex_poly import NonConvergence, Poly, RationalFn, poly_roots, reduce
from .extplane import INF, is_inf
from .families import (
    ONE_POINT,
    TWO_POINT_A,
    TWO_POINT_B,
    DerivativeZero,
    FamilyId,
    FuncTriple,
    MobiusMap,
    PoleHit,
    check_scaling,
    conjugated_map,
    convergence_order,
    family_step,
    mobius,
    mobius_inv,
    multiple_root,
    quadratic_triple,
)
from .operator_s import (
    CriticalPoint,
    DomainExcluded,
    ParamA,
    StabilityReport,
    classify_modulus,
    critical_points,
    fixed_points,
    free_critical_points,
    in_stability_disk_z1,
    in_stability_disk_z23,
    s_apply,
    s_prime,
    stability_profile,
    stability_z1,
    stability_z23,
    strange_fixed_point_pair,
    sweep_critical_points,
    sweep_fixed_points,
)
from .orbits import (
    GroupingFailure,
    Orbit,
    compose_rational,
    find_periodic_orbits,
    orbit_multiplier,
    s_as_rational,
)
from .render import (
    IterConfig,
    RasterGrid,
    Window,
    classify_orbit,
    dyn_plane,
    param_plane,
    render_report,
    write_pgm,
    write_ppm,
)
from .verify import CheckResult, run_all

__version__ = "0.1.0"
