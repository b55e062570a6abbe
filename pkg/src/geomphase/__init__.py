"""geomphase: geometric and Pancharatnam phases for finite-dimensional
quantum systems.

Core objects: StateVector / RayPoint (states and rays), Trajectory (sampled
curves), GeneratorSpec (Hamiltonians).  The main entry points are aa_phase
(geometric phase of a cyclic evolution), close_loop_phase / curvature_flux
(holonomy and its surface integral) and pancharatnam_integral /
bargmann_triangle (relative phases along geodesics).
"""

__version__ = "0.1.0"

from .errors import (
    BoundaryMismatchError,
    ConfigError,
    DimensionMismatchError,
    EndpointsNotOnSameRayError,
    GeomphaseError,
    IdenticalRaysError,
    NonFiniteStateError,
    NotCyclicError,
    OrthogonalStatesError,
    OrthogonalTriangleVerticesError,
)
from .states import (
    RayPoint,
    StateVector,
    in_phase,
    inner,
    project,
    ray_distance,
    relative_phase,
)
from .evolution import (
    GeneratorSpec,
    PhaseReport,
    Trajectory,
    aa_phase,
    constant_generator,
    dynamical_phase,
    expectation_h,
    integrate_schrodinger,
    phase_report,
    remove_dynamical_phase,
    transport_residual,
)
from .connection import (
    ConnectionSamples,
    SurfacePatch,
    close_loop_phase,
    connection_along,
    curvature_flux,
    gauge_transform,
    holonomy_element,
    is_horizontal,
    line_integral,
    stokes_residual,
    vertical_component,
)
from .geodesic import (
    GeodesicArc,
    bargmann_triangle,
    geodesic_between,
    geodesic_point,
    geodesic_trajectory,
    horizontal_overlap,
    normalization_residual,
    pancharatnam_integral,
)
from .presets import (
    build_preset,
    preset_spin_half_rotating_field,
    spin_half_adapted_state,
    spin_half_expected_phase,
    spin_half_field_tilt,
    spin_half_period,
)
from .numerics import circ_distance, wrap_angle

__all__ = [
    "__version__",
    # errors
    "GeomphaseError", "DimensionMismatchError", "NonFiniteStateError",
    "OrthogonalStatesError", "IdenticalRaysError", "NotCyclicError",
    "EndpointsNotOnSameRayError", "OrthogonalTriangleVerticesError",
    "BoundaryMismatchError", "ConfigError",
    # states
    "StateVector", "RayPoint", "inner", "project", "relative_phase",
    "in_phase", "ray_distance",
    # evolution
    "GeneratorSpec", "Trajectory", "PhaseReport", "constant_generator",
    "integrate_schrodinger", "expectation_h", "dynamical_phase",
    "remove_dynamical_phase", "transport_residual", "phase_report", "aa_phase",
    # connection
    "ConnectionSamples", "SurfacePatch", "connection_along", "gauge_transform",
    "line_integral", "close_loop_phase", "holonomy_element", "is_horizontal",
    "vertical_component", "curvature_flux", "stokes_residual",
    # geodesics
    "GeodesicArc", "geodesic_between", "geodesic_point", "geodesic_trajectory",
    "normalization_residual", "horizontal_overlap", "pancharatnam_integral",
    "bargmann_triangle",
    # presets
    "preset_spin_half_rotating_field", "spin_half_field_tilt",
    "spin_half_adapted_state", "spin_half_period", "spin_half_expected_phase",
    "build_preset",
    # numerics
    "wrap_angle", "circ_distance",
]
