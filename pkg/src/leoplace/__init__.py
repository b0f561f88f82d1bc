"""QoS-aware resource placement and simulation for LEO satellite shells."""

__version__ = "0.1.0"

from .errors import CapacityError, DomainError, NoSuchLink
from .geom import (
    DEFAULT_CONSTANTS,
    HopWeights,
    PhysicalConstants,
    ShellParams,
    complete_elliptic_e,
    hop_weights,
    inter_plane_hop_at,
    inter_plane_hop_max,
    inter_plane_hop_mean,
    intra_plane_hop,
    km_to_ms,
    ms_to_km,
    orbital_period,
    orbital_speed,
)
from .orbitsim import SimConfig, TimeSeries, isl_lengths, resource_distances, run_simulation, satellite_position
from .torus import (
    CoverageReport,
    DiscretePlacement,
    TorusCoord,
    assign_resources,
    brute_force_min_placement,
    lee_distance,
    perfect_placement,
    quasi_perfect_placement,
    sphere_size,
    verify_coverage,
)
from .wplace import (
    SloSpec,
    WeightedPlacement,
    placement_for_slo,
    real_d_placement,
    slo_distance_km,
    weighted_torus_distance,
)
