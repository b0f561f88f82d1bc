"""Closed-form ISL distance model for a single LEO shell.

Assumes a perfectly spherical Earth and circular orbits.  Satellites within
a plane stay evenly spaced, so the intra-plane hop length is constant, while
adjacent planes converge toward higher latitudes, so the inter-plane hop
length oscillates with the orbital phase (max at the equator crossings).
All lengths are kilometers, times seconds; angles enter in degrees and are
converted to radians internally.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, NoSuchLink


@dataclass(frozen=True)
class PhysicalConstants:
    """Earth model and unit-conversion constants."""

    earth_radius_km: float = 6371.0
    mu_m3_s2: float = 3.986004418e14
    c_km_s: float = 299792.458

    def __post_init__(self):
        if min(self.earth_radius_km, self.mu_m3_s2, self.c_km_s) <= 0:
            raise DomainError("physical constants must be strictly positive")


DEFAULT_CONSTANTS = PhysicalConstants()


@dataclass(frozen=True)
class ShellParams:
    """One constellation shell: N planes of M evenly spaced satellites."""

    planes: int
    sats_per_plane: int
    altitude_km: float
    inclination_deg: float

    def __post_init__(self):
        if self.planes < 1 or self.sats_per_plane < 1:
            raise DomainError("shell needs at least one plane and one satellite per plane")
        if self.altitude_km <= 0:
            raise DomainError("altitude must be positive")
        if not 0.0 < self.inclination_deg < 180.0:
            raise DomainError("inclination must lie strictly between 0 and 180 degrees")

    @property
    def dims(self) -> tuple[int, int]:
        """Torus dimensions (planes, sats_per_plane)."""
        return (self.planes, self.sats_per_plane)


@dataclass(frozen=True)
class HopWeights:
    """Per-axis edge lengths when the shell is treated as a weighted torus.

    ``inter_plane_km`` is the horizontal hop weight (either the maximum or
    the time-mean inter-plane distance, per ``metric_kind``);
    ``intra_plane_km`` is the constant in-plane hop length.
    """

    inter_plane_km: float
    intra_plane_km: float
    metric_kind: str  # "max" or "mean"

    def __post_init__(self):
        if self.inter_plane_km <= 0 or self.intra_plane_km <= 0:
            raise DomainError("hop weights must be strictly positive")
        if self.metric_kind not in ("max", "mean"):
            raise DomainError(f"unknown metric kind {self.metric_kind!r}")


def orbit_radius_km(shell: ShellParams, consts: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    return consts.earth_radius_km + shell.altitude_km


def orbital_period(shell: ShellParams, consts: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    """Circular-orbit period in seconds (Kepler's third law)."""
    a_m = orbit_radius_km(shell, consts) * 1000.0
    return 2.0 * math.pi * math.sqrt(a_m**3 / consts.mu_m3_s2)


def orbital_speed(shell: ShellParams, consts: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    """Orbital speed in km/s."""
    return 2.0 * math.pi * orbit_radius_km(shell, consts) / orbital_period(shell, consts)


def _ring_chord(radius_km: float, count: int) -> float:
    # chord between adjacent points of `count` evenly spaced on a circle
    return radius_km * math.sqrt(2.0 * (1.0 - math.cos(2.0 * math.pi / count)))


def intra_plane_hop(shell: ShellParams, consts: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    """Constant distance between in-plane neighbors."""
    if shell.sats_per_plane < 2:
        raise NoSuchLink("intra-plane links need at least two satellites per plane")
    return _ring_chord(orbit_radius_km(shell, consts), shell.sats_per_plane)


def inter_plane_hop_max(shell: ShellParams, consts: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    """Maximum distance between adjacent-plane neighbors, reached at the equator."""
    if shell.planes < 2:
        raise NoSuchLink("inter-plane links need at least two planes")
    return _ring_chord(orbit_radius_km(shell, consts), shell.planes)


def inter_plane_hop_at(
    shell: ShellParams, t_s: float, consts: PhysicalConstants = DEFAULT_CONSTANTS
) -> float:
    """Distance between adjacent-plane neighbors at time ``t_s``.

    ``t_s = 0`` corresponds to the ascending node (equator crossing); the
    value is periodic with half the orbital period.
    """
    phase = 2.0 * math.pi * t_s / orbital_period(shell, consts)
    cos_i = math.cos(math.radians(shell.inclination_deg))
    factor = math.sqrt(math.cos(phase) ** 2 + (cos_i * math.sin(phase)) ** 2)
    return inter_plane_hop_max(shell, consts) * factor


def complete_elliptic_e(m: float) -> float:
    """Complete elliptic integral of the second kind, parameter convention.

    E(m) = integral of sqrt(1 - m sin^2 t) for t in [0, pi/2], evaluated by
    arithmetic-geometric-mean iteration (absolute error below 1e-12).
    """
    if not 0.0 <= m <= 1.0:
        raise DomainError(f"elliptic parameter m={m} outside [0, 1]")
    if m == 0.0:
        return math.pi / 2.0
    if m == 1.0:
        return 1.0
    a, b = 1.0, math.sqrt(1.0 - m)
    c = math.sqrt(m)
    c_sum = 0.5 * c * c
    scale = 0.5  # 2**(n-1)
    for _ in range(64):
        a, b, c = 0.5 * (a + b), math.sqrt(a * b), 0.5 * (a - b)
        scale *= 2.0
        c_sum += scale * c * c
        if abs(c) < 1e-17:
            break
    k_complete = math.pi / (2.0 * a)
    return k_complete * (1.0 - c_sum)


def inter_plane_hop_mean(
    shell: ShellParams, consts: PhysicalConstants = DEFAULT_CONSTANTS
) -> float:
    """Time-mean distance between adjacent-plane neighbors over one period."""
    m = math.sin(math.radians(shell.inclination_deg)) ** 2
    return (2.0 / math.pi) * inter_plane_hop_max(shell, consts) * complete_elliptic_e(m)


def km_to_ms(d_km: float, consts: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    """One-way propagation delay of a vacuum laser link, in milliseconds."""
    if d_km < 0:
        raise DomainError("distance must be nonnegative")
    return d_km / consts.c_km_s * 1000.0


def ms_to_km(t_ms: float, consts: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    """Distance light travels in vacuum in ``t_ms`` milliseconds."""
    if t_ms < 0:
        raise DomainError("delay must be nonnegative")
    return t_ms / 1000.0 * consts.c_km_s


def hop_weights(
    shell: ShellParams, metric_kind: str, consts: PhysicalConstants = DEFAULT_CONSTANTS
) -> HopWeights:
    """Weighted-torus edge lengths for the requested metric ("max" or "mean")."""
    if metric_kind == "max":
        inter = inter_plane_hop_max(shell, consts)
    elif metric_kind == "mean":
        inter = inter_plane_hop_mean(shell, consts)
    else:
        raise DomainError(f"unknown metric kind {metric_kind!r}")
    return HopWeights(inter, intra_plane_hop(shell, consts), metric_kind)
