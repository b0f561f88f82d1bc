"""Resource placement on a torus whose two axes have unequal real hop lengths.

The discrete d-hops machinery assumes unit edges, so real distances are
normalized first: the axis with the longer hop is stretched with virtual
nodes until both axes cost the same per hop, a discrete placement is run
there, and resource coordinates are transferred back by scaling and
flooring.  Flooring can cost up to one hop along the stretched axis, which
is the documented epsilon slack on the distance guarantee.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from .errors import DomainError
from .geom import DEFAULT_CONSTANTS, HopWeights, PhysicalConstants, ShellParams, hop_weights, ms_to_km
from .torus import (
    Dims,
    DiscretePlacement,
    TorusCoord,
    _check_coord,
    assign_resources,
    min_distance_grid,
    quasi_perfect_placement,
)

_FLOAT_SLACK = 1e-9

_SLO_RE = re.compile(r"^(hops|max|mean):(\d+(?:\.\d+)?)(ms|km)?$")


@dataclass(frozen=True)
class SloSpec:
    """Service-level objective: a hop bound, or a max/mean distance bound."""

    kind: str  # "hops" | "max" | "mean"
    value: float
    unit: str | None = None  # "km" | "ms" for distance kinds

    def __post_init__(self):
        if self.kind == "hops":
            if self.unit is not None:
                raise DomainError("hop SLOs carry no unit")
            if self.value < 0 or self.value != int(self.value):
                raise DomainError("hop SLO must be a nonnegative integer")
        elif self.kind in ("max", "mean"):
            if self.unit not in ("km", "ms"):
                raise DomainError("distance SLOs need a km or ms unit")
            if self.value <= 0:
                raise DomainError("distance SLO must be positive")
        else:
            raise DomainError(f"unknown SLO kind {self.kind!r}")

    @classmethod
    def parse(cls, text: str) -> "SloSpec":
        """Parse 'hops:<int>' | 'max:<value><unit>' | 'mean:<value><unit>', unit ms|km."""
        match = _SLO_RE.match(text.strip())
        if not match:
            raise DomainError(f"malformed SLO {text!r}")
        kind, value, unit = match.groups()
        if kind == "hops" and unit is not None:
            raise DomainError(f"malformed SLO {text!r}: hop SLOs carry no unit")
        return cls(kind, float(value), unit)

    def __str__(self) -> str:
        if self.kind == "hops":
            return f"hops:{int(self.value)}"
        return f"{self.kind}:{self.value:.12g}{self.unit}"


def slo_distance_km(slo: SloSpec, consts: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    """SLO bound expressed in kilometers (ms bounds convert via light speed)."""
    if slo.kind == "hops":
        raise DomainError("hop SLOs have no distance equivalent")
    return slo.value if slo.unit == "km" else ms_to_km(slo.value, consts)


@dataclass(frozen=True)
class WeightedPlacement:
    """Resource placement satisfying a real distance bound d on a weighted torus.

    Every node's weighted distance to its assigned resource is at most
    ``d_km + epsilon_km``; ``max_distance_km`` is the measured worst case.
    """

    dims: Dims
    weights: HopWeights
    d_km: float
    resources: tuple[TorusCoord, ...]
    assignment: dict[TorusCoord, TorusCoord]
    epsilon_km: float
    max_distance_km: float

    def __post_init__(self):
        if not self.resources:
            raise DomainError("placement needs at least one resource node")


def weighted_torus_distance(a, b, dims: Dims, weights: HopWeights) -> float:
    """Length of the shortest torus route from a to b under per-axis hop weights."""
    _check_coord(a, dims)
    _check_coord(b, dims)
    n, m = dims
    dp = abs(a[0] - b[0])
    ds = abs(a[1] - b[1])
    return weights.inter_plane_km * min(dp, n - dp) + weights.intra_plane_km * min(ds, m - ds)


def real_d_placement(dims: Dims, weights: HopWeights, d_km: float) -> WeightedPlacement:
    """Place resources so every node has one within weighted distance d_km (+epsilon).

    Three regimes, by how d_km compares to the two hop lengths:

    * d below both: every node must be a resource.
    * d between them: only the cheaper axis is traversable, so each line
      along it is covered independently with stride 2*floor(d/w)+1.
    * d at least both: stretch the costlier axis by the weight ratio into a
      virtual torus, run a floor(d/w_min)-hops placement there, transfer
      coordinates back by scaling and flooring, and deduplicate.  The
      transfer can lose up to one hop on the stretched axis (epsilon).

    When the intra-plane hop is the cheaper one the virtual construction
    runs on the transposed torus and the result is transposed back.
    """
    n, m = dims
    if d_km <= 0:
        raise DomainError("target distance must be positive")
    w_inter, w_intra = weights.inter_plane_km, weights.intra_plane_km
    epsilon = 0.0
    if d_km < min(w_inter, w_intra):
        resources = [TorusCoord(p, s) for p in range(n) for s in range(m)]
    elif d_km < max(w_inter, w_intra):
        if w_intra <= d_km:  # cover each plane's ring of slots independently
            stride = 2 * int((d_km + _FLOAT_SLACK) // w_intra) + 1
            resources = [TorusCoord(p, s) for p in range(n) for s in range(0, m, stride)]
        else:  # cover each slot's ring of planes independently
            stride = 2 * int((d_km + _FLOAT_SLACK) // w_inter) + 1
            resources = [TorusCoord(p, s) for p in range(0, n, stride) for s in range(m)]
    else:
        transposed = w_intra < w_inter
        if transposed:
            len_a, len_b, w_a, w_b = m, n, w_intra, w_inter
        else:
            len_a, len_b, w_a, w_b = n, m, w_inter, w_intra
        len_b_virtual = math.ceil(len_b * w_b / w_a - _FLOAT_SLACK)
        radius = int((d_km + _FLOAT_SLACK) // w_a)
        hop_placement = quasi_perfect_placement((len_a, len_b_virtual), radius)
        shrink = len_b / len_b_virtual
        mapped = {(a, int(b * shrink)) for a, b in hop_placement.resources}
        resources = [
            TorusCoord(b, a) if transposed else TorusCoord(a, b) for a, b in mapped
        ]
        epsilon = w_b
    resources = tuple(sorted(set(resources)))
    assignment = assign_resources(dims, resources, weights)
    worst = float(min_distance_grid(dims, resources, weights).max())
    if worst > d_km + epsilon + _FLOAT_SLACK:
        raise AssertionError(
            f"coverage bound violated: worst {worst} km > {d_km} + {epsilon} km"
        )
    return WeightedPlacement(dims, weights, d_km, resources, assignment, epsilon, worst)


def placement_for_slo(
    shell: ShellParams, slo: SloSpec, consts: PhysicalConstants = DEFAULT_CONSTANTS
) -> DiscretePlacement | WeightedPlacement:
    """Build the placement a given SLO calls for on this shell.

    Hop SLOs run the discrete construction directly; distance SLOs run the
    real-distance construction with (max or mean) inter-plane weights.
    """
    if slo.kind == "hops":
        return quasi_perfect_placement(shell.dims, int(slo.value))
    weights = hop_weights(shell, slo.kind, consts)
    return real_d_placement(shell.dims, weights, slo_distance_km(slo, consts))
