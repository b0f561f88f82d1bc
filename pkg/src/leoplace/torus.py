"""Discrete d-hops resource placement on an N x M torus.

Builds on Lee-sphere perfect codes: a radius-d Lee sphere holds
k = 2d^2 + 2d + 1 nodes, and the k x k torus admits a perfect code whose
translates tile any torus with k-divisible dimensions.  Other dimensions
get a quasi-perfect covering: crop a block tiling, then patch holes with
a greedy maximum-coverage pass.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

from .errors import CapacityError, DomainError
from .geom import HopWeights


class TorusCoord(NamedTuple):
    plane: int
    slot: int


Dims = tuple[int, int]


def _check_coord(c, dims: Dims) -> None:
    n, m = dims
    if not (0 <= c[0] < n and 0 <= c[1] < m):
        raise DomainError(f"coordinate {tuple(c)} outside {n}x{m} torus")


def lee_distance(a, b, dims: Dims) -> int:
    """Hop count between two torus nodes, wraparound on both axes."""
    _check_coord(a, dims)
    _check_coord(b, dims)
    n, m = dims
    dp = abs(a[0] - b[0])
    ds = abs(a[1] - b[1])
    return min(dp, n - dp) + min(ds, m - ds)


def sphere_size(d: int) -> int:
    """Number of nodes within d hops of a node (on a large enough torus)."""
    if d < 0:
        raise DomainError("hop radius must be nonnegative")
    return 2 * d * d + 2 * d + 1


@dataclass(frozen=True)
class DiscretePlacement:
    """A resource-node set plus the node -> resource assignment, for hop radius d."""

    dims: Dims
    d: int
    resources: tuple[TorusCoord, ...]
    assignment: dict[TorusCoord, TorusCoord]

    def __post_init__(self):
        if not self.resources:
            raise DomainError("placement needs at least one resource node")
        targets = set(self.assignment.values())
        if not targets <= set(self.resources):
            raise DomainError("assignment targets must be resource nodes")


@dataclass(frozen=True)
class CoverageReport:
    covered: bool
    max_hops: int
    multiply_covered: int
    uncovered: tuple[TorusCoord, ...]


def _ball_mask(dims: Dims, d: int) -> np.ndarray:
    """Boolean (N, M) grid of torus offsets within Lee distance d of the origin."""
    n, m = dims
    dp = np.minimum(np.arange(n), n - np.arange(n))
    ds = np.minimum(np.arange(m), m - np.arange(m))
    return (dp[:, None] + ds[None, :]) <= d


def _cover_counts(grid: np.ndarray, ball: np.ndarray) -> np.ndarray:
    """Circular convolution of an indicator grid with a (symmetric) ball mask.

    Counts, for every node, how many marked nodes fall inside its ball.
    FFT round-off is far below 0.5, so rounding restores exact integers.
    """
    conv = np.fft.irfft2(
        np.fft.rfft2(grid.astype(np.float64)) * np.fft.rfft2(ball.astype(np.float64)),
        s=grid.shape,
    )
    return np.rint(conv).astype(np.int64)


def _resource_grid(dims: Dims, resources: Iterable[TorusCoord]) -> np.ndarray:
    grid = np.zeros(dims, dtype=np.float64)
    for p, s in resources:
        grid[p, s] = 1.0
    return grid


def _distance_stack(dims: Dims, resources, weights: HopWeights | None = None) -> np.ndarray:
    """(R, N, M) array of distances from each resource to every node."""
    n, m = dims
    rp = np.array([r[0] for r in resources])
    rs = np.array([r[1] for r in resources])
    dp = np.abs(np.arange(n)[None, :] - rp[:, None])
    dp = np.minimum(dp, n - dp)
    ds = np.abs(np.arange(m)[None, :] - rs[:, None])
    ds = np.minimum(ds, m - ds)
    if weights is None:
        return dp[:, :, None] + ds[:, None, :]
    return weights.inter_plane_km * dp[:, :, None] + weights.intra_plane_km * ds[:, None, :]


def min_distance_grid(dims: Dims, resources, weights: HopWeights | None = None) -> np.ndarray:
    """(N, M) grid of each node's distance to its nearest resource."""
    return _distance_stack(dims, resources, weights).min(axis=0)


def assign_resources(
    dims: Dims, resources, weights: HopWeights | None = None
) -> dict[TorusCoord, TorusCoord]:
    """Map every node to a nearest resource under the hop or weighted metric.

    Ties break toward the lexicographically smallest (plane, slot) resource.
    """
    res = sorted({TorusCoord(*r) for r in resources})
    if not res:
        raise DomainError("need at least one resource to assign to")
    for r in res:
        _check_coord(r, dims)
    stack = _distance_stack(dims, res, weights)
    nearest = np.argmin(stack, axis=0)  # first minimum: smallest coord wins ties
    n, m = dims
    return {TorusCoord(p, s): res[nearest[p, s]] for p in range(n) for s in range(m)}


def perfect_placement(d: int) -> DiscretePlacement:
    """Perfect d-hops placement on the k x k torus, k = 2d^2 + 2d + 1.

    Resource i sits at (i, 2 d^2 i mod k); every node lies within d hops of
    exactly one resource.
    """
    if d < 1:
        raise DomainError("perfect placement requires d >= 1")
    k = sphere_size(d)
    step = (2 * d * d) % k
    resources = tuple(sorted(TorusCoord(i, (step * i) % k) for i in range(k)))
    return DiscretePlacement((k, k), d, resources, assign_resources((k, k), resources))


def _greedy_cover(dims: Dims, d: int, seeds: Iterable[TorusCoord]) -> set[TorusCoord]:
    """Extend `seeds` until every node is within d hops of a chosen node.

    Repeatedly adds the node whose ball covers the most still-uncovered
    nodes; ties break toward the smallest (plane, slot).
    """
    n, m = dims
    ball = _ball_mask(dims, d)
    ball_f = np.fft.rfft2(ball.astype(np.float64))
    chosen = set(seeds)
    if chosen:
        covered = _cover_counts(_resource_grid(dims, chosen), ball) > 0
    else:
        covered = np.zeros(dims, dtype=bool)
    while not covered.all():
        gain = np.rint(
            np.fft.irfft2(np.fft.rfft2((~covered).astype(np.float64)) * ball_f, s=dims)
        ).astype(np.int64)
        p, s = divmod(int(np.argmax(gain)), m)
        chosen.add(TorusCoord(p, s))
        covered |= np.roll(ball, (p, s), axis=(0, 1))
    return chosen


def quasi_perfect_placement(dims: Dims, d: int) -> DiscretePlacement:
    """Covering d-hops placement for arbitrary torus dimensions.

    k-divisible dimensions get the perfect tiling (N*M/k resources, no
    overlap).  Otherwise ceil(N/k) x ceil(M/k) blocks of the k x k code are
    laid down, rows/columns beyond N x M are cropped away, and remaining
    holes are patched greedily.  Tori smaller than k x k in both dimensions
    skip the block stage and are covered greedily from scratch; d = 0 makes
    every node a resource (the k = 1 tiling).
    """
    n, m = dims
    if n < 1 or m < 1:
        raise DomainError("torus dimensions must be at least 1x1")
    if d < 0:
        raise DomainError("hop radius must be nonnegative")
    k = sphere_size(d)
    step = (2 * d * d) % k
    if n % k == 0 and m % k == 0:
        resources = tuple(
            sorted(
                TorusCoord(i + a * k, (step * i) % k + b * k)
                for a in range(n // k)
                for b in range(m // k)
                for i in range(k)
            )
        )
    else:
        seeds: list[TorusCoord] = []
        if n >= k or m >= k:
            for a in range(math.ceil(n / k)):
                for b in range(math.ceil(m / k)):
                    for i in range(k):
                        p, s = i + a * k, (step * i) % k + b * k
                        if p < n and s < m:
                            seeds.append(TorusCoord(p, s))
        resources = tuple(sorted(_greedy_cover(dims, d, seeds)))
    return DiscretePlacement(dims, d, resources, assign_resources(dims, resources))


def verify_coverage(placement: DiscretePlacement) -> CoverageReport:
    """Exhaustively check d-hop coverage over all N*M nodes."""
    dims = placement.dims
    counts = _cover_counts(_resource_grid(dims, placement.resources), _ball_mask(dims, placement.d))
    mind = min_distance_grid(dims, placement.resources)
    uncovered = tuple(TorusCoord(int(p), int(s)) for p, s in np.argwhere(counts == 0))
    return CoverageReport(
        covered=not uncovered,
        max_hops=int(mind.max()),
        multiply_covered=int((counts > 1).sum()),
        uncovered=uncovered,
    )


def brute_force_min_placement(
    dims: Dims, d, weights: HopWeights | None = None
) -> DiscretePlacement:
    """Provably minimum covering placement, by exhaustive subset search.

    Iterative deepening over the target size with a sphere-bound prune;
    capped at 36 nodes.  `d` is a hop count for the default metric and a
    distance in km when `weights` is given.
    """
    n, m = dims
    total = n * m
    if total > 36:
        raise CapacityError(f"exhaustive search capped at 36 nodes, got {total}")
    nodes = [TorusCoord(p, s) for p in range(n) for s in range(m)]
    slack = 0.0 if weights is None else 1e-9
    balls = []
    for v in nodes:
        mask = 0
        for j, u in enumerate(nodes):
            if weights is None:
                within = lee_distance(v, u, dims) <= d
            else:
                dist = weights.inter_plane_km * min(abs(v[0] - u[0]), n - abs(v[0] - u[0]))
                dist += weights.intra_plane_km * min(abs(v[1] - u[1]), m - abs(v[1] - u[1]))
                within = dist <= d + slack
            if within:
                mask |= 1 << j
        balls.append(mask)
    full = (1 << total) - 1
    max_ball = max(mask.bit_count() for mask in balls)

    def search(covered: int, picked: list[int], budget: int) -> list[int] | None:
        if covered == full:
            return picked
        remaining = (full & ~covered).bit_count()
        if budget == 0 or remaining > budget * max_ball:
            return None
        lowest = (full & ~covered & -(full & ~covered)).bit_length() - 1
        for i, mask in enumerate(balls):
            if mask >> lowest & 1:
                found = search(covered | mask, picked + [i], budget - 1)
                if found is not None:
                    return found
        return None

    lower = max(1, math.ceil(total / max_ball))
    for size in range(lower, total + 1):
        sol = search(0, [], size)
        if sol is not None:
            resources = tuple(sorted(nodes[i] for i in sol))
            return DiscretePlacement(
                dims, d, resources, assign_resources(dims, resources, weights)
            )
    raise AssertionError("unreachable: full node set always covers")
