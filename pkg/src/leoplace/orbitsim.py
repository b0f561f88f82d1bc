"""Time-stepping simulator for a Walker shell with +GRID inter-satellite links.

Satellites move on circular orbits around a spherical Earth, so the
constellation is rigid: the topology never changes, only inter-plane edge
lengths oscillate.  Each timestep rebuilds edge lengths from satellite
positions and measures every node's network distance to its assigned
resource node.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra

from .errors import DomainError
from .geom import DEFAULT_CONSTANTS, PhysicalConstants, ShellParams, orbit_radius_km, orbital_period
from .torus import Dims, DiscretePlacement, TorusCoord
from .wplace import WeightedPlacement

Placement = DiscretePlacement | WeightedPlacement


@dataclass(frozen=True)
class SimConfig:
    """Simulation window; the frame is inertial (Earth rotation is irrelevant to ISLs)."""

    duration_s: float
    step_s: float = 10.0
    phase_offset_rad: float = 0.0  # extra slot phase per plane; 0 matches the closed forms

    def __post_init__(self):
        if not self.duration_s >= self.step_s > 0:
            raise DomainError("need duration >= step > 0")


@dataclass
class TimeSeries:
    """Per-timestep resource distances plus aggregates, node order row-major."""

    dims: Dims
    times_s: np.ndarray
    per_node_km: np.ndarray  # shape (timesteps, N*M)
    mean_km: np.ndarray
    max_km: np.ndarray
    node_time_mean_km: np.ndarray

    def node_index(self, coord: TorusCoord) -> int:
        return coord[0] * self.dims[1] + coord[1]


def _positions(
    shell: ShellParams,
    t_s: float,
    consts: PhysicalConstants,
    phase_offset_rad: float = 0.0,
) -> np.ndarray:
    """(N*M, 3) inertial positions in km, row-major over (plane, slot)."""
    n, m = shell.dims
    a = orbit_radius_km(shell, consts)
    inc = math.radians(shell.inclination_deg)
    raan = 2.0 * math.pi * np.arange(n) / n
    phase = (
        2.0 * math.pi * np.arange(m)[None, :] / m
        + 2.0 * math.pi * t_s / orbital_period(shell, consts)
        + phase_offset_rad * np.arange(n)[:, None]
    )
    x_orb = a * np.cos(phase)  # (n, m): in-plane coordinates from the ascending node
    y_orb = a * np.sin(phase)
    cos_o, sin_o = np.cos(raan)[:, None], np.sin(raan)[:, None]
    x = x_orb * cos_o - y_orb * math.cos(inc) * sin_o
    y = x_orb * sin_o + y_orb * math.cos(inc) * cos_o
    z = y_orb * math.sin(inc)
    return np.stack([x.ravel(), y.ravel(), z.ravel()], axis=1)


def satellite_position(
    shell: ShellParams,
    coord: TorusCoord,
    t_s: float,
    consts: PhysicalConstants = DEFAULT_CONSTANTS,
    phase_offset_rad: float = 0.0,
) -> np.ndarray:
    """Inertial position (km) of one satellite: plane sets the ascending node, slot the phase."""
    n, m = shell.dims
    if not (0 <= coord[0] < n and 0 <= coord[1] < m):
        raise DomainError(f"coordinate {tuple(coord)} outside {n}x{m} shell")
    return _positions(shell, t_s, consts, phase_offset_rad)[coord[0] * m + coord[1]]


def grid_edges(dims: Dims) -> list[tuple[int, int]]:
    """+GRID edges as row-major node-index pairs, wraparound included, deduplicated."""
    n, m = dims
    edges = set()
    for p in range(n):
        for s in range(m):
            i = p * m + s
            if m > 1:
                j = p * m + (s + 1) % m
                if i != j:
                    edges.add((min(i, j), max(i, j)))
            if n > 1:
                j = ((p + 1) % n) * m + s
                if i != j:
                    edges.add((min(i, j), max(i, j)))
    return sorted(edges)


def isl_lengths(
    shell: ShellParams,
    t_s: float,
    consts: PhysicalConstants = DEFAULT_CONSTANTS,
    phase_offset_rad: float = 0.0,
) -> dict[tuple[TorusCoord, TorusCoord], float]:
    """Instantaneous length of every ISL at time t, keyed by node pair."""
    n, m = shell.dims
    if n < 2 and m < 2:
        raise DomainError("a single satellite has no links")
    pos = _positions(shell, t_s, consts, phase_offset_rad)
    edges = grid_edges((n, m))
    idx = np.array(edges)
    lengths = np.linalg.norm(pos[idx[:, 0]] - pos[idx[:, 1]], axis=1)
    return {
        (TorusCoord(*divmod(i, m)), TorusCoord(*divmod(j, m))): float(length)
        for (i, j), length in zip(edges, lengths)
    }


def _distances_from_resources(
    n_nodes: int,
    edge_u: np.ndarray,
    edge_v: np.ndarray,
    lengths: np.ndarray,
    resource_idx: np.ndarray,
) -> np.ndarray:
    graph = csr_matrix((lengths, (edge_u, edge_v)), shape=(n_nodes, n_nodes))
    return dijkstra(graph, directed=False, indices=resource_idx)


def resource_distances(
    dims: Dims,
    edge_lengths: dict[tuple[TorusCoord, TorusCoord], float],
    placement: Placement,
) -> dict[TorusCoord, float]:
    """Shortest-path distance from every node to its assigned resource node."""
    n, m = dims
    total = n * m
    edge_u = np.array([a[0] * m + a[1] for a, _ in edge_lengths])
    edge_v = np.array([b[0] * m + b[1] for _, b in edge_lengths])
    lengths = np.array(list(edge_lengths.values()))
    res = list(placement.resources)
    res_idx = np.array([r[0] * m + r[1] for r in res])
    dist = _distances_from_resources(total, edge_u, edge_v, lengths, res_idx)
    rank = {r: i for i, r in enumerate(res)}
    out = {}
    for p in range(n):
        for s in range(m):
            node = TorusCoord(p, s)
            out[node] = float(dist[rank[placement.assignment[node]], p * m + s])
    return out


def run_simulation(
    shell: ShellParams,
    placement: Placement,
    config: SimConfig,
    consts: PhysicalConstants = DEFAULT_CONSTANTS,
) -> TimeSeries:
    """Sample resource distances at t = 0, step, ..., duration (inclusive).

    Deterministic: timesteps are independent and evaluated in order.  With
    zero phase offset, edge lengths depend on the slot but not the plane,
    so shortest paths from a resource (rp, rs) equal those from (0, rs)
    after rotating planes; Dijkstra then needs one source per distinct
    resource slot instead of one per resource.
    """
    if tuple(placement.dims) != shell.dims:
        raise DomainError(f"placement dims {placement.dims} do not match shell {shell.dims}")
    n, m = shell.dims
    total = n * m
    edges = grid_edges((n, m))
    edge_u = np.array([e[0] for e in edges], dtype=np.intp)
    edge_v = np.array([e[1] for e in edges], dtype=np.intp)
    res = list(placement.resources)
    node_p = np.repeat(np.arange(n), m)
    node_s = np.tile(np.arange(m), n)

    symmetric = config.phase_offset_rad == 0.0
    if symmetric:
        # edge classes: intra edges keyed by the slot the (s, s+1 mod m) step starts
        # from, inter edges by their shared slot
        intra = node_p[edge_u] == node_p[edge_v]
        su, sv = node_s[edge_u], node_s[edge_v]
        edge_class = np.where(intra, np.where((su + 1) % m == sv, su, sv), su)
        slots = sorted({r[1] for r in res})
        slot_rank = {s: i for i, s in enumerate(slots)}
        src_idx = np.array(slots, dtype=np.intp)  # nodes (0, slot)
        assigned = [placement.assignment[TorusCoord(p, s)] for p in range(n) for s in range(m)]
        row_sel = np.array([slot_rank[r[1]] for r in assigned])
        col_sel = ((node_p - np.array([r[0] for r in assigned])) % n) * m + node_s
    else:
        res_idx = np.array([r[0] * m + r[1] for r in res], dtype=np.intp)
        rank = {r: i for i, r in enumerate(res)}
        row_sel = np.array(
            [rank[placement.assignment[TorusCoord(p, s)]] for p in range(n) for s in range(m)]
        )
        col_sel = np.arange(total)

    steps = int(math.floor(config.duration_s / config.step_s + 1e-9)) + 1
    times = np.arange(steps) * config.step_s
    per_node = np.empty((steps, total))
    slot_next = (np.arange(m) + 1) % m
    for k, t in enumerate(times):
        pos = _positions(shell, float(t), consts, config.phase_offset_rad)
        if symmetric:
            intra_len = np.linalg.norm(pos[:m] - pos[slot_next], axis=1)
            inter_len = (
                np.linalg.norm(pos[:m] - pos[m : 2 * m], axis=1) if n > 1 else np.zeros(m)
            )
            lengths = np.where(intra, intra_len[edge_class], inter_len[edge_class])
            dist = _distances_from_resources(total, edge_u, edge_v, lengths, src_idx)
        else:
            lengths = np.linalg.norm(pos[edge_u] - pos[edge_v], axis=1)
            dist = _distances_from_resources(total, edge_u, edge_v, lengths, res_idx)
        per_node[k] = dist[row_sel, col_sel]
    return TimeSeries(
        dims=(n, m),
        times_s=times,
        per_node_km=per_node,
        mean_km=per_node.mean(axis=1),
        max_km=per_node.max(axis=1),
        node_time_mean_km=per_node.mean(axis=0),
    )
