import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from leoplace.errors import DomainError
from leoplace.geom import (
    ShellParams,
    hop_weights,
    inter_plane_hop_at,
    inter_plane_hop_max,
    intra_plane_hop,
    orbit_radius_km,
    orbital_period,
)
from leoplace.orbitsim import (
    SimConfig,
    grid_edges,
    isl_lengths,
    resource_distances,
    run_simulation,
    satellite_position,
)
from leoplace.torus import TorusCoord, assign_resources, quasi_perfect_placement, DiscretePlacement
from leoplace.wplace import weighted_torus_distance

SMALL = ShellParams(6, 8, 550.0, 53.0)


def all_nodes_placement(dims):
    resources = tuple(TorusCoord(p, s) for p in range(dims[0]) for s in range(dims[1]))
    return DiscretePlacement(dims, 0, resources, {r: r for r in resources})


class TestSatellitePosition:
    def test_reference_satellite_at_ascending_node(self):
        pos = satellite_position(SMALL, TorusCoord(0, 0), 0.0)
        a = orbit_radius_km(SMALL)
        assert pos == pytest.approx([a, 0.0, 0.0], abs=1e-9)

    def test_periodic(self):
        period = orbital_period(SMALL)
        first = satellite_position(SMALL, TorusCoord(2, 3), 123.0)
        later = satellite_position(SMALL, TorusCoord(2, 3), 123.0 + period)
        assert later == pytest.approx(first, abs=1e-6)

    @given(
        plane=st.integers(0, 5),
        slot=st.integers(0, 7),
        t=st.floats(0.0, 20000.0),
    )
    def test_stays_on_orbit_sphere(self, plane, slot, t):
        pos = satellite_position(SMALL, TorusCoord(plane, slot), t)
        assert np.linalg.norm(pos) == pytest.approx(orbit_radius_km(SMALL), rel=1e-12)

    def test_out_of_range(self):
        with pytest.raises(DomainError):
            satellite_position(SMALL, TorusCoord(6, 0), 0.0)


class TestGridEdges:
    def test_count_is_twice_the_nodes(self):
        assert len(grid_edges((6, 8))) == 2 * 6 * 8

    def test_small_rings_deduplicate(self):
        # a 2-cycle has one edge, not two parallel ones
        assert len(grid_edges((2, 3))) == 2 * 3 + 3
        assert len(grid_edges((1, 4))) == 4

    def test_degree_four(self):
        degree = {}
        for u, v in grid_edges((6, 8)):
            degree[u] = degree.get(u, 0) + 1
            degree[v] = degree.get(v, 0) + 1
        assert set(degree.values()) == {4}


class TestIslLengths:
    def test_intra_plane_edges_constant(self):
        expected = intra_plane_hop(SMALL)
        for t in (0.0, 500.0, 2000.0):
            lengths = isl_lengths(SMALL, t)
            for (a, b), value in lengths.items():
                if a.plane == b.plane:
                    assert value == pytest.approx(expected, rel=1e-9)

    def test_slot_zero_inter_edge_at_equator(self):
        lengths = isl_lengths(SMALL, 0.0)
        value = lengths[(TorusCoord(0, 0), TorusCoord(1, 0))]
        assert value == pytest.approx(inter_plane_hop_max(SMALL), rel=1e-9)

    def test_inter_edges_match_closed_form(self):
        period = orbital_period(SMALL)
        for t in (137.0, 1003.5, 4000.25):
            lengths = isl_lengths(SMALL, t)
            for (a, b), value in lengths.items():
                if a.plane != b.plane:
                    t_slot = t + a.slot * period / SMALL.sats_per_plane
                    assert value == pytest.approx(
                        inter_plane_hop_at(SMALL, t_slot), rel=1e-6
                    )

    def test_single_satellite_rejected(self):
        with pytest.raises(DomainError):
            isl_lengths(ShellParams(1, 1, 550.0, 53.0), 0.0)


class TestResourceDistances:
    def test_resource_distance_zero(self):
        placement = quasi_perfect_placement(SMALL.dims, 1)
        distances = resource_distances(SMALL.dims, isl_lengths(SMALL, 333.0), placement)
        for r in placement.resources:
            assert distances[r] == 0.0

    def test_adjacent_node_pays_one_edge(self):
        dims = (4, 4)
        resources = (TorusCoord(0, 0),)
        placement = DiscretePlacement(dims, 0, resources, assign_resources(dims, resources))
        shell = ShellParams(4, 4, 550.0, 53.0)
        lengths = isl_lengths(shell, 777.0)
        distances = resource_distances(dims, lengths, placement)
        assert distances[TorusCoord(0, 1)] == pytest.approx(
            lengths[(TorusCoord(0, 0), TorusCoord(0, 1))], rel=1e-12
        )

    def test_bounded_by_max_weight_torus_metric(self):
        placement = quasi_perfect_placement(SMALL.dims, 1)
        weights = hop_weights(SMALL, "max")
        for t in (0.0, 901.0, 2500.0):
            distances = resource_distances(SMALL.dims, isl_lengths(SMALL, t), placement)
            for node, value in distances.items():
                bound = weighted_torus_distance(
                    node, placement.assignment[node], SMALL.dims, weights
                )
                assert value <= bound + 1e-9


class TestRunSimulation:
    def test_all_nodes_placement_all_zero(self):
        series = run_simulation(SMALL, all_nodes_placement(SMALL.dims), SimConfig(100.0, 10.0))
        assert np.all(series.per_node_km == 0.0)
        assert np.all(series.max_km == 0.0)

    def test_row_count_and_times(self):
        series = run_simulation(SMALL, all_nodes_placement(SMALL.dims), SimConfig(95.0, 10.0))
        assert len(series.times_s) == 10
        assert series.times_s[-1] == 90.0

    def test_max_at_least_mean(self):
        placement = quasi_perfect_placement(SMALL.dims, 1)
        series = run_simulation(SMALL, placement, SimConfig(600.0, 60.0))
        assert np.all(series.max_km >= series.mean_km)

    def test_rigid_under_period_shift(self):
        placement = quasi_perfect_placement(SMALL.dims, 1)
        period = orbital_period(SMALL)
        series = run_simulation(SMALL, placement, SimConfig(2 * period, period / 2))
        assert series.per_node_km[0] == pytest.approx(series.per_node_km[2], abs=1e-6)
        assert series.per_node_km[1] == pytest.approx(series.per_node_km[3], abs=1e-6)

    def test_aggregates_continuous(self):
        placement = quasi_perfect_placement(SMALL.dims, 1)
        step = 10.0
        period = orbital_period(SMALL)
        series = run_simulation(SMALL, placement, SimConfig(period, step))
        # only inter-plane edges move; a route crosses at most floor(N/2) of them
        rate = 2 * math.pi / period * inter_plane_hop_max(SMALL)
        bound = (SMALL.planes // 2) * rate * step + 1e-9
        assert np.abs(np.diff(series.max_km)).max() <= bound
        assert np.abs(np.diff(series.mean_km)).max() <= bound

    def test_phase_offset_changes_geometry(self):
        placement = quasi_perfect_placement(SMALL.dims, 1)
        base = run_simulation(SMALL, placement, SimConfig(100.0, 50.0))
        shifted = run_simulation(
            SMALL, placement, SimConfig(100.0, 50.0, phase_offset_rad=0.4)
        )
        assert not np.allclose(base.per_node_km, shifted.per_node_km)

    def test_node_time_mean(self):
        placement = quasi_perfect_placement(SMALL.dims, 1)
        series = run_simulation(SMALL, placement, SimConfig(300.0, 100.0))
        idx = series.node_index(TorusCoord(1, 2))
        assert series.node_time_mean_km[idx] == pytest.approx(
            series.per_node_km[:, idx].mean()
        )

    def test_dims_must_match(self):
        placement = quasi_perfect_placement((5, 5), 1)
        with pytest.raises(DomainError):
            run_simulation(SMALL, placement, SimConfig(100.0, 10.0))

    def test_config_validation(self):
        with pytest.raises(DomainError):
            SimConfig(5.0, 10.0)
        with pytest.raises(DomainError):
            SimConfig(10.0, 0.0)
