import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from leoplace.errors import CapacityError, DomainError
from leoplace.geom import HopWeights
from leoplace.torus import (
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

dims_st = st.tuples(st.integers(1, 12), st.integers(1, 12))


def coords_in(dims):
    n, m = dims
    return st.tuples(st.integers(0, n - 1), st.integers(0, m - 1))


class TestLeeDistance:
    def test_wraparound_both_axes(self):
        assert lee_distance((0, 0), (2, 4), (5, 5)) == 3

    def test_identity(self):
        assert lee_distance((3, 2), (3, 2), (5, 5)) == 0

    def test_wraparound_first_axis(self):
        assert lee_distance((0, 0), (3, 0), (5, 5)) == 2

    def test_out_of_range(self):
        with pytest.raises(DomainError):
            lee_distance((0, 0), (5, 0), (5, 5))
        with pytest.raises(DomainError):
            lee_distance((-1, 0), (0, 0), (5, 5))

    @given(data=st.data(), dims=dims_st)
    def test_is_a_metric(self, data, dims):
        a = data.draw(coords_in(dims))
        b = data.draw(coords_in(dims))
        c = data.draw(coords_in(dims))
        assert lee_distance(a, b, dims) == lee_distance(b, a, dims)
        assert lee_distance(a, a, dims) == 0
        assert lee_distance(a, b, dims) + lee_distance(b, c, dims) >= lee_distance(a, c, dims)


class TestSphereSize:
    @pytest.mark.parametrize("d,k", [(0, 1), (1, 5), (2, 13), (3, 25), (4, 41)])
    def test_values(self, d, k):
        assert sphere_size(d) == k

    def test_negative(self):
        with pytest.raises(DomainError):
            sphere_size(-1)


class TestPerfectPlacement:
    def test_d1_resources(self):
        placement = perfect_placement(1)
        assert placement.dims == (5, 5)
        assert set(placement.resources) == {(0, 0), (1, 2), (2, 4), (3, 1), (4, 3)}

    @pytest.mark.parametrize("d", [1, 2, 3])
    def test_exactly_one_resource_within_d(self, d):
        placement = perfect_placement(d)
        assert len(placement.resources) == sphere_size(d)
        report = verify_coverage(placement)
        assert report.covered
        assert report.max_hops <= d
        assert report.multiply_covered == 0

    @pytest.mark.parametrize("d", [1, 2, 3])
    def test_minimum_pairwise_distance(self, d):
        placement = perfect_placement(d)
        for i, a in enumerate(placement.resources):
            for b in placement.resources[i + 1 :]:
                assert lee_distance(a, b, placement.dims) >= 2 * d + 1

    def test_rejects_zero(self):
        with pytest.raises(DomainError):
            perfect_placement(0)


class TestQuasiPerfect:
    def test_starlink_b_grid_tiles_perfectly(self):
        placement = quasi_perfect_placement((5, 75), 1)
        assert len(placement.resources) == 75
        report = verify_coverage(placement)
        assert report.covered and report.multiply_covered == 0

    def test_three_by_three_needs_three(self):
        placement = quasi_perfect_placement((3, 3), 1)
        assert len(placement.resources) == 3
        assert verify_coverage(placement).covered

    def test_seven_by_seven_overlaps(self):
        report = verify_coverage(quasi_perfect_placement((7, 7), 1))
        assert report.covered
        assert report.multiply_covered > 0

    def test_kuiper_b_grid_band(self):
        placement = quasi_perfect_placement((28, 28), 1)
        assert verify_coverage(placement).covered
        assert 157 <= len(placement.resources) <= 214

    def test_zero_radius_takes_every_node(self):
        placement = quasi_perfect_placement((3, 4), 0)
        assert len(placement.resources) == 12

    def test_single_node(self):
        placement = quasi_perfect_placement((1, 1), 1)
        assert placement.resources == (TorusCoord(0, 0),)

    def test_huge_radius_single_resource(self):
        placement = quasi_perfect_placement((4, 4), 9)
        assert len(placement.resources) == 1

    @pytest.mark.parametrize("mult", [(1, 1), (2, 1), (2, 3)])
    def test_divisible_dims_tile(self, mult):
        d = 1
        k = sphere_size(d)
        dims = (mult[0] * k, mult[1] * k)
        placement = quasi_perfect_placement(dims, d)
        assert len(placement.resources) == dims[0] * dims[1] // k
        report = verify_coverage(placement)
        assert report.covered and report.multiply_covered == 0

    @settings(max_examples=40)
    @given(dims=dims_st, d=st.integers(0, 3))
    def test_always_covers_above_sphere_bound(self, dims, d):
        placement = quasi_perfect_placement(dims, d)
        assert verify_coverage(placement).covered
        assert len(placement.resources) >= math.ceil(dims[0] * dims[1] / sphere_size(d))


class TestVerifyCoverage:
    def test_reports_holes(self):
        dims = (5, 5)
        resources = (TorusCoord(0, 0),)
        placement = DiscretePlacement(dims, 1, resources, assign_resources(dims, resources))
        report = verify_coverage(placement)
        assert not report.covered
        assert report.max_hops == 4
        assert TorusCoord(2, 2) in report.uncovered

    def test_empty_resources_rejected(self):
        with pytest.raises(DomainError):
            DiscretePlacement((5, 5), 1, (), {})

    def test_assignment_targets_must_be_resources(self):
        with pytest.raises(DomainError):
            DiscretePlacement(
                (2, 2), 1, (TorusCoord(0, 0),), {TorusCoord(0, 1): TorusCoord(1, 1)}
            )


class TestAssignResources:
    def test_resource_maps_to_itself(self):
        placement = perfect_placement(1)
        for r in placement.resources:
            assert placement.assignment[r] == r

    def test_unique_nearest(self):
        placement = perfect_placement(1)
        assert placement.assignment[TorusCoord(1, 0)] == TorusCoord(0, 0)

    def test_tie_breaks_lexicographic(self):
        assignment = assign_resources((5, 5), [TorusCoord(0, 0), TorusCoord(0, 2)])
        assert assignment[TorusCoord(0, 1)] == TorusCoord(0, 0)

    def test_weighted_changes_nearest(self):
        # heavy slot axis pulls node (1, 1) toward the plane-adjacent resource
        weights = HopWeights(1.0, 10.0, "max")
        assignment = assign_resources((4, 4), [TorusCoord(0, 1), TorusCoord(1, 0)], weights)
        assert assignment[TorusCoord(1, 1)] == TorusCoord(0, 1)

    def test_needs_resources(self):
        with pytest.raises(DomainError):
            assign_resources((3, 3), [])


class TestBruteForce:
    def test_five_by_five_matches_perfect_code(self):
        placement = brute_force_min_placement((5, 5), 1)
        assert len(placement.resources) == 5

    def test_three_by_three(self):
        assert len(brute_force_min_placement((3, 3), 1).resources) == 3

    def test_single_node(self):
        assert len(brute_force_min_placement((1, 1), 1).resources) == 1

    def test_four_by_four_radius_two(self):
        assert len(brute_force_min_placement((4, 4), 2).resources) == 2

    def test_capacity_cap(self):
        with pytest.raises(CapacityError):
            brute_force_min_placement((7, 6), 1)

    def test_weighted_metric(self):
        # stride-3 cover of a 6-ring costs 2 nodes per line when d buys one hop
        weights = HopWeights(10.0, 1.0, "max")
        placement = brute_force_min_placement((2, 6), 1.0, weights)
        assert len(placement.resources) == 4

    @settings(max_examples=25)
    @given(dims=st.tuples(st.integers(1, 6), st.integers(1, 6)), d=st.integers(1, 2))
    def test_quasi_never_beats_brute(self, dims, d):
        quasi = quasi_perfect_placement(dims, d)
        brute = brute_force_min_placement(dims, d)
        assert len(quasi.resources) >= len(brute.resources)
        assert len(quasi.resources) <= 1.5 * len(brute.resources)
