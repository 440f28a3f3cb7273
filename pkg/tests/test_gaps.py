from itertools import combinations_with_replacement

import pytest
from hypothesis import given, settings, strategies as st

from fslattice import gaps
from fslattice.core import (
    Box,
    DensityError,
    DomainError,
    GeneratorSet,
    Point,
    ValidationError,
    validate_representation,
)
from fslattice.oracle import fs_enumerate


def oracle_reaches(points, A, B):
    hi = Point((max(p.coords[0] for p in points), max(p.coords[1] for p in points)))
    gens = GeneratorSet.of(Point((a, b)) for a in A for b in B)
    reach = fs_enumerate(gens, Box(Point((0, 0)), hi))
    return all(p in reach.points for p in points)


class TestPopularSum:
    def test_interval(self):
        x, pairs = gaps.popular_sum(list(range(1, 13)))
        assert x == 13
        assert pairs == [(1, 12), (2, 11), (3, 10), (4, 9), (5, 8), (6, 7)]

    def test_sidon_set_ties_break_low(self):
        x, pairs = gaps.popular_sum([1, 2, 4, 8])
        assert x == 3
        assert pairs == [(1, 2)]

    def test_single_pair(self):
        assert gaps.popular_sum([1, 2]) == (3, [(1, 2)])

    def test_too_small(self):
        with pytest.raises(ValidationError):
            gaps.popular_sum([5])


class TestBuildGap:
    def test_one_dimensional(self):
        g = gaps.build_gap(list(range(1, 13)), [1, 2], [3])
        assert g.differences == (Point((13, 3)),)
        assert sorted(p.coords for p in g.points()) == [(13, 3), (26, 6), (39, 9)]
        assert g.proper
        assert all(validate_representation(rep) for _, rep in g.elements)
        assert oracle_reaches(g.points(), list(range(1, 13)), [1, 2])

    def test_two_dimensional(self):
        A = list(range(1, 61))
        g = gaps.build_gap(A, [1, 2], [3, 2])
        assert len(set(g.points())) == 6
        assert g.proper
        assert g.separated
        assert all(validate_representation(rep) for _, rep in g.elements)
        assert oracle_reaches(g.points(), A, [1, 2])

    def test_stage_pairs_come_from_disjoint_slices(self):
        A = list(range(1, 61))
        g = gaps.build_gap(A, [1, 2], [3, 2])
        slices = gaps.slice_interleaved(A, 2)
        for cert in g.certificates:
            pool = set(slices[cert.stage - 1])
            assert all(a in pool and b in pool for a, b in cert.pairs)

    def test_single_cell(self):
        g = gaps.build_gap([1, 2, 3], [1, 2], [1])
        assert len(g.points()) == 1
        assert g.proper

    def test_density_error_on_sparse_set(self):
        with pytest.raises(DensityError) as exc:
            gaps.build_gap([1, 2, 4, 8, 16, 32], [1, 2], [5])
        assert exc.value.required == 5
        assert exc.value.achieved < 5

    def test_popularity_exceeds_double(self):
        g = gaps.build_gap(list(range(1, 41)), [1, 2], [3, 2])
        for cert, L in zip(g.certificates, g.lengths):
            assert cert.multiplicity >= L
            assert cert.x > 2 * cert.multiplicity


class TestFindAp:
    def test_interval_gives_difference_one(self):
        result = gaps.find_ap_in_fs(list(range(1, 21)), 40)
        assert result.found and result.difference == 1

    def test_even_set_gives_difference_two(self):
        result = gaps.find_ap_in_fs(list(range(2, 42, 2)), 40)
        assert result.found and result.difference == 2
        assert all(x % 2 == 0 for x in result.elements)

    def test_powers_of_two_are_suffix_complete(self):
        result = gaps.find_ap_in_fs([1, 2, 4, 8, 16, 32], 40)
        assert result.found and result.difference == 1

    def test_failure_is_a_result(self):
        result = gaps.find_ap_in_fs([5], 16)
        assert not result.found
        assert result.reason

    def test_small_horizon_rejected(self):
        with pytest.raises(ValidationError):
            gaps.find_ap_in_fs([1, 2], 4)


class TestSumsetIterate:
    def test_progression_is_tight(self):
        out = gaps.sumset_iterate([1, 2], 3)
        assert out == [3, 4, 5, 6]
        assert len(out) == 3 * 2 - 2

    def test_general_set(self):
        assert gaps.sumset_iterate([1, 2, 4], 2) == [2, 3, 4, 5, 6, 8]

    def test_singleton(self):
        assert gaps.sumset_iterate([5], 4) == [20]

    @settings(deadline=None)
    @given(
        st.sets(st.integers(min_value=1, max_value=30), min_size=1, max_size=6),
        st.integers(min_value=1, max_value=5),
    )
    def test_matches_brute_force(self, values, Q):
        B_T = sorted(values)
        out = gaps.sumset_iterate(B_T, Q)
        brute = sorted({sum(c) for c in combinations_with_replacement(B_T, Q)})
        assert out == brute
        assert len(out) >= Q * len(B_T) - (Q - 1)


class TestDenseRectangle:
    def test_measured_beats_ledger(self):
        report = gaps.dense_rectangle(list(range(1, 41)), [1, 2, 3], T=3, H=30)
        assert report.measured >= report.ledger_bound
        assert report.trm_floor_ok
        assert report.Q >= 1

    def test_degenerate_b(self):
        report = gaps.dense_rectangle(list(range(1, 41)), [1], T=1, H=30)
        assert report.measured >= 1
        assert all(usable <= 1 for _, _, usable in report.column_terms)

    def test_full_density_b(self):
        report = gaps.dense_rectangle(list(range(1, 41)), [1, 2, 3], T=3, H=30)
        assert report.b_density == 1.0
        assert report.density_ratio > 0

    def test_b_above_t_rejected(self):
        with pytest.raises(ValidationError):
            gaps.dense_rectangle(list(range(1, 41)), [5, 6], T=3, H=30)


class TestFiveSquares:
    def test_classic_staircase(self):
        assert gaps.five_squares_check(55, 55) == []

    def test_small_failure(self):
        assert gaps.five_squares_check(30, 30) == [30]

    def test_threshold_window(self):
        assert gaps.five_squares_check(1024, 1200) == []

    def test_invalid_range(self):
        with pytest.raises(ValidationError):
            gaps.five_squares_check(10, 5)
