from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from fslattice import cone
from fslattice.core import (
    Box,
    GeneratorSet,
    Point,
    ResourceLimitError,
    TranslatedOrthant,
    ValidationError,
    point_sum,
    validate_representation,
)
from fslattice.oracle import (
    fs_enumerate,
    fs_membership,
    trm,
    trm_table,
    uncovered_point_search,
)


def brute_member(X: GeneratorSet, target: Point) -> bool:
    """Literal 2^|X| subset enumeration, the ground truth for the ground truth."""
    elems = list(X)
    for r in range(len(elems) + 1):
        for combo in combinations(elems, r):
            if point_sum(combo, target.dim) == target:
                return True
    return False


class TestFsMembership:
    def test_unique_subset(self):
        X = GeneratorSet.of([Point((1, 1)), Point((2, 2))])
        rep = fs_membership(X, Point((3, 3)))
        assert rep is not None
        assert set(rep.members) == {Point((1, 1)), Point((2, 2))}
        assert validate_representation(rep)

    def test_power_column_miss(self):
        # (3,1) needs two first coordinates, but then the second sums to 2
        X = GeneratorSet.of([Point((1 << i, 1)) for i in range(6)])
        assert fs_membership(X, Point((3, 1))) is None
        assert not brute_member(X, Point((3, 1)))

    def test_deterministic_witness(self):
        X = GeneratorSet.of([Point((4, 2)), Point((1, 1)), Point((2, 2))])
        rep = fs_membership(X, Point((5, 3)))
        assert rep is not None
        assert rep.members == (Point((1, 1)), Point((4, 2)))

    def test_zero_target_is_empty_sum(self):
        X = GeneratorSet.of([Point((1, 1))])
        rep = fs_membership(X, Point((0, 0)))
        assert rep is not None and rep.members == ()

    def test_dimension_mismatch(self):
        X = GeneratorSet.of([Point((1, 1))])
        with pytest.raises(ValidationError):
            fs_membership(X, Point((1, 1, 1)))

    @settings(deadline=None)
    @given(
        st.sets(
            st.tuples(
                st.integers(min_value=0, max_value=4),
                st.integers(min_value=0, max_value=4),
            ).filter(lambda t: t != (0, 0)),
            min_size=1,
            max_size=9,
        ),
        st.tuples(
            st.integers(min_value=0, max_value=10),
            st.integers(min_value=0, max_value=10),
        ),
    )
    def test_agrees_with_literal_enumeration(self, coords, target):
        X = GeneratorSet.of(Point(t) for t in coords)
        t = Point(target)
        rep = fs_membership(X, t)
        assert (rep is not None) == brute_member(X, t)
        if rep is not None:
            assert validate_representation(rep)
            assert all(m in X for m in rep.members)


class TestFsEnumerate:
    def test_unit_axes(self):
        X = GeneratorSet.of([Point((1, 0)), Point((0, 1))])
        reach = fs_enumerate(X, Box(Point((0, 0)), Point((2, 2))))
        assert reach.points == frozenset(
            {Point((0, 0)), Point((1, 0)), Point((0, 1)), Point((1, 1))}
        )

    def test_dyadic_grid_window(self):
        X = GeneratorSet.of(
            Point((1 << i, 1 << j)) for i in range(4) for j in range(4)
        )
        reach = fs_enumerate(X, Box(Point((0, 0)), Point((15, 15))))
        assert Point((5, 3)) in reach.points
        assert Point((13, 2)) not in reach.points

    def test_empty_generator_set(self):
        reach = fs_enumerate(GeneratorSet(()), Box(Point((0, 0)), Point((3, 3))))
        assert reach.points == frozenset({Point((0, 0))})

    def test_witnesses_validate(self):
        X = GeneratorSet.of([Point((1, 2)), Point((2, 1)), Point((3, 3))])
        reach = fs_enumerate(X, Box(Point((0, 0)), Point((6, 6))))
        for p, rep in reach.witness_map().items():
            assert rep.target == p
            assert validate_representation(rep)
            assert all(m in X for m in rep.members)

    def test_witness_in_three_dimensions(self):
        X = GeneratorSet.of([Point((1, 1, 0)), Point((0, 1, 1)), Point((1, 0, 1))])
        reach = fs_enumerate(X, Box(Point((0, 0, 0)), Point((2, 2, 2))))
        assert Point((2, 2, 2)) in reach.points
        for p in reach.points:
            assert validate_representation(reach.witness(p))

    def test_cell_cap_enforced(self):
        X = GeneratorSet.of([Point((1, 1))])
        with pytest.raises(ResourceLimitError, match="100"):
            fs_enumerate(X, Box(Point((0, 0)), Point((99, 99))), cell_cap=100)

    @settings(deadline=None, max_examples=30)
    @given(
        st.lists(
            st.tuples(
                st.integers(min_value=0, max_value=5),
                st.integers(min_value=0, max_value=5),
            ).filter(lambda t: t != (0, 0)),
            min_size=1,
            max_size=6,
            unique=True,
        ),
        st.tuples(
            st.integers(min_value=0, max_value=5),
            st.integers(min_value=0, max_value=5),
        ).filter(lambda t: t != (0, 0)),
    )
    def test_monotone_in_generators(self, coords, extra):
        box = Box(Point((0, 0)), Point((12, 12)))
        small = fs_enumerate(GeneratorSet.of(Point(t) for t in coords), box)
        big = fs_enumerate(
            GeneratorSet.of([Point(t) for t in coords] + [Point(extra)]), box
        )
        assert small.points <= big.points


class TestTrm:
    def test_two_beats_one(self):
        assert trm([1, 2, 3], 3) == 2

    def test_three_term_optimum(self):
        assert trm(list(range(1, 11)), 6) == 3

    def test_unrepresentable_is_zero(self):
        assert trm([5, 7], 3) == 0

    def test_triangular_bound(self):
        # t distinct positive integers sum to at least t(t+1)/2
        table = trm_table(list(range(1, 101)), 200)
        for x in range(1, 201):
            t = table[x]
            assert t * (t + 1) // 2 <= x
            assert t * t <= 4 * x  # the 2*sqrt(x) form, squared to stay exact

    def test_input_validation(self):
        with pytest.raises(ValidationError):
            trm_table([2, 2], 5)
        with pytest.raises(ValidationError):
            trm([1, 2], 0)

    @settings(deadline=None, max_examples=50)
    @given(st.sets(st.integers(min_value=1, max_value=30), min_size=1, max_size=8))
    def test_matches_subset_enumeration(self, values):
        values = sorted(values)
        table = trm_table(values, 40)
        for x in range(1, 41):
            best = 0
            for r in range(1, len(values) + 1):
                if any(sum(c) == x for c in combinations(values, r)):
                    best = r
            assert table[x] == best


class TestUncoveredPointSearch:
    def test_power_columns_leave_gaps(self):
        X = GeneratorSet.of([Point((1 << i, 1)) for i in range(7)])
        region = TranslatedOrthant(Point((1, 1)))
        box = Box(Point((2, 2)), Point((10, 10)))
        found = uncovered_point_search(X, region, box)
        assert found is not None
        assert found <= Point((3, 3))
        assert fs_membership(X, found) is None

    def test_diagonal_only(self):
        X = GeneratorSet.of([Point((1, 1)), Point((2, 2))])
        region = TranslatedOrthant(Point((1, 1)))
        found = uncovered_point_search(X, region, Box(Point((2, 2)), Point((3, 3))))
        assert found == Point((2, 3))

    def test_complete_cone_set_has_none(self):
        spec = cone.ConeSpec((Point((1, 2)), Point((2, 1))))
        X = cone.build_thin_generators(spec, cone.default_depth(spec, Point((12, 12))))
        region = TranslatedOrthant(Point((7, 7)))
        box = Box(Point((8, 8)), Point((12, 12)))
        assert uncovered_point_search(X.all_elements(), region, box) is None

    def test_box_must_sit_in_region(self):
        X = GeneratorSet.of([Point((1, 1))])
        with pytest.raises(ValidationError):
            uncovered_point_search(
                X, TranslatedOrthant(Point((5, 5))), Box(Point((2, 2)), Point((3, 3)))
            )
