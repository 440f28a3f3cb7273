import pytest
from hypothesis import given, settings, strategies as st

from fslattice import dyadic
from fslattice.bitint import BitInt
from fslattice.core import (
    Box,
    DomainError,
    Point,
    ValidationError,
    validate_representation,
)
from fslattice.oracle import fs_enumerate, fs_membership


class TestInExceptional:
    def test_boundary(self):
        assert dyadic.in_exceptional(8, 3)  # 2^3 = 8 <= 8

    def test_interior_complement(self):
        assert not dyadic.in_exceptional(5, 3)

    def test_symmetry(self):
        assert dyadic.in_exceptional(3, 8)

    def test_zero_rejected(self):
        with pytest.raises(ValidationError):
            dyadic.in_exceptional(0, 3)

    def test_positional_inputs(self):
        # (2^1000, 10): 2^10 <= 2^1000
        assert dyadic.in_exceptional(BitInt((1000,)), BitInt.from_int(10))

    @given(
        st.integers(min_value=1, max_value=10**6),
        st.integers(min_value=1, max_value=10**6),
    )
    def test_matches_direct_comparison(self, a, b):
        assert dyadic.in_exceptional(a, b) == (2**b <= a or 2**a <= b)


def test_shortest_power_sum_is_the_dyadic_expansion():
    # unbounded coin DP over powers of two, compared with popcount
    limit = 1 << 16
    INF = limit + 1
    dp = [INF] * limit
    dp[0] = 0
    for e in range(16):
        coin = 1 << e
        for s in range(coin, limit):
            if dp[s - coin] + 1 < dp[s]:
                dp[s] = dp[s - coin] + 1
    for a in range(1, limit):
        assert dp[a] == bin(a).count("1")


class TestSplitToTerms:
    def test_expansion_itself(self):
        assert dyadic.split_to_terms(5, 2) == [4, 1]

    def test_one_split(self):
        assert dyadic.split_to_terms(5, 3) == [2, 2, 1]

    def test_maximal_split(self):
        assert dyadic.split_to_terms(5, 5) == [1, 1, 1, 1, 1]

    def test_out_of_range(self):
        with pytest.raises(DomainError):
            dyadic.split_to_terms(5, 1)
        with pytest.raises(DomainError):
            dyadic.split_to_terms(5, 6)

    @given(st.integers(min_value=1, max_value=2000), st.integers(min_value=0, max_value=40))
    def test_always_j_powers_summing_to_a(self, a, extra):
        n = bin(a).count("1")
        j = min(a, n + extra)
        terms = dyadic.split_to_terms(a, j)
        assert len(terms) == j
        assert sum(terms) == a
        assert all(t & (t - 1) == 0 for t in terms)
        assert terms == sorted(terms, reverse=True)


class TestDyadicRepresent:
    def test_balanced_point(self):
        rep = dyadic.dyadic_represent(5, 3)
        assert set(rep.members) == {Point((4, 2)), Point((1, 1))}
        assert validate_representation(rep)

    def test_single_generator(self):
        rep = dyadic.dyadic_represent(2, 2)
        assert rep.members == (Point((2, 2)),)

    def test_swapped_coordinates(self):
        rep = dyadic.dyadic_represent(3, 7)
        assert set(rep.members) == {Point((1, 4)), Point((1, 2)), Point((1, 1))}
        assert rep.target == Point((3, 7))
        assert validate_representation(rep)

    def test_exceptional_point_rejected(self):
        with pytest.raises(DomainError):
            dyadic.dyadic_represent(8, 1)

    def test_small_sweep_validates_and_oracle_agrees(self):
        hi = Point((24, 24))
        reach = fs_enumerate(dyadic.dyadic_generators(hi), Box(Point((1, 1)), hi))
        for a in range(1, 25):
            for b in range(1, 25):
                if dyadic.in_exceptional(a, b):
                    continue
                rep = dyadic.dyadic_represent(a, b)
                assert validate_representation(rep)
                assert Point((a, b)) in reach.points


class TestEmptySquare:
    def test_smallest_square(self):
        cert = dyadic.empty_square(1)
        assert cert.square.x0.value == 12
        assert cert.all_unreachable()
        X = dyadic.dyadic_generators(Point((13, 2)))
        assert fs_membership(X, Point((13, 2))) is None

    def test_oracle_sweep(self):
        for D in (2, 3):
            cert = dyadic.empty_square(D)
            points = dyadic.empty_square_points(cert)
            assert len(points) == D * D
            assert cert.all_unreachable()
            hi = max(points)
            reach = fs_enumerate(
                dyadic.dyadic_generators(hi), Box(min(points), hi)
            )
            assert not (set(points) & set(reach.points))

    def test_d2_corner(self):
        assert dyadic.empty_square(2).square.x0.value == 56

    def test_d6_corner_positional(self):
        cert = dyadic.empty_square(6)
        assert cert.square.x0.bits == tuple(range(7, 14))
        assert cert.square.x0.value == 16256
        assert cert.all_unreachable()

    def test_invalid_side(self):
        with pytest.raises(ValidationError):
            dyadic.empty_square(0)


class TestDenseSquare:
    def test_r3_census(self):
        rep = dyadic.dense_square_count(3)
        assert rep.exact_count == 21
        assert rep.enumeration_count == 21
        assert rep.per_k == ((1, 4), (2, 9), (3, 6), (4, 2))

    def test_r1_census(self):
        assert dyadic.dense_square_count(1).exact_count == 3

    def test_r6_clears_chain(self):
        rep = dyadic.dense_square_count(6)
        assert rep.chain_threshold == 192
        assert rep.exact_count >= 192

    def test_invalid_scale(self):
        with pytest.raises(ValidationError):
            dyadic.dense_square_count(0)


class TestExceptionalMap:
    def test_levels(self):
        hi = Point((8, 8))
        reach = fs_enumerate(dyadic.dyadic_generators(hi), Box(Point((1, 1)), hi))
        rows = dyadic.exceptional_map(Point((1, 1)), hi, set(reach.points))
        assert len(rows) == 8 and len(rows[0]) == 8
        # top row is y=8: (1,8) is in E (2^1 <= 8) and reachable as (1,8) itself
        assert rows[0][0] == dyadic.LEVEL_E_REACHABLE
        # (5,3) lies outside E
        assert rows[5][4] == dyadic.LEVEL_OUTSIDE_E
        # (7,1): in E, 7 needs three powers but the height caps terms at 1
        assert rows[7][6] == dyadic.LEVEL_E_UNREACHABLE
