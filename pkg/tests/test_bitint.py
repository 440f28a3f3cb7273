import pytest
from hypothesis import given, strategies as st

from fslattice.bitint import BitInt, bit_sum, power_le
from fslattice.core import ValidationError

small = st.integers(min_value=0, max_value=(1 << 20) - 1)


@given(small)
def test_round_trip(n):
    b = BitInt.from_int(n)
    assert b.value == n
    assert b.popcount == bin(n).count("1")


@given(small, small)
def test_addition_matches_ints(a, b):
    assert (BitInt.from_int(a) + BitInt.from_int(b)).value == a + b


@given(small, small)
def test_comparison_matches_ints(a, b):
    x, y = BitInt.from_int(a), BitInt.from_int(b)
    assert (x < y) == (a < b)
    assert (x <= y) == (a <= b)
    assert (x == y) == (a == b)


@given(small, st.integers(min_value=0, max_value=30))
def test_shift_is_multiplication(n, f):
    assert BitInt.from_int(n).shifted(f).value == n << f


@given(st.lists(small, max_size=8))
def test_bit_sum_matches_ints(terms):
    assert bit_sum([BitInt.from_int(t) for t in terms]).value == sum(terms)


def test_descending_positions_rejected():
    with pytest.raises(ValidationError):
        BitInt((3, 1))


def test_negative_rejected():
    with pytest.raises(ValidationError):
        BitInt.from_int(-1)


def test_max_bit_of_zero():
    with pytest.raises(ValidationError):
        BitInt(()).max_bit


def test_power_le_small():
    # 2^3 <= 8, 2^3 > 7
    assert power_le(BitInt.from_int(3), BitInt.from_int(8))
    assert not power_le(BitInt.from_int(3), BitInt.from_int(7))
    assert not power_le(BitInt.from_int(0), BitInt(()))


def test_power_le_stays_positional():
    # x = 2^(2^100): only its bit position is ever materialized
    exponent = BitInt((100,))
    assert power_le(exponent, BitInt((1 << 100,)))
    assert not power_le(exponent, BitInt(((1 << 100) - 1,)))


def test_json_round_trip():
    b = BitInt((0, 5, 17))
    assert BitInt.from_json(b.to_json()) == b
