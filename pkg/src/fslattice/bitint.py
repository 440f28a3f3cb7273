"""Sparse nonnegative integers stored as sets of binary-digit positions.

The grid constructions in the dyadic module need corners like 2**(2**(R+1))
whose support is a single bit; all arithmetic here stays O(popcount), nothing
is ever expanded into a dense digit string.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

from .core import ValidationError


@dataclass(frozen=True, eq=True)
class BitInt:
    """Value sum(2**p for p in bits); `bits` is a strictly ascending tuple."""

    bits: tuple[int, ...]

    def __post_init__(self) -> None:
        prev = -1
        for p in self.bits:
            if not isinstance(p, int) or p < 0:
                raise ValidationError(f"bit positions must be nonnegative integers, got {p!r}")
            if p <= prev:
                raise ValidationError("bit positions must be strictly ascending")
            prev = p

    @classmethod
    def of(cls, positions: Iterable[int]) -> "BitInt":
        return cls(tuple(sorted(set(positions))))

    @classmethod
    def from_int(cls, n: int) -> "BitInt":
        if n < 0:
            raise ValidationError("BitInt is nonnegative")
        return cls(tuple(i for i in range(n.bit_length()) if (n >> i) & 1))

    @property
    def value(self) -> int:
        return sum(1 << p for p in self.bits)

    @property
    def popcount(self) -> int:
        return len(self.bits)

    @property
    def is_zero(self) -> bool:
        return not self.bits

    @property
    def max_bit(self) -> int:
        if not self.bits:
            raise ValidationError("zero has no highest bit")
        return self.bits[-1]

    def shifted(self, f: int) -> "BitInt":
        """self * 2**f."""
        if f < 0:
            raise ValidationError("shift must be nonnegative")
        return BitInt(tuple(p + f for p in self.bits))

    def __add__(self, other: "BitInt") -> "BitInt":
        return bit_sum([self, other])

    def _cmp(self, other: "BitInt") -> int:
        a, b = set(self.bits), set(other.bits)
        diff = a ^ b
        if not diff:
            return 0
        return 1 if max(diff) in a else -1

    def __lt__(self, other: "BitInt") -> bool:
        return self._cmp(other) < 0

    def __le__(self, other: "BitInt") -> bool:
        return self._cmp(other) <= 0

    def __gt__(self, other: "BitInt") -> bool:
        return self._cmp(other) > 0

    def __ge__(self, other: "BitInt") -> bool:
        return self._cmp(other) >= 0

    def to_json(self) -> list[int]:
        return list(self.bits)

    @classmethod
    def from_json(cls, data: Iterable[int]) -> "BitInt":
        return cls.of(int(p) for p in data)

    def __str__(self) -> str:
        return "bits" + str(list(self.bits))


IntLike = Union[int, BitInt]


def as_bitint(x: IntLike) -> BitInt:
    return x if isinstance(x, BitInt) else BitInt.from_int(x)


def bit_sum(terms: Iterable[BitInt]) -> BitInt:
    """Exact sum by positional carry propagation; O(total popcount) per carry chain."""
    counts: dict[int, int] = {}
    for t in terms:
        for p in t.bits:
            counts[p] = counts.get(p, 0) + 1
    out: list[int] = []
    pending = sorted(counts)
    i = 0
    while i < len(pending):
        p = pending[i]
        c = counts.get(p, 0)
        if c & 1:
            out.append(p)
        carry = c >> 1
        if carry:
            if p + 1 not in counts:
                # keep `pending` sorted: p+1 is the next position to visit
                if i + 1 == len(pending) or pending[i + 1] != p + 1:
                    pending.insert(i + 1, p + 1)
            counts[p + 1] = counts.get(p + 1, 0) + carry
        i += 1
    return BitInt(tuple(out))


def power_le(exponent: BitInt, x: BitInt) -> bool:
    """Exact test 2**exponent <= x, the integer form of exponent <= log2(x).

    Only the exponent's numeric value is materialized (it indexes a bit
    position); x itself stays positional.
    """
    if x.is_zero:
        return False
    return x.max_bit >= exponent.value
