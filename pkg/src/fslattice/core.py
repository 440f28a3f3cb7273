"""Exact lattice arithmetic primitives: points, regions, representations, counting.

Everything here is immutable and pure; all downstream algorithms depend on the
canonical (lexicographic) ordering fixed by GeneratorSet.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence, Union


class ValidationError(ValueError):
    """Malformed input: bad coordinates, dimension mismatch, unordered lists."""


class DomainError(ValueError):
    """Structurally valid input outside an operation's stated domain."""


class ResourceLimitError(RuntimeError):
    """An enumeration would exceed the configured cell cap."""


class DepthError(DomainError):
    """Ray depth exhausted during carry merging; carries `required_depth`."""

    def __init__(self, message: str, required_depth: int):
        super().__init__(message)
        self.required_depth = required_depth


class DensityError(DomainError):
    """A GAP stage found too few collisions; carries the stage diagnostics."""

    def __init__(self, message: str, stage: int, achieved: int, required: int):
        super().__init__(message)
        self.stage = stage
        self.achieved = achieved
        self.required = required


@dataclass(frozen=True, order=True)
class Point:
    """Integer lattice point in N^k (zero coordinates allowed)."""

    coords: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.coords) < 1:
            raise ValidationError("point needs at least one coordinate")
        for c in self.coords:
            if not isinstance(c, int) or c < 0:
                raise ValidationError(f"coordinates must be nonnegative integers, got {c!r}")

    @classmethod
    def of(cls, *coords: int) -> "Point":
        return cls(tuple(coords))

    @classmethod
    def zero(cls, dim: int) -> "Point":
        return cls((0,) * dim)

    @property
    def dim(self) -> int:
        return len(self.coords)

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def __add__(self, other: "Point") -> "Point":
        self._check_dim(other)
        return Point(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Point") -> "Point":
        self._check_dim(other)
        if not other.fits_within(self):
            raise ValidationError(f"{other} does not fit within {self}")
        return Point(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def scale(self, c: int) -> "Point":
        if c < 0:
            raise ValidationError("scalar must be nonnegative")
        return Point(tuple(c * x for x in self.coords))

    def fits_within(self, other: "Point") -> bool:
        """Componentwise <=; the condition for a generator to be usable."""
        self._check_dim(other)
        return all(a <= b for a, b in zip(self.coords, other.coords))

    def _check_dim(self, other: "Point") -> None:
        if self.dim != other.dim:
            raise ValidationError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def to_json(self) -> list[int]:
        return list(self.coords)

    @classmethod
    def from_json(cls, data: Sequence[int]) -> "Point":
        return cls(tuple(int(c) for c in data))

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.coords) + ")"


def point_sum(points: Iterable[Point], dim: int) -> Point:
    total = Point.zero(dim)
    for p in points:
        total = total + p
    return total


@dataclass(frozen=True)
class GeneratorSet:
    """Finite set of distinct nonzero points, kept in canonical lex order."""

    elements: tuple[Point, ...]

    def __post_init__(self) -> None:
        if not self.elements:
            return
        dim = self.elements[0].dim
        seen = set()
        for p in self.elements:
            if p.dim != dim:
                raise ValidationError("generator set mixes dimensions")
            if p.is_zero:
                raise ValidationError("generator set may not contain the zero vector")
            if p in seen:
                raise ValidationError(f"duplicate generator {p}")
            seen.add(p)
        if list(self.elements) != sorted(self.elements):
            raise ValidationError("generators must be in canonical (lexicographic) order")

    @classmethod
    def of(cls, points: Iterable[Point]) -> "GeneratorSet":
        return cls(tuple(sorted(set(points))))

    @property
    def dim(self) -> int:
        if not self.elements:
            raise ValidationError("empty generator set has no dimension")
        return self.elements[0].dim

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Point]:
        return iter(self.elements)

    def __contains__(self, p: Point) -> bool:
        return p in set(self.elements)

    def pruned_to(self, bound: Point) -> "GeneratorSet":
        """Drop generators that cannot participate in any sum <= bound."""
        return GeneratorSet(tuple(p for p in self.elements if p.fits_within(bound)))

    def to_json(self) -> list[list[int]]:
        return [p.to_json() for p in self.elements]

    @classmethod
    def from_json(cls, data: Sequence[Sequence[int]]) -> "GeneratorSet":
        return cls.of(Point.from_json(p) for p in data)


@dataclass(frozen=True)
class Representation:
    """A subset of generators whose vector sum equals `target`.

    The empty member list is valid only for the zero target (empty sum).
    """

    members: tuple[Point, ...]
    target: Point

    def to_json(self) -> dict:
        return {
            "target": self.target.to_json(),
            "members": [m.to_json() for m in self.members],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Representation":
        return cls(
            tuple(Point.from_json(m) for m in data["members"]),
            Point.from_json(data["target"]),
        )


def validate_representation(r: Representation) -> bool:
    """True iff members are pairwise distinct and sum exactly to the target."""
    dim = r.target.dim
    for m in r.members:
        if m.dim != dim:
            raise ValidationError("member/target dimension mismatch")
    if len(set(r.members)) != len(r.members):
        return False
    return point_sum(r.members, dim) == r.target


@dataclass(frozen=True)
class Box:
    """Axis-aligned box: contains p iff lo <= p <= hi componentwise."""

    lo: Point
    hi: Point

    def __post_init__(self) -> None:
        self.lo._check_dim(self.hi)
        if not self.lo.fits_within(self.hi):
            raise ValidationError("box lower corner exceeds upper corner")

    @property
    def dim(self) -> int:
        return self.lo.dim

    def contains(self, p: Point) -> bool:
        return self.lo.fits_within(p) and p.fits_within(self.hi)

    def volume(self) -> int:
        v = 1
        for a, b in zip(self.lo.coords, self.hi.coords):
            v *= b - a + 1
        return v

    def points_lex(self) -> Iterator[Point]:
        """All lattice points of the box in lexicographic order."""

        def rec(prefix: tuple[int, ...], i: int) -> Iterator[Point]:
            if i == self.dim:
                yield Point(prefix)
                return
            for c in range(self.lo.coords[i], self.hi.coords[i] + 1):
                yield from rec(prefix + (c,), i + 1)

        return rec((), 0)


@dataclass(frozen=True)
class TranslatedOrthant:
    """The region z + N^k with N = {1,2,...}: strictly beyond z in every axis."""

    z: Point

    @property
    def dim(self) -> int:
        return self.z.dim

    def contains(self, p: Point) -> bool:
        self.z._check_dim(p)
        return all(c > zc for c, zc in zip(p.coords, self.z.coords))


Region = Union[Box, TranslatedOrthant]


@dataclass(frozen=True)
class CountingProfile:
    """Counting-function sample: `count` elements below n, exponent log(count)/log(n)."""

    n: int
    count: int
    exponent: Optional[float]


def counting_profile(values: Sequence[int], n: int) -> CountingProfile:
    """Count how many of the ascending `values` are <= n, with its density exponent.

    The exponent is a report value only (None when n < 2 or the count is zero).
    """
    if n < 1:
        raise ValidationError("n must be >= 1")
    prev = 0
    for v in values:
        if v <= prev:
            raise ValidationError("values must be ascending, distinct and positive")
        prev = v
    count = bisect_right(list(values), n)
    exponent = None
    if n >= 2 and count >= 1:
        exponent = math.log(count) / math.log(n)
    return CountingProfile(n=n, count=count, exponent=exponent)


def parse_point(text: str) -> Point:
    """Parse "a,b,..." into a Point (CLI helper)."""
    try:
        coords = tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise ValidationError(f"cannot parse point {text!r}") from exc
    return Point(coords)
