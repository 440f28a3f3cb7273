"""Subset-sum geometry of the power-of-two grid {2^m} x {2^k} in N^2.

Outside the exceptional set E = {(a,b): 2^b <= a or 2^a <= b} every point has
a constructive representation by splitting dyadic expansions; inside E there
are arbitrarily large squares with no reachable point at all, and other
squares that are dense with "horizontal" sums.  All log comparisons are done
as exact power comparisons, and doubly-exponential corners stay positional
via BitInt.
"""

from __future__ import annotations

import math
from bisect import insort
from dataclasses import dataclass
from typing import Sequence

from .bitint import BitInt, IntLike, as_bitint, bit_sum, power_le
from .core import DomainError, GeneratorSet, Point, Representation, ValidationError


def in_exceptional(a: IntLike, b: IntLike) -> bool:
    """Exact membership in E: 2^b <= a or 2^a <= b (no floating-point logs)."""
    a, b = as_bitint(a), as_bitint(b)
    if a.is_zero or b.is_zero:
        raise ValidationError("coordinates must be >= 1")
    return power_le(b, a) or power_le(a, b)


def split_to_terms(a: int, j: int) -> list[int]:
    """Write a as exactly j powers of two (repetition allowed), largest-first.

    Deterministic: repeatedly split the currently largest power 2^c (c > 0)
    into two copies of 2^(c-1).  Requires popcount(a) <= j <= a.
    """
    if a < 1:
        raise ValidationError("a must be >= 1")
    n = bin(a).count("1")
    if not n <= j <= a:
        raise DomainError(f"term count {j} outside [{n}, {a}]")
    # exponents kept ascending; the largest is at the end
    exps = [i for i in range(a.bit_length()) if (a >> i) & 1]
    while len(exps) < j:
        c = exps.pop()
        insort(exps, c - 1)
        insort(exps, c - 1)
    return [1 << c for c in reversed(exps)]


def dyadic_generators(hi: Point) -> GeneratorSet:
    """All grid generators (2^i, 2^j) fitting under `hi` componentwise."""
    hx, hy = hi.coords
    points = [
        Point((1 << i, 1 << j))
        for i in range(max(hx, 1).bit_length())
        for j in range(max(hy, 1).bit_length())
        if (1 << i) <= hx and (1 << j) <= hy
    ]
    return GeneratorSet.of(points)


def dyadic_represent(a: int, b: int) -> Representation:
    """Constructive representation of (a,b) outside E over the dyadic grid.

    With b <= a (swap otherwise): split the coordinate with the shorter dyadic
    expansion into as many terms as the other side has, then pair terms
    largest-with-largest.  Distinctness is automatic because one side of every
    pair runs through distinct powers.
    """
    if in_exceptional(a, b):
        raise DomainError(
            f"({a},{b}) lies in the exceptional set; no structural guarantee "
            "applies there (use the brute-force oracle instead)"
        )
    swapped = b > a
    if swapped:
        a, b = b, a
    n = bin(a).count("1")
    m = bin(b).count("1")
    b_terms = [1 << i for i in reversed(range(b.bit_length())) if (b >> i) & 1]
    a_terms = [1 << i for i in reversed(range(a.bit_length())) if (a >> i) & 1]
    if n <= m:
        firsts = split_to_terms(a, m)  # repetition allowed on the left
        seconds = b_terms  # m distinct powers on the right
    else:
        firsts = a_terms  # n distinct powers on the left
        seconds = split_to_terms(b, n)
    pairs = list(zip(firsts, seconds))
    if swapped:
        pairs = [(q, p) for p, q in pairs]
        target = Point((b, a))
    else:
        target = Point((a, b))
    members = tuple(sorted(Point(pair) for pair in pairs))
    return Representation(members, target)


@dataclass(frozen=True)
class SquareSpec:
    """Axis-aligned square with BitInt corner coordinates."""

    x0: BitInt
    y0: BitInt
    side: int


@dataclass(frozen=True)
class EmptySquareCertificate:
    """Per-point term-count gap certifying unreachability."""

    square: SquareSpec
    # for each offset (j, k), the minimum number of grid terms the first
    # coordinate needs vs the maximum the second coordinate allows
    gaps: tuple[tuple[int, int, int, int], ...]  # (j, k, min_terms, max_terms)

    def all_unreachable(self) -> bool:
        return all(min_t > max_t for _, _, min_t, max_t in self.gaps)


def empty_square(D: int) -> EmptySquareCertificate:
    """The proof square with corner x0 = 2^(D+1) + ... + 2^(2D+1), y0 = 1.

    Every interior point (x0+j, 1+k), 1 <= j,k <= D, needs at least D+2 powers
    of two in its first coordinate while the second coordinate caps the number
    of grid summands at 1+k <= D+1.
    """
    if D < 1:
        raise ValidationError("D must be >= 1")
    x0 = BitInt(tuple(range(D + 1, 2 * D + 2)))
    x0_value = x0.value
    gaps = []
    for j in range(1, D + 1):
        for k in range(1, D + 1):
            # j < 2^(D+1) so the low bits never carry into x0's block
            min_terms = bin(x0_value + j).count("1")
            max_terms = 1 + k
            gaps.append((j, k, min_terms, max_terms))
    square = SquareSpec(x0=x0, y0=BitInt.from_int(1), side=D)
    return EmptySquareCertificate(square=square, gaps=tuple(gaps))


def empty_square_points(cert: EmptySquareCertificate) -> list[Point]:
    """Interior lattice points of the proof square, as machine-sized Points."""
    x0 = cert.square.x0.value
    D = cert.square.side
    return [Point((x0 + j, 1 + k)) for j in range(1, D + 1) for k in range(1, D + 1)]


@dataclass(frozen=True)
class DenseSquareReport:
    """Exact census of horizontal sums in the dense square at scale 2^R."""

    R: int
    exact_count: int
    enumeration_count: int
    per_k: tuple[tuple[int, int], ...]  # (k, contribution) for k = 1..R+1
    chain_threshold: int  # 2^R * R / 2, the proof's chain value (binding for R >= 6)
    closed_form_lower: float  # sum C(R,k) * (R - log2(k+1))
    quarter_bound: float  # (1/4) * M * log2(M) at M = 2^R


def _max_doubling(R: int, k: int) -> int:
    """Largest f with k * 2^f <= 2^R, i.e. floor(R - log2 k)."""
    return ((1 << R) // k).bit_length() - 1


def dense_square_count(R: int) -> DenseSquareReport:
    """Count Z = {(n, k*2^f)} inside the square anchored at 2^(2^(R+1)).

    Computed two independent ways and asserted equal: the binomial formula
    over term counts k, and direct enumeration of n = 2^(2^(R+1)) + r with
    r < 2^R.  Every enumerated point is validated by constructing its
    horizontal representation positionally (no dense big integers).
    """
    if R < 1:
        raise ValidationError("R must be >= 1")
    per_k = []
    formula = 0
    for k in range(1, R + 2):
        contrib = math.comb(R, k - 1) * (_max_doubling(R, k) + 1)
        per_k.append((k, contrib))
        formula += contrib

    corner_bit = 1 << (R + 1)  # bit position of the square's corner value
    lo = BitInt((corner_bit,))
    hi = bit_sum([lo, BitInt.from_int((1 << R) - 1)])
    cap = BitInt((R,))  # vertical bound 2^R
    enumeration = 0
    for r in range(1 << R):
        n = BitInt(tuple(i for i in range(R) if (r >> i) & 1) + (corner_bit,))
        k = n.popcount
        for f in range(_max_doubling(R, k) + 1):
            m = BitInt.from_int(k).shifted(f)
            _validate_horizontal(n, m, f, lo, hi, cap)
            enumeration += 1

    if enumeration != formula:
        raise AssertionError(
            f"dense-square count mismatch at R={R}: formula {formula}, "
            f"enumeration {enumeration}"
        )
    M = 1 << R
    closed_form = sum(math.comb(R, k) * (R - math.log2(k + 1)) for k in range(R + 1))
    return DenseSquareReport(
        R=R,
        exact_count=formula,
        enumeration_count=enumeration,
        per_k=tuple(per_k),
        chain_threshold=(M * R) // 2,
        closed_form_lower=closed_form,
        quarter_bound=0.25 * M * R,
    )


def _validate_horizontal(
    n: BitInt, m: BitInt, f: int, lo: BitInt, hi: BitInt, cap: BitInt
) -> None:
    """Check the explicit horizontal representation of (n, m) positionally."""
    firsts = [BitInt((c,)) for c in n.bits]  # pairwise distinct powers
    if bit_sum(firsts) != n:
        raise AssertionError("first coordinates do not sum to n")
    seconds = bit_sum([BitInt((f,))] * n.popcount)
    if seconds != m:
        raise AssertionError("second coordinates do not sum to m")
    if not (lo <= n <= hi and m <= cap):
        raise AssertionError("point escapes the dense square")
    if not in_exceptional(n, m):
        raise AssertionError("dense-square point unexpectedly outside E")


# heatmap levels for `dyadic map`
LEVEL_E_UNREACHABLE = 0
LEVEL_E_REACHABLE = 128
LEVEL_OUTSIDE_E = 255


def exceptional_map(box_lo: Point, box_hi: Point, reachable: set[Point]) -> list[list[int]]:
    """Grayscale rows (top row = max y) classifying each box point."""
    lx, ly = box_lo.coords
    hx, hy = box_hi.coords
    rows = []
    for y in range(hy, ly - 1, -1):
        row = []
        for x in range(lx, hx + 1):
            if not in_exceptional(x, y):
                row.append(LEVEL_OUTSIDE_E)
            elif Point((x, y)) in reachable:
                row.append(LEVEL_E_REACHABLE)
            else:
                row.append(LEVEL_E_UNREACHABLE)
        rows.append(row)
    return rows
