"""Generalized arithmetic progressions and dense rectangles inside FS(A x B).

The GAP construction rides on popular pair sums: a value x with many disjoint
pairs a + a' = x yields an arithmetic progression of grid points with
difference (x, b1+b2), and stages built on disjoint slices of A combine into a
proper homogeneous GAP.  The rectangle pipeline finds an arithmetic
progression inside FS of one slice by exhaustive reachability, shifts it with
fresh elements to force high term counts, and converts term counts into
vertical sumset mass.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Optional, Sequence

from .core import (
    Box,
    DensityError,
    DomainError,
    GeneratorSet,
    Point,
    Representation,
    ResourceLimitError,
    ValidationError,
)
from .oracle import DEFAULT_CELL_CAP, fs_enumerate, trm_table


def _check_ascending(values: Sequence[int], name: str) -> None:
    prev = 0
    for v in values:
        if v <= prev:
            raise ValidationError(f"{name} must be ascending, distinct and positive")
        prev = v


def _pair_sums(values: Sequence[int]) -> dict[int, list[tuple[int, int]]]:
    sums: dict[int, list[tuple[int, int]]] = {}
    for i, a in enumerate(values):
        for b in values[i + 1 :]:
            sums.setdefault(a + b, []).append((a, b))
    return sums


def popular_sum(values: Sequence[int]) -> tuple[int, list[tuple[int, int]]]:
    """The pair sum with the most disjoint representations (ties: smallest x)."""
    _check_ascending(values, "values")
    if len(values) < 2:
        raise ValidationError("need at least two elements")
    sums = _pair_sums(values)
    x = max(sums, key=lambda s: (len(sums[s]), -s))
    return x, sorted(sums[x])


def _best_sum_below(
    values: Sequence[int], min_exclusive: int, max_inclusive: Optional[int]
) -> tuple[Optional[int], list[tuple[int, int]]]:
    """Most popular pair sum x with min < x (<= max); ties broken by smallest x."""
    sums = _pair_sums(values)
    candidates = [
        x
        for x in sums
        if x > min_exclusive and (max_inclusive is None or x <= max_inclusive)
    ]
    if not candidates:
        return None, []
    x = max(candidates, key=lambda s: (len(sums[s]), -s))
    return x, sorted(sums[x])


@dataclass(frozen=True)
class StageCertificate:
    """Collision evidence for one GAP stage."""

    stage: int
    x: int
    pairs: tuple[tuple[int, int], ...]  # the L_i pairs actually consumed
    multiplicity: int  # total disjoint pairs available at x within the slice


@dataclass(frozen=True)
class GapDescription:
    dimension: int
    differences: tuple[Point, ...]
    lengths: tuple[int, ...]
    elements: tuple[tuple[tuple[int, ...], Representation], ...]
    certificates: tuple[StageCertificate, ...]
    proper: bool
    separated: bool  # d_{i+1} > sum_{j<=i} L_j d_j on the first coordinate

    def points(self) -> list[Point]:
        return [rep.target for _, rep in self.elements]

    def to_json(self) -> dict:
        return {
            "dimension": self.dimension,
            "differences": [d.to_json() for d in self.differences],
            "lengths": list(self.lengths),
            "proper": self.proper,
            "separated": self.separated,
            "certificates": [
                {
                    "stage": c.stage,
                    "x": c.x,
                    "pairs": [list(p) for p in c.pairs],
                    "multiplicity": c.multiplicity,
                }
                for c in self.certificates
            ],
            "elements": [
                {"l": list(l), "representation": rep.to_json()}
                for l, rep in self.elements
            ],
        }


def slice_interleaved(values: Sequence[int], parts: int) -> list[list[int]]:
    """Deterministic density-preserving split: part i takes indices i mod parts."""
    return [list(values[i::parts]) for i in range(parts)]


def build_gap(
    A: Sequence[int], B: Sequence[int], L: Sequence[int]
) -> GapDescription:
    """Proper homogeneous GAP of shape L_1 x ... x L_D inside FS(A x B).

    Stage i lives on its own interleaved slice of A and contributes the
    difference d_i = (x_i, b1+b2) from a popular pair sum x_i.  Stages are
    chosen from the top dimension down, each earlier stage constrained to a
    budget that keeps the separation d_{i+1} > sum_{j<=i} L_j d_j available;
    at finite scale a first-come greedy choice would exhaust the slice range
    before the later, larger differences could clear it.
    """
    _check_ascending(A, "A")
    _check_ascending(B, "B")
    if len(B) < 2:
        raise ValidationError("B needs at least two elements")
    if not L or any(x < 1 for x in L):
        raise ValidationError("lengths must be positive")
    D = len(L)
    slices = slice_interleaved(A, D)
    b1, b2 = B[0], B[1]
    vstep = b1 + b2

    xs: list[Optional[int]] = [None] * D
    certs: list[Optional[StageCertificate]] = [None] * D
    allowance: Optional[int] = None  # budget for sum_{j<=s} L_j x_j, None = unbounded
    for s in range(D, 0, -1):
        need = L[s - 1]
        cap = None if allowance is None else allowance // need
        x, pairs = _best_sum_below(slices[s - 1], min_exclusive=need, max_inclusive=cap)
        if x is None or len(pairs) < need:
            raise DensityError(
                f"stage {s}: only {len(pairs)} disjoint pairs available "
                f"(need {need}, sum cap {cap})",
                stage=s,
                achieved=len(pairs),
                required=need,
            )
        assert x > 2 * len(pairs)  # smaller halves are distinct and below x/2
        xs[s - 1] = x
        certs[s - 1] = StageCertificate(
            stage=s, x=x, pairs=tuple(pairs[:need]), multiplicity=len(pairs)
        )
        budget = x - 1
        if allowance is not None:
            budget = min(budget, allowance - need * x)
        allowance = budget

    diffs = tuple(Point((x, vstep)) for x in xs)  # type: ignore[arg-type]
    lengths = tuple(L)

    elements = []
    for combo in product(*(range(1, n + 1) for n in lengths)):
        first = sum(l * x for l, x in zip(combo, xs))  # type: ignore[operator]
        second = sum(combo) * vstep
        members: list[Point] = []
        for s in range(D):
            for a, a2 in certs[s].pairs[: combo[s]]:  # type: ignore[union-attr]
                members.append(Point((a, b1)))
                members.append(Point((a2, b2)))
        rep = Representation(tuple(sorted(members)), Point((first, second)))
        elements.append((combo, rep))

    points = [rep.target for _, rep in elements]
    proper = len(set(points)) == len(points)
    separated = all(
        xs[i] > sum(lengths[j] * xs[j] for j in range(i))  # type: ignore[operator]
        for i in range(1, D)
    )
    return GapDescription(
        dimension=D,
        differences=diffs,
        lengths=lengths,
        elements=tuple(elements),
        certificates=tuple(certs),  # type: ignore[arg-type]
        proper=proper,
        separated=separated,
    )


@dataclass(frozen=True)
class ApSearchResult:
    """Suffix-complete arithmetic progression found in FS of a 1-D slice."""

    found: bool
    difference: int
    start: int
    elements: tuple[int, ...]  # AP members in [1, H] that are reachable
    density: float  # |AP(d) in [1,H]| / H
    horizon: int
    reason: str = ""


def find_ap_in_fs(A1: Sequence[int], H: int, cell_cap: int = DEFAULT_CELL_CAP) -> ApSearchResult:
    """Smallest difference d <= H/4 whose residue class is fully reachable.

    "Fully" means every class member up to H - H/8 lies in FS(A1); the margin
    guards against truncation artifacts at the top of the window.  Failure is
    an ordinary result, not an exception.
    """
    _check_ascending(A1, "A1")
    if H < 8:
        raise ValidationError("H must be >= 8")
    if H + 1 > cell_cap:
        raise ResourceLimitError(f"window of {H + 1} sums exceeds the cap of {cell_cap}")
    mask = 1
    window = (1 << (H + 1)) - 1
    for a in A1:
        if a <= H:
            mask |= (mask << a) & window
    top = H - H // 8
    for d in range(1, H // 4 + 1):
        for c in range(1, d + 1):
            members = range(c, top + 1, d)
            if not members:
                continue
            if all((mask >> x) & 1 for x in members):
                reachable = tuple(
                    x for x in range(c, H + 1, d) if (mask >> x) & 1
                )
                class_size = len(range(c, H + 1, d))
                return ApSearchResult(
                    found=True,
                    difference=d,
                    start=c,
                    elements=reachable,
                    density=class_size / H,
                    horizon=H,
                )
    return ApSearchResult(
        found=False,
        difference=0,
        start=0,
        elements=(),
        density=0.0,
        horizon=H,
        reason=f"no residue class fully reachable up to {top} with d <= {H // 4}",
    )


def sumset_iterate(B_T: Sequence[int], Q: int) -> list[int]:
    """Q-fold sumset (values may repeat across the Q picks), sorted.

    Asserts the iterated Pluennecke-type lower bound |Q B| >= Q|B| - (Q-1) and
    the obvious range containment.
    """
    _check_ascending(B_T, "B_T")
    if Q < 1:
        raise ValidationError("Q must be >= 1")
    if not B_T:
        raise ValidationError("B_T must be nonempty")
    current = set(B_T)
    for _ in range(Q - 1):
        current = {s + b for s in current for b in B_T}
    out = sorted(current)
    assert len(out) >= Q * len(B_T) - (Q - 1)
    assert out[0] == Q * B_T[0] and out[-1] == Q * B_T[-1]
    return out


@dataclass(frozen=True)
class RectangleReport:
    interval: tuple[int, int]
    height: int
    measured: int
    ledger_bound: int
    rectangle_points: int
    b_density: float  # B(T) / T
    density_ratio: float  # measured / (|R| * B(T)/T)
    ap: ApSearchResult
    Q: int
    shift: int
    shift_elements: tuple[int, ...]
    column_terms: tuple[tuple[int, int, int], ...]  # (x, trm(x), usable sumset size)
    trm_floor_ok: bool  # trm(y) >= Q+1 for every column y

    def to_json(self) -> dict:
        return {
            "interval": list(self.interval),
            "height": self.height,
            "measured": self.measured,
            "ledger_bound": self.ledger_bound,
            "rectangle_points": self.rectangle_points,
            "b_density": self.b_density,
            "density_ratio": self.density_ratio,
            "Q": self.Q,
            "shift": self.shift,
            "shift_elements": list(self.shift_elements),
            "trm_floor_ok": self.trm_floor_ok,
            "columns": [list(c) for c in self.column_terms],
            "ap": {
                "difference": self.ap.difference,
                "start": self.ap.start,
                "density": self.ap.density,
                "elements": list(self.ap.elements),
            },
        }


def dense_rectangle(
    A: Sequence[int],
    B: Sequence[int],
    T: int,
    H: int,
    cell_cap: int = DEFAULT_CELL_CAP,
) -> RectangleReport:
    """Measure a rectangle of FS(A x B) against the popular-column ledger.

    Pipeline: arithmetic progression in FS(A1), shift by Q fresh elements of
    the other slice so every column has trm >= Q+1, then each column x holds
    at least |trm(x)-fold sumset of B_T| points of height <= 2QT.  The ledger
    bound sums those column guarantees; the measured count comes from the
    brute-force oracle.
    """
    _check_ascending(A, "A")
    _check_ascending(B, "B")
    if T < 1:
        raise ValidationError("T must be >= 1")
    B_T = [b for b in B if b <= T]
    if not B_T:
        raise ValidationError("B has no elements <= T")
    A1, A2 = slice_interleaved(A, 2)
    ap = find_ap_in_fs(A1, H, cell_cap=cell_cap)
    if not ap.found:
        raise DomainError(f"no suffix-complete AP in FS of the slice: {ap.reason}")

    ap_in_window = list(range(ap.start, H + 1, ap.difference))
    table1 = trm_table(A1, H)
    Q = max(table1[x] for x in ap_in_window)
    if Q < 1:
        raise DomainError("arithmetic progression has no reachable member")
    if len(A2) < Q:
        raise DomainError(f"second slice too small for the {Q}-element shift")
    shift_elements = tuple(A2[:Q])
    shift = sum(shift_elements)

    columns = sorted(shift + x for x in ap.elements)
    a, b = columns[0], columns[-1]
    height = 2 * Q * T
    merged = sorted(set(A1) | set(shift_elements))
    table = trm_table(merged, b)

    ledger = 0
    column_terms = []
    trm_ok = True
    for x in columns:
        q_x = table[x]
        if q_x < Q + 1:
            trm_ok = False
        usable = 0
        if q_x >= 1:
            usable = sum(1 for s in sumset_iterate(B_T, q_x) if s <= height)
        ledger += usable
        column_terms.append((x, q_x, usable))

    generators = GeneratorSet.of(
        Point((av, bv)) for av in A for bv in B
    )
    box = Box(Point((a, 1)), Point((b, height)))
    reach = fs_enumerate(generators, box, cell_cap=cell_cap)
    measured = len(reach.points)

    rect_points = (b - a + 1) * height
    b_density = len(B_T) / T
    denom = rect_points * b_density
    return RectangleReport(
        interval=(a, b),
        height=height,
        measured=measured,
        ledger_bound=ledger,
        rectangle_points=rect_points,
        b_density=b_density,
        density_ratio=measured / denom if denom else math.inf,
        ap=ap,
        Q=Q,
        shift=shift,
        shift_elements=shift_elements,
        column_terms=tuple(column_terms),
        trm_floor_ok=trm_ok,
    )


def _min_square_sum(t: int) -> int:
    """Sum of the t smallest positive squares."""
    return t * (t + 1) * (2 * t + 1) // 6


def _distinct_squares(n: int, t: int, max_root: int) -> Optional[list[int]]:
    """t distinct roots < max_root with squares summing to n, largest-first."""
    if t == 0:
        return [] if n == 0 else None
    if n < _min_square_sum(t):
        return None
    hi = min(max_root - 1, math.isqrt(n - _min_square_sum(t - 1)))
    for r in range(hi, t - 1, -1):
        rem = n - r * r
        # the t-1 remaining squares are all below r^2
        if rem > (t - 1) * (r - 1) * (r - 1):
            break
        sub = _distinct_squares(rem, t - 1, r)
        if sub is not None:
            return [r] + sub
    return None


def five_squares_check(lo: int, hi: int) -> list[int]:
    """All n in [lo, hi] with no representation as 5 distinct positive squares.

    Empty for lo >= 1024; below that threshold failures are expected and the
    check is still exhaustive.
    """
    if lo < 1 or hi < lo:
        raise ValidationError("need 1 <= lo <= hi")
    failures = []
    for n in range(lo, hi + 1):
        if _distinct_squares(n, 5, math.isqrt(n) + 1) is None:
            failures.append(n)
    return failures
