"""Brute-force ground truth for FS membership.

Everything constructive elsewhere in the package is cross-checked against the
routines here, so this module must stay independent of the constructions: it
only does exhaustive subset search and include-or-not dynamic programming.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .core import (
    Box,
    GeneratorSet,
    Point,
    Representation,
    ResourceLimitError,
    TranslatedOrthant,
    ValidationError,
    point_sum,
)

DEFAULT_CELL_CAP = 2**26


def fs_membership(X: GeneratorSet, target: Point) -> Optional[Representation]:
    """Decide target in FS(X) by exhaustive search with memoized failures.

    Deterministic witness: generators are tried in canonical order and each is
    excluded before it is included, so the returned subset is the one an
    exclude-first depth-first search finds.
    """
    if len(X) and X.dim != target.dim:
        raise ValidationError("generator/target dimension mismatch")
    if target.is_zero:
        return Representation((), target)
    gens = [g for g in X if g.fits_within(target)]

    # suffix sums let us abandon branches that can no longer reach the target
    dim = target.dim
    suffix = [Point.zero(dim)] * (len(gens) + 1)
    for i in range(len(gens) - 1, -1, -1):
        suffix[i] = suffix[i + 1] + gens[i]

    failed: set[tuple[int, Point]] = set()

    def search(i: int, rem: Point) -> Optional[list[Point]]:
        if rem.is_zero:
            return []
        if i == len(gens) or not rem.fits_within(suffix[i]):
            return None
        key = (i, rem)
        if key in failed:
            return None
        sub = search(i + 1, rem)  # exclude first
        if sub is not None:
            return sub
        if gens[i].fits_within(rem):
            sub = search(i + 1, rem - gens[i])
            if sub is not None:
                return [gens[i]] + sub
        failed.add(key)
        return None

    members = search(0, target)
    if members is None:
        return None
    return Representation(tuple(members), target)


@dataclass
class ReachableSet:
    """FS(X) intersected with a box, with a reconstructable witness per point."""

    box: Box
    generators: GeneratorSet
    points: frozenset[Point]
    # stage i = reachable set after the first i generators; used for witnesses
    _stages_2d: Optional[list[dict[int, int]]] = field(default=None, repr=False)
    _stages_nd: Optional[list[frozenset[tuple[int, ...]]]] = field(default=None, repr=False)

    def __contains__(self, p: Point) -> bool:
        return p in self.points

    def _reachable_at_stage(self, i: int, p: Point) -> bool:
        if self._stages_2d is not None:
            x, y = p.coords
            row = self._stages_2d[i].get(y, 0)
            return bool((row >> x) & 1)
        assert self._stages_nd is not None
        return p.coords in self._stages_nd[i]

    def witness(self, p: Point) -> Representation:
        """One representation of a reachable point, rebuilt from the DP stages."""
        if p not in self.points:
            raise ValidationError(f"{p} is not reachable inside the box")
        members: list[Point] = []
        rem = p
        for i in range(len(self.generators), 0, -1):
            if self._reachable_at_stage(i - 1, rem):
                continue
            g = self.generators.elements[i - 1]
            members.append(g)
            rem = rem - g
        assert rem.is_zero
        return Representation(tuple(sorted(members)), p)

    def witness_map(self) -> dict[Point, Representation]:
        return {p: self.witness(p) for p in sorted(self.points)}


def fs_enumerate(X: GeneratorSet, box: Box, cell_cap: int = DEFAULT_CELL_CAP) -> ReachableSet:
    """All points of the box reachable as sums of distinct generators.

    The DP runs over [0, box.hi] (partial sums of nonnegative vectors are
    monotone, so nothing outside that domain can contribute), one generator at
    a time: include it or not.
    """
    hi = box.hi
    cells = 1
    for c in hi.coords:
        cells *= c + 1
    if cells > cell_cap:
        raise ResourceLimitError(
            f"enumeration domain has {cells} cells, above the cap of {cell_cap}"
        )
    gens = X.pruned_to(hi) if len(X) else GeneratorSet(())
    if len(gens) and gens.dim != box.dim:
        raise ValidationError("generator/box dimension mismatch")

    if box.dim == 2:
        return _enumerate_2d(gens, box)
    return _enumerate_nd(gens, box)


def _enumerate_2d(gens: GeneratorSet, box: Box) -> ReachableSet:
    # one x-bitmask per y row; shifting a row by a generator is one big-int op
    hi_x, hi_y = box.hi.coords
    full = (1 << (hi_x + 1)) - 1
    rows: dict[int, int] = {0: 1}
    stages = [dict(rows)]
    for g in gens:
        gx, gy = g.coords
        new = dict(rows)
        for y, mask in rows.items():
            if y + gy > hi_y:
                continue
            shifted = (mask << gx) & full
            if shifted:
                new[y + gy] = new.get(y + gy, 0) | shifted
        rows = new
        stages.append(dict(rows))
    lo_x, lo_y = box.lo.coords
    points = set()
    for y in range(lo_y, hi_y + 1):
        mask = rows.get(y, 0) >> lo_x
        x = lo_x
        while mask:
            if mask & 1:
                points.add(Point((x, y)))
            mask >>= 1
            x += 1
    return ReachableSet(box=box, generators=gens, points=frozenset(points), _stages_2d=stages)


def _enumerate_nd(gens: GeneratorSet, box: Box) -> ReachableSet:
    hi = box.hi
    current: set[tuple[int, ...]] = {Point.zero(box.dim).coords}
    stages = [frozenset(current)]
    for g in gens:
        added = set()
        for t in current:
            s = tuple(a + b for a, b in zip(t, g.coords))
            if all(c <= h for c, h in zip(s, hi.coords)):
                added.add(s)
        current |= added
        stages.append(frozenset(current))
    points = frozenset(Point(t) for t in current if box.contains(Point(t)))
    return ReachableSet(box=box, generators=gens, points=points, _stages_nd=stages)


def trm_table(values: Sequence[int], x_max: int) -> list[int]:
    """trm(x) for every x in [0, x_max]: max subset size summing to x, 0 if none.

    (trm(0) = 0 is the empty sum; for x >= 1 a zero means not representable.)
    """
    prev = 0
    for v in values:
        if v <= prev:
            raise ValidationError("values must be ascending, distinct and positive")
        prev = v
    NEG = -1
    best = [NEG] * (x_max + 1)
    best[0] = 0
    for a in values:
        if a > x_max:
            break
        for s in range(x_max, a - 1, -1):
            if best[s - a] >= 0 and best[s - a] + 1 > best[s]:
                best[s] = best[s - a] + 1
    return [max(b, 0) for b in best]


def trm(values: Sequence[int], x: int) -> int:
    """Maximum number of distinct terms of `values` summing to x (0 = no subset)."""
    if x < 1:
        raise ValidationError("x must be >= 1")
    return trm_table(values, x)[x]


def uncovered_point_search(
    X: GeneratorSet,
    region: TranslatedOrthant,
    search_box: Box,
    cell_cap: int = DEFAULT_CELL_CAP,
) -> Optional[Point]:
    """First point (lex order) of the search box outside FS(X), or None.

    The box must lie inside the translated orthant; every candidate is checked
    independently through fs_membership.
    """
    if not region.contains(search_box.lo):
        raise ValidationError("search box must be contained in the region")
    if search_box.volume() > cell_cap:
        raise ResourceLimitError(
            f"search box has {search_box.volume()} cells, above the cap of {cell_cap}"
        )
    for p in search_box.points_lex():
        if fs_membership(X, p) is None:
            return p
    return None
