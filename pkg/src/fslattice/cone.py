"""Thin complete generator sets for simplicial lattice cones.

Given linearly independent v_1..v_k (none parallel to an axis), the generator
set S u X_1 u ... u X_k -- the integer points of the simplex on k*v_1..k*v_k
plus the dyadic multiples of each v_i -- covers every integer point of the
cone by sums of distinct elements, while growing only logarithmically.  The
decomposition peels one v_l at a time using the simplex-covering indices and
then merges the peeled copies by binary carries.

All membership predicates are exact: barycentric coordinates are kept as
integer numerators over the (positive) determinant, never floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .core import (
    DepthError,
    DomainError,
    GeneratorSet,
    Point,
    Representation,
    ValidationError,
)


def _invert_exact(matrix: list[list[int]]) -> tuple[list[list[Fraction]], Fraction]:
    """Gauss-Jordan over Fractions; returns (inverse, determinant)."""
    k = len(matrix)
    a = [[Fraction(matrix[r][c]) for c in range(k)] for r in range(k)]
    inv = [[Fraction(1 if r == c else 0) for c in range(k)] for r in range(k)]
    det = Fraction(1)
    for col in range(k):
        pivot = next((r for r in range(col, k) if a[r][col] != 0), None)
        if pivot is None:
            raise ValidationError("cone generators are linearly dependent")
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            inv[col], inv[pivot] = inv[pivot], inv[col]
            det = -det
        p = a[col][col]
        det *= p
        a[col] = [x / p for x in a[col]]
        inv[col] = [x / p for x in inv[col]]
        for r in range(k):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                inv[r] = [x - f * y for x, y in zip(inv[r], inv[col])]
    return inv, det


@dataclass(frozen=True)
class ConeSpec:
    """Simplicial cone data: k linearly independent generators in N^k."""

    v: tuple[Point, ...]

    def __post_init__(self) -> None:
        k = len(self.v)
        if k < 1:
            raise ValidationError("cone needs at least one generator")
        for p in self.v:
            if p.dim != k:
                raise ValidationError("cone generators must live in dimension k")
            if sum(1 for c in p.coords if c != 0) < 2:
                raise ValidationError(f"generator {p} is parallel to a coordinate axis")
        # cache the exact inverse as integer numerators over a positive denominator
        inv, det = _invert_exact([[self.v[j].coords[i] for j in range(k)] for i in range(k)])
        if det == 0:
            raise ValidationError("cone generators are linearly dependent")
        den = det.numerator if det.denominator == 1 else None
        assert den is not None
        num = [[inv[r][c] * den for c in range(k)] for r in range(k)]
        if den < 0:
            den = -den
            num = [[-x for x in row] for row in num]
        object.__setattr__(self, "_den", int(den))
        object.__setattr__(self, "_num", tuple(tuple(int(x) for x in row) for row in num))

    @property
    def k(self) -> int:
        return len(self.v)

    def coeff_numerators(self, p: Point) -> tuple[tuple[int, ...], int]:
        """Barycentric numerators of p over the common positive denominator."""
        if p.dim != self.k:
            raise ValidationError("point/cone dimension mismatch")
        den: int = self._den  # type: ignore[attr-defined]
        num = self._num  # type: ignore[attr-defined]
        return tuple(sum(num[r][c] * p.coords[c] for c in range(self.k)) for r in range(self.k)), den

    def in_cone(self, p: Point) -> bool:
        nums, _ = self.coeff_numerators(p)
        return all(x >= 0 for x in nums)

    def to_json(self) -> dict:
        return {"v": [p.to_json() for p in self.v]}

    @classmethod
    def from_json(cls, data: dict) -> "ConeSpec":
        return cls(tuple(Point.from_json(p) for p in data["v"]))


@dataclass(frozen=True)
class BarycentricCoords:
    """Exact coefficients a with p = sum a_i * v_i."""

    a: tuple[Fraction, ...]

    @property
    def total(self) -> Fraction:
        return sum(self.a, Fraction(0))

    def in_cone(self) -> bool:
        return all(x >= 0 for x in self.a)

    def in_scaled_simplex(self, c: int) -> bool:
        """p in the simplex on c*v_1..c*v_k, i.e. all a_i >= 0 and sum <= c."""
        return self.in_cone() and self.total <= c


def barycentric(spec: ConeSpec, p: Point) -> BarycentricCoords:
    nums, den = spec.coeff_numerators(p)
    return BarycentricCoords(tuple(Fraction(x, den) for x in nums))


def face_cover_index(a: Sequence[Fraction], lam: Fraction) -> int:
    """Smallest index l with a_l >= lam, for coordinates summing to 1.

    This is the pigeonhole step behind the face covering: with lam <= 1/k some
    coordinate must clear the threshold, and subtracting lam from it keeps the
    point inside the simplex.
    """
    k = len(a)
    if sum(a, Fraction(0)) != 1:
        raise ValidationError("face point must have coordinate sum exactly 1")
    if lam > Fraction(1, k):
        raise DomainError(f"lambda {lam} exceeds 1/{k}")
    for l, x in enumerate(a):
        if x >= lam:
            return l
    raise AssertionError("unreachable: some coordinate is >= 1/k >= lambda")


def simplex_cover_index(b: Sequence[Fraction], lam: Fraction) -> int:
    """Index l such that b - lam*e_l lies in the unit simplex.

    `b` are coordinates of a point of the (1+lam)-scaled simplex that is not in
    the unit simplex (1 < sum b <= 1+lam); the index comes from normalizing to
    the face and reusing face_cover_index.
    """
    total = sum(b, Fraction(0))
    if not 1 < total <= 1 + lam:
        raise DomainError("point must lie strictly between the simplex and its dilation")
    c = [x / total for x in b]
    return face_cover_index(c, lam)


@dataclass(frozen=True)
class ThinGeneratorSet:
    """Simplex seed S plus truncated dyadic rays 2^j * v_i, 0 <= j <= depth."""

    spec: ConeSpec
    depth: int
    seed: GeneratorSet
    rays: tuple[tuple[Point, ...], ...]

    def all_elements(self) -> GeneratorSet:
        pts = set(self.seed)
        for ray in self.rays:
            pts.update(ray)
        return GeneratorSet.of(pts)

    def __contains__(self, p: Point) -> bool:
        if p in self.seed:
            return True
        return any(p in ray for ray in self.rays)

    def to_json(self) -> dict:
        return {
            "spec": self.spec.to_json(),
            "depth": self.depth,
            "seed": self.seed.to_json(),
            "rays": [[p.to_json() for p in ray] for ray in self.rays],
        }


def build_thin_generators(spec: ConeSpec, depth: int) -> ThinGeneratorSet:
    """Enumerate the seed simplex exactly and attach dyadic rays of the given depth."""
    if depth < 0:
        raise ValidationError("depth must be >= 0")
    k = spec.k
    hi = tuple(k * max(v.coords[j] for v in spec.v) for j in range(k))
    seed_points = []

    def scan(prefix: tuple[int, ...], i: int) -> None:
        if i == k:
            p = Point(prefix)
            if p.is_zero:
                return
            nums, den = spec.coeff_numerators(p)
            if all(x >= 0 for x in nums) and sum(nums) <= k * den:
                seed_points.append(p)
            return
        for c in range(hi[i] + 1):
            scan(prefix + (c,), i + 1)

    scan((), 0)
    rays = tuple(
        tuple(v.scale(1 << j) for j in range(depth + 1)) for v in spec.v
    )
    return ThinGeneratorSet(spec=spec, depth=depth, seed=GeneratorSet.of(seed_points), rays=rays)


def default_depth(spec: ConeSpec, target: Point) -> int:
    """Enough ray powers for the target, plus a spare slot for the final carry."""
    min_coord = min(c for v in spec.v for c in v.coords if c != 0)
    max_target = max(target.coords)
    if max_target == 0:
        return 2
    return math.ceil(math.log2(max(max_target / min_coord, 1))) + 2


def peel(spec: ConeSpec, v: Point, layer: Optional[int] = None) -> tuple[int, Point]:
    """One covering step: find l with v - v_l still in the next-lower simplex layer.

    The layer index i satisfies coefficient-sum in (k+i, k+i+1]; the returned l
    is the smallest index whose face-normalized coefficient reaches 1/(k+i).
    """
    k = spec.k
    nums, den = spec.coeff_numerators(v)
    if any(x < 0 for x in nums):
        raise DomainError(f"{v} is not in the cone")
    s = sum(nums)
    if s <= k * den:
        raise DomainError(f"{v} is already in the base simplex; nothing to peel")
    computed_layer = -(-s // den) - k - 1  # ceil(sum) - k - 1
    if layer is not None and layer != computed_layer:
        raise DomainError(
            f"{v} has coefficient sum in layer {computed_layer}, not {layer}"
        )
    i = computed_layer
    # c_l >= 1/(k+i)  <=>  nums[l]*(k+i) >= s   (all terms integer)
    for l in range(k):
        if nums[l] * (k + i) >= s:
            return l, v - spec.v[l]
    raise AssertionError("unreachable: face covering always yields an index")


def decompose(spec: ConeSpec, X: ThinGeneratorSet, v: Point) -> Representation:
    """Express a nonzero cone point as a sum of distinct elements of X.

    Peels generators until the residual sits in the base simplex, then merges
    the peel counts into dyadic ray elements via binary expansion (the closed
    form of repeatedly replacing v_l + 2v_l + ... + 2^m v_l by 2^(m+1) v_l).
    """
    k = spec.k
    nums, den = spec.coeff_numerators(v)
    if any(x < 0 for x in nums):
        raise DomainError(f"{v} is not in the cone")
    if v.is_zero:
        raise DomainError("cannot decompose the origin")

    counts = [0] * k
    residual = v
    while True:
        r_nums, r_den = spec.coeff_numerators(residual)
        if sum(r_nums) <= k * r_den:
            break
        l, residual = peel(spec, residual)
        counts[l] += 1

    members: list[Point] = []
    r_nums, r_den = spec.coeff_numerators(residual)
    if not residual.is_zero:
        nonzero = [l for l in range(k) if r_nums[l] != 0]
        if len(nonzero) == 1 and r_nums[nonzero[0]] % r_den == 0:
            # residual is an exact multiple of one generator: fold it into the
            # ray count so the binary carry keeps all elements distinct
            counts[nonzero[0]] += r_nums[nonzero[0]] // r_den
        else:
            members.append(residual)

    for l in range(k):
        c = counts[l]
        j = 0
        while c:
            if c & 1:
                p = spec.v[l].scale(1 << j)
                if p not in X:
                    raise DepthError(
                        f"ray depth {X.depth} too small; need depth {j} for {p}",
                        required_depth=j,
                    )
                members.append(p)
            c >>= 1
            j += 1

    return Representation(tuple(sorted(members)), v)


def decompose_auto(
    spec: ConeSpec, X: ThinGeneratorSet, v: Point
) -> tuple[ThinGeneratorSet, Representation]:
    """decompose, rebuilding X with a deeper ray truncation if carries run out."""
    while True:
        try:
            return X, decompose(spec, X, v)
        except DepthError as exc:
            X = build_thin_generators(spec, max(exc.required_depth, X.depth + 1))


@dataclass(frozen=True)
class ThinnessReport:
    n: int
    count: int
    bound: float
    passed: bool


def thinness_report(X: ThinGeneratorSet, n: int) -> ThinnessReport:
    """Census of X inside [1,n]^k against the |S| + k*log2(n) + k budget."""
    if n < 1:
        raise ValidationError("n must be >= 1")
    k = X.spec.k
    count = sum(
        1 for p in X.all_elements() if all(1 <= c <= n for c in p.coords)
    )
    bound = len(X.seed) + k * math.log2(n) + k
    return ThinnessReport(n=n, count=count, bound=bound, passed=count <= bound + 1e-9)
