"""Constructions of hyperconvex partial metrics and exact desk-scale examples."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from .core import (
    PMetricError,
    PMetricSpace,
    RationalLike,
    profile,
    to_fraction,
    validate_pmetric,
)


class NormKind(enum.Enum):
    L1 = "l1"
    LINF = "linf"


class DuplicatePoint(PMetricError):
    pass


class DimensionMismatch(PMetricError):
    pass


def fresh_label(taken, prefix: str = "w") -> str:
    taken = set(taken)
    k = 1
    while f"{prefix}{k}" in taken:
        k += 1
    return f"{prefix}{k}"


def extend(space: PMetricSpace, label: Optional[str] = None) -> PMetricSpace:
    """Add one point at distance M = 1 + diameter from everything, itself included.

    Every ball around the new point is the whole space, which is what makes
    the result nodally hyperconvex and keeps AP-hyperconvexity.
    """
    if label is None:
        label = fresh_label(space.points)
    elif label in space.points:
        raise ValueError(f"label {label!r} already in the space")
    big = 1 + profile(space).diameter
    rows = [list(row) + [big] for row in space.matrix]
    rows.append([big] * (len(space) + 1))
    return validate_pmetric(space.points + (label,), rows)


def chain(n: int, first_label: str = "x0") -> PMetricSpace:
    """Size-0 singleton extended n-1 times; sizes come out 0, 1, ..., n-1."""
    if n < 1:
        raise ValueError("chain needs n >= 1")
    space = validate_pmetric([first_label], [[0]])
    for _ in range(n - 1):
        space = extend(space)
    return space


def norm(vector: Sequence[Fraction], kind: NormKind) -> Fraction:
    kind = NormKind(kind)
    if not vector:
        return Fraction(0)
    if kind is NormKind.L1:
        return sum((abs(v) for v in vector), Fraction(0))
    return max(abs(v) for v in vector)


def norm_partial_metric(x, y, kind: NormKind) -> Fraction:
    """p(x, y) = (|x - y| + |x| + |y|) / 2."""
    diff = [a - b for a, b in zip(x, y)]
    return (norm(diff, kind) + norm(x, kind) + norm(y, kind)) / 2


def _vector_label(v) -> str:
    return "(" + ",".join(str(c) for c in v) + ")"


def norm_pmetric(
    points: Sequence[Sequence[RationalLike]],
    kind: NormKind,
    labels: Optional[Sequence[str]] = None,
) -> PMetricSpace:
    """Partial metric induced by a norm on a finite set of rational vectors."""
    kind = NormKind(kind)
    vecs = [tuple(to_fraction(c) for c in v) for v in points]
    if not vecs:
        raise ValueError("need at least one point")
    dims = {len(v) for v in vecs}
    if len(dims) != 1:
        raise DimensionMismatch(f"vectors of dimensions {sorted(dims)}")
    if len(set(vecs)) != len(vecs):
        raise DuplicatePoint("points must be distinct")
    if labels is None:
        labels = [_vector_label(v) for v in vecs]
    matrix = [[norm_partial_metric(x, y, kind) for y in vecs] for x in vecs]
    return validate_pmetric(list(labels), matrix)


# Tripod: three unit segments from the origin along the axes of (R^3, l1).

def arm_point(arm: int, s: RationalLike) -> tuple:
    if arm not in (1, 2, 3):
        raise ValueError("arm must be 1, 2 or 3")
    s = to_fraction(s)
    if not 0 <= s <= 1:
        raise ValueError("arm parameter must lie in [0, 1]")
    v = [Fraction(0)] * 3
    v[arm - 1] = s
    return tuple(v)


def basis(j: int) -> tuple:
    return arm_point(j, 1)


def tripod_dm(x, y) -> Fraction:
    """d_m on the tripod: p(x, y) - min(|x|_1, |y|_1) for the l1 partial metric."""
    pxy = norm_partial_metric(x, y, NormKind.L1)
    return pxy - min(norm(x, NormKind.L1), norm(y, NormKind.L1))


@dataclass(frozen=True)
class LinearPiece:
    """``value(s) = slope * s + intercept`` on ``[lo, hi]``."""

    lo: Fraction
    hi: Fraction
    slope: Fraction
    intercept: Fraction

    def __call__(self, s):
        return self.slope * s + self.intercept


def _arm_breakpoints(arm: int, targets) -> list:
    # Breakpoints in s of |x - e_j|_1, |x|_1 and min(|x|_1, |e_j|_1) along the arm;
    # each is where some coordinate or the norm comparison changes sign.
    pts = {Fraction(0), Fraction(1)}
    for t in targets:
        k = arm - 1
        if 0 < t[k] < 1:
            pts.add(t[k])
        tn = norm(t, NormKind.L1)
        if 0 < tn < 1:
            pts.add(tn)
    return sorted(pts)


def arm_profile(arm: int, j: int) -> list:
    """d_m(arm point at s, e_j) as exact linear pieces over [0, 1].

    Each piece's coefficients come from its endpoints and are confirmed at
    the midpoint, so the representation is checked rather than assumed.
    """
    e = basis(j)
    bps = _arm_breakpoints(arm, [e])
    pieces = []
    for a, b in zip(bps, bps[1:]):
        fa, fb = tripod_dm(arm_point(arm, a), e), tripod_dm(arm_point(arm, b), e)
        slope = (fb - fa) / (b - a)
        piece = LinearPiece(a, b, slope, fa - slope * a)
        mid = (a + b) / 2
        if piece(mid) != tripod_dm(arm_point(arm, mid), e):
            raise AssertionError(f"d_m not linear on [{a}, {b}] of arm {arm}")
        pieces.append(piece)
    return pieces


@dataclass(frozen=True)
class TripodResult:
    empty: bool
    arm: Optional[int] = None
    parameter: Optional[Fraction] = None
    value: Optional[Fraction] = None  # max_i d_m(witness, e_i)

    def __bool__(self):
        return not self.empty


def tripod_dm_gap(radius: RationalLike) -> TripodResult:
    """Is there a tripod point within d_m-distance ``radius`` of all of e_1, e_2, e_3?

    The function s -> max_j d_m(x(s), e_j) is piecewise linear on each arm, so
    its minimum over a piece is attained at an endpoint or at a crossing of
    two of the linear functions.
    """
    radius = to_fraction(radius)
    if radius < 0:
        raise ValueError("radius must be non-negative")
    best = None
    for arm in (1, 2, 3):
        profiles = [arm_profile(arm, j) for j in (1, 2, 3)]
        cuts = sorted({pc.lo for prof in profiles for pc in prof} | {Fraction(1)})
        for a, b in zip(cuts, cuts[1:]):
            lines = []
            for prof in profiles:
                pc = next(pc for pc in prof if pc.lo <= a and b <= pc.hi)
                lines.append(pc)
            candidates = {a, b}
            for f, g in combinations(lines, 2):
                if f.slope != g.slope:
                    s = (g.intercept - f.intercept) / (f.slope - g.slope)
                    if a < s < b:
                        candidates.add(s)
            for s in sorted(candidates):
                x = arm_point(arm, s)
                val = max(tripod_dm(x, basis(j)) for j in (1, 2, 3))
                if best is None or val < best[0]:
                    best = (val, arm, s)
    val, arm, s = best
    if val <= radius:
        return TripodResult(False, arm, s, val)
    return TripodResult(True, value=val)
