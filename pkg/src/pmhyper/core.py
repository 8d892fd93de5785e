"""Finite partial metric spaces over exact rationals.

A partial metric ``p`` on a finite set of labelled points is stored as an
immutable matrix of :class:`fractions.Fraction`.  Validation checks the four
axioms exhaustively and reports every violation it finds, not only the first.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence, Union

RationalLike = Union[int, Fraction, str]

ZERO = Fraction(0)


class PMetricError(ValueError):
    """Base class for errors raised by this package."""


class UnknownPoint(PMetricError, KeyError):
    def __init__(self, label):
        super().__init__(f"unknown point {label!r}")
        self.label = label

    def __str__(self):
        return self.args[0]


@dataclass(frozen=True)
class Violation:
    """One failed check: ``kind`` is NonSquare, DuplicateLabel, NegativeValue or P1..P4."""

    kind: str
    points: tuple[str, ...] = ()
    detail: str = ""

    def __str__(self):
        where = ",".join(self.points)
        msg = f"{self.kind}({where})" if where else self.kind
        return f"{msg}: {self.detail}" if self.detail else msg


class ValidationError(PMetricError):
    """Raised when a matrix is not a partial metric; carries every violation."""

    def __init__(self, violations: Sequence[Violation]):
        self.violations = list(violations)
        lines = "; ".join(str(v) for v in self.violations[:10])
        more = len(self.violations) - 10
        if more > 0:
            lines += f"; ... {more} more"
        super().__init__(f"{len(self.violations)} violation(s): {lines}")


def to_fraction(value: RationalLike) -> Fraction:
    """Parse an exact rational.  Floats are refused."""
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text or any(ch in text for ch in ".eE") or text.count("/") > 1:
            raise ValueError(f"not an exact rational: {value!r}")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not an exact rational: {value!r}") from exc
    raise TypeError(f"expected int, Fraction or 'a/b' string, got {type(value).__name__}")


def format_rational(value: Fraction) -> Union[int, str]:
    """JSON form of a rational: an int when integral, else ``"a/b"`` in lowest terms."""
    value = Fraction(value)
    if value.denominator == 1:
        return value.numerator
    return f"{value.numerator}/{value.denominator}"


class DerivedKind(enum.Enum):
    PM = "pm"  # 2p(x,y) - p(x,x) - p(y,y)
    DM = "dm"  # max(p(x,y) - p(x,x), p(x,y) - p(y,y))
    D = "d"  # p off the diagonal, 0 on it


@dataclass(frozen=True)
class PMetricSpace:
    points: tuple[str, ...]
    matrix: tuple[tuple[Fraction, ...], ...]

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def index(self, label: str) -> int:
        try:
            return self.points.index(label)
        except ValueError:
            raise UnknownPoint(label) from None

    def p(self, x: str, y: str) -> Fraction:
        return self.matrix[self.index(x)][self.index(y)]

    def size(self, x: str) -> Fraction:
        i = self.index(x)
        return self.matrix[i][i]

    @property
    def sizes(self) -> tuple[Fraction, ...]:
        return tuple(self.matrix[i][i] for i in range(len(self.points)))

    @property
    def is_metric(self) -> bool:
        return all(s == 0 for s in self.sizes)

    def restrict(self, labels: Iterable[str]) -> "PMetricSpace":
        idx = [self.index(lbl) for lbl in labels]
        return PMetricSpace(
            tuple(self.points[i] for i in idx),
            tuple(tuple(self.matrix[i][j] for j in idx) for i in idx),
        )

    def to_dict(self) -> dict:
        return {
            "points": list(self.points),
            "p": [[format_rational(v) for v in row] for row in self.matrix],
        }


@dataclass(frozen=True)
class SpaceProfile:
    is_metric: bool
    bottom_set: frozenset
    min_size: Fraction
    max_size: Fraction
    diameter: Fraction
    bounded: bool = True


def _coerce_matrix(labels, matrix):
    labels = tuple(labels)
    n = len(labels)
    if n == 0:
        raise ValidationError([Violation("NonSquare", (), "no points")])
    rows = [list(row) for row in matrix]
    if len(rows) != n or any(len(row) != n for row in rows):
        raise ValidationError(
            [Violation("NonSquare", (), f"expected {n}x{n} matrix for {n} labels")]
        )
    seen, dupes = set(), []
    for lbl in labels:
        if not isinstance(lbl, str):
            raise TypeError(f"labels must be strings, got {lbl!r}")
        if lbl in seen:
            dupes.append(Violation("DuplicateLabel", (lbl,)))
        seen.add(lbl)
    if dupes:
        raise ValidationError(dupes)
    return labels, [[to_fraction(v) for v in row] for row in rows]


def pmetric_violations(labels: Sequence[str], matrix) -> list[Violation]:
    """All axiom violations of ``matrix`` (empty list when it is a partial metric).

    Structural problems (non-square matrix, duplicate labels) raise
    :class:`ValidationError` immediately since the axioms are meaningless then.
    """
    labels, m = _coerce_matrix(labels, matrix)
    n = len(labels)
    out: list[Violation] = []
    for i in range(n):
        for j in range(n):
            if m[i][j] < 0:
                out.append(Violation("NegativeValue", (labels[i], labels[j]), f"p={m[i][j]}"))
    for i, j in combinations(range(n), 2):
        if m[i][j] != m[j][i]:
            out.append(Violation("P3", (labels[i], labels[j]), f"{m[i][j]} != {m[j][i]}"))
    for i, j in combinations(range(n), 2):
        if m[i][i] == m[j][j] == m[i][j]:
            out.append(Violation("P1", (labels[i], labels[j]), f"sizes and p all equal {m[i][j]}"))
    for i in range(n):
        for j in range(n):
            if i != j and m[i][i] > m[i][j]:
                out.append(
                    Violation("P2", (labels[i], labels[j]), f"p(x,x)={m[i][i]} > p(x,y)={m[i][j]}")
                )
    for i in range(n):
        for j in range(i, n):
            for k in range(n):
                bound = m[i][k] + m[k][j] - m[k][k]
                if m[i][j] > bound:
                    out.append(
                        Violation(
                            "P4",
                            (labels[i], labels[j], labels[k]),
                            f"p(x,y)={m[i][j]} > {bound}",
                        )
                    )
    return out


def validate_pmetric(labels: Sequence[str], matrix) -> PMetricSpace:
    """Build a :class:`PMetricSpace`, raising :class:`ValidationError` on any violation."""
    violations = pmetric_violations(labels, matrix)
    if violations:
        raise ValidationError(violations)
    labels, m = _coerce_matrix(labels, matrix)
    return PMetricSpace(labels, tuple(tuple(row) for row in m))


def derive_metric(space: PMetricSpace, kind: DerivedKind) -> PMetricSpace:
    """The metric space (U, p^m), (U, d_m) or (U, D) associated with ``space``."""
    kind = DerivedKind(kind)
    m = space.matrix
    n = len(space)

    def entry(i, j):
        if i == j:
            return ZERO
        if kind is DerivedKind.PM:
            return 2 * m[i][j] - m[i][i] - m[j][j]
        if kind is DerivedKind.DM:
            return max(m[i][j] - m[i][i], m[i][j] - m[j][j])
        return m[i][j]

    return PMetricSpace(space.points, tuple(tuple(entry(i, j) for j in range(n)) for i in range(n)))


def closed_ball(space: PMetricSpace, center: str, radius: RationalLike) -> frozenset:
    """Points y with p(center, y) <= p(center, center) + radius."""
    radius = to_fraction(radius)
    if radius < 0:
        raise ValueError("radius must be non-negative")
    c = space.index(center)
    row = space.matrix[c]
    bound = row[c] + radius
    return frozenset(lbl for lbl, v in zip(space.points, row) if v <= bound)


def profile(space: PMetricSpace) -> SpaceProfile:
    sizes = space.sizes
    lo = min(sizes)
    return SpaceProfile(
        is_metric=all(s == 0 for s in sizes),
        bottom_set=frozenset(lbl for lbl, s in zip(space.points, sizes) if s == lo),
        min_size=lo,
        max_size=max(sizes),
        diameter=max(max(row) for row in space.matrix),
    )


def integer_matrix(space: PMetricSpace) -> tuple[list[list[int]], int]:
    """Scale the matrix by the lcm of its denominators; returns (ints, scale)."""
    from math import lcm

    scale = 1
    for row in space.matrix:
        for v in row:
            scale = lcm(scale, v.denominator)
    return [[int(v * scale) for v in row] for row in space.matrix], scale
