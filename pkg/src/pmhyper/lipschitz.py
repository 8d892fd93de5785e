"""Lipschitz notions for self-maps of finite partial metric spaces.

All four notions bound p(f(x), f(y)) by a maximum of ``L * p(x, y)`` and some
notion-specific terms:

    MATTHEWS  no extra terms
    IPR       p(x,x), p(y,y)
    L1        p(x,x), p(y,y), p(fx,fx), p(fy,fy)
    L2        p(x,x), p(y,y), p(x,fx), p(y,fy)
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional

from .core import PMetricError, PMetricSpace, RationalLike, UnknownPoint, profile, to_fraction


class LipschitzNotion(enum.Enum):
    MATTHEWS = "matthews"
    IPR = "ipr"
    L1 = "l1"
    L2 = "l2"


class InvalidMap(PMetricError):
    pass


@dataclass(frozen=True)
class SelfMap:
    mapping: Mapping[str, str]

    def __call__(self, x: str) -> str:
        return self.mapping[x]


def _check_map(space: PMetricSpace, f) -> dict:
    mapping = dict(f.mapping if isinstance(f, SelfMap) else f)
    missing = [x for x in space.points if x not in mapping]
    if missing:
        raise InvalidMap(f"map undefined at {missing}")
    extra = [x for x in mapping if x not in space.points]
    if extra:
        raise InvalidMap(f"map defined outside the space at {extra}")
    bad = [y for y in mapping.values() if y not in space.points]
    if bad:
        raise InvalidMap(f"images outside the space: {bad}")
    return mapping


def identity_map(space: PMetricSpace) -> dict:
    return {x: x for x in space.points}


def constant_map(space: PMetricSpace, c: str) -> dict:
    space.index(c)
    return {x: c for x in space.points}


def _extra_terms(space, f, notion, i, j):
    m = space.matrix
    fi, fj = f[i], f[j]
    if notion is LipschitzNotion.MATTHEWS:
        return (Fraction(0),)
    if notion is LipschitzNotion.IPR:
        return (m[i][i], m[j][j])
    if notion is LipschitzNotion.L1:
        return (m[i][i], m[j][j], m[fi][fi], m[fj][fj])
    return (m[i][i], m[j][j], m[i][fi], m[j][fj])


def _indexed(space, mapping):
    return [space.index(mapping[x]) for x in space.points]


@dataclass(frozen=True)
class LipschitzCheck:
    holds: bool
    violation: Optional[tuple] = None

    def __bool__(self):
        return self.holds


def check_lipschitz(space: PMetricSpace, f, notion: LipschitzNotion, L: RationalLike) -> LipschitzCheck:
    """Evaluate the notion's inequality on all ordered pairs; report the first failure."""
    notion = LipschitzNotion(notion)
    L = to_fraction(L)
    if L < 0:
        raise ValueError("L must be non-negative")
    fi = _indexed(space, _check_map(space, f))
    m = space.matrix
    n = len(space)
    for i in range(n):
        for j in range(n):
            rhs = max(L * m[i][j], *_extra_terms(space, fi, notion, i, j))
            if m[fi[i]][fi[j]] > rhs:
                return LipschitzCheck(False, (space.points[i], space.points[j]))
    return LipschitzCheck(True)


@dataclass(frozen=True)
class LipschitzReport:
    notion: LipschitzNotion
    minimal_L: Optional[Fraction]
    attained: bool
    tight_pair: Optional[tuple] = None
    blocking_pair: Optional[tuple] = None  # pair no L satisfies, when minimal_L is None

    @property
    def is_nonexpansive(self) -> bool:
        return self.minimal_L is not None and self.minimal_L <= 1


def minimal_L(space: PMetricSpace, f, notion: LipschitzNotion) -> LipschitzReport:
    """Least Lipschitz constant of ``f`` under ``notion``.

    When no pair constrains L, every L > 0 works and the infimum 0 is not
    attained: ``minimal_L`` is 0 with ``attained`` False.  ``None`` means no
    positive L works.
    """
    notion = LipschitzNotion(notion)
    fi = _indexed(space, _check_map(space, f))
    m = space.matrix
    n = len(space)
    best, tight = None, None
    for i in range(n):
        for j in range(n):
            lhs = m[fi[i]][fi[j]]
            if lhs <= max(_extra_terms(space, fi, notion, i, j)):
                continue
            if m[i][j] == 0:
                return LipschitzReport(
                    notion, None, False, blocking_pair=(space.points[i], space.points[j])
                )
            bound = lhs / m[i][j]
            if best is None or bound > best:
                best, tight = bound, (space.points[i], space.points[j])
    if best is None:
        return LipschitzReport(notion, Fraction(0), False)
    return LipschitzReport(notion, best, True, tight)


def fixed_points(space: PMetricSpace, f) -> frozenset:
    mapping = _check_map(space, f)
    return frozenset(x for x in space.points if mapping[x] == x)


@dataclass(frozen=True)
class ConstantMapReport:
    point: str
    reports: dict  # LipschitzNotion -> LipschitzReport
    ipr_at_zero: bool
    in_bottom_set: bool

    @property
    def equivalent(self) -> bool:
        return self.ipr_at_zero == self.in_bottom_set


def constant_map_report(space: PMetricSpace, c: str) -> ConstantMapReport:
    """Summarise the constant map onto ``c`` under every notion.

    IPR "for any L in [0, 1)" is decided at L = 0: the right-hand side is
    monotone in L, so L = 0 is the hardest case.
    """
    if c not in space.points:
        raise UnknownPoint(c)
    f = constant_map(space, c)
    reports = {nt: minimal_L(space, f, nt) for nt in LipschitzNotion}
    at_zero = check_lipschitz(space, f, LipschitzNotion.IPR, 0).holds
    return ConstantMapReport(c, reports, at_zero, c in profile(space).bottom_set)
