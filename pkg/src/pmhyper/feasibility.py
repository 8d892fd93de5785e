"""Exact feasibility of mixed strict/non-strict rational linear systems.

The engine is Fourier-Motzkin elimination that tracks strictness: a derived
inequality is strict iff one of its two parents is.  Feasible systems get a
rational witness by back-substitution.  Only exact duplicate/dominance
pruning is done between rounds.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Iterable, Mapping, Optional, Sequence

from .core import PMetricError, RationalLike, to_fraction


class Relation(enum.Enum):
    LE = "<="
    LT = "<"


@dataclass(frozen=True)
class LinearConstraint:
    """``sum(coefficients[v] * v) <relation> rhs``."""

    coefficients: Mapping[Hashable, Fraction]
    relation: Relation
    rhs: Fraction

    @property
    def strict(self) -> bool:
        return self.relation is Relation.LT

    def evaluate(self, assignment: Mapping[Hashable, Fraction]) -> bool:
        lhs = sum((c * assignment[v] for v, c in self.coefficients.items()), Fraction(0))
        return lhs < self.rhs if self.strict else lhs <= self.rhs

    def __str__(self):
        terms = " + ".join(f"{c}*{v}" for v, c in self.coefficients.items()) or "0"
        return f"{terms} {self.relation.value} {self.rhs}"


def _constraint(coeffs, relation, rhs, sign=1):
    clean = {}
    for v, c in coeffs.items():
        c = to_fraction(c) * sign
        if c:
            clean[v] = c
    return LinearConstraint(clean, relation, to_fraction(rhs) * sign)


def le(coeffs: Mapping[Hashable, RationalLike], rhs: RationalLike) -> LinearConstraint:
    return _constraint(coeffs, Relation.LE, rhs)


def lt(coeffs: Mapping[Hashable, RationalLike], rhs: RationalLike) -> LinearConstraint:
    return _constraint(coeffs, Relation.LT, rhs)


def ge(coeffs: Mapping[Hashable, RationalLike], rhs: RationalLike) -> LinearConstraint:
    return _constraint(coeffs, Relation.LE, rhs, sign=-1)


def gt(coeffs: Mapping[Hashable, RationalLike], rhs: RationalLike) -> LinearConstraint:
    return _constraint(coeffs, Relation.LT, rhs, sign=-1)


@dataclass(frozen=True)
class Feasibility:
    feasible: bool
    witness: Optional[dict] = None

    def __bool__(self):
        return self.feasible


class InfeasibleBackSubstitution(PMetricError):
    """Back-substitution met an empty interval; indicates an elimination bug."""


# Internal row: (coeffs dict, strict flag, rhs)
def _const_ok(strict: bool, rhs: Fraction) -> bool:
    return rhs > 0 if strict else rhs >= 0


def _prune(rows, order):
    best = {}
    for coeffs, strict, rhs in rows:
        if not coeffs:
            if not _const_ok(strict, rhs):
                return None
            continue
        lead = min(coeffs, key=order.__getitem__)
        scale = abs(coeffs[lead])
        key = tuple(sorted(((order[v], c / scale) for v, c in coeffs.items())))
        rhs_n = rhs / scale
        old = best.get(key)
        if old is None or rhs_n < old[2] or (rhs_n == old[2] and strict and not old[1]):
            best[key] = (coeffs, strict, rhs_n, scale)
    return [
        ({v: c / scale for v, c in coeffs.items()}, strict, rhs_n)
        for coeffs, strict, rhs_n, scale in best.values()
    ]


def feasible(constraints: Iterable[LinearConstraint]) -> Feasibility:
    """Decide a finite system exactly; on success return a rational witness.

    An empty system is feasible with an empty witness.
    """
    constraints = list(constraints)
    order: dict = {}
    for con in constraints:
        for v in con.coefficients:
            order.setdefault(v, len(order))
    rows = [(dict(c.coefficients), c.strict, c.rhs) for c in constraints]
    rows = _prune(rows, order)
    if rows is None:
        return Feasibility(False)

    stages = []
    for var in order:
        involved = [r for r in rows if var in r[0]]
        rest = [r for r in rows if var not in r[0]]
        stages.append((var, involved))
        pos = [r for r in involved if r[0][var] > 0]
        neg = [r for r in involved if r[0][var] < 0]
        combined = []
        for pc, ps, pb in pos:
            a_p = pc[var]
            for nc, ns, nb in neg:
                a_n = -nc[var]
                coeffs = {}
                for v, c in pc.items():
                    if v != var:
                        coeffs[v] = coeffs.get(v, 0) + a_n * c
                for v, c in nc.items():
                    if v != var:
                        coeffs[v] = coeffs.get(v, 0) + a_p * c
                coeffs = {v: c for v, c in coeffs.items() if c}
                combined.append((coeffs, ps or ns, a_n * pb + a_p * nb))
        rows = _prune(rest + combined, order)
        if rows is None:
            return Feasibility(False)

    witness: dict = {}
    for var, involved in reversed(stages):
        lo = hi = None
        lo_strict = hi_strict = False
        for coeffs, strict, rhs in involved:
            a = coeffs[var]
            rest = sum((c * witness[v] for v, c in coeffs.items() if v != var), Fraction(0))
            bound = (rhs - rest) / a
            if a > 0:
                if hi is None or bound < hi or (bound == hi and strict):
                    hi, hi_strict = bound, strict
            else:
                if lo is None or bound > lo or (bound == lo and strict):
                    lo, lo_strict = bound, strict
        witness[var] = _pick(lo, lo_strict, hi, hi_strict, var)
    return Feasibility(True, {v: witness[v] for v in order})


def _pick(lo, lo_strict, hi, hi_strict, var):
    if lo is not None and hi is not None:
        if lo < hi:
            return (lo + hi) / 2
        if lo == hi and not (lo_strict or hi_strict):
            return lo
        raise InfeasibleBackSubstitution(f"empty range for {var!r}: {lo}..{hi}")
    if lo is not None:
        return lo + 1
    if hi is not None:
        return hi - 1
    return Fraction(0)


class DegenerateTarget(PMetricError):
    pass


@dataclass(frozen=True)
class CoverResult:
    covered: bool
    gap: Optional[Fraction] = None

    def __bool__(self):
        return self.covered


@dataclass
class IntervalSet:
    """Closed rational intervals ``[lo, hi]``; an interval with lo > hi is empty."""

    intervals: list = field(default_factory=list)

    def __post_init__(self):
        self.intervals = [(to_fraction(a), to_fraction(b)) for a, b in self.intervals]

    def add(self, lo: RationalLike, hi: RationalLike) -> None:
        self.intervals.append((to_fraction(lo), to_fraction(hi)))

    def nonempty(self) -> list:
        return sorted((a, b) for a, b in self.intervals if a <= b)

    def __iter__(self):
        return iter(self.intervals)

    def __len__(self):
        return len(self.intervals)


def interval_cover(target: Sequence[RationalLike], pieces) -> CoverResult:
    """Whether the union of ``pieces`` contains ``[lo, hi]``.

    When it does not, ``gap`` is an uncovered rational point of the target.
    """
    lo, hi = (to_fraction(v) for v in target)
    if lo > hi:
        raise DegenerateTarget(f"target [{lo}, {hi}] is empty")
    if not isinstance(pieces, IntervalSet):
        pieces = IntervalSet(list(pieces))
    reach = None  # [lo, reach] is covered
    for a, b in pieces.nonempty():
        if b < lo:
            continue
        if a > hi:
            break
        if reach is None:
            if a > lo:
                return CoverResult(False, (lo + a) / 2)
            reach = b
        elif a > reach:
            return CoverResult(False, (reach + a) / 2)
        else:
            reach = max(reach, b)
        if reach >= hi:
            return CoverResult(True)
    if reach is None:
        return CoverResult(False, (lo + hi) / 2)
    return CoverResult(False, (reach + hi) / 2)
