"""Seeded generation of partial metric spaces, counterexample mining and audits.

Two generator families:

* ``WEIGHTED_METRIC``: p(x, y) = d(x, y) + max(w(x), w(y)) for a random
  pseudometric d (grid matrix closed under shortest paths) and grid weights
  w.  For a pseudometric d this always satisfies P2-P4 because
  max(a, b) <= max(a, c) + max(c, b) - c; P1 can fail when d(x, y) = 0 and
  w(x) = w(y), so outputs are validated and redrawn.
* ``REJECTION``: symmetric grid matrices kept only when they validate.
"""

from __future__ import annotations

import enum
import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Optional

from .core import PMetricError, PMetricSpace, pmetric_violations, validate_pmetric
from .hyperconvexity import (
    DEFAULT_MAX_POINTS,
    ClassificationRecord,
    SizeGuardExceeded,
    classify,
    implication_violations,
)


class Family(enum.Enum):
    WEIGHTED_METRIC = "weighted-metric"
    REJECTION = "rejection"


class GenerationExhausted(PMetricError):
    pass


@dataclass(frozen=True)
class GeneratorConfig:
    n: int
    seed: int = 0
    max_value: int = 3
    denominator: int = 1
    family: Family = Family.WEIGHTED_METRIC
    weight_max: Optional[int] = None  # defaults to max_value
    max_attempts: int = 100_000  # draws per space before giving up
    max_points: int = DEFAULT_MAX_POINTS

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        if not 1 <= self.n <= self.max_points:
            raise SizeGuardExceeded(f"n={self.n} outside 1..{self.max_points}")
        if self.max_value <= 0 or self.denominator <= 0:
            raise ValueError("grid bounds must be positive")
        if self.weight_max is not None and self.weight_max < 0:
            raise ValueError("weight_max must be non-negative")


def labels_for(n: int) -> list[str]:
    if n <= 26:
        return [chr(ord("a") + i) for i in range(n)]
    return [f"x{i}" for i in range(n)]


def _grid_value(rng: random.Random, top: int, den: int) -> Fraction:
    return Fraction(rng.randint(0, top * den), den)


def _pseudometric(rng, n, top, den):
    d = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            d[i][j] = d[j][i] = _grid_value(rng, top, den)
    for k in range(n):
        for i in range(n):
            for j in range(n):
                via = d[i][k] + d[k][j]
                if via < d[i][j]:
                    d[i][j] = via
    return d


def _draw(rng: random.Random, cfg: GeneratorConfig):
    n, top, den = cfg.n, cfg.max_value, cfg.denominator
    if cfg.family is Family.WEIGHTED_METRIC:
        d = _pseudometric(rng, n, top, den)
        wtop = top if cfg.weight_max is None else cfg.weight_max
        w = [_grid_value(rng, wtop, den) if wtop else Fraction(0) for _ in range(n)]
        return [[d[i][j] + max(w[i], w[j]) for j in range(n)] for i in range(n)]
    m = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            m[i][j] = m[j][i] = _grid_value(rng, top, den)
    return m


def stream(cfg: GeneratorConfig) -> Iterator[PMetricSpace]:
    """Endless deterministic stream of valid spaces for ``cfg``."""
    rng = random.Random(cfg.seed)
    labels = labels_for(cfg.n)
    while True:
        for _ in range(cfg.max_attempts):
            m = _draw(rng, cfg)
            if not pmetric_violations(labels, m):
                yield validate_pmetric(labels, m)
                break
        else:
            raise GenerationExhausted(f"no valid space in {cfg.max_attempts} draws")


def generate(cfg: GeneratorConfig) -> PMetricSpace:
    return next(stream(cfg))


class MinePredicate(enum.Enum):
    NODAL_NOT_AP = "nodal-not-ap"
    AP_NOT_NODAL = "ap-not-nodal"
    NONMETRIC_WITH_MIDPOINT = "nonmetric-with-midpoint"
    PM_HYPERCONVEX_MULTIPOINT = "pm-hyperconvex-multipoint"

    def __call__(self, record: ClassificationRecord) -> bool:
        return _PREDICATES[self](record)


_PREDICATES: dict[MinePredicate, Callable[[ClassificationRecord], bool]] = {
    MinePredicate.NODAL_NOT_AP: lambda r: r.nodal.holds and not r.ap.holds,
    MinePredicate.AP_NOT_NODAL: lambda r: r.ap.holds and not r.nodal.holds,
    MinePredicate.NONMETRIC_WITH_MIDPOINT: lambda r: r.midpoint.holds and not r.profile.is_metric,
    MinePredicate.PM_HYPERCONVEX_MULTIPOINT: lambda r: r.pm.holds and r.n_points >= 2,
}


@dataclass(frozen=True)
class MineResult:
    space: PMetricSpace
    record: ClassificationRecord
    instance: int  # 1-based position in the seed's stream


def mine(cfg: GeneratorConfig, predicate: MinePredicate, budget: int) -> Optional[MineResult]:
    """First space in the seed's stream whose classification satisfies ``predicate``."""
    if budget <= 0:
        raise ValueError("budget must be positive")
    predicate = MinePredicate(predicate)
    for k, space in enumerate(stream(cfg), start=1):
        record = classify(space, cfg.max_points)
        if predicate(record):
            return MineResult(space, record, k)
        if k >= budget:
            return None
    return None


@dataclass
class AuditReport:
    total: int = 0
    patterns: Counter = field(default_factory=Counter)
    violations: list = field(default_factory=list)  # (index, description)
    metric_records: int = 0
    metric_ap_nodal_agree: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "total": self.total,
            "patterns": dict(sorted(self.patterns.items())),
            "violations": [{"index": i, "implication": s} for i, s in self.violations],
            "metric_records": self.metric_records,
            "metric_ap_nodal_agree": self.metric_ap_nodal_agree,
        }


def pattern(record: ClassificationRecord) -> str:
    ap, nodal = record.ap.holds, record.nodal.holds
    if ap and nodal:
        return "both"
    if ap:
        return "ap-only"
    if nodal:
        return "nodal-only"
    return "neither"


def audit(records: Iterable[ClassificationRecord]) -> AuditReport:
    """Count AP/nodal patterns and list every implication that fails."""
    report = AuditReport()
    for idx, rec in enumerate(records):
        report.total += 1
        report.patterns[pattern(rec)] += 1
        if rec.profile.is_metric:
            report.metric_records += 1
            report.metric_ap_nodal_agree += rec.ap.holds == rec.nodal.holds
        for text in implication_violations(rec):
            report.violations.append((idx, text))
    if report.total == 0:
        raise ValueError("audit needs a nonempty dataset")
    return report
