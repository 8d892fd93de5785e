"""Exact deciders for hyperconvexity notions on finite partial metric spaces.

A ball family is reduced to one radius per center (the infimum over repeated
centers), so a family is a map ``center -> radius`` over a nonempty subset S.

Deciding "every admissible family has a witness" is done on the complement.
For a center set S and a choice function f assigning to each point x a
center f(x) whose ball excludes x, the system

    r admissible over S,   r_{f(x)} < c(x, f(x))  for every x

is feasible iff some admissible family has no witness.  Here
``c(x, u) = p(x, u) - p(u, u)`` (AP) or ``p(x, u) - p(x, x)`` (nodal).
Admissibility is upward closed in r and the strict bounds are downward
closed, so the system is feasible iff, with ``m_u`` the minimum of
``c(x, u)`` over the preimage of u,

    m_u + m_v > p(u, v)    for all u, v in S (u = v included).

Centers outside the image of f can take huge radii, so only surjective f
need be enumerated, by increasing |S|.  The literal Fourier-Motzkin route
over all choice functions is kept as ``method="fm"`` for cross-checking.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Mapping, Optional

from .core import (
    DerivedKind,
    PMetricError,
    PMetricSpace,
    RationalLike,
    SpaceProfile,
    UnknownPoint,
    derive_metric,
    format_rational,
    integer_matrix,
    profile,
    to_fraction,
)
from .feasibility import CoverResult, feasible, ge, interval_cover, lt

DEFAULT_MAX_POINTS = 6


class Notion(enum.Enum):
    AP = "ap"
    NODAL = "nodal"


class Mode(enum.Enum):
    """Which distance a convexity query uses: p itself or a derived metric."""

    P = "p"
    PM = "pm"
    DM = "dm"


class SizeGuardExceeded(PMetricError):
    pass


class InadmissibleFamily(PMetricError):
    def __init__(self, u, v, value, bound):
        super().__init__(f"p({u},{v})={value} > r_{u}+r_{v}={bound}")
        self.pair = (u, v)


class InternalInconsistency(PMetricError):
    pass


class BadDecomposition(PMetricError):
    pass


@dataclass(frozen=True)
class BallFamily:
    entries: Mapping[str, Fraction]

    def __post_init__(self):
        entries = {k: to_fraction(v) for k, v in dict(self.entries).items()}
        if not entries:
            raise ValueError("a ball family needs at least one center")
        if any(r < 0 for r in entries.values()):
            raise ValueError("radii must be non-negative")
        object.__setattr__(self, "entries", entries)

    def __hash__(self):
        return hash(tuple(sorted(self.entries.items())))

    @property
    def centers(self) -> tuple:
        return tuple(self.entries)

    def radius(self, center: str) -> Fraction:
        return self.entries[center]

    def inadmissible_pair(self, space: PMetricSpace):
        """First pair (u, v) with p(u, v) > r_u + r_v, or None."""
        for u in self.entries:
            space.index(u)
        centers = list(self.entries)
        for i, u in enumerate(centers):
            for v in centers[i:]:
                if space.p(u, v) > self.entries[u] + self.entries[v]:
                    return u, v
        return None

    def is_admissible(self, space: PMetricSpace) -> bool:
        return self.inadmissible_pair(space) is None

    def to_dict(self) -> dict:
        return {k: format_rational(v) for k, v in self.entries.items()}


def reduce_family(balls) -> BallFamily:
    """Collapse a family with repeated centers to per-center minimum radius."""
    out: dict = {}
    for center, radius in balls:
        radius = to_fraction(radius)
        if center not in out or radius < out[center]:
            out[center] = radius
    return BallFamily(out)


def _check_admissible(space, family):
    bad = family.inadmissible_pair(space)
    if bad is not None:
        u, v = bad
        raise InadmissibleFamily(u, v, space.p(u, v), family.radius(u) + family.radius(v))


def _witnesses(space, family, notion, check=True):
    if check:
        _check_admissible(space, family)
    out = []
    for x in space.points:
        ok = True
        for u, r in family.entries.items():
            base = space.size(u) if notion is Notion.AP else space.size(x)
            if space.p(x, u) > base + r:
                ok = False
                break
        if ok:
            out.append(x)
    return frozenset(out)


def ap_witnesses(space: PMetricSpace, family) -> frozenset:
    """Points x with p(x, u) <= p(u, u) + r_u for every center u."""
    return _witnesses(space, _as_family(family), Notion.AP)


def nodal_witnesses(space: PMetricSpace, family) -> frozenset:
    """Points x with p(x, u) <= p(x, x) + r_u for every center u."""
    return _witnesses(space, _as_family(family), Notion.NODAL)


def witnesses(space: PMetricSpace, family, notion: Notion) -> frozenset:
    return _witnesses(space, _as_family(family), Notion(notion))


def _as_family(family) -> BallFamily:
    return family if isinstance(family, BallFamily) else BallFamily(family)


@dataclass(frozen=True)
class HyperconvexityVerdict:
    holds: bool
    family: Optional[BallFamily] = None
    choice: Optional[Mapping[str, str]] = None  # point -> center whose ball excludes it

    def __bool__(self):
        return self.holds

    def certificate(self) -> Optional[dict]:
        if self.family is None:
            return None
        return {"family": self.family.to_dict(), "witnesses": []}


def _exclusion_margins(P, notion):
    n = len(P)
    if notion is Notion.AP:
        return [[P[x][u] - P[u][u] for u in range(n)] for x in range(n)]
    return [[P[x][u] - P[x][x] for u in range(n)] for x in range(n)]


def _dominating_point(P, c):
    # x lies in every admissible family's witness set when c(x,u) <= p(u,u)/2,
    # the least radius any admissible family can give u.
    n = len(P)
    for x in range(n):
        if all(2 * c[x][u] <= P[u][u] for u in range(n)):
            return x
    return None


def _surjective_choice(P, c, S):
    """First lexicographic surjective f: U -> S with a feasible system, or None."""
    n = len(P)
    allowed = [[u for u in S if 2 * c[x][u] > P[u][u]] for x in range(n)]
    if any(not a for a in allowed):
        return None
    m = {u: None for u in S}
    f = [None] * n

    def assign(x, unused):
        if unused > n - x:
            return False
        if x == n:
            return True
        for u in allowed[x]:
            old = m[u]
            new = c[x][u] if old is None else min(old, c[x][u])
            if new != old and any(
                v != u and m[v] is not None and new + m[v] <= P[u][v] for v in S
            ):
                continue
            m[u] = new
            f[x] = u
            if assign(x + 1, unused - (old is None)):
                return True
            m[u] = old
        return False

    if assign(0, len(S)):
        return f, dict(m)
    return None


def _scaled_certificate(P, S, m, scale):
    # smallest multiple of m that stays admissible; the factor is < 1 since every bound is strict
    lam = max(Fraction(P[u][v], m[u] + m[v]) for u in S for v in S)
    return {u: lam * m[u] / scale for u in S}


def _fm_choice(space, c, S, scale):
    P = space.matrix
    n = len(P)
    base = []
    for i, u in enumerate(S):
        base.append(ge({u: 1}, 0))
        for v in S[i:]:
            coeffs = {u: 2} if u == v else {u: 1, v: 1}
            base.append(ge(coeffs, P[u][v]))
    for f in product(S, repeat=n):
        cons = base + [lt({f[x]: 1}, Fraction(c[x][f[x]], scale)) for x in range(n)]
        res = feasible(cons)
        if res:
            return list(f), {u: res.witness[u] for u in S}
    return None


def _guard(space, max_points):
    if len(space) > max_points:
        raise SizeGuardExceeded(f"{len(space)} points exceed the guard of {max_points}")


def decide(
    space: PMetricSpace,
    notion: Notion,
    max_points: int = DEFAULT_MAX_POINTS,
    method: str = "direct",
) -> HyperconvexityVerdict:
    """Decide AP- or nodal hyperconvexity exactly, with a certificate on failure.

    ``method="fm"`` runs Fourier-Motzkin on every (S, f) system instead of the
    closed-form test; it is slow and meant for cross-checking.
    """
    notion = Notion(notion)
    _guard(space, max_points)
    P, scale = integer_matrix(space)
    c = _exclusion_margins(P, notion)
    if method == "direct" and _dominating_point(P, c) is not None:
        return HyperconvexityVerdict(True)
    n = len(P)
    found = None
    for k in range(1, n + 1):
        for S in combinations(range(n), k):
            if method == "direct":
                hit = _surjective_choice(P, c, S)
                if hit is not None:
                    f, m = hit
                    radii = _scaled_certificate(P, S, m, scale)
                    found = (f, radii)
            elif method == "fm":
                found = _fm_choice(space, c, S, scale)
            else:
                raise ValueError(f"unknown method {method!r}")
            if found is not None:
                break
        if found is not None:
            break
    if found is None:
        return HyperconvexityVerdict(True)
    f, radii = found
    labels = space.points
    family = BallFamily({labels[u]: r for u, r in sorted(radii.items())})
    choice = {labels[x]: labels[f[x]] for x in range(n)}
    if not family.is_admissible(space) or _witnesses(space, family, notion, check=False):
        raise InternalInconsistency(f"certificate {family.to_dict()} does not re-check")
    return HyperconvexityVerdict(False, family, choice)


def decide_ap(space: PMetricSpace, max_points: int = DEFAULT_MAX_POINTS) -> HyperconvexityVerdict:
    return decide(space, Notion.AP, max_points)


def decide_nodal(space: PMetricSpace, max_points: int = DEFAULT_MAX_POINTS) -> HyperconvexityVerdict:
    return decide(space, Notion.NODAL, max_points)


def decide_derived(
    space: PMetricSpace, kind: DerivedKind, max_points: int = DEFAULT_MAX_POINTS
) -> HyperconvexityVerdict:
    """Classical hyperconvexity of the associated metric space.

    On a metric the AP condition is the classical one, so this runs the AP
    decider on the derived space.
    """
    return decide(derive_metric(space, DerivedKind(kind)), Notion.AP, max_points)


@dataclass(frozen=True)
class MidpointVerdict:
    holds: bool
    x: Optional[str] = None
    y: Optional[str] = None
    r: Optional[Fraction] = None

    def __bool__(self):
        return self.holds


def midpoint_property(space: PMetricSpace) -> MidpointVerdict:
    """Ball-pair property: for r + R = p(x, y) some z has p(x,z) <= r and p(z,y) <= R.

    On failure, ``r`` is a split for which no such z exists.
    """
    m = space.matrix
    n = len(space)
    # distinct pairs first so the reported pair is informative; x = y pairs
    # still count (a singleton of positive size fails on its own)
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    for i, j in pairs + [(i, i) for i in range(n)]:
        d = m[i][j]
        pieces = [(m[i][k], d - m[k][j]) for k in range(n)]
        res: CoverResult = interval_cover((0, d), pieces)
        if not res.covered:
            return MidpointVerdict(False, space.points[i], space.points[j], res.gap)
    return MidpointVerdict(True)


def _distance_matrix(space, mode):
    mode = Mode(mode)
    if mode is Mode.P:
        return space.matrix
    return derive_metric(space, DerivedKind(mode.value)).matrix


def find_between(
    space: PMetricSpace,
    x: str,
    y: str,
    lam: RationalLike,
    mu: RationalLike,
    mode: Mode = Mode.P,
) -> Optional[str]:
    """A point z with dist(x, z) = lam and dist(z, y) = mu, or None."""
    lam, mu = to_fraction(lam), to_fraction(mu)
    d = _distance_matrix(space, mode)
    i, j = space.index(x), space.index(y)
    if lam < 0 or mu < 0 or lam + mu != d[i][j]:
        raise BadDecomposition(f"{lam} + {mu} != {d[i][j]}")
    for k, z in enumerate(space.points):
        if d[i][k] == lam and d[k][j] == mu:
            return z
    return None


@dataclass(frozen=True)
class ConvexityVerdict:
    holds: bool
    x: Optional[str] = None
    y: Optional[str] = None
    lam: Optional[Fraction] = None

    def __bool__(self):
        return self.holds


def totally_convex(space: PMetricSpace, mode: Mode = Mode.P) -> ConvexityVerdict:
    """Total (Menger) convexity; finitely many achievable splits never fill a segment."""
    d = _distance_matrix(space, mode)
    n = len(space)
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    for i, j in pairs + [(i, i) for i in range(n)]:
        achievable = [(d[i][k], d[i][k]) for k in range(n) if d[i][k] + d[k][j] == d[i][j]]
        res = interval_cover((0, d[i][j]), achievable)
        if not res.covered:
            return ConvexityVerdict(False, space.points[i], space.points[j], res.gap)
    return ConvexityVerdict(True)


@dataclass(frozen=True)
class ClassificationRecord:
    ap: HyperconvexityVerdict
    nodal: HyperconvexityVerdict
    pm: HyperconvexityVerdict
    dm: HyperconvexityVerdict
    dmetric: HyperconvexityVerdict
    midpoint: MidpointVerdict
    totally_convex_p: ConvexityVerdict
    totally_convex_pm: ConvexityVerdict
    totally_convex_dm: ConvexityVerdict
    profile: SpaceProfile
    n_points: int = field(default=0)

    def flags(self) -> dict:
        return {
            "ap": self.ap.holds,
            "nodal": self.nodal.holds,
            "pm": self.pm.holds,
            "dm": self.dm.holds,
            "dmetric": self.dmetric.holds,
            "midpoint": self.midpoint.holds,
            "totally_convex_p": self.totally_convex_p.holds,
            "totally_convex_pm": self.totally_convex_pm.holds,
            "totally_convex_dm": self.totally_convex_dm.holds,
        }

    def to_dict(self) -> dict:
        out: dict = dict(self.flags())
        certs = {}
        for name in ("ap", "nodal", "pm", "dm", "dmetric"):
            cert = getattr(self, name).certificate()
            if cert is not None:
                certs[name] = cert
        out["certificates"] = certs
        if not self.midpoint.holds:
            out["midpoint_violation"] = {
                "x": self.midpoint.x,
                "y": self.midpoint.y,
                "r": format_rational(self.midpoint.r),
            }
        for mode in ("p", "pm", "dm"):
            v = getattr(self, f"totally_convex_{mode}")
            if not v.holds:
                out[f"totally_convex_{mode}_violation"] = {
                    "x": v.x,
                    "y": v.y,
                    "lambda": format_rational(v.lam),
                }
        prof = self.profile
        out["profile"] = {
            "is_metric": prof.is_metric,
            "bottom_set": sorted(prof.bottom_set),
            "min_size": format_rational(prof.min_size),
            "max_size": format_rational(prof.max_size),
            "diameter": format_rational(prof.diameter),
            "bounded": prof.bounded,
        }
        return out


def implication_violations(record: ClassificationRecord) -> list[str]:
    """Implications that must hold between the verdicts of one record."""
    f = record.flags()
    multi = record.n_points >= 2
    out = []
    if f["dm"] and not (f["ap"] and f["nodal"]):
        out.append("dm => ap and nodal")
    if f["pm"] and not f["nodal"]:
        out.append("pm => nodal")
    if f["dmetric"] and multi and not record.profile.is_metric:
        out.append("dmetric and |U|>=2 => metric")
    if f["midpoint"] and multi and not record.profile.is_metric:
        out.append("midpoint and |U|>=2 => metric")
    if record.profile.is_metric and not (f["ap"] == f["nodal"] == f["dm"] == f["dmetric"]):
        out.append("metric => ap == nodal == dm == dmetric")
    if multi and (f["pm"] or f["dm"] or f["dmetric"]):
        out.append("finite multi-point spaces are not classically hyperconvex")
    for name in ("ap", "nodal"):
        fam = getattr(record, name).family
        if fam is not None and any(r <= 0 for r in fam.entries.values()):
            out.append(f"{name} certificate has a zero radius")
    return out


def classify(space: PMetricSpace, max_points: int = DEFAULT_MAX_POINTS) -> ClassificationRecord:
    """Run every decider and re-check the implications between them."""
    _guard(space, max_points)
    record = ClassificationRecord(
        ap=decide(space, Notion.AP, max_points),
        nodal=decide(space, Notion.NODAL, max_points),
        pm=decide_derived(space, DerivedKind.PM, max_points),
        dm=decide_derived(space, DerivedKind.DM, max_points),
        dmetric=decide_derived(space, DerivedKind.D, max_points),
        midpoint=midpoint_property(space),
        totally_convex_p=totally_convex(space, Mode.P),
        totally_convex_pm=totally_convex(space, Mode.PM),
        totally_convex_dm=totally_convex(space, Mode.DM),
        profile=profile(space),
        n_points=len(space),
    )
    bad = implication_violations(record)
    if bad:
        raise InternalInconsistency("; ".join(bad))
    return record


__all__ = [
    "BallFamily",
    "BadDecomposition",
    "ClassificationRecord",
    "ConvexityVerdict",
    "HyperconvexityVerdict",
    "InadmissibleFamily",
    "InternalInconsistency",
    "MidpointVerdict",
    "Mode",
    "Notion",
    "SizeGuardExceeded",
    "UnknownPoint",
    "ap_witnesses",
    "classify",
    "decide",
    "decide_ap",
    "decide_derived",
    "decide_nodal",
    "find_between",
    "implication_violations",
    "midpoint_property",
    "nodal_witnesses",
    "reduce_family",
    "totally_convex",
    "witnesses",
]
