"""Worked examples of hyperconvex partial metric spaces.

Each case carries the expected values and a function computing the actual
ones; ``run_fixtures`` compares them exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .constructions import NormKind, chain, extend, norm_pmetric, tripod_dm, tripod_dm_gap, basis
from .core import DerivedKind, closed_ball, derive_metric, format_rational, validate_pmetric
from .hyperconvexity import (
    ap_witnesses,
    classify,
    decide_ap,
    decide_derived,
    decide_nodal,
    nodal_witnesses,
)
from .lipschitz import LipschitzNotion, check_lipschitz, constant_map, fixed_points, minimal_L


def two_point_space():
    """Sizes 2 and 0 with p(a, b) = 2: AP and nodal, with different witnesses."""
    return validate_pmetric(["a", "b"], [[2, 2], [2, 0]])


def nodally_not_ap_space():
    return validate_pmetric(["a", "b", "c"], [[3, 3, 3], [3, 0, 2], [3, 2, 0]])


def ap_not_nodally_space():
    return validate_pmetric(["a", "b", "c"], [[10, 15, 30], [15, 0, 15], [30, 15, 10]])


def swap_space():
    """Sizes 2 and 2 with p(a, b) = 3; the swap map is a fixed-point-free isometry."""
    return validate_pmetric(["a", "b"], [[2, 3], [3, 2]])


def shifted_line(xs=(0, 1, 2)):
    """p(x, y) = 1 + |x - y| on a finite subset of the line."""
    xs = [Fraction(x) for x in xs]
    labels = [str(x) for x in xs]
    return validate_pmetric(labels, [[1 + abs(x - y) for y in xs] for x in xs])


def real_line_norm_sample(xs=(0, 1)):
    """p(x, y) = (|x - y| + |x| + |y|) / 2 on a finite subset of the line."""
    return norm_pmetric([[x] for x in xs], NormKind.L1, labels=[str(x) for x in xs])


@dataclass(frozen=True)
class FixtureCase:
    name: str
    locus: str
    expected: dict
    compute: Callable[[], dict]

    def run(self) -> "FixtureResult":
        try:
            actual = self.compute()
        except Exception as exc:  # a crashing fixture is a failing fixture
            actual = {"error": f"{type(exc).__name__}: {exc}"}
        return FixtureResult(self, actual, actual == self.expected)


@dataclass(frozen=True)
class FixtureResult:
    case: FixtureCase
    actual: dict
    passed: bool

    def to_dict(self) -> dict:
        return {
            "name": self.case.name,
            "locus": self.case.locus,
            "expected": self.case.expected,
            "actual": self.actual,
            "pass": self.passed,
        }


def _fam(v):
    return None if v.family is None else v.family.to_dict()


def _two_point():
    s = two_point_space()
    rec = classify(s)
    return {k: rec.flags()[k] for k in ("ap", "nodal", "pm", "dm")}


def _two_point_witnesses():
    s = two_point_space()
    fam = {"a": 1, "b": 1}
    return {"ap": sorted(ap_witnesses(s, fam)), "nodal": sorted(nodal_witnesses(s, fam))}


def _nodally_not_ap():
    s = nodally_not_ap_space()
    ap = decide_ap(s)
    return {
        "ap": ap.holds,
        "nodal": decide_nodal(s).holds,
        "ap_certificate": _fam(ap),
        "ap_witnesses_b1_c1": sorted(ap_witnesses(s, {"b": 1, "c": 1})),
    }


def _ap_not_nodally():
    s = ap_not_nodally_space()
    fam = {"a": 19, "b": 10, "c": 11}
    return {
        "ap": decide_ap(s).holds,
        "nodal": decide_nodal(s).holds,
        "nodal_witnesses_19_10_11": sorted(nodal_witnesses(s, fam)),
    }


def _norm_sample():
    pts = [[0, 0], [1, 0], [0, 1], [1, 1], [-1, Fraction(1, 2)]]
    s = norm_pmetric(pts, NormKind.LINF)
    origin = s.points[0]
    return {
        "ap": decide_ap(s).holds,
        "p(x,0)=p(x,x)": all(s.p(x, origin) == s.size(x) for x in s.points),
    }


def _shifted_line():
    s = shifted_line()
    dm = derive_metric(s, DerivedKind.DM)
    pair = s.restrict(["1", "2"])
    verdict = decide_derived(pair, DerivedKind.D)
    dball = closed_ball(derive_metric(pair, DerivedKind.D), "1", 1)
    return {
        "d_m=|x-y|": all(
            dm.p(x, y) == abs(Fraction(x) - Fraction(y)) for x in s.points for y in s.points
        ),
        "D-hyperconvex {1,2}": verdict.holds,
        "D certificate": _fam(verdict),
        "B_D(1,1)": sorted(dball),
    }


def _tripod():
    e = [basis(j) for j in (1, 2, 3)]
    half, one = tripod_dm_gap(Fraction(1, 2)), tripod_dm_gap(1)
    return {
        "d_m(e_i,e_j)": sorted({format_rational(tripod_dm(e[i], e[j])) for i in range(3) for j in range(3) if i != j}),
        "gap(1/2) empty": half.empty,
        "gap(1) empty": one.empty,
    }


def _swap():
    s = swap_space()
    f = {"a": "b", "b": "a"}
    out = {
        nt.value: format_rational(minimal_L(s, f, nt).minimal_L)
        for nt in (LipschitzNotion.MATTHEWS, LipschitzNotion.IPR, LipschitzNotion.L1)
    }
    out["fixed_points"] = sorted(fixed_points(s, f))
    out["ap"] = decide_ap(s).holds
    out["nodal"] = decide_nodal(s).holds
    return out


def _constant_map():
    s = real_line_norm_sample()
    f = constant_map(s, "1")
    return {
        "matthews": minimal_L(s, f, LipschitzNotion.MATTHEWS).minimal_L,
        "l1 at 1/10, 1, 10": [
            check_lipschitz(s, f, LipschitzNotion.L1, L).holds
            for L in (Fraction(1, 10), 1, 10)
        ],
    }


def _chain():
    rec = classify(chain(4))
    return {"ap": rec.ap.holds, "nodal": rec.nodal.holds}


def _extend():
    w = extend(two_point_space())
    return {"new row": [format_rational(v) for v in w.matrix[-1]]}


FIXTURES: list[FixtureCase] = [
    FixtureCase(
        "two-point",
        "two-point space with sizes 2, 0 (AP and nodal, not p^m/d_m)",
        {"ap": True, "nodal": True, "pm": False, "dm": False},
        _two_point,
    ),
    FixtureCase(
        "two-point-witnesses",
        "two-point space, balls around a and b of radius 1",
        {"ap": ["b"], "nodal": ["a"]},
        _two_point_witnesses,
    ),
    FixtureCase(
        "nodally-not-ap",
        "three points, sizes 3, 0, 0, p(b,c)=2",
        {"ap": False, "nodal": True, "ap_certificate": {"b": 1, "c": 1}, "ap_witnesses_b1_c1": []},
        _nodally_not_ap,
    ),
    FixtureCase(
        "ap-not-nodally",
        "three points, sizes 10, 0, 10, p(a,c)=30",
        {"ap": True, "nodal": False, "nodal_witnesses_19_10_11": []},
        _ap_not_nodally,
    ),
    FixtureCase(
        "norm-linf-sample",
        "norm-induced partial metric, sup norm, sample containing 0",
        {"ap": True, "p(x,0)=p(x,x)": True},
        _norm_sample,
    ),
    FixtureCase(
        "shifted-line",
        "p(x,y)=1+|x-y| on {0,1,2} and its pair {1,2}",
        {"d_m=|x-y|": True, "D-hyperconvex {1,2}": False, "D certificate": {"1": 1, "2": 1}, "B_D(1,1)": ["1"]},
        _shifted_line,
    ),
    FixtureCase(
        "tripod",
        "l1 tripod: d_m balls of radius 1/2 around e_1, e_2, e_3",
        {"d_m(e_i,e_j)": [1], "gap(1/2) empty": True, "gap(1) empty": False},
        _tripod,
    ),
    FixtureCase(
        "swap-isometry",
        "sizes 2, 2, p(a,b)=3 with the swap map",
        {"matthews": 1, "ipr": 1, "l1": 1, "fixed_points": [], "ap": True, "nodal": True},
        _swap,
    ),
    FixtureCase(
        "constant-map",
        "constant map onto 1 of the norm partial metric on {0, 1}",
        {"matthews": None, "l1 at 1/10, 1, 10": [True, True, True]},
        _constant_map,
    ),
    FixtureCase(
        "chain-4",
        "repeated one-point extension of a singleton",
        {"ap": True, "nodal": True},
        _chain,
    ),
    FixtureCase(
        "extend-two-point",
        "one-point extension with M = 1 + diameter",
        {"new row": [3, 3, 3]},
        _extend,
    ),
]


def run_fixtures() -> list[FixtureResult]:
    return [case.run() for case in FIXTURES]
