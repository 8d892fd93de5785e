"""Acceptance criteria, one test per criterion.

Each test prints one PASS/FAIL line; the lines are repeated in the pytest
terminal summary.  Run alone with ``pytest tests/test_acceptance.py -s``.
"""

import random
import time
from fractions import Fraction
from itertools import islice

import pytest

from conftest import ACCEPTANCE_LINES
from oracles import brute_force_hyperconvex, random_partial_metric
from pmhyper.constructions import (
    NormKind,
    arm_point,
    arm_profile,
    basis,
    chain,
    extend,
    norm_pmetric,
    tripod_dm,
    tripod_dm_gap,
)
from pmhyper.core import DerivedKind
from pmhyper.fixtures import (
    ap_not_nodally_space,
    nodally_not_ap_space,
    real_line_norm_sample,
    swap_space,
    two_point_space,
)
from pmhyper.hyperconvexity import (
    BallFamily,
    Notion,
    ap_witnesses,
    classify,
    decide_ap,
    decide_derived,
    decide_nodal,
    nodal_witnesses,
    witnesses,
)
from pmhyper.lipschitz import (
    LipschitzNotion as LN,
    check_lipschitz,
    constant_map,
    constant_map_report,
    fixed_points,
    minimal_L,
)
from pmhyper.search import Family, GeneratorConfig, MinePredicate, audit, mine, stream

# Seed used for mining; the instances found are reported in the README.
MINING_SEED = 2024
CORPUS_SIZE = 10_000


def report(number: int, title: str, ok: bool, detail: str = "") -> None:
    line = f"{'PASS' if ok else 'FAIL'}  criterion {number:2d}  {title}" + (f"  ({detail})" if detail else "")
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line


def _corpus():
    """>= 10,000 spaces with 1..4 points from both generator families."""
    per = CORPUS_SIZE // 8
    out = []
    for n in (1, 2, 3, 4):
        for fam, den in ((Family.WEIGHTED_METRIC, 2), (Family.REJECTION, 1)):
            cfg = GeneratorConfig(n=n, seed=100 + n, family=fam, denominator=den, max_value=4)
            out.extend(islice(stream(cfg), per))
    # metric inputs so the coincidence check is not vacuous
    out.extend(islice(stream(GeneratorConfig(n=4, seed=7, weight_max=0, max_value=4)), 500))
    return out


@pytest.fixture(scope="module")
def classified():
    start = time.perf_counter()
    spaces = _corpus()
    records = [classify(s) for s in spaces]
    return spaces, records, time.perf_counter() - start


def _certificate_rechecks(space, verdict, notion):
    fam = verdict.family
    return fam is not None and fam.is_admissible(space) and not witnesses(space, fam, notion)


def test_criterion_01_example_classification():
    timings = []
    checks = []
    for space in (two_point_space(), nodally_not_ap_space(), ap_not_nodally_space()):
        t = time.perf_counter()
        rec = classify(space)
        timings.append(time.perf_counter() - t)
        checks.append(rec)
    both, nna, ann = checks
    fam = BallFamily({"a": 19, "b": 10, "c": 11})
    ann_space = ap_not_nodally_space()
    ok = (
        both.flags()["ap"] and both.flags()["nodal"]
        and not both.flags()["pm"] and not both.flags()["dm"]
        and not nna.ap.holds and nna.nodal.holds
        and nna.ap.family.to_dict() == {"b": 1, "c": 1}
        and ann.ap.holds and not ann.nodal.holds
        and _certificate_rechecks(ann_space, ann.nodal, Notion.NODAL)
        and fam.is_admissible(ann_space)
        and not nodal_witnesses(ann_space, fam)
        and max(timings) < 1
    )
    report(1, "worked examples classify as expected", ok, f"slowest {max(timings):.3f}s")


def test_criterion_02_witness_sets():
    tp, nna, ann = two_point_space(), nodally_not_ap_space(), ap_not_nodally_space()
    ok = (
        ap_witnesses(tp, {"a": 1, "b": 1}) == {"b"}
        and nodal_witnesses(tp, {"a": 1, "b": 1}) == {"a"}
        and ap_witnesses(nna, {"b": 1, "c": 1}) == set()
        and nodal_witnesses(ann, {"a": 19, "b": 10, "c": 11}) == set()
    )
    report(2, "witness sets of the worked families", ok)


def test_criterion_03_midpoint_and_D(classified):
    spaces, records, elapsed = classified
    bad = []
    for s, rec in zip(spaces, records):
        if len(s) < 2:
            continue
        if not s.is_metric and rec.midpoint.holds:
            bad.append(("midpoint", s))
        if rec.dmetric.holds or decide_derived(s, DerivedKind.D).holds:
            bad.append(("D", s))
    ok = len(spaces) >= CORPUS_SIZE and not bad and elapsed < 300
    report(3, "midpoint forces a metric, no multi-point D-hyperconvex space", ok,
           f"{len(spaces)} spaces, {len(bad)} failures, {elapsed:.1f}s")


def test_criterion_04_implication_audit(classified):
    spaces, records, _ = classified
    rep = audit(records)
    classical_ok = all(
        rec.ap.holds == rec.nodal.holds == rec.dm.holds == rec.pm.holds
        for s, rec in zip(spaces, records)
        if s.is_metric
    )
    ok = rep.ok and rep.metric_records > 0 and rep.metric_ap_nodal_agree == rep.metric_records and classical_ok
    report(4, "implication audit", ok,
           f"{len(rep.violations)} violations, {rep.metric_records} metric inputs, patterns {dict(rep.patterns)}")


def test_criterion_05_constructions():
    start = time.perf_counter()
    nodal_fail = ap_fail = ap_inputs = 0
    spaces = []
    for n in (1, 2, 3, 4):
        spaces.extend(islice(stream(GeneratorConfig(n=n, seed=500 + n, denominator=2, max_value=4)), 250))
    for s in spaces:
        w = classify(extend(s))
        nodal_fail += not w.nodal.holds
        if decide_ap(s).holds:
            ap_inputs += 1
            ap_fail += not w.ap.holds
    chains_ok = all(classify(chain(n)).ap.holds and classify(chain(n)).nodal.holds for n in range(1, 6))
    elapsed = time.perf_counter() - start
    ok = len(spaces) == 1000 and not nodal_fail and not ap_fail and ap_inputs > 0 and chains_ok and elapsed < 300
    report(5, "extension and chain constructions", ok,
           f"{len(spaces)} spaces, {ap_inputs} AP inputs, {elapsed:.1f}s")


def _admissible_family(rng, space):
    centers = rng.sample(space.points, rng.randint(1, len(space.points)))
    radii = {u: Fraction(rng.randint(0, 16), rng.choice((1, 2, 4))) for u in centers}
    for u in centers:
        for v in centers:
            short = space.p(u, v) - radii[u] - radii[v]
            if short > 0:
                radii[u] += short
    return BallFamily(radii)


def test_criterion_06_norm_origin_witness():
    rng = random.Random(6)
    failures = checked = 0
    while checked < 1000:
        dim = rng.randint(1, 3)
        kind = rng.choice(list(NormKind))
        pts = {tuple([0] * dim)}
        while len(pts) < rng.randint(2, 6):
            pts.add(tuple(Fraction(rng.randint(-6, 6), rng.choice((1, 2, 3))) for _ in range(dim)))
        pts = sorted(pts, key=lambda v: (any(v), v))
        space = norm_pmetric(pts, kind)
        fam = _admissible_family(rng, space)
        assert fam.is_admissible(space)
        checked += 1
        failures += space.points[0] not in ap_witnesses(space, fam)
    report(6, "origin is an AP witness for norm partial metrics", failures == 0,
           f"{checked} families, {failures} failures")


def test_criterion_07_tripod():
    e = [basis(j) for j in (1, 2, 3)]
    distances = all(tripod_dm(e[i], e[j]) == 1 for i in range(3) for j in range(3) if i != j)
    one = tripod_dm_gap(1)
    witness_ok = not one.empty and all(tripod_dm(arm_point(one.arm, one.parameter), b) <= 1 for b in e)
    pieces = arm_profile(1, 2)
    symbolic = bool(pieces) and all((p.slope, p.intercept) == (0, 1) for p in pieces)
    covers = pieces[0].lo == 0 and pieces[-1].hi == 1 and all(
        a.hi == b.lo for a, b in zip(pieces, pieces[1:])
    )
    ok = distances and tripod_dm_gap(Fraction(1, 2)).empty and witness_ok and symbolic and covers
    report(7, "tripod d_m balls", ok, f"{len(pieces)} linear pieces on arm 1")


def test_criterion_08_lipschitz():
    swap = swap_space()
    f = {"a": "b", "b": "a"}
    swap_ok = all(minimal_L(swap, f, nt).minimal_L == 1 for nt in (LN.MATTHEWS, LN.IPR, LN.L1))
    swap_ok = swap_ok and fixed_points(swap, f) == set()
    line = real_line_norm_sample()
    f1 = constant_map(line, "1")
    const_ok = minimal_L(line, f1, LN.MATTHEWS).minimal_L is None and all(
        check_lipschitz(line, f1, LN.L1, L).holds for L in (Fraction(1, 10), 1, 10)
    )
    rng = random.Random(8)
    pairs = bad = 0
    while pairs < 10_000:
        space = random_partial_metric(rng, rng.randint(1, 4), top=4, den=rng.choice((1, 2)))
        c = rng.choice(space.points)
        pairs += 1
        bad += not constant_map_report(space, c).equivalent
    report(8, "Lipschitz suite", swap_ok and const_ok and bad == 0, f"{pairs} bottom-set pairs, {bad} failures")


def test_criterion_09_decider_vs_oracle():
    start = time.perf_counter()
    rng = random.Random(9)
    mismatches = []
    for i in range(500):
        space = random_partial_metric(rng, 3, top=4, den=rng.choice((1, 2)), weighted=bool(i % 2))
        for notion, decider in ((Notion.AP, decide_ap), (Notion.NODAL, decide_nodal)):
            verdict = decider(space)
            holds, _ = brute_force_hyperconvex(space, notion, seed=i)
            if verdict.holds != holds:
                mismatches.append((notion.value, space.to_dict()))
    elapsed = time.perf_counter() - start
    report(9, "deciders agree with the brute-force oracle", not mismatches and elapsed < 600,
           f"500 spaces, {len(mismatches)} mismatches, {elapsed:.1f}s")


def test_criterion_10_mining():
    found = {}
    for pred in (MinePredicate.NODAL_NOT_AP, MinePredicate.AP_NOT_NODAL):
        res = mine(GeneratorConfig(n=3, seed=MINING_SEED, family=Family.REJECTION), pred, 10**6)
        if res is not None and pred(res.record):
            found[pred.value] = res.instance
    report(10, "mining finds both separations at n = 3", len(found) == 2,
           f"seed {MINING_SEED}, instances {found}")
