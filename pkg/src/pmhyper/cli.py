"""Command line interface: ``pmhyper <command> ...``.

JSON results go to stdout, a short human summary to stderr.  Exit codes:
0 success, 1 a ``--expect`` assertion failed (or a fixture failed),
2 usage or format errors, including invalid partial metrics.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .constructions import NormKind, chain, extend, norm_pmetric, tripod_dm_gap
from .core import DerivedKind, PMetricError, ValidationError, derive_metric, format_rational, pmetric_violations, profile, to_fraction
from .fixtures import run_fixtures
from .hyperconvexity import (
    DEFAULT_MAX_POINTS,
    Notion,
    SizeGuardExceeded,
    classify,
    witnesses,
)
from .io import (
    FORMAT_VERSION,
    FormatError,
    _load_json,
    dumps,
    family_from_dict,
    load_map,
    load_raw_space,
    load_space,
    save_space,
)
from .lipschitz import LipschitzNotion, check_lipschitz, fixed_points, minimal_L
from .search import Family, GeneratorConfig, MinePredicate, mine

HARD_MAX_POINTS = 8


class UsageError(Exception):
    pass


def _rational_arg(text: str) -> Fraction:
    try:
        return to_fraction(text)
    except (TypeError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _profile_dict(space):
    prof = profile(space)
    return {
        "is_metric": prof.is_metric,
        "bottom_set": sorted(prof.bottom_set),
        "min_size": format_rational(prof.min_size),
        "max_size": format_rational(prof.max_size),
        "diameter": format_rational(prof.diameter),
    }


def _guard(space, args):
    if len(space) > args.max_points:
        raise SizeGuardExceeded(f"{len(space)} points exceed --max-points {args.max_points}")


def cmd_validate(args):
    points, matrix = load_raw_space(args.space)
    violations = pmetric_violations(points, matrix)
    out = {
        "valid": not violations,
        "violations": [
            {"axiom": v.kind, "points": list(v.points), "detail": v.detail} for v in violations
        ],
    }
    if violations:
        for v in violations:
            print(f"violation: {v}", file=sys.stderr)
        return out, 2
    out["profile"] = _profile_dict(load_space(args.space))
    print(f"valid partial metric on {len(points)} points", file=sys.stderr)
    return out, 0


def cmd_derive(args):
    space = load_space(args.space)
    return derive_metric(space, DerivedKind(args.kind)).to_dict(), 0


def cmd_classify(args):
    space = load_space(args.space)
    _guard(space, args)
    rec = classify(space, args.max_points)
    flags = rec.flags()
    print(", ".join(f"{k}={'yes' if v else 'no'}" for k, v in flags.items()), file=sys.stderr)
    return rec.to_dict(), 0


def cmd_witness(args):
    space = load_space(args.space)
    raw = args.family
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError:
        doc = _load_json(raw)
    family = family_from_dict(doc, "--family")
    notions = [Notion.AP, Notion.NODAL] if args.notion == "both" else [Notion(args.notion)]
    out = {"family": family.to_dict(), "admissible": family.is_admissible(space)}
    if out["admissible"]:
        for nt in notions:
            out[nt.value] = sorted(witnesses(space, family, nt))
    else:
        u, v = family.inadmissible_pair(space)
        out["inadmissible_pair"] = [u, v]
    return out, 0


def cmd_extend(args):
    space = load_space(args.space)
    return extend(space, args.label).to_dict(), 0


def cmd_chain(args):
    if args.n < 1:
        raise UsageError("chain: N must be >= 1")
    return chain(args.n).to_dict(), 0


def cmd_norm(args):
    try:
        pts = [[to_fraction(c) for c in p.split(",")] for p in args.point]
    except (TypeError, ValueError) as exc:
        raise UsageError(f"--point: {exc}") from exc
    return norm_pmetric(pts, NormKind(args.norm)).to_dict(), 0


def cmd_tripod(args):
    res = tripod_dm_gap(args.radius)
    out = {"radius": format_rational(args.radius), "empty": res.empty}
    if res.empty:
        out["min_max_dm"] = format_rational(res.value)
        print(f"no tripod point within d_m {args.radius} of e1, e2, e3", file=sys.stderr)
    else:
        out["witness"] = {"arm": res.arm, "parameter": format_rational(res.parameter)}
        out["max_dm"] = format_rational(res.value)
        print(f"witness on arm {res.arm} at {res.parameter}", file=sys.stderr)
    return out, 0


def cmd_lipschitz(args):
    space = load_space(args.space)
    f = load_map(args.map)
    notion = LipschitzNotion(args.notion)
    rep = minimal_L(space, f, notion)
    out = {
        "notion": notion.value,
        "minimal_L": None if rep.minimal_L is None else format_rational(rep.minimal_L),
        "attained": rep.attained,
        "tight_pair": list(rep.tight_pair) if rep.tight_pair else None,
        "blocking_pair": list(rep.blocking_pair) if rep.blocking_pair else None,
        "is_nonexpansive": rep.is_nonexpansive,
        "fixed_points": sorted(fixed_points(space, f)),
    }
    if args.L is not None:
        chk = check_lipschitz(space, f, notion, args.L)
        out["check"] = {
            "L": format_rational(args.L),
            "holds": chk.holds,
            "violation": list(chk.violation) if chk.violation else None,
        }
    print(f"{notion.value}: minimal L = {out['minimal_L']}", file=sys.stderr)
    return out, 0


def cmd_search(args):
    cfg = GeneratorConfig(
        n=args.n,
        seed=args.seed,
        max_value=args.grid_max,
        denominator=args.grid_denom,
        family=Family(args.family),
        max_points=args.max_points,
    )
    res = mine(cfg, MinePredicate(args.find), args.budget)
    if res is None:
        print(f"nothing found within {args.budget} instances", file=sys.stderr)
        return {"found": False, "budget": args.budget}, 0
    if args.out:
        save_space(res.space, args.out)
    print(f"found at instance {res.instance}", file=sys.stderr)
    return {
        "found": True,
        "instance": res.instance,
        "space": res.space.to_dict(),
        "classification": res.record.to_dict(),
    }, 0


def cmd_report(args):
    results = run_fixtures()
    for r in results:
        mark = "PASS" if r.passed else "FAIL"
        print(f"{mark}  {r.case.name:22s} {r.case.locus}", file=sys.stderr)
    failed = sum(not r.passed for r in results)
    out = {
        "format": FORMAT_VERSION,
        "cases": [r.to_dict() for r in results],
        "passed": len(results) - failed,
        "failed": failed,
    }
    return out, 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--max-points",
        type=int,
        default=DEFAULT_MAX_POINTS,
        help=f"size guard for the deciders (default {DEFAULT_MAX_POINTS}, at most {HARD_MAX_POINTS})",
    )
    common.add_argument(
        "--expect",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="assert a top-level output field; exit 1 when it differs",
    )
    parser = argparse.ArgumentParser(prog="pmhyper", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check the partial metric axioms")
    p.add_argument("space")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("derive", parents=[common], help="associated metric p^m, d_m or D")
    p.add_argument("space")
    p.add_argument("--kind", choices=[k.value for k in DerivedKind], required=True)
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("classify", parents=[common], help="run every hyperconvexity decider")
    p.add_argument("space")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("witness", parents=[common], help="witness sets of one ball family")
    p.add_argument("space")
    p.add_argument("--family", required=True, help='JSON object {"center": radius} or a file')
    p.add_argument("--notion", choices=["ap", "nodal", "both"], default="both")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("extend", parents=[common], help="add a point at distance 1 + diameter")
    p.add_argument("space")
    p.add_argument("--label")
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser("chain", parents=[common], help="AP- and nodally hyperconvex space on N points")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_chain)

    p = sub.add_parser("norm", parents=[common], help="norm-induced partial metric on rational vectors")
    p.add_argument("--norm", choices=[k.value for k in NormKind], required=True)
    p.add_argument("--point", action="append", required=True, help="comma separated coordinates")
    p.set_defaults(func=cmd_norm)

    p = sub.add_parser("tripod", parents=[common], help="common d_m-ball point of e1, e2, e3 on the l1 tripod")
    p.add_argument("--radius", type=_rational_arg, required=True)
    p.set_defaults(func=cmd_tripod)

    p = sub.add_parser("lipschitz", parents=[common], help="minimal Lipschitz constant of a self-map")
    p.add_argument("--space", required=True)
    p.add_argument("--map", required=True)
    p.add_argument("--notion", choices=[k.value for k in LipschitzNotion], required=True)
    p.add_argument("--L", type=_rational_arg, help="also check this constant")
    p.set_defaults(func=cmd_lipschitz)

    p = sub.add_parser("search", parents=[common], help="mine a generated space matching a pattern")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--grid-max", type=int, default=3)
    p.add_argument("--grid-denom", type=int, default=1)
    p.add_argument("--family", choices=[f.value for f in Family], default="rejection")
    p.add_argument("--find", choices=[m.value for m in MinePredicate], required=True)
    p.add_argument("--budget", type=int, default=100_000)
    p.add_argument("--out", help="also write the found space to this file")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("report", parents=[common], help="run the worked-example fixtures")
    p.set_defaults(func=cmd_report)
    return parser


def _expectations(pairs):
    out = {}
    for pair in pairs:
        key, sep, value = pair.partition("=")
        if not sep or not key:
            raise UsageError(f"--expect {pair!r}: expected KEY=VALUE")
        try:
            out[key] = json.loads(value)
        except json.JSONDecodeError:
            out[key] = value
    return out


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.max_points > HARD_MAX_POINTS or args.max_points < 1:
            raise UsageError(f"--max-points must be within 1..{HARD_MAX_POINTS}")
        expect = _expectations(args.expect)
        out, code = args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except ValidationError as exc:
        print(f"invalid partial metric: {exc}", file=sys.stderr)
        print(dumps({"error": "validation", "violations": [str(v) for v in exc.violations]}))
        return 2
    except (FormatError, PMetricError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        print(dumps({"error": type(exc).__name__, "message": str(exc)}))
        return 2
    print(dumps(out))
    if code == 0 and expect:
        for key, want in expect.items():
            got = out.get(key) if isinstance(out, dict) else None
            if got != want:
                print(f"expectation failed: {key}={json.dumps(got)} (wanted {json.dumps(want)})", file=sys.stderr)
                code = 1
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
