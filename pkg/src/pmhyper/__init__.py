"""Exact hyperconvexity analysis of finite partial metric spaces."""

from .constructions import NormKind, chain, extend, norm_pmetric, tripod_dm_gap
from .core import (
    DerivedKind,
    PMetricSpace,
    SpaceProfile,
    ValidationError,
    Violation,
    closed_ball,
    derive_metric,
    pmetric_violations,
    profile,
    validate_pmetric,
)
from .feasibility import Feasibility, LinearConstraint, feasible, interval_cover
from .hyperconvexity import (
    BallFamily,
    ClassificationRecord,
    Mode,
    Notion,
    ap_witnesses,
    classify,
    decide_ap,
    decide_derived,
    decide_nodal,
    find_between,
    midpoint_property,
    nodal_witnesses,
    totally_convex,
)
from .lipschitz import LipschitzNotion, check_lipschitz, constant_map_report, fixed_points, minimal_L
from .search import Family, GeneratorConfig, MinePredicate, audit, generate, mine

__version__ = "0.1.0"
