"""Fuzzy temporal intervals, Allen-style relations and gradient-based satisfaction."""

from .autodiff import DiffScalar, Tape
from .geometry import intersection_area, intersection_vertices, oracle_intersection_area
from .interval import (
    DELTA_MIN,
    FuzzyInterval,
    IntervalError,
    after,
    before,
    crisp_interval,
    duration,
    end,
    membership,
    start,
)
from .logic import Event, active, aggregate_forall, approx_eq, negate, t_norm
from .relations import (
    AllenRelations,
    rel_af,
    rel_bf,
    rel_dr,
    rel_eq,
    rel_fin,
    rel_in,
    rel_mt,
    rel_ol,
    rel_st,
)
from .smooth import SmoothConfig, smooth_membership, smooth_rel_in, smooth_relations

__all__ = [
    "active",
    "after",
    "aggregate_forall",
    "AllenRelations",
    "approx_eq",
    "before",
    "crisp_interval",
    "DELTA_MIN",
    "DiffScalar",
    "duration",
    "end",
    "Event",
    "FuzzyInterval",
    "intersection_area",
    "intersection_vertices",
    "IntervalError",
    "membership",
    "negate",
    "oracle_intersection_area",
    "rel_af",
    "rel_bf",
    "rel_dr",
    "rel_eq",
    "rel_fin",
    "rel_in",
    "rel_mt",
    "rel_ol",
    "rel_st",
    "smooth_membership",
    "smooth_rel_in",
    "smooth_relations",
    "SmoothConfig",
    "start",
    "t_norm",
    "Tape",
]

__version__ = "0.1.0"
