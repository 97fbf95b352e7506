"""Operational Euclidean geometry with exact arithmetic.

Points are marked in a reference frame, lengths come from a compass,
vectors are classes of transported pairs, angles are arc length over radius.
The submodules mirror the instruments: ``compass``, ``straightedge``,
``vectors``, ``angles``, ``topology``; ``verify`` runs randomized axiom checks.
"""
from .compass import DistanceValue, distance, sphere
from .model import Frame, PointId, mark_point
from .scalar import PI, Ordering, Scalar, Tri, compare, sqrt
from .vectors import VectorClass, norm, vec_add, vec_scale, vector_between
from .verify import SuiteConfig, run_suite

__version__ = "0.1.0"

__all__ = [
    "Frame",
    "PointId",
    "mark_point",
    "Scalar",
    "PI",
    "sqrt",
    "compare",
    "Ordering",
    "Tri",
    "DistanceValue",
    "distance",
    "sphere",
    "VectorClass",
    "vector_between",
    "vec_add",
    "vec_scale",
    "norm",
    "SuiteConfig",
    "run_suite",
]
