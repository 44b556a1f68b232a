"""Rectilinear convex hulls of 3D point sets.

Maxima under the eight dominance orders, planar and 3D rectilinear hulls,
convex layers, and per-point activity intervals under rotation of the octant
frame, with brute-force oracles for all of it.
"""

from ._backend import BACKEND_NAME, backends
from .core import (
    AngleInterval,
    DegenerateMeshError,
    GeneralPositionError,
    IntervalSet,
    PATTERNS,
    Point3,
    PointSet,
    RectihullError,
    SignPattern,
    Tolerance,
    dominates,
    interval_intersect,
    interval_union,
    load_points,
    parse_points,
    perturb,
    rotate_z,
    save_points,
    validate_general_position,
)
from .generators import GeneratorSpec, generate
from .hull import (
    RegionSet,
    SlabMesh,
    StaircaseRegion,
    components,
    euler_characteristic,
    export_off,
    intersect_regions,
    layers,
    rch2,
    rch3,
    rch3_at_theta,
    rch3_events,
    slice_at,
)
from .maxima import Staircase2D, maxima2d, maxima3d, rch_vertices, staircase_insert
from .oracle import (
    brute_active_intervals,
    brute_maxima,
    brute_member,
    count_hull_signatures,
    hull_signature,
)
from .rotate import (
    ActivityTable,
    Gap,
    HullTree,
    active_at,
    active_intervals,
    angular_neighbors,
    empty_gaps,
    gaps_to_theta_intervals,
    hulltree_activate,
    hulltree_build,
)

__version__ = "0.1.0"
