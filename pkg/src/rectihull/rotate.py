"""θ-activity of points under rotation of the octant frame about z.

A point is active at θ when one of the eight θ-octants apexed at it is free
of other points.  Splitting octants by the sign of their z half-space, a
point's up-activity depends only on the projected directions of the points
above it, so a single top-to-bottom pass — activating projections into
balanced trees of insertion-only convex hulls and querying tangents first —
yields every point's empty angular gaps; a bottom-to-top pass handles the
down-octants, and the two interval sets merge.

Activity is π/2-periodic in θ (a quarter turn permutes the octants), so
interval sets here live on the quarter-turn period: that is the domain in
which a point has at most three up-intervals, three down, six merged.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _backend
from ._hulltree_py import HullTree
from .core import (
    HALF_PI,
    TWO_PI,
    AngleInterval,
    DEFAULT_TOL,
    GeneralPositionError,
    IntervalSet,
    PointSet,
    interval_union,
    norm_angle,
    validate_general_position,
)

__all__ = [
    "HullTree",
    "Gap",
    "ActivityTable",
    "hulltree_build",
    "hulltree_activate",
    "angular_neighbors",
    "empty_gaps",
    "gaps_to_theta_intervals",
    "active_intervals",
    "active_at",
]

_RAYS = ("+x", "+y", "-x", "-y")


@dataclass(frozen=True)
class Gap:
    """A maximal empty angular sector around one axis ray at a query point.

    ``lo_dir`` is the clockwise boundary direction, ``hi_dir`` the
    counterclockwise one (both in [0, 2π)); ``full`` marks the whole-circle
    gap that arises when no other point is active.
    """

    center_ray: str
    lo_dir: float
    hi_dir: float
    full: bool = False

    @property
    def width(self) -> float:
        if self.full:
            return TWO_PI
        w = math.fmod(self.hi_dir - self.lo_dir, TWO_PI)
        if w < 0:
            w += TWO_PI
        return w


def hulltree_build(points, axis: str = "x") -> HullTree:
    """Balanced tree over the points keyed by the chosen axis, all inactive."""
    return HullTree(points, axis=axis)


def hulltree_activate(t: HullTree, idx: int) -> HullTree:
    """Activate one point: its coordinates join the hulls of the O(log n)
    nodes on its leaf's root path."""
    t.activate(idx)
    return t


def _pick(primary, fallback):
    return primary if primary is not None else fallback


def angular_neighbors(t: HullTree, idx: int, ray: str):
    """First active points hit when ``ray`` (an axis direction at point
    ``idx``) rotates clockwise / counterclockwise.

    The ±y rays need the x-keyed tree (the two key sides are exactly the two
    angular half-planes around a vertical ray); ±x need the y-keyed tree.
    Returns (first_cw, first_ccw) as (x, y) points, None when no active point
    exists anywhere.
    """
    if ray not in _RAYS:
        raise ValueError(f"ray must be one of {_RAYS}")
    if (ray in ("+y", "-y")) != (t.axis == "x"):
        raise ValueError(f"ray {ray} needs the {'x' if ray[1] == 'y' else 'y'}-keyed tree")
    (lo_min, lo_max), (hi_min, hi_max) = t.side_extremes(idx)
    if ray == "+y":
        cw, ccw = _pick(hi_max, lo_max), _pick(lo_min, hi_min)
    elif ray == "-y":
        cw, ccw = _pick(lo_max, hi_max), _pick(hi_min, lo_min)
    elif ray == "+x":
        # the y-tree tangent slope is cot(angle), decreasing in angle
        cw, ccw = _pick(lo_min, hi_min), _pick(hi_max, lo_max)
    else:  # -x
        cw, ccw = _pick(hi_min, lo_min), _pick(lo_max, hi_max)
    if t.axis == "y" and cw is not None:
        cw = (cw[1], cw[0])
        ccw = (ccw[1], ccw[0])
    return cw, ccw


def _assemble_gaps(qx, qy, probes, n_active, eps_angle):
    """Deduplicated empty sectors of width >= π/2 from the four axis probes.

    ``probes`` maps ray name -> (cw point, ccw point) or (None, None).
    """
    gaps: list[Gap] = []
    seen = set()
    for ray, (cw, ccw) in probes.items():
        if cw is None:
            gaps.append(Gap(ray, 0.0, 0.0, full=True))
            continue
        lo = norm_angle(math.atan2(cw[1] - qy, cw[0] - qx))
        hi = norm_angle(math.atan2(ccw[1] - qy, ccw[0] - qx))
        if n_active == 1:
            # a single blocked direction leaves one sector of width 2π
            gaps.append(Gap(ray, lo, lo, full=True))
            continue
        gap = Gap(ray, lo, hi)
        key = (round(lo / eps_angle), round(hi / eps_angle))
        if key in seen:
            continue
        seen.add(key)
        gaps.append(gap)
    if any(g.full for g in gaps):
        return [next(g for g in gaps if g.full)]
    return [g for g in gaps if g.width >= HALF_PI - eps_angle]


def empty_gaps(idx, state) -> list[Gap]:
    """The qualifying empty sectors around point ``idx``.

    ``state`` carries the two trees and the point coordinates:
    {'tx': x-keyed HullTree, 'ty': y-keyed, 'points': [(x, y), ...],
    'n_active': count of activated points}.
    """
    qx, qy = state["points"][idx]
    probes = {
        "+y": angular_neighbors(state["tx"], idx, "+y"),
        "-y": angular_neighbors(state["tx"], idx, "-y"),
        "+x": angular_neighbors(state["ty"], idx, "+x"),
        "-x": angular_neighbors(state["ty"], idx, "-x"),
    }
    eps = state.get("eps_angle", DEFAULT_TOL.eps_angle)
    return _assemble_gaps(qx, qy, probes, state["n_active"], eps)


def gaps_to_theta_intervals(g: Gap) -> IntervalSet:
    """θ ∈ [0, 2π) for which some open quadrant of the θ-frame fits in the
    gap: quadrant j fits when θ ∈ [lo_dir − jπ/2, hi_dir − π/2 − jπ/2]."""
    if g.full or g.width >= TWO_PI:
        return IntervalSet.full()
    w = g.width
    if w < HALF_PI:
        return IntervalSet.empty()
    if w >= math.pi:
        # four shifted intervals of width ≥ π/2 at π/2 spacing tile the circle
        return IntervalSet.full()
    out = []
    for j in range(4):
        lo = norm_angle(g.lo_dir - j * HALF_PI)
        hi = norm_angle(g.lo_dir + (w - HALF_PI) - j * HALF_PI)
        out.append(AngleInterval(lo, hi, wraps=hi < lo))
    return IntervalSet(out)


def _gap_to_period_interval(g: Gap):
    """The same θ-set reduced to the quarter-turn period: one interval of
    measure width − π/2 (None when too narrow, full period when ≥ π)."""
    if g.full:
        return "full"
    w = g.width
    if w < HALF_PI:
        return None
    if w >= math.pi:
        return "full"
    lo = norm_angle(g.lo_dir, HALF_PI)
    m = w - HALF_PI
    hi_raw = lo + m
    if hi_raw < HALF_PI:
        return AngleInterval(lo, hi_raw)
    return AngleInterval(lo, hi_raw - HALF_PI, wraps=True)


def _intervals_from_gaps(gaps, eps_angle) -> IntervalSet:
    parts = []
    for g in gaps:
        iv = _gap_to_period_interval(g)
        if iv == "full":
            return IntervalSet.full(HALF_PI)
        if iv is not None:
            parts.append(iv)
    return IntervalSet(parts, HALF_PI, eps=eps_angle)


class ActivityTable:
    """Per-point activity intervals on the quarter-turn period."""

    __slots__ = ("up", "down", "merged")

    def __init__(self, up: dict, down: dict, merged: dict | None = None,
                 eps: float = DEFAULT_TOL.eps_angle):
        self.up = up
        self.down = down
        if merged is None:
            merged = {
                i: IntervalSet(
                    up[i].intervals + down[i].intervals, HALF_PI, eps=eps
                )
                for i in up
            }
        self.merged = merged

    def __len__(self):
        return len(self.merged)

    def active_at(self, theta: float, eps: float = 0.0) -> frozenset[int]:
        t = norm_angle(theta, HALF_PI)
        return frozenset(
            i for i, ivs in self.merged.items() if ivs.contains(t, eps)
        )

    def to_json(self) -> list[dict]:
        def sig12(v):
            return float(f"{v:.12g}")

        out = []
        for i in sorted(self.merged):
            out.append(
                {
                    "id": int(i),
                    "intervals": [
                        {"lo": sig12(iv.lo), "hi": sig12(iv.hi), "wraps": iv.wraps}
                        for iv in self.merged[i].intervals
                    ],
                }
            )
        return out


def _pass_intervals(pset: PointSet, order, eps_angle) -> dict[int, IntervalSet]:
    """One sweep: for each point in ``order``, gaps against the previously
    processed projections, turned into period-domain activity intervals."""
    xs = pset.xs
    ys = pset.ys
    ext = _backend.angular_extremes(
        np.ascontiguousarray(xs), np.ascontiguousarray(ys), np.ascontiguousarray(order)
    )
    out: dict[int, IntervalSet] = {}
    for row, idx in enumerate(order):
        idx = int(idx)
        qx, qy = float(xs[idx]), float(ys[idx])
        if row == 0 or math.isnan(ext[row, 0]) and math.isnan(ext[row, 4]) \
                and math.isnan(ext[row, 8]) and math.isnan(ext[row, 12]):
            out[idx] = IntervalSet.full(HALF_PI)
            continue
        probes = {}
        for ray, base in (("+y", 0), ("-y", 0), ("+x", 8), ("-x", 8)):
            # groups: [low_min, low_max, high_min, high_max] as (x, y) pairs
            pts = []
            for g in range(4):
                px = ext[row, base + 2 * g]
                pts.append(None if math.isnan(px) else (px, ext[row, base + 2 * g + 1]))
            lo_min, lo_max, hi_min, hi_max = pts
            if ray == "+y":
                cw, ccw = _pick(hi_max, lo_max), _pick(lo_min, hi_min)
            elif ray == "-y":
                cw, ccw = _pick(lo_max, hi_max), _pick(hi_min, lo_min)
            elif ray == "+x":
                # y-tree tangent slope is cot(angle), decreasing in angle
                cw, ccw = _pick(lo_min, hi_min), _pick(hi_max, lo_max)
            else:
                cw, ccw = _pick(hi_min, lo_min), _pick(lo_max, hi_max)
            probes[ray] = (cw, ccw)
        gaps = _assemble_gaps(qx, qy, probes, row, eps_angle)
        out[idx] = _intervals_from_gaps(gaps, eps_angle)
    return out


def active_intervals(pset: PointSet, *, validated: bool = False,
                     eps_angle: float = DEFAULT_TOL.eps_angle) -> ActivityTable:
    """Per-point up/down/merged activity intervals over all rotations."""
    if not validated:
        report = validate_general_position(pset)
        if not report.ok:
            raise GeneralPositionError(f"{len(report.violations)} coordinate collisions")
    order_desc = pset.sorted_by_z
    up = _pass_intervals(pset, order_desc, eps_angle)
    down = _pass_intervals(pset, order_desc[::-1], eps_angle)
    return ActivityTable(up, down)


def active_at(tab: ActivityTable, theta: float) -> frozenset[int]:
    """Ids active at rotation theta (quarter-turn periodic)."""
    return tab.active_at(theta)
