"""2D staircases and 3D maximal sets under the eight dominance orders.

All eight sign patterns are reduced to the (+,+,+) sweep by reflecting
coordinates, so there is a single code path exercised eight ways.  The sweep
processes points by strictly decreasing (reflected) z and keeps the staircase
of projections seen so far; a point is maximal iff its projection is not
dominated by that staircase.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass

import numpy as np

from . import _backend
from .core import GeneralPositionError, PointSet, SignPattern, PATTERNS, validate_general_position


@dataclass(frozen=True)
class Staircase2D:
    """Planar maxima staircase: steps sorted by increasing x, decreasing y
    (in pattern-reflected coordinates)."""

    steps: tuple[tuple[float, float], ...]
    pattern: tuple[int, int] = (+1, +1)

    def __post_init__(self):
        object.__setattr__(self, "_xs", tuple(p[0] for p in self.steps))

    def __len__(self):
        return len(self.steps)

    def _reflected(self, q):
        sx, sy = self.pattern
        return (sx * q[0], sy * q[1])

    def dominated(self, q) -> bool:
        """Is the planar point q dominated by some step?  O(log n)."""
        x, y = self._reflected(q)
        pos = bisect_left(self._xs, x)
        return pos < len(self.steps) and self.steps[pos][1] >= y


def _reflect2(points, pattern):
    sx, sy = pattern
    return [(sx * p[0], sy * p[1]) for p in points]


def maxima2d(points, pattern=(+1, +1)) -> Staircase2D:
    """Planar maximal points under ``pattern`` as a staircase.

    Requires planar general position (distinct x's and distinct y's).
    """
    pts = _reflect2(points, pattern)
    xs = sorted(p[0] for p in pts)
    ys = sorted(p[1] for p in pts)
    for vals, axis in ((xs, "x"), (ys, "y")):
        for a, b in zip(vals, vals[1:]):
            if a == b:
                raise GeneralPositionError(f"duplicate {axis} coordinate {a!r}")
    steps: list[tuple[float, float]] = []
    best_y = -np.inf
    for x, y in sorted(pts, reverse=True):
        if y > best_y:
            steps.append((x, y))
            best_y = y
    steps.reverse()
    return Staircase2D(tuple(steps), pattern)


def staircase_insert(s: Staircase2D, q) -> Staircase2D:
    """Insert a planar point: if undominated, q becomes a new elbow and the
    steps it dominates disappear; a dominated q leaves the staircase unchanged.
    """
    x, y = s._reflected(q)
    steps = list(s.steps)
    xs = [p[0] for p in steps]
    pos = bisect_left(xs, x)
    if pos < len(steps) and steps[pos][1] >= y:
        return s
    j = pos
    while j > 0 and steps[j - 1][1] <= y:
        j -= 1
    steps[j:pos] = []
    steps.insert(j, (x, y))
    return Staircase2D(tuple(steps), s.pattern)


@dataclass(frozen=True)
class MaximaResult:
    pattern: SignPattern
    ids: frozenset[int]


def _sweep_order(pset: PointSet, sz: int) -> np.ndarray:
    # descending sz*z == descending z for sz=+1, ascending for sz=-1
    order = pset.sorted_by_z
    return order if sz > 0 else order[::-1]


def maxima3d(pset: PointSet, pattern: SignPattern, *, validated: bool = False) -> MaximaResult:
    """Maximal points of ``pset`` under ``pattern`` via the descending sweep."""
    if not validated:
        report = validate_general_position(pset)
        if not report.ok:
            raise GeneralPositionError(f"{len(report.violations)} coordinate collisions")
    order = _sweep_order(pset, pattern.sz)
    xs = pattern.sx * pset.xs[order]
    ys = pattern.sy * pset.ys[order]
    mask = _backend.maxima_mask(
        np.ascontiguousarray(xs), np.ascontiguousarray(ys)
    )
    ids = frozenset(int(i) for i in order[np.asarray(mask, dtype=bool)])
    return MaximaResult(pattern, ids)


def maxima_masks_all_patterns(pset: PointSet) -> dict[int, np.ndarray]:
    """Per-pattern boolean maximality arrays indexed by point id.

    Shares one z-sort across the eight reflected sweeps.
    """
    out = {}
    order_desc = pset.sorted_by_z
    order_asc = order_desc[::-1]
    for k, pattern in enumerate(PATTERNS, start=1):
        order = order_desc if pattern.sz > 0 else order_asc
        xs = np.ascontiguousarray(pattern.sx * pset.xs[order])
        ys = np.ascontiguousarray(pattern.sy * pset.ys[order])
        mask = np.asarray(_backend.maxima_mask(xs, ys), dtype=bool)
        by_id = np.zeros(len(pset), dtype=bool)
        by_id[order] = mask
        out[k] = by_id
    return out


def rch_vertices(pset: PointSet, *, validated: bool = False) -> frozenset[int]:
    """Ids of the points on the rectilinear hull boundary: exactly those with
    at least one point-free open octant, i.e. maximal under some pattern."""
    if not validated:
        report = validate_general_position(pset)
        if not report.ok:
            raise GeneralPositionError(f"{len(report.violations)} coordinate collisions")
    union = np.zeros(len(pset), dtype=bool)
    for by_id in maxima_masks_all_patterns(pset).values():
        union |= by_id
    return frozenset(int(i) for i in np.nonzero(union)[0])
