"""Brute-force reference implementations.

Everything here trades speed for obviousness: pairwise dominance scans,
direct octant-emptiness tests at sampled angles, and exhaustive event
enumeration.  These are the correctness anchor for the optimized modules and
deliberately share nothing with them beyond the core types.
"""

from __future__ import annotations

import math

import numpy as np

from .core import (
    HALF_PI,
    TWO_PI,
    AngleInterval,
    IntervalSet,
    PointSet,
    SignPattern,
    norm_angle,
)
from .rotate import ActivityTable

DEFAULT_CAP = 300


class OracleCapExceeded(ValueError):
    pass


def _check_cap(n: int, cap: int):
    if n > cap:
        raise OracleCapExceeded(f"n={n} exceeds oracle cap {cap}")


def brute_maxima(pset: PointSet, k: SignPattern) -> frozenset[int]:
    """Maximal ids under pattern k by the O(n²) pairwise scan."""
    signs = np.array([k.sx, k.sy, k.sz], dtype=np.float64)
    r = pset.coords * signs
    # ge[i, j]: point j dominates point i (componentwise >= in reflected coords)
    ge = (r[None, :, :] >= r[:, None, :]).all(axis=2)
    np.fill_diagonal(ge, False)
    return frozenset(int(i) for i in np.nonzero(~ge.any(axis=1))[0])


_SIGNS8 = np.array(
    [[sx, sy, sz] for sz in (+1, -1) for sx, sy in
     ((+1, +1), (-1, +1), (-1, -1), (+1, -1))],
    dtype=np.float64,
)


def brute_member(q, pset: PointSet) -> bool:
    """q ∈ RCH(P): every one of the eight closed octant orders at q is
    witnessed by some dominating point."""
    qv = np.asarray(tuple(q)[:3], dtype=np.float64)
    for s in _SIGNS8:
        if not ((pset.coords * s) >= (qv * s)).all(axis=1).any():
            return False
    return True


def brute_member_many(qs, pset: PointSet) -> np.ndarray:
    """Vectorized brute_member over an (m, 3) array of query points."""
    qs = np.asarray(qs, dtype=np.float64).reshape(-1, 3)
    ok = np.ones(qs.shape[0], dtype=bool)
    for s in _SIGNS8:
        rp = pset.coords * s  # (n, 3)
        rq = qs * s  # (m, 3)
        dominated = (rp[None, :, :] >= rq[:, None, :]).all(axis=2).any(axis=1)
        ok &= dominated
    return ok


def _octant_free_at(dirs: np.ndarray, theta: float) -> bool:
    """Some open quadrant of the θ-rotated frame contains none of ``dirs``."""
    if dirs.size == 0:
        return True
    q = np.floor(np.mod(dirs - theta, TWO_PI) / HALF_PI).astype(np.int64)
    return len(np.unique(q)) < 4


def _half_space_intervals(dirs: np.ndarray) -> IntervalSet:
    """Activity θ-intervals (quarter-turn period) against one half-space's
    projected directions, by testing emptiness at every event midpoint."""
    if dirs.size == 0:
        return IntervalSet.full(HALF_PI)
    events = np.unique(np.mod(dirs, HALF_PI))
    mids = []
    for a, b in zip(events, np.roll(events, -1)):
        b = b if b > a else b + HALF_PI
        mids.append(0.5 * (a + b))
    active = [_octant_free_at(dirs, m) for m in mids]
    if all(active):
        return IntervalSet.full(HALF_PI)
    parts = []
    k = len(events)
    for t in range(k):
        if active[t]:
            lo = float(events[t])
            hi = float(events[(t + 1) % k])
            parts.append(AngleInterval(lo, hi, wraps=hi < lo))
    return IntervalSet(parts, HALF_PI)


def brute_active_intervals(pset: PointSet, cap: int = DEFAULT_CAP) -> ActivityTable:
    """Per-point activity intervals by event enumeration.

    For each point, the critical angles are the projected directions of the
    other points in its half-space (reduced to the quarter-turn period);
    octant emptiness is tested directly at every inter-event midpoint.
    """
    n = len(pset)
    _check_cap(n, cap)
    xs, ys, zs = pset.xs, pset.ys, pset.zs
    up: dict[int, IntervalSet] = {}
    down: dict[int, IntervalSet] = {}
    for i in range(n):
        dx = xs - xs[i]
        dy = ys - ys[i]
        dirs = np.mod(np.arctan2(dy, dx), TWO_PI)
        above = zs > zs[i]
        below = zs < zs[i]
        up[i] = _half_space_intervals(dirs[above])
        down[i] = _half_space_intervals(dirs[below])
    return ActivityTable(up, down)


def hull_signature(mesh) -> tuple:
    """Canonical encoding of a slab mesh (permutation-invariant)."""
    return mesh.signature()


def count_hull_signatures(pset: PointSet, window: AngleInterval,
                          cap: int = DEFAULT_CAP) -> int:
    """Number of combinatorially distinct hulls over a rotation window.

    Event candidates are all angles where some projected pair direction is
    axis-parallel; the hull is computed at every inter-event midpoint and
    distinct signatures counted.
    """
    from .hull import rch3_at_theta  # local import: hull pulls in more machinery

    n = len(pset)
    _check_cap(n, cap)
    lo = window.lo
    span = window.measure()
    xs, ys = pset.xs, pset.ys
    events = {0.0, span}
    for i in range(n):
        dx = xs - xs[i]
        dy = ys - ys[i]
        base = np.mod(np.arctan2(dy, dx), HALF_PI)
        for b in np.unique(base[np.arange(n) != i]):
            # unwrap each critical family into the window's span
            start = math.ceil((0.0 - (b - norm_angle(lo, HALF_PI))) / HALF_PI)
            t = b - norm_angle(lo, HALF_PI) + start * HALF_PI
            while t <= span:
                if t >= 0.0:
                    events.add(float(t))
                t += HALF_PI
    seq = sorted(events)
    sigs = set()
    for a, b in zip(seq, seq[1:]):
        if b - a <= 1e-12:
            continue
        theta = lo + 0.5 * (a + b)
        sigs.add(rch3_at_theta(pset, theta).signature())
    return len(sigs)
