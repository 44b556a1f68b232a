"""Balanced tree of insertion-only convex hulls (pure-Python backend).

Leaves are planar points in key order (x or y).  Each internal node keeps the
convex hull of its *active* descendant leaves as two key-sorted chains, so a
query point whose key lies outside the node's key range can read off the two
extreme view directions (tangents) in logarithmic time.
"""

from __future__ import annotations

from bisect import bisect_left, insort

from .core import GeneralPositionError


def _cross(a, b, c):
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


class _Chain:
    """One convex chain (upper or lower) sorted by key, insertion-only."""

    __slots__ = ("pts", "sign")

    def __init__(self, upper: bool):
        self.pts = []
        # upper chains make right turns (cross < 0), lower chains left turns
        self.sign = -1.0 if upper else 1.0

    def insert(self, p):
        pts = self.pts
        lo, hi = 0, len(pts)
        while lo < hi:
            mid = (lo + hi) // 2
            if pts[mid][0] < p[0]:
                lo = mid + 1
            else:
                hi = mid
        pos = lo
        if 0 < pos < len(pts):
            # inside the key range: skip unless strictly outside the chain
            if self.sign * _cross(pts[pos - 1], pts[pos], p) >= 0:
                return
        pts.insert(pos, p)
        while pos >= 2 and self.sign * _cross(pts[pos - 2], pts[pos - 1], pts[pos]) <= 0:
            del pts[pos - 1]
            pos -= 1
        while pos + 2 < len(pts) and \
                self.sign * _cross(pts[pos], pts[pos + 1], pts[pos + 2]) <= 0:
            del pts[pos + 1]

    def extreme_t(self, qk, qv, want_max: bool):
        """Vertex with extreme slope t = (v - qv) / (k - qk).

        Along a convex chain seen from an external key, t is unimodal, so a
        binary search on the discrete gradient finds the extremum.
        """
        pts = self.pts
        n = len(pts)
        if n == 0:
            return None
        if n <= 8:
            key = lambda p: (p[1] - qv) / (p[0] - qk)
            return max(pts, key=key) if want_max else min(pts, key=key)
        lo, hi = 0, n - 1
        while lo < hi:
            mid = (lo + hi) // 2
            a = pts[mid]
            b = pts[mid + 1]
            ta = (a[1] - qv) / (a[0] - qk)
            tb = (b[1] - qv) / (b[0] - qk)
            if (tb > ta) == want_max and tb != ta:
                lo = mid + 1
            else:
                hi = mid
        return pts[lo]


class _Node:
    __slots__ = ("lo", "hi", "upper", "lower", "count")

    def __init__(self, lo, hi):
        self.lo = lo
        self.hi = hi
        self.upper = _Chain(upper=True)
        self.lower = _Chain(upper=False)
        self.count = 0

    def insert(self, p):
        self.upper.insert(p)
        self.lower.insert(p)
        self.count += 1

    def tangent_extremes(self, qk, qv):
        """(min_t point, max_t point) seen from a key strictly outside."""
        if self.count == 0:
            return None, None
        first_key = self.upper.pts[0][0]
        if first_key < qk:
            # node lies on the low-key side of q
            mn = self.upper.extreme_t(qk, qv, want_max=False)
            mx = self.lower.extreme_t(qk, qv, want_max=True)
        else:
            mx = self.upper.extreme_t(qk, qv, want_max=True)
            mn = self.lower.extreme_t(qk, qv, want_max=False)
        return mn, mx


class HullTree:
    """Balanced binary tree over key-sorted planar points.

    ``axis`` selects which coordinate is the key ('x' or 'y'); the other is
    the value.  All leaves start inactive with empty node hulls.
    """

    def __init__(self, points, axis: str = "x"):
        if axis not in ("x", "y"):
            raise ValueError("axis must be 'x' or 'y'")
        self.axis = axis
        ki, vi = (0, 1) if axis == "x" else (1, 0)
        keyed = sorted(((p[ki], p[vi], idx) for idx, p in enumerate(points)))
        for a, b in zip(keyed, keyed[1:]):
            if a[0] == b[0]:
                raise GeneralPositionError(
                    f"duplicate {axis}-key {a[0]!r} in hull tree"
                )
        self.n = len(keyed)
        self.keys = [k for k, _, _ in keyed]
        self.vals = [v for _, v, _ in keyed]
        self.leaf_of = {idx: pos for pos, (_, _, idx) in enumerate(keyed)}
        self.active = [False] * self.n
        self._nodes = {}

    def _node(self, lo, hi):
        node = self._nodes.get((lo, hi))
        if node is None:
            node = self._nodes[(lo, hi)] = _Node(lo, hi)
        return node

    def _path(self, pos):
        """Ranges of nodes from the root down to the leaf at ``pos``."""
        lo, hi = 0, self.n
        while True:
            yield lo, hi
            if hi - lo == 1:
                return
            mid = (lo + hi) // 2
            if pos < mid:
                hi = mid
            else:
                lo = mid

    def activate(self, idx: int):
        pos = self.leaf_of[idx]
        if self.active[pos]:
            raise ValueError(f"point {idx} already active")
        self.active[pos] = True
        p = (self.keys[pos], self.vals[pos])
        for lo, hi in self._path(pos):
            self._node(lo, hi).insert(p)

    def side_extremes(self, idx: int):
        """Tangent extremes of the active points on each side of leaf ``idx``.

        Returns ((low_min_t, low_max_t), (high_min_t, high_max_t)) where each
        entry is a (key, value) point or None.  The off-path child subtrees of
        the leaf's root path partition the remaining leaves, each lying wholly
        on one side of the leaf's key, so combining their per-hull tangents
        covers every active point.
        """
        pos = self.leaf_of[idx]
        qk, qv = self.keys[pos], self.vals[pos]
        best = [[None, None], [None, None]]  # [side][min, max] as (t, point)

        def consider(lo, hi):
            node = self._nodes.get((lo, hi))
            if node is None or node.count == 0:
                return
            side = 0 if hi <= pos else 1
            mn, mx = node.tangent_extremes(qk, qv)
            for slot, p, cmp_max in ((0, mn, False), (1, mx, True)):
                t = (p[1] - qv) / (p[0] - qk)
                cur = best[side][slot]
                if cur is None or (t > cur[0]) == cmp_max and t != cur[0]:
                    best[side][slot] = (t, p)

        lo, hi = 0, self.n
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if pos < mid:
                consider(mid, hi)
                hi = mid
            else:
                consider(lo, mid)
                lo = mid
        low, high = best
        return (
            (low[0] and low[0][1], low[1] and low[1][1]),
            (high[0] and high[0][1], high[1] and high[1][1]),
        )

    # -- introspection used by the structural test-suite --

    def off_path_ranges(self, idx: int):
        """Ranges of the direct-descendant subtrees hanging off the root path."""
        pos = self.leaf_of[idx]
        out = []
        lo, hi = 0, self.n
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if pos < mid:
                out.append((mid, hi))
                hi = mid
            else:
                out.append((lo, mid))
                lo = mid
        return out

    def node_hull_points(self, lo, hi):
        node = self._nodes.get((lo, hi))
        if node is None:
            return []
        seen = []
        for p in node.upper.pts + node.lower.pts:
            if p not in seen:
                seen.append(p)
        return seen

    def node_ranges(self):
        return sorted(self._nodes)

    def storage(self) -> int:
        # distinct stored points per node (chain endpoints sit on both chains)
        return sum(
            len(set(node.upper.pts) | set(node.lower.pts))
            for node in self._nodes.values()
        )

    def depth(self) -> int:
        d, span = 0, 1
        while span < max(self.n, 1):
            span *= 2
            d += 1
        return d


def angular_extremes_py(px, py, order):
    """Pure-Python pass over ``order`` computing, per point and just before
    its activation, the tangent-extreme active points on all four sides.

    Returns an (n, 16) array of coordinates in groups of four points:
    x-tree low side (min_t, max_t), x-tree high side, y-tree low side,
    y-tree high side; NaN where a side has no active points.  Row i refers to
    the i-th element of ``order``.
    """
    import numpy as np

    pts = list(zip(px, py))
    tx = HullTree(pts, axis="x")
    ty = HullTree(pts, axis="y")
    n = len(order)
    out = np.full((n, 16), np.nan)
    for row, idx in enumerate(order):
        idx = int(idx)
        (xl, xh) = tx.side_extremes(idx)
        (yl, yh) = ty.side_extremes(idx)
        col = 0
        for mn, mx in (xl, xh):
            for p in (mn, mx):
                if p is not None:
                    out[row, col] = p[0]
                    out[row, col + 1] = p[1]
                col += 2
        for mn, mx in (yl, yh):
            for p in (mn, mx):
                if p is not None:
                    # y-tree points are (key=y, val=x); store as (x, y)
                    out[row, col] = p[1]
                    out[row, col + 1] = p[0]
                col += 2
        tx.activate(idx)
        ty.activate(idx)
    return out
