"""Foundational geometric types: points, sign patterns, angle intervals.

Everything here is immutable after construction and free of algorithmic
cleverness; the optimized modules (maxima, hull, rotate) and the brute-force
oracles both build on these primitives.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

TWO_PI = 2.0 * math.pi
HALF_PI = 0.5 * math.pi


class RectihullError(Exception):
    """Base class for errors raised by this package."""


class GeneralPositionError(RectihullError):
    """A point set violates the no-shared-coordinate requirement."""


class DegenerateMeshError(RectihullError):
    """A mesh operation needs a non-degenerate (volumetric) hull."""


@dataclass(frozen=True)
class Tolerance:
    """Comparison tolerances. Coordinates compare exactly by default;
    angles are arctangents of coordinate differences and get a small slack."""

    eps_angle: float = 1e-9
    eps_coord: float = 0.0

    def __post_init__(self):
        if self.eps_angle <= 0:
            raise ValueError("eps_angle must be positive")


DEFAULT_TOL = Tolerance()


@dataclass(frozen=True)
class Point3:
    x: float
    y: float
    z: float
    id: int = -1

    def __iter__(self):
        return iter((self.x, self.y, self.z))


@dataclass(frozen=True)
class SignPattern:
    """One of the eight octant orientations (sx, sy, sz), each +1 or -1."""

    sx: int
    sy: int
    sz: int

    def __post_init__(self):
        if self.sx not in (1, -1) or self.sy not in (1, -1) or self.sz not in (1, -1):
            raise ValueError("signs must be +1 or -1")

    @property
    def index(self) -> int:
        return _PATTERN_INDEX[(self.sx, self.sy, self.sz)]

    @classmethod
    def from_index(cls, k: int) -> "SignPattern":
        if not 1 <= k <= 8:
            raise ValueError("pattern index must be in 1..8")
        return PATTERNS[k - 1]

    def planar(self) -> tuple[int, int]:
        return (self.sx, self.sy)


# Octant numbering: 1..4 counter-clockwise in the upper half-space starting
# from (+,+,+); 5..8 are the z-negated counterparts in the same order.
PATTERNS: tuple[SignPattern, ...] = (
    SignPattern(+1, +1, +1),
    SignPattern(-1, +1, +1),
    SignPattern(-1, -1, +1),
    SignPattern(+1, -1, +1),
    SignPattern(+1, +1, -1),
    SignPattern(-1, +1, -1),
    SignPattern(-1, -1, -1),
    SignPattern(+1, -1, -1),
)
_PATTERN_INDEX = {(p.sx, p.sy, p.sz): i + 1 for i, p in enumerate(PATTERNS)}

PLANAR_PATTERNS: tuple[tuple[int, int], ...] = ((+1, +1), (-1, +1), (-1, -1), (+1, -1))


def dominates(p: Point3 | tuple, q: Point3 | tuple, k: SignPattern) -> bool:
    """True iff q precedes p in the closed partial order of pattern k.

    For each coordinate c with sign s, the requirement is s*c_q <= s*c_p.
    """
    if isinstance(p, Point3):
        px, py, pz = p.x, p.y, p.z
    else:
        px, py, pz = p
    if isinstance(q, Point3):
        qx, qy, qz = q.x, q.y, q.z
    else:
        qx, qy, qz = q
    return (
        k.sx * qx <= k.sx * px
        and k.sy * qy <= k.sy * py
        and k.sz * qz <= k.sz * pz
    )


@dataclass(frozen=True)
class Violation:
    axis: str
    id_a: int
    id_b: int
    value: float


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple[Violation, ...] = ()


class PointSet:
    """An ordered set of 3D points with stable integer ids.

    General position (no two points sharing an x, y or z coordinate) is not
    enforced by the constructor; call :func:`validate_general_position` or
    :func:`perturb` to establish it.
    """

    __slots__ = ("_coords", "_sorted_by_z")

    def __init__(self, coords):
        arr = np.asarray(coords, dtype=np.float64)
        if arr.size == 0:
            arr = arr.reshape(0, 3)
        if arr.ndim != 2 or arr.shape[1] != 3:
            raise ValueError("expected an (n, 3) array of coordinates")
        if not np.all(np.isfinite(arr)):
            raise ValueError("coordinates must be finite")
        arr = arr.copy()
        arr.flags.writeable = False
        self._coords = arr
        self._sorted_by_z = None

    @classmethod
    def from_points(cls, points: Iterable[Point3 | Sequence[float]]) -> "PointSet":
        return cls([tuple(p)[:3] for p in points])

    def __len__(self) -> int:
        return self._coords.shape[0]

    def __iter__(self):
        for i in range(len(self)):
            yield self.point(i)

    def __eq__(self, other):
        return isinstance(other, PointSet) and np.array_equal(
            self._coords, other._coords
        )

    def point(self, i: int) -> Point3:
        x, y, z = self._coords[i]
        return Point3(float(x), float(y), float(z), id=i)

    @property
    def coords(self) -> np.ndarray:
        """Read-only (n, 3) float64 view of the coordinates."""
        return self._coords

    @property
    def xs(self) -> np.ndarray:
        return self._coords[:, 0]

    @property
    def ys(self) -> np.ndarray:
        return self._coords[:, 1]

    @property
    def zs(self) -> np.ndarray:
        return self._coords[:, 2]

    @property
    def sorted_by_z(self) -> np.ndarray:
        """Point ids ordered by strictly decreasing z (top to bottom)."""
        if self._sorted_by_z is None:
            order = np.argsort(-self._coords[:, 2], kind="stable")
            self._sorted_by_z = order
        return self._sorted_by_z

    def subset(self, ids: Iterable[int]) -> "PointSet":
        """New PointSet from the given ids; ids are re-assigned by position."""
        idx = np.fromiter(ids, dtype=np.int64)
        return PointSet(self._coords[idx])


def validate_general_position(pset: PointSet) -> ValidationReport:
    """Check that no two points share any single coordinate value."""
    violations = []
    for axis, name in ((0, "x"), (1, "y"), (2, "z")):
        col = pset.coords[:, axis]
        order = np.argsort(col, kind="stable")
        svals = col[order]
        dup = np.nonzero(svals[1:] == svals[:-1])[0]
        for j in dup:
            a, b = int(order[j]), int(order[j + 1])
            violations.append(Violation(name, min(a, b), max(a, b), float(svals[j])))
    return ValidationReport(ok=not violations, violations=tuple(violations))


def perturb(pset: PointSet, seed: int, magnitude: float, retries: int = 32) -> PointSet:
    """Deterministic jitter of each coordinate by at most ``magnitude``.

    Retries with fresh sub-seeds until the result is in general position;
    raises :class:`GeneralPositionError` when the retry budget is exhausted
    (the magnitude is then too small for the data's coordinate spacing).
    """
    if magnitude <= 0:
        raise ValueError("magnitude must be positive")
    for attempt in range(retries):
        rng = np.random.default_rng([seed, attempt])
        jitter = rng.uniform(-magnitude, magnitude, size=pset.coords.shape)
        candidate = PointSet(pset.coords + jitter)
        if validate_general_position(candidate).ok:
            return candidate
    raise GeneralPositionError(
        f"could not reach general position in {retries} attempts "
        f"(magnitude {magnitude} too small for the data)"
    )


def rotate_z(pset: PointSet, theta: float) -> PointSet:
    """Rotate every point by theta about the z-axis; z and ids unchanged."""
    c, s = math.cos(theta), math.sin(theta)
    out = pset.coords.copy()
    x = pset.coords[:, 0]
    y = pset.coords[:, 1]
    out[:, 0] = c * x - s * y
    out[:, 1] = s * x + c * y
    return PointSet(out)


# ---------------------------------------------------------------------------
# Angle intervals
# ---------------------------------------------------------------------------


def norm_angle(theta: float, period: float = TWO_PI) -> float:
    """Normalize an angle into [0, period)."""
    t = math.fmod(theta, period)
    if t < 0:
        t += period
    if t >= period:  # fmod rounding at the boundary
        t = 0.0
    return t


@dataclass(frozen=True)
class AngleInterval:
    """A closed angular interval.  ``wraps`` means it crosses 0.

    A degenerate interval (lo == hi, wraps False) denotes a single angle.
    The special pair (0, period) denotes the full circle.
    """

    lo: float
    hi: float
    wraps: bool = False

    def measure(self, period: float = TWO_PI) -> float:
        if self.wraps:
            return period - self.lo + self.hi
        return self.hi - self.lo

    def contains(self, theta: float, eps: float = 0.0, period: float = TWO_PI) -> bool:
        t = norm_angle(theta, period)
        if not self.wraps and self.lo == 0.0 and self.hi == period:
            return True
        if self.wraps:
            return t >= self.lo - eps or t <= self.hi + eps
        return self.lo - eps <= t <= self.hi + eps


def _full(period: float) -> AngleInterval:
    return AngleInterval(0.0, period, False)


class IntervalSet:
    """A normalized set of pairwise disjoint closed angle intervals.

    Intervals are sorted by lo; at most one interval wraps across 0 and it
    sorts by its lo like the rest.  ``period`` defaults to the full circle;
    rotation-activity tables use the quarter-turn period.
    """

    __slots__ = ("intervals", "period")

    def __init__(self, intervals: Iterable[AngleInterval] = (), period: float = TWO_PI,
                 _normalized: bool = False, eps: float = 0.0):
        self.period = period
        if _normalized:
            self.intervals = tuple(intervals)
        else:
            self.intervals = _normalize(list(intervals), period, eps)

    @classmethod
    def empty(cls, period: float = TWO_PI) -> "IntervalSet":
        return cls((), period, _normalized=True)

    @classmethod
    def full(cls, period: float = TWO_PI) -> "IntervalSet":
        return cls((_full(period),), period, _normalized=True)

    @property
    def is_empty(self) -> bool:
        return not self.intervals

    @property
    def is_full(self) -> bool:
        return len(self.intervals) == 1 and self.intervals[0] == _full(self.period)

    def measure(self) -> float:
        return sum(iv.measure(self.period) for iv in self.intervals)

    def contains(self, theta: float, eps: float = 0.0) -> bool:
        return any(iv.contains(theta, eps, self.period) for iv in self.intervals)

    def __len__(self) -> int:
        return len(self.intervals)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, IntervalSet)
            and self.period == other.period
            and self.intervals == other.intervals
        )

    def __repr__(self):
        parts = ", ".join(
            f"[{iv.lo:.6g}, {iv.hi:.6g}{'~' if iv.wraps else ''}]"
            for iv in self.intervals
        )
        return f"IntervalSet({parts})"

    def to_json(self) -> list[dict]:
        return [
            {"lo": iv.lo, "hi": iv.hi, "wraps": iv.wraps} for iv in self.intervals
        ]


def _segments(intervals: Sequence[AngleInterval], period: float):
    """Break intervals into non-wrapping segments in [0, period]."""
    segs = []
    for iv in intervals:
        if not iv.wraps and iv.lo == 0.0 and iv.hi == period:
            return [(0.0, period)]
        lo = norm_angle(iv.lo, period)
        hi = norm_angle(iv.hi, period)
        if iv.wraps:
            if lo <= hi:
                # wrap flag on a lo <= hi pair means the complement arc
                segs.append((lo, period))
                segs.append((0.0, hi))
            else:
                segs.append((lo, period))
                segs.append((0.0, hi))
        else:
            if lo <= hi:
                segs.append((lo, hi))
            else:
                segs.append((lo, period))
                segs.append((0.0, hi))
    return segs


def _normalize(intervals: Sequence[AngleInterval], period: float,
               eps: float = 0.0) -> tuple[AngleInterval, ...]:
    segs = _segments(intervals, period)
    if not segs:
        return ()
    segs.sort()
    merged = [list(segs[0])]
    for lo, hi in segs[1:]:
        if lo <= merged[-1][1] + eps:
            merged[-1][1] = max(merged[-1][1], hi)
        else:
            merged.append([lo, hi])
    if len(merged) == 1 and merged[0][0] <= eps and merged[0][1] >= period - eps:
        return (_full(period),)
    # re-join across 0 into a wrapping interval
    if len(merged) >= 2 and merged[0][0] <= eps and merged[-1][1] >= period - eps:
        first = merged.pop(0)
        last = merged.pop()
        if not merged and last[0] <= first[1] + eps:
            return (_full(period),)
        merged.append([last[0], first[1]])
        out = [AngleInterval(lo, hi) for lo, hi in merged[:-1]]
        out.append(AngleInterval(merged[-1][0], merged[-1][1], wraps=True))
        out.sort(key=lambda iv: iv.lo)
        return tuple(out)
    return tuple(AngleInterval(lo, hi) for lo, hi in merged)


def interval_union(a: IntervalSet, b: IntervalSet) -> IntervalSet:
    if a.period != b.period:
        raise ValueError("period mismatch")
    return IntervalSet(a.intervals + b.intervals, a.period)


def interval_intersect(a: IntervalSet, b: IntervalSet) -> IntervalSet:
    if a.period != b.period:
        raise ValueError("period mismatch")
    period = a.period
    sa = _segments(a.intervals, period)
    sb = _segments(b.intervals, period)
    out = []
    for lo1, hi1 in sa:
        for lo2, hi2 in sb:
            lo, hi = max(lo1, lo2), min(hi1, hi2)
            if lo <= hi:
                out.append(AngleInterval(lo, hi))
    return IntervalSet(out, period)


# ---------------------------------------------------------------------------
# Point file formats
# ---------------------------------------------------------------------------


def parse_points(text: str) -> PointSet:
    """Parse the plain text point format: one ``x y z`` line per point,
    ``#`` comment lines ignored.  Ids are assigned by line order."""
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        parts = stripped.split()
        if len(parts) != 3:
            raise ValueError(f"line {lineno}: expected 'x y z', got {line!r}")
        try:
            rows.append([float(v) for v in parts])
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    return PointSet(rows)


def format_points(pset: PointSet) -> str:
    """Serialize with 17 significant digits so parsing round-trips bitwise."""
    lines = [f"{x:.17g} {y:.17g} {z:.17g}" for x, y, z in pset.coords]
    return "\n".join(lines) + ("\n" if lines else "")


def parse_points_json(text: str) -> PointSet:
    data = json.loads(text)
    return PointSet([[row["x"], row["y"], row["z"]] for row in data])


def format_points_json(pset: PointSet) -> str:
    return json.dumps(
        [{"x": x, "y": y, "z": z} for x, y, z in pset.coords.tolist()]
    )


def load_points(path: str) -> PointSet:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    stripped = text.lstrip()
    if stripped.startswith("["):
        return parse_points_json(text)
    return parse_points(text)


def save_points(pset: PointSet, path: str, fmt: str = "text") -> None:
    with open(path, "w", encoding="utf-8") as fh:
        if fmt == "json":
            fh.write(format_points_json(pset))
        else:
            fh.write(format_points(pset))
