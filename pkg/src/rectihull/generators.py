"""Deterministic instance generators.

Besides the generic random families, two structured constructions matter:

* ``torus-cubes``: perturbed corner points of unit cubes glued into a
  rectangular ring (two pillars joined by a bottom plate routed one way and a
  top plate routed the other), whose rectilinear hull is a solid torus.
* ``cylinder-geodesic``: points on a cylinder geodesic whose projections are
  (nearly) equidistant on a small southwest-facing arc, plus a few anchor
  points behind the cylinder; rotating the frame across the reported window
  keeps every point a hull vertex while the hull's combinatorial structure
  changes once per pair of geodesic points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import (
    HALF_PI,
    AngleInterval,
    GeneralPositionError,
    PointSet,
    norm_angle,
    perturb,
    validate_general_position,
)

FAMILIES = (
    "uniform-box",
    "sphere-surface",
    "grid-perturbed",
    "torus-cubes",
    "cylinder-geodesic",
)


@dataclass(frozen=True)
class GeneratorSpec:
    family: str
    n: int
    seed: int = 0
    params: tuple = ()

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; pick from {FAMILIES}")
        if self.n < 0:
            raise ValueError("n must be non-negative")

    def param(self, name, default):
        return dict(self.params).get(name, default)


def _ensure_general(pset: PointSet, seed: int, magnitude: float) -> PointSet:
    if len(pset) <= 1 or validate_general_position(pset).ok:
        return pset
    return perturb(pset, seed, magnitude)


def _uniform_box(spec: GeneratorSpec) -> PointSet:
    ex = spec.param("extent", (1.0, 1.0, 1.0))
    rng = np.random.default_rng(spec.seed)
    pts = rng.uniform(0.0, 1.0, size=(spec.n, 3)) * np.asarray(ex, dtype=np.float64)
    return _ensure_general(PointSet(pts), spec.seed, 1e-9 * max(ex))


def _sphere_surface(spec: GeneratorSpec) -> PointSet:
    r = spec.param("radius", 1.0)
    rng = np.random.default_rng(spec.seed)
    v = rng.normal(size=(spec.n, 3))
    v /= np.linalg.norm(v, axis=1, keepdims=True)
    return _ensure_general(PointSet(r * v), spec.seed, 1e-9 * r)


def _grid_perturbed(spec: GeneratorSpec) -> PointSet:
    jitter = spec.param("jitter", 0.25)
    side = max(1, math.ceil(spec.n ** (1.0 / 3.0)))
    coords = [
        (float(i), float(j), float(k))
        for i in range(side)
        for j in range(side)
        for k in range(side)
    ][: spec.n]
    pset = PointSet(coords)
    if len(pset) <= 1:
        return pset
    return perturb(pset, spec.seed, jitter)


def _torus_cubes(spec: GeneratorSpec) -> PointSet:
    """Corner points of a cube ring: two square pillars of side 1 joined by a
    bottom plate routed southeast and a top plate routed northwest.  The
    middle cross-sections are the two disjoint pillar squares, so the hull is
    a solid torus (boundary Euler characteristic 0)."""
    cubes = spec.param("cubes", max(8, spec.n // 3 if spec.n else 8))
    eps = spec.param("eps", 1e-3)
    w = max(4, cubes // 4)  # ring width in unit cubes
    h = 2
    d = 3  # total height: plate, gap, plate
    # bottom plate: [0,w+1]x[0,1] ∪ [w,w+1]x[0,h+1] at z∈[0,1]
    # top plate:    [0,1]x[0,h+1] ∪ [0,w+1]x[h,h+1] at z∈[2,3]
    bottom = _l_corners((0.0, 0.0), (w + 1.0, 1.0), (w, 0.0), (w + 1.0, h + 1.0))
    top = _l_corners((0.0, 0.0), (1.0, h + 1.0), (0.0, h), (w + 1.0, h + 1.0))
    pts = []
    for z in (0.0, 1.0):
        pts.extend((x, y, z) for x, y in bottom)
    for z in (2.0, 3.0):
        pts.extend((x, y, z) for x, y in top)
    # pillar corners at the plate interfaces, for cube-grain fidelity
    for x0, y0 in ((0.0, 0.0), (float(w), float(h))):
        for z in (1.0, 2.0):
            for dx in (0.0, 1.0):
                for dy in (0.0, 1.0):
                    pts.append((x0 + dx, y0 + dy, z))
    return perturb(PointSet(pts), spec.seed, eps)


def _l_corners(lo_a, hi_a, lo_b, hi_b):
    """Corner vertices of the union of two overlapping axis-aligned boxes."""
    xs = sorted({lo_a[0], hi_a[0], lo_b[0], hi_b[0]})
    ys = sorted({lo_a[1], hi_a[1], lo_b[1], hi_b[1]})

    def inside(x, y):
        return (lo_a[0] <= x <= hi_a[0] and lo_a[1] <= y <= hi_a[1]) or (
            lo_b[0] <= x <= hi_b[0] and lo_b[1] <= y <= hi_b[1]
        )

    corners = []
    for x in xs:
        for y in ys:
            if not inside(x, y):
                continue
            # a boundary vertex has an odd/corner neighborhood: count the
            # four surrounding quadrant cells
            occ = sum(
                inside(x + sx * 1e-6, y + sy * 1e-6)
                for sx in (-1, 1)
                for sy in (-1, 1)
            )
            if occ in (1, 3):
                corners.append((x, y))
    return corners


def _cylinder_geodesic(spec: GeneratorSpec) -> PointSet:
    n = spec.n
    radius = spec.param("radius", 1.0)
    span = spec.param("span", 0.3)
    pitch = spec.param("pitch", 1.0)
    n_anchor = spec.param("anchors", 8)
    rng = np.random.default_rng(spec.seed)
    phi0 = 1.25 * math.pi - 0.5 * span  # arc faces southwest
    pts = []
    for i in range(n):
        frac = i / max(n - 1, 1)
        # equidistant plus a slight jitter: exact equidistance collapses the
        # pairwise critical angles onto O(n) values
        phi = phi0 + frac * span + rng.uniform(-0.1, 0.1) * span / max(n, 1)
        z = pitch * i + rng.uniform(-0.05, 0.05) * pitch
        pts.append((radius * math.cos(phi), radius * math.sin(phi), z))
    # anchors behind the cylinder: a northeast-facing convex arc, z interleaved
    far = 4.0 * radius
    for j in range(n_anchor):
        a = 0.25 * math.pi + (j / max(n_anchor - 1, 1) - 0.5) * 0.8
        z = pitch * (n - 1) * (j + 0.5) / max(n_anchor, 1) + rng.uniform(0, 0.01)
        pts.append((far * math.cos(a), far * math.sin(a), z))
    return _ensure_general(PointSet(pts), spec.seed, 1e-7 * radius)


def generate(spec: GeneratorSpec) -> PointSet:
    fn = {
        "uniform-box": _uniform_box,
        "sphere-surface": _sphere_surface,
        "grid-perturbed": _grid_perturbed,
        "torus-cubes": _torus_cubes,
        "cylinder-geodesic": _cylinder_geodesic,
    }[spec.family]
    return fn(spec)


def cylinder_window(pset: PointSet, n_geodesic: int, pad: float = 1e-3) -> AngleInterval:
    """The rotation window [α, β] for the quadratic-change experiment: the
    quarter-turn-reduced directions of all geodesic pairs, padded."""
    xs = pset.xs[:n_geodesic]
    ys = pset.ys[:n_geodesic]
    dirs = []
    for i in range(n_geodesic):
        for j in range(i + 1, n_geodesic):
            d = math.atan2(ys[j] - ys[i], xs[j] - xs[i])
            dirs.append(norm_angle(d, HALF_PI))
    if not dirs:
        return AngleInterval(0.0, HALF_PI)
    lo, hi = min(dirs) - pad, max(dirs) + pad
    if hi - lo >= HALF_PI:
        raise ValueError("geodesic window spans the whole quarter turn")
    return AngleInterval(norm_angle(lo), norm_angle(hi))
