"""Rectilinear convex hulls: planar hulls, cross-sections, the 3D slab mesh,
topology diagnostics and convex layers.

A planar region here is always an intersection of "staircase half-planes":
each dominance pattern contributes a step function bounding the region from
above or below.  Keeping the regions in that form makes cross-section
intersection a merge of step functions, keeps every boundary value tied to a
source point id (which gives exact combinatorial signatures), and makes
membership tests exact closed-dominance queries.
"""

from __future__ import annotations

import math
from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .core import (
    PATTERNS,
    DegenerateMeshError,
    GeneralPositionError,
    PointSet,
    perturb,
    rotate_z,
    validate_general_position,
)
from .maxima import maxima_masks_all_patterns, rch_vertices


# ---------------------------------------------------------------------------
# Step functions and regions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StepFn:
    """A staircase bound on a region, derived from one planar maxima set.

    ``side='suffix'`` means the value at x comes from the first step with
    step-x >= x (undefined beyond the last step); ``'prefix'`` reads the last
    step with step-x <= x (undefined before the first).  ``role`` says whether
    the function bounds the region from above or below.
    """

    xs: tuple[float, ...]
    ys: tuple[float, ...]
    ids: tuple[int, ...]
    side: str
    role: str

    def point_value(self, x: float):
        """Value of the closed bound exactly at x, or None when undefined."""
        if self.side == "suffix":
            i = bisect_left(self.xs, x)
            if i == len(self.xs):
                return None
        else:
            i = bisect_right(self.xs, x) - 1
            if i < 0:
                return None
        return (self.ys[i], self.ids[i])

    def cell_value(self, a: float):
        """Constant value on an open cell whose left endpoint is a."""
        if self.side == "suffix":
            i = bisect_right(self.xs, a)
            if i == len(self.xs):
                return None
        else:
            i = bisect_right(self.xs, a) - 1
            if i < 0:
                return None
        return (self.ys[i], self.ids[i])


def staircase_stepfns(xs, ys, ids, tagless: bool = True) -> list[StepFn]:
    """The four bounding step functions of a planar point collection.

    For each planar pattern, the maximal points form a staircase; patterns
    with sy=+1 bound the dominated region from above, sy=-1 from below.
    """
    order = np.argsort(xs, kind="stable")
    sx_sorted = np.asarray(xs)[order]
    sy_sorted = np.asarray(ys)[order]
    sid_sorted = np.asarray(ids)[order]
    fns = []
    for px, py in ((+1, +1), (-1, +1), (-1, -1), (+1, -1)):
        # scan in decreasing reflected-x, keep improving reflected-y
        seq = range(len(order) - 1, -1, -1) if px > 0 else range(len(order))
        best = -math.inf
        keep = []
        for i in seq:
            ry = py * sy_sorted[i]
            if ry > best:
                best = ry
                keep.append(i)
        keep.sort()
        fn = StepFn(
            xs=tuple(float(sx_sorted[i]) for i in keep),
            ys=tuple(float(sy_sorted[i]) for i in keep),
            ids=tuple(int(sid_sorted[i]) for i in keep),
            side="suffix" if px > 0 else "prefix",
            role="upper" if py > 0 else "lower",
        )
        fns.append(fn)
    return fns


@dataclass(frozen=True)
class RegionElement:
    """One vertical strip of a region: a zero-width column at a breakpoint or
    an open cell between breakpoints, with its constant bounds and sources."""

    x_lo: float
    x_hi: float
    y_lo: float
    y_hi: float
    lo_id: int
    hi_id: int

    @property
    def is_column(self) -> bool:
        return self.x_lo == self.x_hi


@dataclass(frozen=True)
class StaircaseRegion:
    """A connected, rectilinearly convex piece of a RegionSet."""

    elements: tuple[RegionElement, ...]

    @property
    def kind(self) -> str:
        width = self.elements[-1].x_hi - self.elements[0].x_lo
        height = max(e.y_hi - e.y_lo for e in self.elements)
        if width == 0.0 and height == 0.0:
            return "point"
        if width == 0.0 or all(e.y_hi == e.y_lo for e in self.elements):
            return "segment"
        return "area"

    @property
    def bbox(self) -> tuple[float, float, float, float]:
        return (
            self.elements[0].x_lo,
            min(e.y_lo for e in self.elements),
            self.elements[-1].x_hi,
            max(e.y_hi for e in self.elements),
        )

    def boundary(self) -> list[tuple[float, float]]:
        """Counterclockwise vertex cycle with axis-parallel edges (degenerate
        regions yield their point or segment endpoints)."""
        top: list[tuple[float, float]] = []
        bot: list[tuple[float, float]] = []
        for e in self.elements:
            top.append((e.x_lo, e.y_hi))
            top.append((e.x_hi, e.y_hi))
            bot.append((e.x_lo, e.y_lo))
            bot.append((e.x_hi, e.y_lo))
        cycle = top + bot[::-1]
        out: list[tuple[float, float]] = []
        for v in cycle:
            if out and v == out[-1]:
                continue
            out.append(v)
        # drop collinear interior vertices
        cleaned: list[tuple[float, float]] = []
        for v in out:
            while len(cleaned) >= 2:
                a, b = cleaned[-2], cleaned[-1]
                if (a[0] == b[0] == v[0]) or (a[1] == b[1] == v[1]):
                    cleaned.pop()
                else:
                    break
            cleaned.append(v)
        if len(cleaned) > 1 and cleaned[0] == cleaned[-1]:
            cleaned.pop()
        return cleaned

    def signature(self, rank) -> tuple:
        return tuple(
            ("c" if e.is_column else "s", rank[e.hi_id], rank[e.lo_id])
            for e in self.elements
        )


class RegionSet:
    """Pairwise-disjoint rectilinearly convex regions, kept together with the
    step functions that define them (so intersection and membership stay
    exact)."""

    __slots__ = ("regions", "_uppers", "_lowers")

    def __init__(self, regions, uppers, lowers):
        self.regions = tuple(regions)
        self._uppers = tuple(uppers)
        self._lowers = tuple(lowers)

    @classmethod
    def empty(cls) -> "RegionSet":
        return cls((), (), ())

    @classmethod
    def from_stepfns(cls, uppers: Sequence[StepFn], lowers: Sequence[StepFn]) -> "RegionSet":
        if not uppers or not lowers:
            return cls.empty()
        dom_lo = -math.inf
        dom_hi = math.inf
        for fn in list(uppers) + list(lowers):
            if fn.side == "suffix":
                dom_hi = min(dom_hi, fn.xs[-1])
            else:
                dom_lo = max(dom_lo, fn.xs[0])
        if not (math.isfinite(dom_lo) and math.isfinite(dom_hi)) or dom_lo > dom_hi:
            return cls.empty()
        breaks = sorted(
            {x for fn in list(uppers) + list(lowers) for x in fn.xs
             if dom_lo <= x <= dom_hi} | {dom_lo, dom_hi}
        )

        def bound(fns, x, cell, take_min):
            best = None
            for fn in fns:
                v = fn.cell_value(x) if cell else fn.point_value(x)
                if v is None:
                    return None
                if best is None or (v[0] != best[0] and (v[0] < best[0]) == take_min):
                    best = v
            return best

        elements: list[Optional[RegionElement]] = []
        for t, x in enumerate(breaks):
            u = bound(uppers, x, False, True)
            l = bound(lowers, x, False, False)
            if u is not None and l is not None and l[0] <= u[0]:
                elements.append(RegionElement(x, x, l[0], u[0], l[1], u[1]))
            else:
                elements.append(None)
            if t + 1 < len(breaks):
                u = bound(uppers, x, True, True)
                l = bound(lowers, x, True, False)
                if u is not None and l is not None and l[0] <= u[0]:
                    elements.append(
                        RegionElement(x, breaks[t + 1], l[0], u[0], l[1], u[1])
                    )
                else:
                    elements.append(None)

        regions: list[StaircaseRegion] = []
        current: list[RegionElement] = []
        for e in elements:
            if e is None:
                if current:
                    regions.append(StaircaseRegion(tuple(current)))
                    current = []
                continue
            if current and not (
                e.y_lo <= current[-1].y_hi and current[-1].y_lo <= e.y_hi
            ):
                regions.append(StaircaseRegion(tuple(current)))
                current = []
            current.append(e)
        if current:
            regions.append(StaircaseRegion(tuple(current)))
        return cls(regions, uppers, lowers)

    @property
    def is_empty(self) -> bool:
        return not self.regions

    def __len__(self) -> int:
        return len(self.regions)

    def __iter__(self):
        return iter(self.regions)

    def contains(self, x: float, y: float) -> bool:
        """Exact closed membership: dominated under every planar pattern."""
        if not self._uppers:
            return False
        for fn in self._uppers:
            v = fn.point_value(x)
            if v is None or v[0] < y:
                return False
        for fn in self._lowers:
            v = fn.point_value(x)
            if v is None or v[0] > y:
                return False
        return True

    def signature(self, rank) -> tuple:
        return tuple(r.signature(rank) for r in self.regions)

    def same_geometry(self, other: "RegionSet") -> bool:
        return [r.elements for r in self.regions] == [
            r.elements for r in other.regions
        ]

    def to_json(self) -> list:
        return [
            {"kind": r.kind, "cycle": [list(v) for v in r.boundary()]}
            for r in self.regions
        ]


def intersect_regions(a: RegionSet, b: RegionSet) -> RegionSet:
    """Set-intersection of two region sets (merge of their staircase bounds)."""
    if a.is_empty or b.is_empty:
        return RegionSet.empty()
    return RegionSet.from_stepfns(a._uppers + b._uppers, a._lowers + b._lowers)


def _check_planar(xs, ys):
    for vals, axis in ((np.sort(xs), "x"), (np.sort(ys), "y")):
        if len(vals) > 1 and np.any(vals[1:] == vals[:-1]):
            raise GeneralPositionError(f"duplicate projected {axis} coordinate")


def rch2(points, ids=None) -> RegionSet:
    """Planar rectilinear convex hull: all points not contained in any
    point-free open axis-parallel quadrant."""
    pts = np.asarray(points, dtype=np.float64).reshape(-1, 2)
    if pts.shape[0] == 0:
        return RegionSet.empty()
    if ids is None:
        ids = np.arange(pts.shape[0])
    _check_planar(pts[:, 0], pts[:, 1])
    fns = staircase_stepfns(pts[:, 0], pts[:, 1], ids)
    uppers = [f for f in fns if f.role == "upper"]
    lowers = [f for f in fns if f.role == "lower"]
    return RegionSet.from_stepfns(uppers, lowers)


# ---------------------------------------------------------------------------
# Cross-sections and the slab mesh
# ---------------------------------------------------------------------------


def _side_fns(pset: PointSet, idx: np.ndarray) -> Optional[list[StepFn]]:
    if idx.size == 0:
        return None
    return staircase_stepfns(pset.xs[idx], pset.ys[idx], idx)


def _slice_fns(pset: PointSet, above_idx, below_idx) -> RegionSet:
    fa = _side_fns(pset, above_idx)
    fb = _side_fns(pset, below_idx)
    if fa is None or fb is None:
        return RegionSet.empty()
    fns = fa + fb
    return RegionSet.from_stepfns(
        [f for f in fns if f.role == "upper"],
        [f for f in fns if f.role == "lower"],
    )


def slice_at(pset: PointSet, c: float) -> RegionSet:
    """Cross-section of the hull at height c: the planar hull of the points
    above intersected with the planar hull of the points below.  A height
    exactly at a point's z resolves as the limit from above."""
    zs = pset.zs
    above = np.nonzero(zs > c)[0]
    below = np.nonzero(zs <= c)[0]
    return _slice_fns(pset, above, below)


class SlabMesh:
    """The hull boundary as a z-ordered stack of constant cross-sections.

    ``events`` are the hull-vertex heights in decreasing order; ``slabs[t]``
    is the cross-section on the open interval (events[t+1], events[t]).
    """

    def __init__(self, pset: PointSet, vertex_ids, events, slabs, theta: float = 0.0,
                 pattern_streams=None):
        self.pset = pset
        self.vertex_ids = tuple(vertex_ids)
        self.events = tuple(events)
        self.slabs = tuple(slabs)
        self.theta = theta
        self.pattern_streams = pattern_streams or {}
        self._voxels = None

    def signature(self) -> tuple:
        """Canonical combinatorial encoding; ids are mapped through their
        z-rank so the signature survives input permutation.

        Besides the event order and the slab regions, the eight per-pattern
        staircase membership streams are included: a hull whose volumetric
        part is unchanged can still reorganize which staircases its vertices
        lie on, and that is a combinatorial change of the boundary.
        """
        rank = {int(pid): r for r, pid in enumerate(self.pset.sorted_by_z)}
        return (
            tuple(rank[v] for v in self.vertex_ids),
            tuple(s.signature(rank) for s in self.slabs),
            tuple(
                tuple(rank[i] for i in self.pattern_streams.get(k, ()))
                for k in sorted(self.pattern_streams)
            ),
        )

    # -- exact voxelization on the grid of vertex coordinates --

    def _voxelize(self):
        if self._voxels is not None:
            return self._voxels
        xs_set, ys_set = set(), set()
        for slab in self.slabs:
            for r in slab.regions:
                for e in r.elements:
                    xs_set.update((e.x_lo, e.x_hi))
                    ys_set.update((e.y_lo, e.y_hi))
        xs = sorted(xs_set)
        ys = sorted(ys_set)
        zs = sorted(self.events)
        nz, nx, ny = max(len(zs) - 1, 0), max(len(xs) - 1, 0), max(len(ys) - 1, 0)
        occ = np.zeros((nz, nx, ny), dtype=bool)
        for t, slab in enumerate(self.slabs):
            kz = nz - 1 - t  # slabs are ordered top-down, grid bottom-up
            for r in slab.regions:
                for e in r.elements:
                    if e.is_column or e.y_hi == e.y_lo:
                        continue
                    i0 = bisect_left(xs, e.x_lo)
                    i1 = bisect_left(xs, e.x_hi)
                    j0 = bisect_left(ys, e.y_lo)
                    j1 = bisect_left(ys, e.y_hi)
                    occ[kz, i0:i1, j0:j1] = True
        self._voxels = (xs, ys, zs, occ)
        return self._voxels

    def boundary_faces(self):
        """Boundary quads of the voxel solid as corner-index tuples."""
        xs, ys, zs, occ = self._voxelize()
        if not occ.any():
            raise DegenerateMeshError("hull has no interior")
        nz, nx, ny = occ.shape
        faces = []
        pad = np.zeros((nz + 2, nx + 2, ny + 2), dtype=bool)
        pad[1:-1, 1:-1, 1:-1] = occ
        for k in range(nz + 1):
            for i in range(nx):
                for j in range(ny):
                    if pad[k, i + 1, j + 1] != pad[k + 1, i + 1, j + 1]:
                        faces.append((
                            (i, j, k), (i + 1, j, k), (i + 1, j + 1, k), (i, j + 1, k)
                        ))
        for i in range(nx + 1):
            for k in range(nz):
                for j in range(ny):
                    if pad[k + 1, i, j + 1] != pad[k + 1, i + 1, j + 1]:
                        faces.append((
                            (i, j, k), (i, j + 1, k), (i, j + 1, k + 1), (i, j, k + 1)
                        ))
        for j in range(ny + 1):
            for k in range(nz):
                for i in range(nx):
                    if pad[k + 1, i + 1, j] != pad[k + 1, i + 1, j + 1]:
                        faces.append((
                            (i, j, k), (i + 1, j, k), (i + 1, j, k + 1), (i, j, k + 1)
                        ))
        return faces

    def degenerate_vertices(self) -> list[int]:
        """Hull vertices touching no volumetric cell."""
        xs, ys, zs, occ = self._voxelize()
        out = []
        for vid in self.vertex_ids:
            if not self._vertex_touches_solid(vid):
                out.append(vid)
        return out

    def _vertex_touches_solid(self, vid: int) -> bool:
        x, y, z = self.pset.coords[vid]
        for t, slab in enumerate(self.slabs):
            z_top, z_bot = self.events[t], self.events[t + 1]
            if not (z_bot <= z <= z_top):
                continue
            if slab.contains(x, y):
                return True
        return False


def rch3(pset: PointSet, *, validated: bool = False, theta: float = 0.0) -> SlabMesh:
    """Explicit slab-mesh hull.  Cross-sections only change at hull-vertex
    heights, and only hull vertices can appear on any cross-section boundary,
    so the mesh is assembled from the vertex subset."""
    if not validated:
        report = validate_general_position(pset)
        if not report.ok:
            raise GeneralPositionError(f"{len(report.violations)} coordinate collisions")
    if len(pset) == 0:
        raise ValueError("empty point set has no hull")
    masks = maxima_masks_all_patterns(pset)
    # per-pattern staircase membership in staircase (reflected-x) order; a
    # swap of two co-members is a combinatorial change of that boundary chain
    streams = {}
    for k, by_id in masks.items():
        sx = PATTERNS[k - 1].sx
        members = np.nonzero(by_id)[0]
        order = members[np.argsort(sx * pset.xs[members], kind="stable")]
        streams[k] = tuple(int(i) for i in order)
    union = np.zeros(len(pset), dtype=bool)
    for by_id in masks.values():
        union |= by_id
    verts = np.nonzero(union)[0]
    vidx = np.array(sorted(verts, key=lambda i: -pset.zs[i]), dtype=np.int64)
    events = [float(pset.zs[i]) for i in vidx]
    slabs = []
    zs = pset.zs
    for t in range(len(vidx) - 1):
        z_top, z_bot = events[t], events[t + 1]
        above = vidx[zs[vidx] >= z_top]
        below = vidx[zs[vidx] <= z_bot]
        slabs.append(_slice_fns(pset, above, below))
    return SlabMesh(pset, vidx.tolist(), events, slabs, theta=theta,
                    pattern_streams=streams)


def rch3_at_theta(pset: PointSet, theta: float) -> SlabMesh:
    """Hull in the frame rotated by theta: rotate the points by -theta,
    compute, and tag the mesh with theta.  A rotation that lands two points
    on a shared coordinate is nudged by a relative jitter."""
    rotated = rotate_z(pset, -theta)
    if not validate_general_position(rotated).ok:
        scale = float(np.abs(rotated.coords).max()) or 1.0
        rotated = perturb(rotated, seed=0, magnitude=1e-12 * scale)
    return rch3(rotated, theta=theta)


def rch3_events(pset: PointSet, *, validated: bool = False) -> dict[int, list[int]]:
    """Compact event-stream form of the hull: per pattern, the ids whose
    projections enter that pattern's staircase, in sweep order.  This is the
    O(n log n) computation without the (worst-case quadratic) explicit mesh.
    """
    if not validated:
        report = validate_general_position(pset)
        if not report.ok:
            raise GeneralPositionError(f"{len(report.violations)} coordinate collisions")
    masks = maxima_masks_all_patterns(pset)
    order_desc = pset.sorted_by_z
    out = {}
    for k, by_id in masks.items():
        order = order_desc if k <= 4 else order_desc[::-1]
        out[k] = [int(i) for i in order if by_id[i]]
    return out


# ---------------------------------------------------------------------------
# Topology diagnostics
# ---------------------------------------------------------------------------


def euler_characteristic(mesh: SlabMesh) -> int:
    """V - E + F of the boundary surface of the voxelized hull solid."""
    faces = mesh.boundary_faces()
    verts = set()
    edges = set()
    for quad in faces:
        verts.update(quad)
        for a, b in zip(quad, quad[1:] + quad[:1]):
            edges.add((a, b) if a <= b else (b, a))
    return len(verts) - len(edges) + len(faces)


def _regions_touch(ra: StaircaseRegion, rb: StaircaseRegion) -> bool:
    """Closed intersection test: regions are unions of closed element boxes."""
    ax0, ay0, ax1, ay1 = ra.bbox
    bx0, by0, bx1, by1 = rb.bbox
    if ax1 < bx0 or bx1 < ax0 or ay1 < by0 or by1 < ay0:
        return False
    for ea in ra.elements:
        for eb in rb.elements:
            if (ea.x_lo <= eb.x_hi and eb.x_lo <= ea.x_hi
                    and ea.y_lo <= eb.y_hi and eb.y_lo <= ea.y_hi):
                return True
    return False


def _region_contains(region: StaircaseRegion, x: float, y: float) -> bool:
    return any(
        e.x_lo <= x <= e.x_hi and e.y_lo <= y <= e.y_hi for e in region.elements
    )


def components(mesh: SlabMesh) -> int:
    """Connected components of the hull, counting degenerate pieces.

    The mesh is the closed solid: the open-interval slab cross-sections plus
    the cap cross-section at every event height.  Caps matter — a vertex can
    hang onto the rest of the hull through a segment that exists only at its
    exact height.  Pieces connect when their closures intersect in the shared
    event plane; each vertex sits in its own cap.
    """
    nodes: list[tuple] = []
    index: dict[tuple, int] = {}

    def add(node):
        if node not in index:
            index[node] = len(nodes)
            nodes.append(node)
        return index[node]

    parent: list[int] = []

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    zs = mesh.pset.zs
    vidx = np.array(mesh.vertex_ids, dtype=np.int64)
    caps = []
    for t, z_t in enumerate(mesh.events):
        cap = _slice_fns(mesh.pset, vidx[zs[vidx] >= z_t], vidx[zs[vidx] <= z_t])
        caps.append(cap)
        for r_i in range(len(cap.regions)):
            add(("cap", t, r_i))
    for t, slab in enumerate(mesh.slabs):
        for r_i in range(len(slab.regions)):
            add(("slab", t, r_i))
    for vid in mesh.vertex_ids:
        add(("vertex", vid))
    parent.extend(range(len(nodes)))

    # touching regions within one cap (or one slab) are one piece
    for kind, groups in (("cap", caps), ("slab", mesh.slabs)):
        for t, grp in enumerate(groups):
            regs = grp.regions
            for i in range(len(regs)):
                for j in range(i + 1, len(regs)):
                    if _regions_touch(regs[i], regs[j]):
                        union(index[(kind, t, i)], index[(kind, t, j)])

    # cap t borders slab t-1 above and slab t below
    for t, cap in enumerate(caps):
        for s_t in (t - 1, t):
            if not 0 <= s_t < len(mesh.slabs):
                continue
            slab = mesh.slabs[s_t]
            for i, rc in enumerate(cap.regions):
                for j, rs in enumerate(slab.regions):
                    if _regions_touch(rc, rs):
                        union(index[("cap", t, i)], index[("slab", s_t, j)])

    coords = mesh.pset.coords
    for vid in mesh.vertex_ids:
        x, y, z = coords[vid]
        for t, z_t in enumerate(mesh.events):
            if z == z_t:
                for i, rc in enumerate(caps[t].regions):
                    if _region_contains(rc, x, y):
                        union(index[("vertex", vid)], index[("cap", t, i)])

    return len({find(i) for i in range(len(nodes))})


# ---------------------------------------------------------------------------
# Layers
# ---------------------------------------------------------------------------


def layers(pset: PointSet, *, validated: bool = False) -> list[frozenset[int]]:
    """Rectilinear convex layers: peel the hull vertex set until empty."""
    if not validated:
        report = validate_general_position(pset)
        if not report.ok:
            raise GeneralPositionError(f"{len(report.violations)} coordinate collisions")
    remaining = list(range(len(pset)))
    out: list[frozenset[int]] = []
    while remaining:
        sub = pset.subset(remaining)
        verts = rch_vertices(sub, validated=True)
        layer = frozenset(remaining[i] for i in verts)
        out.append(layer)
        remaining = [i for i in remaining if i not in layer]
    return out


# ---------------------------------------------------------------------------
# Export
# ---------------------------------------------------------------------------


def export_off(mesh: SlabMesh, triangulate: bool = False) -> str:
    """OFF serialization of the voxel boundary surface.  Degenerate hull
    vertices (isolated points) are appended as faceless vertices."""
    try:
        faces = mesh.boundary_faces()
        xs, ys, zs, _ = mesh._voxelize()
    except DegenerateMeshError:
        faces = []
        xs = ys = zs = []
    vert_index: dict[tuple, int] = {}
    verts: list[tuple[float, float, float]] = []

    def vid(corner):
        if corner not in vert_index:
            i, j, k = corner
            vert_index[corner] = len(verts)
            verts.append((xs[i], ys[j], zs[k]))
        return vert_index[corner]

    polys = []
    for quad in faces:
        idx = [vid(c) for c in quad]
        if triangulate:
            polys.append([idx[0], idx[1], idx[2]])
            polys.append([idx[0], idx[2], idx[3]])
        else:
            polys.append(idx)
    extra = mesh.degenerate_vertices() if mesh.slabs else list(mesh.vertex_ids)
    if not faces:
        extra = list(mesh.vertex_ids)
    for pid in extra:
        x, y, z = mesh.pset.coords[pid]
        verts.append((float(x), float(y), float(z)))
    lines = ["OFF", f"{len(verts)} {len(polys)} 0"]
    for x, y, z in verts:
        lines.append(f"{x:.17g} {y:.17g} {z:.17g}")
    for poly in polys:
        lines.append(str(len(poly)) + " " + " ".join(map(str, poly)))
    return "\n".join(lines) + "\n"


def slabs_to_json(mesh: SlabMesh) -> list[dict]:
    out = []
    for t, slab in enumerate(mesh.slabs):
        out.append(
            {
                "z_top": mesh.events[t],
                "z_bottom": mesh.events[t + 1],
                "regions": slab.to_json(),
            }
        )
    return out
