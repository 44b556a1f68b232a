"""Rotation machinery: hull trees, empty gaps, per-point activity intervals."""

import math

import numpy as np
import pytest

from rectihull import (
    GeneralPositionError,
    HullTree,
    PointSet,
    active_at,
    active_intervals,
    angular_neighbors,
    empty_gaps,
    gaps_to_theta_intervals,
    hulltree_activate,
    hulltree_build,
    rch_vertices,
    rotate_z,
)
from rectihull.oracle import brute_active_intervals
from rectihull.rotate import ActivityTable, Gap

from conftest import random_pset


def planar_points(n, seed):
    rng = np.random.default_rng([21, seed])
    return rng.random((n, 2))


class TestHullTree:
    def test_build_and_activate(self):
        pts = planar_points(32, 0)
        t = hulltree_build(pts, axis="x")
        assert not any(t.active)
        hulltree_activate(t, 5)
        assert t.active[t.leaf_of[5]]
        with pytest.raises(ValueError):
            hulltree_activate(t, 5)

    def test_duplicate_keys_rejected(self):
        pts = np.array([[0.5, 0.1], [0.5, 0.9]])
        with pytest.raises(GeneralPositionError):
            HullTree(pts, axis="x")

    def test_side_extremes_tangent_slopes(self):
        # each side's extremes realize the min/max slope from the probe among
        # the active points on that side of the probe's key
        pts = planar_points(64, 1)
        t = hulltree_build(pts, axis="x")
        active = [j for j in range(64) if j != 7]
        for idx in active:
            hulltree_activate(t, idx)
        qx, qy = pts[7]
        (lo_min, lo_max), (hi_min, hi_max) = t.side_extremes(7)
        for side_pts, (got_min, got_max) in (
            ([pts[j] for j in active if pts[j, 0] < qx], (lo_min, lo_max)),
            ([pts[j] for j in active if pts[j, 0] > qx], (hi_min, hi_max)),
        ):
            slopes = [(p[1] - qy) / (p[0] - qx) for p in side_pts]
            got_slope = lambda p: (p[1] - qy) / (p[0] - qx)
            assert got_slope(got_min) == pytest.approx(min(slopes))
            assert got_slope(got_max) == pytest.approx(max(slopes))

    def test_observation_partition(self):
        # off-path subtree ranges of a leaf partition everything but the leaf
        pts = planar_points(48, 2)
        t = hulltree_build(pts, axis="x")
        by_key = np.argsort(pts[:, 0])
        for idx in range(48):
            ranges = t.off_path_ranges(int(idx))
            covered = []
            for lo, hi in ranges:
                covered.extend(range(lo, hi))
            covered.sort()
            me = int(np.nonzero(by_key == idx)[0][0])
            assert covered == [r for r in range(48) if r != me]

    def test_storage_bound(self):
        pts = planar_points(100, 3)
        t = hulltree_build(pts, axis="x")
        for i in range(100):
            hulltree_activate(t, i)
        assert t.storage() <= 100 * (t.depth() + 1)


class TestAngularNeighbors:
    def test_neighbors_bracket_ray(self):
        pts = planar_points(40, 4)
        tx = hulltree_build(pts, axis="x")
        ty = hulltree_build(pts, axis="y")
        for i in range(40):
            hulltree_activate(tx, i)
            hulltree_activate(ty, i)
        probe = 7
        qx, qy = pts[probe]

        def offset(p, base):
            a = math.atan2(p[1] - qy, p[0] - qx) - base
            return (a + math.pi) % (2 * math.pi) - math.pi

        for ray, tree in (("+y", tx), ("-y", tx), ("+x", ty), ("-x", ty)):
            cw, ccw = angular_neighbors(tree, probe, ray)
            base = {"+y": math.pi / 2, "-y": -math.pi / 2,
                    "+x": 0.0, "-x": math.pi}[ray]
            offs = [offset(pts[j], base) for j in range(40) if j != probe]
            neg = [a for a in offs if a < 0]
            pos = [a for a in offs if a > 0]
            # first clockwise hit: nearest below the ray, wrapping if none
            want_cw = max(neg) if neg else max(pos)
            want_ccw = min(pos) if pos else min(neg)
            assert offset(cw, base) == pytest.approx(want_cw)
            assert offset(ccw, base) == pytest.approx(want_ccw)

    def test_wrong_tree_axis_rejected(self):
        pts = planar_points(10, 5)
        ty = hulltree_build(pts, axis="y")
        with pytest.raises(ValueError):
            angular_neighbors(ty, 0, "+y")


class TestGaps:
    def test_gap_width(self):
        g = Gap(center_ray=0.0, lo_dir=-0.3, hi_dir=0.4)
        assert g.width == pytest.approx(0.7)

    def test_full_gap_interval_is_full(self):
        s = gaps_to_theta_intervals(Gap("+x", 0.0, 0.0, full=True))
        assert s.is_full

    def test_narrow_gap_contributes_nothing(self):
        g = Gap(center_ray="+x", lo_dir=0.1, hi_dir=0.4)
        assert gaps_to_theta_intervals(g).is_empty

    def test_wide_gap_full_circle(self):
        # width > pi: some quadrant of every theta-frame fits
        g = Gap(center_ray="+x", lo_dir=0.3, hi_dir=0.3 + 3.4)
        assert gaps_to_theta_intervals(g).is_full

    def test_medium_gap_four_shifted_intervals(self):
        g = Gap(center_ray="+x", lo_dir=0.2, hi_dir=0.2 + 2.0)
        s = gaps_to_theta_intervals(g)
        assert len(s.intervals) == 4
        assert s.measure() == pytest.approx(4 * (2.0 - math.pi / 2))
        assert s.contains(0.25)


class TestActivityTable:
    def test_matches_brute_oracle(self):
        for seed in range(4):
            ps = random_pset(60, 60 + seed)
            tab = active_intervals(ps)
            ref = brute_active_intervals(ps)
            for i in range(len(ps)):
                a, b = tab.merged[i], ref.merged[i]
                assert len(a.intervals) == len(b.intervals), f"point {i}"
                for ia, ib in zip(a.intervals, b.intervals):
                    assert ia.lo == pytest.approx(ib.lo, abs=1e-7)
                    assert ia.hi == pytest.approx(ib.hi, abs=1e-7)
                    assert ia.wraps == ib.wraps

    def test_interval_count_bounds(self):
        for seed in range(5):
            ps = random_pset(100, 70 + seed)
            tab = active_intervals(ps)
            for i in range(len(ps)):
                assert len(tab.up[i].intervals) <= 3
                assert len(tab.down[i].intervals) <= 3
                assert len(tab.merged[i].intervals) <= 6

    def test_active_at_matches_rotated_hull(self):
        ps = random_pset(80, 80)
        tab = active_intervals(ps)
        rng = np.random.default_rng(81)
        for theta in rng.uniform(0.0, 2 * math.pi, 10):
            got = active_at(tab, theta)
            want = rch_vertices(rotate_z(ps, -theta))
            assert got == want, f"theta={theta}"

    def test_quarter_turn_periodic(self):
        ps = random_pset(50, 82)
        tab = active_intervals(ps)
        rng = np.random.default_rng(83)
        for theta in rng.uniform(0.0, math.pi / 2, 5):
            base = tab.active_at(theta)
            for q in range(1, 4):
                assert tab.active_at(theta + q * math.pi / 2) == base

    def test_theta_zero_matches_static_hull(self):
        ps = random_pset(70, 84)
        tab = active_intervals(ps)
        assert tab.active_at(0.0) == rch_vertices(ps)

    def test_to_json_shape(self):
        ps = random_pset(10, 85)
        data = active_intervals(ps).to_json()
        assert sorted(e["id"] for e in data) == list(range(10))
        for entry in data:
            for iv in entry["intervals"]:
                assert {"lo", "hi", "wraps"} <= set(iv)

    def test_general_position_enforced(self):
        coords = np.array([[0.0, 1.0, 2.0], [3.0, 4.0, 2.0], [5.0, 6.0, 7.0]])
        with pytest.raises(GeneralPositionError):
            active_intervals(PointSet(coords))
