"""Core primitives: patterns, dominance, point sets, intervals, I/O."""

import math

import numpy as np
import pytest

from rectihull import (
    AngleInterval,
    GeneralPositionError,
    IntervalSet,
    PATTERNS,
    Point3,
    PointSet,
    SignPattern,
    dominates,
    interval_intersect,
    interval_union,
    parse_points,
    perturb,
    rotate_z,
    validate_general_position,
)
from rectihull.core import (
    format_points,
    format_points_json,
    load_points,
    norm_angle,
    parse_points_json,
    save_points,
)

from conftest import random_pset


class TestSignPattern:
    def test_eight_patterns(self):
        assert len(PATTERNS) == 8
        assert len(set(PATTERNS)) == 8
        for k, p in enumerate(PATTERNS, start=1):
            assert p.index == k
            assert SignPattern.from_index(k) == p
            assert {p.sx, p.sy, p.sz} <= {-1, +1}

    def test_upper_patterns_ccw_from_ppp(self):
        # patterns 1..4 share sz=+1 and walk the quadrants counterclockwise
        quads = [(p.sx, p.sy) for p in PATTERNS[:4]]
        assert quads == [(+1, +1), (-1, +1), (-1, -1), (+1, -1)]
        assert all(p.sz == +1 for p in PATTERNS[:4])

    def test_lower_patterns_negate_z(self):
        for hi, lo in zip(PATTERNS[:4], PATTERNS[4:]):
            assert (lo.sx, lo.sy) == (hi.sx, hi.sy)
            assert lo.sz == -hi.sz == -1

    def test_planar_projection(self):
        p = SignPattern.from_index(6)
        assert p.planar() == (p.sx, p.sy)

    def test_bad_index(self):
        with pytest.raises(ValueError):
            SignPattern.from_index(0)
        with pytest.raises(ValueError):
            SignPattern.from_index(9)


class TestDominance:
    def test_dominates_componentwise(self):
        p = Point3(2.0, 3.0, 4.0)
        q = Point3(1.0, 2.5, 3.5)
        assert dominates(p, q, SignPattern.from_index(1))
        assert not dominates(q, p, SignPattern.from_index(1))
        # reflecting all axes flips the order
        assert dominates(q, p, SignPattern.from_index(7))

    def test_dominance_is_closed(self):
        p = Point3(1.0, 1.0, 1.0)
        assert dominates(p, p, SignPattern.from_index(3))

    def test_incomparable(self):
        p = Point3(2.0, 0.0, 0.0)
        q = Point3(0.0, 2.0, 0.0)
        for pat in PATTERNS:
            assert not (dominates(p, q, pat) and dominates(q, p, pat))


class TestPointSet:
    def test_construction_and_views(self):
        ps = random_pset(25, 3)
        assert len(ps) == 25
        assert ps.coords.shape == (25, 3)
        np.testing.assert_array_equal(ps.xs, ps.coords[:, 0])
        p = ps.point(7)
        assert (p.x, p.y, p.z) == tuple(ps.coords[7])
        assert p.id == 7

    def test_coords_immutable(self):
        ps = random_pset(5, 0)
        with pytest.raises(ValueError):
            ps.coords[0, 0] = 99.0

    def test_sorted_by_z_decreasing(self):
        ps = random_pset(60, 4)
        zs = ps.zs[ps.sorted_by_z]
        assert np.all(np.diff(zs) < 0)

    def test_subset_preserves_coords(self):
        ps = random_pset(10, 5)
        sub = ps.subset([2, 5, 7])
        np.testing.assert_array_equal(sub.coords, ps.coords[[2, 5, 7]])

    def test_from_points_roundtrip(self):
        pts = [Point3(1.0, 2.0, 3.0), Point3(4.0, 5.0, 6.0)]
        ps = PointSet.from_points(pts)
        assert ps.point(1).y == 5.0


class TestGeneralPosition:
    def test_clean_set_ok(self):
        assert validate_general_position(random_pset(100, 6)).ok

    def test_shared_coordinate_detected(self):
        coords = np.array([[0.0, 1.0, 2.0], [0.0, 3.0, 4.0], [5.0, 6.0, 7.0]])
        report = validate_general_position(PointSet(coords))
        assert not report.ok
        assert any(v.axis == "x" for v in report.violations)

    def test_perturb_restores_general_position(self):
        coords = np.array([[0.0, 1.0, 2.0], [0.0, 1.0, 4.0], [5.0, 6.0, 7.0]])
        ps = perturb(PointSet(coords), seed=1, magnitude=1e-6)
        assert validate_general_position(ps).ok
        assert np.abs(ps.coords - coords).max() <= 1e-6

    def test_perturb_deterministic(self):
        coords = np.array([[0.0, 1.0, 2.0], [0.0, 1.0, 4.0]])
        a = perturb(PointSet(coords), seed=9, magnitude=1e-6)
        b = perturb(PointSet(coords), seed=9, magnitude=1e-6)
        np.testing.assert_array_equal(a.coords, b.coords)

    def test_perturb_rejects_nonpositive_magnitude(self):
        coords = np.array([[0.0, 1.0, 2.0], [0.0, 1.0, 4.0]])
        with pytest.raises(ValueError):
            perturb(PointSet(coords), seed=0, magnitude=0.0)

    def test_perturb_gives_up(self):
        # magnitude far below float spacing can never separate duplicates
        coords = np.array([[1e6, 1.0, 2.0], [1e6, 1.0, 4.0]])
        with pytest.raises(GeneralPositionError):
            perturb(PointSet(coords), seed=0, magnitude=1e-30, retries=4)


class TestRotation:
    def test_rotate_z_quarter_turn(self):
        ps = PointSet(np.array([[1.0, 0.0, 5.0]]))
        r = rotate_z(ps, math.pi / 2)
        np.testing.assert_allclose(r.coords, [[0.0, 1.0, 5.0]], atol=1e-15)

    def test_rotate_preserves_radius_and_z(self):
        ps = random_pset(30, 7)
        r = rotate_z(ps, 0.83)
        np.testing.assert_allclose(np.hypot(r.xs, r.ys), np.hypot(ps.xs, ps.ys))
        np.testing.assert_array_equal(r.zs, ps.zs)

    def test_norm_angle(self):
        assert norm_angle(2 * math.pi + 0.25) == pytest.approx(0.25)
        assert norm_angle(-0.25) == pytest.approx(2 * math.pi - 0.25)
        assert norm_angle(0.3, period=math.pi / 2) == pytest.approx(0.3)


class TestAngleIntervals:
    def test_interval_contains_closed(self):
        iv = AngleInterval(0.5, 1.0)
        assert iv.contains(0.5, 0.0, 2 * math.pi)
        assert iv.contains(1.0, 0.0, 2 * math.pi)
        assert not iv.contains(1.1, 0.0, 2 * math.pi)

    def test_wrapping_interval(self):
        iv = AngleInterval(6.0, 0.5, wraps=True)
        assert iv.contains(6.2, 0.0, 2 * math.pi)
        assert iv.contains(0.1, 0.0, 2 * math.pi)
        assert not iv.contains(3.0, 0.0, 2 * math.pi)
        assert iv.measure(2 * math.pi) == pytest.approx(2 * math.pi - 5.5)

    def test_intervalset_normalizes(self):
        s = IntervalSet([AngleInterval(1.0, 2.0), AngleInterval(1.5, 2.5)])
        assert len(s.intervals) == 1
        assert s.intervals[0].lo == 1.0
        assert s.intervals[0].hi == 2.5

    def test_empty_and_full(self):
        e = IntervalSet.empty()
        f = IntervalSet.full()
        assert e.is_empty and not e.is_full
        assert f.is_full and not f.is_empty
        assert f.measure() == pytest.approx(2 * math.pi)
        assert f.contains(5.1)

    def test_union_and_intersect(self):
        a = IntervalSet([AngleInterval(0.0, 1.0)])
        b = IntervalSet([AngleInterval(0.5, 2.0)])
        u = interval_union(a, b)
        i = interval_intersect(a, b)
        assert u.measure() == pytest.approx(2.0)
        assert i.measure() == pytest.approx(0.5)
        assert i.contains(0.7) and not i.contains(1.5)

    def test_intersect_with_wrap(self):
        a = IntervalSet([AngleInterval(6.0, 0.5, wraps=True)])
        b = IntervalSet([AngleInterval(0.2, 1.0)])
        i = interval_intersect(a, b)
        assert i.measure() == pytest.approx(0.3)

    def test_quarter_period_set(self):
        s = IntervalSet([AngleInterval(0.1, 0.4)], period=math.pi / 2)
        assert s.contains(0.2)
        assert not s.contains(0.5)


class TestIO:
    def test_text_roundtrip_bitwise(self):
        ps = random_pset(20, 8)
        again = parse_points(format_points(ps))
        np.testing.assert_array_equal(again.coords, ps.coords)

    def test_text_comments_and_blank_lines(self):
        ps = parse_points("# header\n1 2 3\n\n4 5 6\n")
        assert len(ps) == 2

    def test_text_bad_line(self):
        with pytest.raises(ValueError):
            parse_points("1 2\n")

    def test_json_roundtrip(self):
        ps = random_pset(12, 9)
        again = parse_points_json(format_points_json(ps))
        np.testing.assert_array_equal(again.coords, ps.coords)

    def test_load_save_autodetect(self, tmp_path):
        ps = random_pset(10, 10)
        txt = tmp_path / "pts.txt"
        js = tmp_path / "pts.json"
        save_points(ps, txt)
        save_points(ps, js, fmt="json")
        np.testing.assert_array_equal(load_points(txt).coords, ps.coords)
        np.testing.assert_array_equal(load_points(js).coords, ps.coords)
