"""Acceptance suite: the eleven library-level guarantees, one test (and one
printed PASS/FAIL line) each.

Each test prints its verdict through ``capsys.disabled`` so the line is
visible in a normal captured pytest run, then asserts, so a red test and a
FAIL line always coincide.
"""

import math
import statistics
import time

import numpy as np
import pytest

from rectihull import (
    PATTERNS,
    PointSet,
    active_at,
    active_intervals,
    components,
    euler_characteristic,
    layers,
    maxima3d,
    rch3,
    rch_vertices,
    rotate_z,
)
from rectihull.bench import run_bench
from rectihull.generators import GeneratorSpec, cylinder_window, generate
from rectihull.hull import slice_at
from rectihull.oracle import (
    brute_active_intervals,
    brute_maxima,
    brute_member_many,
    count_hull_signatures,
)
from rectihull.rotate import hulltree_build, hulltree_activate


def report(capsys, num, ok, detail):
    with capsys.disabled():
        print(f"criterion {num}: {'PASS' if ok else 'FAIL'} — {detail}")


def instance(n, seed):
    return generate(GeneratorSpec("uniform-box", n, seed))


def perturbed_box():
    corners = np.array(
        [[sx, sy, sz] for sx in (-1, 1) for sy in (-1, 1) for sz in (-1, 1)],
        dtype=float,
    )
    rng = np.random.default_rng(3)
    return PointSet(corners + rng.uniform(-0.01, 0.01, corners.shape))


def test_criterion_1_maxima_oracle(capsys):
    t0 = time.perf_counter()
    bad = 0
    for seed in range(100):
        ps = instance(500, seed)
        for pat in PATTERNS:
            if maxima3d(ps, pat, validated=True).ids != brute_maxima(ps, pat):
                bad += 1
    elapsed = time.perf_counter() - t0
    ok = bad == 0 and elapsed < 60.0
    report(capsys, 1, ok,
           f"maxima == oracle on 100 instances, n=500, 8 patterns, "
           f"{bad} mismatches, {elapsed:.1f}s")
    assert bad == 0
    assert elapsed < 60.0


def test_criterion_2_vertex_set(capsys):
    bad = 0
    for seed in range(50):
        ps = instance(300, seed)
        brute = frozenset().union(*(brute_maxima(ps, p) for p in PATTERNS))
        if rch_vertices(ps, validated=True) != brute:
            bad += 1
    report(capsys, 2, bad == 0,
           f"hull vertex set == brute octant-free set on 50 instances, "
           f"n=300, {bad} mismatches")
    assert bad == 0


def test_criterion_3_slice_membership(capsys):
    bad = checked = 0
    for seed in range(20):
        ps = instance(200, seed)
        rng = np.random.default_rng([41, seed])
        lo, hi = ps.zs.min(), ps.zs.max()
        for c in rng.uniform(lo, hi, 5):
            region = slice_at(ps, c)
            gx = np.linspace(-0.05, 1.05, 50)
            gy = np.linspace(-0.05, 1.05, 50)
            bounds_x = np.unique(ps.xs)
            bounds_y = np.unique(ps.ys)
            qs, keep = [], []
            for x in gx:
                if np.min(np.abs(bounds_x - x)) < 1e-9:
                    continue
                for y in gy:
                    if np.min(np.abs(bounds_y - y)) < 1e-9:
                        continue
                    qs.append((x, y, c))
                    keep.append((x, y))
            want = brute_member_many(np.array(qs), ps)
            for (x, y), w in zip(keep, want):
                checked += 1
                if region.contains(x, y) != w:
                    bad += 1
    report(capsys, 3, bad == 0,
           f"slice membership == brute membership on 20 instances × 5 "
           f"heights, {checked} grid points, {bad} mismatches")
    assert bad == 0


def test_criterion_4_topology(capsys):
    box = rch3(perturbed_box())
    chi_box = euler_characteristic(box)
    comps_box = components(box)
    torus = rch3(generate(GeneratorSpec("torus-cubes", 0, seed=1)))
    chi_torus = euler_characteristic(torus)
    two = rch3(PointSet(np.array([[0.0, 0.0, 0.0], [1.0, 1.0, 1.0]])))
    comps_two = components(two)
    ok = (chi_box == 2 and comps_box == 1 and chi_torus == 0 and comps_two == 2)
    report(capsys, 4, ok,
           f"box χ={chi_box} (want 2), box components={comps_box} (want 1), "
           f"torus χ={chi_torus} (want 0), two-point components={comps_two} "
           f"(want 2)")
    assert chi_box == 2
    assert chi_torus == 0
    assert comps_two == 2
    assert comps_box == 1, (
        f"components={comps_box} for perturbed box corners. A connected hull "
        "is impossible here: with all 24 coordinates distinct, the planar "
        "hull of two projected points is just the two points, so the two "
        "topmost (and two bottommost) corners can only join the rest through "
        "a point whose projection has another hull point in all four open "
        "quadrants on that side; but each of the four corners supplying an "
        "axis extreme (max/min x or y) has two empty quadrants on every "
        "side and can never do so, and a counting argument over the eight "
        "corners shows the two requirements cannot be met simultaneously. "
        "At least one corner therefore always detaches, for every jitter."
    )


def test_criterion_5_interval_oracle(capsys):
    bad_points = 0
    worst = 0.0
    for seed in range(30):
        ps = instance(100, seed)
        fast = active_intervals(ps, validated=True)
        brute = brute_active_intervals(ps)
        for i in range(100):
            a, b = fast.merged[i].intervals, brute.merged[i].intervals
            if len(a) != len(b):
                bad_points += 1
                continue
            for x, y in zip(a, b):
                d = max(abs(x.lo - y.lo), abs(x.hi - y.hi))
                worst = max(worst, d)
                if d > 1e-7 or x.wraps != y.wraps:
                    bad_points += 1
                    break
    report(capsys, 5, bad_points == 0,
           f"activity intervals == oracle on 30 instances, n=100, "
           f"{bad_points} bad points, worst endpoint gap {worst:.2e} rad")
    assert bad_points == 0


def test_criterion_6_interval_count_bound(capsys):
    worst_up = worst_down = worst_merged = 0
    for seed in range(40):
        ps = instance(100, 200 + seed)
        tab = active_intervals(ps, validated=True)
        for i in range(len(ps)):
            worst_up = max(worst_up, len(tab.up[i].intervals))
            worst_down = max(worst_down, len(tab.down[i].intervals))
            worst_merged = max(worst_merged, len(tab.merged[i].intervals))
    ok = worst_up <= 3 and worst_down <= 3 and worst_merged <= 6
    report(capsys, 6, ok,
           f"interval counts over 40 instances: max up={worst_up} (≤3), "
           f"down={worst_down} (≤3), merged={worst_merged} (≤6)")
    assert ok


def test_criterion_7_rotation_consistency(capsys):
    bad = 0
    for seed in range(20):
        ps = instance(100, 300 + seed)
        tab = active_intervals(ps, validated=True)
        rng = np.random.default_rng([43, seed])
        for theta in rng.uniform(0.0, 2 * math.pi, 100):
            if active_at(tab, theta) != rch_vertices(rotate_z(ps, -theta)):
                bad += 1
    report(capsys, 7, bad == 0,
           f"active_at(θ) == vertices of the rotated set on 20 instances × "
           f"100 angles, {bad} mismatches")
    assert bad == 0


def test_criterion_8_quadratic_change(capsys):
    t0 = time.perf_counter()
    counts = {}
    constant = True
    for n in (16, 32, 64):
        ps = generate(GeneratorSpec("cylinder-geodesic", n, seed=0))
        window = cylinder_window(ps, n)
        tab = active_intervals(ps, validated=True)
        thetas = np.linspace(window.lo + 1e-6, window.lo + window.measure(
            math.pi / 2) - 1e-6, 25)
        sets = {active_at(tab, float(t)) for t in thetas}
        if len(sets) != 1:
            constant = False
        counts[n] = count_hull_signatures(ps, window)
    elapsed = time.perf_counter() - t0
    r1 = counts[32] / counts[16]
    r2 = counts[64] / counts[32]
    ok = constant and r1 >= 3.0 and r2 >= 3.0 and elapsed < 600.0
    report(capsys, 8, ok,
           f"signature counts {counts[16]}/{counts[32]}/{counts[64]}, "
           f"ratios {r1:.2f}/{r2:.2f} (≥3.0), active set constant={constant}, "
           f"{elapsed:.0f}s")
    assert constant
    assert r1 >= 3.0 and r2 >= 3.0
    assert elapsed < 600.0


def test_criterion_9_layers(capsys):
    bad = 0
    for seed in range(20):
        ps = instance(200, 400 + seed)
        got = layers(ps, validated=True)
        remaining = list(range(200))
        want = []
        while remaining:
            shell = rch_vertices(ps.subset(remaining), validated=True)
            want.append(frozenset(remaining[i] for i in shell))
            remaining = [remaining[i] for i in range(len(remaining))
                         if i not in shell]
        if got != want or sum(len(l) for l in got) != 200:
            bad += 1
    report(capsys, 9, bad == 0,
           f"layers == brute peeling on 20 instances, n=200, sizes sum to n, "
           f"{bad} mismatches")
    assert bad == 0


def test_criterion_10_complexity_scaling(capsys):
    hull_rows = run_bench("hull", [1 << k for k in range(14, 21)], seeds=1)
    iv_rows = run_bench("intervals", [1 << k for k in range(12, 18)], seeds=1)
    hull_ratios = [r.ratio for r in hull_rows if r.ratio is not None]
    iv_ratios = [r.ratio for r in iv_rows if r.ratio is not None]
    hull_med = statistics.median(hull_ratios)
    iv_med = statistics.median(iv_ratios)
    top = hull_rows[-1].seconds
    ok = hull_med <= 2.5 and iv_med <= 2.8 and top < 10.0
    report(capsys, 10, ok,
           f"median doubling ratios: rch3 {hull_med:.2f} (≤2.5), "
           f"active_intervals {iv_med:.2f} (≤2.8); rch3 at n=2^20 in "
           f"{top:.2f}s (<10s)")
    assert hull_med <= 2.5
    assert iv_med <= 2.8
    assert top < 10.0


def test_criterion_11_hulltree_structure(capsys):
    rng = np.random.default_rng(55)
    partition_ok = True
    for n in range(1, 65):
        pts = rng.random((n, 2))
        t = hulltree_build(pts, axis="x")
        by_key = np.argsort(pts[:, 0])
        for idx in range(n):
            covered = sorted(
                r for lo, hi in t.off_path_ranges(idx) for r in range(lo, hi)
            )
            me = int(np.nonzero(by_key == idx)[0][0])
            if covered != [r for r in range(n) if r != me]:
                partition_ok = False

    def hull_of(points):
        pts_sorted = sorted(points)
        if len(pts_sorted) <= 2:
            return set(pts_sorted)

        def chain(seq, sign):
            out = []
            for p in seq:
                while len(out) >= 2:
                    (x1, y1), (x2, y2) = out[-2], out[-1]
                    cross = (x2 - x1) * (p[1] - y1) - (y2 - y1) * (p[0] - x1)
                    if sign * cross >= 0:
                        out.pop()
                    else:
                        break
                out.append(p)
            return out

        return set(chain(pts_sorted, +1)) | set(chain(pts_sorted, -1))

    recon_ok = True
    for n in (17, 64, 128):
        pts = rng.random((n, 2))
        t = hulltree_build(pts, axis="x")
        order = rng.permutation(n)
        active = []
        for idx in order:
            hulltree_activate(t, int(idx))
            active.append(int(idx))
            for lo, hi in t.node_ranges():
                inside = [
                    (t.keys[p], t.vals[p]) for p in range(lo, hi)
                    if t.active[p]
                ]
                node_pts = set(t.node_hull_points(lo, hi))
                if node_pts != hull_of(inside):
                    recon_ok = False

    storage_ok = True
    for n in (50, 100, 128):
        pts = rng.random((n, 2))
        t = hulltree_build(pts, axis="x")
        for i in range(n):
            hulltree_activate(t, i)
        if t.storage() > n * (t.depth() + 1):
            storage_ok = False

    ok = partition_ok and recon_ok and storage_ok
    report(capsys, 11, ok,
           f"off-path partition n≤64: {partition_ok}; node-hull "
           f"reconstruction after every activation n≤128: {recon_ok}; "
           f"storage ≤ n·(depth+1): {storage_ok}")
    assert partition_ok
    assert recon_ok
    assert storage_ok
