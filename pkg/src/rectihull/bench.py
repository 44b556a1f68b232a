"""Doubling benchmarks.

Times a subject (maxima sweep, full hull, or activity intervals) over a
geometric ladder of sizes and reports per-size median wall time plus the
ratio between consecutive sizes.  A ratio near 2 is linear(ish) scaling; the
n log n / n log^2 n subjects should stay well under 2.5 per doubling.

Also times the raw kernels under every importable backend so the compiled
extension can be compared against the pure-Python fallback.
"""

from __future__ import annotations

import csv
import io
import statistics
import time
from dataclasses import dataclass

import numpy as np

from ._backend import backends
from .core import PointSet
from .hull import rch3
from .maxima import maxima_masks_all_patterns
from .rotate import active_intervals

SUBJECTS = ("maxima", "hull", "intervals")


@dataclass
class BenchRow:
    subject: str
    n: int
    seconds: float  # median over seeds
    ratio: float | None  # vs previous size, None for the first row


def _run_subject(subject: str, pset: PointSet) -> None:
    if subject == "maxima":
        maxima_masks_all_patterns(pset)
    elif subject == "hull":
        rch3(pset)
    elif subject == "intervals":
        active_intervals(pset)
    else:
        raise ValueError(f"unknown bench subject {subject!r}")


def _instance(n: int, seed: int) -> PointSet:
    rng = np.random.default_rng([97, seed])
    return PointSet(rng.random((n, 3)))


def run_bench(subject: str, sizes, seeds: int = 3) -> list[BenchRow]:
    """Median wall time per size; sizes must be ascending."""
    sizes = list(sizes)
    if sizes != sorted(sizes):
        raise ValueError("sizes must be ascending")
    rows: list[BenchRow] = []
    for n in sizes:
        times = []
        for s in range(seeds):
            pset = _instance(n, s)
            t0 = time.perf_counter()
            _run_subject(subject, pset)
            times.append(time.perf_counter() - t0)
        med = statistics.median(times)
        prev = rows[-1].seconds if rows else None
        ratio = med / prev if prev else None
        rows.append(BenchRow(subject, n, med, ratio))
    return rows


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(["subject", "n", "median_seconds", "doubling_ratio"])
    for r in rows:
        w.writerow([r.subject, r.n, f"{r.seconds:.6f}",
                    "" if r.ratio is None else f"{r.ratio:.3f}"])
    return buf.getvalue()


def compare_backends(n: int = 1 << 13, seeds: int = 3) -> list[BenchRow]:
    """Time the two hot kernels under every importable backend.

    Rows are labelled ``<kernel>/<backend>``; the ratio column holds each
    backend's slowdown relative to the fastest backend for that kernel.
    """
    rng = np.random.default_rng(7)
    pts = rng.random((n, 3))
    order = np.argsort(-pts[:, 2], kind="stable")
    xs = np.ascontiguousarray(pts[order, 0])
    ys = np.ascontiguousarray(pts[order, 1])
    px = np.ascontiguousarray(pts[:, 0])
    py = np.ascontiguousarray(pts[:, 1])
    rows: list[BenchRow] = []
    for kernel in ("maxima_mask", "angular_extremes"):
        timed = []
        for name, mod in sorted(backends().items()):
            times = []
            for _ in range(seeds):
                t0 = time.perf_counter()
                if kernel == "maxima_mask":
                    mod.maxima_mask(xs, ys)
                else:
                    mod.angular_extremes(px, py, order)
                times.append(time.perf_counter() - t0)
            timed.append((name, statistics.median(times)))
        best = min(t for _, t in timed)
        for name, t in timed:
            rows.append(BenchRow(f"{kernel}/{name}", n, t, t / best))
    return rows
