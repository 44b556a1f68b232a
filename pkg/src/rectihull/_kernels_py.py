"""Pure-Python implementations of the hot kernels.

These are the fallback for the compiled extension (see ``_backend``): same
signatures, same results, no C speed.  The staircase sweep is the inner loop
of every maxima/hull computation; the angular-extremes pass drives the
rotating-frame activity intervals.
"""

from __future__ import annotations

from bisect import bisect_left

import numpy as np

from ._hulltree_py import angular_extremes_py

BACKEND_NAME = "python"


def maxima_mask(xs, ys) -> np.ndarray:
    """Maximality mask for the (+,+) planar sweep.

    Points must arrive pre-reflected into the (+,+,+) pattern and ordered by
    strictly decreasing z.  A point is 3D-maximal iff its projection is not
    dominated by the staircase of previously seen projections; undominated
    projections are inserted, replacing any steps they dominate.
    """
    n = len(xs)
    mask = np.zeros(n, dtype=np.uint8)
    step_x: list[float] = []  # ascending
    step_y: list[float] = []  # descending
    for i in range(n):
        x = float(xs[i])
        y = float(ys[i])
        pos = bisect_left(step_x, x)
        if pos < len(step_x) and step_y[pos] >= y:
            continue
        mask[i] = 1
        j = pos
        while j > 0 and step_y[j - 1] <= y:
            j -= 1
        if j < pos:
            del step_x[j:pos]
            del step_y[j:pos]
            pos = j
        step_x.insert(pos, x)
        step_y.insert(pos, y)
    return mask


def angular_extremes(px, py, order) -> np.ndarray:
    return angular_extremes_py(px, py, order)
