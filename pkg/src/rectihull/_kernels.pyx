# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled implementations of the hot kernels.

Mirrors ``_kernels_py`` exactly: the staircase sweep behind every maxima and
hull computation, and the balanced-tree-of-hulls pass behind the rotation
activity intervals.  The tree lives in flat preallocated arrays; each node's
chains can never exceed its leaf count, so one prefix-sum pool serves all
nodes without reallocation.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport NAN, isnan
from libc.string cimport memmove

cnp.import_array()

BACKEND_NAME = "cython"


def maxima_mask(double[::1] xs, double[::1] ys):
    """Maximality mask for the pre-reflected, z-descending (+,+) sweep."""
    cdef Py_ssize_t n = xs.shape[0]
    mask_arr = np.zeros(n, dtype=np.uint8)
    cdef unsigned char[::1] mask = mask_arr
    step_x_arr = np.empty(n, dtype=np.float64)
    step_y_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] sx = step_x_arr
    cdef double[::1] sy = step_y_arr
    cdef Py_ssize_t m = 0, i, lo, hi, mid, pos, j, tail
    cdef double x, y
    for i in range(n):
        x = xs[i]
        y = ys[i]
        lo = 0
        hi = m
        while lo < hi:
            mid = (lo + hi) >> 1
            if sx[mid] < x:
                lo = mid + 1
            else:
                hi = mid
        pos = lo
        if pos < m and sy[pos] >= y:
            continue
        mask[i] = 1
        j = pos
        while j > 0 and sy[j - 1] <= y:
            j -= 1
        tail = m - pos
        if j < pos:
            if tail > 0:
                memmove(&sx[j], &sx[pos], tail * sizeof(double))
                memmove(&sy[j], &sy[pos], tail * sizeof(double))
            m -= pos - j
            pos = j
            tail = m - pos
        if tail > 0:
            memmove(&sx[pos + 1], &sx[pos], tail * sizeof(double))
            memmove(&sy[pos + 1], &sy[pos], tail * sizeof(double))
        sx[pos] = x
        sy[pos] = y
        m += 1
    return mask_arr


cdef inline double _cross(double ax, double ay, double bx, double by,
                          double cx, double cy) nogil:
    return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)


cdef void _chain_insert(double* ck, double* cv, long long* clen, double sign,
                        double k, double v) nogil:
    cdef long long n = clen[0]
    cdef long long lo = 0, hi = n, mid, pos
    while lo < hi:
        mid = (lo + hi) >> 1
        if ck[mid] < k:
            lo = mid + 1
        else:
            hi = mid
    pos = lo
    if 0 < pos < n:
        if sign * _cross(ck[pos - 1], cv[pos - 1], ck[pos], cv[pos], k, v) >= 0:
            return
    if pos < n:
        memmove(&ck[pos + 1], &ck[pos], (n - pos) * sizeof(double))
        memmove(&cv[pos + 1], &cv[pos], (n - pos) * sizeof(double))
    ck[pos] = k
    cv[pos] = v
    n += 1
    while pos >= 2 and sign * _cross(ck[pos - 2], cv[pos - 2],
                                     ck[pos - 1], cv[pos - 1],
                                     ck[pos], cv[pos]) <= 0:
        memmove(&ck[pos - 1], &ck[pos], (n - pos) * sizeof(double))
        memmove(&cv[pos - 1], &cv[pos], (n - pos) * sizeof(double))
        n -= 1
        pos -= 1
    while pos + 2 < n and sign * _cross(ck[pos], cv[pos],
                                        ck[pos + 1], cv[pos + 1],
                                        ck[pos + 2], cv[pos + 2]) <= 0:
        memmove(&ck[pos + 1], &ck[pos + 2], (n - pos - 2) * sizeof(double))
        memmove(&cv[pos + 1], &cv[pos + 2], (n - pos - 2) * sizeof(double))
        n -= 1
    clen[0] = n


cdef long long _chain_extreme(double* ck, double* cv, long long n,
                              double qk, double qv, bint want_max) nogil:
    """Index of the chain vertex with extreme slope seen from (qk, qv)."""
    cdef long long lo, hi, mid, best, i
    cdef double ta, tb, tbest
    if n == 0:
        return -1
    if n <= 8:
        best = 0
        tbest = (cv[0] - qv) / (ck[0] - qk)
        for i in range(1, n):
            ta = (cv[i] - qv) / (ck[i] - qk)
            if (ta > tbest) == want_max and ta != tbest:
                best = i
                tbest = ta
        return best
    lo = 0
    hi = n - 1
    while lo < hi:
        mid = (lo + hi) >> 1
        ta = (cv[mid] - qv) / (ck[mid] - qk)
        tb = (cv[mid + 1] - qv) / (ck[mid + 1] - qk)
        if (tb > ta) == want_max and tb != ta:
            lo = mid + 1
        else:
            hi = mid
    return lo


cdef class _CTree:
    """Static implicit balanced tree over key-sorted leaves with per-node
    insertion-only hull chains in pooled flat storage."""

    cdef Py_ssize_t n, n_nodes
    cdef double[::1] keys, vals
    cdef long long[::1] pos_of
    cdef long long[::1] nlo, nhi, lchild, rchild, coff, clen_u, clen_l
    cdef double[::1] uk, uv, lk, lv
    cdef long long root

    def __init__(self, double[::1] key_coord, double[::1] val_coord):
        cdef Py_ssize_t n = key_coord.shape[0]
        self.n = n
        order = np.argsort(np.asarray(key_coord), kind="stable")
        keys_arr = np.asarray(key_coord)[order].copy()
        vals_arr = np.asarray(val_coord)[order].copy()
        if n > 1 and np.any(keys_arr[1:] == keys_arr[:-1]):
            raise ValueError("duplicate keys")
        self.keys = keys_arr
        self.vals = vals_arr
        pos_arr = np.empty(n, dtype=np.int64)
        pos_arr[order] = np.arange(n, dtype=np.int64)
        self.pos_of = pos_arr

        # enumerate implicit midpoint-split nodes iteratively
        cdef list stack = [(0, n)]
        cdef list rows = []  # (lo, hi)
        cdef dict node_id = {}
        cdef long long lo, hi, mid
        while stack:
            lo, hi = stack.pop()
            node_id[(lo, hi)] = len(rows)
            rows.append((lo, hi))
            if hi - lo > 1:
                mid = (lo + hi) >> 1
                stack.append((lo, mid))
                stack.append((mid, hi))
        cdef Py_ssize_t m = len(rows)
        self.n_nodes = m
        nlo_arr = np.empty(m, dtype=np.int64)
        nhi_arr = np.empty(m, dtype=np.int64)
        lch_arr = np.full(m, -1, dtype=np.int64)
        rch_arr = np.full(m, -1, dtype=np.int64)
        coff_arr = np.empty(m, dtype=np.int64)
        cdef long long total = 0
        cdef Py_ssize_t i
        for i in range(m):
            lo, hi = rows[i]
            nlo_arr[i] = lo
            nhi_arr[i] = hi
            coff_arr[i] = total
            total += hi - lo
            if hi - lo > 1:
                mid = (lo + hi) >> 1
                lch_arr[i] = node_id[(lo, mid)]
                rch_arr[i] = node_id[(mid, hi)]
        self.nlo = nlo_arr
        self.nhi = nhi_arr
        self.lchild = lch_arr
        self.rchild = rch_arr
        self.coff = coff_arr
        self.clen_u = np.zeros(m, dtype=np.int64)
        self.clen_l = np.zeros(m, dtype=np.int64)
        self.uk = np.empty(total, dtype=np.float64)
        self.uv = np.empty(total, dtype=np.float64)
        self.lk = np.empty(total, dtype=np.float64)
        self.lv = np.empty(total, dtype=np.float64)
        self.root = node_id[(0, n)] if n else -1

    cdef void activate(self, long long idx) nogil:
        cdef long long pos = self.pos_of[idx]
        cdef double k = self.keys[pos], v = self.vals[pos]
        cdef long long node = self.root, off, mid
        while node >= 0:
            off = self.coff[node]
            _chain_insert(&self.uk[off], &self.uv[off], &self.clen_u[node],
                          -1.0, k, v)
            _chain_insert(&self.lk[off], &self.lv[off], &self.clen_l[node],
                          1.0, k, v)
            if self.nhi[node] - self.nlo[node] == 1:
                break
            mid = (self.nlo[node] + self.nhi[node]) >> 1
            node = self.lchild[node] if pos < mid else self.rchild[node]

    cdef void side_extremes(self, long long idx, double* out) nogil:
        """out[0..7]: low side (min key,val, max key,val), high side same;
        NaN where a side is empty."""
        cdef long long pos = self.pos_of[idx]
        cdef double qk = self.keys[pos], qv = self.vals[pos]
        cdef double best_t[4]
        cdef double best_k[4]
        cdef double best_v[4]
        cdef bint have[4]
        cdef long long node = self.root, mid, sib, off, ci
        cdef Py_ssize_t s, slot, base
        cdef double t, ck, cv
        cdef bint first_low
        for s in range(4):
            have[s] = 0
        if node < 0:
            for s in range(8):
                out[s] = NAN
            return
        while self.nhi[node] - self.nlo[node] > 1:
            mid = (self.nlo[node] + self.nhi[node]) >> 1
            if pos < mid:
                sib = self.rchild[node]
                node = self.lchild[node]
            else:
                sib = self.lchild[node]
                node = self.rchild[node]
            if self.clen_u[sib] == 0:
                continue
            off = self.coff[sib]
            first_low = self.uk[off] < qk
            # min_t candidate: upper chain when the node is low side, lower
            # chain when high side; max_t the other way around
            if first_low:
                ci = _chain_extreme(&self.uk[off], &self.uv[off],
                                    self.clen_u[sib], qk, qv, 0)
                base = 0
            else:
                ci = _chain_extreme(&self.lk[off], &self.lv[off],
                                    self.clen_l[sib], qk, qv, 0)
                base = 2
            if first_low:
                ck = self.uk[off + ci]; cv = self.uv[off + ci]
            else:
                ck = self.lk[off + ci]; cv = self.lv[off + ci]
            t = (cv - qv) / (ck - qk)
            slot = base  # side*2 + 0 (min)
            if not have[slot] or t < (best_t[slot]):
                have[slot] = 1
                best_t[slot] = t
                best_k[slot] = ck
                best_v[slot] = cv
            if first_low:
                ci = _chain_extreme(&self.lk[off], &self.lv[off],
                                    self.clen_l[sib], qk, qv, 1)
                ck = self.lk[off + ci]; cv = self.lv[off + ci]
            else:
                ci = _chain_extreme(&self.uk[off], &self.uv[off],
                                    self.clen_u[sib], qk, qv, 1)
                ck = self.uk[off + ci]; cv = self.uv[off + ci]
            t = (cv - qv) / (ck - qk)
            slot = base + 1
            if not have[slot] or t > best_t[slot]:
                have[slot] = 1
                best_t[slot] = t
                best_k[slot] = ck
                best_v[slot] = cv
        for s in range(4):
            if have[s]:
                out[2 * s] = best_k[s]
                out[2 * s + 1] = best_v[s]
            else:
                out[2 * s] = NAN
                out[2 * s + 1] = NAN


def angular_extremes(double[::1] px, double[::1] py, long long[::1] order):
    """Per point (in ``order``), the tangent-extreme already-activated
    points on all four sides; see the pure-Python twin for the layout."""
    cdef Py_ssize_t n = order.shape[0]
    out_arr = np.full((n, 16), np.nan, dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef _CTree tx = _CTree(px, py)
    cdef _CTree ty = _CTree(py, px)
    cdef double buf[8]
    cdef Py_ssize_t row, c
    cdef long long idx
    for row in range(n):
        idx = order[row]
        tx.side_extremes(idx, &buf[0])
        for c in range(8):
            out[row, c] = buf[c]
        ty.side_extremes(idx, &buf[0])
        # y-tree points are (key=y, val=x); emit as (x, y)
        for c in range(4):
            out[row, 8 + 2 * c] = buf[2 * c + 1]
            out[row, 8 + 2 * c + 1] = buf[2 * c]
        tx.activate(idx)
        ty.activate(idx)
    return out_arr
