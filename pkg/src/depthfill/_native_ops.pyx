# cython: boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled inner loops for the filtering kernels.

Thin, allocation-light translations of the operations in _numpy_ops. The box
max uses the two-scan running-max decomposition (block prefix/suffix maxima),
so cost per pixel is independent of window size; shaped kernels use an offset
list; the 3x3/5x5 medians run a comparator network over whole rows so the
compiler can vectorize across x.
"""

import numpy as np

from libc.math cimport exp
from libc.stdlib cimport free, malloc


cdef inline float _fmax(float a, float b) nogil:
    return b if b > a else a

cdef inline float _fmin(float a, float b) nogil:
    return b if b < a else a

cdef inline Py_ssize_t _clamp(Py_ssize_t i, Py_ssize_t n) nogil:
    if i < 0:
        return 0
    if i >= n:
        return n - 1
    return i


def box_max(float[:, ::1] v, int radius):
    """Max over a (2r+1) square window, replicate borders (two 1-D passes)."""
    cdef Py_ssize_t h = v.shape[0], w = v.shape[1]
    tmp_arr = np.empty((h, w), dtype=np.float32)
    out_arr = np.empty((h, w), dtype=np.float32)
    cdef float[:, ::1] tmp = tmp_arr
    cdef float[:, ::1] out = out_arr
    s_arr = np.empty(w, dtype=np.float32)
    p_arr = np.empty(w, dtype=np.float32)
    cdef float[::1] s = s_arr
    cdef float[::1] p = p_arr
    with nogil:
        _max1d_rows(v, tmp, s, p, radius)
    _max1d_cols(tmp, out, radius)
    return out_arr


cdef void _max1d_rows(
    float[:, ::1] v, float[:, ::1] out, float[::1] s, float[::1] p, Py_ssize_t r
) nogil:
    """Running max along each row: out[y,x] = max(v[y, x-r .. x+r]) clipped."""
    cdef Py_ssize_t h = v.shape[0], w = v.shape[1]
    cdef Py_ssize_t k = 2 * r + 1
    cdef Py_ssize_t y, x, i, a, b
    cdef float m
    for y in range(h):
        if w <= 2 * r:
            for x in range(w):
                a = x - r
                if a < 0:
                    a = 0
                b = x + r + 1
                if b > w:
                    b = w
                m = v[y, a]
                for i in range(a + 1, b):
                    m = _fmax(m, v[y, i])
                out[y, x] = m
            continue
        # block prefix maxima (blocks of k aligned at 0)
        for i in range(w):
            if i % k == 0:
                s[i] = v[y, i]
            else:
                s[i] = _fmax(s[i - 1], v[y, i])
        # block suffix maxima
        for i in range(w - 1, -1, -1):
            if i == w - 1 or (i + 1) % k == 0:
                p[i] = v[y, i]
            else:
                p[i] = _fmax(p[i + 1], v[y, i])
        for x in range(r, w - r):
            out[y, x] = _fmax(p[x - r], s[x + r])
        # clipped windows at the borders, computed directly
        for x in range(0, r):
            m = v[y, 0]
            for i in range(1, x + r + 1):
                m = _fmax(m, v[y, i])
            out[y, x] = m
        for x in range(w - r, w):
            m = v[y, x - r]
            for i in range(x - r + 1, w):
                m = _fmax(m, v[y, i])
            out[y, x] = m


cdef void _max1d_cols(float[:, ::1] v, float[:, ::1] out, Py_ssize_t r):
    """Running max along each column, done row-wise so x vectorizes."""
    cdef Py_ssize_t h = v.shape[0], w = v.shape[1]
    cdef Py_ssize_t k = 2 * r + 1
    cdef Py_ssize_t y, x, i, a, b
    s_arr = np.empty((h, w), dtype=np.float32)
    p_arr = np.empty((h, w), dtype=np.float32)
    cdef float[:, ::1] s = s_arr
    cdef float[:, ::1] p = p_arr
    with nogil:
        if h <= 2 * r:
            for y in range(h):
                a = y - r
                if a < 0:
                    a = 0
                b = y + r + 1
                if b > h:
                    b = h
                for x in range(w):
                    out[y, x] = v[a, x]
                for i in range(a + 1, b):
                    for x in range(w):
                        out[y, x] = _fmax(out[y, x], v[i, x])
        else:
            for y in range(h):
                if y % k == 0:
                    for x in range(w):
                        s[y, x] = v[y, x]
                else:
                    for x in range(w):
                        s[y, x] = _fmax(s[y - 1, x], v[y, x])
            for y in range(h - 1, -1, -1):
                if y == h - 1 or (y + 1) % k == 0:
                    for x in range(w):
                        p[y, x] = v[y, x]
                else:
                    for x in range(w):
                        p[y, x] = _fmax(p[y + 1, x], v[y, x])
            for y in range(r, h - r):
                for x in range(w):
                    out[y, x] = _fmax(p[y - r, x], s[y + r, x])
            for y in range(0, r):
                for x in range(w):
                    out[y, x] = v[0, x]
                for i in range(1, y + r + 1):
                    for x in range(w):
                        out[y, x] = _fmax(out[y, x], v[i, x])
            for y in range(h - r, h):
                for x in range(w):
                    out[y, x] = v[y - r, x]
                for i in range(y - r + 1, h):
                    for x in range(w):
                        out[y, x] = _fmax(out[y, x], v[i, x])


def box_min(float[:, ::1] v, int radius):
    # min(a, b) == -max(-a, -b), exact for floats
    neg = np.negative(v)
    return np.negative(box_max(neg, radius))


def offsets_max(float[:, ::1] v, int[:, ::1] offsets):
    """Max over an arbitrary (dy, dx) offset set, replicate borders."""
    cdef Py_ssize_t h = v.shape[0], w = v.shape[1]
    cdef Py_ssize_t n = offsets.shape[0]
    out_arr = np.empty((h, w), dtype=np.float32)
    cdef float[:, ::1] out = out_arr
    cdef Py_ssize_t y, x, t, sy, x0, x1
    cdef Py_ssize_t dy, dx
    cdef float e
    with nogil:
        for y in range(h):
            for x in range(w):
                out[y, x] = -3.4e38
            for t in range(n):
                dy = offsets[t, 0]
                dx = offsets[t, 1]
                sy = _clamp(y + dy, h)
                # x + dx clamps to 0 on [0, x0) and to w-1 on [x1, w)
                x0 = -dx if dx < 0 else 0
                if x0 > w:
                    x0 = w
                x1 = w - dx if dx > 0 else w
                if x1 < x0:
                    x1 = x0
                e = v[sy, 0]
                for x in range(0, x0):
                    out[y, x] = _fmax(out[y, x], e)
                for x in range(x0, x1):
                    out[y, x] = _fmax(out[y, x], v[sy, x + dx])
                e = v[sy, w - 1]
                for x in range(x1, w):
                    out[y, x] = _fmax(out[y, x], e)
    return out_arr


def offsets_min(float[:, ::1] v, int[:, ::1] offsets):
    neg = np.negative(v)
    return np.negative(offsets_max(neg, offsets))


def median_network(float[:, ::1] v, int size, int[:, ::1] pairs):
    """Median filter via a comparator network applied to whole row strips."""
    cdef Py_ssize_t h = v.shape[0], w = v.shape[1]
    cdef Py_ssize_t r = size // 2
    cdef Py_ssize_t nk = size * size
    cdef Py_ssize_t npairs = pairs.shape[0]
    buf_arr = np.empty((nk, w), dtype=np.float32)
    out_arr = np.empty((h, w), dtype=np.float32)
    cdef float[:, ::1] buf = buf_arr
    cdef float[:, ::1] out = out_arr
    cdef Py_ssize_t y, x, j, t, sy, dy, dx, x0, x1, a, b
    cdef Py_ssize_t mid = nk // 2
    cdef float lo, hi, e
    with nogil:
        for y in range(h):
            j = 0
            for dy in range(-r, r + 1):
                sy = _clamp(y + dy, h)
                for dx in range(-r, r + 1):
                    x0 = -dx if dx < 0 else 0
                    if x0 > w:
                        x0 = w
                    x1 = w - dx if dx > 0 else w
                    if x1 < x0:
                        x1 = x0
                    e = v[sy, 0]
                    for x in range(0, x0):
                        buf[j, x] = e
                    for x in range(x0, x1):
                        buf[j, x] = v[sy, x + dx]
                    e = v[sy, w - 1]
                    for x in range(x1, w):
                        buf[j, x] = e
                    j += 1
            for t in range(npairs):
                a = pairs[t, 0]
                b = pairs[t, 1]
                for x in range(w):
                    lo = _fmin(buf[a, x], buf[b, x])
                    hi = _fmax(buf[a, x], buf[b, x])
                    buf[a, x] = lo
                    buf[b, x] = hi
            for x in range(w):
                out[y, x] = buf[mid, x]
    return out_arr


cdef float _select_kth(float* a, Py_ssize_t n, Py_ssize_t k) nogil:
    """k-th smallest (0-based) by in-place Hoare quickselect, middle pivot."""
    cdef Py_ssize_t lo = 0, hi = n - 1, i, j
    cdef float pivot, t
    while lo < hi:
        pivot = a[(lo + hi) // 2]
        i = lo
        j = hi
        while i <= j:
            while a[i] < pivot:
                i += 1
            while a[j] > pivot:
                j -= 1
            if i <= j:
                t = a[i]
                a[i] = a[j]
                a[j] = t
                i += 1
                j -= 1
        if k <= j:
            hi = j
        elif k >= i:
            lo = i
        else:
            return a[k]
    return a[k]


def median_generic(float[:, ::1] v, int size):
    """Median filter for window sizes without a precomputed network."""
    cdef Py_ssize_t h = v.shape[0], w = v.shape[1]
    cdef Py_ssize_t r = size // 2
    cdef Py_ssize_t nk = size * size
    out_arr = np.empty((h, w), dtype=np.float32)
    cdef float[:, ::1] out = out_arr
    cdef float* scratch = <float*> malloc(nk * sizeof(float))
    if scratch == NULL:
        raise MemoryError()
    cdef Py_ssize_t y, x, dy, dx, j
    try:
        with nogil:
            for y in range(h):
                for x in range(w):
                    j = 0
                    for dy in range(-r, r + 1):
                        for dx in range(-r, r + 1):
                            scratch[j] = v[_clamp(y + dy, h), _clamp(x + dx, w)]
                            j += 1
                    out[y, x] = _select_kth(scratch, nk, nk // 2)
    finally:
        free(scratch)
    return out_arr


def gaussian_separable(float[:, ::1] v, double[::1] weights):
    """Separable convolution, float64 accumulation, replicate borders."""
    cdef Py_ssize_t h = v.shape[0], w = v.shape[1]
    cdef Py_ssize_t k = weights.shape[0]
    cdef Py_ssize_t r = k // 2
    tmp_arr = np.zeros((h, w), dtype=np.float64)
    out_arr = np.empty((h, w), dtype=np.float32)
    acc_arr = np.empty(w, dtype=np.float64)
    cdef double[:, ::1] tmp = tmp_arr
    cdef float[:, ::1] out = out_arr
    cdef double[::1] acc = acc_arr
    cdef Py_ssize_t y, x, t, sy
    cdef double a, wt
    with nogil:
        # horizontal
        for y in range(h):
            for x in range(w):
                if r <= x < w - r:
                    continue
                a = 0.0
                for t in range(k):
                    a += weights[t] * v[y, _clamp(x + t - r, w)]
                tmp[y, x] = a
            for t in range(k):
                wt = weights[t]
                for x in range(r, w - r):
                    tmp[y, x] += wt * v[y, x + t - r]
        # vertical
        for y in range(h):
            for x in range(w):
                acc[x] = 0.0
            for t in range(k):
                wt = weights[t]
                sy = _clamp(y + t - r, h)
                for x in range(w):
                    acc[x] += wt * tmp[sy, x]
            for x in range(w):
                out[y, x] = <float> acc[x]
    return out_arr


def bilateral_filter(float[:, ::1] v, int size, double sigma_value, double sigma_space):
    """Bilateral blur: spatial Gaussian weight times a value-similarity weight."""
    cdef Py_ssize_t h = v.shape[0], w = v.shape[1]
    cdef Py_ssize_t r = size // 2
    cdef Py_ssize_t k = size
    out_arr = np.empty((h, w), dtype=np.float32)
    cdef float[:, ::1] out = out_arr
    space_arr = np.empty((k, k), dtype=np.float64)
    cdef double[:, ::1] ws = space_arr
    cdef double inv2_value = -0.5 / (sigma_value * sigma_value)
    cdef double inv2_space = -0.5 / (sigma_space * sigma_space)
    cdef Py_ssize_t y, x, dy, dx
    cdef double c, q, wgt, num, den
    for dy in range(-r, r + 1):
        for dx in range(-r, r + 1):
            ws[dy + r, dx + r] = exp((dy * dy + dx * dx) * inv2_space)
    with nogil:
        for y in range(h):
            for x in range(w):
                c = v[y, x]
                num = 0.0
                den = 0.0
                for dy in range(-r, r + 1):
                    for dx in range(-r, r + 1):
                        q = v[_clamp(y + dy, h), _clamp(x + dx, w)]
                        wgt = ws[dy + r, dx + r] * exp((q - c) * (q - c) * inv2_value)
                        num += wgt * q
                        den += wgt
                out[y, x] = <float> (num / den)
    return out_arr
