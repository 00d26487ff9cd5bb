# cython: boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled two-pass labeling kernel.

Mirrors ``vesiseg._ccl_py.label_scan`` exactly; see that module for the
algorithm description.
"""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport int32_t, uint8_t

cnp.import_array()


cdef inline int32_t _find(int32_t* parent, int32_t x) noexcept nogil:
    cdef int32_t root = x
    cdef int32_t nxt
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        nxt = parent[x]
        parent[x] = root
        x = nxt
    return root


cdef inline void _union(int32_t* parent, int32_t a, int32_t b) noexcept nogil:
    cdef int32_t ra = _find(parent, a)
    cdef int32_t rb = _find(parent, b)
    if ra < rb:
        parent[rb] = ra
    elif rb < ra:
        parent[ra] = rb


cdef inline int32_t _min_nonzero(int32_t a, int32_t b) noexcept nogil:
    if a == 0:
        return b
    if b == 0 or a < b:
        return a
    return b


def label_scan(const uint8_t[:, ::1] img, int connectivity=4):
    """Label the zero-valued pixels of ``img``; return ``(labels, n)``."""
    if connectivity != 4 and connectivity != 8:
        raise ValueError(f"connectivity must be 4 or 8, got {connectivity}")
    cdef Py_ssize_t h = img.shape[0]
    cdef Py_ssize_t w = img.shape[1]
    out = np.zeros((h, w), dtype=np.int32)
    cdef int32_t[:, ::1] lab = out
    parent_arr = np.empty(h * w // 2 + 2, dtype=np.int32)
    cdef int32_t[::1] parent_view = parent_arr
    cdef int32_t* parent = &parent_view[0]
    cdef int32_t next_label = 1
    cdef int32_t a, l, ul, ur, k, n = 0
    cdef Py_ssize_t x, y
    cdef bint eight = connectivity == 8

    with nogil:
        parent[0] = 0
        for y in range(h):
            for x in range(w):
                if img[y, x] != 0:
                    continue
                a = lab[y - 1, x] if y > 0 else 0
                l = lab[y, x - 1] if x > 0 else 0
                if eight:
                    ul = lab[y - 1, x - 1] if (y > 0 and x > 0) else 0
                    ur = lab[y - 1, x + 1] if (y > 0 and x + 1 < w) else 0
                    k = _min_nonzero(_min_nonzero(a, l), _min_nonzero(ul, ur))
                else:
                    k = _min_nonzero(a, l)
                if k == 0:
                    parent[next_label] = next_label
                    k = next_label
                    next_label += 1
                else:
                    if a != 0 and a != k:
                        _union(parent, k, a)
                    if l != 0 and l != k:
                        _union(parent, k, l)
                    if eight:
                        if ul != 0 and ul != k:
                            _union(parent, k, ul)
                        if ur != 0 and ur != k:
                            _union(parent, k, ur)
                lab[y, x] = k

        # parent[k] <= k always (smaller root absorbs larger), so one ascending
        # pass resolves every label; roots appear in first-occurrence order
        for k in range(1, next_label):
            a = parent[k]
            if a == k:
                n += 1
                parent[k] = -n
            else:
                parent[k] = parent[a]
        for y in range(h):
            for x in range(w):
                if lab[y, x] != 0:
                    lab[y, x] = -parent[lab[y, x]]
    return out, int(n)
