# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled raster kernels: labeling, seeded flooding, morphology, local means.

Each function has a pure-python twin in _numpy.py with identical semantics;
the dispatch layer in __init__.py picks whichever is importable.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def label8(cnp.uint8_t[:, ::1] mask not None):
    """8-connected component labeling.

    Labels are assigned in raster order of each component's first pixel
    (topmost, then leftmost), starting at 1. Returns (labels, count).
    """
    cdef Py_ssize_t h = mask.shape[0]
    cdef Py_ssize_t w = mask.shape[1]
    labels_arr = np.zeros((h, w), dtype=np.int32)
    cdef cnp.int32_t[:, ::1] labels = labels_arr
    stack_arr = np.empty(h * w, dtype=np.intp)
    cdef cnp.intp_t[::1] stack = stack_arr
    cdef Py_ssize_t y, x, cy, cx, ny, nx, idx, top
    cdef int dy, dx
    cdef cnp.int32_t n = 0

    for y in range(h):
        for x in range(w):
            if mask[y, x] != 0 and labels[y, x] == 0:
                n += 1
                labels[y, x] = n
                stack[0] = y * w + x
                top = 1
                while top > 0:
                    top -= 1
                    idx = stack[top]
                    cy = idx // w
                    cx = idx - cy * w
                    for dy in range(-1, 2):
                        for dx in range(-1, 2):
                            ny = cy + dy
                            nx = cx + dx
                            if 0 <= ny < h and 0 <= nx < w:
                                if mask[ny, nx] != 0 and labels[ny, nx] == 0:
                                    labels[ny, nx] = n
                                    stack[top] = ny * w + nx
                                    top += 1
    return labels_arr, int(n)


def flood(cnp.int32_t[:, ::1] seeds not None, cnp.uint8_t[:, ::1] pred not None):
    """Grow seed labels across the pred foreground by 8-connected hops.

    Breadth-first by rounds: a pixel claimed in round k is at hop distance k
    from the nearest seed, and takes the smallest label among its labeled
    neighbors from round k-1. Pixels outside pred stay 0.
    """
    cdef Py_ssize_t h = seeds.shape[0]
    cdef Py_ssize_t w = seeds.shape[1]
    out_arr = np.zeros((h, w), dtype=np.int32)
    cdef cnp.int32_t[:, ::1] out = out_arr
    prop_arr = np.zeros((h, w), dtype=np.int32)
    cdef cnp.int32_t[:, ::1] prop = prop_arr
    cur_arr = np.empty(h * w, dtype=np.intp)
    nxt_arr = np.empty(h * w, dtype=np.intp)
    cdef cnp.intp_t[::1] cur = cur_arr
    cdef cnp.intp_t[::1] nxt = nxt_arr
    cdef Py_ssize_t y, x, ny, nx, idx, i, cnt, ncnt
    cdef int dy, dx
    cdef cnp.int32_t lab

    cnt = 0
    for y in range(h):
        for x in range(w):
            if pred[y, x] != 0 and seeds[y, x] > 0:
                out[y, x] = seeds[y, x]
                cur[cnt] = y * w + x
                cnt += 1

    while cnt > 0:
        ncnt = 0
        for i in range(cnt):
            idx = cur[i]
            y = idx // w
            x = idx - y * w
            lab = out[y, x]
            for dy in range(-1, 2):
                for dx in range(-1, 2):
                    ny = y + dy
                    nx = x + dx
                    if 0 <= ny < h and 0 <= nx < w:
                        if pred[ny, nx] != 0 and out[ny, nx] == 0:
                            if prop[ny, nx] == 0:
                                prop[ny, nx] = lab
                                nxt[ncnt] = ny * w + nx
                                ncnt += 1
                            elif lab < prop[ny, nx]:
                                prop[ny, nx] = lab
        for i in range(ncnt):
            idx = nxt[i]
            y = idx // w
            x = idx - y * w
            out[y, x] = prop[y, x]
            prop[y, x] = 0
        cur_arr, nxt_arr = nxt_arr, cur_arr
        cur = cur_arr
        nxt = nxt_arr
        cnt = ncnt
    return out_arr


def erode_cross(cnp.uint8_t[:, ::1] mask not None, int iterations):
    """Binary erosion with the 3x3 cross element; out-of-bounds is background."""
    cdef Py_ssize_t h = mask.shape[0]
    cdef Py_ssize_t w = mask.shape[1]
    a_arr = np.ascontiguousarray(mask, dtype=np.uint8).copy()
    b_arr = np.empty((h, w), dtype=np.uint8)
    cdef cnp.uint8_t[:, ::1] a = a_arr
    cdef cnp.uint8_t[:, ::1] b = b_arr
    cdef Py_ssize_t y, x
    cdef int it
    cdef cnp.uint8_t keep

    for it in range(iterations):
        for y in range(h):
            for x in range(w):
                keep = 0
                if a[y, x] != 0:
                    if y > 0 and a[y - 1, x] != 0:
                        if y < h - 1 and a[y + 1, x] != 0:
                            if x > 0 and a[y, x - 1] != 0:
                                if x < w - 1 and a[y, x + 1] != 0:
                                    keep = 1
                b[y, x] = keep
        a_arr, b_arr = b_arr, a_arr
        a = a_arr
        b = b_arr
    return a_arr


def dilate_cross(cnp.uint8_t[:, ::1] mask not None, int iterations):
    """Binary dilation with the 3x3 cross element.

    Scatters from foreground pixels instead of gathering at every pixel,
    which wins on the sparse masks this package works with.
    """
    cdef Py_ssize_t h = mask.shape[0]
    cdef Py_ssize_t w = mask.shape[1]
    a_arr = np.ascontiguousarray(mask, dtype=np.uint8).copy()
    b_arr = np.empty((h, w), dtype=np.uint8)
    cdef cnp.uint8_t[:, ::1] a = a_arr
    cdef cnp.uint8_t[:, ::1] b = b_arr
    cdef Py_ssize_t y, x
    cdef int it

    for it in range(iterations):
        b[:, :] = 0
        for y in range(h):
            for x in range(w):
                if a[y, x] != 0:
                    b[y, x] = 1
                    if y > 0:
                        b[y - 1, x] = 1
                    if y < h - 1:
                        b[y + 1, x] = 1
                    if x > 0:
                        b[y, x - 1] = 1
                    if x < w - 1:
                        b[y, x + 1] = 1
        a_arr, b_arr = b_arr, a_arr
        a = a_arr
        b = b_arr
    return a_arr


def local_mean(cnp.float64_t[:, ::1] img not None, cnp.float64_t[::1] kernel not None):
    """Separable weighted local mean with replicated borders.

    kernel is a normalized 1D window applied along rows, then columns.
    """
    cdef Py_ssize_t h = img.shape[0]
    cdef Py_ssize_t w = img.shape[1]
    cdef Py_ssize_t k = kernel.shape[0]
    cdef Py_ssize_t r = k // 2
    tmp_arr = np.empty((h, w), dtype=np.float64)
    out_arr = np.empty((h, w), dtype=np.float64)
    cdef cnp.float64_t[:, ::1] tmp = tmp_arr
    cdef cnp.float64_t[:, ::1] out = out_arr
    cdef Py_ssize_t y, x, j, xx, yy
    cdef double s

    for y in range(h):
        for x in range(w):
            s = 0.0
            for j in range(k):
                xx = x + j - r
                if xx < 0:
                    xx = 0
                elif xx >= w:
                    xx = w - 1
                s += kernel[j] * img[y, xx]
            tmp[y, x] = s
    for y in range(h):
        for x in range(w):
            s = 0.0
            for j in range(k):
                yy = y + j - r
                if yy < 0:
                    yy = 0
                elif yy >= h:
                    yy = h - 1
                s += kernel[j] * tmp[yy, x]
            out[y, x] = s
    return out_arr
