"""Pure numpy/scipy implementations of the raster kernels.

Semantics must match _core.pyx exactly; the test suite compares both
backends on the same inputs.
"""

from __future__ import annotations

import numpy as np
from scipy import ndimage

_EIGHT = np.ones((3, 3), dtype=bool)
_INT32_MAX = np.iinfo(np.int32).max


def label8(mask):
    raw, n = ndimage.label(mask, structure=_EIGHT)
    if n == 0:
        return raw.astype(np.int32), 0
    # relabel so that label order follows the raster position of each
    # component's first pixel, matching the compiled backend
    flat = raw.ravel()
    first = np.full(n + 1, flat.size, dtype=np.int64)
    np.minimum.at(first, flat, np.arange(flat.size, dtype=np.int64))
    order = np.argsort(first[1:], kind="stable")
    remap = np.zeros(n + 1, dtype=np.int32)
    remap[order + 1] = np.arange(1, n + 1, dtype=np.int32)
    return remap[raw], n


def flood(seeds, pred):
    h, w = seeds.shape
    predb = pred.astype(bool)
    out = np.where(predb & (seeds > 0), seeds, 0).astype(np.int32)
    if not out.any():
        return out
    while True:
        lab = np.where(out > 0, out, _INT32_MAX)
        padded = np.pad(lab, 1, constant_values=_INT32_MAX)
        best = np.full((h, w), _INT32_MAX, dtype=np.int32)
        for dy in (-1, 0, 1):
            for dx in (-1, 0, 1):
                if dy == 0 and dx == 0:
                    continue
                np.minimum(best, padded[1 + dy:1 + dy + h, 1 + dx:1 + dx + w], out=best)
        newly = (out == 0) & predb & (best != _INT32_MAX)
        if not newly.any():
            return out
        out[newly] = best[newly]


def erode_cross(mask, iterations):
    m = mask.astype(bool)
    for _ in range(iterations):
        p = np.pad(m, 1, constant_values=False)
        m = m & p[:-2, 1:-1] & p[2:, 1:-1] & p[1:-1, :-2] & p[1:-1, 2:]
    return m.astype(np.uint8)


def dilate_cross(mask, iterations):
    m = mask.astype(bool)
    for _ in range(iterations):
        p = np.pad(m, 1, constant_values=False)
        m = m | p[:-2, 1:-1] | p[2:, 1:-1] | p[1:-1, :-2] | p[1:-1, 2:]
    return m.astype(np.uint8)


def local_mean(img, kernel):
    tmp = ndimage.correlate1d(img, kernel, axis=1, mode="nearest")
    return ndimage.correlate1d(tmp, kernel, axis=0, mode="nearest")
