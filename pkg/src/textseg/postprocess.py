"""Mask clean-up passes applied after a segmentation model.

remove_noise keeps components that are either large enough on their own or
vouched for by an already-kept component nearby: small marks such as
punctuation survive when they sit close to a big letter block, while
isolated specks are erased. "Nearby" is judged both in bounding-box center
distance and in component enumeration order, since components are labeled
in raster order and text in one balloon gets consecutive labels.

expand_partial grows partially detected strokes to their full extent: the
page image is re-thresholded locally around every candidate region, and any
resulting dark component that overlaps the mask enough is painted in whole.
Busy regions that shatter into many components (screentone, hatching) are
skipped.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DimensionMismatch, DomainError
from .masks import BinaryMask, component_stats, connected_components


@dataclass(frozen=True)
class NoiseParams:
    good_area: int = 100  # components at least this big always survive
    index_window: int = 15  # how far to look in enumeration order
    y_slack: float = 10.0
    x_slack: float = 20.0


@dataclass(frozen=True)
class ExpandParams:
    block_size: int = 15
    offset_c: float = 30.0
    max_components: int = 10  # boxes at or above this many pieces are skipped
    min_area: int = 3  # pieces must exceed this many pixels
    min_overlap_frac: float = 0.10


def remove_noise(mask: BinaryMask, params: NoiseParams = NoiseParams()) -> BinaryMask:
    """Erase small components that no kept component vouches for.

    Vouching propagates: once a small component is kept it can vouch for
    others, so the loop reruns until no new component flips. Output pixels
    are always a subset of the input.
    """
    labels = connected_components(mask)
    stats = component_stats(labels)
    n = len(stats)
    if n == 0:
        return mask

    goods = [s.area >= params.good_area for s in stats]
    centers = [(s.bbox[0] + s.bbox[2] / 2.0, s.bbox[1] + s.bbox[3] / 2.0) for s in stats]

    changed = True
    while changed:
        changed = False
        for idx in range(n):
            if goods[idx]:
                continue
            x_c, y_c = centers[idx]
            w_c, h_c = stats[idx].bbox[2], stats[idx].bbox[3]
            for other in range(max(idx - params.index_window, 0),
                               min(idx + params.index_window, n)):
                if other == idx or not goods[other]:
                    continue
                x_o, y_o = centers[other]
                w_o, h_o = stats[other].bbox[2], stats[other].bbox[3]
                close_in_y = abs(y_c - y_o) < (h_c + h_o) / 2.0 + params.y_slack
                close_in_x = abs(x_c - x_o) < (w_c + w_o) / 2.0 + params.x_slack
                if close_in_y and close_in_x:
                    goods[idx] = True
                    changed = True
                    break

    keep = np.zeros(n + 1, dtype=bool)
    keep[1:] = goods
    return BinaryMask(keep[labels.labels])


def gaussian_kernel(block_size: int) -> np.ndarray:
    """Normalized 1D Gaussian window with the sigma tied to the window size."""
    if block_size < 3 or block_size % 2 == 0:
        raise DomainError(f"block size must be odd and >= 3, got {block_size}")
    sigma = 0.3 * ((block_size - 1) * 0.5 - 1.0) + 0.8
    half = (block_size - 1) // 2
    xs = np.arange(-half, half + 1, dtype=np.float64)
    k = np.exp(-(xs * xs) / (2.0 * sigma * sigma))
    return k / k.sum()


def adaptive_threshold(gray, block_size: int = 15, offset_c: float = 30.0) -> BinaryMask:
    """Foreground iff a pixel exceeds its Gaussian-weighted local mean minus
    offset_c. Borders replicate edge pixels."""
    arr = np.asarray(gray, dtype=np.float64)
    if arr.ndim != 2:
        raise DimensionMismatch(f"grayscale image must be 2D, got shape {arr.shape}")
    kernel = gaussian_kernel(block_size)
    mean = _kernels.local_mean(arr, kernel)
    return BinaryMask(arr > mean - offset_c)


def _candidate_boxes(thresh: np.ndarray) -> list[tuple[int, int, int, int]]:
    """Bounding boxes of bright components plus enclosed dark holes.

    Dark components that touch the image border are the page background, not
    holes, and are skipped.
    """
    h, w = thresh.shape
    boxes = []
    bright = connected_components(BinaryMask(thresh))
    boxes.extend(s.bbox for s in component_stats(bright))
    dark = connected_components(BinaryMask(~thresh))
    for s in component_stats(dark):
        x, y, bw, bh = s.bbox
        if x == 0 or y == 0 or x + bw == w or y + bh == h:
            continue
        boxes.append(s.bbox)
    return boxes


def expand_partial(gray, mask: BinaryMask, params: ExpandParams = ExpandParams()) -> BinaryMask:
    """Repaint partially detected strokes in full.

    Every candidate box of the page is re-thresholded on its own crop; the
    dark pieces inside are painted onto a fresh canvas when they exceed
    min_area pixels and at least min_overlap_frac of the piece is already in
    the mask. Boxes holding max_components or more pieces contribute nothing.
    """
    arr = np.asarray(gray, dtype=np.float64)
    if arr.ndim != 2:
        raise DimensionMismatch(f"grayscale image must be 2D, got shape {arr.shape}")
    if arr.shape != mask.shape:
        raise DimensionMismatch(f"image {arr.shape} vs mask {mask.shape}")

    thresh = adaptive_threshold(arr, params.block_size, params.offset_c)
    out = np.zeros(arr.shape, dtype=bool)

    for x, y, w, h in _candidate_boxes(thresh.data):
        crop = arr[y:y + h, x:x + w]
        local = adaptive_threshold(crop, params.block_size, params.offset_c)
        pieces = connected_components(BinaryMask(~local.data))
        if pieces.n_components >= params.max_components:
            continue
        mask_crop = mask.data[y:y + h, x:x + w]
        for label in range(1, pieces.n_components + 1):
            piece = pieces.labels == label
            area = int(piece.sum())
            if area <= params.min_area:
                continue
            overlap = int((piece & mask_crop).sum())
            if overlap > area * params.min_overlap_frac:
                out[y:y + h, x:x + w] |= piece
    return BinaryMask(out)
