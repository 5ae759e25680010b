"""Raster mask types and the pixel operations everything else builds on.

Conventions used throughout the package:

* masks are 2D, row-major, indexed [y, x]
* connectivity for components is 8 (edges and corners)
* morphology uses the 3x3 cross element (4-neighborhood) and treats
  out-of-bounds pixels as background
* component labels start at 1 and follow the raster position of each
  component's first pixel (topmost, then leftmost)
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum

import numpy as np

from . import _kernels
from .errors import DimensionMismatch, DomainError


class TextClass(IntEnum):
    NON_TEXT = 0
    EASY = 1
    HARD = 2


def _as_2d(data, name: str) -> np.ndarray:
    arr = np.asarray(data)
    if arr.ndim != 2:
        raise DimensionMismatch(f"{name} must be 2D, got shape {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise DimensionMismatch(f"{name} must be non-empty, got shape {arr.shape}")
    return arr


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class BinaryMask:
    """A boolean raster; True marks text pixels."""

    data: np.ndarray

    def __post_init__(self):
        arr = _as_2d(self.data, "mask")
        if arr.dtype != np.bool_:
            arr = arr.astype(bool)
        else:
            arr = arr.copy()
        object.__setattr__(self, "data", _freeze(arr))

    @property
    def height(self) -> int:
        return self.data.shape[0]

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    @property
    def area(self) -> int:
        return int(self.data.sum())

    def __eq__(self, other) -> bool:
        if not isinstance(other, BinaryMask):
            return NotImplemented
        return self.data.shape == other.data.shape and bool(
            np.array_equal(self.data, other.data)
        )


@dataclass(frozen=True)
class ClassMask:
    """A three-way raster over {non-text, easy text, hard text}."""

    data: np.ndarray

    def __post_init__(self):
        arr = _as_2d(self.data, "class mask")
        arr = arr.astype(np.uint8)
        if arr.max(initial=0) > 2:
            raise DomainError("class mask values must be 0 (non-text), 1 (easy) or 2 (hard)")
        object.__setattr__(self, "data", _freeze(arr))

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    def text_mask(self) -> BinaryMask:
        """All text pixels regardless of class."""
        return BinaryMask(self.data != TextClass.NON_TEXT)

    def class_pixels(self, cls: TextClass) -> BinaryMask:
        return BinaryMask(self.data == cls)


@dataclass(frozen=True)
class LabelMap:
    """Integer component labels: 0 is background, components are 1..n."""

    labels: np.ndarray
    n_components: int

    def __post_init__(self):
        arr = _as_2d(self.labels, "label map").astype(np.int32)
        if self.n_components < 0:
            raise DomainError("n_components must be >= 0")
        counts = np.bincount(arr.ravel(), minlength=self.n_components + 1)
        if counts.size > self.n_components + 1:
            raise DomainError(
                f"label {arr.max()} exceeds n_components={self.n_components}"
            )
        if arr.min(initial=0) < 0:
            raise DomainError("labels must be non-negative")
        missing = np.flatnonzero(counts[1:] == 0)
        if missing.size:
            raise DomainError(f"label {missing[0] + 1} has no pixels")
        object.__setattr__(self, "labels", _freeze(arr))

    @property
    def shape(self) -> tuple[int, int]:
        return self.labels.shape

    def component_mask(self, label: int) -> BinaryMask:
        if not 1 <= label <= self.n_components:
            raise DomainError(f"label {label} outside 1..{self.n_components}")
        return BinaryMask(self.labels == label)


@dataclass(frozen=True)
class ComponentStats:
    label: int
    area: int
    bbox: tuple[int, int, int, int]  # x, y, w, h


def connected_components(mask: BinaryMask) -> LabelMap:
    """Label the 8-connected components of a binary mask."""
    labels, n = _kernels.label8(mask.data)
    return LabelMap(labels, n)


def component_stats(labels: LabelMap) -> list[ComponentStats]:
    """Per-component pixel count and bounding box, ordered by label."""
    n = labels.n_components
    if n == 0:
        return []
    arr = labels.labels
    areas = np.bincount(arr.ravel(), minlength=n + 1)
    out = []
    from scipy import ndimage

    for label, sl in enumerate(ndimage.find_objects(arr, max_label=n), start=1):
        ys, xs = sl
        out.append(
            ComponentStats(
                label=label,
                area=int(areas[label]),
                bbox=(int(xs.start), int(ys.start), int(xs.stop - xs.start), int(ys.stop - ys.start)),
            )
        )
    return out


def erode(mask: BinaryMask, iterations: int = 1) -> BinaryMask:
    """Erode with the cross element; border pixels erode against background."""
    if iterations < 1:
        raise DomainError(f"iterations must be >= 1, got {iterations}")
    return BinaryMask(_kernels.erode_cross(mask.data, iterations))


def dilate(mask: BinaryMask, iterations: int = 1) -> BinaryMask:
    """Dilate with the cross element."""
    if iterations < 1:
        raise DomainError(f"iterations must be >= 1, got {iterations}")
    return BinaryMask(_kernels.dilate_cross(mask.data, iterations))


def binarize(prob, threshold: float) -> BinaryMask:
    """Threshold a probability map: text iff value > threshold (strict)."""
    arr = _as_2d(prob, "probability map").astype(np.float64)
    if not 0.0 < threshold < 1.0:
        raise DomainError(f"threshold must lie strictly inside (0, 1), got {threshold}")
    if arr.min() < 0.0 or arr.max() > 1.0:
        raise DomainError("probability values must lie in [0, 1]")
    return BinaryMask(arr > threshold)
