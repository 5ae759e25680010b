"""Reference implementations of the training losses.

These are plain numpy definitions meant for checking a training stack
against, not for backprop. The mixed loss combines a focal term with the
log of the dice coefficient; alpha=0, gamma=1 reduces it to the plain
dice log loss, which is the configuration that performed best for hard
text in our experiments.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionMismatch, DomainError
from .masks import BinaryMask

DICE_SMOOTH = 1e-6
FOCAL_EPS = 1e-7


def _prob(p) -> np.ndarray:
    arr = np.asarray(p, dtype=np.float64)
    if arr.ndim != 2:
        raise DimensionMismatch(f"probability map must be 2D, got shape {arr.shape}")
    if arr.min() < 0.0 or arr.max() > 1.0:
        raise DomainError("probabilities must lie in [0, 1]")
    return arr


def _pair(p, gt: BinaryMask) -> tuple[np.ndarray, np.ndarray]:
    arr = _prob(p)
    if arr.shape != gt.shape:
        raise DimensionMismatch(f"probability map {arr.shape} vs gt {gt.shape}")
    return arr, gt.data.astype(np.float64)


def dice_coefficient(p, gt: BinaryMask, smooth: float = DICE_SMOOTH) -> float:
    """Soft overlap in (0, 1]; the smoothing keeps empty-vs-empty at 1."""
    if smooth <= 0.0:
        raise DomainError(f"smooth must be positive, got {smooth}")
    arr, g = _pair(p, gt)
    inter = float((arr * g).sum())
    return (2.0 * inter + smooth) / (float(arr.sum()) + float(g.sum()) + smooth)


def focal_loss(p, gt: BinaryMask, gamma: float = 2.0) -> float:
    """Mean focal term; gamma=0 is plain binary cross entropy."""
    if gamma < 0.0:
        raise DomainError(f"gamma must be >= 0, got {gamma}")
    arr, g = _pair(p, gt)
    p_t = np.where(g > 0.5, arr, 1.0 - arr)
    p_t = np.clip(p_t, FOCAL_EPS, 1.0 - FOCAL_EPS)
    return float(np.mean(-((1.0 - p_t) ** gamma) * np.log(p_t)))


def mix_loss(p, gt: BinaryMask, alpha: float = 0.0, gamma: float = 1.0) -> float:
    """alpha * focal - log(dice). Always finite thanks to the smoothing."""
    if alpha < 0.0:
        raise DomainError(f"alpha must be >= 0, got {alpha}")
    return alpha * focal_loss(p, gt, gamma) - float(np.log(dice_coefficient(p, gt)))
