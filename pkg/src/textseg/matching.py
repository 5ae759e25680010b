"""Associating predicted text pixels with ground-truth components.

Every predicted foreground pixel is assigned to at most one GT component by
flooding outward from the pixels where prediction and GT overlap: a pixel
goes to the component whose overlap region is nearest in 8-connected hops
through the prediction foreground, ties resolved toward the smaller GT
label. Prediction pixels with no path to any overlap stay unassigned, and a
predicted component none of whose pixels were assigned counts as a false
positive.

Coverage and accuracy of each GT component are then plain pixel ratios
against that component's assigned region. The three "view" arguments let the
relaxed evaluation mode substitute eroded/dilated variants of each component
without changing the association itself.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DimensionMismatch
from .masks import BinaryMask, LabelMap, connected_components

# crop views: label -> (x0, y0, bool window). Views of different components
# may overlap once dilated, which is why this is not a LabelMap.


@dataclass(frozen=True)
class ComponentViews:
    """One boolean window per GT component, anchored at (x0, y0)."""

    boxes: dict[int, tuple[int, int, np.ndarray]]

    @classmethod
    def from_label_map(cls, gt: LabelMap) -> "ComponentViews":
        boxes = {}
        for label, (x0, y0, win) in _component_windows(gt, pad=0).items():
            boxes[label] = (x0, y0, win)
        return cls(boxes)

    def area(self, label: int) -> int:
        return int(self.boxes[label][2].sum())


def _component_windows(gt: LabelMap, pad: int) -> dict[int, tuple[int, int, np.ndarray]]:
    from scipy import ndimage

    h, w = gt.shape
    out = {}
    slices = ndimage.find_objects(gt.labels, max_label=gt.n_components)
    for label, sl in enumerate(slices, start=1):
        ys, xs = sl
        y0 = max(ys.start - pad, 0)
        y1 = min(ys.stop + pad, h)
        x0 = max(xs.start - pad, 0)
        x1 = min(xs.stop + pad, w)
        out[label] = (x0, y0, gt.labels[y0:y1, x0:x1] == label)
    return out


def identity_views(gt: LabelMap) -> ComponentViews:
    """Views equal to the components themselves (normal mode)."""
    return ComponentViews.from_label_map(gt)


def relaxed_views(gt: LabelMap, iterations: int) -> tuple[ComponentViews, ComponentViews, ComponentViews]:
    """Per-component eroded and dilated views for relaxed scoring.

    Returns (cov_views, acc_views, match_views): coverage and the match test
    use the eroded component, accuracy uses the dilated one. A component that
    erodes to nothing falls back to its original pixels so it stays
    matchable. Erosion and dilation run inside each component's padded
    window; per-component results may overlap, which ComponentViews allows.
    """
    cov = {}
    acc = {}
    match = {}
    for label, (x0, y0, win) in _component_windows(gt, pad=iterations).items():
        eroded = _kernels.erode_cross(win, iterations).astype(bool)
        if not eroded.any():
            eroded = win
        dilated = _kernels.dilate_cross(win, iterations).astype(bool)
        cov[label] = (x0, y0, eroded)
        acc[label] = (x0, y0, dilated)
        match[label] = (x0, y0, eroded)
    return ComponentViews(cov), ComponentViews(acc), ComponentViews(match)


@dataclass(frozen=True)
class GtComponentResult:
    gt_label: int
    matched: bool
    intersection_area: int  # pixels shared by the accuracy view and the assigned region
    assigned_pred_area: int
    cov: float
    acc: float


@dataclass(frozen=True)
class MatchResult:
    per_gt: tuple[GtComponentResult, ...]
    tp: int
    fp: int
    m: int
    n_detections: int


def watershed_assign(gt: LabelMap, pred: BinaryMask) -> np.ndarray:
    """Assignment map: each pred pixel gets the label of the nearest GT
    component it overlaps-or-reaches, 0 if unreachable."""
    if gt.shape != pred.shape:
        raise DimensionMismatch(f"label map {gt.shape} vs prediction {pred.shape}")
    seeds = np.where(pred.data, gt.labels, 0).astype(np.int32)
    return _kernels.flood(seeds, pred.data)


def match(
    gt: LabelMap,
    pred: BinaryMask,
    *,
    cov_views: ComponentViews,
    acc_views: ComponentViews,
    match_views: ComponentViews,
) -> MatchResult:
    """Score every GT component against the watershed assignment of pred.

    cov = |cov_view ∩ assigned| / |cov_view|
    acc = |acc_view ∩ assigned| / |assigned|
    matched requires at least one assigned pixel inside the match view.
    """
    assignment = watershed_assign(gt, pred)
    pred_labels = connected_components(pred)

    assigned_areas = np.bincount(assignment.ravel(), minlength=gt.n_components + 1)

    # a predicted component is a false positive when no pixel of it was
    # assigned to any GT component
    n_det = pred_labels.n_components
    fp = 0
    if n_det:
        hit = np.bincount(
            pred_labels.labels.ravel(),
            weights=(assignment > 0).ravel(),
            minlength=n_det + 1,
        )
        fp = int((hit[1:] == 0).sum())

    per_gt = []
    tp = 0
    for label in range(1, gt.n_components + 1):
        assigned = int(assigned_areas[label])

        x0, y0, cwin = cov_views.boxes[label]
        cov_inter = int(
            (assignment[y0:y0 + cwin.shape[0], x0:x0 + cwin.shape[1]][cwin] == label).sum()
        )
        cov = cov_inter / int(cwin.sum()) if cwin.any() else 0.0

        x0, y0, awin = acc_views.boxes[label]
        acc_inter = int(
            (assignment[y0:y0 + awin.shape[0], x0:x0 + awin.shape[1]][awin] == label).sum()
        )
        acc = acc_inter / assigned if assigned else 0.0

        x0, y0, mwin = match_views.boxes[label]
        matched = bool(
            (assignment[y0:y0 + mwin.shape[0], x0:x0 + mwin.shape[1]][mwin] == label).any()
        )
        if matched:
            tp += 1

        per_gt.append(
            GtComponentResult(
                gt_label=label,
                matched=matched,
                intersection_area=acc_inter,
                assigned_pred_area=assigned,
                cov=cov,
                acc=acc,
            )
        )
    return MatchResult(
        per_gt=tuple(per_gt), tp=tp, fp=fp, m=gt.n_components, n_detections=n_det
    )


def match_normal(gt: LabelMap, pred: BinaryMask) -> MatchResult:
    views = identity_views(gt)
    return match(gt, pred, cov_views=views, acc_views=views, match_views=views)


def match_relaxed(gt: LabelMap, pred: BinaryMask, iterations: int = 1) -> MatchResult:
    cov_views, acc_views, match_views = relaxed_views(gt, iterations)
    return match(gt, pred, cov_views=cov_views, acc_views=acc_views, match_views=match_views)
