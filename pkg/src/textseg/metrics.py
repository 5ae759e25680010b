"""Evaluation metrics for text segmentation masks.

Two families are computed side by side:

* pixel metrics: precision, recall and their harmonic mean (PF1) over raw
  pixel counts
* component metrics: each ground-truth component is matched against the
  watershed assignment of the prediction (see matching.py), giving per
  component coverage and accuracy; these roll up into quantity scores
  (how many components were found / how many detections were real) and
  quality scores (how well the found ones are segmented), and finally into
  global recall GR, global precision GP and their harmonic mean GF1.

Every ratio resolves 0/0 to 0.

The relaxed mode tolerates disagreement about stroke boundaries: coverage is
measured against each component eroded once (annotators may have painted
slightly fat), accuracy against each component dilated once (the detector may
have painted slightly fat), and the erosion/dilation is applied per component
so that neighbouring components do not merge.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import DimensionMismatch, DomainError
from .masks import BinaryMask, ClassMask, LabelMap, TextClass, connected_components
from .matching import MatchResult, identity_views, match, relaxed_views

MODES = ("normal", "relaxed")
CLASS_NAMES = {TextClass.EASY: "easy", TextClass.HARD: "hard"}


def safe_div(num: float, den: float) -> float:
    return num / den if den else 0.0


def harmonic(a: float, b: float) -> float:
    return 2.0 * a * b / (a + b) if a + b else 0.0


@dataclass(frozen=True)
class RelaxConfig:
    """Morphology depth for the relaxed mode."""

    iterations: int = 1

    def __post_init__(self):
        if self.iterations < 1:
            raise DomainError(f"relax iterations must be >= 1, got {self.iterations}")


@dataclass(frozen=True)
class PixelScores:
    tp: int
    fp: int
    fn: int
    precision: float
    recall: float
    pf1: float

    @classmethod
    def from_counts(cls, tp: int, fp: int, fn: int) -> "PixelScores":
        precision = safe_div(tp, tp + fp)
        recall = safe_div(tp, tp + fn)
        return cls(tp, fp, fn, precision, recall, harmonic(precision, recall))


@dataclass(frozen=True)
class ComponentScores:
    m: int
    tp: int
    fp: int
    r_quant: float
    p_quant: float
    r_qual: float
    p_qual: float
    f1_qual: float
    gr: float
    gp: float
    gf1: float

    @classmethod
    def from_counts(cls, m: int, tp: int, fp: int, sum_cov: float, sum_acc: float) -> "ComponentScores":
        r_quant = safe_div(tp, m)
        p_quant = safe_div(tp, tp + fp)
        r_qual = safe_div(sum_cov, tp)
        p_qual = safe_div(sum_acc, tp)
        f1_qual = harmonic(r_qual, p_qual)
        gr = safe_div(sum_cov, m)
        gp = safe_div(sum_acc, tp + fp)
        return cls(
            m=m, tp=tp, fp=fp,
            r_quant=r_quant, p_quant=p_quant,
            r_qual=r_qual, p_qual=p_qual, f1_qual=f1_qual,
            gr=gr, gp=gp, gf1=harmonic(gr, gp),
        )


@dataclass(frozen=True)
class ClassSection:
    """Component metrics restricted to one text class.

    False positives carry no class (they match nothing), so the global fp
    count is charged to every class section.
    """

    name: str
    component: ComponentScores


@dataclass(frozen=True)
class MetricsReport:
    image_id: str
    mode: str
    degenerate: bool  # no GT components and no detections
    pixel: PixelScores
    component: ComponentScores
    n_detections: int
    per_class: dict[str, ClassSection]
    per_component_f1: tuple[tuple[int, str, float], ...] = field(default=())


def pixel_metrics(gt: BinaryMask, pred: BinaryMask) -> PixelScores:
    if gt.shape != pred.shape:
        raise DimensionMismatch(f"gt {gt.shape} vs prediction {pred.shape}")
    tp = int((pred.data & gt.data).sum())
    fp = int((pred.data & ~gt.data).sum())
    fn = int((~pred.data & gt.data).sum())
    return PixelScores.from_counts(tp, fp, fn)


def relaxed_pixel_metrics(gt: BinaryMask, pred: BinaryMask, iterations: int = 1) -> PixelScores:
    """Pixel scores where hits count inside the dilated GT and only pixels of
    the eroded GT can be missed."""
    if gt.shape != pred.shape:
        raise DimensionMismatch(f"gt {gt.shape} vs prediction {pred.shape}")
    dil = _kernels.dilate_cross(gt.data, iterations).astype(bool)
    ero = _kernels.erode_cross(gt.data, iterations).astype(bool)
    tp = int((pred.data & dil).sum())
    fp = int((pred.data & ~dil).sum())
    fn = int((ero & ~pred.data).sum())
    return PixelScores.from_counts(tp, fp, fn)


def component_metrics(result: MatchResult) -> ComponentScores:
    sum_cov = sum(g.cov for g in result.per_gt if g.matched)
    sum_acc = sum(g.acc for g in result.per_gt if g.matched)
    return ComponentScores.from_counts(result.m, result.tp, result.fp, sum_cov, sum_acc)


def _component_classes(gt: ClassMask, labels: LabelMap) -> dict[int, TextClass]:
    """Majority class per component; ties go to hard."""
    n = labels.n_components
    if n == 0:
        return {}
    flat = labels.labels.ravel()
    easy = np.bincount(flat, weights=(gt.data == TextClass.EASY).ravel(), minlength=n + 1)
    hard = np.bincount(flat, weights=(gt.data == TextClass.HARD).ravel(), minlength=n + 1)
    return {
        label: (TextClass.EASY if easy[label] > hard[label] else TextClass.HARD)
        for label in range(1, n + 1)
    }


def _class_sections(result: MatchResult, classes: dict[int, TextClass]) -> dict[str, ClassSection]:
    sections = {}
    for cls, name in CLASS_NAMES.items():
        members = [g for g in result.per_gt if classes[g.gt_label] == cls]
        sections[name] = ClassSection(
            name=name,
            component=ComponentScores.from_counts(
                m=len(members),
                tp=sum(1 for g in members if g.matched),
                fp=result.fp,
                sum_cov=sum(g.cov for g in members if g.matched),
                sum_acc=sum(g.acc for g in members if g.matched),
            ),
        )
    return sections


def evaluate(
    gt: ClassMask,
    pred: BinaryMask,
    mode: str = "normal",
    relax: RelaxConfig = RelaxConfig(),
    image_id: str = "",
) -> MetricsReport:
    """Full per-image report for one mode."""
    if mode not in MODES:
        raise DomainError(f"mode must be one of {MODES}, got {mode!r}")
    gt_bin = gt.text_mask()
    labels = connected_components(gt_bin)
    classes = _component_classes(gt, labels)

    if mode == "normal":
        views = identity_views(labels)
        result = match(labels, pred, cov_views=views, acc_views=views, match_views=views)
        pixel = pixel_metrics(gt_bin, pred)
    else:
        cov_views, acc_views, match_views = relaxed_views(labels, relax.iterations)
        result = match(labels, pred, cov_views=cov_views, acc_views=acc_views, match_views=match_views)
        pixel = relaxed_pixel_metrics(gt_bin, pred, relax.iterations)

    per_component_f1 = tuple(
        (g.gt_label, CLASS_NAMES[classes[g.gt_label]], harmonic(g.cov, g.acc) if g.matched else 0.0)
        for g in result.per_gt
    )
    return MetricsReport(
        image_id=image_id,
        mode=mode,
        degenerate=(result.m == 0 and result.n_detections == 0),
        pixel=pixel,
        component=component_metrics(result),
        n_detections=result.n_detections,
        per_class=_class_sections(result, classes),
        per_component_f1=per_component_f1,
    )


def evaluate_both(
    gt: ClassMask,
    pred: BinaryMask,
    relax: RelaxConfig = RelaxConfig(),
    image_id: str = "",
) -> dict[str, MetricsReport]:
    return {mode: evaluate(gt, pred, mode, relax, image_id) for mode in MODES}


# ---------------------------------------------------------------------------
# aggregation


def flatten_report(report: MetricsReport) -> dict[str, float]:
    """Scalar metrics of one report under dotted keys, for averaging."""
    out = {
        "pixel.precision": report.pixel.precision,
        "pixel.recall": report.pixel.recall,
        "pixel.pf1": report.pixel.pf1,
    }
    comp = report.component
    for key in ("r_quant", "p_quant", "r_qual", "p_qual", "f1_qual", "gr", "gp", "gf1"):
        out[f"component.{key}"] = getattr(comp, key)
    for name, section in sorted(report.per_class.items()):
        for key in ("r_quant", "p_quant", "r_qual", "p_qual", "f1_qual", "gr", "gp", "gf1"):
            out[f"class.{name}.{key}"] = getattr(section.component, key)
    return out


@dataclass(frozen=True)
class AggregateEntry:
    mean: float
    std: float
    display: str
    group_means: dict[str, float]


def format_mean_std(mean: float, std: float) -> str:
    """Percent-scale presentation, e.g. '72.63 ± 1.8'."""
    return f"{mean * 100.0:.2f} ± {std * 100.0:.1f}"


def aggregate(
    reports: list[MetricsReport],
    folds: dict[str, list[str]] | None = None,
) -> dict[str, AggregateEntry]:
    """Mean of every metric per fold, then mean ± sample std across folds.

    Without a fold map all reports form a single group and the std is 0.
    Reports whose image_id appears in no fold are left out of the aggregate.
    """
    if not reports:
        raise DomainError("cannot aggregate an empty report list")
    if folds is None:
        groups = {"all": list(reports)}
    else:
        by_id: dict[str, list[MetricsReport]] = {}
        for r in reports:
            by_id.setdefault(r.image_id, []).append(r)
        groups = {}
        for fold_name, stems in folds.items():
            members = [r for stem in stems for r in by_id.get(stem, [])]
            if members:
                groups[fold_name] = members
        if not groups:
            raise DomainError("no report matches any fold")

    flat = {name: [flatten_report(r) for r in members] for name, members in groups.items()}
    keys = list(next(iter(flat.values()))[0])
    out = {}
    for key in keys:
        group_means = {
            name: float(np.mean([row[key] for row in rows])) for name, rows in sorted(flat.items())
        }
        values = list(group_means.values())
        mean = float(np.mean(values))
        std = float(np.std(values, ddof=1)) if len(values) > 1 else 0.0
        out[key] = AggregateEntry(
            mean=mean, std=std, display=format_mean_std(mean, std), group_means=group_means
        )
    return out


# ---------------------------------------------------------------------------
# histograms


def f1_histogram(
    reports: list[MetricsReport], bins: int = 10
) -> dict[tuple[str, str], np.ndarray]:
    """Counts of per-component F1 values in equal-width bins over [0, 1].

    Keyed by (class name, mode). Bin k covers [k/bins, (k+1)/bins), except
    the last bin which also includes 1.0.
    """
    if bins < 1:
        raise DomainError(f"bins must be >= 1, got {bins}")
    edges = np.arange(bins + 1) / bins
    out: dict[tuple[str, str], np.ndarray] = {}
    for report in reports:
        for _, class_name, f1 in report.per_component_f1:
            if not (0.0 <= f1 <= 1.0) or math.isnan(f1):
                raise DomainError(f"per-component f1 {f1} outside [0, 1]")
            key = (class_name, report.mode)
            if key not in out:
                out[key] = np.zeros(bins, dtype=np.int64)
            idx = int(np.searchsorted(edges, f1, side="right")) - 1
            out[key][min(idx, bins - 1)] += 1
    return out
