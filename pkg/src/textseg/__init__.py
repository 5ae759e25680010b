"""Pixel-level text segmentation toolkit for comic and manga pages.

Evaluation metrics (pixel and component level, normal and relaxed modes),
mask post-processing (noise removal, partial-detection expansion), synthetic
text data generation, and reference loss implementations. See the CLI entry
point `textseg` for batch workflows.
"""

from ._kernels import active_backend, available_backends, use_backend
from .errors import DimensionMismatch, DomainError, FontError
from .lossref import dice_coefficient, focal_loss, mix_loss
from .masks import (
    BinaryMask,
    ClassMask,
    ComponentStats,
    LabelMap,
    TextClass,
    binarize,
    component_stats,
    connected_components,
    dilate,
    erode,
)
from .matching import (
    ComponentViews,
    GtComponentResult,
    MatchResult,
    identity_views,
    match,
    match_normal,
    match_relaxed,
    relaxed_views,
    watershed_assign,
)
from .metrics import (
    AggregateEntry,
    ClassSection,
    ComponentScores,
    MetricsReport,
    PixelScores,
    RelaxConfig,
    aggregate,
    component_metrics,
    evaluate,
    evaluate_both,
    f1_histogram,
    flatten_report,
    format_mean_std,
    harmonic,
    pixel_metrics,
    relaxed_pixel_metrics,
    safe_div,
)
from .postprocess import (
    ExpandParams,
    NoiseParams,
    adaptive_threshold,
    expand_partial,
    remove_noise,
)
from .synthgen import (
    FontAsset,
    Rect,
    StyleDecision,
    TextifyConfig,
    generate_rects,
    load_font_asset,
    supports_char,
    text_wrap_exact,
    text_wrap_fast,
    textify,
)

__version__ = "0.1.0"

__all__ = [
    "AggregateEntry",
    "BinaryMask",
    "ClassMask",
    "ClassSection",
    "ComponentScores",
    "ComponentStats",
    "ComponentViews",
    "DimensionMismatch",
    "DomainError",
    "ExpandParams",
    "FontAsset",
    "FontError",
    "GtComponentResult",
    "LabelMap",
    "MatchResult",
    "MetricsReport",
    "NoiseParams",
    "PixelScores",
    "Rect",
    "RelaxConfig",
    "StyleDecision",
    "TextClass",
    "TextifyConfig",
    "__version__",
    "active_backend",
    "adaptive_threshold",
    "aggregate",
    "available_backends",
    "binarize",
    "component_metrics",
    "component_stats",
    "connected_components",
    "dice_coefficient",
    "dilate",
    "erode",
    "evaluate",
    "evaluate_both",
    "expand_partial",
    "f1_histogram",
    "flatten_report",
    "focal_loss",
    "format_mean_std",
    "generate_rects",
    "harmonic",
    "identity_views",
    "load_font_asset",
    "match",
    "match_normal",
    "match_relaxed",
    "mix_loss",
    "pixel_metrics",
    "relaxed_pixel_metrics",
    "relaxed_views",
    "remove_noise",
    "safe_div",
    "supports_char",
    "text_wrap_exact",
    "text_wrap_fast",
    "textify",
    "use_backend",
    "watershed_assign",
]
