"""Synthetic text placement: rectangles, wrapping, fonts, styling."""

from .fonts import (
    DEFAULT_CODEPOINT_RANGES,
    FontAsset,
    default_codepoint_pool,
    load_font_asset,
    supported_codepoints,
    supports_char,
)
from .rects import Rect, generate_rects
from .textify import (
    PilMeasurer,
    RectRecord,
    StyleDecision,
    TextifyConfig,
    VerticalMeasurer,
    textify,
)
from .wrap import FixedWidthMeasurer, TextMeasurer, text_wrap_exact, text_wrap_fast

__all__ = [
    "DEFAULT_CODEPOINT_RANGES",
    "FixedWidthMeasurer",
    "FontAsset",
    "PilMeasurer",
    "Rect",
    "RectRecord",
    "StyleDecision",
    "TextMeasurer",
    "TextifyConfig",
    "VerticalMeasurer",
    "default_codepoint_pool",
    "generate_rects",
    "load_font_asset",
    "supported_codepoints",
    "supports_char",
    "text_wrap_exact",
    "text_wrap_fast",
    "textify",
]
