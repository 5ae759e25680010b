"""Burn random text into an image and return the exact pixel mask.

The flow per image: pick a padding, choose either one large rectangle or a
batch of smaller non-overlapping ones, then for each rectangle sample a font,
a text size, random characters from what the font supports, wrap them to fit,
style them (color, border, orientation, rotation, translucency) and draw.
The returned mask marks exactly the pixels whose value changed, which is what
a segmentation network should reproduce.

The probability schedule lives in TextifyConfig so experiments can tune it;
the defaults are the ones used to build our synthetic set.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass

import numpy as np
from PIL import Image, ImageDraw, ImageFont

from ..errors import DimensionMismatch, FontError
from ..masks import BinaryMask
from .fonts import FontAsset
from .rects import Rect, generate_rects
from .wrap import text_wrap_fast


@dataclass(frozen=True)
class TextifyConfig:
    padding_range: tuple[int, int] = (4, 10)
    p_single_rect: float = 0.50  # one large rectangle instead of a batch
    single_rect_min_cover: float = 0.66
    rect_count_range: tuple[int, int] = (7, 15)
    p_large_size: float = 0.20  # sizes are mostly regular
    size_regular: tuple[int, int] = (12, 28)
    size_large: tuple[int, int] = (28, 72)
    p_black_text: float = 0.80
    p_border: float = 0.50
    p_white_border: float = 0.80
    p_thick_border: float = 0.05
    thick_border_range: tuple[int, int] = (2, 3)
    p_vertical: float = 0.30
    p_rotate: float = 0.10
    rotation_range: tuple[float, float] = (-30.0, 30.0)
    p_translucent: float = 0.10
    translucency_range: tuple[float, float] = (0.1, 0.6)
    p_extra_pass: float = 0.20  # sometimes add a second, smaller batch
    extra_rect_range: tuple[int, int] = (1, 3)
    fill_factor: float = 0.5  # fraction of the rect's estimated capacity to fill
    max_text_len: int = 4000


@dataclass(frozen=True)
class StyleDecision:
    text_color: tuple[int, int, int]
    border_color: tuple[int, int, int] | None
    border_width: int  # 0 disables the border
    orientation: str  # "horizontal" | "vertical"
    transparency: float  # 0 opaque .. 1 invisible
    rotation: float  # degrees, 0 disables


@dataclass(frozen=True)
class RectRecord:
    """What was drawn where, for the generation manifest."""

    rect: Rect
    font_path: str
    font_size: int
    style: StyleDecision
    text: str
    lines: tuple[str, ...]


class PilMeasurer:
    """TextMeasurer over a PIL font; height is the constant line height."""

    def __init__(self, font: ImageFont.FreeTypeFont):
        self.font = font
        ascent, descent = font.getmetrics()
        self.line_height = ascent + descent

    def measure(self, text: str) -> tuple[int, int]:
        if not text:
            return (0, self.line_height)
        return (int(math.ceil(self.font.getlength(text))), self.line_height)


class VerticalMeasurer:
    """Measures columns of stacked characters: width accumulates downward
    (one line height per character) and height is the fixed column width,
    so the wrap functions can lay out vertical text unchanged."""

    def __init__(self, char_advance: int, col_width: int):
        self.char_advance = char_advance
        self.col_width = col_width

    def measure(self, text: str) -> tuple[int, int]:
        return (len(text) * self.char_advance, self.col_width)


# FreeType font objects are not safe to share across threads, so each worker
# thread keeps its own cache
_fonts_local = threading.local()


def _pil_font(path: str, size: int) -> ImageFont.FreeTypeFont:
    cache = getattr(_fonts_local, "cache", None)
    if cache is None:
        cache = _fonts_local.cache = {}
    key = (path, size)
    if key not in cache:
        cache[key] = ImageFont.truetype(path, size)
    return cache[key]


def _sample_rects(width: int, height: int, cfg: TextifyConfig, rng: np.random.Generator) -> list[Rect]:
    if rng.random() < cfg.p_single_rect:
        frac = math.sqrt(cfg.single_rect_min_cover)  # per-side share so the area bound holds
        fw = rng.uniform(frac, 1.0)
        fh = rng.uniform(frac, 1.0)
        w = min(width, math.ceil(fw * width))
        h = min(height, math.ceil(fh * height))
        x = int(rng.integers(0, width - w, endpoint=True))
        y = int(rng.integers(0, height - h, endpoint=True))
        return [Rect(x, y, w, h)]
    if width < 16 or height < 16:
        return []
    count = int(rng.integers(*cfg.rect_count_range, endpoint=True))
    return generate_rects(width, height, count, rng)


def _sample_color(base: tuple[int, int, int], p_base: float, rng: np.random.Generator) -> tuple[int, int, int]:
    if rng.random() < p_base:
        return base
    return tuple(int(v) for v in rng.integers(0, 255, size=3, endpoint=True))


def _sample_style(cfg: TextifyConfig, rng: np.random.Generator) -> StyleDecision:
    orientation = "vertical" if rng.random() < cfg.p_vertical else "horizontal"
    text_color = _sample_color((0, 0, 0), cfg.p_black_text, rng)
    border_color = None
    border_width = 0
    if rng.random() < cfg.p_border:
        border_color = _sample_color((255, 255, 255), cfg.p_white_border, rng)
        border_width = 1
        if rng.random() < cfg.p_thick_border:
            border_width = int(rng.integers(*cfg.thick_border_range, endpoint=True))
    rotation = 0.0
    if rng.random() < cfg.p_rotate:
        rotation = float(rng.uniform(*cfg.rotation_range))
    transparency = 0.0
    if rng.random() < cfg.p_translucent:
        transparency = float(rng.uniform(*cfg.translucency_range))
    return StyleDecision(
        text_color=text_color,
        border_color=border_color,
        border_width=border_width,
        orientation=orientation,
        transparency=transparency,
        rotation=rotation,
    )


def _sample_text(pool: np.ndarray, length: int, rng: np.random.Generator) -> str:
    picks = rng.integers(0, len(pool), size=length)
    return "".join(chr(int(cp)) for cp in pool[picks])


def _render_tile(
    rect: Rect,
    padding: int,
    lines: list[str],
    font: ImageFont.FreeTypeFont,
    style: StyleDecision,
    line_height: int,
    col_width: int,
) -> Image.Image:
    tile = Image.new("RGBA", (rect.w, rect.h), (0, 0, 0, 0))
    draw = ImageDraw.Draw(tile)
    fill = style.text_color + (255,)
    stroke = style.border_color + (255,) if style.border_width else None
    if style.orientation == "horizontal":
        for k, line in enumerate(lines):
            draw.text(
                (padding, padding + k * line_height),
                line,
                font=font,
                fill=fill,
                stroke_width=style.border_width,
                stroke_fill=stroke,
            )
    else:
        # columns run right to left, characters top to bottom
        for k, column in enumerate(lines):
            x = rect.w - padding - (k + 1) * col_width
            for j, ch in enumerate(column):
                draw.text(
                    (x, padding + j * line_height),
                    ch,
                    font=font,
                    fill=fill,
                    stroke_width=style.border_width,
                    stroke_fill=stroke,
                )
    if style.rotation:
        tile = tile.rotate(
            style.rotation, resample=Image.NEAREST, expand=False, fillcolor=(0, 0, 0, 0)
        )
    return tile


def _composite(out: np.ndarray, rect: Rect, tile: Image.Image, transparency: float) -> None:
    arr = np.asarray(tile, dtype=np.uint8)
    stencil = arr[:, :, 3] > 127  # anti-aliased coverage above one half
    if not stencil.any():
        return
    region = out[rect.y:rect.y + rect.h, rect.x:rect.x + rect.w]
    blended = np.round(
        region.astype(np.float64) * transparency
        + arr[:, :, :3].astype(np.float64) * (1.0 - transparency)
    ).astype(np.uint8)
    region[stencil] = blended[stencil]


def _place_text(
    out: np.ndarray,
    rect: Rect,
    padding: int,
    fonts: list[FontAsset],
    pools: list[np.ndarray],
    weights: np.ndarray,
    cfg: TextifyConfig,
    rng: np.random.Generator,
) -> RectRecord | None:
    usable_w = rect.w - 2 * padding
    usable_h = rect.h - 2 * padding
    if usable_w < 1 or usable_h < 1:
        return None

    if rng.random() < cfg.p_large_size:
        size = int(rng.integers(*cfg.size_large, endpoint=True))
    else:
        size = int(rng.integers(*cfg.size_regular, endpoint=True))
    font_idx = int(rng.choice(len(fonts), p=weights))
    style = _sample_style(cfg, rng)

    asset = fonts[font_idx]
    font = _pil_font(asset.path, size)
    measurer = PilMeasurer(font)
    line_h = measurer.line_height
    col_w = size

    # rough capacity, the wrap call enforces the real bounds
    char_w = max(1, line_h // 2)
    if style.orientation == "horizontal":
        capacity = max(1, usable_w // char_w) * max(0, usable_h // max(1, line_h))
    else:
        capacity = max(1, usable_h // max(1, line_h)) * max(0, usable_w // col_w)
    length = min(cfg.max_text_len, max(1, int(capacity * cfg.fill_factor)))

    pool = pools[font_idx]
    text = _sample_text(pool, length, rng)

    if style.orientation == "horizontal":
        lines = text_wrap_fast(measurer, text, usable_w, usable_h)
    else:
        vertical = VerticalMeasurer(line_h, col_w)
        lines = text_wrap_fast(vertical, text, usable_h, usable_w)
    if not lines:
        return None

    tile = _render_tile(rect, padding, lines, font, style, line_h, col_w)
    _composite(out, rect, tile, style.transparency)
    return RectRecord(
        rect=rect,
        font_path=asset.path,
        font_size=size,
        style=style,
        text=text,
        lines=tuple(lines),
    )


def textify(
    image: np.ndarray,
    fonts: list[FontAsset],
    rng: np.random.Generator,
    config: TextifyConfig = TextifyConfig(),
    record: list[RectRecord] | None = None,
) -> tuple[np.ndarray, BinaryMask]:
    """Draw random text over a copy of image (H x W x 3 uint8).

    Returns the modified image and the mask of changed pixels. When a list is
    passed as `record`, one RectRecord per drawn rectangle is appended, which
    the synth CLI serializes into the generation manifest.
    """
    arr = np.asarray(image)
    if arr.ndim != 3 or arr.shape[2] != 3:
        raise DimensionMismatch(f"image must be H x W x 3, got shape {arr.shape}")
    arr = arr.astype(np.uint8)
    usable_fonts = [f for f in fonts if f.supported]
    if not usable_fonts:
        raise FontError("no font with at least one supported character")
    weights = np.array([len(f.supported) for f in usable_fonts], dtype=np.float64)
    weights /= weights.sum()
    pools = [np.array(sorted(f.supported), dtype=np.int64) for f in usable_fonts]

    height, width = arr.shape[:2]
    out = arr.copy()

    padding = int(rng.integers(*config.padding_range, endpoint=True))
    rects = _sample_rects(width, height, config, rng)
    if rng.random() < config.p_extra_pass and width >= 16 and height >= 16:
        extra = int(rng.integers(*config.extra_rect_range, endpoint=True))
        rects = rects + generate_rects(width, height, extra, rng)

    for rect in rects:
        entry = _place_text(out, rect, padding, usable_fonts, pools, weights, config, rng)
        if entry is not None and record is not None:
            record.append(entry)

    mask = BinaryMask(np.any(out != arr, axis=2))
    return out, mask
