"""Deciding which characters a font can actually draw.

Character maps lie: many fonts map unsupported codepoints to a visible
"missing glyph" box instead of leaving them unmapped, so text rendered with
them is peppered with tofu. A codepoint counts as supported only when it
maps to a real glyph index (not 0, not the index the font reserves for the
missing character, conventionally mapped from 0x1d) whose outline is
nonempty and differs from the missing glyph's outline. Comparing recorded
outlines catches fonts that alias unsupported characters to a copy of the
tofu glyph.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from fontTools.pens.recordingPen import RecordingPen
from fontTools.ttLib import TTFont

from ..errors import FontError

MISSING_CHAR = 0x1D

# codepoint ranges text is sampled from: ASCII, CJK punctuation, kana, the
# unified ideographs and the full/half width forms
DEFAULT_CODEPOINT_RANGES = (
    (0x0020, 0x007E),
    (0x3000, 0x303F),
    (0x3040, 0x309F),
    (0x30A0, 0x30FF),
    (0x4E00, 0x9FFF),
    (0xFF01, 0xFF9F),
)


def default_codepoint_pool() -> tuple[int, ...]:
    return tuple(
        cp for lo, hi in DEFAULT_CODEPOINT_RANGES for cp in range(lo, hi + 1)
    )


@dataclass(frozen=True)
class FontAsset:
    path: str
    size: int
    supported: frozenset[int]


def _outline(glyph_set, name: str):
    pen = RecordingPen()
    glyph_set[name].draw(pen)
    return pen.value


def supported_codepoints(path: str | Path, candidates) -> frozenset[int]:
    """The subset of candidate codepoints the font can genuinely draw."""
    try:
        font = TTFont(str(path), fontNumber=0, lazy=True)
        cmap = font.getBestCmap()
        glyph_set = font.getGlyphSet()
        glyph_order = font.getGlyphOrder()
    except Exception as exc:  # fontTools raises a mixed bag of types here
        raise FontError(f"cannot parse font {path}: {exc}") from exc

    notdef_name = glyph_order[0] if glyph_order else None
    missing_names = set()
    missing_outlines = []
    if notdef_name is not None:
        missing_names.add(notdef_name)
        missing_outlines.append(_outline(glyph_set, notdef_name))
    tofu_name = cmap.get(MISSING_CHAR)
    if tofu_name is not None and tofu_name not in missing_names:
        missing_names.add(tofu_name)
        missing_outlines.append(_outline(glyph_set, tofu_name))

    supported = set()
    for cp in candidates:
        name = cmap.get(cp)
        if name is None or name in missing_names:
            continue
        outline = _outline(glyph_set, name)
        if not outline or outline in missing_outlines:
            continue
        supported.add(cp)
    return frozenset(supported)


def supports_char(path: str | Path, codepoint: int) -> bool:
    return codepoint in supported_codepoints(path, (codepoint,))


def load_font_asset(path: str | Path, size: int, candidates=None) -> FontAsset:
    if candidates is None:
        candidates = default_codepoint_pool()
    return FontAsset(
        path=str(path), size=size, supported=supported_codepoints(path, candidates)
    )
