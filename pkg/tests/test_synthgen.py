from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from textseg import (
    DomainError,
    FontAsset,
    FontError,
    Rect,
    TextifyConfig,
    generate_rects,
    load_font_asset,
    supports_char,
    text_wrap_exact,
    text_wrap_fast,
    textify,
)
from textseg.synthgen.fonts import default_codepoint_pool, supported_codepoints
from textseg.synthgen.wrap import FixedWidthMeasurer


class TestRect:
    def test_validation(self):
        with pytest.raises(DomainError):
            Rect(0, 0, 0, 5)
        with pytest.raises(DomainError):
            Rect(-1, 0, 5, 5)
        assert Rect(0, 0, 1, 1).area == 1

    def test_intersects_is_half_open(self):
        a = Rect(0, 0, 10, 10)
        assert a.intersects(Rect(9, 9, 5, 5))
        assert not a.intersects(Rect(10, 0, 5, 5))  # edge contact is fine
        assert not a.intersects(Rect(0, 10, 5, 5))
        assert a.intersects(a)


class TestGenerateRects:
    def test_known_sequence(self):
        # frozen output on a fixed stream, so a refactor that reorders the
        # random draws is caught immediately
        rng = np.random.default_rng(42)
        got = [(r.x, r.y, r.w, r.h) for r in generate_rects(512, 512, 5, rng)]
        assert got == [
            (42, 356, 51, 156),
            (342, 362, 71, 107),
            (238, 170, 274, 184),
            (191, 379, 56, 76),
            (36, 216, 56, 66),
        ]
        again = [(r.x, r.y, r.w, r.h) for r in generate_rects(512, 512, 3, rng)]
        assert again == [
            (327, 219, 61, 138),
            (448, 201, 64, 194),
            (46, 144, 266, 215),
        ]

    def test_same_seed_same_rects(self):
        a = generate_rects(300, 200, 8, np.random.default_rng(7))
        b = generate_rects(300, 200, 8, np.random.default_rng(7))
        assert a == b

    @given(st.integers(0, 2**32 - 1), st.integers(16, 400), st.integers(16, 400), st.integers(0, 20))
    @settings(max_examples=60, deadline=None)
    def test_invariants(self, seed, width, height, limit):
        rects = generate_rects(width, height, limit, np.random.default_rng(seed))
        assert len(rects) <= limit
        for r in rects:
            assert 0 <= r.x and r.x + r.w <= width
            assert 0 <= r.y and r.y + r.h <= height
        for i, a in enumerate(rects):
            for b in rects[i + 1:]:
                assert not a.intersects(b)

    def test_limit_zero(self):
        assert generate_rects(100, 100, 0, np.random.default_rng(0)) == []

    def test_canvas_too_small(self):
        with pytest.raises(DomainError):
            generate_rects(15, 100, 3, np.random.default_rng(0))
        with pytest.raises(DomainError):
            generate_rects(100, 100, -1, np.random.default_rng(0))


class TableMeasurer:
    """Additive measurer with an arbitrary per-character width table."""

    def __init__(self, widths: dict[str, int], height: int = 1):
        self.widths = widths
        self.height = height
        self.calls = 0

    def measure(self, text: str) -> tuple[int, int]:
        self.calls += 1
        return (sum(self.widths[c] for c in text), self.height)


class TestTextWrap:
    def test_exact_basic(self):
        m = FixedWidthMeasurer(1, 1)
        assert text_wrap_exact(m, "abcdef", 3, 2) == ["abc", "def"]
        assert text_wrap_exact(m, "abcdef", 3, 1) == ["abc"]
        assert text_wrap_exact(m, "abcdefg", 3, 2) == ["abc", "def"]
        assert text_wrap_exact(m, "ab", 5, 3) == ["ab"]
        assert text_wrap_exact(m, "", 5, 3) == []

    def test_exact_oversized_character_stops_wrapping(self):
        m = TableMeasurer({"a": 1, "b": 10})
        assert text_wrap_exact(m, "aab", 3, 9) == ["aa"]
        assert text_wrap_exact(m, "baa", 3, 9) == []

    def test_fast_agrees_on_basics(self):
        m = FixedWidthMeasurer(2, 3)
        for text, mw, mh in [
            ("abcdef", 6, 9), ("abcdef", 6, 3), ("abcdefg", 4, 100),
            ("", 5, 5), ("xyz", 1, 5), ("hello", 10, 3),
        ]:
            assert text_wrap_fast(m, text, mw, mh) == text_wrap_exact(m, text, mw, mh)

    @given(
        st.integers(0, 2**32 - 1),
        st.integers(1, 40),
        st.integers(1, 6),
        st.integers(0, 120),
    )
    @settings(max_examples=120, deadline=None)
    def test_fast_matches_exact_for_additive_measurers(self, seed, mw, mh, length):
        rng = np.random.default_rng(seed)
        alphabet = "abcdexyz"
        widths = {c: int(rng.integers(1, 5)) for c in alphabet}
        widths["x"] = int(rng.integers(1, 60))  # occasionally wider than mw
        text = "".join(rng.choice(list(alphabet), size=length))
        m = TableMeasurer(widths, height=int(rng.integers(1, 4)))
        assert text_wrap_fast(m, text, mw, mh) == text_wrap_exact(m, text, mw, mh)

    def test_fast_uses_far_fewer_calls(self):
        text = "avocado" * 40  # 280 chars
        exact = TableMeasurer({c: 2 for c in "avocd"})
        fast = TableMeasurer({c: 2 for c in "avocd"})
        assert text_wrap_exact(exact, text, 40, 50) == text_wrap_fast(fast, text, 40, 50)
        assert fast.calls <= exact.calls // 2

    def test_lines_never_exceed_budgets(self):
        m = FixedWidthMeasurer(3, 2)
        lines = text_wrap_fast(m, "qwertyuiopasdfgh", 10, 7)
        assert all(m.measure(line)[0] <= 10 for line in lines)
        assert sum(m.measure(line)[1] for line in lines) <= 7


@pytest.fixture(scope="session")
def fixture_font(tmp_path_factory) -> str:
    """A tiny TTF with one real glyph and every flavor of fake support:
    a tofu mapping for 0x1d, an alias glyph with the tofu outline, an empty
    glyph, and a codepoint mapped straight to .notdef."""
    from fontTools.fontBuilder import FontBuilder
    from fontTools.pens.ttGlyphPen import TTGlyphPen

    def box(x0, y0, x1, y1):
        pen = TTGlyphPen(None)
        pen.moveTo((x0, y0))
        pen.lineTo((x1, y0))
        pen.lineTo((x1, y1))
        pen.lineTo((x0, y1))
        pen.closePath()
        return pen.glyph()

    def empty():
        return TTGlyphPen(None).glyph()

    fb = FontBuilder(1000, isTTF=True)
    order = [".notdef", "tofu", "letterA", "tofuAlias", "blank"]
    fb.setupGlyphOrder(order)
    fb.setupCharacterMap({
        0x1D: "tofu",
        0x41: "letterA",
        0x42: "tofuAlias",
        0x43: "blank",
        0x44: ".notdef",
    })
    fb.setupGlyf({
        ".notdef": box(50, 0, 450, 700),
        "tofu": box(0, 0, 500, 500),
        "letterA": box(100, 100, 400, 800),
        "tofuAlias": box(0, 0, 500, 500),
        "blank": empty(),
    })
    fb.setupHorizontalMetrics({name: (600, 50) for name in order})
    fb.setupHorizontalHeader(ascent=800, descent=-200)
    fb.setupNameTable({"familyName": "WrapFixture", "styleName": "Regular"})
    fb.setupOS2(sTypoAscender=800, sTypoDescender=-200)
    fb.setupPost()
    path = tmp_path_factory.mktemp("fonts") / "fixture.ttf"
    fb.save(str(path))
    return str(path)


class TestFontSupport:
    def test_only_the_real_glyph_counts(self, fixture_font):
        got = supported_codepoints(fixture_font, range(0x1D, 0x50))
        assert got == frozenset({0x41})

    def test_rejection_reasons(self, fixture_font):
        assert not supports_char(fixture_font, 0x1D)  # the tofu mapping itself
        assert not supports_char(fixture_font, 0x42)  # outline equals tofu
        assert not supports_char(fixture_font, 0x43)  # empty outline
        assert not supports_char(fixture_font, 0x44)  # maps to .notdef
        assert not supports_char(fixture_font, 0x45)  # unmapped
        assert supports_char(fixture_font, 0x41)

    def test_real_font_sanity(self, dejavu_path):
        assert supports_char(dejavu_path, ord("A"))
        assert supports_char(dejavu_path, ord("ä"))
        # space draws nothing, so it is not usable text
        assert not supports_char(dejavu_path, 0x20)
        # no CJK coverage in DejaVu
        assert not supports_char(dejavu_path, 0x4E00)

    def test_load_font_asset(self, fixture_font):
        asset = load_font_asset(fixture_font, 24, candidates=range(0x20, 0x80))
        assert asset.size == 24
        assert asset.supported == frozenset({0x41})

    def test_default_pool(self):
        pool = default_codepoint_pool()
        assert len(pool) == 21502
        assert pool == tuple(sorted(pool))
        assert 0x20 in pool and 0x7E in pool and 0x7F not in pool
        assert 0x3041 in pool and 0x30A1 in pool and 0x4E00 in pool and 0x9FFF in pool

    def test_unparseable_file_raises(self, tmp_path):
        bad = tmp_path / "broken.ttf"
        bad.write_bytes(b"this is not a font")
        with pytest.raises(FontError):
            supported_codepoints(bad, (0x41,))


@pytest.fixture(scope="session")
def dejavu_asset(dejavu_path) -> FontAsset:
    return load_font_asset(dejavu_path, 24, candidates=range(0x21, 0x7F))


def white_image(h=96, w=128):
    return np.full((h, w, 3), 255, dtype=np.uint8)


class TestTextify:
    def test_deterministic(self, dejavu_asset):
        img = white_image()
        out1, mask1 = textify(img, [dejavu_asset], np.random.default_rng(3))
        out2, mask2 = textify(img, [dejavu_asset], np.random.default_rng(3))
        np.testing.assert_array_equal(out1, out2)
        assert mask1 == mask2

    def test_mask_is_exactly_the_changed_pixels(self, dejavu_asset):
        # tiny canvases may legitimately end up with no rect that fits text,
        # so only the exactness is asserted per seed
        img = white_image()
        areas = []
        for seed in range(6):
            out, mask = textify(img, [dejavu_asset], np.random.default_rng(seed))
            np.testing.assert_array_equal(mask.data, np.any(out != img, axis=2))
            areas.append(mask.area)
        assert any(a > 0 for a in areas)

    def test_input_not_modified(self, dejavu_asset):
        img = white_image()
        before = img.copy()
        textify(img, [dejavu_asset], np.random.default_rng(0))
        np.testing.assert_array_equal(img, before)

    def test_records_describe_the_drawing(self, dejavu_asset):
        img = white_image()
        records = []
        out, mask = textify(img, [dejavu_asset], np.random.default_rng(11), record=records)
        assert records
        h, w = mask.shape
        covered = np.zeros((h, w), dtype=bool)
        for r in records:
            assert r.font_path == dejavu_asset.path
            assert r.lines and r.text
            assert len(r.text) <= TextifyConfig().max_text_len
            rect = r.rect
            assert rect.x + rect.w <= w and rect.y + rect.h <= h
            covered[rect.y:rect.y + rect.h, rect.x:rect.x + rect.w] = True
        # text only ever lands inside its rectangle
        assert not (mask.data & ~covered).any()

    def test_single_rect_mode_covers_requested_area(self, dejavu_asset):
        cfg = TextifyConfig(p_single_rect=1.0, p_extra_pass=0.0)
        records = []
        textify(white_image(100, 150), [dejavu_asset], np.random.default_rng(5), cfg, records)
        assert len(records) == 1
        assert records[0].rect.area >= 0.66 * 100 * 150

    def test_batch_mode_rect_count(self, dejavu_asset):
        cfg = TextifyConfig(p_single_rect=0.0, p_extra_pass=0.0)
        records = []
        textify(white_image(256, 256), [dejavu_asset], np.random.default_rng(9), cfg, records)
        assert 1 <= len(records) <= 15

    def test_both_orientations_appear(self, dejavu_asset):
        orientations = set()
        for seed in range(12):
            records = []
            textify(white_image(), [dejavu_asset], np.random.default_rng(seed), record=records)
            orientations |= {r.style.orientation for r in records}
        assert orientations == {"horizontal", "vertical"}

    def test_style_domains(self, dejavu_asset):
        cfg = TextifyConfig()
        seen_border = False
        for seed in range(20):
            records = []
            textify(white_image(), [dejavu_asset], np.random.default_rng(seed), record=records)
            for r in records:
                s = r.style
                assert (s.border_color is None) == (s.border_width == 0)
                assert s.border_width in (0, 1, 2, 3)
                assert s.transparency == 0.0 or (
                    cfg.translucency_range[0] <= s.transparency <= cfg.translucency_range[1]
                )
                assert s.rotation == 0.0 or (
                    cfg.rotation_range[0] <= s.rotation <= cfg.rotation_range[1]
                )
                seen_border = seen_border or s.border_width > 0
        assert seen_border

    def test_rejects_fonts_without_glyphs(self):
        empty = FontAsset(path="whatever.ttf", size=24, supported=frozenset())
        with pytest.raises(FontError):
            textify(white_image(), [empty], np.random.default_rng(0))

    def test_rejects_non_rgb(self, dejavu_asset):
        from textseg import DimensionMismatch

        with pytest.raises(DimensionMismatch):
            textify(np.zeros((32, 32), dtype=np.uint8), [dejavu_asset], np.random.default_rng(0))
