"""CSV and SVG renderings of per-component F1 histograms."""

from __future__ import annotations

import csv
import io
from pathlib import Path

import numpy as np

from ..metrics import MetricsReport, f1_histogram
from .codecs import atomic_write_bytes

_CLASS_ORDER = ("easy", "hard")
_MODE_ORDER = ("normal", "relaxed")


def histogram_rows(reports: list[MetricsReport], bins: int = 10) -> list[tuple[str, str, float, float, int]]:
    """(class, mode, bin_lo, bin_hi, count) rows in fixed class/mode/bin order."""
    table = f1_histogram(reports, bins)
    keys = sorted(
        table,
        key=lambda k: (
            _CLASS_ORDER.index(k[0]) if k[0] in _CLASS_ORDER else len(_CLASS_ORDER),
            _MODE_ORDER.index(k[1]) if k[1] in _MODE_ORDER else len(_MODE_ORDER),
        ),
    )
    rows = []
    for class_name, mode in keys:
        counts = table[(class_name, mode)]
        for b in range(bins):
            rows.append((class_name, mode, b / bins, (b + 1) / bins, int(counts[b])))
    return rows


def write_histogram_csv(path: str | Path, rows) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["class", "mode", "bin_lo", "bin_hi", "count"])
    for row in rows:
        writer.writerow(row)
    atomic_write_bytes(path, buf.getvalue().encode("utf-8"))


def write_histogram_svg(path: str | Path, rows, bins: int) -> None:
    """One panel of bars per (class, mode) group, stacked vertically."""
    groups: dict[tuple[str, str], list[int]] = {}
    for class_name, mode, _, _, count in rows:
        groups.setdefault((class_name, mode), []).append(count)

    panel_w, panel_h, gap, margin = 420, 130, 28, 36
    bar_gap = 2
    width = panel_w + 2 * margin
    height = margin + len(groups) * (panel_h + gap)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    top = margin
    for (class_name, mode), counts in groups.items():
        peak = max(max(counts), 1)
        bar_w = (panel_w - (bins - 1) * bar_gap) / bins
        parts.append(
            f'<text x="{margin}" y="{top - 8}" font-family="sans-serif" font-size="13">'
            f"{class_name} / {mode}</text>"
        )
        parts.append(
            f'<line x1="{margin}" y1="{top + panel_h}" x2="{margin + panel_w}" '
            f'y2="{top + panel_h}" stroke="black" stroke-width="1"/>'
        )
        for b, count in enumerate(counts):
            bar_h = panel_h * count / peak
            x = margin + b * (bar_w + bar_gap)
            y = top + panel_h - bar_h
            parts.append(
                f'<rect x="{x:.1f}" y="{y:.1f}" width="{bar_w:.1f}" height="{bar_h:.1f}" '
                'fill="#4878a8"/>'
            )
            parts.append(
                f'<text x="{x + bar_w / 2:.1f}" y="{top + panel_h + 14}" '
                f'font-family="sans-serif" font-size="9" text-anchor="middle">'
                f"{b / bins:.1f}</text>"
            )
        top += panel_h + gap
    parts.append("</svg>")
    atomic_write_bytes(path, "\n".join(parts).encode("utf-8"))
