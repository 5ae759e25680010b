"""Greedy pixel-exact text wrapping.

Both functions cut text into lines that measure at most max_width, stacking
lines until max_height is reached; leftover text is dropped. text_wrap_exact
measures every prefix and is the reference; text_wrap_fast jumps to an
estimated split point and fixes it up with single-character measurements,
which gives the same lines whenever the measurer is additive (the width of a
concatenation is the sum of the widths) while calling it far less often.
"""

from __future__ import annotations

from typing import Protocol


class TextMeasurer(Protocol):
    def measure(self, text: str) -> tuple[int, int]:
        """(width, height) of text rendered on one line."""
        ...


class FixedWidthMeasurer:
    """Every character is box_w wide; lines are box_h tall. For tests and
    capacity estimates."""

    def __init__(self, box_w: int = 1, box_h: int = 1):
        self.box_w = box_w
        self.box_h = box_h

    def measure(self, text: str) -> tuple[int, int]:
        return (len(text) * self.box_w, self.box_h)


def text_wrap_exact(measurer: TextMeasurer, text: str, max_width: int, max_height: int) -> list[str]:
    lines: list[str] = []
    i, j, hei = 0, 0, 0
    while j <= len(text):
        w = measurer.measure(text[i:j + 1])[0]
        if w > max_width or j == len(text):
            hei += measurer.measure(text[i:j])[1]
            if hei <= max_height and j > i:
                lines.append(text[i:j])
                i = j
                if j == len(text):
                    break
            else:
                break
        else:
            j += 1
    return lines


def text_wrap_fast(measurer: TextMeasurer, text: str, max_width: int, max_height: int) -> list[str]:
    estimate = max_width // max(1, measurer.measure("a")[0])
    lines: list[str] = []
    i, j, hei = 0, 0, 0
    while i < len(text):
        i = j
        j = min(len(text), i + estimate)
        width = measurer.measure(text[i:j])[0]
        while j < len(text) and width <= max_width:
            width += measurer.measure(text[j])[0]
            j += 1
        while width > max_width and j > i:
            j -= 1
            width -= measurer.measure(text[j])[0]
        if j == i:
            # a single character is wider than the line; nothing past this
            # point can be placed, same as the exact algorithm
            break
        hei += measurer.measure(text[i:j])[1]
        if hei > max_height:
            break
        lines.append(text[i:j])
    return lines
