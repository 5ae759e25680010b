"""Random placement of non-overlapping text rectangles on a canvas."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import DomainError

MAX_ATTEMPTS = 15


@dataclass(frozen=True)
class Rect:
    x: int
    y: int
    w: int
    h: int

    def __post_init__(self):
        if self.w < 1 or self.h < 1:
            raise DomainError(f"rect sides must be >= 1, got {self.w}x{self.h}")
        if self.x < 0 or self.y < 0:
            raise DomainError(f"rect origin must be >= 0, got ({self.x}, {self.y})")

    @property
    def area(self) -> int:
        return self.w * self.h

    def intersects(self, other: "Rect") -> bool:
        return (
            self.x < other.x + other.w
            and other.x < self.x + self.w
            and self.y < other.y + other.h
            and other.y < self.y + self.h
        )


def generate_rects(width: int, height: int, limit: int, rng: np.random.Generator) -> list[Rect]:
    """Sample up to `limit` pairwise disjoint rects inside a width x height canvas.

    Each attempt draws a top-left corner and a size in percent of the canvas,
    small sizes being four times likelier than large ones. A candidate that
    collides with an already placed rect gets a coin-flip chance to halve its
    width, then another to halve its height, and is dropped if it still
    collides. At most min(2 * limit, 15) attempts are made, so fewer than
    `limit` rects may come back.
    """
    if width < 16 or height < 16:
        raise DomainError(f"canvas must be at least 16x16, got {width}x{height}")
    if limit < 0:
        raise DomainError(f"limit must be >= 0, got {limit}")

    rects: list[Rect] = []
    for _ in range(min(limit * 2, MAX_ATTEMPTS)):
        x = int(rng.integers(0, int(width * 0.93), endpoint=True))
        y = int(rng.integers(0, int(height * 0.9), endpoint=True))
        if rng.random() < 0.8:
            w_pct = int(rng.integers(7, 15, endpoint=True))
            h_pct = int(rng.integers(10, 35, endpoint=True))
        else:
            w_pct = int(rng.integers(15, 100, endpoint=True))
            h_pct = int(rng.integers(10, 50, endpoint=True))
        w = max(1, min(w_pct * width // 100, width - x))
        h = max(1, min(h_pct * height // 100, height - y))
        cand = Rect(x, y, w, h)

        add = True
        for placed in rects:
            if placed.intersects(cand) and rng.random() < 0.5:
                cand = Rect(x, y, max(1, cand.w // 2), cand.h)
                if placed.intersects(cand) and rng.random() < 0.5:
                    cand = Rect(x, y, cand.w, max(1, cand.h // 2))
            if placed.intersects(cand):
                add = False
                break

        if add:
            rects.append(cand)
            if len(rects) == limit:
                break
    return rects
