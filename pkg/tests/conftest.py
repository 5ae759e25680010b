from __future__ import annotations

import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))


def grid(text: str) -> np.ndarray:
    """Parse a picture like "..#\n.##" into a bool array. '#' is foreground,
    anything else background. Whitespace-only lines are dropped."""
    rows = [line.strip() for line in text.splitlines() if line.strip()]
    width = max(len(r) for r in rows)
    out = np.zeros((len(rows), width), dtype=bool)
    for y, row in enumerate(rows):
        for x, ch in enumerate(row):
            if ch == "#":
                out[y, x] = True
    return out


def class_grid(text: str) -> np.ndarray:
    """Like grid() but digits 1/2 mark easy/hard text, '.' is background."""
    rows = [line.strip() for line in text.splitlines() if line.strip()]
    width = max(len(r) for r in rows)
    out = np.zeros((len(rows), width), dtype=np.uint8)
    for y, row in enumerate(rows):
        for x, ch in enumerate(row):
            if ch in "12":
                out[y, x] = np.uint8(int(ch))
    return out


@pytest.fixture(scope="session")
def dejavu_path() -> str:
    import matplotlib

    path = Path(matplotlib.get_data_path()) / "fonts" / "ttf" / "DejaVuSans.ttf"
    if not path.exists():
        pytest.skip("DejaVuSans.ttf not available")
    return str(path)
