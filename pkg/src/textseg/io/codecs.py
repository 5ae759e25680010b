"""PNG conventions for masks and probability maps.

Binary masks are grayscale PNGs where value >= 128 means text. Class masks
use a three-color palette: yellow for non-text, black for easy text (inside
speech balloons), pink for hard text (outside balloons). Decoding is exact
by default; a fuzziness distance can snap colors that drifted through lossy
round-trips.

All writes go through a temp file and rename, so readers never observe a
half-written file.
"""

from __future__ import annotations

import io
import os
import tempfile
from pathlib import Path

import numpy as np
from PIL import Image

from ..errors import DomainError
from ..masks import BinaryMask, ClassMask, TextClass

PALETTE: dict[TextClass, tuple[int, int, int]] = {
    TextClass.NON_TEXT: (255, 255, 0),
    TextClass.EASY: (0, 0, 0),
    TextClass.HARD: (255, 0, 255),
}
_PALETTE_ORDER = (TextClass.NON_TEXT, TextClass.EASY, TextClass.HARD)


def atomic_write_bytes(path: str | Path, data: bytes) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as handle:
            handle.write(data)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def _save_png(img: Image.Image, path: str | Path) -> None:
    buf = io.BytesIO()
    img.save(buf, format="PNG")
    atomic_write_bytes(path, buf.getvalue())


def decode_binary_png(path: str | Path) -> BinaryMask:
    with Image.open(path) as img:
        arr = np.asarray(img.convert("L"))
    return BinaryMask(arr >= 128)


def encode_binary_png(mask: BinaryMask, path: str | Path) -> None:
    arr = np.where(mask.data, 255, 0).astype(np.uint8)
    _save_png(Image.fromarray(arr, mode="L"), path)


def decode_prob_png(path: str | Path) -> np.ndarray:
    """8-bit grayscale to probabilities in [0, 1]."""
    with Image.open(path) as img:
        arr = np.asarray(img.convert("L"))
    return arr.astype(np.float64) / 255.0


def decode_gray_png(path: str | Path) -> np.ndarray:
    """Grayscale page image as float64, range [0, 255]."""
    with Image.open(path) as img:
        arr = np.asarray(img.convert("L"))
    return arr.astype(np.float64)


def decode_rgb_png(path: str | Path) -> np.ndarray:
    with Image.open(path) as img:
        return np.asarray(img.convert("RGB")).copy()


def encode_rgb_png(arr: np.ndarray, path: str | Path) -> None:
    _save_png(Image.fromarray(arr.astype(np.uint8), mode="RGB"), path)


def decode_class_png(path: str | Path, fuzzy: int = 0) -> ClassMask:
    """Decode a tri-class palette mask.

    With fuzzy = 0 every pixel must equal one of the three palette colors
    exactly. With fuzzy = d > 0, each pixel snaps to the nearest palette
    color whose per-channel distance is at most d; anything farther is still
    rejected.
    """
    if fuzzy < 0:
        raise DomainError(f"fuzzy distance must be >= 0, got {fuzzy}")
    with Image.open(path) as img:
        rgb = np.asarray(img.convert("RGB")).astype(np.int16)

    h, w = rgb.shape[:2]
    dist = np.empty((len(_PALETTE_ORDER), h, w), dtype=np.int16)
    for k, cls in enumerate(_PALETTE_ORDER):
        dist[k] = np.abs(rgb - np.array(PALETTE[cls], dtype=np.int16)).max(axis=2)
    nearest = dist.argmin(axis=0)
    good = dist.min(axis=0) <= fuzzy
    if not good.all():
        bad = rgb[~good]
        samples = {tuple(int(v) for v in px) for px in bad[:64]}
        raise DomainError(
            f"{path}: {int((~good).sum())} pixels match no palette color "
            f"(e.g. {sorted(samples)[:5]}); palette is "
            f"{[PALETTE[c] for c in _PALETTE_ORDER]}"
        )
    classes = np.array([int(c) for c in _PALETTE_ORDER], dtype=np.uint8)
    return ClassMask(classes[nearest])


def encode_class_png(mask: ClassMask, path: str | Path) -> None:
    h, w = mask.shape
    rgb = np.zeros((h, w, 3), dtype=np.uint8)
    for cls in _PALETTE_ORDER:
        rgb[mask.data == cls] = PALETTE[cls]
    _save_png(Image.fromarray(rgb, mode="RGB"), path)
