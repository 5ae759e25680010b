"""Raster kernel dispatch.

The compiled Cython backend is preferred when its extension module built;
otherwise the numpy/scipy fallback is used. Both expose the same five
functions with identical results. use_backend() lets tests and benchmarks
pin one explicitly.
"""

from __future__ import annotations

from contextlib import contextmanager

import numpy as np

from . import _numpy as numpy_backend

try:
    from . import _core as compiled_backend
except ImportError:  # extension not built on this install
    compiled_backend = None

_BACKENDS = {"python": numpy_backend}
if compiled_backend is not None:
    _BACKENDS["compiled"] = compiled_backend

_active_name = "compiled" if compiled_backend is not None else "python"


def active_backend() -> str:
    return _active_name


def available_backends() -> tuple[str, ...]:
    return tuple(sorted(_BACKENDS))


@contextmanager
def use_backend(name: str):
    """Temporarily pin the kernel backend (for tests and benchmarks)."""
    global _active_name
    if name not in _BACKENDS:
        raise ValueError(f"unknown backend {name!r}; have {sorted(_BACKENDS)}")
    prev = _active_name
    _active_name = name
    try:
        yield
    finally:
        _active_name = prev


def _mask_u8(mask) -> np.ndarray:
    return np.ascontiguousarray(mask, dtype=np.uint8)


def label8(mask) -> tuple[np.ndarray, int]:
    labels, n = _BACKENDS[_active_name].label8(_mask_u8(mask))
    return labels, n


def flood(seeds, pred) -> np.ndarray:
    seeds = np.ascontiguousarray(seeds, dtype=np.int32)
    return _BACKENDS[_active_name].flood(seeds, _mask_u8(pred))


def erode_cross(mask, iterations: int) -> np.ndarray:
    return _BACKENDS[_active_name].erode_cross(_mask_u8(mask), iterations)


def dilate_cross(mask, iterations: int) -> np.ndarray:
    return _BACKENDS[_active_name].dilate_cross(_mask_u8(mask), iterations)


def local_mean(img, kernel) -> np.ndarray:
    img = np.ascontiguousarray(img, dtype=np.float64)
    kernel = np.ascontiguousarray(kernel, dtype=np.float64)
    return _BACKENDS[_active_name].local_mean(img, kernel)
