"""Compare the compiled kernels against the numpy fallback on page-sized masks.

Run with: python3 benchmarks/bench_kernels.py [--size WxH] [--repeats N]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from textseg import _kernels
from textseg.postprocess import gaussian_kernel


def page_like_mask(height: int, width: int, rng: np.random.Generator) -> np.ndarray:
    """Blocks of text-ish strokes plus speckle, roughly like a manga page mask."""
    mask = np.zeros((height, width), dtype=bool)
    for _ in range(40):
        y = int(rng.integers(0, height - 60))
        x = int(rng.integers(0, width - 60))
        bh = int(rng.integers(12, 60))
        bw = int(rng.integers(12, 60))
        block = rng.random((bh, bw)) < 0.55
        mask[y:y + bh, x:x + bw] |= block
    speckle = rng.random((height, width)) < 0.001
    return mask | speckle


def bench(fn, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--size", default="1170x1654", help="mask size as WxH")
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()
    width, height = (int(v) for v in args.size.split("x"))

    rng = np.random.default_rng(7)
    mask = page_like_mask(height, width, rng)
    labels, _ = _kernels.label8(mask)
    seeds = np.where(mask & (rng.random(mask.shape) < 0.02), labels, 0).astype(np.int32)
    gray = rng.random((height, width)) * 255.0
    kernel = gaussian_kernel(15)

    cases = [
        ("label8", lambda: _kernels.label8(mask)),
        ("flood", lambda: _kernels.flood(seeds, mask)),
        ("erode x2", lambda: _kernels.erode_cross(mask, 2)),
        ("dilate x2", lambda: _kernels.dilate_cross(mask, 2)),
        ("local_mean 15", lambda: _kernels.local_mean(gray, kernel)),
    ]

    names = _kernels.available_backends()
    print(f"mask {width}x{height}, best of {args.repeats}")
    header = f"{'kernel':<14}" + "".join(f"{n:>12}" for n in names)
    if len(names) == 2:
        header += f"{'speedup':>10}"
    print(header)
    for title, fn in cases:
        times = {}
        for name in names:
            with _kernels.use_backend(name):
                times[name] = bench(fn, args.repeats)
        row = f"{title:<14}" + "".join(f"{times[n] * 1e3:>10.1f}ms" for n in names)
        if "compiled" in times and "python" in times:
            row += f"{times['python'] / times['compiled']:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
