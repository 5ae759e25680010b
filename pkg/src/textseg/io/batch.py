"""Batch workflows behind the CLI: pairing, worker pools, report writing.

Work is distributed over a thread pool but every per-file computation is
pure, results are collected and sorted by stem before anything is
aggregated or printed, and each output file is derived only from its own
inputs (plus the global seed for synthesis), so worker count never changes
any output byte.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..errors import DomainError
from ..masks import BinaryMask, ClassMask, TextClass, binarize
from ..metrics import MODES, RelaxConfig, aggregate, evaluate
from ..postprocess import ExpandParams, NoiseParams, expand_partial, remove_noise
from ..synthgen import FontAsset, TextifyConfig, load_font_asset, textify
from . import codecs, reports

log = logging.getLogger("textseg")

IMAGE_SUFFIXES = (".png", ".jpg", ".jpeg", ".bmp", ".webp")
FONT_SUFFIXES = (".ttf", ".otf", ".ttc")


@dataclass(frozen=True)
class RunConfig:
    """Settings of one evaluation run."""

    mode: str = "both"  # normal | relaxed | both
    relax_iters: int = 1
    class_filter: str = "both"  # both | easy | hard
    threshold: float | None = None  # binarize 8-bit prediction PNGs when set
    fuzzy_palette: int = 0
    strict: bool = False
    workers: int = 4
    folds: dict[str, list[str]] | None = None

    def __post_init__(self):
        if self.mode not in MODES + ("both",):
            raise DomainError(f"mode must be normal, relaxed or both, got {self.mode!r}")
        if self.class_filter not in ("both", "easy", "hard"):
            raise DomainError(f"class filter must be both, easy or hard, got {self.class_filter!r}")
        if self.workers < 1:
            raise DomainError(f"workers must be >= 1, got {self.workers}")

    @property
    def modes(self) -> tuple[str, ...]:
        return MODES if self.mode == "both" else (self.mode,)


@dataclass
class BatchOutcome:
    written: list[Path] = field(default_factory=list)
    errors: list[str] = field(default_factory=list)
    skipped: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.errors


def list_images(directory: str | Path, suffixes=IMAGE_SUFFIXES) -> dict[str, Path]:
    directory = Path(directory)
    found: dict[str, Path] = {}
    for path in sorted(directory.iterdir()):
        if path.is_file() and path.suffix.lower() in suffixes:
            if path.stem in found:
                raise DomainError(f"duplicate stem {path.stem!r} in {directory}")
            found[path.stem] = path
    return found


def pair_stems(
    gt_dir: str | Path, pred_dir: str | Path
) -> tuple[list[tuple[str, Path, Path]], list[str]]:
    """Pair files by stem. Returns (pairs sorted by stem, unpaired stems)."""
    gt = list_images(gt_dir)
    pred = list_images(pred_dir)
    common = sorted(set(gt) & set(pred))
    unpaired = sorted((set(gt) ^ set(pred)))
    return [(stem, gt[stem], pred[stem]) for stem in common], unpaired


def _apply_class_filter(gt: ClassMask, class_filter: str) -> ClassMask:
    if class_filter == "both":
        return gt
    keep = TextClass.EASY if class_filter == "easy" else TextClass.HARD
    data = np.where(gt.data == keep, gt.data, 0)
    return ClassMask(data)


def _load_pred(path: Path, config: RunConfig) -> BinaryMask:
    if config.threshold is None:
        return codecs.decode_binary_png(path)
    return binarize(codecs.decode_prob_png(path), config.threshold)


def _eval_one(stem: str, gt_path: Path, pred_path: Path, out_dir: Path, config: RunConfig):
    gt = _apply_class_filter(codecs.decode_class_png(gt_path, config.fuzzy_palette), config.class_filter)
    pred = _load_pred(pred_path, config)
    relax = RelaxConfig(config.relax_iters)
    per_mode = {
        mode: evaluate(gt, pred, mode, relax, image_id=stem) for mode in config.modes
    }
    out_path = out_dir / f"{stem}.report.json"
    reports.write_json(out_path, reports.container_to_dict(stem, per_mode))
    return per_mode, out_path


def run_eval(
    gt_dir: str | Path, pred_dir: str | Path, out_dir: str | Path, config: RunConfig
) -> tuple[dict, BatchOutcome]:
    """Evaluate every paired mask, write per-image reports plus a summary.

    Returns (summary dict, outcome). The summary is also written to
    out_dir/summary.json.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    outcome = BatchOutcome()

    pairs, unpaired = pair_stems(gt_dir, pred_dir)
    if unpaired:
        if config.strict:
            outcome.errors.extend(f"unpaired file stem: {s}" for s in unpaired)
            return {}, outcome
        for stem in unpaired:
            log.warning("skipping unpaired stem %s", stem)
        outcome.skipped.extend(unpaired)
    if not pairs:
        outcome.errors.append("no paired gt/prediction files found")
        return {}, outcome

    def work(item):
        stem, gt_path, pred_path = item
        try:
            per_mode, out_path = _eval_one(stem, gt_path, pred_path, out_dir, config)
            return stem, per_mode, out_path, None
        except Exception as exc:
            return stem, None, None, f"{stem}: {exc}"

    with ThreadPoolExecutor(max_workers=config.workers) as pool:
        results = list(pool.map(work, pairs))

    collected: dict[str, dict] = {}
    for stem, per_mode, out_path, error in results:
        if error is not None:
            outcome.errors.append(error)
        else:
            collected[stem] = per_mode
            outcome.written.append(out_path)

    if not collected:
        return {}, outcome

    per_mode_entries = {}
    for mode in config.modes:
        mode_reports = [collected[stem][mode] for stem in sorted(collected)]
        try:
            per_mode_entries[mode] = aggregate(mode_reports, config.folds)
        except DomainError as exc:
            outcome.errors.append(f"aggregate ({mode}): {exc}")
            return {}, outcome

    summary = reports.summary_to_dict(
        per_mode_entries,
        n_images=len(collected),
        fold_names=sorted(config.folds) if config.folds else None,
    )
    summary_path = out_dir / "summary.json"
    reports.write_json(summary_path, summary)
    outcome.written.append(summary_path)
    return summary, outcome


def expand_mask_inputs(inputs: list[str | Path]) -> list[Path]:
    """Accept mask files and/or directories of PNGs."""
    paths: list[Path] = []
    for item in inputs:
        p = Path(item)
        if p.is_dir():
            paths.extend(sorted(q for q in p.iterdir() if q.suffix.lower() == ".png"))
        else:
            paths.append(p)
    return paths


def run_denoise(
    inputs: list[Path], out_dir: str | Path, params: NoiseParams, workers: int = 4
) -> BatchOutcome:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    outcome = BatchOutcome()

    def work(path: Path):
        try:
            mask = codecs.decode_binary_png(path)
            cleaned = remove_noise(mask, params)
            out_path = out_dir / path.name
            codecs.encode_binary_png(cleaned, out_path)
            return out_path, None
        except Exception as exc:
            return None, f"{path}: {exc}"

    with ThreadPoolExecutor(max_workers=workers) as pool:
        for out_path, error in pool.map(work, inputs):
            if error is not None:
                outcome.errors.append(error)
            else:
                outcome.written.append(out_path)
    return outcome


def run_expand(
    images_dir: str | Path,
    masks_dir: str | Path,
    out_dir: str | Path,
    params: ExpandParams,
    union: bool = False,
    workers: int = 4,
    strict: bool = False,
) -> BatchOutcome:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    outcome = BatchOutcome()
    pairs, unpaired = pair_stems(images_dir, masks_dir)
    if unpaired:
        if strict:
            outcome.errors.extend(f"unpaired file stem: {s}" for s in unpaired)
            return outcome
        for stem in unpaired:
            log.warning("skipping unpaired stem %s", stem)
        outcome.skipped.extend(unpaired)
    if not pairs:
        outcome.errors.append("no paired image/mask files found")
        return outcome

    def work(item):
        stem, image_path, mask_path = item
        try:
            gray = codecs.decode_gray_png(image_path)
            mask = codecs.decode_binary_png(mask_path)
            grown = expand_partial(gray, mask, params)
            if union:
                grown = BinaryMask(grown.data | mask.data)
            out_path = out_dir / f"{stem}.png"
            codecs.encode_binary_png(grown, out_path)
            return out_path, None
        except Exception as exc:
            return None, f"{stem}: {exc}"

    with ThreadPoolExecutor(max_workers=workers) as pool:
        for out_path, error in pool.map(work, pairs):
            if error is not None:
                outcome.errors.append(error)
            else:
                outcome.written.append(out_path)
    return outcome


def load_font_dir(fonts_dir: str | Path, size: int = 24) -> list[FontAsset]:
    fonts_dir = Path(fonts_dir)
    assets = []
    for path in sorted(fonts_dir.iterdir()):
        if path.suffix.lower() not in FONT_SUFFIXES or not path.is_file():
            continue
        try:
            asset = load_font_asset(path, size)
        except Exception as exc:
            log.warning("skipping font %s: %s", path.name, exc)
            continue
        if asset.supported:
            assets.append(asset)
        else:
            log.warning("skipping font %s: no supported characters", path.name)
    return assets


def _style_to_dict(style) -> dict:
    return {
        "text_color": list(style.text_color),
        "border_color": list(style.border_color) if style.border_color else None,
        "border_width": style.border_width,
        "orientation": style.orientation,
        "transparency": style.transparency,
        "rotation": style.rotation,
    }


def _manifest(stem: str, pair_seed: int, shape, records) -> dict:
    return {
        "schema_version": reports.SCHEMA_VERSION,
        "source_image": stem,
        "seed": pair_seed,
        "size": [int(shape[1]), int(shape[0])],
        "rects": [
            {
                "rect": {"x": r.rect.x, "y": r.rect.y, "w": r.rect.w, "h": r.rect.h},
                "font": Path(r.font_path).name,
                "font_size": r.font_size,
                "style": _style_to_dict(r.style),
                "text": r.text,
                "lines": list(r.lines),
            }
            for r in records
        ],
    }


def run_synth(
    images_dir: str | Path,
    fonts_dir: str | Path,
    out_dir: str | Path,
    count: int,
    seed: int,
    workers: int = 1,
    config: TextifyConfig = TextifyConfig(),
) -> BatchOutcome:
    """Generate `count` (image, mask, manifest) triples.

    Source images are cycled in stem order; pair i is drawn with its own
    generator seeded by seed + i, so outputs are byte-identical no matter
    how the pairs are spread over workers. Output names carry that per-pair
    seed: {stem}_{seed}.png / {stem}_{seed}.mask.png / {stem}_{seed}.manifest.json.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    outcome = BatchOutcome()
    if count < 0:
        outcome.errors.append(f"count must be >= 0, got {count}")
        return outcome
    if count == 0:
        return outcome

    images = list_images(images_dir)
    if not images:
        outcome.errors.append(f"no source images in {images_dir}")
        return outcome
    fonts = load_font_dir(fonts_dir)
    if not fonts:
        outcome.errors.append(f"no usable fonts in {fonts_dir}")
        return outcome
    stems = sorted(images)

    def work(index: int):
        stem = stems[index % len(stems)]
        pair_seed = seed + index
        try:
            rgb = codecs.decode_rgb_png(images[stem])
            rng = np.random.default_rng(pair_seed)
            records = []
            out_img, mask = textify(rgb, fonts, rng, config, record=records)
            base = out_dir / f"{stem}_{pair_seed}"
            paths = [Path(f"{base}.png"), Path(f"{base}.mask.png"), Path(f"{base}.manifest.json")]
            codecs.encode_rgb_png(out_img, paths[0])
            codecs.encode_binary_png(mask, paths[1])
            reports.write_json(paths[2], _manifest(stem, pair_seed, rgb.shape, records))
            return paths, None
        except Exception as exc:
            return None, f"{stem} (seed {pair_seed}): {exc}"

    with ThreadPoolExecutor(max_workers=workers) as pool:
        for written, error in pool.map(work, range(count)):
            if error is not None:
                outcome.errors.append(error)
            else:
                outcome.written.extend(written)
    return outcome
