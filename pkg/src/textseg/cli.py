"""Command line surface.

Subcommands: eval, denoise, expand, synth, loss, histogram, wrap. Everything
is deterministic given its flags and seed. The TEXTSEG_LOG_LEVEL environment
variable controls logging verbosity (DEBUG, INFO, WARNING, ...).
"""

from __future__ import annotations

import glob as globmod
import json
import logging
import os
import sys
from pathlib import Path

import click

from . import __version__
from .errors import DomainError
from .io import batch, codecs, reports
from .io.histogram import histogram_rows, write_histogram_csv, write_histogram_svg
from .lossref import dice_coefficient, focal_loss, mix_loss
from .postprocess import ExpandParams, NoiseParams
from .synthgen import TextifyConfig
from .synthgen.textify import PilMeasurer, _pil_font
from .synthgen.wrap import text_wrap_exact, text_wrap_fast

log = logging.getLogger("textseg")

_SUMMARY_COLUMNS = (
    ("pixel.pf1", "PF1"),
    ("component.p_quant", "Pquant"),
    ("component.f1_qual", "F1qual"),
    ("component.gf1", "GF1"),
)


def _configure_logging() -> None:
    level = os.environ.get("TEXTSEG_LOG_LEVEL", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING),
                        format="%(levelname)s %(name)s: %(message)s")


def _finish(outcome: batch.BatchOutcome) -> None:
    for line in outcome.errors:
        click.echo(f"error: {line}", err=True)
    if not outcome.ok:
        sys.exit(1)


@click.group()
@click.version_option(version=__version__, prog_name="textseg")
def main():
    """Text segmentation evaluation and synthetic data toolkit."""
    _configure_logging()


@main.command("eval")
@click.argument("gt_dir", type=click.Path(exists=True, file_okay=False))
@click.argument("pred_dir", type=click.Path(exists=True, file_okay=False))
@click.option("--out", required=True, type=click.Path(file_okay=False),
              help="Directory for per-image reports and summary.json.")
@click.option("--mode", type=click.Choice(["normal", "relaxed", "both"]), default="both",
              show_default=True, help="Which evaluation modes to compute.")
@click.option("--relax-iters", type=int, default=1, show_default=True,
              help="Morphology iterations used by relaxed mode.")
@click.option("--class-filter", type=click.Choice(["both", "easy", "hard"]), default="both",
              show_default=True, help="Restrict ground truth to one text class.")
@click.option("--threshold", type=float, default=None,
              help="Treat predictions as 8-bit probability maps binarized at this threshold.")
@click.option("--fuzzy-palette", type=int, default=0, show_default=True,
              help="Snap ground-truth colors within this per-channel distance.")
@click.option("--folds", type=click.Path(exists=True, dir_okay=False), default=None,
              help="JSON fold manifest: {fold name: [stems]}.")
@click.option("--strict", is_flag=True, help="Fail on unpaired files instead of skipping.")
@click.option("--workers", type=int, default=4, show_default=True)
def cli_eval(gt_dir, pred_dir, out, mode, relax_iters, class_filter, threshold,
             fuzzy_palette, folds, strict, workers):
    """Evaluate predicted masks against ground truth, write JSON reports."""
    try:
        config = batch.RunConfig(
            mode=mode,
            relax_iters=relax_iters,
            class_filter=class_filter,
            threshold=threshold,
            fuzzy_palette=fuzzy_palette,
            strict=strict,
            workers=workers,
            folds=reports.load_folds(folds) if folds else None,
        )
    except DomainError as exc:
        raise click.UsageError(str(exc))

    summary, outcome = batch.run_eval(gt_dir, pred_dir, out, config)
    if summary:
        click.echo(f"evaluated {summary['n_images']} image(s)")
        for mode_name, entries in summary["modes"].items():
            cells = [
                f"{title} {entries[key]['display']}"
                for key, title in _SUMMARY_COLUMNS
                if key in entries
            ]
            click.echo(f"  {mode_name:<8} " + "  ".join(cells))
    _finish(outcome)


@main.command("denoise")
@click.argument("inputs", nargs=-1, required=True, type=click.Path(exists=True))
@click.option("--out", required=True, type=click.Path(file_okay=False))
@click.option("--good-area", type=int, default=NoiseParams.good_area, show_default=True,
              help="Components at least this big always survive.")
@click.option("--index-window", type=int, default=NoiseParams.index_window, show_default=True)
@click.option("--y-slack", type=float, default=NoiseParams.y_slack, show_default=True)
@click.option("--x-slack", type=float, default=NoiseParams.x_slack, show_default=True)
@click.option("--workers", type=int, default=4, show_default=True)
def cli_denoise(inputs, out, good_area, index_window, y_slack, x_slack, workers):
    """Remove small unsupported components from binary masks."""
    params = NoiseParams(good_area=good_area, index_window=index_window,
                         y_slack=y_slack, x_slack=x_slack)
    paths = batch.expand_mask_inputs(list(inputs))
    if not paths:
        raise click.UsageError("no input masks found")
    _finish(batch.run_denoise(paths, out, params, workers=workers))


@main.command("expand")
@click.argument("images_dir", type=click.Path(exists=True, file_okay=False))
@click.argument("masks_dir", type=click.Path(exists=True, file_okay=False))
@click.option("--out", required=True, type=click.Path(file_okay=False))
@click.option("--block-size", type=int, default=ExpandParams.block_size, show_default=True)
@click.option("--offset-c", type=float, default=ExpandParams.offset_c, show_default=True)
@click.option("--max-components", type=int, default=ExpandParams.max_components, show_default=True)
@click.option("--min-area", type=int, default=ExpandParams.min_area, show_default=True)
@click.option("--min-overlap-frac", type=float, default=ExpandParams.min_overlap_frac,
              show_default=True)
@click.option("--union", is_flag=True, help="OR the result with the input mask.")
@click.option("--strict", is_flag=True, help="Fail on unpaired files instead of skipping.")
@click.option("--workers", type=int, default=4, show_default=True)
def cli_expand(images_dir, masks_dir, out, block_size, offset_c, max_components,
               min_area, min_overlap_frac, union, strict, workers):
    """Grow partial detections to whole strokes using the page image."""
    params = ExpandParams(block_size=block_size, offset_c=offset_c,
                          max_components=max_components, min_area=min_area,
                          min_overlap_frac=min_overlap_frac)
    _finish(batch.run_expand(images_dir, masks_dir, out, params,
                             union=union, workers=workers, strict=strict))


@main.command("synth")
@click.argument("images_dir", type=click.Path(exists=True, file_okay=False))
@click.argument("fonts_dir", type=click.Path(exists=True, file_okay=False))
@click.argument("out_dir", type=click.Path(file_okay=False))
@click.option("--count", type=int, default=10, show_default=True,
              help="How many (image, mask, manifest) triples to produce.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--workers", type=int, default=1, show_default=True)
def cli_synth(images_dir, fonts_dir, out_dir, count, seed, workers):
    """Burn random text into images and emit matching masks."""
    _finish(batch.run_synth(images_dir, fonts_dir, out_dir,
                            count=count, seed=seed, workers=workers,
                            config=TextifyConfig()))


@main.command("loss")
@click.argument("prob_png", type=click.Path(exists=True, dir_okay=False))
@click.argument("gt_png", type=click.Path(exists=True, dir_okay=False))
@click.option("--alpha", type=float, default=0.0, show_default=True)
@click.option("--gamma", type=float, default=1.0, show_default=True)
def cli_loss(prob_png, gt_png, alpha, gamma):
    """Reference loss values for an 8-bit probability map vs a binary mask."""
    prob = codecs.decode_prob_png(prob_png)
    gt = codecs.decode_binary_png(gt_png)
    try:
        payload = {
            "alpha": alpha,
            "gamma": gamma,
            "dice_coefficient": dice_coefficient(prob, gt),
            "focal_loss": focal_loss(prob, gt, gamma),
            "mix_loss": mix_loss(prob, gt, alpha, gamma),
        }
    except DomainError as exc:
        raise click.UsageError(str(exc))
    click.echo(json.dumps(payload, indent=2))


@main.command("histogram")
@click.argument("reports_glob", nargs=-1, required=True)
@click.option("--bins", type=int, default=10, show_default=True)
@click.option("--out", required=True, type=click.Path(dir_okay=False),
              help="CSV output path.")
@click.option("--svg", type=click.Path(dir_okay=False), default=None,
              help="Also render a bar chart to this SVG path.")
def cli_histogram(reports_glob, bins, out, svg):
    """Histogram per-component F1 from report JSON files."""
    paths: list[Path] = []
    for pattern in reports_glob:
        p = Path(pattern)
        if p.is_dir():
            paths.extend(sorted(p.glob("*.report.json")))
        elif p.is_file():
            paths.append(p)
        else:
            paths.extend(sorted(Path(m) for m in globmod.glob(pattern)))
    if not paths:
        raise click.UsageError("no report files matched")
    collected = []
    for path in paths:
        collected.extend(reports.load_report_file(path))
    try:
        rows = histogram_rows(collected, bins)
    except DomainError as exc:
        raise click.UsageError(str(exc))
    write_histogram_csv(out, rows)
    if svg:
        write_histogram_svg(svg, rows, bins)
    click.echo(f"histogrammed {len(collected)} report(s) into {out}")


@main.command("wrap")
@click.argument("text")
@click.option("--font", "font_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--size", type=int, default=24, show_default=True)
@click.option("--max-width", type=int, required=True)
@click.option("--max-height", type=int, required=True)
@click.option("--exact", is_flag=True, help="Use the reference algorithm instead of the fast one.")
def cli_wrap(text, font_path, size, max_width, max_height, exact):
    """Wrap TEXT to pixel bounds with the given font; one output line per row."""
    measurer = PilMeasurer(_pil_font(str(Path(font_path).resolve()), size))
    wrapper = text_wrap_exact if exact else text_wrap_fast
    for line in wrapper(measurer, text, max_width, max_height):
        click.echo(line)


if __name__ == "__main__":
    main()
