"""File formats, report schema and batch workflows."""

from .batch import (
    BatchOutcome,
    RunConfig,
    expand_mask_inputs,
    list_images,
    load_font_dir,
    pair_stems,
    run_denoise,
    run_eval,
    run_expand,
    run_synth,
)
from .codecs import (
    PALETTE,
    atomic_write_bytes,
    decode_binary_png,
    decode_class_png,
    decode_gray_png,
    decode_prob_png,
    decode_rgb_png,
    encode_binary_png,
    encode_class_png,
    encode_rgb_png,
)
from .histogram import histogram_rows, write_histogram_csv, write_histogram_svg
from .reports import (
    SCHEMA_VERSION,
    container_from_dict,
    container_to_dict,
    dump_json_bytes,
    load_folds,
    load_report_file,
    summary_to_dict,
    write_json,
)

__all__ = [
    "PALETTE",
    "SCHEMA_VERSION",
    "BatchOutcome",
    "RunConfig",
    "atomic_write_bytes",
    "container_from_dict",
    "container_to_dict",
    "decode_binary_png",
    "decode_class_png",
    "decode_gray_png",
    "decode_prob_png",
    "decode_rgb_png",
    "dump_json_bytes",
    "encode_binary_png",
    "encode_class_png",
    "encode_rgb_png",
    "expand_mask_inputs",
    "histogram_rows",
    "list_images",
    "load_folds",
    "load_font_dir",
    "load_report_file",
    "pair_stems",
    "run_denoise",
    "run_eval",
    "run_expand",
    "run_synth",
    "summary_to_dict",
    "write_histogram_csv",
    "write_histogram_svg",
    "write_json",
]
