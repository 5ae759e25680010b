"""JSON schema for per-image reports, aggregate summaries and fold manifests.

Serialization is deterministic: key order is fixed by construction, floats
use Python's shortest-repr formatting, and identical reports always produce
identical bytes.
"""

from __future__ import annotations

import json
from pathlib import Path

from ..errors import DomainError
from ..metrics import (
    AggregateEntry,
    ClassSection,
    ComponentScores,
    MetricsReport,
    PixelScores,
)
from .codecs import atomic_write_bytes

SCHEMA_VERSION = 1


def _component_to_dict(c: ComponentScores) -> dict:
    return {
        "m": c.m,
        "tp": c.tp,
        "fp": c.fp,
        "r_quant": c.r_quant,
        "p_quant": c.p_quant,
        "r_qual": c.r_qual,
        "p_qual": c.p_qual,
        "f1_qual": c.f1_qual,
        "gr": c.gr,
        "gp": c.gp,
        "gf1": c.gf1,
    }


def _component_from_dict(d: dict) -> ComponentScores:
    return ComponentScores(**{k: d[k] for k in (
        "m", "tp", "fp", "r_quant", "p_quant", "r_qual", "p_qual", "f1_qual", "gr", "gp", "gf1"
    )})


def report_to_dict(report: MetricsReport) -> dict:
    return {
        "degenerate": report.degenerate,
        "n_detections": report.n_detections,
        "pixel": {
            "tp": report.pixel.tp,
            "fp": report.pixel.fp,
            "fn": report.pixel.fn,
            "precision": report.pixel.precision,
            "recall": report.pixel.recall,
            "pf1": report.pixel.pf1,
        },
        "component": _component_to_dict(report.component),
        "per_class": {
            name: _component_to_dict(section.component)
            for name, section in sorted(report.per_class.items())
        },
        "per_component_f1": [
            [label, class_name, f1] for label, class_name, f1 in report.per_component_f1
        ],
    }


def report_from_dict(image_id: str, mode: str, d: dict) -> MetricsReport:
    pixel = d["pixel"]
    return MetricsReport(
        image_id=image_id,
        mode=mode,
        degenerate=bool(d["degenerate"]),
        pixel=PixelScores(
            tp=pixel["tp"], fp=pixel["fp"], fn=pixel["fn"],
            precision=pixel["precision"], recall=pixel["recall"], pf1=pixel["pf1"],
        ),
        component=_component_from_dict(d["component"]),
        n_detections=d["n_detections"],
        per_class={
            name: ClassSection(name=name, component=_component_from_dict(sub))
            for name, sub in d["per_class"].items()
        },
        per_component_f1=tuple(
            (int(label), str(cls), float(f1)) for label, cls, f1 in d["per_component_f1"]
        ),
    )


def container_to_dict(image_id: str, reports: dict[str, MetricsReport]) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "image_id": image_id,
        "modes": {mode: report_to_dict(reports[mode]) for mode in sorted(reports)},
    }


def container_from_dict(d: dict) -> list[MetricsReport]:
    if d.get("schema_version") != SCHEMA_VERSION:
        raise DomainError(f"unsupported report schema_version {d.get('schema_version')!r}")
    image_id = d["image_id"]
    return [
        report_from_dict(image_id, mode, sub) for mode, sub in sorted(d["modes"].items())
    ]


def dump_json_bytes(payload: dict) -> bytes:
    return (json.dumps(payload, indent=2, ensure_ascii=False) + "\n").encode("utf-8")


def write_json(path: str | Path, payload: dict) -> None:
    atomic_write_bytes(path, dump_json_bytes(payload))


def load_report_file(path: str | Path) -> list[MetricsReport]:
    with open(path, encoding="utf-8") as handle:
        return container_from_dict(json.load(handle))


def load_folds(path: str | Path) -> dict[str, list[str]]:
    """Fold manifest: JSON object mapping fold name to a list of stems."""
    with open(path, encoding="utf-8") as handle:
        raw = json.load(handle)
    if not isinstance(raw, dict) or not raw:
        raise DomainError(f"{path}: fold manifest must be a non-empty JSON object")
    folds = {}
    for name, stems in raw.items():
        if not isinstance(stems, list) or not all(isinstance(s, str) for s in stems):
            raise DomainError(f"{path}: fold {name!r} must map to a list of stems")
        folds[str(name)] = [str(s) for s in stems]
    return folds


def summary_to_dict(
    per_mode: dict[str, dict[str, AggregateEntry]],
    n_images: int,
    fold_names: list[str] | None,
) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "n_images": n_images,
        "folds": fold_names,
        "modes": {
            mode: {
                key: {
                    "mean": entry.mean,
                    "std": entry.std,
                    "display": entry.display,
                    "group_means": entry.group_means,
                }
                for key, entry in entries.items()
            }
            for mode, entries in sorted(per_mode.items())
        },
    }
