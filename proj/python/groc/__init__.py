"""Grounded video caption tooling: dataset building, validation and metrics."""

import json

from . import _core
from ._core import (
    GrocError,
    cider,
    denormalize_box,
    iou,
    mask_to_box,
    meteor_lite,
    normalize_box,
    parse_tagged_caption,
    phrase_similarity,
    pos_tag,
    render_svo,
    render_tagged_caption,
    tokenize,
)


def canonicalize_annotations(jsonl: str) -> str:
    return _core.canonicalize_annotations(jsonl)


def validate_annotation(text: str) -> dict:
    return json.loads(_core.validate_annotation(text))


def load_predictions(jsonl: str, objectness_threshold: float = 0.5) -> str:
    return _core.load_predictions(jsonl, objectness_threshold)


def evaluate(pred: str, gt: str, iou_threshold=0.5, sim_threshold=0.5, objectness_threshold=0.0, workers=1) -> dict:
    return json.loads(_core.evaluate(pred, gt, iou_threshold, sim_threshold, objectness_threshold, workers))


def dataset_stats(jsonl: str) -> dict:
    return json.loads(_core.dataset_stats(jsonl))


def build(frames: str, fixtures: str = "", config: dict | None = None) -> tuple[str, str]:
    """Runs the pipeline over frame grounding JSONL.

    With `fixtures` the model answers are replayed in-process; otherwise the
    chat endpoint from `config` is used. Returns (dataset, rejections) JSONL.
    """
    return _core.build(frames, fixtures, json.dumps(config or {}))


__all__ = [
    "GrocError",
    "build",
    "canonicalize_annotations",
    "cider",
    "dataset_stats",
    "denormalize_box",
    "evaluate",
    "iou",
    "load_predictions",
    "mask_to_box",
    "meteor_lite",
    "normalize_box",
    "parse_tagged_caption",
    "phrase_similarity",
    "pos_tag",
    "render_svo",
    "render_tagged_caption",
    "tokenize",
    "validate_annotation",
]
