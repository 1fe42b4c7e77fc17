import json
import os
import pathlib
import subprocess

import jsonschema
import pytest

import groc

ROOT = pathlib.Path(__file__).resolve().parents[2]
DATA = pathlib.Path(os.environ.get("GROC_TEST_DATA", ROOT / "tests"))
SCHEMAS = ROOT / "schemas"
FIG7 = DATA / "fixtures" / "fig7"


def schema(name):
    return json.loads((SCHEMAS / f"{name}.schema.json").read_text())


def lines(path):
    return [json.loads(l) for l in path.read_text().splitlines() if l.strip()]


def test_iou():
    assert groc.iou([0, 0, 10, 10], [5, 5, 10, 10], False) == pytest.approx(25 / 175)
    assert groc.iou([0, 0, 10, 10], [20, 20, 5, 5], False) == 0.0


def test_box_conversion():
    n = groc.normalize_box([45.5, 25.6, 91, 128], 455, 256)
    assert n == pytest.approx([0.1, 0.1, 0.2, 0.5])
    assert groc.denormalize_box(n, 455, 256) == pytest.approx([45.5, 25.6, 91, 128])


def test_tagged_caption():
    c = groc.parse_tagged_caption("<p>A man</p> is slicing <p>an onion</p>")
    assert c["plain"] == "A man is slicing an onion"
    assert [(p["char_start"], p["char_end"]) for p in c["phrases"]] == [(0, 5), (17, 25)]
    with pytest.raises(groc.GrocError):
        groc.parse_tagged_caption("<p>A man is slicing")


def test_tokenize():
    assert groc.tokenize("A man, slicing an onion.") == ["a", "man", ",", "slicing", "an", "onion", "."]


def test_svo():
    assert groc.render_svo(["A man cuts an onion."]) == "[[`man', `cuts', `onion']]"


def test_text_metrics():
    assert groc.meteor_lite("a person stirs", "a person stirs") == pytest.approx(0.981481, abs=1e-6)
    assert groc.meteor_lite("stirs person a", "a person stirs") == pytest.approx(0.5, abs=1e-6)
    score, per_video = groc.cider({"a": "a man cuts", "b": "a dog"}, {"a": ["a man cuts"], "b": ["a dog runs"]})
    assert score == pytest.approx(sum(per_video.values()) / 2)
    assert per_video["a"] > per_video["b"]


def test_build_fig7():
    dataset, rejections = groc.build((FIG7 / "frames.jsonl").read_text(), (FIG7 / "llm.jsonl").read_text())
    assert dataset == (FIG7 / "expected_dataset.jsonl").read_text()
    assert rejections == ""


def test_evaluate_self():
    gt = (DATA / "golden" / "video_annotation.jsonl").read_text()
    report = groc.evaluate(gt, gt)
    jsonschema.validate(report, schema("metrics_report"))
    for level in ("frame", "video"):
        assert report[level] == {"ap50": 1.0, "miou": 1.0, "recall": 1.0}


def test_evaluate_predictions():
    pred = (DATA / "golden" / "predictions.jsonl").read_text()
    gt = (DATA / "golden" / "video_annotation.jsonl").read_text()
    report = groc.evaluate(pred, gt, objectness_threshold=0.5)
    jsonschema.validate(report, schema("metrics_report"))
    assert 0.0 <= report["frame"]["ap50"] <= 1.0


def test_validate():
    line = (FIG7 / "expected_dataset.jsonl").read_text().splitlines()[0]
    assert groc.validate_annotation(line)["accepted"]
    with pytest.raises(groc.GrocError, match="video_id"):
        groc.validate_annotation("{}")


def test_stats():
    s = groc.dataset_stats((FIG7 / "expected_dataset.jsonl").read_text())
    assert s["Num videos"] == 1
    assert s["Total num instances"] == 12


@pytest.mark.parametrize(
    "name,path",
    [
        ("frame_grounding", "golden/frame_grounding.jsonl"),
        ("frame_grounding", "fixtures/fig7/frames.jsonl"),
        ("video_annotation", "golden/video_annotation.jsonl"),
        ("video_annotation", "fixtures/fig7/expected_dataset.jsonl"),
        ("predictions", "golden/predictions.jsonl"),
        ("predictions", "fixtures/scored_predictions.jsonl"),
    ],
)
def test_goldens_match_schemas(name, path):
    for doc in lines(DATA / path):
        jsonschema.validate(doc, schema(name))


def test_canonicalize_is_stable():
    text = (DATA / "golden" / "video_annotation.jsonl").read_text()
    assert groc.canonicalize_annotations(text) == text


@pytest.mark.skipif(not os.environ.get("GROC_CLI"), reason="GROC_CLI not set")
def test_cli_eval(tmp_path):
    gt = DATA / "golden" / "video_annotation.jsonl"
    out = tmp_path / "report.json"
    subprocess.run([os.environ["GROC_CLI"], "eval", "--pred", gt, "--gt", gt, "-o", out], check=True)
    report = json.loads(out.read_text())
    jsonschema.validate(report, schema("metrics_report"))
    assert report["frame"]["ap50"] == 1.0
