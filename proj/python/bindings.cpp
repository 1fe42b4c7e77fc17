#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "groc/canonical_json.hpp"
#include "groc/pipeline.hpp"
#include "groc/stats.hpp"
#include "groc/svo.hpp"

namespace py = pybind11;
using namespace groc;

namespace {

BoundingBox box_of(const std::vector<double>& v, bool normalized) {
  if (v.size() != 4) throw py::value_error("a box is [x, y, w, h]");
  return {v[0], v[1], v[2], v[3], normalized};
}

std::vector<double> list_of(const BoundingBox& b) { return {b.x, b.y, b.w, b.h}; }

py::dict caption_dict(const TaggedCaption& c) {
  py::list phrases;
  for (const auto& p : c.phrases) {
    py::dict d;
    d["text"] = p.text;
    d["char_start"] = p.char_start;
    d["char_end"] = p.char_end;
    phrases.append(d);
  }
  py::dict out;
  out["plain"] = c.plain;
  out["phrases"] = phrases;
  return out;
}

std::string canonicalize_annotations(const std::string& jsonl) {
  return serialize_annotation_lines(parse_annotation_lines(jsonl));
}

std::string validate_annotation(const std::string& text) {
  const auto report = validate_video_annotation(decode_video_annotation(text));
  json reasons = json::array();
  for (const auto& r : report.reasons) reasons.push_back({{"code", r.code}, {"message", r.message}});
  return canonical_dump({{"video_id", report.video_id}, {"accepted", report.accepted}, {"reasons", reasons}});
}

std::string evaluate_jsonl(const std::string& pred, const std::string& gt, double iou_threshold, double sim_threshold,
                           double objectness_threshold, int workers) {
  const auto preds = load_predictions(pred, objectness_threshold);
  const auto gts = parse_annotation_lines(gt);
  EvalConfig cfg;
  cfg.iou_threshold = iou_threshold;
  cfg.sim_threshold = sim_threshold;
  cfg.workers = workers;
  return canonical_dump(to_json(evaluate(preds, gts, cfg)));
}

std::string stats_jsonl(const std::string& jsonl) {
  return canonical_dump(to_json(dataset_stats(parse_annotation_lines(jsonl))));
}

std::string render_svo(const std::vector<std::string>& sentences) {
  std::vector<SvoFrame> frames;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    frames.push_back(extract_svo(pos_tag(sentences[i]), static_cast<int>(i)));
  }
  return render_svo_block(frames);
}

py::tuple build_jsonl(const std::string& frames, const std::string& fixtures, const std::string& config_json) {
  auto config = PipelineConfig::from_json(json::parse(config_json));
  std::vector<VideoOutcome> outcomes;
  {
    py::gil_scoped_release release;
    auto videos = group_by_video(parse_frame_grounding(frames));
    if (fixtures.empty()) {
      HttpChatClient client(config.chat);
      outcomes = build_dataset(videos, client, config);
    } else {
      ReplayChatClient client(FixtureStore::parse(fixtures));
      outcomes = build_dataset(videos, client, config);
    }
  }
  return py::make_tuple(dataset_jsonl(outcomes), rejections_jsonl(outcomes));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  static py::exception<Error> error(m, "GrocError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetString(error.ptr(), (e.code() + ": " + e.what()).c_str());
    }
  });

  m.def("iou", [](const std::vector<double>& a, const std::vector<double>& b, bool normalized) {
    return iou(box_of(a, normalized), box_of(b, normalized));
  }, py::arg("a"), py::arg("b"), py::arg("normalized") = false);
  m.def("normalize_box", [](const std::vector<double>& b, int w, int h) {
    return list_of(normalize_box(box_of(b, false), w, h));
  });
  m.def("denormalize_box", [](const std::vector<double>& b, int w, int h) {
    return list_of(denormalize_box(box_of(b, true), w, h));
  });
  m.def("mask_to_box", [](int w, int h, const std::vector<std::uint32_t>& counts) {
    return list_of(mask_to_box({w, h, counts}, w, h));
  });
  m.def("parse_tagged_caption", [](const std::string& s) { return caption_dict(parse_tagged_caption(s)); });
  m.def("render_tagged_caption", [](const std::string& tagged) {
    return render_tagged_caption(parse_tagged_caption(tagged));
  });
  m.def("canonicalize_annotations", &canonicalize_annotations);
  m.def("validate_annotation", &validate_annotation);
  m.def("load_predictions", [](const std::string& jsonl, double threshold) {
    return serialize_annotation_lines(load_predictions(jsonl, threshold));
  });
  m.def("pos_tag", [](const std::string& s) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& t : pos_tag(s)) out.emplace_back(t.text, std::string(to_string(t.pos)));
    return out;
  });
  m.def("render_svo", &render_svo);
  m.def("tokenize", [](const std::string& s) { return tokenize(s); });
  m.def("cider", [](const std::map<std::string, std::string>& c, const std::map<std::string, std::vector<std::string>>& r) {
    auto res = cider_d(c, r);
    return py::make_tuple(res.score, res.per_video);
  });
  m.def("meteor_lite", [](const std::string& c, const std::string& r) { return meteor_lite(c, r); });
  m.def("phrase_similarity", [](const std::string& a, const std::string& b) { return phrase_similarity(a, b); });
  m.def("evaluate", &evaluate_jsonl, py::arg("pred"), py::arg("gt"), py::arg("iou_threshold") = 0.5,
        py::arg("sim_threshold") = 0.5, py::arg("objectness_threshold") = 0.0, py::arg("workers") = 1);
  m.def("dataset_stats", &stats_jsonl);
  m.def("build", &build_jsonl, py::arg("frames"), py::arg("fixtures") = "", py::arg("config") = "{}");
}
