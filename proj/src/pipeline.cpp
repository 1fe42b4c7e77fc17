#include "groc/pipeline.hpp"

#include <atomic>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "groc/canonical_json.hpp"
#include "groc/svo.hpp"

namespace groc {

using nlohmann::json;

namespace {

template <typename T>
T get_as(const json& doc, const std::string& key, bool (json::*is)() const noexcept) {
  const auto& v = doc.at(key);
  if (!(v.*is)()) throw Error("invalid-config", "config key '" + key + "' has the wrong type");
  return v.get<T>();
}

}  // namespace

PipelineConfig PipelineConfig::from_json(const json& doc) {
  if (!doc.is_object()) throw Error("invalid-config", "config must be a JSON object");
  static const std::set<std::string> known = {
      "endpoint",        "model",          "temperature",          "seed",
      "api_key_env",     "timeout_s",      "retries",              "backoff_ms",
      "max_in_flight",   "iou_threshold",  "sim_threshold",        "objectness_threshold",
      "fps",             "similarity_backend", "embedding_endpoint",
  };
  for (const auto& [k, v] : doc.items()) {
    if (!known.contains(k)) throw Error("invalid-config", "unknown config key '" + k + "'");
  }
  PipelineConfig c;
  auto str = [&](const char* k, std::string& out) {
    if (doc.contains(k)) out = get_as<std::string>(doc, k, &json::is_string);
  };
  auto num = [&](const char* k, double& out) {
    if (doc.contains(k)) out = get_as<double>(doc, k, &json::is_number);
  };
  auto integer = [&](const char* k, int& out) {
    if (doc.contains(k)) out = get_as<int>(doc, k, &json::is_number_integer);
  };
  str("endpoint", c.chat.endpoint);
  str("model", c.chat.model);
  num("temperature", c.chat.temperature);
  if (doc.contains("seed") && !doc["seed"].is_null()) c.chat.seed = get_as<std::int64_t>(doc, "seed", &json::is_number_integer);
  str("api_key_env", c.chat.api_key_env);
  if (doc.contains("timeout_s")) c.chat.timeout = std::chrono::seconds(get_as<int>(doc, "timeout_s", &json::is_number_integer));
  integer("retries", c.retry.retries);
  if (doc.contains("backoff_ms")) c.retry.backoff = std::chrono::milliseconds(get_as<int>(doc, "backoff_ms", &json::is_number_integer));
  integer("max_in_flight", c.max_in_flight);
  num("iou_threshold", c.iou_threshold);
  num("sim_threshold", c.sim_threshold);
  num("objectness_threshold", c.objectness_threshold);
  num("fps", c.fps);
  str("similarity_backend", c.similarity_backend);
  str("embedding_endpoint", c.embedding_endpoint);

  if (c.retry.retries < 0) throw Error("invalid-config", "retries must be >= 0");
  if (c.max_in_flight < 1) throw Error("invalid-config", "max_in_flight must be >= 1");
  if (!(c.fps > 0.0)) throw Error("invalid-config", "fps must be positive");
  if (c.similarity_backend != "lexical" && c.similarity_backend != "embedding") {
    throw Error("invalid-config", "similarity_backend must be 'lexical' or 'embedding'");
  }
  if (c.similarity_backend == "embedding" && c.embedding_endpoint.empty()) {
    throw Error("invalid-config", "embedding backend needs embedding_endpoint");
  }
  return c;
}

PipelineConfig PipelineConfig::load_file(const std::string& path) {
  try {
    return from_json(json::parse(read_file(path)));
  } catch (const json::parse_error& e) {
    throw Error("invalid-config", path + ": " + e.what());
  }
}

json PipelineConfig::to_json() const {
  return {
      {"endpoint", chat.endpoint},
      {"model", chat.model},
      {"temperature", chat.temperature},
      {"seed", chat.seed ? json(*chat.seed) : json(nullptr)},
      {"api_key_env", chat.api_key_env},
      {"timeout_s", chat.timeout.count()},
      {"retries", retry.retries},
      {"backoff_ms", retry.backoff.count()},
      {"max_in_flight", max_in_flight},
      {"iou_threshold", iou_threshold},
      {"sim_threshold", sim_threshold},
      {"objectness_threshold", objectness_threshold},
      {"fps", fps},
      {"similarity_backend", similarity_backend},
      {"embedding_endpoint", embedding_endpoint},
  };
}

EvalConfig PipelineConfig::eval_config() const {
  EvalConfig e;
  e.iou_threshold = iou_threshold;
  e.sim_threshold = sim_threshold;
  e.workers = max_in_flight;
  if (similarity_backend == "embedding") {
    e.similarity = std::make_shared<EmbeddingSimilarity>(http_embedder(embedding_endpoint, chat.timeout));
  }
  return e;
}

std::vector<VideoInput> group_by_video(std::vector<FrameGrounding> frames) {
  std::map<std::string, VideoInput> grouped;
  for (auto& f : frames) {
    auto& v = grouped[f.video_id];
    v.video_id = f.video_id;
    v.frames.push_back(std::move(f));
  }
  std::vector<VideoInput> out;
  for (auto& [id, v] : grouped) {
    std::stable_sort(v.frames.begin(), v.frames.end(),
                     [](const FrameGrounding& a, const FrameGrounding& b) { return a.frame_index < b.frame_index; });
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<FramePhrase> frame_phrases(const VideoInput& video, std::vector<Reason>& warnings) {
  std::vector<FramePhrase> out;
  for (const auto& f : video.frames) {
    for (const auto& obj : f.objects) {
      const std::string where = "frame " + std::to_string(f.frame_index) + " object '" + obj.phrase + "'";
      BoundingBox box;
      try {
        box = obj.box ? *obj.box : mask_to_box(*obj.mask, f.width, f.height);
        if (box.normalized) box = denormalize_box(box, f.width, f.height);
      } catch (const Error& e) {
        warnings.push_back({e.code(), where + " skipped: " + e.what()});
        continue;
      }
      box = clamp_box(box, f.width, f.height);
      if (!(box.w > 0.0 && box.h > 0.0)) {
        warnings.push_back({"degenerate-box", where + " has no area inside the frame"});
        continue;
      }
      out.push_back({f.frame_index, obj.phrase, box});
    }
  }
  return out;
}

std::vector<SvoFrame> frame_relations(const VideoInput& video) {
  std::vector<SvoFrame> out;
  for (const auto& f : video.frames) {
    const auto tokens = pos_tag(f.caption);
    out.push_back(extract_svo(tokens, f.frame_index));
  }
  return out;
}

VideoOutcome build_video(const VideoInput& video, ChatClient& client, const PipelineConfig& config) {
  VideoOutcome out;
  out.video_id = video.video_id;
  out.report.video_id = video.video_id;
  if (video.frames.empty()) {
    out.report.reject("no-frames", "video has no frames");
    return out;
  }

  VideoMeta meta;
  meta.fps = config.fps;
  meta.width = video.frames.front().width;
  meta.height = video.frames.front().height;
  std::optional<int> declared;
  int max_frame = 0;
  for (const auto& f : video.frames) {
    if (f.width != meta.width || f.height != meta.height) {
      out.report.reject("inconsistent-dimensions", "frame " + std::to_string(f.frame_index) + " is " +
                                                       std::to_string(f.width) + "x" + std::to_string(f.height));
      return out;
    }
    if (f.num_frames) {
      if (declared && *declared != *f.num_frames) {
        out.report.reject("inconsistent-num-frames", "frames disagree on num_frames");
        return out;
      }
      declared = f.num_frames;
    }
    max_frame = std::max(max_frame, f.frame_index);
  }
  meta.num_frames = declared ? *declared : max_frame + 1;

  std::vector<Reason> warnings;
  const auto objects = frame_phrases(video, warnings);
  const auto relations = frame_relations(video);

  const auto agg = aggregate_video(relations, client, config.retry);
  out.model_calls += agg.attempts;
  if (!agg.caption) {
    out.report.reject(agg.rejection->code, agg.rejection->message);
    out.report.warnings = std::move(warnings);
    return out;
  }
  const auto& caption = agg.caption->caption;

  std::vector<std::string> video_phrases;
  for (const auto& p : caption.phrases) {
    if (std::find(video_phrases.begin(), video_phrases.end(), p.text) == video_phrases.end()) {
      video_phrases.push_back(p.text);
    }
  }
  auto tracked = track_by_language(objects, video_phrases, client, config.retry);
  out.model_calls += tracked.model_calls;
  warnings.insert(warnings.end(), tracked.warnings.begin(), tracked.warnings.end());

  auto assembled = assemble_tracks(tracked.assignments, objects, caption, meta.num_frames);
  warnings.insert(warnings.end(), assembled.warnings.begin(), assembled.warnings.end());

  auto built = build_record(video.video_id, meta, caption, std::move(assembled.tracks));
  out.report = std::move(built.report);
  warnings.insert(warnings.end(), out.report.warnings.begin(), out.report.warnings.end());
  out.report.warnings = std::move(warnings);
  if (out.report.accepted) out.record = std::move(built.record);
  return out;
}

std::vector<VideoOutcome> build_dataset(std::span<const VideoInput> videos, ChatClient& client,
                                        const PipelineConfig& config,
                                        const std::function<void(const VideoOutcome&)>& on_done) {
  std::vector<VideoOutcome> out(videos.size());
  std::atomic<std::size_t> next{0};
  std::mutex done_mu;
  auto work = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= videos.size()) return;
      try {
        out[i] = build_video(videos[i], client, config);
      } catch (const Error& e) {
        out[i] = VideoOutcome{videos[i].video_id, std::nullopt, {}, 0};
        out[i].report.video_id = videos[i].video_id;
        out[i].report.reject(e.code(), e.what());
      }
      if (on_done) {
        std::lock_guard lock(done_mu);
        on_done(out[i]);
      }
    }
  };
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(config.max_in_flight),
                                                    std::max<std::size_t>(videos.size(), 1));
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  std::sort(out.begin(), out.end(), [](const VideoOutcome& a, const VideoOutcome& b) { return a.video_id < b.video_id; });
  return out;
}

std::string dataset_jsonl(std::span<const VideoOutcome> outcomes) {
  std::string out;
  for (const auto& o : outcomes) {
    if (o.record) out += serialize_video_annotation(*o.record) + "\n";
  }
  return out;
}

std::string rejections_jsonl(std::span<const VideoOutcome> outcomes) {
  auto reasons = [](const std::vector<Reason>& rs) {
    json a = json::array();
    for (const auto& r : rs) a.push_back({{"code", r.code}, {"message", r.message}});
    return a;
  };
  std::string out;
  for (const auto& o : outcomes) {
    if (o.record) continue;
    out += canonical_dump({{"video_id", o.video_id}, {"reasons", reasons(o.report.reasons)},
                           {"warnings", reasons(o.report.warnings)}}) +
           "\n";
  }
  return out;
}

json run_manifest(const std::string& command, const json& config,
                  const std::map<std::string, std::string>& input_digests,
                  const std::map<std::string, std::string>& output_digests, const json& counts) {
  return {
      {"tool", "groc"},
      {"version", "0.1.0"},
      {"command", command},
      {"config", config},
      {"config_sha256", sha256_hex(canonical_dump(config))},
      {"inputs", input_digests},
      {"outputs", output_digests},
      {"counts", counts},
  };
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("io", "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("io", "cannot write " + path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("io", "short write to " + path);
}

}  // namespace groc
