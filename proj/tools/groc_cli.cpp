#include <CLI11.hpp>

#include <atomic>
#include <csignal>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "groc/canonical_json.hpp"
#include "groc/http.hpp"
#include "groc/ingest.hpp"
#include "groc/llm.hpp"
#include "groc/metrics.hpp"
#include "groc/pipeline.hpp"
#include "groc/stats.hpp"
#include "groc/svo.hpp"

using nlohmann::json;
using namespace groc;

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kUsage = 2;

struct Common {
  std::string config_path;
  std::string manifest_path;
  bool no_manifest = false;
  bool verbose = false;
};

struct Overrides {
  std::string endpoint;
  std::string model;
  std::optional<std::int64_t> seed;
  std::optional<int> retries;
  std::optional<int> backoff_ms;
  std::optional<int> max_in_flight;
  std::optional<double> fps;
  std::optional<double> iou_threshold;
  std::optional<double> sim_threshold;
  std::optional<double> objectness_threshold;
  std::string similarity_backend;
  std::string embedding_endpoint;
  std::string fixtures;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::mutex log_mu;

void log_line(const std::string& line) {
  std::lock_guard lock(log_mu);
  std::fputs((line + "\n").c_str(), stderr);
  std::fflush(stderr);
}

std::string read_input(const std::string& path) {
  try {
    return read_file(path);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

PipelineConfig resolve_config(const Common& common, const Overrides& o) {
  PipelineConfig c;
  if (!common.config_path.empty()) {
    try {
      c = PipelineConfig::from_json(json::parse(read_input(common.config_path)));
    } catch (const json::parse_error& e) {
      throw UsageError(common.config_path + ": " + e.what());
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
  }
  if (!o.endpoint.empty()) c.chat.endpoint = o.endpoint;
  if (!o.model.empty()) c.chat.model = o.model;
  if (o.seed) c.chat.seed = o.seed;
  if (o.retries) c.retry.retries = *o.retries;
  if (o.backoff_ms) c.retry.backoff = std::chrono::milliseconds(*o.backoff_ms);
  if (o.max_in_flight) c.max_in_flight = *o.max_in_flight;
  if (o.fps) c.fps = *o.fps;
  if (o.iou_threshold) c.iou_threshold = *o.iou_threshold;
  if (o.sim_threshold) c.sim_threshold = *o.sim_threshold;
  if (o.objectness_threshold) c.objectness_threshold = *o.objectness_threshold;
  if (!o.similarity_backend.empty()) c.similarity_backend = o.similarity_backend;
  if (!o.embedding_endpoint.empty()) c.embedding_endpoint = o.embedding_endpoint;
  try {
    return PipelineConfig::from_json(c.to_json());
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

std::shared_ptr<ChatClient> make_client(const PipelineConfig& c, const Overrides& o) {
  if (!o.fixtures.empty()) {
    read_input(o.fixtures);
    return std::make_shared<ReplayChatClient>(FixtureStore::load_file(o.fixtures));
  }
  try {
    return std::make_shared<HttpChatClient>(c.chat);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

template <typename Fn>
void parallel_for(std::size_t n, int workers, Fn&& fn) {
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) fn(i);
  };
  std::vector<std::thread> pool;
  const auto count = std::min<std::size_t>(static_cast<std::size_t>(std::max(workers, 1)), std::max<std::size_t>(n, 1));
  for (std::size_t w = 1; w < count; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
}

struct Run {
  std::string command;
  json config = json::object();
  std::map<std::string, std::string> inputs;
  std::map<std::string, std::string> outputs;
  json counts = json::object();

  void input(const std::string& path, const std::string& bytes) { inputs[path] = sha256_hex(bytes); }

  void output(const std::string& path, const std::string& bytes, const std::string& label = "") {
    if (path.empty() || path == "-") {
      std::cout << bytes;
      std::cout.flush();
      outputs["-"] = sha256_hex(bytes);
      return;
    }
    write_file(path, bytes);
    outputs[label.empty() ? path : label] = sha256_hex(bytes);
  }

  void finish(const Common& common, const std::string& default_path) {
    if (common.no_manifest) return;
    std::string path = common.manifest_path;
    if (path.empty()) path = default_path.empty() || default_path == "-" ? "groc-run.manifest.json" : default_path;
    write_file(path, canonical_dump_pretty(run_manifest(command, config, inputs, outputs, counts)) + "\n");
  }
};

std::string manifest_next_to(const std::string& out) {
  return out.empty() || out == "-" ? std::string() : out + ".manifest.json";
}

json reasons_json(const std::vector<Reason>& rs) {
  json a = json::array();
  for (const auto& r : rs) a.push_back({{"code", r.code}, {"message", r.message}});
  return a;
}

json relation_json(const SvoRelation& r) {
  json adps = json::array();
  for (const auto& a : r.adpositions) adps.push_back({a.adposition, a.object});
  return {{"subject", r.subject}, {"verb", r.verb}, {"object", r.object ? json(*r.object) : json(nullptr)},
          {"adpositions", adps}};
}

// ---------------------------------------------------------------------------

int cmd_ingest(const Common& common, const std::string& input, const std::string& out) {
  Run run{"ingest"};
  const auto bytes = read_input(input);
  run.input(input, bytes);
  auto frames = parse_frame_grounding(bytes);
  std::string text;
  std::size_t objects = 0;
  std::size_t skipped = 0;
  for (auto& f : frames) {
    VideoInput one{f.video_id, {f}};
    std::vector<Reason> warnings;
    const auto phrases = frame_phrases(one, warnings);
    for (const auto& w : warnings) log_line(f.video_id + ": " + w.code + ": " + w.message);
    skipped += warnings.size();
    f.objects.clear();
    for (const auto& p : phrases) f.objects.push_back({p.phrase, p.box, std::nullopt});
    objects += f.objects.size();
    text += serialize_frame_grounding(f) + "\n";
  }
  run.output(out, text);
  run.counts = {{"frames", frames.size()}, {"objects", objects}, {"skipped_objects", skipped}};
  run.finish(common, manifest_next_to(out));
  return kOk;
}

int cmd_svo(const Common& common, const std::string& input, const std::string& out) {
  Run run{"svo"};
  const auto bytes = read_input(input);
  run.input(input, bytes);
  const auto videos = group_by_video(parse_frame_grounding(bytes));
  std::string text;
  for (const auto& v : videos) {
    const auto frames = frame_relations(v);
    json jf = json::array();
    for (const auto& f : frames) {
      json rels = json::array();
      for (const auto& r : f.relations) rels.push_back(relation_json(r));
      jf.push_back({{"frame_index", f.frame_index}, {"relations", rels}});
    }
    text += canonical_dump({{"video_id", v.video_id}, {"frames", jf}, {"block", render_svo_block(frames)}}) + "\n";
  }
  run.output(out, text);
  run.counts = {{"videos", videos.size()}};
  run.finish(common, manifest_next_to(out));
  return kOk;
}

int cmd_aggregate(const Common& common, const Overrides& o, const std::string& input, const std::string& out) {
  const auto config = resolve_config(common, o);
  auto client = make_client(config, o);
  Run run{"aggregate", config.to_json()};
  const auto bytes = read_input(input);
  run.input(input, bytes);
  const auto videos = group_by_video(parse_frame_grounding(bytes));
  std::vector<std::string> lines(videos.size());
  std::atomic<std::size_t> rejected{0};
  parallel_for(videos.size(), config.max_in_flight, [&](std::size_t i) {
    const auto outcome = aggregate_video(frame_relations(videos[i]), *client, config.retry);
    json doc = {{"video_id", videos[i].video_id}, {"attempts", outcome.attempts}};
    if (outcome.caption) {
      doc["caption"] = render_tagged_caption(outcome.caption->caption);
      doc["raw_response"] = outcome.caption->raw_response;
    } else {
      ++rejected;
      doc["rejection"] = {{"code", outcome.rejection->code}, {"message", outcome.rejection->message}};
    }
    lines[i] = canonical_dump(doc) + "\n";
    if (common.verbose) log_line(videos[i].video_id + (outcome.caption ? " aggregated" : " rejected"));
  });
  std::string text;
  for (const auto& l : lines) text += l;
  run.output(out, text);
  run.counts = {{"videos", videos.size()}, {"rejected", rejected.load()}};
  run.finish(common, manifest_next_to(out));
  return kOk;
}

int cmd_track(const Common& common, const Overrides& o, const std::string& input, const std::string& captions_path,
              const std::string& out) {
  const auto config = resolve_config(common, o);
  auto client = make_client(config, o);
  Run run{"track", config.to_json()};
  const auto bytes = read_input(input);
  const auto cap_bytes = read_input(captions_path);
  run.input(input, bytes);
  run.input(captions_path, cap_bytes);
  const auto videos = group_by_video(parse_frame_grounding(bytes));

  std::map<std::string, TaggedCaption> captions;
  std::size_t line = 0;
  std::istringstream lines_in(cap_bytes);
  for (std::string l; std::getline(lines_in, l);) {
    ++line;
    if (l.find_first_not_of(" \t\r") == std::string::npos) continue;
    json doc;
    try {
      doc = json::parse(l);
    } catch (const json::parse_error& e) {
      throw ParseError(line, "", e.what());
    }
    if (!doc.contains("caption")) continue;
    if (!doc["caption"].is_string() || !doc.contains("video_id") || !doc["video_id"].is_string()) {
      throw ParseError(line, "/caption", "expected video_id and caption strings");
    }
    captions[doc["video_id"].get<std::string>()] = parse_tagged_caption(doc["caption"].get<std::string>());
  }

  std::vector<std::string> lines(videos.size());
  parallel_for(videos.size(), config.max_in_flight, [&](std::size_t i) {
    const auto& v = videos[i];
    auto it = captions.find(v.video_id);
    if (it == captions.end()) return;
    std::vector<Reason> warnings;
    const auto objects = frame_phrases(v, warnings);
    std::vector<std::string> phrases;
    for (const auto& p : it->second.phrases) {
      if (std::find(phrases.begin(), phrases.end(), p.text) == phrases.end()) phrases.push_back(p.text);
    }
    const auto tracked = track_by_language(objects, phrases, *client, config.retry);
    warnings.insert(warnings.end(), tracked.warnings.begin(), tracked.warnings.end());
    json assignments = json::array();
    for (const auto& a : tracked.assignments) {
      assignments.push_back({{"frame_index", a.frame_index},
                             {"frame_phrase", a.frame_phrase},
                             {"assigned", a.assigned ? json(*a.assigned) : json(nullptr)}});
    }
    lines[i] = canonical_dump({{"video_id", v.video_id},
                               {"assignments", assignments},
                               {"model_calls", tracked.model_calls},
                               {"warnings", reasons_json(warnings)}}) +
               "\n";
  });
  std::string text;
  std::size_t written = 0;
  for (const auto& l : lines) {
    text += l;
    written += l.empty() ? 0 : 1;
  }
  run.output(out, text);
  run.counts = {{"videos", written}};
  run.finish(common, manifest_next_to(out));
  return kOk;
}

int cmd_build(const Common& common, const Overrides& o, const std::string& input, const std::string& out_dir) {
  const auto config = resolve_config(common, o);
  auto client = make_client(config, o);
  Run run{"build", config.to_json()};
  const auto bytes = read_input(input);
  run.input(input, bytes);
  const auto videos = group_by_video(parse_frame_grounding(bytes));

  std::atomic<std::size_t> done{0};
  const auto outcomes = build_dataset(videos, *client, config, [&](const VideoOutcome& v) {
    const auto n = ++done;
    if (!common.verbose) return;
    std::string status = v.record ? "accepted" : "rejected";
    if (!v.record && !v.report.reasons.empty()) status += " (" + v.report.reasons.front().code + ")";
    log_line("[" + std::to_string(n) + "/" + std::to_string(videos.size()) + "] " + v.video_id + " " + status);
  });

  std::size_t accepted = 0;
  std::size_t calls = 0;
  std::map<std::string, std::size_t> reason_counts;
  for (const auto& v : outcomes) {
    calls += static_cast<std::size_t>(v.model_calls);
    if (v.record) {
      ++accepted;
    } else if (!v.report.reasons.empty()) {
      ++reason_counts[v.report.reasons.front().code];
    }
  }
  std::filesystem::create_directories(out_dir);
  const auto base = std::filesystem::path(out_dir);
  run.output((base / "dataset.jsonl").string(), dataset_jsonl(outcomes), "dataset.jsonl");
  run.output((base / "rejections.jsonl").string(), rejections_jsonl(outcomes), "rejections.jsonl");
  run.counts = {{"videos", outcomes.size()},
                {"accepted", accepted},
                {"rejected", outcomes.size() - accepted},
                {"rejection_reasons", reason_counts},
                {"model_calls", calls}};
  run.finish(common, (base / "manifest.json").string());
  std::cerr << "build: " << accepted << " accepted, " << outcomes.size() - accepted << " rejected\n";
  return kOk;
}

bool has_confidences(const std::vector<VideoAnnotation>& records) {
  for (const auto& r : records) {
    for (const auto& t : r.tracks) {
      if (t.confidence) return true;
    }
  }
  return false;
}

int cmd_eval(const Common& common, const Overrides& o, const std::string& pred_path, const std::string& gt_path,
             const std::string& out) {
  const auto config = resolve_config(common, o);
  Run run{"eval", config.to_json()};
  const auto pred_bytes = read_input(pred_path);
  const auto gt_bytes = read_input(gt_path);
  run.input(pred_path, pred_bytes);
  run.input(gt_path, gt_bytes);
  const auto gts = parse_annotation_lines(gt_bytes, true);
  double threshold = config.objectness_threshold;
  if (!has_confidences(parse_annotation_lines(pred_bytes, true))) {
    if (threshold > 0.0 && common.verbose) log_line("eval: predictions carry no confidences; no objectness threshold applied");
    threshold = 0.0;
  }
  const auto preds = load_predictions(pred_bytes, threshold);
  auto eval_cfg = config.eval_config();
  const auto report = evaluate(preds, gts, eval_cfg);
  auto doc = to_json(report);
  doc["config"]["objectness_threshold"] = threshold;
  run.output(out, canonical_dump_pretty(doc) + "\n");
  run.counts = {{"videos", report.per_video.size()}, {"predictions", preds.size()}};
  run.finish(common, manifest_next_to(out));
  return kOk;
}

int cmd_validate(const Common& common, const std::string& input, const std::string& kind, double threshold) {
  Run run{"validate"};
  const auto bytes = read_input(input);
  run.input(input, bytes);
  std::size_t invalid = 0;
  std::size_t total = 0;
  try {
    if (kind == "frames") {
      total = parse_frame_grounding(bytes).size();
    } else if (kind == "predictions") {
      total = load_predictions(bytes, threshold).size();
    } else {
      for (const auto& r : parse_annotation_lines(bytes, false)) {
        ++total;
        const auto rep = validate_video_annotation(r);
        if (rep.accepted) continue;
        ++invalid;
        for (const auto& reason : rep.reasons) std::cout << r.video_id << "\t" << reason.code << "\t" << reason.message << "\n";
      }
    }
  } catch (const ValidationError& e) {
    ++invalid;
    for (const auto& reason : e.report().reasons) std::cout << e.report().video_id << "\t" << reason.code << "\t" << reason.message << "\n";
  } catch (const ParseError& e) {
    ++invalid;
    std::cout << "-\t" << e.code() << "\t" << e.what() << "\n";
  } catch (const Error& e) {
    ++invalid;
    std::cout << "-\t" << e.code() << "\t" << e.what() << "\n";
  }
  std::cout.flush();
  run.counts = {{"records", total}, {"invalid", invalid}};
  run.finish(common, "");
  if (invalid == 0) std::cerr << "validate: " << total << " records ok\n";
  return invalid == 0 ? kOk : kInvalid;
}

int cmd_stats(const Common& common, const std::string& input, const std::string& out) {
  Run run{"stats"};
  const auto bytes = read_input(input);
  run.input(input, bytes);
  const auto records = parse_annotation_lines(bytes, true);
  const auto report = dataset_stats(records);
  run.output(out, canonical_dump_pretty(to_json(report)) + "\n");
  run.counts = {{"videos", records.size()}};
  run.finish(common, manifest_next_to(out));
  return kOk;
}

MockChatServer* running_server = nullptr;

void on_signal(int) {
  if (running_server != nullptr) running_server->stop();
}

int cmd_mock(const std::string& fixtures, const std::string& host, int port) {
  read_input(fixtures);
  MockChatServer server(FixtureStore::load_file(fixtures));
  const int bound = server.start(host, port);
  running_server = &server;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::cout << "listening on http://" << host << ":" << bound << std::endl;
  server.wait();
  running_server = nullptr;
  return kOk;
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config_path, "JSON config file");
  sub->add_option("--manifest", c.manifest_path, "Run manifest path");
  sub->add_flag("--no-manifest", c.no_manifest, "Do not write a run manifest");
  sub->add_flag("-v,--verbose", c.verbose, "Progress on stderr");
}

void add_model_overrides(CLI::App* sub, Overrides& o) {
  sub->add_option("--endpoint", o.endpoint, "Chat completions URL");
  sub->add_option("--model", o.model, "Model name");
  sub->add_option("--seed", o.seed, "Sampling seed sent to the endpoint");
  sub->add_option("--retries", o.retries, "Extra attempts per request")->check(CLI::NonNegativeNumber);
  sub->add_option("--backoff-ms", o.backoff_ms, "Initial transport backoff")->check(CLI::NonNegativeNumber);
  sub->add_option("--max-in-flight", o.max_in_flight, "Concurrent videos")->check(CLI::PositiveNumber);
  sub->add_option("--fps", o.fps, "Frame rate recorded in output")->check(CLI::PositiveNumber);
  sub->add_option("--fixtures", o.fixtures, "Replay model answers from a fixture file instead of HTTP");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grounded video caption dataset tools"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "groc 0.1.0");

  Common common;
  Overrides over;
  std::string input;
  std::string out;
  std::string out_dir;
  std::string captions;
  std::string pred;
  std::string gt;
  std::string kind = "annotations";
  double threshold = 0.0;
  std::string host = "127.0.0.1";
  int port = 8089;

  auto* ingest = app.add_subcommand("ingest", "Parse frame grounding output; masks become boxes");
  ingest->add_option("-i,--input", input, "Frame grounding JSONL")->required();
  ingest->add_option("-o,--out", out, "Output JSONL (default stdout)");
  add_common(ingest, common);

  auto* svo = app.add_subcommand("svo", "Extract subject-verb-object relations per frame");
  svo->add_option("-i,--input", input, "Frame grounding JSONL")->required();
  svo->add_option("-o,--out", out, "Output JSONL (default stdout)");
  add_common(svo, common);

  auto* aggregate = app.add_subcommand("aggregate", "Video-level captions from frame relations");
  aggregate->add_option("-i,--input", input, "Frame grounding JSONL")->required();
  aggregate->add_option("-o,--out", out, "Output JSONL (default stdout)");
  add_common(aggregate, common);
  add_model_overrides(aggregate, over);

  auto* track = app.add_subcommand("track", "Classify frame phrases into caption phrases");
  track->add_option("-i,--input", input, "Frame grounding JSONL")->required();
  track->add_option("-c,--captions", captions, "Output of aggregate")->required();
  track->add_option("-o,--out", out, "Output JSONL (default stdout)");
  add_common(track, common);
  add_model_overrides(track, over);

  auto* build = app.add_subcommand("build", "Full pipeline: frames to grounded video records");
  build->add_option("-i,--input", input, "Frame grounding JSONL")->required();
  build->add_option("-o,--out-dir", out_dir, "Output directory")->required();
  add_common(build, common);
  add_model_overrides(build, over);

  auto* eval = app.add_subcommand("eval", "Score predictions against ground truth");
  eval->add_option("--pred", pred, "Prediction records JSONL")->required();
  eval->add_option("--gt", gt, "Ground-truth records JSONL")->required();
  eval->add_option("-o,--out", out, "Report path (default stdout)");
  eval->add_option("--iou-threshold", over.iou_threshold, "IoU gate")->check(CLI::Range(0.0, 1.0));
  eval->add_option("--sim-threshold", over.sim_threshold, "Phrase similarity gate")->check(CLI::Range(0.0, 1.0));
  eval->add_option("--objectness-threshold", over.objectness_threshold, "Drop predicted frames scored below this")
      ->check(CLI::Range(0.0, 1.0));
  eval->add_option("--similarity", over.similarity_backend, "lexical or embedding")
      ->check(CLI::IsMember({"lexical", "embedding"}));
  eval->add_option("--embedding-endpoint", over.embedding_endpoint, "POST {texts} -> {vectors}");
  eval->add_option("--workers", over.max_in_flight, "Parallel videos")->check(CLI::PositiveNumber);
  add_common(eval, common);

  auto* validate = app.add_subcommand("validate", "Check records against the data model");
  validate->add_option("-i,--input", input, "JSONL file")->required();
  validate->add_option("--kind", kind, "annotations, predictions or frames")
      ->check(CLI::IsMember({"annotations", "predictions", "frames"}));
  validate->add_option("--objectness-threshold", threshold, "Applied when --kind predictions");
  add_common(validate, common);

  auto* stats = app.add_subcommand("stats", "Dataset statistics");
  stats->add_option("-i,--input", input, "Records JSONL")->required();
  stats->add_option("-o,--out", out, "Report path (default stdout)");
  add_common(stats, common);

  auto* mock = app.add_subcommand("mock-llm", "Serve fixture answers over the chat protocol");
  mock->add_option("-f,--fixtures", over.fixtures, "Fixture JSONL")->required();
  mock->add_option("--host", host, "Bind address");
  mock->add_option("--port", port, "Port, 0 for any free port")->check(CLI::Range(0, 65535));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*ingest) return cmd_ingest(common, input, out);
    if (*svo) return cmd_svo(common, input, out);
    if (*aggregate) return cmd_aggregate(common, over, input, out);
    if (*track) return cmd_track(common, over, input, captions, out);
    if (*build) return cmd_build(common, over, input, out_dir);
    if (*eval) return cmd_eval(common, over, pred, gt, out);
    if (*validate) return cmd_validate(common, input, kind, threshold);
    if (*stats) return cmd_stats(common, input, out);
    if (*mock) return cmd_mock(over.fixtures, host, port);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.code() << ": " << e.what() << "\n";
    return kInvalid;
  } catch (const Error& e) {
    std::cerr << "error: " << e.code() << ": " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  }
  return kUsage;
}
