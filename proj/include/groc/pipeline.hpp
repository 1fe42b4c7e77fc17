#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "groc/http.hpp"
#include "groc/ingest.hpp"
#include "groc/llm.hpp"
#include "groc/metrics.hpp"
#include "groc/tubes.hpp"

namespace groc {

struct PipelineConfig {
  HttpChatConfig chat;
  RetryPolicy retry;
  int max_in_flight = 4;
  double iou_threshold = 0.5;
  double sim_threshold = 0.5;
  double objectness_threshold = 0.5;
  double fps = 5.0;
  std::string similarity_backend = "lexical";  // or "embedding"
  std::string embedding_endpoint;

  /// Unknown keys and ill-typed values throw Error "invalid-config".
  static PipelineConfig from_json(const nlohmann::json& doc);
  static PipelineConfig load_file(const std::string& path);
  nlohmann::json to_json() const;

  EvalConfig eval_config() const;
};

struct VideoInput {
  std::string video_id;
  std::vector<FrameGrounding> frames;  // sorted by frame_index
};

/// Groups frames by video_id, sorted.
std::vector<VideoInput> group_by_video(std::vector<FrameGrounding> frames);

/// Stage-1 objects as pixel boxes clamped to the frame; masks are reduced to
/// their bounding box. Unusable objects are skipped with a warning.
std::vector<FramePhrase> frame_phrases(const VideoInput& video, std::vector<Reason>& warnings);

std::vector<SvoFrame> frame_relations(const VideoInput& video);

struct VideoOutcome {
  std::string video_id;
  std::optional<VideoAnnotation> record;  // set when accepted
  ValidationReport report;
  int model_calls = 0;
};

VideoOutcome build_video(const VideoInput& video, ChatClient& client, const PipelineConfig& config);

/// Runs build_video over all videos with `config.max_in_flight` workers.
/// Results are sorted by video_id regardless of completion order.
std::vector<VideoOutcome> build_dataset(std::span<const VideoInput> videos, ChatClient& client,
                                        const PipelineConfig& config,
                                        const std::function<void(const VideoOutcome&)>& on_done = {});

std::string dataset_jsonl(std::span<const VideoOutcome> outcomes);
std::string rejections_jsonl(std::span<const VideoOutcome> outcomes);

/// Run manifest: command, config and its hash, sha256 of every input and
/// output file, and counts. No timestamps, so identical runs give identical
/// manifests.
nlohmann::json run_manifest(const std::string& command, const nlohmann::json& config,
                            const std::map<std::string, std::string>& input_digests,
                            const std::map<std::string, std::string>& output_digests,
                            const nlohmann::json& counts);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view bytes);

}  // namespace groc
