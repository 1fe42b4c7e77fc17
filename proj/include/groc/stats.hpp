#pragma once

#include <span>

#include <json.hpp>

#include "groc/core.hpp"

namespace groc {

struct StatsReport {
  std::size_t num_videos = 0;
  double avg_num_frames = 0.0;
  double avg_duration_seconds = 0.0;
  double avg_instances_per_video = 0.0;
  std::size_t total_instances = 0;
  double avg_box_width = 0.0;   // pixels, averaged per instance
  double avg_box_height = 0.0;
  std::size_t num_tubes = 0;
  double avg_tube_length = 0.0;  // frames per maximal presence segment
  double avg_caption_words = 0.0;
};

/// Throws Error "empty-input" on an empty record list.
StatsReport dataset_stats(std::span<const VideoAnnotation> records);

/// Keys follow the row names of the usual dataset statistics table.
nlohmann::json to_json(const StatsReport& report);

}  // namespace groc
