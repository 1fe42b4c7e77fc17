#include "groc/stats.hpp"

#include "groc/metrics.hpp"
#include "groc/tubes.hpp"

namespace groc {

StatsReport dataset_stats(std::span<const VideoAnnotation> records) {
  if (records.empty()) throw Error("empty-input", "dataset_stats: no records");
  StatsReport s;
  s.num_videos = records.size();
  double frames = 0.0;
  double duration = 0.0;
  double box_w = 0.0;
  double box_h = 0.0;
  double tube_frames = 0.0;
  double caption_words = 0.0;
  for (const auto& r : records) {
    frames += r.num_frames;
    duration += r.num_frames / r.fps;
    for (const auto& w : tokenize(r.caption.plain)) {
      if (!is_punctuation(w)) caption_words += 1.0;
    }
    for (const auto& t : r.tracks) {
      for (const auto& [f, b] : t.boxes) {
        const auto px = b.normalized ? denormalize_box(b, r.width, r.height) : b;
        box_w += px.w;
        box_h += px.h;
        ++s.total_instances;
      }
      for (const auto& [start, end] : derive_presence(t)) {
        tube_frames += end - start + 1;
        ++s.num_tubes;
      }
    }
  }
  const double n = static_cast<double>(records.size());
  s.avg_num_frames = frames / n;
  s.avg_duration_seconds = duration / n;
  s.avg_instances_per_video = static_cast<double>(s.total_instances) / n;
  s.avg_caption_words = caption_words / n;
  if (s.total_instances > 0) {
    s.avg_box_width = box_w / static_cast<double>(s.total_instances);
    s.avg_box_height = box_h / static_cast<double>(s.total_instances);
  }
  if (s.num_tubes > 0) s.avg_tube_length = tube_frames / static_cast<double>(s.num_tubes);
  return s;
}

nlohmann::json to_json(const StatsReport& s) {
  return {{"Num videos", s.num_videos},
          {"Avg num frames", s.avg_num_frames},
          {"Avg duration (seconds)", s.avg_duration_seconds},
          {"Avg num instances per video", s.avg_instances_per_video},
          {"Total num instances", s.total_instances},
          {"Avg box width x height", {s.avg_box_width, s.avg_box_height}},
          {"Avg tube length (frames)", s.avg_tube_length},
          {"Avg caption length (words)", s.avg_caption_words},
          {"box_size_weighting", "per instance"}};
}

}  // namespace groc
