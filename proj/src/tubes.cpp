#include "groc/tubes.hpp"

#include <map>

namespace groc {

AssemblyResult assemble_tracks(std::span<const PhraseAssignment> assignments,
                               std::span<const FramePhrase> frame_objects,
                               const TaggedCaption& caption, int num_frames) {
  AssemblyResult out;
  if (assignments.size() != frame_objects.size()) {
    throw Error("assignment-mismatch", "assignments and frame objects differ in length");
  }
  std::map<std::string, std::size_t> phrase_index;
  for (std::size_t i = 0; i < caption.phrases.size(); ++i) {
    phrase_index.emplace(caption.phrases[i].text, i);  // first occurrence wins
  }
  std::map<std::size_t, std::map<int, BoundingBox>> grouped;
  for (std::size_t k = 0; k < assignments.size(); ++k) {
    const auto& a = assignments[k];
    const auto& obj = frame_objects[k];
    if (!a.assigned) continue;
    auto idx = phrase_index.find(*a.assigned);
    if (idx == phrase_index.end()) {
      out.warnings.push_back({"unknown-phrase", "assignment to '" + *a.assigned + "' is not a caption phrase"});
      continue;
    }
    if (obj.frame_index < 0 || obj.frame_index >= num_frames) {
      out.warnings.push_back({"frame-out-of-range", "box at frame " + std::to_string(obj.frame_index) + " dropped"});
      continue;
    }
    auto& boxes = grouped[idx->second];
    auto [it, inserted] = boxes.emplace(obj.frame_index, obj.box);
    if (!inserted) {
      out.warnings.push_back({"duplicate-box", "frame " + std::to_string(obj.frame_index) + " has two boxes for '" +
                                                   *a.assigned + "'; kept the larger"});
      if (obj.box.area() > it->second.area()) it->second = obj.box;
    }
  }
  for (auto& [idx, boxes] : grouped) {
    out.tracks.push_back(ObjectTrack::from_boxes(idx, std::move(boxes), num_frames));
  }
  return out;
}

std::vector<std::pair<int, int>> derive_presence(const ObjectTrack& track) {
  std::vector<std::pair<int, int>> runs;
  const int n = static_cast<int>(track.presence.size());
  int t = 0;
  while (t < n) {
    if (!track.presence[static_cast<std::size_t>(t)]) {
      ++t;
      continue;
    }
    const int start = t;
    while (t < n && track.presence[static_cast<std::size_t>(t)]) ++t;
    runs.emplace_back(start, t - 1);
  }
  return runs;
}

BuildResult build_record(const std::string& video_id, const VideoMeta& meta, TaggedCaption caption,
                         std::vector<ObjectTrack> tracks) {
  BuildResult out;
  out.record.video_id = video_id;
  out.record.num_frames = meta.num_frames;
  out.record.fps = meta.fps;
  out.record.width = meta.width;
  out.record.height = meta.height;
  out.record.caption = std::move(caption);
  out.record.tracks = std::move(tracks);

  out.report = validate_video_annotation(out.record);
  out.report.video_id = video_id;
  std::vector<bool> grounded(out.record.caption.phrases.size(), false);
  for (const auto& t : out.record.tracks) {
    if (t.phrase_index < grounded.size()) grounded[t.phrase_index] = true;
  }
  for (std::size_t i = 0; i < grounded.size(); ++i) {
    if (!grounded[i]) {
      out.report.warn("ungrounded-phrase", "phrase '" + out.record.caption.phrases[i].text + "' has no boxes");
    }
  }
  if (out.record.tracks.empty()) out.report.reject("no-tracks", "no caption phrase received a box");
  return out;
}

}  // namespace groc
