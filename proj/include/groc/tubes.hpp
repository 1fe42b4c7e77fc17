#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "groc/core.hpp"
#include "groc/ingest.hpp"
#include "groc/llm.hpp"

namespace groc {

struct AssemblyResult {
  std::vector<ObjectTrack> tracks;  // ordered by phrase_index
  std::vector<Reason> warnings;
};

/// Groups per-frame boxes by their assigned caption phrase. `assignments` is
/// parallel to `frame_objects`. None-class objects are dropped; when two boxes
/// of one frame land on the same phrase the larger one is kept.
AssemblyResult assemble_tracks(std::span<const PhraseAssignment> assignments,
                               std::span<const FramePhrase> frame_objects,
                               const TaggedCaption& caption, int num_frames);

/// Maximal runs of consecutive present frames as inclusive (start, end) pairs.
std::vector<std::pair<int, int>> derive_presence(const ObjectTrack& track);

struct VideoMeta {
  int num_frames = 1;
  double fps = 5.0;
  int width = 1;
  int height = 1;
};

struct BuildResult {
  VideoAnnotation record;
  ValidationReport report;
};

/// Accepted iff at least one track survives and the record passes validation.
BuildResult build_record(const std::string& video_id, const VideoMeta& meta, TaggedCaption caption,
                         std::vector<ObjectTrack> tracks);

}  // namespace groc
