#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace groc {

/// Base error. `code()` is a short machine-readable reason such as
/// "malformed-caption" or "mixed-normalization".
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

class MalformedCaptionError : public Error {
 public:
  explicit MalformedCaptionError(const std::string& message)
      : Error("malformed-caption", message) {}
};

constexpr double kNormalizedEpsilon = 1e-6;

/// Axis-aligned box, top-left origin, `[x, y, w, h]`. Pixel units unless
/// `normalized`, in which case coordinates are fractions of the frame size.
struct BoundingBox {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;
  bool normalized = false;

  double area() const noexcept { return w * h; }
  bool operator==(const BoundingBox&) const = default;
};

/// Intersection over union. Zero when the union is empty. Throws on mixed
/// normalization modes.
double iou(const BoundingBox& a, const BoundingBox& b);

BoundingBox normalize_box(const BoundingBox& b, int width, int height);
BoundingBox denormalize_box(const BoundingBox& b, int width, int height);

/// Clamp a box into the frame. Boxes entirely outside collapse to zero size
/// on the nearest edge.
BoundingBox clamp_box(const BoundingBox& b, int width, int height);

/// Checks the geometric invariants; returns an empty string when valid,
/// otherwise a short description of the first violation. Pass width/height
/// of 0 to skip the frame-extent check for pixel boxes.
std::string box_violation(const BoundingBox& b, int width = 0, int height = 0);

struct PhraseSpan {
  std::string text;
  std::size_t char_start = 0;
  std::size_t char_end = 0;

  bool operator==(const PhraseSpan&) const = default;
};

/// Caption with `<p></p>` tags stripped, plus the character spans of the
/// tagged phrases on the plain text.
struct TaggedCaption {
  std::string plain;
  std::vector<PhraseSpan> phrases;

  bool operator==(const TaggedCaption&) const = default;
};

TaggedCaption parse_tagged_caption(std::string_view text_with_tags);
std::string render_tagged_caption(const TaggedCaption& caption);

/// Empty when the caption satisfies its invariants.
std::string caption_violation(const TaggedCaption& caption);

/// One video-level phrase bound to per-frame boxes. `presence` has one entry
/// per video frame and is true exactly on the frames present in `boxes`.
struct ObjectTrack {
  std::size_t phrase_index = 0;
  std::map<int, BoundingBox> boxes;
  std::vector<bool> presence;
  std::optional<std::map<int, double>> confidence;

  /// Builds a track whose presence vector is derived from `boxes`.
  static ObjectTrack from_boxes(std::size_t phrase_index, std::map<int, BoundingBox> boxes,
                                int num_frames);

  std::size_t present_count() const;
  bool operator==(const ObjectTrack&) const = default;
};

struct VideoAnnotation {
  std::string video_id;
  int num_frames = 1;
  double fps = 5.0;
  int width = 1;
  int height = 1;
  TaggedCaption caption;
  std::vector<ObjectTrack> tracks;

  const std::string& phrase_text(const ObjectTrack& track) const {
    return caption.phrases.at(track.phrase_index).text;
  }
  bool operator==(const VideoAnnotation&) const = default;
};

struct Adposition {
  std::string adposition;
  std::string object;

  bool operator==(const Adposition&) const = default;
};

struct SvoRelation {
  std::string subject;
  std::string verb;
  std::optional<std::string> object;
  std::vector<Adposition> adpositions;

  bool operator==(const SvoRelation&) const = default;
};

struct SvoFrame {
  int frame_index = 0;
  std::vector<SvoRelation> relations;

  bool operator==(const SvoFrame&) const = default;
};

}  // namespace groc
