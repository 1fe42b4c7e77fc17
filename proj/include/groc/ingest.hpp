#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "groc/core.hpp"

namespace groc {

/// Schema violation in an input file. `line()` is 1-based, 0 for whole-document
/// inputs; `field()` is a JSON-pointer-like path to the offending member.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::string field, const std::string& message)
      : Error("schema-violation", format(line, field, message)), line_(line), field_(std::move(field)) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  static std::string format(std::size_t line, const std::string& field, const std::string& msg) {
    std::string out;
    if (line > 0) out += "line " + std::to_string(line) + ": ";
    if (!field.empty()) out += field + ": ";
    return out + msg;
  }

  std::size_t line_;
  std::string field_;
};

/// Row-major binary mask stored as alternating background/foreground run
/// lengths, starting with a (possibly zero-length) background run.
struct RleMask {
  int width = 0;
  int height = 0;
  std::vector<std::uint32_t> counts;

  bool operator==(const RleMask&) const = default;
};

/// Expands the runs into width*height bytes (0 or 1). Throws when the run
/// lengths do not cover the mask exactly.
std::vector<std::uint8_t> decode_rle(const RleMask& mask);

/// Tightest pixel-aligned box around the foreground. Throws Error
/// "empty-mask" when no pixel is set and "mask-dimensions" when the mask does
/// not match the frame.
BoundingBox mask_to_box(const RleMask& mask, int width, int height);

struct FrameObject {
  std::string phrase;
  std::optional<BoundingBox> box;
  std::optional<RleMask> mask;

  bool operator==(const FrameObject&) const = default;
};

/// One frame of Stage-1 grounded captioning output.
struct FrameGrounding {
  std::string video_id;
  int frame_index = 0;
  int width = 0;
  int height = 0;
  std::optional<int> num_frames;
  std::string caption;
  std::vector<FrameObject> objects;

  bool operator==(const FrameGrounding&) const = default;
};

/// Parses JSON-lines frame records. Result is sorted by (video_id,
/// frame_index); masks are kept encoded.
std::vector<FrameGrounding> parse_frame_grounding(std::string_view bytes);
std::string serialize_frame_grounding(const FrameGrounding& frame);

struct Reason {
  std::string code;
  std::string message;

  bool operator==(const Reason&) const = default;
};

struct ValidationReport {
  std::string video_id;
  bool accepted = true;
  std::vector<Reason> reasons;
  std::vector<Reason> warnings;

  void reject(std::string code, std::string message) {
    accepted = false;
    reasons.push_back({std::move(code), std::move(message)});
  }
  void warn(std::string code, std::string message) {
    warnings.push_back({std::move(code), std::move(message)});
  }
};

class ValidationError : public Error {
 public:
  explicit ValidationError(ValidationReport report)
      : Error(report.reasons.empty() ? "invalid-record" : report.reasons.front().code,
              describe(report)),
        report_(std::move(report)) {}

  const ValidationReport& report() const noexcept { return report_; }

 private:
  static std::string describe(const ValidationReport& r) {
    std::string out = "video '" + r.video_id + "' failed validation";
    for (const auto& reason : r.reasons) out += "; " + reason.code + ": " + reason.message;
    return out;
  }

  ValidationReport report_;
};

/// Checks every data-model invariant of a record and collects all violations.
ValidationReport validate_video_annotation(const VideoAnnotation& record);

/// Structural decode only; schema errors throw ParseError.
VideoAnnotation decode_video_annotation(std::string_view json_text, std::size_t line = 0);

/// Decode plus full validation; invariant violations throw ValidationError.
VideoAnnotation parse_video_annotation(std::string_view json_text);

/// Canonical single-line form: sorted keys, floats with six decimals.
std::string serialize_video_annotation(const VideoAnnotation& record);

/// JSON-lines collections of video records. Blank lines are skipped.
std::vector<VideoAnnotation> parse_annotation_lines(std::string_view bytes, bool validate = true);
std::string serialize_annotation_lines(const std::vector<VideoAnnotation>& records);

/// Loads prediction records and drops every frame whose confidence is below
/// `objectness_threshold`; tracks left without frames are removed. A
/// threshold above zero requires every box to carry a confidence.
std::vector<VideoAnnotation> load_predictions(std::string_view bytes, double objectness_threshold);

}  // namespace groc
