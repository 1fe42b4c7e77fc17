#include "groc/core.hpp"

#include <algorithm>
#include <cmath>

namespace groc {

double iou(const BoundingBox& a, const BoundingBox& b) {
  if (a.normalized != b.normalized) {
    throw Error("mixed-normalization", "iou: boxes use different normalization modes");
  }
  if (a == b) return a.area() > 0.0 ? 1.0 : 0.0;
  const double iw = std::min(a.x + a.w, b.x + b.w) - std::max(a.x, b.x);
  const double ih = std::min(a.y + a.h, b.y + b.h) - std::max(a.y, b.y);
  const double inter = (iw > 0.0 && ih > 0.0) ? iw * ih : 0.0;
  const double uni = a.area() + b.area() - inter;
  if (!(uni > 0.0)) return 0.0;
  return inter / uni;
}

namespace {

void check_dims(int width, int height) {
  if (width < 1 || height < 1) {
    throw Error("invalid-dimensions", "frame dimensions must be at least 1x1, got " +
                                          std::to_string(width) + "x" + std::to_string(height));
  }
}

}  // namespace

BoundingBox normalize_box(const BoundingBox& b, int width, int height) {
  check_dims(width, height);
  if (b.normalized) throw Error("already-normalized", "normalize_box: box is already normalized");
  const double fw = width, fh = height;
  return {b.x / fw, b.y / fh, b.w / fw, b.h / fh, true};
}

BoundingBox denormalize_box(const BoundingBox& b, int width, int height) {
  check_dims(width, height);
  if (!b.normalized) throw Error("already-pixel", "denormalize_box: box is already in pixels");
  const double fw = width, fh = height;
  return {b.x * fw, b.y * fh, b.w * fw, b.h * fh, false};
}

BoundingBox clamp_box(const BoundingBox& b, int width, int height) {
  const double max_x = b.normalized ? 1.0 : static_cast<double>(width);
  const double max_y = b.normalized ? 1.0 : static_cast<double>(height);
  const double x0 = std::clamp(b.x, 0.0, max_x);
  const double y0 = std::clamp(b.y, 0.0, max_y);
  const double x1 = std::clamp(b.x + std::max(b.w, 0.0), 0.0, max_x);
  const double y1 = std::clamp(b.y + std::max(b.h, 0.0), 0.0, max_y);
  return {x0, y0, x1 - x0, y1 - y0, b.normalized};
}

std::string box_violation(const BoundingBox& b, int width, int height) {
  if (!std::isfinite(b.x) || !std::isfinite(b.y) || !std::isfinite(b.w) || !std::isfinite(b.h)) {
    return "non-finite coordinate";
  }
  if (b.w < 0.0 || b.h < 0.0) return "negative width or height";
  if (b.normalized) {
    if (b.x < 0.0 || b.y < 0.0 || b.x > 1.0 || b.y > 1.0) return "normalized origin outside [0,1]";
    if (b.x + b.w > 1.0 + kNormalizedEpsilon || b.y + b.h > 1.0 + kNormalizedEpsilon) {
      return "normalized box extends past the frame";
    }
    return {};
  }
  if (width > 0 && height > 0) {
    if (b.x < 0.0 || b.y < 0.0 || b.x + b.w > width + kNormalizedEpsilon ||
        b.y + b.h > height + kNormalizedEpsilon) {
      return "box extends outside the " + std::to_string(width) + "x" + std::to_string(height) +
             " frame";
    }
  }
  return {};
}

namespace {

constexpr std::string_view kOpenTag = "<p>";
constexpr std::string_view kCloseTag = "</p>";

}  // namespace

TaggedCaption parse_tagged_caption(std::string_view text) {
  TaggedCaption out;
  out.plain.reserve(text.size());
  std::optional<std::size_t> open_at;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text.substr(i, kOpenTag.size()) == kOpenTag) {
      if (open_at) {
        throw MalformedCaptionError("nested <p> tag at offset " + std::to_string(i));
      }
      open_at = out.plain.size();
      i += kOpenTag.size();
    } else if (text.substr(i, kCloseTag.size()) == kCloseTag) {
      if (!open_at) {
        throw MalformedCaptionError("unbalanced </p> at offset " + std::to_string(i));
      }
      if (*open_at == out.plain.size()) {
        throw MalformedCaptionError("empty <p></p> pair at offset " + std::to_string(i));
      }
      out.phrases.push_back({out.plain.substr(*open_at), *open_at, out.plain.size()});
      open_at.reset();
      i += kCloseTag.size();
    } else {
      out.plain.push_back(text[i]);
      ++i;
    }
  }
  if (open_at) throw MalformedCaptionError("unclosed <p> tag");
  return out;
}

std::string caption_violation(const TaggedCaption& c) {
  if (c.plain.find(kOpenTag) != std::string::npos || c.plain.find(kCloseTag) != std::string::npos) {
    return "plain caption contains a literal phrase tag";
  }
  std::size_t prev_end = 0;
  for (std::size_t k = 0; k < c.phrases.size(); ++k) {
    const auto& p = c.phrases[k];
    const std::string where = "phrase " + std::to_string(k);
    if (p.char_start >= p.char_end) return where + " is empty";
    if (p.char_end > c.plain.size()) return where + " runs past the caption";
    if (p.char_start < prev_end) return where + " overlaps or is out of order";
    if (c.plain.compare(p.char_start, p.char_end - p.char_start, p.text) != 0) {
      return where + " text does not match the caption at its offsets";
    }
    prev_end = p.char_end;
  }
  return {};
}

std::string render_tagged_caption(const TaggedCaption& c) {
  if (auto why = caption_violation(c); !why.empty()) throw MalformedCaptionError(why);
  std::string out;
  out.reserve(c.plain.size() + c.phrases.size() * (kOpenTag.size() + kCloseTag.size()));
  std::size_t pos = 0;
  for (const auto& p : c.phrases) {
    out.append(c.plain, pos, p.char_start - pos);
    out.append(kOpenTag);
    out.append(p.text);
    out.append(kCloseTag);
    pos = p.char_end;
  }
  out.append(c.plain, pos, std::string::npos);
  return out;
}

ObjectTrack ObjectTrack::from_boxes(std::size_t phrase_index, std::map<int, BoundingBox> boxes,
                                    int num_frames) {
  ObjectTrack t;
  t.phrase_index = phrase_index;
  t.presence.assign(static_cast<std::size_t>(std::max(num_frames, 0)), false);
  for (const auto& [frame, box] : boxes) {
    if (frame >= 0 && frame < num_frames) t.presence[static_cast<std::size_t>(frame)] = true;
  }
  t.boxes = std::move(boxes);
  return t;
}

std::size_t ObjectTrack::present_count() const {
  return static_cast<std::size_t>(std::count(presence.begin(), presence.end(), true));
}

}  // namespace groc
