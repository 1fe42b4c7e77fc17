#include "groc/ingest.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <tuple>

#include "groc/canonical_json.hpp"

namespace groc {
namespace {

/// Typed member access that reports the offending path on failure.
class Reader {
 public:
  Reader(std::size_t line, std::string path) : line_(line), path_(std::move(path)) {}

  [[noreturn]] void fail(const std::string& field, const std::string& msg) const {
    throw ParseError(line_, path_ + "/" + field, msg);
  }

  const json& member(const json& obj, const std::string& key) const {
    auto it = obj.find(key);
    if (it == obj.end()) fail(key, "required member is missing");
    return *it;
  }

  std::string string(const json& obj, const std::string& key) const {
    const auto& v = member(obj, key);
    if (!v.is_string()) fail(key, "expected a string");
    return v.get<std::string>();
  }

  long long integer(const json& obj, const std::string& key) const {
    const auto& v = member(obj, key);
    return as_integer(v, key);
  }

  long long as_integer(const json& v, const std::string& key) const {
    if (v.is_number_integer()) return v.get<long long>();
    if (v.is_number_float()) {
      const double d = v.get<double>();
      if (d == static_cast<double>(static_cast<long long>(d))) return static_cast<long long>(d);
    }
    fail(key, "expected an integer");
  }

  double number(const json& obj, const std::string& key) const {
    const auto& v = member(obj, key);
    if (!v.is_number()) fail(key, "expected a number");
    return v.get<double>();
  }

  bool boolean(const json& obj, const std::string& key, bool fallback) const {
    auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    if (!it->is_boolean()) fail(key, "expected a boolean");
    return it->get<bool>();
  }

  const json& array(const json& obj, const std::string& key) const {
    const auto& v = member(obj, key);
    if (!v.is_array()) fail(key, "expected an array");
    return v;
  }

  BoundingBox box(const json& v, const std::string& key, bool normalized) const {
    if (!v.is_array() || v.size() != 4) fail(key, "expected [x, y, w, h]");
    BoundingBox b;
    b.normalized = normalized;
    double* fields[] = {&b.x, &b.y, &b.w, &b.h};
    for (std::size_t i = 0; i < 4; ++i) {
      if (!v[i].is_number()) fail(key, "box coordinates must be numbers");
      *fields[i] = v[i].get<double>();
    }
    return b;
  }

  Reader child(const std::string& segment) const { return Reader(line_, path_ + "/" + segment); }

 private:
  std::size_t line_;
  std::string path_;
};

json parse_json(std::string_view text, std::size_t line) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(line, "", std::string("invalid JSON: ") + e.what());
  }
}

template <typename Fn>
void for_each_line(std::string_view bytes, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= bytes.size()) {
    std::size_t nl = bytes.find('\n', pos);
    if (nl == std::string_view::npos) nl = bytes.size();
    ++line_no;
    std::string_view line = bytes.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") != std::string_view::npos) fn(line, line_no);
    pos = nl + 1;
  }
}

json box_to_json(const BoundingBox& b) { return json::array({b.x, b.y, b.w, b.h}); }

RleMask mask_from_json(const Reader& r, const json& v) {
  if (!v.is_object()) r.fail("mask", "expected an object");
  const Reader mr = r.child("mask");
  RleMask m;
  m.width = static_cast<int>(mr.integer(v, "width"));
  m.height = static_cast<int>(mr.integer(v, "height"));
  for (const auto& c : mr.array(v, "counts")) {
    const long long n = mr.as_integer(c, "counts");
    if (n < 0 || n > std::numeric_limits<std::uint32_t>::max()) mr.fail("counts", "run length out of range");
    m.counts.push_back(static_cast<std::uint32_t>(n));
  }
  return m;
}

}  // namespace

std::vector<std::uint8_t> decode_rle(const RleMask& mask) {
  if (mask.width < 1 || mask.height < 1) throw Error("mask-dimensions", "mask dimensions must be positive");
  const std::size_t total = static_cast<std::size_t>(mask.width) * static_cast<std::size_t>(mask.height);
  std::vector<std::uint8_t> cells;
  cells.reserve(total);
  std::uint8_t value = 0;
  for (std::uint32_t run : mask.counts) {
    if (cells.size() + run > total) throw Error("mask-length", "mask runs exceed width*height");
    cells.insert(cells.end(), run, value);
    value ^= 1;
  }
  if (cells.size() != total) throw Error("mask-length", "mask runs do not cover width*height");
  return cells;
}

BoundingBox mask_to_box(const RleMask& mask, int width, int height) {
  if (mask.width != width || mask.height != height) {
    throw Error("mask-dimensions", "mask is " + std::to_string(mask.width) + "x" +
                                       std::to_string(mask.height) + " but the frame is " +
                                       std::to_string(width) + "x" + std::to_string(height));
  }
  if (width < 1 || height < 1) throw Error("mask-dimensions", "mask dimensions must be positive");
  const std::uint64_t w = static_cast<std::uint64_t>(width);
  const std::uint64_t total = w * static_cast<std::uint64_t>(height);
  std::uint64_t pos = 0;
  std::uint64_t min_x = w, max_x = 0, min_y = total, max_y = 0;
  bool any = false;
  bool fg = false;
  for (std::uint32_t run : mask.counts) {
    if (pos + run > total) throw Error("mask-length", "mask runs exceed width*height");
    if (fg && run > 0) {
      any = true;
      const std::uint64_t first = pos, last = pos + run - 1;
      const std::uint64_t y0 = first / w, y1 = last / w;
      min_y = std::min(min_y, y0);
      max_y = std::max(max_y, y1);
      if (y0 == y1) {
        min_x = std::min(min_x, first % w);
        max_x = std::max(max_x, last % w);
      } else {
        // A run spanning a row boundary touches both the last and first column.
        min_x = 0;
        max_x = w - 1;
      }
    }
    pos += run;
    fg = !fg;
  }
  if (pos != total) throw Error("mask-length", "mask runs do not cover width*height");
  if (!any) throw Error("empty-mask", "mask has no foreground pixels");
  return {static_cast<double>(min_x), static_cast<double>(min_y),
          static_cast<double>(max_x - min_x + 1), static_cast<double>(max_y - min_y + 1), false};
}

std::vector<FrameGrounding> parse_frame_grounding(std::string_view bytes) {
  std::vector<FrameGrounding> out;
  for_each_line(bytes, [&](std::string_view text, std::size_t line_no) {
    const json doc = parse_json(text, line_no);
    const Reader r(line_no, "");
    if (!doc.is_object()) r.fail("", "expected a JSON object per line");
    FrameGrounding f;
    f.video_id = r.string(doc, "video_id");
    if (f.video_id.empty()) r.fail("video_id", "must be non-empty");
    const long long frame = r.integer(doc, "frame_index");
    if (frame < 0 || frame > std::numeric_limits<int>::max()) r.fail("frame_index", "must be >= 0");
    f.frame_index = static_cast<int>(frame);
    f.width = static_cast<int>(r.integer(doc, "width"));
    f.height = static_cast<int>(r.integer(doc, "height"));
    if (f.width < 1 || f.height < 1) r.fail("width", "frame dimensions must be >= 1");
    if (doc.contains("num_frames")) {
      const long long n = r.integer(doc, "num_frames");
      if (n < 1 || n <= frame) r.fail("num_frames", "must exceed frame_index");
      f.num_frames = static_cast<int>(n);
    }
    f.caption = r.string(doc, "caption");
    const bool normalized = r.boolean(doc, "normalized", false);
    const auto& objects = r.array(doc, "objects");
    for (std::size_t i = 0; i < objects.size(); ++i) {
      const Reader orr = r.child("objects/" + std::to_string(i));
      const auto& o = objects[i];
      if (!o.is_object()) orr.fail("", "expected an object");
      FrameObject obj;
      obj.phrase = orr.string(o, "phrase");
      if (obj.phrase.empty()) orr.fail("phrase", "must be non-empty");
      const bool has_box = o.contains("box");
      const bool has_mask = o.contains("mask");
      if (has_box == has_mask) orr.fail(has_box ? "mask" : "box", "exactly one of box or mask is required");
      if (has_box) {
        obj.box = orr.box(o["box"], "box", normalized);
        if (auto why = box_violation(*obj.box); !why.empty()) orr.fail("box", why);
      } else {
        obj.mask = mask_from_json(orr, o["mask"]);
      }
      f.objects.push_back(std::move(obj));
    }
    out.push_back(std::move(f));
  });
  std::stable_sort(out.begin(), out.end(), [](const FrameGrounding& a, const FrameGrounding& b) {
    return std::tie(a.video_id, a.frame_index) < std::tie(b.video_id, b.frame_index);
  });
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (out[i].video_id == out[i - 1].video_id && out[i].frame_index == out[i - 1].frame_index) {
      throw Error("duplicate-frame", "duplicate frame record (" + out[i].video_id + ", " +
                                         std::to_string(out[i].frame_index) + ")");
    }
  }
  return out;
}

std::string serialize_frame_grounding(const FrameGrounding& f) {
  json doc = json::object();
  doc["video_id"] = f.video_id;
  doc["frame_index"] = f.frame_index;
  doc["width"] = f.width;
  doc["height"] = f.height;
  if (f.num_frames) doc["num_frames"] = *f.num_frames;
  doc["caption"] = f.caption;
  bool normalized = false;
  json objects = json::array();
  for (const auto& o : f.objects) {
    json jo = {{"phrase", o.phrase}};
    if (o.box) {
      jo["box"] = box_to_json(*o.box);
      normalized = normalized || o.box->normalized;
    }
    if (o.mask) {
      jo["mask"] = {{"width", o.mask->width}, {"height", o.mask->height}, {"counts", o.mask->counts}};
    }
    objects.push_back(std::move(jo));
  }
  doc["objects"] = std::move(objects);
  if (normalized) doc["normalized"] = true;
  return canonical_dump(doc);
}

ValidationReport validate_video_annotation(const VideoAnnotation& v) {
  ValidationReport rep;
  rep.video_id = v.video_id;
  if (v.video_id.empty()) rep.reject("invalid-video-id", "video_id must be non-empty");
  if (v.num_frames < 1) rep.reject("invalid-dimensions", "num_frames must be >= 1");
  if (v.width < 1 || v.height < 1) rep.reject("invalid-dimensions", "width and height must be >= 1");
  if (!(v.fps > 0.0)) rep.reject("invalid-dimensions", "fps must be positive");
  if (auto why = caption_violation(v.caption); !why.empty()) rep.reject("malformed-caption", why);

  std::optional<bool> mode;
  for (std::size_t k = 0; k < v.tracks.size(); ++k) {
    const auto& t = v.tracks[k];
    const std::string where = "track " + std::to_string(k);
    if (t.phrase_index >= v.caption.phrases.size()) {
      rep.reject("invalid-phrase-index", where + " references phrase " + std::to_string(t.phrase_index) +
                                             " but the caption has " +
                                             std::to_string(v.caption.phrases.size()));
    }
    if (t.presence.size() != static_cast<std::size_t>(std::max(v.num_frames, 0))) {
      rep.reject("presence-length", where + " presence has " + std::to_string(t.presence.size()) +
                                        " entries, expected " + std::to_string(v.num_frames));
    }
    if (t.boxes.empty()) rep.reject("empty-track", where + " has no present frame");
    for (std::size_t f = 0; f < t.presence.size(); ++f) {
      if (t.presence[f] && !t.boxes.count(static_cast<int>(f))) {
        rep.reject("presence-mismatch", where + " is present at frame " + std::to_string(f) + " without a box");
      }
    }
    for (const auto& [frame, box] : t.boxes) {
      if (frame < 0 || frame >= v.num_frames) {
        rep.reject("frame-out-of-range", where + " has a box at frame " + std::to_string(frame));
        continue;
      }
      if (static_cast<std::size_t>(frame) < t.presence.size() && !t.presence[static_cast<std::size_t>(frame)]) {
        rep.reject("presence-mismatch", where + " has a box at absent frame " + std::to_string(frame));
      }
      if (mode && *mode != box.normalized) {
        rep.reject("mixed-normalization", where + " mixes normalized and pixel boxes");
      }
      mode = box.normalized;
      if (auto why = box_violation(box, v.width, v.height); !why.empty()) {
        rep.reject(box.w < 0 || box.h < 0 ? "invalid-box" : "box-out-of-frame",
                   where + " frame " + std::to_string(frame) + ": " + why);
      }
    }
    if (t.confidence) {
      for (const auto& [frame, score] : *t.confidence) {
        if (!t.boxes.count(frame)) {
          rep.reject("confidence-mismatch", where + " has a confidence at frame " + std::to_string(frame) + " without a box");
        }
        if (!(score >= 0.0 && score <= 1.0)) {
          rep.reject("invalid-confidence", where + " confidence at frame " + std::to_string(frame) + " is outside [0,1]");
        }
      }
    }
  }
  for (std::size_t a = 0; a < v.tracks.size(); ++a) {
    for (std::size_t b = a + 1; b < v.tracks.size(); ++b) {
      const auto& ta = v.tracks[a];
      const auto& tb = v.tracks[b];
      if (ta.phrase_index != tb.phrase_index) continue;
      for (const auto& [frame, box] : ta.boxes) {
        auto it = tb.boxes.find(frame);
        if (it != tb.boxes.end() && it->second == box) {
          rep.reject("duplicate-track", "tracks " + std::to_string(a) + " and " + std::to_string(b) +
                                            " repeat the same box for one phrase at frame " +
                                            std::to_string(frame));
          break;
        }
      }
    }
  }
  return rep;
}

VideoAnnotation decode_video_annotation(std::string_view text, std::size_t line) {
  const json doc = parse_json(text, line);
  const Reader r(line, "");
  if (!doc.is_object()) r.fail("", "expected a JSON object");
  VideoAnnotation v;
  v.video_id = r.string(doc, "video_id");
  v.num_frames = static_cast<int>(r.integer(doc, "num_frames"));
  v.fps = r.number(doc, "fps");
  v.width = static_cast<int>(r.integer(doc, "width"));
  v.height = static_cast<int>(r.integer(doc, "height"));
  const bool normalized = r.boolean(doc, "normalized", false);
  const std::string tagged = r.string(doc, "caption");
  try {
    v.caption = parse_tagged_caption(tagged);
  } catch (const MalformedCaptionError& e) {
    ValidationReport rep;
    rep.video_id = v.video_id;
    rep.reject("malformed-caption", e.what());
    throw ValidationError(std::move(rep));
  }
  const auto& tracks = r.array(doc, "tracks");
  for (std::size_t k = 0; k < tracks.size(); ++k) {
    const Reader tr = r.child("tracks/" + std::to_string(k));
    const auto& jt = tracks[k];
    if (!jt.is_object()) tr.fail("", "expected an object");
    ObjectTrack t;
    const long long idx = tr.integer(jt, "phrase_index");
    if (idx < 0) tr.fail("phrase_index", "must be >= 0");
    t.phrase_index = static_cast<std::size_t>(idx);
    for (const auto& p : tr.array(jt, "presence")) {
      if (p.is_boolean()) {
        t.presence.push_back(p.get<bool>());
      } else if (p.is_number_integer() && (p.get<long long>() == 0 || p.get<long long>() == 1)) {
        t.presence.push_back(p.get<long long>() == 1);
      } else {
        tr.fail("presence", "entries must be booleans");
      }
    }
    const auto& boxes = tr.array(jt, "boxes");
    for (std::size_t i = 0; i < boxes.size(); ++i) {
      const Reader br = tr.child("boxes/" + std::to_string(i));
      const auto& jb = boxes[i];
      if (!jb.is_object()) br.fail("", "expected an object");
      const long long frame = br.integer(jb, "frame");
      if (frame < std::numeric_limits<int>::min() || frame > std::numeric_limits<int>::max()) {
        br.fail("frame", "out of range");
      }
      const int f = static_cast<int>(frame);
      if (t.boxes.count(f)) br.fail("frame", "duplicate frame within a track");
      t.boxes[f] = br.box(br.member(jb, "bbox"), "bbox", normalized);
      if (jb.contains("confidence")) {
        if (!t.confidence) t.confidence.emplace();
        (*t.confidence)[f] = br.number(jb, "confidence");
      }
    }
    if (t.confidence && t.confidence->size() != t.boxes.size()) {
      tr.fail("boxes", "confidence must be given for every box of a track or for none");
    }
    v.tracks.push_back(std::move(t));
  }
  return v;
}

VideoAnnotation parse_video_annotation(std::string_view text) {
  VideoAnnotation v = decode_video_annotation(text);
  auto rep = validate_video_annotation(v);
  if (!rep.accepted) throw ValidationError(std::move(rep));
  return v;
}

std::string serialize_video_annotation(const VideoAnnotation& v) {
  json doc = json::object();
  doc["video_id"] = v.video_id;
  doc["num_frames"] = v.num_frames;
  doc["fps"] = static_cast<double>(v.fps);
  doc["width"] = v.width;
  doc["height"] = v.height;
  doc["caption"] = render_tagged_caption(v.caption);
  bool normalized = false;
  json tracks = json::array();
  for (const auto& t : v.tracks) {
    json jt = json::object();
    jt["phrase_index"] = t.phrase_index;
    json presence = json::array();
    for (bool p : t.presence) presence.push_back(p);
    jt["presence"] = std::move(presence);
    json boxes = json::array();
    for (const auto& [frame, box] : t.boxes) {
      normalized = normalized || box.normalized;
      json jb = {{"frame", frame}, {"bbox", box_to_json(box)}};
      if (t.confidence) {
        auto it = t.confidence->find(frame);
        if (it != t.confidence->end()) jb["confidence"] = static_cast<double>(it->second);
      }
      boxes.push_back(std::move(jb));
    }
    jt["boxes"] = std::move(boxes);
    tracks.push_back(std::move(jt));
  }
  doc["tracks"] = std::move(tracks);
  doc["normalized"] = normalized;
  return canonical_dump(doc);
}

std::vector<VideoAnnotation> parse_annotation_lines(std::string_view bytes, bool validate) {
  std::vector<VideoAnnotation> out;
  std::set<std::string> seen;
  for_each_line(bytes, [&](std::string_view text, std::size_t line_no) {
    VideoAnnotation v = decode_video_annotation(text, line_no);
    if (validate) {
      auto rep = validate_video_annotation(v);
      if (!rep.accepted) throw ValidationError(std::move(rep));
    }
    if (!seen.insert(v.video_id).second) {
      throw ParseError(line_no, "/video_id", "duplicate video_id '" + v.video_id + "'");
    }
    out.push_back(std::move(v));
  });
  return out;
}

std::string serialize_annotation_lines(const std::vector<VideoAnnotation>& records) {
  std::string out;
  for (const auto& r : records) {
    out += serialize_video_annotation(r);
    out.push_back('\n');
  }
  return out;
}

std::vector<VideoAnnotation> load_predictions(std::string_view bytes, double objectness_threshold) {
  auto records = parse_annotation_lines(bytes, true);
  if (!(objectness_threshold > 0.0)) return records;
  for (auto& v : records) {
    std::vector<ObjectTrack> kept;
    for (std::size_t k = 0; k < v.tracks.size(); ++k) {
      auto& t = v.tracks[k];
      if (!t.confidence) {
        throw Error("missing-confidence", "video '" + v.video_id + "' track " + std::to_string(k) +
                                              " has no confidence scores but thresholding was requested");
      }
      for (auto it = t.boxes.begin(); it != t.boxes.end();) {
        const double score = t.confidence->at(it->first);
        if (score < objectness_threshold) {
          t.presence[static_cast<std::size_t>(it->first)] = false;
          t.confidence->erase(it->first);
          it = t.boxes.erase(it);
        } else {
          ++it;
        }
      }
      if (!t.boxes.empty()) kept.push_back(std::move(t));
    }
    v.tracks = std::move(kept);
  }
  return records;
}

}  // namespace groc
