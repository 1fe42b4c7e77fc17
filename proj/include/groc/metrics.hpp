#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "groc/core.hpp"

namespace groc {

// ---------------------------------------------------------------------------
// Text

/// Lowercases, collapses whitespace and splits punctuation into separate
/// tokens. A trailing "'s" becomes its own token; apostrophes and hyphens
/// inside a word are kept. See docs/tokenizer.md.
std::vector<std::string> tokenize(std::string_view text);

/// True for tokens made only of punctuation characters.
bool is_punctuation(std::string_view token);

/// Porter (1980) suffix-stripping stemmer. Input is expected lowercase.
std::string porter_stem(std::string_view word);

// ---------------------------------------------------------------------------
// Captioning

struct CiderResult {
  double score = 0.0;
  std::map<std::string, double> per_video;
};

/// CIDEr-D: TF-IDF weighted n-gram (n = 1..4) cosine with count clipping and
/// a gaussian length penalty (sigma 6), scaled by 10 and averaged over
/// references, then over videos. IDF is taken over the reference corpus.
/// Punctuation tokens are ignored. Throws on an empty corpus or when the
/// candidate and reference key sets differ.
CiderResult cider_d(const std::map<std::string, std::string>& candidates,
                    const std::map<std::string, std::vector<std::string>>& references);

inline double cider(const std::map<std::string, std::string>& candidates,
                    const std::map<std::string, std::vector<std::string>>& references) {
  return cider_d(candidates, references).score;
}

/// Unigram METEOR without synonym or paraphrase tables: exact then Porter-stem
/// alignment, Fmean = 10PR / (R + 9P), fragmentation penalty
/// 0.5 * (chunks / matches)^3. Throws on an empty reference.
double meteor_lite(std::string_view candidate, std::string_view reference);

// ---------------------------------------------------------------------------
// Phrase similarity

class PhraseSimilarity {
 public:
  virtual ~PhraseSimilarity() = default;
  /// Score in [0,1]. Must be safe to call concurrently.
  virtual double similarity(std::string_view a, std::string_view b) const = 0;
  virtual std::string name() const = 0;
};

/// Cosine over stemmed unigram counts, ignoring punctuation and a short
/// stopword list (articles, common prepositions, possessives).
class LexicalSimilarity final : public PhraseSimilarity {
 public:
  double similarity(std::string_view a, std::string_view b) const override;
  std::string name() const override { return "lexical"; }
};

using Embedder = std::function<std::vector<std::vector<double>>(const std::vector<std::string>&)>;

/// Cosine between phrase embeddings, clamped to [0,1]. Vectors are cached per
/// phrase string.
class EmbeddingSimilarity final : public PhraseSimilarity {
 public:
  explicit EmbeddingSimilarity(Embedder embedder, std::string name = "embedding")
      : embedder_(std::move(embedder)), name_(std::move(name)) {}

  double similarity(std::string_view a, std::string_view b) const override;
  std::string name() const override { return name_; }

 private:
  std::vector<double> vector_for(const std::string& phrase) const;

  Embedder embedder_;
  std::string name_;
  mutable std::mutex mu_;
  mutable std::unordered_map<std::string, std::vector<double>> cache_;
};

/// Default lexical backend.
double phrase_similarity(std::string_view a, std::string_view b);

// ---------------------------------------------------------------------------
// Grounding

struct Detection {
  std::size_t track = 0;
  BoundingBox box;
  std::string phrase;
  double confidence = 1.0;
};

struct GroundTruthBox {
  std::size_t track = 0;
  BoundingBox box;
  std::string phrase;
};

struct MatchPair {
  std::size_t pred = 0;  // index into the prediction list
  std::size_t gt = 0;    // index into the ground-truth list
  double iou = 0.0;
  double phrase_sim = 0.0;
};

struct MatchResult {
  std::vector<MatchPair> pairs;
  std::vector<std::size_t> unmatched_preds;
  std::vector<std::size_t> unmatched_gts;
};

/// Greedy one-to-one matching within one frame. Predictions are visited by
/// descending confidence (ties: larger best IoU, then input order); each takes
/// the unmatched ground truth of highest IoU among those with
/// IoU >= iou_thresh and phrase similarity >= sim_thresh.
MatchResult match_frame(std::span<const Detection> preds, std::span<const GroundTruthBox> gts,
                        const PhraseSimilarity& similarity, double iou_thresh = 0.5,
                        double sim_thresh = 0.5);

/// Same visiting order with no similarity gate and no IoU threshold; a pair
/// needs a strictly positive IoU.
MatchResult match_frame_iou_only(std::span<const Detection> preds, std::span<const GroundTruthBox> gts);

/// All-point interpolated average precision with a monotone precision
/// envelope. `ranked` holds true-positive flags sorted by descending
/// confidence. nullopt when there is no ground truth.
std::optional<double> average_precision(std::span<const bool> ranked, std::size_t num_gt);

enum class Level { Frame, Video };

struct EvalConfig {
  double iou_threshold = 0.5;
  double sim_threshold = 0.5;
  std::shared_ptr<const PhraseSimilarity> similarity = std::make_shared<LexicalSimilarity>();
  int workers = 1;
};

std::optional<double> ap50(std::span<const VideoAnnotation> preds, std::span<const VideoAnnotation> gts,
                           Level level, const EvalConfig& config = {});
std::optional<double> miou(std::span<const VideoAnnotation> preds, std::span<const VideoAnnotation> gts,
                           Level level, const EvalConfig& config = {});
std::optional<double> recall(std::span<const VideoAnnotation> preds, std::span<const VideoAnnotation> gts,
                             Level level, const EvalConfig& config = {});

struct LevelScores {
  std::optional<double> ap50;
  std::optional<double> miou;
  std::optional<double> recall;
};

struct VideoScores {
  std::string video_id;
  LevelScores grounding;
  double meteor = 0.0;
  double cider = 0.0;
  std::size_t num_gt_boxes = 0;
  std::size_t num_pred_boxes = 0;
};

struct MetricsReport {
  LevelScores frame;
  LevelScores video;
  double meteor = 0.0;
  double cider = 0.0;
  std::vector<VideoScores> per_video;  // sorted by video_id
  nlohmann::json config;
};

/// Full evaluation. Predictions are joined to ground truth by video_id; a
/// ground-truth video without a prediction is scored against an empty one. A
/// prediction for an unknown video_id throws. Predictions without confidences
/// are scored with confidence 1.0.
MetricsReport evaluate(std::span<const VideoAnnotation> preds, std::span<const VideoAnnotation> gts,
                       const EvalConfig& config = {});

nlohmann::json to_json(const MetricsReport& report);

}  // namespace groc
