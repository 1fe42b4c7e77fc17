#include "groc/metrics.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <memory>
#include <numeric>
#include <set>
#include <thread>

namespace groc {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Text

namespace {

bool word_char(unsigned char c) { return std::isalnum(c) || c >= 0x80; }

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::string word;
  auto flush = [&] {
    if (word.empty()) return;
    if (word.size() > 2 && word.compare(word.size() - 2, 2, "'s") == 0) {
      out.push_back(word.substr(0, word.size() - 2));
      out.emplace_back("'s");
    } else {
      out.push_back(word);
    }
    word.clear();
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (std::isspace(c)) {
      flush();
    } else if (word_char(c)) {
      word.push_back(static_cast<char>(std::tolower(c)));
    } else if ((c == '\'' || c == '-') && !word.empty() && i + 1 < text.size() &&
               word_char(static_cast<unsigned char>(text[i + 1]))) {
      word.push_back(static_cast<char>(c));
    } else {
      flush();
      out.emplace_back(1, static_cast<char>(c));
    }
  }
  flush();
  return out;
}

bool is_punctuation(std::string_view token) {
  if (token.empty()) return false;
  return std::all_of(token.begin(), token.end(), [](char ch) {
    const auto c = static_cast<unsigned char>(ch);
    return c < 0x80 && std::ispunct(c);
  });
}

namespace {

std::vector<std::string> words(std::string_view text) {
  auto toks = tokenize(text);
  std::erase_if(toks, [](const std::string& t) { return is_punctuation(t); });
  return toks;
}

// ---------------------------------------------------------------------------
// CIDEr-D

constexpr int kMaxN = 4;
constexpr double kSigma = 6.0;

using NgramCounts = std::map<std::vector<std::string>, int>;

NgramCounts ngram_counts(const std::vector<std::string>& toks) {
  NgramCounts counts;
  for (int n = 1; n <= kMaxN; ++n) {
    if (toks.size() < static_cast<std::size_t>(n)) break;
    for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= toks.size(); ++i) {
      ++counts[std::vector<std::string>(toks.begin() + static_cast<std::ptrdiff_t>(i),
                                        toks.begin() + static_cast<std::ptrdiff_t>(i) + n)];
    }
  }
  return counts;
}

struct TfIdfVec {
  std::array<std::map<std::vector<std::string>, double>, kMaxN> vec;
  std::array<double, kMaxN> norm{};
  double length = 0.0;
};

TfIdfVec to_vec(const NgramCounts& counts, const std::map<std::vector<std::string>, double>& df,
                double ref_len) {
  TfIdfVec v;
  for (const auto& [gram, tf] : counts) {
    auto it = df.find(gram);
    const double d = std::log(std::max(1.0, it == df.end() ? 0.0 : it->second));
    const std::size_t n = gram.size() - 1;
    const double w = tf * (ref_len - d);
    v.vec[n][gram] = w;
    v.norm[n] += w * w;
    // length counts bigrams, as the reference scorer does
    if (n == 1) v.length += tf;
  }
  for (auto& x : v.norm) x = std::sqrt(x);
  return v;
}

std::array<double, kMaxN> sim(const TfIdfVec& hyp, const TfIdfVec& ref) {
  const double delta = hyp.length - ref.length;
  std::array<double, kMaxN> val{};
  for (int n = 0; n < kMaxN; ++n) {
    for (const auto& [gram, wh] : hyp.vec[static_cast<std::size_t>(n)]) {
      auto it = ref.vec[static_cast<std::size_t>(n)].find(gram);
      if (it == ref.vec[static_cast<std::size_t>(n)].end()) continue;
      val[static_cast<std::size_t>(n)] += std::min(wh, it->second) * it->second;
    }
    const double nh = hyp.norm[static_cast<std::size_t>(n)];
    const double nr = ref.norm[static_cast<std::size_t>(n)];
    if (nh != 0.0 && nr != 0.0) val[static_cast<std::size_t>(n)] /= nh * nr;
    val[static_cast<std::size_t>(n)] *= std::exp(-(delta * delta) / (2.0 * kSigma * kSigma));
  }
  return val;
}

}  // namespace

CiderResult cider_d(const std::map<std::string, std::string>& candidates,
                    const std::map<std::string, std::vector<std::string>>& references) {
  if (references.empty()) throw Error("empty-corpus", "cider: empty corpus");
  if (candidates.size() != references.size() ||
      !std::equal(candidates.begin(), candidates.end(), references.begin(),
                  [](const auto& a, const auto& b) { return a.first == b.first; })) {
    throw Error("key-mismatch", "cider: candidate and reference video ids differ");
  }

  std::map<std::string, std::vector<NgramCounts>> ref_counts;
  std::map<std::vector<std::string>, double> df;
  for (const auto& [id, refs] : references) {
    if (refs.empty()) throw Error("empty-references", "cider: video '" + id + "' has no references");
    auto& counts = ref_counts[id];
    std::set<std::vector<std::string>> seen;
    for (const auto& r : refs) {
      counts.push_back(ngram_counts(words(r)));
      for (const auto& kv : counts.back()) seen.insert(kv.first);
    }
    for (const auto& g : seen) df[g] += 1.0;
  }
  const double ref_len = std::log(static_cast<double>(references.size()));

  CiderResult out;
  double total = 0.0;
  for (const auto& [id, cand] : candidates) {
    const auto hyp = to_vec(ngram_counts(words(cand)), df, ref_len);
    std::array<double, kMaxN> acc{};
    const auto& refs = ref_counts.at(id);
    for (const auto& rc : refs) {
      const auto s = sim(hyp, to_vec(rc, df, ref_len));
      for (int n = 0; n < kMaxN; ++n) acc[static_cast<std::size_t>(n)] += s[static_cast<std::size_t>(n)];
    }
    double score = std::accumulate(acc.begin(), acc.end(), 0.0) / kMaxN;
    score /= static_cast<double>(refs.size());
    score *= 10.0;
    out.per_video[id] = score;
    total += score;
  }
  out.score = total / static_cast<double>(candidates.size());
  return out;
}

// ---------------------------------------------------------------------------
// METEOR-lite

double meteor_lite(std::string_view candidate, std::string_view reference) {
  const auto ref = words(reference);
  if (ref.empty()) throw Error("empty-reference", "meteor: empty reference");
  const auto hyp = words(candidate);
  if (hyp.empty()) return 0.0;

  std::vector<int> align(hyp.size(), -1);
  std::vector<bool> used(ref.size(), false);
  // exact pass, then stem pass; prefer the slot right after the previous alignment
  auto run_pass = [&](auto&& same) {
    for (std::size_t i = 0; i < hyp.size(); ++i) {
      if (align[i] >= 0) continue;
      int pick = -1;
      if (i > 0 && align[i - 1] >= 0) {
        const auto next = static_cast<std::size_t>(align[i - 1] + 1);
        if (next < ref.size() && !used[next] && same(hyp[i], ref[next])) pick = static_cast<int>(next);
      }
      for (std::size_t j = 0; pick < 0 && j < ref.size(); ++j) {
        if (!used[j] && same(hyp[i], ref[j])) pick = static_cast<int>(j);
      }
      if (pick >= 0) {
        align[i] = pick;
        used[static_cast<std::size_t>(pick)] = true;
      }
    }
  };
  run_pass([](const std::string& a, const std::string& b) { return a == b; });
  run_pass([](const std::string& a, const std::string& b) { return porter_stem(a) == porter_stem(b); });

  double matches = 0.0;
  double chunks = 0.0;
  int prev = -2;
  for (int a : align) {
    if (a < 0) {
      prev = -2;
      continue;
    }
    matches += 1.0;
    if (a != prev + 1) chunks += 1.0;
    prev = a;
  }
  if (matches == 0.0) return 0.0;
  const double p = matches / static_cast<double>(hyp.size());
  const double r = matches / static_cast<double>(ref.size());
  const double fmean = 10.0 * p * r / (r + 9.0 * p);
  const double penalty = 0.5 * std::pow(chunks / matches, 3.0);
  return fmean * (1.0 - penalty);
}

// ---------------------------------------------------------------------------
// Phrase similarity

namespace {

const std::set<std::string, std::less<>>& stopwords() {
  static const std::set<std::string, std::less<>> s = {
      "a",  "an",   "the",  "of",   "in",  "on",  "at",    "to",    "with", "by",  "for", "from", "and",
      "or", "his",  "her",  "its",  "their", "my", "your", "our",   "this", "that", "these", "those",
      "'s", "into", "onto", "some", "is",  "are", "being",
  };
  return s;
}

std::map<std::string, double> stem_counts(std::string_view text) {
  const auto toks = words(text);
  std::map<std::string, double> counts;
  for (const auto& t : toks) {
    if (!stopwords().contains(t)) counts[porter_stem(t)] += 1.0;
  }
  if (counts.empty()) {
    for (const auto& t : toks) counts[porter_stem(t)] += 1.0;
  }
  return counts;
}

}  // namespace

double LexicalSimilarity::similarity(std::string_view a, std::string_view b) const {
  if (a == b) return 1.0;
  const auto ca = stem_counts(a);
  const auto cb = stem_counts(b);
  if (ca.empty() || cb.empty()) return 0.0;
  double dot = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (const auto& [k, v] : ca) {
    na += v * v;
    auto it = cb.find(k);
    if (it != cb.end()) dot += v * it->second;
  }
  for (const auto& kv : cb) nb += kv.second * kv.second;
  if (ca == cb) return 1.0;
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), 0.0, 1.0);
}

std::vector<double> EmbeddingSimilarity::vector_for(const std::string& phrase) const {
  {
    std::lock_guard lock(mu_);
    auto it = cache_.find(phrase);
    if (it != cache_.end()) return it->second;
  }
  auto vecs = embedder_({phrase});
  if (vecs.size() != 1) throw Error("embedding-response", "embedder returned " + std::to_string(vecs.size()) + " vectors");
  std::lock_guard lock(mu_);
  return cache_.emplace(phrase, std::move(vecs.front())).first->second;
}

double EmbeddingSimilarity::similarity(std::string_view a, std::string_view b) const {
  if (a == b) return 1.0;
  const auto va = vector_for(std::string(a));
  const auto vb = vector_for(std::string(b));
  if (va.size() != vb.size()) throw Error("embedding-response", "embedding dimensions differ");
  double dot = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (std::size_t i = 0; i < va.size(); ++i) {
    dot += va[i] * vb[i];
    na += va[i] * va[i];
    nb += vb[i] * vb[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), 0.0, 1.0);
}

double phrase_similarity(std::string_view a, std::string_view b) {
  static const LexicalSimilarity lexical;
  return lexical.similarity(a, b);
}

// ---------------------------------------------------------------------------
// Matching

namespace {

template <typename Eligible>
MatchResult greedy_match(std::span<const Detection> preds, std::span<const GroundTruthBox> gts, Eligible&& eligible) {
  const std::size_t np = preds.size();
  const std::size_t ng = gts.size();
  std::vector<double> ious(np * ng);
  std::vector<double> best(np, 0.0);
  for (std::size_t p = 0; p < np; ++p) {
    for (std::size_t g = 0; g < ng; ++g) {
      ious[p * ng + g] = iou(preds[p].box, gts[g].box);
      best[p] = std::max(best[p], ious[p * ng + g]);
    }
  }
  std::vector<std::size_t> order(np);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (preds[a].confidence != preds[b].confidence) return preds[a].confidence > preds[b].confidence;
    return best[a] > best[b];
  });

  MatchResult out;
  std::vector<bool> gt_used(ng, false);
  std::vector<bool> pred_used(np, false);
  for (std::size_t p : order) {
    int pick = -1;
    double pick_iou = 0.0;
    double pick_sim = 0.0;
    for (std::size_t g = 0; g < ng; ++g) {
      if (gt_used[g]) continue;
      const double v = ious[p * ng + g];
      if (pick >= 0 && v <= pick_iou) continue;
      double s = 0.0;
      if (!eligible(p, g, v, s)) continue;
      pick = static_cast<int>(g);
      pick_iou = v;
      pick_sim = s;
    }
    if (pick >= 0) {
      gt_used[static_cast<std::size_t>(pick)] = true;
      pred_used[p] = true;
      out.pairs.push_back({p, static_cast<std::size_t>(pick), pick_iou, pick_sim});
    }
  }
  for (std::size_t p = 0; p < np; ++p) {
    if (!pred_used[p]) out.unmatched_preds.push_back(p);
  }
  for (std::size_t g = 0; g < ng; ++g) {
    if (!gt_used[g]) out.unmatched_gts.push_back(g);
  }
  return out;
}

}  // namespace

MatchResult match_frame(std::span<const Detection> preds, std::span<const GroundTruthBox> gts,
                        const PhraseSimilarity& similarity, double iou_thresh, double sim_thresh) {
  return greedy_match(preds, gts, [&](std::size_t p, std::size_t g, double v, double& s) {
    if (v < iou_thresh) return false;
    s = similarity.similarity(preds[p].phrase, gts[g].phrase);
    return s >= sim_thresh;
  });
}

MatchResult match_frame_iou_only(std::span<const Detection> preds, std::span<const GroundTruthBox> gts) {
  return greedy_match(preds, gts, [](std::size_t, std::size_t, double v, double&) { return v > 0.0; });
}

std::optional<double> average_precision(std::span<const bool> ranked, std::size_t num_gt) {
  if (num_gt == 0) return std::nullopt;
  std::vector<double> precision(ranked.size());
  std::size_t tp = 0;
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    if (ranked[i]) ++tp;
    precision[i] = static_cast<double>(tp) / static_cast<double>(i + 1);
  }
  for (std::size_t i = ranked.size(); i-- > 1;) precision[i - 1] = std::max(precision[i - 1], precision[i]);
  double sum = 0.0;
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    if (ranked[i]) sum += precision[i];
  }
  return sum / static_cast<double>(num_gt);
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

struct RankedDet {
  double confidence = 1.0;
  bool tp = false;
};

struct VideoTerms {
  std::vector<RankedDet> dets;  // in (frame, order) sequence
  std::size_t num_gt = 0;
  std::size_t num_pred = 0;
  double iou_sum = 0.0;
  std::size_t recalled = 0;
};

BoundingBox to_mode(const BoundingBox& b, const VideoAnnotation& gt, bool normalized) {
  if (b.normalized == normalized) return b;
  return normalized ? normalize_box(b, gt.width, gt.height) : denormalize_box(b, gt.width, gt.height);
}

bool gt_mode(const VideoAnnotation& gt) {
  for (const auto& t : gt.tracks) {
    if (!t.boxes.empty()) return t.boxes.begin()->second.normalized;
  }
  return false;
}

VideoTerms video_terms(const VideoAnnotation* pred, const VideoAnnotation& gt, const EvalConfig& cfg) {
  const bool normalized = gt_mode(gt);
  std::map<int, std::vector<GroundTruthBox>> gt_frames;
  for (std::size_t t = 0; t < gt.tracks.size(); ++t) {
    const auto& tr = gt.tracks[t];
    for (const auto& [f, b] : tr.boxes) gt_frames[f].push_back({t, b, gt.phrase_text(tr)});
  }
  std::map<int, std::vector<Detection>> pred_frames;
  if (pred != nullptr) {
    for (std::size_t t = 0; t < pred->tracks.size(); ++t) {
      const auto& tr = pred->tracks[t];
      for (const auto& [f, b] : tr.boxes) {
        double conf = 1.0;
        if (tr.confidence) {
          auto it = tr.confidence->find(f);
          if (it != tr.confidence->end()) conf = it->second;
        }
        pred_frames[f].push_back({t, to_mode(b, gt, normalized), pred->phrase_text(tr), conf});
      }
    }
  }
  std::set<int> frames;
  for (const auto& kv : gt_frames) frames.insert(kv.first);
  for (const auto& kv : pred_frames) frames.insert(kv.first);

  VideoTerms out;
  static const std::vector<Detection> no_preds;
  static const std::vector<GroundTruthBox> no_gts;
  for (int f : frames) {
    auto pi = pred_frames.find(f);
    auto gi = gt_frames.find(f);
    const auto& dets = pi == pred_frames.end() ? no_preds : pi->second;
    const auto& gts = gi == gt_frames.end() ? no_gts : gi->second;
    out.num_gt += gts.size();
    out.num_pred += dets.size();

    const auto m = match_frame(dets, gts, *cfg.similarity, cfg.iou_threshold, cfg.sim_threshold);
    std::vector<bool> tp(dets.size(), false);
    for (const auto& pair : m.pairs) tp[pair.pred] = true;
    out.recalled += m.pairs.size();
    for (std::size_t i = 0; i < dets.size(); ++i) out.dets.push_back({dets[i].confidence, tp[i]});

    for (const auto& pair : match_frame_iou_only(dets, gts).pairs) out.iou_sum += pair.iou;
  }
  return out;
}

std::optional<double> ap_of(std::vector<RankedDet> dets, std::size_t num_gt) {
  std::stable_sort(dets.begin(), dets.end(),
                   [](const RankedDet& a, const RankedDet& b) { return a.confidence > b.confidence; });
  auto ranked = std::make_unique<bool[]>(dets.size());
  for (std::size_t i = 0; i < dets.size(); ++i) ranked[i] = dets[i].tp;
  return average_precision(std::span<const bool>(ranked.get(), dets.size()), num_gt);
}

LevelScores video_scores(const VideoTerms& t) {
  LevelScores s;
  if (t.num_gt == 0) return s;
  const double n = static_cast<double>(t.num_gt);
  s.ap50 = ap_of(t.dets, t.num_gt);
  s.miou = t.iou_sum / n;
  s.recall = static_cast<double>(t.recalled) / n;
  return s;
}

struct Joined {
  std::vector<const VideoAnnotation*> gts;    // sorted by video_id
  std::vector<const VideoAnnotation*> preds;  // parallel; null when missing
};

Joined join(std::span<const VideoAnnotation> preds, std::span<const VideoAnnotation> gts) {
  std::map<std::string, const VideoAnnotation*> g;
  for (const auto& v : gts) {
    if (!g.emplace(v.video_id, &v).second) throw Error("duplicate-video", "duplicate ground-truth video '" + v.video_id + "'");
  }
  std::map<std::string, const VideoAnnotation*> p;
  for (const auto& v : preds) {
    if (!g.contains(v.video_id)) throw Error("unknown-video", "prediction for unknown video '" + v.video_id + "'");
    if (!p.emplace(v.video_id, &v).second) throw Error("duplicate-video", "duplicate prediction video '" + v.video_id + "'");
  }
  Joined out;
  for (const auto& [id, v] : g) {
    out.gts.push_back(v);
    auto it = p.find(id);
    out.preds.push_back(it == p.end() ? nullptr : it->second);
  }
  return out;
}

std::vector<VideoTerms> all_terms(const Joined& j, const EvalConfig& cfg) {
  std::vector<VideoTerms> terms(j.gts.size());
  const std::size_t workers = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(cfg.workers, 1)), 1, std::max<std::size_t>(terms.size(), 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < terms.size(); ++i) terms[i] = video_terms(j.preds[i], *j.gts[i], cfg);
    return terms;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < terms.size(); i += workers) terms[i] = video_terms(j.preds[i], *j.gts[i], cfg);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return terms;
}

LevelScores frame_level(const std::vector<VideoTerms>& terms) {
  LevelScores s;
  std::vector<RankedDet> pooled;
  std::size_t num_gt = 0;
  double iou_sum = 0.0;
  std::size_t recalled = 0;
  for (const auto& t : terms) {
    pooled.insert(pooled.end(), t.dets.begin(), t.dets.end());
    num_gt += t.num_gt;
    iou_sum += t.iou_sum;
    recalled += t.recalled;
  }
  if (num_gt == 0) return s;
  s.ap50 = ap_of(std::move(pooled), num_gt);
  s.miou = iou_sum / static_cast<double>(num_gt);
  s.recall = static_cast<double>(recalled) / static_cast<double>(num_gt);
  return s;
}

std::optional<double> mean_of(const std::vector<std::optional<double>>& xs) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& x : xs) {
    if (!x) continue;
    sum += *x;
    ++n;
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

LevelScores video_level(const std::vector<LevelScores>& per) {
  std::vector<std::optional<double>> ap;
  std::vector<std::optional<double>> mi;
  std::vector<std::optional<double>> rc;
  for (const auto& s : per) {
    ap.push_back(s.ap50);
    mi.push_back(s.miou);
    rc.push_back(s.recall);
  }
  return {mean_of(ap), mean_of(mi), mean_of(rc)};
}

LevelScores grounding(std::span<const VideoAnnotation> preds, std::span<const VideoAnnotation> gts, Level level,
                      const EvalConfig& cfg) {
  const auto terms = all_terms(join(preds, gts), cfg);
  if (level == Level::Frame) return frame_level(terms);
  std::vector<LevelScores> per;
  for (const auto& t : terms) per.push_back(video_scores(t));
  return video_level(per);
}

json opt(const std::optional<double>& x) { return x ? json(*x) : json(nullptr); }

json level_json(const LevelScores& s) { return {{"ap50", opt(s.ap50)}, {"miou", opt(s.miou)}, {"recall", opt(s.recall)}}; }

}  // namespace

std::optional<double> ap50(std::span<const VideoAnnotation> preds, std::span<const VideoAnnotation> gts, Level level,
                           const EvalConfig& config) {
  return grounding(preds, gts, level, config).ap50;
}

std::optional<double> miou(std::span<const VideoAnnotation> preds, std::span<const VideoAnnotation> gts, Level level,
                           const EvalConfig& config) {
  return grounding(preds, gts, level, config).miou;
}

std::optional<double> recall(std::span<const VideoAnnotation> preds, std::span<const VideoAnnotation> gts,
                             Level level, const EvalConfig& config) {
  return grounding(preds, gts, level, config).recall;
}

MetricsReport evaluate(std::span<const VideoAnnotation> preds, std::span<const VideoAnnotation> gts,
                       const EvalConfig& config) {
  const auto joined = join(preds, gts);
  const auto terms = all_terms(joined, config);

  MetricsReport report;
  report.frame = frame_level(terms);

  std::vector<LevelScores> per;
  std::map<std::string, std::string> candidates;
  std::map<std::string, std::vector<std::string>> references;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto& gt = *joined.gts[i];
    const auto* pred = joined.preds[i];
    VideoScores vs;
    vs.video_id = gt.video_id;
    vs.grounding = video_scores(terms[i]);
    vs.num_gt_boxes = terms[i].num_gt;
    vs.num_pred_boxes = terms[i].num_pred;
    const std::string cand = pred ? pred->caption.plain : std::string();
    vs.meteor = meteor_lite(cand, gt.caption.plain);
    candidates[gt.video_id] = cand;
    references[gt.video_id] = {gt.caption.plain};
    per.push_back(vs.grounding);
    report.per_video.push_back(std::move(vs));
  }
  report.video = video_level(per);

  if (!report.per_video.empty()) {
    const auto c = cider_d(candidates, references);
    double meteor_sum = 0.0;
    for (auto& vs : report.per_video) {
      vs.cider = c.per_video.at(vs.video_id);
      meteor_sum += vs.meteor;
    }
    report.cider = c.score;
    report.meteor = meteor_sum / static_cast<double>(report.per_video.size());
  }

  report.config = {
      {"iou_threshold", config.iou_threshold},
      {"sim_threshold", config.sim_threshold},
      {"similarity_backend", config.similarity->name()},
      {"matching", "greedy one-to-one by descending confidence"},
      {"ap_interpolation", "all-point with precision envelope"},
      {"miou_matching", "iou-only greedy, iou > 0"},
      {"miou_average", "over ground-truth boxes, unmatched = 0"},
      {"missing_confidence", 1.0},
      {"meteor", "exact+stem, fmean 10PR/(R+9P), penalty 0.5*(chunks/matches)^3"},
      {"cider", "CIDEr-D n=1..4 sigma=6 x10, idf over references"},
  };
  return report;
}

json to_json(const MetricsReport& report) {
  json per = json::array();
  for (const auto& v : report.per_video) {
    per.push_back({{"video_id", v.video_id},
                   {"ap50", opt(v.grounding.ap50)},
                   {"miou", opt(v.grounding.miou)},
                   {"recall", opt(v.grounding.recall)},
                   {"meteor", v.meteor},
                   {"cider", v.cider},
                   {"num_gt_boxes", v.num_gt_boxes},
                   {"num_pred_boxes", v.num_pred_boxes}});
  }
  return {{"frame", level_json(report.frame)},
          {"video", level_json(report.video)},
          {"meteor", report.meteor},
          {"cider", report.cider},
          {"per_video", per},
          {"config", report.config}};
}

}  // namespace groc
