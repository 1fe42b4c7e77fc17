#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <random>

#include <json.hpp>

#include "groc/metrics.hpp"
#include "../support/oracles.hpp"
#include "../support/synth.hpp"

using namespace groc;

namespace {

struct Box {
  int frame;
  BoundingBox box;
  double conf = 1.0;
};

// One track per (phrase, boxes) entry.
VideoAnnotation video(const std::string& id, const std::string& tagged, int T,
                      const std::vector<std::pair<std::size_t, std::vector<Box>>>& tracks, bool scored = false) {
  VideoAnnotation v;
  v.video_id = id;
  v.num_frames = T;
  v.width = 200;
  v.height = 200;
  v.caption = parse_tagged_caption(tagged);
  for (auto& [phrase, boxes] : tracks) {
    std::map<int, BoundingBox> m;
    std::map<int, double> c;
    for (auto& b : boxes) {
      m[b.frame] = b.box;
      c[b.frame] = b.conf;
    }
    auto t = ObjectTrack::from_boxes(phrase, m, T);
    if (scored) t.confidence = c;
    v.tracks.push_back(t);
  }
  return v;
}

std::string pretokenized(const std::string& s) {
  std::string out;
  for (auto& t : tokenize(s)) {
    if (is_punctuation(t)) continue;
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

using V = std::vector<VideoAnnotation>;

}  // namespace

TEST_CASE("tokenizer golden") {
  std::ifstream in(GROC_TEST_DATA "/golden/tokenizer.jsonl");
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto doc = nlohmann::json::parse(line);
    CHECK_MESSAGE(tokenize(doc["text"].get<std::string>()) == doc["tokens"].get<std::vector<std::string>>(),
                  doc["text"].get<std::string>());
    ++n;
  }
  CHECK(n >= 10);
  CHECK(tokenize("A person, stirring.") == std::vector<std::string>{"a", "person", ",", "stirring", "."});
  CHECK(tokenize("").empty());
}

TEST_CASE("porter stemmer reference words") {
  const std::vector<std::pair<const char*, const char*>> pairs = {
      {"caresses", "caress"}, {"ponies", "poni"},     {"relational", "relat"}, {"conditional", "condit"},
      {"hopping", "hop"},     {"running", "run"},     {"stirring", "stir"},    {"generalization", "gener"},
      {"oscillators", "oscil"}, {"cats", "cat"},      {"agreed", "agre"},      {"happy", "happi"},
  };
  for (auto& [w, s] : pairs) CHECK(porter_stem(w) == s);
}

TEST_CASE("cider examples") {
  CHECK(cider({{"a", "a person stirs food"}}, {{"a", {"a person stirs food"}}}) == 0.0);
  CHECK(cider({{"a", ""}, {"b", "x y"}}, {{"a", {"a person stirs food"}}, {"b", {"a dog runs"}}}) == 0.0);
  CHECK_THROWS_AS(cider({}, {}), Error);
  CHECK_THROWS_AS(cider({{"a", "x"}}, {{"b", {"x"}}}), Error);

  std::map<std::string, std::string> c = {{"v1", "a person is cutting an onion"},
                                          {"v2", "a woman is drinking from a glass"},
                                          {"v3", "a child plays with a red ball"}};
  std::map<std::string, std::vector<std::string>> r = {{"v1", {"a man is slicing an onion with a knife"}},
                                                       {"v2", {"a woman drinks a green beverage from a glass"}},
                                                       {"v3", {"a kid is playing with a ball"}}};
  std::map<std::string, double> per;
  const double want = oracle::brute_cider(c, r, &per);
  auto got = cider_d(c, r);
  CHECK(std::abs(got.score - want) < 1e-9);
  for (auto& [k, v] : per) CHECK(std::abs(got.per_video.at(k) - v) < 1e-9);
  CHECK(got.score > 0.0);
}

TEST_CASE("cider agrees with the brute-force oracle") {
  std::mt19937 rng(23);
  const std::vector<std::string> vocab = {"a", "the", "person", "Person", "bowl", "spoon,", "is", "stirring",
                                          "food", "in", "with", "knife.", "cuts", "onion", "woman's", "glass"};
  for (int trial = 0; trial < 100; ++trial) {
    auto sentence = [&] {
      const int n = std::uniform_int_distribution<int>(0, 12)(rng);
      std::string s;
      for (int i = 0; i < n; ++i) s += (i ? " " : "") + vocab[rng() % vocab.size()];
      return s;
    };
    const int nv = std::uniform_int_distribution<int>(1, 5)(rng);
    std::map<std::string, std::string> cands, cands_tok;
    std::map<std::string, std::vector<std::string>> refs, refs_tok;
    for (int v = 0; v < nv; ++v) {
      const std::string id = "v" + std::to_string(v);
      cands[id] = sentence();
      cands_tok[id] = pretokenized(cands[id]);
      const int nr = std::uniform_int_distribution<int>(1, 3)(rng);
      for (int k = 0; k < nr; ++k) {
        auto s = sentence();
        if (s.empty()) s = "a";
        refs[id].push_back(s);
        refs_tok[id].push_back(pretokenized(s));
      }
    }
    std::map<std::string, double> per;
    const double want = oracle::brute_cider(cands_tok, refs_tok, &per);
    const auto got = cider_d(cands, refs);
    CHECK(std::abs(got.score - want) < 1e-9);
    for (auto& [k, v] : per) CHECK(std::abs(got.per_video.at(k) - v) < 1e-9);
    CHECK(got.score >= 0.0);
    CHECK(got.score <= 10.0 + 1e-9);
  }
}

TEST_CASE("meteor lite") {
  CHECK(meteor_lite("a person stirs", "a person stirs") == doctest::Approx(0.981481).epsilon(1e-6));
  CHECK(std::abs(meteor_lite("stirs person a", "a person stirs") - 0.5) < 1e-12);
  CHECK(meteor_lite("dog barks", "a person stirs") == 0.0);
  CHECK(meteor_lite("", "a person stirs") == 0.0);
  CHECK_THROWS_AS(meteor_lite("x", ""), Error);
  CHECK(meteor_lite("a person stirring", "a person stirs") == doctest::Approx(0.981481).epsilon(1e-6));
  const double partial = meteor_lite("a person is stirring food", "a person is cutting food");
  CHECK(partial > 0.0);
  CHECK(partial < 1.0);
}

TEST_CASE("lexical phrase similarity") {
  CHECK(phrase_similarity("a glass", "a glass") == doctest::Approx(1.0));
  CHECK(phrase_similarity("a red cup", "the blue dog") == 0.0);
  CHECK(phrase_similarity("a glass of green liquid", "a beverage") == 0.0);
  CHECK(phrase_similarity("a glass of green liquid", "a beverage") < 0.5);
  CHECK(phrase_similarity("A person", "person") == doctest::Approx(1.0));
  CHECK(phrase_similarity("the cups", "a cup") == doctest::Approx(1.0));
  const double s = phrase_similarity("a green glass", "a glass");
  CHECK(s > 0.5);
  CHECK(s < 1.0);
}

TEST_CASE("embedding phrase similarity") {
  int batches = 0;
  EmbeddingSimilarity sim([&](const std::vector<std::string>& texts) {
    ++batches;
    std::vector<std::vector<double>> out;
    for (auto& t : texts) out.push_back(t == "a cup" ? std::vector<double>{1, 0} : std::vector<double>{1, 1});
    return out;
  });
  CHECK(sim.similarity("a cup", "a cup") == doctest::Approx(1.0));
  CHECK(sim.similarity("a cup", "a mug") == doctest::Approx(std::sqrt(0.5)));
  CHECK(batches == 2);
}

TEST_CASE("frame matching") {
  LexicalSimilarity lex;
  std::vector<Detection> preds = {{0, {0, 0, 10, 10}, "a cup", 1.0}, {1, {20, 20, 10, 10}, "a bowl", 1.0}};
  std::vector<GroundTruthBox> gts = {{0, {0, 0, 10, 10}, "a cup"}, {1, {20, 20, 10, 10}, "a bowl"}};
  auto m = match_frame(preds, gts, lex);
  CHECK(m.pairs.size() == 2);
  for (auto& p : m.pairs) CHECK(p.iou == 1.0);

  auto none = match_frame({}, gts, lex);
  CHECK(none.unmatched_gts.size() == 2);

  std::vector<Detection> two = {{0, {1, 0, 10, 10}, "a cup", 0.6}, {1, {0, 0, 10, 10}, "a cup", 0.9}};
  std::vector<GroundTruthBox> one = {{0, {0, 0, 10, 10}, "a cup"}};
  auto c = match_frame(two, one, lex);
  REQUIRE(c.pairs.size() == 1);
  CHECK(c.pairs[0].pred == 1);
  CHECK(c.unmatched_preds == std::vector<std::size_t>{0});
  // exhaustive check of the 2x1 case: the chosen pred is the most confident feasible one
  std::size_t best = 0;
  for (std::size_t i = 1; i < two.size(); ++i) {
    if (two[i].confidence > two[best].confidence) best = i;
  }
  CHECK(c.pairs[0].pred == best);

  std::vector<Detection> unrelated = {{0, {0, 0, 10, 10}, "a dog", 1.0}};
  CHECK(match_frame(unrelated, one, lex).pairs.empty());
  CHECK(match_frame_iou_only(unrelated, one).pairs.size() == 1);

  std::mt19937 rng(4);
  for (int i = 0; i < 200; ++i) {
    std::vector<Detection> ps;
    std::vector<GroundTruthBox> gs;
    for (int k = 0; k < 5; ++k) {
      ps.push_back({std::size_t(k), {double(rng() % 30), double(rng() % 30), 10, 10}, "a cup", (rng() % 10) / 10.0});
      gs.push_back({std::size_t(k), {double(rng() % 30), double(rng() % 30), 10, 10}, "a cup"});
    }
    auto r = match_frame(ps, gs, lex);
    std::set<std::size_t> used_p, used_g;
    for (auto& p : r.pairs) {
      CHECK(p.iou >= 0.5);
      CHECK(used_p.insert(p.pred).second);
      CHECK(used_g.insert(p.gt).second);
    }
    CHECK(r.pairs.size() + r.unmatched_preds.size() == ps.size());
    CHECK(r.pairs.size() + r.unmatched_gts.size() == gs.size());
  }
}

TEST_CASE("average precision") {
  const std::vector<char> flags = {1, 0, 1};
  bool ranked[] = {true, false, true};
  auto ap = average_precision(ranked, 2);
  REQUIRE(ap);
  CHECK(*ap == doctest::Approx(0.5 + 0.5 * 2.0 / 3.0).epsilon(1e-12));
  CHECK(*ap == doctest::Approx(*oracle::exhaustive_ap({true, false, true}, 2)).epsilon(1e-12));
  CHECK(average_precision(std::span<const bool>(), 0) == std::nullopt);
  CHECK(*average_precision(std::span<const bool>(), 3) == 0.0);

  std::mt19937 rng(31);
  for (int i = 0; i < 500; ++i) {
    const int n = std::uniform_int_distribution<int>(0, 15)(rng);
    std::vector<bool> v;
    std::size_t tp = 0;
    for (int k = 0; k < n; ++k) {
      v.push_back(rng() % 2);
      tp += v.back();
    }
    const std::size_t gt = tp + rng() % 4 + (tp == 0 ? 1 : 0);
    auto buf = std::make_unique<bool[]>(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) buf[k] = v[k];
    auto got = average_precision(std::span<const bool>(buf.get(), v.size()), gt);
    CHECK(*got == doctest::Approx(*oracle::exhaustive_ap(v, gt)).epsilon(1e-12));
  }
}

TEST_CASE("ap50 through evaluation matches the worked example") {
  auto gt = video("v", "<p>a cup</p> near <p>a plate</p> and <p>a fork</p>", 1,
                  {{0, {{0, {0, 0, 10, 10}}}}, {1, {{0, {50, 50, 10, 10}}}}});
  auto pred = video("v", "<p>a cup</p> near <p>a plate</p> and <p>a fork</p>", 1,
                    {{0, {{0, {0, 0, 10, 10}, 0.9}}}, {2, {{0, {100, 100, 5, 5}, 0.8}}}, {1, {{0, {50, 50, 10, 10}, 0.7}}}},
                    true);
  V p{pred}, g{gt};
  CHECK(*ap50(p, g, Level::Frame) == doctest::Approx(0.833333).epsilon(1e-6));
  CHECK(*ap50(p, g, Level::Frame) == doctest::Approx(*oracle::exhaustive_ap({true, false, true}, 2)).epsilon(1e-12));
  CHECK(*ap50(p, g, Level::Video) == *ap50(p, g, Level::Frame));
}

TEST_CASE("miou and recall examples") {
  auto gt = video("v", "<p>a cup</p>", 1, {{0, {{0, {10, 10, 20, 20}}}}});
  auto pred = video("v", "<p>a cup</p>", 1, {{0, {{0, {20, 20, 20, 20}}}}});
  V p{pred}, g{gt};
  CHECK(*miou(p, g, Level::Frame) == doctest::Approx(100.0 / 700.0).epsilon(1e-12));
  CHECK(*recall(p, g, Level::Frame) == 0.0);
  CHECK(*miou(V{}, g, Level::Frame) == 0.0);
  CHECK(*ap50(V{}, g, Level::Frame) == 0.0);

  auto gt4 = video("w", "<p>a cup</p> <p>a bowl</p> <p>a knife</p> <p>a spoon</p>", 1,
                   {{0, {{0, {0, 0, 10, 10}}}}, {1, {{0, {20, 0, 10, 10}}}}, {2, {{0, {40, 0, 10, 10}}}},
                    {3, {{0, {60, 0, 10, 10}}}}});
  auto pred4 = video("w", "<p>a cup</p> <p>a bowl</p> <p>a dog</p> <p>a spoon</p>", 1,
                     {{0, {{0, {0, 0, 10, 10}}}}, {1, {{0, {20, 0, 10, 10}}}}, {2, {{0, {40, 0, 10, 10}}}},
                      {3, {{0, {90, 90, 10, 10}}}}});
  V p4{pred4}, g4{gt4};
  CHECK(*recall(p4, g4, Level::Frame) == 0.5);
  CHECK(*recall(p4, g4, Level::Video) == 0.5);
  CHECK(*miou(p4, g4, Level::Frame) == 0.75);

  auto wrong = video("v", "<p>a dog</p>", 1, {{0, {{0, {10, 10, 20, 20}}}}});
  CHECK(*recall(V{wrong}, g, Level::Frame) == 0.0);
  CHECK(*miou(V{wrong}, g, Level::Frame) == 1.0);

  auto empty_gt = video("e", "nothing here", 1, {});
  CHECK(ap50(V{}, V{empty_gt}, Level::Frame) == std::nullopt);
  CHECK(ap50(V{}, V{empty_gt, gt}, Level::Video) == 0.0);
}

TEST_CASE("evaluate self and empty") {
  std::mt19937 rng(8);
  V gts;
  for (int i = 0; i < 10; ++i) gts.push_back(synth::random_annotation(rng, "s" + std::to_string(i), i % 2 == 0));
  auto r = evaluate(gts, gts);
  for (auto* l : {&r.frame, &r.video}) {
    CHECK(*l->ap50 == 1.0);
    CHECK(*l->miou == 1.0);
    CHECK(*l->recall == 1.0);
  }
  CHECK(r.meteor > 0.9);
  CHECK(r.cider > 0.0);
  CHECK(r.per_video.size() == 10);

  auto e = evaluate(V{}, gts);
  CHECK(*e.frame.ap50 == 0.0);
  CHECK(*e.frame.miou == 0.0);
  CHECK(*e.video.recall == 0.0);
  CHECK(e.meteor == 0.0);
  CHECK(e.cider == 0.0);

  V stray{gts[0]};
  stray[0].video_id = "nope";
  CHECK_THROWS_AS(evaluate(stray, gts), Error);

  auto j = to_json(r);
  CHECK(j["frame"]["ap50"] == 1.0);
  CHECK(j["config"]["similarity_backend"] == "lexical");
  CHECK(j["per_video"].size() == 10);
}

TEST_CASE("metric properties") {
  std::mt19937 rng(12);
  for (int trial = 0; trial < 40; ++trial) {
    V gts, preds;
    const int n = std::uniform_int_distribution<int>(1, 5)(rng);
    for (int i = 0; i < n; ++i) {
      auto g = synth::random_annotation(rng, "m" + std::to_string(i), false);
      gts.push_back(g);
      auto p = synth::random_annotation(rng, g.video_id, false, true);
      p.width = g.width;
      p.height = g.height;
      p.num_frames = g.num_frames;
      for (auto& t : p.tracks) {
        std::map<int, BoundingBox> keep;
        for (auto& [f, b] : t.boxes) {
          if (f < g.num_frames) keep[f] = b;
        }
        t.boxes = keep;
        t.presence.assign(static_cast<std::size_t>(g.num_frames), false);
        for (auto& [f, b] : keep) t.presence[static_cast<std::size_t>(f)] = true;
      }
      std::erase_if(p.tracks, [](const ObjectTrack& t) { return t.boxes.empty(); });
      // some predictions copy a ground-truth box exactly
      if (!g.tracks.empty() && !p.tracks.empty() && rng() % 2) {
        auto& gt0 = g.tracks[0];
        p.caption = g.caption;
        auto t = ObjectTrack::from_boxes(gt0.phrase_index, gt0.boxes, g.num_frames);
        std::map<int, double> c;
        for (auto& [f, b] : gt0.boxes) c[f] = 0.5;
        t.confidence = c;
        p.tracks = {t};
      }
      if (std::none_of(p.tracks.begin(), p.tracks.end(), [&](auto& t) { return t.phrase_index >= p.caption.phrases.size(); })) {
        preds.push_back(p);
      }
    }
    const auto base = evaluate(preds, gts);

    V shuffled_p = preds, shuffled_g = gts;
    std::shuffle(shuffled_p.begin(), shuffled_p.end(), rng);
    std::shuffle(shuffled_g.begin(), shuffled_g.end(), rng);
    CHECK(to_json(evaluate(shuffled_p, shuffled_g)).dump() == to_json(base).dump());

    EvalConfig par;
    par.workers = 3;
    CHECK(to_json(evaluate(preds, gts, par)).dump() == to_json(base).dump());

    for (auto* l : {&base.frame, &base.video}) {
      for (auto& x : {l->ap50, l->miou, l->recall}) {
        if (x) {
          CHECK(*x >= 0.0);
          CHECK(*x <= 1.0);
        }
      }
    }
    // video level equals the mean of the per-video values
    double s = 0;
    int k = 0;
    for (auto& v : base.per_video) {
      if (v.grounding.recall) {
        s += *v.grounding.recall;
        ++k;
      }
    }
    if (k) CHECK(*base.video.recall == doctest::Approx(s / k).epsilon(1e-12));

    // a perfect extra prediction for an unmatched ground-truth track never lowers a score
    for (const auto& g : gts) {
      if (g.tracks.empty()) continue;
      auto it = std::find_if(preds.begin(), preds.end(), [&](auto& p) { return p.video_id == g.video_id; });
      if (it == preds.end()) continue;
      const auto& gt0 = g.tracks.back();
      VideoAnnotation before_v = *it;
      before_v.caption = g.caption;
      std::vector<ObjectTrack> kept;
      for (auto t : before_v.tracks) {
        if (t.phrase_index >= g.caption.phrases.size()) continue;
        std::map<int, BoundingBox> boxes;
        std::map<int, double> conf;
        for (auto& [f, b] : t.boxes) {
          auto hit = gt0.boxes.find(f);
          if (hit != gt0.boxes.end() && iou(hit->second, b) > 0.0) continue;
          boxes[f] = b;
          conf[f] = t.confidence ? t.confidence->at(f) : 1.0;
        }
        if (boxes.empty()) continue;
        auto nt = ObjectTrack::from_boxes(t.phrase_index, boxes, g.num_frames);
        nt.confidence = conf;
        kept.push_back(nt);
      }
      before_v.tracks = kept;
      VideoAnnotation after_v = before_v;
      auto t = ObjectTrack::from_boxes(gt0.phrase_index, gt0.boxes, g.num_frames);
      std::map<int, double> c;
      for (auto& [f, b] : gt0.boxes) c[f] = 1.0;
      t.confidence = c;
      after_v.tracks.push_back(t);
      V before_p = preds, after_p = preds;
      before_p[static_cast<std::size_t>(it - preds.begin())] = before_v;
      after_p[static_cast<std::size_t>(it - preds.begin())] = after_v;
      const auto b0 = evaluate(before_p, gts);
      const auto b1 = evaluate(after_p, gts);
      for (auto [x0, x1] : {std::pair{b0.frame, b1.frame}, std::pair{b0.video, b1.video}}) {
        CHECK(*x1.recall >= *x0.recall - 1e-12);
        CHECK(*x1.miou >= *x0.miou - 1e-12);
        CHECK(*x1.ap50 >= *x0.ap50 - 1e-12);
      }
      break;
    }
  }
}

TEST_CASE("single video levels coincide") {
  std::mt19937 rng(21);
  for (int i = 0; i < 30; ++i) {
    auto g = synth::random_annotation(rng, "one", false);
    auto p = g;
    for (auto& t : p.tracks) {
      for (auto& [f, b] : t.boxes) b.x += static_cast<double>(rng() % 5);
    }
    auto r = evaluate(V{p}, V{g});
    if (!r.frame.ap50) continue;
    CHECK(*r.frame.ap50 == doctest::Approx(*r.video.ap50).epsilon(1e-12));
    CHECK(*r.frame.miou == doctest::Approx(*r.video.miou).epsilon(1e-12));
    CHECK(*r.frame.recall == doctest::Approx(*r.video.recall).epsilon(1e-12));
  }
}
