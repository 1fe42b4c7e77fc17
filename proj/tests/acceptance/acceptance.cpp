// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "groc/canonical_json.hpp"
#include "groc/pipeline.hpp"
#include "groc/stats.hpp"
#include "../support/oracles.hpp"
#include "../support/synth.hpp"

using namespace groc;
namespace fs = std::filesystem;

namespace {

std::string g_groc_binary;

struct Check {
  std::vector<std::string> failures;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

std::string data(const std::string& rel) { return read_file(std::string(GROC_TEST_DATA "/") + rel); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

fs::path scratch_dir(const std::string& name) {
  auto p = fs::temp_directory_path() / ("groc-acceptance-" + std::to_string(::getpid()) + "-" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

PipelineConfig http_config(int port, int workers) {
  PipelineConfig c;
  c.chat.endpoint = "http://127.0.0.1:" + std::to_string(port) + "/v1/chat/completions";
  c.chat.timeout = std::chrono::seconds(30);
  c.retry.backoff = std::chrono::milliseconds(0);
  c.max_in_flight = workers;
  return c;
}

std::vector<VideoOutcome> build_over_http(const std::string& frames, const PipelineConfig& cfg) {
  HttpChatClient client(cfg.chat);
  return build_dataset(group_by_video(parse_frame_grounding(frames)), client, cfg);
}

int run_cli(const std::string& args) {
  const std::string cmd = "\"" + g_groc_binary + "\" " + args + " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

// ---------------------------------------------------------------------------

void metric_identity(Check& c) {
  std::mt19937 rng(2024);
  std::vector<VideoAnnotation> gts;
  for (int i = 0; i < 100; ++i) {
    char id[16];
    std::snprintf(id, sizeof id, "syn%03d", i);
    gts.push_back(synth::random_annotation(rng, id, i % 2 == 1));
  }
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = evaluate(gts, gts);
  const double dt = seconds_since(t0);
  for (auto [name, level] : {std::pair{"frame", &r.frame}, std::pair{"video", &r.video}}) {
    c.require(level->ap50 && *level->ap50 == 1.0, std::string(name) + " ap50 != 1");
    c.require(level->miou && *level->miou == 1.0, std::string(name) + " miou != 1");
    c.require(level->recall && *level->recall == 1.0, std::string(name) + " recall != 1");
  }
  c.require(dt < 5.0, "took " + std::to_string(dt) + " s");
  c.notes.push_back("100 videos in " + std::to_string(dt) + " s");
}

void oracle_equivalence(Check& c) {
  std::mt19937 rng(99);
  const std::vector<std::string> vocab = {"a", "the", "person", "Person", "bowl", "spoon,", "is", "stirring",
                                          "food", "in", "with", "knife.", "cuts", "onion", "woman's", "glass"};
  auto pretok = [](const std::string& s) {
    std::string out;
    for (auto& t : tokenize(s)) {
      if (is_punctuation(t)) continue;
      out += (out.empty() ? "" : " ") + t;
    }
    return out;
  };
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    auto sentence = [&](int lo) {
      const int n = std::uniform_int_distribution<int>(lo, 12)(rng);
      std::string s;
      for (int i = 0; i < n; ++i) s += (i ? " " : "") + vocab[rng() % vocab.size()];
      return s;
    };
    const int nv = std::uniform_int_distribution<int>(1, 5)(rng);
    std::map<std::string, std::string> cands, cands_tok;
    std::map<std::string, std::vector<std::string>> refs, refs_tok;
    for (int v = 0; v < nv; ++v) {
      const std::string id = "v" + std::to_string(v);
      cands[id] = sentence(0);
      cands_tok[id] = pretok(cands[id]);
      const int nr = std::uniform_int_distribution<int>(1, 3)(rng);
      for (int k = 0; k < nr; ++k) {
        const auto s = sentence(1);
        refs[id].push_back(s);
        refs_tok[id].push_back(pretok(s));
      }
    }
    worst = std::max(worst, std::abs(cider(cands, refs) - oracle::brute_cider(cands_tok, refs_tok)));
  }
  c.require(worst < 1e-9, "CIDEr deviates by " + std::to_string(worst));

  std::uniform_int_distribution<int> pos(0, 50), size(0, 30);
  int iou_mismatch = 0;
  for (int i = 0; i < 1000; ++i) {
    oracle::IntBox a{pos(rng), pos(rng), size(rng), size(rng)};
    oracle::IntBox b{pos(rng), pos(rng), size(rng), size(rng)};
    const double got = iou({double(a.x), double(a.y), double(a.w), double(a.h)},
                           {double(b.x), double(b.y), double(b.w), double(b.h)});
    iou_mismatch += got != oracle::grid_iou(a, b);
  }
  c.require(iou_mismatch == 0, std::to_string(iou_mismatch) + " IoU mismatches");

  std::vector<std::pair<std::vector<bool>, std::size_t>> fixtures = {
      {{true, false, true}, 2}, {{true, true}, 2}, {{}, 3}, {{false, false, true}, 1}, {{true, false, false, true, true}, 6}};
  for (int i = 0; i < 200; ++i) {
    std::vector<bool> v;
    std::size_t tp = 0;
    for (int k = 0, n = static_cast<int>(rng() % 12); k < n; ++k) {
      v.push_back(rng() % 2);
      tp += v.back();
    }
    fixtures.emplace_back(v, tp + rng() % 3 + 1);
  }
  int ap_mismatch = 0;
  for (auto& [flags, gt] : fixtures) {
    auto buf = std::make_unique<bool[]>(flags.size());
    for (std::size_t k = 0; k < flags.size(); ++k) buf[k] = flags[k];
    const auto got = average_precision(std::span<const bool>(buf.get(), flags.size()), gt);
    ap_mismatch += std::abs(*got - *oracle::exhaustive_ap(flags, gt)) > 1e-12;
  }
  bool worked[] = {true, false, true};
  const auto ex = *average_precision(worked, 2);
  c.require(std::abs(ex - 0.833333) < 1e-6, "worked AP example gives " + std::to_string(ex));
  c.require(ap_mismatch == 0, std::to_string(ap_mismatch) + " AP mismatches");
}

void formula_spot_checks(Check& c) {
  const double same = meteor_lite("a person stirs", "a person stirs");
  const double perm = meteor_lite("stirs person a", "a person stirs");
  c.require(std::abs(same - 0.981481) <= 1e-6, "identical gives " + std::to_string(same));
  c.require(std::abs(perm - 0.5) <= 1e-6, "permuted gives " + std::to_string(perm));
}

void pipeline_end_to_end(Check& c) {
  MockChatServer server(FixtureStore::parse(data("fixtures/fig7/llm.jsonl")));
  MockChatServer bev_server(FixtureStore::parse(data("fixtures/beverage/llm.jsonl")));
  const int port = server.start();
  const int bev_port = bev_server.start();

  std::string first;
  for (int round = 0; round < 2; ++round) {
    const auto cfg = http_config(port, 4);
    const auto fig7 = build_over_http(data("fixtures/fig7/frames.jsonl"), cfg);
    const auto bev_cfg = http_config(bev_port, 4);
    const auto bev = build_over_http(data("fixtures/beverage/frames.jsonl"), bev_cfg);
    const std::string bytes = dataset_jsonl(fig7) + rejections_jsonl(fig7) + dataset_jsonl(bev) + rejections_jsonl(bev);
    if (round == 0) {
      first = bytes;
      c.require(fig7.size() == 1 && fig7[0].record.has_value(), "fig7 video not accepted");
      if (!fig7.empty() && fig7[0].record) {
        const auto& rec = *fig7[0].record;
        c.require(rec.caption.plain == "A person is stirring food in a bowl using a spoon", "caption " + rec.caption.plain);
        std::vector<std::string> phrases;
        for (auto& p : rec.caption.phrases) phrases.push_back(p.text);
        c.require(phrases == std::vector<std::string>{"A person", "food in a bowl"}, "unexpected phrases");
      }
      c.require(dataset_jsonl(fig7) == data("fixtures/fig7/expected_dataset.jsonl"), "fig7 differs from golden");

      const auto frames = group_by_video(parse_frame_grounding(data("fixtures/beverage/frames.jsonl")));
      std::vector<Reason> warnings;
      const auto objs = frame_phrases(frames.at(0), warnings);
      HttpChatClient client(bev_cfg.chat);
      const std::vector<std::string> classes = {"a woman", "a beverage"};
      const auto tracked = track_by_language(objs, classes, client, bev_cfg.retry);
      std::set<std::string> targets;
      for (auto& a : tracked.assignments) {
        if (a.frame_phrase == "a green beverage" || a.frame_phrase == "a glass" || a.frame_phrase == "a glass of green liquid") {
          targets.insert(a.assigned.value_or("<None>"));
        }
      }
      c.require(targets == std::set<std::string>{"a beverage"}, "beverage phrases not unified");
      c.require(bev.size() == 1 && bev[0].record && dataset_jsonl(bev) == data("fixtures/beverage/expected_dataset.jsonl"),
                "beverage record differs from golden");
    } else {
      c.require(bytes == first, "second in-process run differs");
    }
  }

  // the same through the command-line tool, outputs and manifests included
  const auto dir = scratch_dir("e2e");
  const std::string ep = "--endpoint http://127.0.0.1:" + std::to_string(port) + "/v1/chat/completions --backoff-ms 0";
  std::string outputs[2];
  for (int round = 0; round < 2; ++round) {
    const auto out = dir / ("run" + std::to_string(round));
    const int rc = run_cli("build -i \"" + std::string(GROC_TEST_DATA) + "/fixtures/fig7/frames.jsonl\" -o \"" +
                           out.string() + "\" " + ep);
    c.require(rc == 0, "groc build exit code " + std::to_string(rc));
    outputs[round] = read_file((out / "dataset.jsonl").string()) + read_file((out / "rejections.jsonl").string()) +
                     read_file((out / "manifest.json").string());
  }
  c.require(outputs[0] == outputs[1], "groc build outputs differ across runs");
  c.require(outputs[0].starts_with(data("fixtures/fig7/expected_dataset.jsonl")), "groc build dataset differs from golden");
  server.stop();
  bev_server.stop();
  fs::remove_all(dir);
}

void rejection_behaviour(Check& c) {
  const std::vector<int> bad = {13, 42, 77};
  const auto batch = synth::mock_batch(100, bad);
  MockChatServer server(FixtureStore::parse(batch.fixtures_jsonl));
  const int port = server.start();
  const auto out = build_over_http(batch.frames_jsonl, http_config(port, 8));
  server.stop();
  std::size_t accepted = 0;
  std::map<std::string, std::string> codes;
  for (auto& o : out) {
    if (o.record) {
      ++accepted;
    } else {
      codes[o.video_id] = o.report.reasons.empty() ? "<none>" : o.report.reasons.front().code;
    }
  }
  c.require(out.size() == 100, "outcome count " + std::to_string(out.size()));
  c.require(accepted == 97, std::to_string(accepted) + " accepted");
  const std::map<std::string, std::string> want = {
      {"vid0013", "no-dictionary"}, {"vid0042", "no-phrases"}, {"vid0077", "malformed-caption"}};
  c.require(codes == want, "unexpected rejection codes");
}

void round_trip(Check& c) {
  std::mt19937 rng(1000);
  int bad = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto rec = synth::random_annotation(rng, "rt" + std::to_string(i), i % 2 == 0, i % 3 == 0);
    const auto text = serialize_video_annotation(rec);
    const auto back = parse_video_annotation(text);
    bad += !(back == rec) || serialize_video_annotation(back) != text;
  }
  c.require(bad == 0, std::to_string(bad) + " records did not round-trip");

  const auto frames = data("golden/frame_grounding.jsonl");
  std::string again;
  for (const auto& f : parse_frame_grounding(frames)) again += serialize_frame_grounding(f) + "\n";
  c.require(again == frames, "frame grounding golden unstable");

  const auto annotations = data("golden/video_annotation.jsonl");
  c.require(serialize_annotation_lines(parse_annotation_lines(annotations)) == annotations, "annotation golden unstable");

  const auto predictions = data("golden/predictions.jsonl");
  c.require(serialize_annotation_lines(load_predictions(predictions, 0.0)) == predictions, "prediction golden unstable");
}

void stats(Check& c) {
  VideoAnnotation v;
  v.video_id = "hand";
  v.num_frames = 10;
  v.fps = 5;
  v.width = 64;
  v.height = 48;
  v.caption = parse_tagged_caption("<p>A person</p> stirs the soup");
  std::map<int, BoundingBox> boxes;
  for (int t = 0; t < 10; ++t) boxes[t] = {2, 3, 20, 10};
  v.tracks.push_back(ObjectTrack::from_boxes(0, boxes, 10));
  const std::vector<VideoAnnotation> one{v};
  const auto s = dataset_stats(one);
  c.require(s.avg_num_frames == 10.0 && s.avg_duration_seconds == 2.0 && s.total_instances == 10 &&
                s.avg_box_width == 20.0 && s.avg_box_height == 10.0 && s.avg_tube_length == 10.0 &&
                s.avg_caption_words == 5.0,
            "hand-computed values differ: " + to_json(s).dump());

  const char* env = std::getenv("GROC_DATA");
  const fs::path real = env ? fs::path(env) : fs::path(GROC_TEST_DATA) / ".." / "data" / "groc" / "annotations.jsonl";
  if (!fs::exists(real)) {
    c.notes.push_back("real GROC files not found, table check skipped");
    return;
  }
  const auto records = parse_annotation_lines(read_file(real.string()));
  const auto r = dataset_stats(records);
  c.require(std::abs(r.avg_caption_words - 13.7) < 0.05, "caption length " + std::to_string(r.avg_caption_words));
  c.require(r.total_instances == 118775, "total instances " + std::to_string(r.total_instances));
  c.require(std::abs(r.avg_tube_length - 29.8) < 0.05, "tube length " + std::to_string(r.avg_tube_length));
  c.notes.push_back("checked against " + real.string());
}

void objectness(Check& c) {
  const auto text = data("fixtures/scored_predictions.jsonl");
  const auto raw = parse_annotation_lines(text);
  const auto kept = load_predictions(text, 0.5);
  std::size_t expect_removed = 0, removed = 0, wrong = 0;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    std::map<std::size_t, const ObjectTrack*> by_phrase;
    for (auto& t : kept[i].tracks) by_phrase[t.phrase_index] = &t;
    for (auto& t : raw[i].tracks) {
      const ObjectTrack* k = by_phrase.count(t.phrase_index) ? by_phrase[t.phrase_index] : nullptr;
      for (auto& [f, score] : *t.confidence) {
        const bool should_keep = score >= 0.5;
        const bool kept_frame = k && k->boxes.count(f) && k->presence[static_cast<std::size_t>(f)];
        expect_removed += !should_keep;
        removed += !kept_frame;
        wrong += should_keep != kept_frame;
      }
    }
  }
  c.require(wrong == 0, std::to_string(wrong) + " frames handled incorrectly");
  c.require(expect_removed > 0 && removed == expect_removed, "fixture removes " + std::to_string(removed));
  c.notes.push_back(std::to_string(removed) + " of the scored frames fall below 0.5");
}

void throughput(Check& c) {
  const auto batch = synth::mock_batch(1000, {});
  const auto dir = scratch_dir("throughput");
  write_file((dir / "frames.jsonl").string(), batch.frames_jsonl);
  MockChatServer server(FixtureStore::parse(batch.fixtures_jsonl));
  const int port = server.start();
  const auto t0 = std::chrono::steady_clock::now();
  const int rc = run_cli("build -i \"" + (dir / "frames.jsonl").string() + "\" -o \"" + (dir / "out").string() +
                         "\" --max-in-flight 16 --backoff-ms 0 --endpoint http://127.0.0.1:" + std::to_string(port) +
                         "/v1/chat/completions");
  const double dt = seconds_since(t0);
  server.stop();
  c.require(rc == 0, "groc build exit code " + std::to_string(rc));
  if (rc == 0) {
    const auto manifest = nlohmann::json::parse(read_file((dir / "out" / "manifest.json").string()));
    const auto& counts = manifest.at("counts");
    c.require(counts.at("videos") == 1000, "manifest videos " + counts.at("videos").dump());
    c.require(counts.at("accepted").get<int>() + counts.at("rejected").get<int>() == 1000, "counts do not add up");
    c.require(counts.at("accepted") == 1000, "accepted " + counts.at("accepted").dump());
  }
  c.require(dt < 60.0, "took " + std::to_string(dt) + " s");
  c.notes.push_back("1000 videos in " + std::to_string(dt) + " s, " + std::to_string(server.requests()) + " requests");
  fs::remove_all(dir);
}

}  // namespace

int main(int argc, char** argv) {
  g_groc_binary = argc > 1 ? argv[1] : GROC_CLI_BINARY;
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria = {
      {"metric-identity", metric_identity},
      {"oracle-equivalence", oracle_equivalence},
      {"formula-spot-checks", formula_spot_checks},
      {"pipeline-end-to-end", pipeline_end_to_end},
      {"rejection-behaviour", rejection_behaviour},
      {"round-trip", round_trip},
      {"stats", stats},
      {"objectness-threshold", objectness},
      {"throughput", throughput},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Check c;
    try {
      fn(c);
    } catch (const std::exception& e) {
      c.failures.push_back(std::string("exception: ") + e.what());
    }
    std::ostringstream line;
    line << (c.failures.empty() ? "PASS " : "FAIL ") << name;
    for (const auto& f : c.failures) line << " | " << f;
    for (const auto& n : c.notes) line << " | " << n;
    std::cout << line.str() << std::endl;
    failed += !c.failures.empty();
  }
  return failed == 0 ? 0 : 1;
}
