#include <doctest.h>

#include <random>

#include "groc/stats.hpp"
#include "groc/tubes.hpp"
#include "../support/synth.hpp"

using namespace groc;

namespace {

VideoAnnotation hand_fixture() {
  VideoAnnotation v;
  v.video_id = "hand";
  v.num_frames = 10;
  v.fps = 5;
  v.width = 100;
  v.height = 80;
  v.caption = parse_tagged_caption("<p>A person</p> stirs the soup");
  std::map<int, BoundingBox> boxes;
  for (int t = 0; t < 10; ++t) boxes[t] = {1, 2, 20, 10};
  v.tracks.push_back(ObjectTrack::from_boxes(0, boxes, 10));
  return v;
}

}  // namespace

TEST_CASE("hand computed single video") {
  std::vector<VideoAnnotation> one{hand_fixture()};
  auto s = dataset_stats(one);
  CHECK(s.num_videos == 1);
  CHECK(s.avg_num_frames == 10.0);
  CHECK(s.avg_duration_seconds == 2.0);
  CHECK(s.total_instances == 10);
  CHECK(s.avg_instances_per_video == 10.0);
  CHECK(s.avg_box_width == 20.0);
  CHECK(s.avg_box_height == 10.0);
  CHECK(s.num_tubes == 1);
  CHECK(s.avg_tube_length == 10.0);
  CHECK(s.avg_caption_words == 5.0);

  auto j = to_json(s);
  CHECK(j["Total num instances"] == 10);
  CHECK(j["Avg box width x height"][0] == 20.0);
  CHECK(j["box_size_weighting"] == "per instance");
}

TEST_CASE("empty video and empty input") {
  CHECK_THROWS_AS(dataset_stats(std::vector<VideoAnnotation>{}), Error);
  auto a = hand_fixture();
  VideoAnnotation empty;
  empty.video_id = "e";
  empty.num_frames = 4;
  empty.fps = 2;
  empty.caption = parse_tagged_caption("nothing to see");
  std::vector<VideoAnnotation> both{a, empty};
  auto s = dataset_stats(both);
  CHECK(s.total_instances == 10);
  CHECK(s.avg_instances_per_video == 5.0);
  CHECK(s.num_tubes == 1);
  CHECK(s.avg_tube_length == 10.0);
  CHECK(s.avg_box_width == 20.0);
  CHECK(s.avg_num_frames == 7.0);
  CHECK(s.avg_duration_seconds == 2.0);
  CHECK(s.avg_caption_words == 4.0);
}

TEST_CASE("stats invariants on random corpora") {
  std::mt19937 rng(14);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<VideoAnnotation> vs;
    for (int i = 0; i < 6; ++i) vs.push_back(synth::random_annotation(rng, "r" + std::to_string(i), false));
    auto s = dataset_stats(vs);
    std::size_t instances = 0, tubes = 0, tube_frames = 0;
    for (auto& v : vs) {
      for (auto& t : v.tracks) {
        instances += t.present_count();
        for (auto [a, b] : derive_presence(t)) {
          ++tubes;
          tube_frames += static_cast<std::size_t>(b - a + 1);
        }
      }
    }
    CHECK(s.total_instances == instances);
    CHECK(s.num_tubes == tubes);
    if (tubes) CHECK(s.avg_tube_length == doctest::Approx(double(tube_frames) / double(tubes)));
  }
}
