#include <doctest.h>

#include <random>

#include "groc/core.hpp"
#include "../support/oracles.hpp"

using namespace groc;

TEST_CASE("iou basics") {
  BoundingBox a{10, 10, 20, 20};
  CHECK(iou(a, a) == 1.0);
  CHECK(iou(a, {100, 100, 5, 5}) == 0.0);
  CHECK(iou(a, {20, 20, 20, 20}) == doctest::Approx(100.0 / 700.0).epsilon(1e-12));
  CHECK(iou({0, 0, 0, 5}, {0, 0, 0, 5}) == 0.0);
  CHECK(iou({0, 0, 0, 0}, {3, 3, 0, 0}) == 0.0);
  CHECK(iou({0, 0, 0, 4}, {0, 0, 4, 4}) == 0.0);
  CHECK_THROWS_AS(iou(a, {0.1, 0.1, 0.2, 0.2, true}), Error);
}

TEST_CASE("iou matches grid enumeration on integer boxes") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> pos(0, 40), size(0, 25);
  for (int i = 0; i < 1000; ++i) {
    oracle::IntBox a{pos(rng), pos(rng), size(rng), size(rng)};
    oracle::IntBox b{pos(rng), pos(rng), size(rng), size(rng)};
    BoundingBox ba{double(a.x), double(a.y), double(a.w), double(a.h)};
    BoundingBox bb{double(b.x), double(b.y), double(b.w), double(b.h)};
    CHECK(iou(ba, bb) == oracle::grid_iou(a, b));
    CHECK(iou(ba, bb) == iou(bb, ba));
    if (ba.area() > 0) CHECK(iou(ba, ba) == 1.0);
  }
}

TEST_CASE("normalize and denormalize") {
  auto n = normalize_box({45.5, 25.6, 91, 51.2}, 455, 256);
  CHECK(n.normalized);
  CHECK(n.x == doctest::Approx(0.1));
  CHECK(n.y == doctest::Approx(0.1));
  CHECK(n.w == doctest::Approx(0.2));
  CHECK(n.h == doctest::Approx(0.2));
  CHECK(normalize_box({0, 0, 640, 360}, 640, 360) == BoundingBox{0, 0, 1, 1, true});
  CHECK_THROWS_AS(normalize_box(n, 455, 256), Error);
  CHECK_THROWS_AS(denormalize_box({1, 1, 1, 1}, 455, 256), Error);

  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(0, 300);
  for (int i = 0; i < 200; ++i) {
    BoundingBox b{u(rng), u(rng), u(rng), u(rng)};
    auto r = denormalize_box(normalize_box(b, 640, 480), 640, 480);
    CHECK(r.x == doctest::Approx(b.x).epsilon(1e-9));
    CHECK(r.w == doctest::Approx(b.w).epsilon(1e-9));
    CHECK_FALSE(r.normalized);
  }
}

TEST_CASE("clamp and box violations") {
  CHECK(clamp_box({-10, -5, 30, 30}, 100, 100) == BoundingBox{0, 0, 20, 25});
  CHECK(clamp_box({90, 90, 30, 30}, 100, 100) == BoundingBox{90, 90, 10, 10});
  CHECK(clamp_box({200, 10, 5, 5}, 100, 100).w == 0.0);
  CHECK(box_violation({0, 0, 10, 10}, 100, 100).empty());
  CHECK_FALSE(box_violation({95, 0, 10, 10}, 100, 100).empty());
  CHECK_FALSE(box_violation({0, 0, -1, 10}).empty());
  CHECK(box_violation({0.5, 0.5, 0.5 + 5e-7, 0.5, true}).empty());
  CHECK_FALSE(box_violation({0.5, 0.5, 0.6, 0.5, true}).empty());
}

TEST_CASE("tagged caption parsing") {
  auto c = parse_tagged_caption("<p>A person</p> is stirring <p>food in a bowl</p> using a spoon");
  CHECK(c.plain == "A person is stirring food in a bowl using a spoon");
  REQUIRE(c.phrases.size() == 2);
  CHECK(c.phrases[0].text == "A person");
  CHECK(c.phrases[1].text == "food in a bowl");
  for (auto& p : c.phrases) CHECK(c.plain.substr(p.char_start, p.char_end - p.char_start) == p.text);
  CHECK(render_tagged_caption(c) == "<p>A person</p> is stirring <p>food in a bowl</p> using a spoon");

  auto none = parse_tagged_caption("A woman dances");
  CHECK(none.plain == "A woman dances");
  CHECK(none.phrases.empty());
  CHECK(render_tagged_caption(none) == "A woman dances");

  CHECK_THROWS_AS(parse_tagged_caption("<p>a <p>cup</p></p>"), MalformedCaptionError);
  CHECK_THROWS_AS(parse_tagged_caption("<p>a cup"), MalformedCaptionError);
  CHECK_THROWS_AS(parse_tagged_caption("a cup</p>"), MalformedCaptionError);
  CHECK_THROWS_AS(parse_tagged_caption("a <p></p> cup"), MalformedCaptionError);
}

TEST_CASE("caption round trip on random captions") {
  std::mt19937 rng(11);
  const std::vector<std::string> words = {"a", "person", "is", "cutting", "the", "onion", "with", "knife", "é", "'s", "\"q\""};
  for (int i = 0; i < 500; ++i) {
    std::string tagged;
    const int n = std::uniform_int_distribution<int>(1, 12)(rng);
    bool open = false;
    for (int k = 0; k < n; ++k) {
      const auto& w = words[std::uniform_int_distribution<std::size_t>(0, words.size() - 1)(rng)];
      if (!tagged.empty()) tagged += ' ';
      if (!open && rng() % 3 == 0) {
        tagged += "<p>" + w;
        open = true;
        if (rng() % 2) {
          tagged += "</p>";
          open = false;
        }
      } else {
        tagged += w;
        if (open && rng() % 2) {
          tagged += "</p>";
          open = false;
        }
      }
    }
    if (open) tagged += "</p>";
    auto c = parse_tagged_caption(tagged);
    CHECK(caption_violation(c).empty());
    CHECK(render_tagged_caption(c) == tagged);
    CHECK(parse_tagged_caption(render_tagged_caption(c)) == c);
  }
}

TEST_CASE("caption violations") {
  TaggedCaption bad{"a cup", {{"cup", 0, 3}}};
  CHECK_FALSE(caption_violation(bad).empty());
  CHECK_THROWS_AS(render_tagged_caption(bad), Error);
  TaggedCaption overlap{"a cup", {{"a cup", 0, 5}, {"cup", 2, 5}}};
  CHECK_FALSE(caption_violation(overlap).empty());
}

TEST_CASE("object track presence") {
  auto t = ObjectTrack::from_boxes(0, {{0, {0, 0, 1, 1}}, {2, {0, 0, 1, 1}}}, 4);
  CHECK(t.presence == std::vector<bool>{true, false, true, false});
  CHECK(t.present_count() == 2);
}
