#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "acm/acm.hpp"
#include "oracles.hpp"

using acm::kPi;
using acm::RotatedBox;
using acm::Vec2;
using Catch::Approx;

namespace {
std::vector<Vec2> quad_of(const RotatedBox& b) {
  const acm::Quad q = acm::corners(b);
  return {q.pts[0], q.pts[1], q.pts[2], q.pts[3]};
}
}  // namespace

TEST_CASE("polygon area is the signed shoelace sum", "[polygon]") {
  const std::vector<Vec2> ccw{{0, 0}, {2, 0}, {2, 1}, {0, 1}};
  CHECK(acm::polygon_area(ccw) == Approx(2.0));
  const std::vector<Vec2> cw{{0, 0}, {0, 1}, {2, 1}, {2, 0}};
  CHECK(acm::polygon_area(cw) == Approx(-2.0));
  const std::vector<Vec2> tri{{0, 0}, {1, 0}, {0, 1}};
  CHECK(acm::polygon_area(tri) == Approx(0.5));
  CHECK(acm::polygon_area({}) == 0.0);
  CHECK(acm::polygon_area({{1, 1}, {2, 2}}) == 0.0);
}

TEST_CASE("clipping a polygon against itself returns it unchanged", "[polygon]") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 100; ++i) {
    const RotatedBox b = testutil::random_box(rng);
    const std::vector<Vec2> q = quad_of(b);
    const std::vector<Vec2> r = acm::clip_convex(q, q);
    REQUIRE(r.size() == q.size());
    for (std::size_t k = 0; k < q.size(); ++k) {
      CHECK(r[k].x == q[k].x);
      CHECK(r[k].y == q[k].y);
    }
  }
}

TEST_CASE("clipping disjoint quads yields nothing", "[polygon]") {
  const std::vector<Vec2> a = quad_of({0, 0, 1, 1, 0.3});
  const std::vector<Vec2> b = quad_of({10, 10, 1, 1, 1.0});
  CHECK(acm::clip_convex(a, b).empty());
  CHECK(acm::clip_convex(b, a).empty());
}

TEST_CASE("unit square clipped by its 45 degree rotation is a regular octagon", "[polygon]") {
  const std::vector<Vec2> a = quad_of({0, 0, 1, 1, 0});
  const std::vector<Vec2> b = quad_of({0, 0, 1, 1, kPi / 4.0});
  const std::vector<Vec2> inter = acm::clip_convex(a, b);
  CHECK(inter.size() == 8);
  CHECK(std::fabs(acm::polygon_area(inter)) == Approx(0.8284271247461903).margin(1e-12));
}

TEST_CASE("skew iou pins", "[iou]") {
  SECTION("identical boxes give exactly one") {
    std::mt19937_64 rng(32);
    for (int i = 0; i < 100; ++i) {
      const RotatedBox b = testutil::random_box(rng);
      CHECK(acm::skew_iou(b, b) == 1.0);
    }
  }
  SECTION("half-overlapping unit squares") {
    const double v = acm::skew_iou({0, 0, 1, 1, 0}, {0.5, 0, 1, 1, 0});
    CHECK(v == Approx(1.0 / 3.0).margin(1e-12));
  }
  SECTION("concentric squares at 45 degrees") {
    const double v = acm::skew_iou({0, 0, 1, 1, 0}, {0, 0, 1, 1, kPi / 4.0});
    CHECK(v == Approx(0.7071067811865475).margin(1e-9));
  }
  SECTION("disjoint and edge-touching") {
    CHECK(acm::skew_iou({0, 0, 1, 1, 0}, {5, 5, 1, 1, 0.7}) == 0.0);
    CHECK(acm::skew_iou({0, 0, 1, 1, 0}, {1.0, 0, 1, 1, 0}) <= 1e-12);
  }
  SECTION("containment gives the area ratio") {
    const double v = acm::skew_iou({0, 0, 4, 2, 0.3}, {0, 0, 2, 1, 0.3});
    CHECK(v == Approx(0.25).margin(1e-12));
  }
}

TEST_CASE("skew iou is bitwise symmetric", "[iou]") {
  std::mt19937_64 rng(33);
  for (int i = 0; i < 200; ++i) {
    RotatedBox a = testutil::random_box(rng);
    RotatedBox b = testutil::random_box(rng);
    b.cx = a.cx + (b.cx - a.cx) * 0.4;  // push pairs toward overlap
    b.cy = a.cy + (b.cy - a.cy) * 0.4;
    CHECK(acm::skew_iou(a, b) == acm::skew_iou(b, a));
  }
}

TEST_CASE("skew iou agrees with a rasterized estimate", "[iou]") {
  std::mt19937_64 rng(34);
  int checked = 0;
  for (int i = 0; checked < 25 && i < 200; ++i) {
    RotatedBox a = testutil::random_box(rng);
    RotatedBox b = testutil::random_box(rng);
    b.cx = a.cx + (b.cx - a.cx) * 0.3;
    b.cy = a.cy + (b.cy - a.cy) * 0.3;
    const double exact = acm::skew_iou(a, b);
    if (exact < 1e-3) continue;
    const double approx = testutil::raster_iou(a, b, 800);
    CHECK(exact == Approx(approx).margin(1e-2));
    ++checked;
  }
  REQUIRE(checked == 25);
}

TEST_CASE("point containment", "[iou]") {
  const RotatedBox b{1, 1, 2, 1, kPi / 4.0};
  CHECK(acm::contains(b, {1, 1}));
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(acm::contains(b, {1 + 0.9 * s, 1 + 0.9 * s}));    // near the far corner, along u
  CHECK(!acm::contains(b, {1 + 1.1 * s, 1 + 1.1 * s}));   // past the half-width
  CHECK(!acm::contains(b, {1 - 0.6 * s, 1 + 0.6 * s}));   // past the half-height
  CHECK(acm::contains(b, {1 - 0.45 * s, 1 + 0.45 * s}));
}
