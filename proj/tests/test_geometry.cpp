#include <algorithm>
#include <numbers>

#include "doctest.h"
#include "roomalign/geometry.hpp"
#include "support.hpp"

using namespace roomalign;
using namespace testutil;

namespace {

// Star-shaped around the origin with angular gaps below pi, hence simple
// and counter-clockwise. Needs n >= 4.
Polygon random_star(Rng& rng, int n) {
  Polygon poly;
  for (int i = 0; i < n; ++i) {
    const double a = 2.0 * std::numbers::pi * (i + 0.8 * rng.uniform()) / n;
    const double r = rng.uniform(0.5, 3.0);
    poly.push_back({r * std::cos(a), r * std::sin(a)});
  }
  return poly;
}

}  // namespace

TEST_CASE("signed area and centroid agree with boost on random star polygons") {
  Rng rng{11};
  for (int trial = 0; trial < 200; ++trial) {
    const Polygon poly = random_star(rng, 4 + static_cast<int>(rng.below(10)));
    const BPolygon bp = to_boost(poly);
    CHECK(signed_area(poly) == doctest::Approx(bg::area(bp)).epsilon(1e-10));
    BPoint c;
    bg::centroid(bp, c);
    const Vec2 mine = centroid(poly);
    CHECK(mine.x == doctest::Approx(c.x()).epsilon(1e-9));
    CHECK(mine.y == doctest::Approx(c.y()).epsilon(1e-9));
  }
}

TEST_CASE("clockwise order flips the sign of the area") {
  Polygon sq{{0, 0}, {2, 0}, {2, 2}, {0, 2}};
  CHECK(signed_area(sq) == 4.0);
  std::reverse(sq.begin(), sq.end());
  CHECK(signed_area(sq) == -4.0);
}

TEST_CASE("point containment agrees with boost covered_by") {
  Rng rng{12};
  for (int trial = 0; trial < 50; ++trial) {
    const Polygon poly = random_star(rng, 5 + static_cast<int>(rng.below(8)));
    const BPolygon bp = to_boost(poly);
    for (int k = 0; k < 200; ++k) {
      const Vec2 p{rng.uniform(-3.5, 3.5), rng.uniform(-3.5, 3.5)};
      CHECK(contains_point(poly, p) == bg::covered_by(BPoint(p.x, p.y), bp));
    }
  }
}

TEST_CASE("boundary points count as inside") {
  const Polygon sq{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  CHECK(contains_point(sq, {0.5, 0.0}));
  CHECK(contains_point(sq, {1.0, 1.0}));
  CHECK_FALSE(contains_point(sq, {1.0 + 1e-6, 0.5}));
}

TEST_CASE("rectangle-polygon intersection area agrees with boost") {
  Rng rng{13};
  for (int trial = 0; trial < 300; ++trial) {
    const Polygon poly = random_star(rng, 4 + static_cast<int>(rng.below(12)));
    const double x0 = rng.uniform(-3, 2);
    const double y0 = rng.uniform(-3, 2);
    const Rect r{{x0, y0}, {x0 + rng.uniform(0.1, 2.5), y0 + rng.uniform(0.1, 2.5)}};
    std::vector<BPolygon> out;
    bg::intersection(rect_polygon(r.min.x, r.min.y, r.max.x, r.max.y), to_boost(poly), out);
    double want = 0.0;
    for (const BPolygon& p : out) want += bg::area(p);
    // boost 1.74 rescales coordinates to integers when intersecting, which
    // limits its own precision to about 1e-7.
    CHECK(intersection_area(r, poly) == doctest::Approx(want).epsilon(1e-6).scale(1.0));
  }
}

TEST_CASE("rect_inside agrees with boost covered_by on L-shaped rooms") {
  const Polygon room{{0, 0}, {4, 0}, {4, 2}, {2, 2}, {2, 4}, {0, 4}};
  const BPolygon bp = to_boost(room);
  Rng rng{14};
  int inside = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const double x0 = rng.uniform(-0.5, 4.0);
    const double y0 = rng.uniform(-0.5, 4.0);
    const Rect r{{x0, y0}, {x0 + rng.uniform(0.1, 1.5), y0 + rng.uniform(0.1, 1.5)}};
    const bool want = bg::covered_by(rect_polygon(r.min.x, r.min.y, r.max.x, r.max.y), bp);
    CHECK(rect_inside(r, room) == want);
    inside += want;
  }
  // Both outcomes must actually occur for the comparison to mean anything.
  CHECK(inside > 100);
  CHECK(inside < 1900);
}

TEST_CASE("rect_gap agrees with boost distance") {
  Rng rng{15};
  for (int trial = 0; trial < 1000; ++trial) {
    auto make = [&] {
      const double x = rng.uniform(-2, 2);
      const double y = rng.uniform(-2, 2);
      return Rect{{x, y}, {x + rng.uniform(0.1, 1.5), y + rng.uniform(0.1, 1.5)}};
    };
    const Rect a = make();
    const Rect b = make();
    const double want = bg::distance(rect_polygon(a.min.x, a.min.y, a.max.x, a.max.y),
                                     rect_polygon(b.min.x, b.min.y, b.max.x, b.max.y));
    CHECK(rect_gap(a, b) == doctest::Approx(want).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("simplicity test") {
  CHECK(is_simple(Polygon{{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
  CHECK_FALSE(is_simple(Polygon{{0, 0}, {1, 1}, {1, 0}, {0, 1}}));
  CHECK_FALSE(is_simple(Polygon{{0, 0}, {2, 0}, {1, 0}}));
  Rng rng{16};
  for (int trial = 0; trial < 100; ++trial) {
    CHECK(is_simple(random_star(rng, 4 + static_cast<int>(rng.below(10)))));
  }
}

TEST_CASE("interval overlap and segment distance") {
  CHECK(interval_overlap(0, 2, 1, 3) == 1.0);
  CHECK(interval_overlap(0, 1, 2, 3) == 0.0);
  CHECK(interval_overlap(0, 1, 1, 2) == 0.0);
  CHECK(distance_to_segment({0, 1}, {-1, 0}, {1, 0}) == 1.0);
  CHECK(distance_to_segment({3, 4}, {0, 0}, {0, 0}) == 5.0);
  CHECK(distance_to_segment({2, 1}, {-1, 0}, {1, 0}) == doctest::Approx(std::sqrt(2.0)));
}
