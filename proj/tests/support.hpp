#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <boost/geometry.hpp>
#include <boost/geometry/geometries/point_xy.hpp>
#include <boost/geometry/geometries/polygon.hpp>
#include <boost/geometry/geometries/segment.hpp>

#include "roomalign/rng.hpp"
#include "roomalign/scene.hpp"

namespace testutil {

using namespace roomalign;

namespace bg = boost::geometry;
using BPoint = bg::model::d2::point_xy<double>;
using BPolygon = bg::model::polygon<BPoint>;  // clockwise, closed
using BSegment = bg::model::segment<BPoint>;

inline BPolygon to_boost(const Polygon& poly) {
  BPolygon out;
  for (const Vec2& p : poly) bg::append(out.outer(), BPoint(p.x, p.y));
  bg::correct(out);
  return out;
}

inline BPolygon rect_polygon(double x0, double y0, double x1, double y1) {
  return to_boost({{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}});
}

inline int category(const std::string& name) {
  return Catalog::builtin().require_category(name);
}

inline int material(const std::string& name) {
  return Catalog::builtin().require_material(name);
}

inline ObjectInstance box(int cat, double x, double y, double w, double d, double h,
                          int mat = 0) {
  ObjectInstance o;
  o.category_id = cat;
  o.x = x;
  o.y = y;
  o.dims = {w, d, h};
  o.material_id = mat;
  return o;
}

inline ObjectInstance box(const std::string& cat, double x, double y, double w, double d,
                          double h, const std::string& mat = "oak") {
  return box(category(cat), x, y, w, d, h, material(mat));
}

inline RoomSpec room_with_door(double width, double depth, double door_x = 0.2) {
  return RoomSpec::rectangle(width, depth, 2.7,
                             {OpeningSegment{{door_x, 0.0}, {door_x + 0.9, 0.0}, OpeningKind::door}});
}

/// Boxes with random dims and centers in [-0.5, w + 0.5] x [-0.5, d + 0.5],
/// so some straddle the walls and some overlap.
inline Layout random_scene(Rng& rng, int n, double width = 4.0, double depth = 3.5) {
  Layout layout;
  layout.room = room_with_door(width, depth, std::min(0.2, (width - 0.9) / 2));
  const int cats = static_cast<int>(Catalog::builtin().categories().size());
  for (int i = 0; i < n; ++i) {
    ObjectInstance o;
    o.category_id = static_cast<int>(rng.below(cats));
    o.material_id = static_cast<int>(rng.below(8));
    o.dims = {rng.uniform(0.2, 2.0), rng.uniform(0.2, 2.0), rng.uniform(0.1, 2.2)};
    o.x = rng.uniform(-0.5, width + 0.5);
    o.y = rng.uniform(-0.5, depth + 0.5);
    layout.objects.push_back(o);
  }
  return layout;
}

/// Like random_scene but clustered in the middle, so overlaps are common.
inline Layout crowded_scene(Rng& rng, int n, double width = 4.0, double depth = 3.5) {
  Layout layout = random_scene(rng, n, width, depth);
  for (ObjectInstance& o : layout.objects) {
    o.x = rng.uniform(0.3 * width, 0.7 * width);
    o.y = rng.uniform(0.3 * depth, 0.7 * depth);
  }
  return layout;
}

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

}  // namespace testutil
