#pragma once
// Brute-force reference computations shared by the unit tests and the
// acceptance runner. None of them call into the library's geometry code.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "support.hpp"

namespace testutil {

struct Box3 {
  double x0, y0, z0, x1, y1, z1;
  bool contains(double x, double y, double z) const {
    return x >= x0 && x < x1 && y >= y0 && y < y1 && z >= z0 && z < z1;
  }
  double volume() const { return (x1 - x0) * (y1 - y0) * (z1 - z0); }
};

inline Box3 to_box3(const ObjectInstance& o) {
  return {o.x - o.dims.width / 2, o.y - o.dims.depth / 2, o.z,
          o.x + o.dims.width / 2, o.y + o.dims.depth / 2, o.z + o.dims.height};
}

/// IoU by uniform point sampling over the bounding box of the two boxes.
inline double monte_carlo_iou(const ObjectInstance& a, const ObjectInstance& b, Rng& rng,
                              int samples) {
  const Box3 p = to_box3(a);
  const Box3 q = to_box3(b);
  const Box3 hull{std::min(p.x0, q.x0), std::min(p.y0, q.y0), std::min(p.z0, q.z0),
                  std::max(p.x1, q.x1), std::max(p.y1, q.y1), std::max(p.z1, q.z1)};
  long both = 0;
  long either = 0;
  for (int s = 0; s < samples; ++s) {
    const double x = rng.uniform(hull.x0, hull.x1);
    const double y = rng.uniform(hull.y0, hull.y1);
    const double z = rng.uniform(hull.z0, hull.z1);
    const bool in_p = p.contains(x, y, z);
    const bool in_q = q.contains(x, y, z);
    both += in_p && in_q;
    either += in_p || in_q;
  }
  return either == 0 ? 0.0 : static_cast<double>(both) / static_cast<double>(either);
}

/// Voxel grid with cubic cells of side `h`, shifted by `off` from the
/// origin. A box occupies the voxels whose centers it contains, so its voxel
/// set along each axis is a contiguous index range.
struct VoxelGrid {
  double h;
  std::array<double, 3> off{0.0, 0.0, 0.0};
  struct Range {
    long lo, hi;  // inclusive lo, exclusive hi
    long size() const { return std::max(0L, hi - lo); }
  };
  Range range(double a, double b, int axis) const {
    const double o = off[static_cast<std::size_t>(axis)];
    return {static_cast<long>(std::ceil((a - o) / h - 0.5)),
            static_cast<long>(std::ceil((b - o) / h - 0.5))};
  }
  static Range meet(Range a, Range b) { return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)}; }
  double center(long i, int axis) const {
    return off[static_cast<std::size_t>(axis)] + (static_cast<double>(i) + 0.5) * h;
  }
};

inline long voxel_count(const VoxelGrid& g, const Box3& b) {
  return g.range(b.x0, b.x1, 0).size() * g.range(b.y0, b.y1, 1).size() *
         g.range(b.z0, b.z1, 2).size();
}

inline long voxel_intersection(const VoxelGrid& g, const Box3& a, const Box3& b) {
  return VoxelGrid::meet(g.range(a.x0, a.x1, 0), g.range(b.x0, b.x1, 0)).size() *
         VoxelGrid::meet(g.range(a.y0, a.y1, 1), g.range(b.y0, b.y1, 1)).size() *
         VoxelGrid::meet(g.range(a.z0, a.z1, 2), g.range(b.z0, b.z1, 2)).size();
}

/// Voxels of the object that lie outside the room prism: columns whose
/// center falls outside the floor polygon, plus anything above the ceiling.
inline long voxels_outside(const VoxelGrid& g, const Box3& b, const BPolygon& floor,
                           double ceiling) {
  const auto rx = g.range(b.x0, b.x1, 0);
  const auto ry = g.range(b.y0, b.y1, 1);
  const auto rz = g.range(b.z0, b.z1, 2);
  const auto rz_in = VoxelGrid::meet(rz, g.range(0.0, ceiling, 2));
  long out = 0;
  for (long i = rx.lo; i < rx.hi; ++i) {
    for (long j = ry.lo; j < ry.hi; ++j) {
      const bool inside = bg::covered_by(BPoint(g.center(i, 0), g.center(j, 1)), floor);
      out += inside ? rz.size() - rz_in.size() : rz.size();
    }
  }
  return out;
}

/// Pairwise voxel IoU plus outside-volume over union-with-room-prism,
/// with the prism volume taken from boost's polygon area.
inline double voxel_phi_coll(const Layout& layout, double h,
                             std::array<double, 3> offset = {0.0, 0.0, 0.0}) {
  const VoxelGrid g{h, offset};
  const BPolygon floor = to_boost(layout.room.boundary());
  const double cell = h * h * h;
  const double prism = bg::area(floor) * layout.room.ceiling_height();
  std::vector<Box3> boxes;
  for (const ObjectInstance& o : layout.objects) boxes.push_back(to_box3(o));
  double total = 0.0;
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    for (std::size_t k = i + 1; k < boxes.size(); ++k) {
      const long inter = voxel_intersection(g, boxes[i], boxes[k]);
      const long uni = voxel_count(g, boxes[i]) + voxel_count(g, boxes[k]) - inter;
      if (inter > 0) total += static_cast<double>(inter) / static_cast<double>(uni);
    }
  }
  for (const Box3& b : boxes) {
    const double out = static_cast<double>(voxels_outside(g, b, floor, layout.room.ceiling_height())) * cell;
    if (out > 0) total += out / (prism + out);
  }
  return total;
}

/// voxel_phi_coll averaged over k^3 grids shifted by (a, b, c) * h / k.
/// A single grid rounds every face to the nearest voxel boundary, which is
/// several percent of a thin box; the shifts average that out.
inline double shifted_voxel_phi_coll(const Layout& layout, double h, int k) {
  double sum = 0.0;
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      for (int c = 0; c < k; ++c) {
        sum += voxel_phi_coll(layout, h, {a * h / k, b * h / k, c * h / k});
      }
    }
  }
  return sum / (k * k * k);
}

/// 100 x pairwise voxel intersection over total voxel volume.
inline double voxel_overlap_percent(const Layout& layout, double h) {
  const VoxelGrid g{h};
  long total = 0;
  long inter = 0;
  for (std::size_t i = 0; i < layout.objects.size(); ++i) {
    const Box3 a = to_box3(layout.objects[i]);
    total += voxel_count(g, a);
    for (std::size_t k = i + 1; k < layout.objects.size(); ++k) {
      inter += voxel_intersection(g, a, to_box3(layout.objects[k]));
    }
  }
  return total == 0 ? 0.0 : 100.0 * static_cast<double>(inter) / static_cast<double>(total);
}

/// Minimum distance between points sampled along the footprint boundary of
/// `a` and the boundary segments of `b`; zero when the footprints meet.
inline double sampled_min_distance(const ObjectInstance& a, const ObjectInstance& b,
                                   int per_edge) {
  const Box3 p = to_box3(a);
  const Box3 q = to_box3(b);
  const BPolygon pa = rect_polygon(p.x0, p.y0, p.x1, p.y1);
  const BPolygon pb = rect_polygon(q.x0, q.y0, q.x1, q.y1);
  if (bg::intersects(pa, pb)) return 0.0;
  const BPoint corners[4] = {{q.x0, q.y0}, {q.x1, q.y0}, {q.x1, q.y1}, {q.x0, q.y1}};
  std::vector<BSegment> edges;
  for (int e = 0; e < 4; ++e) edges.emplace_back(corners[e], corners[(e + 1) % 4]);
  const BPoint pc[4] = {{p.x0, p.y0}, {p.x1, p.y0}, {p.x1, p.y1}, {p.x0, p.y1}};
  double best = std::numeric_limits<double>::infinity();
  for (int e = 0; e < 4; ++e) {
    const BPoint s = pc[e];
    const BPoint t = pc[(e + 1) % 4];
    for (int k = 0; k <= per_edge; ++k) {
      const double u = static_cast<double>(k) / per_edge;
      const BPoint pt(s.x() + u * (t.x() - s.x()), s.y() + u * (t.y() - s.y()));
      for (const BSegment& seg : edges) best = std::min(best, bg::distance(pt, seg));
    }
  }
  return best;
}

/// Out of bounds when any footprint corner or edge sample leaves the room.
inline bool sampled_out_of_bounds(const ObjectInstance& o, const RoomSpec& room,
                                  int per_edge) {
  const BPolygon floor = to_boost(room.boundary());
  const Box3 b = to_box3(o);
  const BPoint pc[4] = {{b.x0, b.y0}, {b.x1, b.y0}, {b.x1, b.y1}, {b.x0, b.y1}};
  for (int e = 0; e < 4; ++e) {
    const BPoint s = pc[e];
    const BPoint t = pc[(e + 1) % 4];
    for (int k = 0; k < per_edge; ++k) {
      const double u = static_cast<double>(k) / per_edge;
      if (!bg::covered_by(BPoint(s.x() + u * (t.x() - s.x()), s.y() + u * (t.y() - s.y())),
                          floor)) {
        return true;
      }
    }
  }
  return false;
}

}  // namespace testutil
