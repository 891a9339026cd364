#pragma once

#include <span>
#include <vector>

namespace roomalign {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
  friend bool operator==(const Vec2&, const Vec2&) = default;
};

double dot(Vec2 a, Vec2 b);
double cross(Vec2 a, Vec2 b);
double norm(Vec2 v);

/// Axis-aligned rectangle [min.x, max.x] x [min.y, max.y].
struct Rect {
  Vec2 min;
  Vec2 max;

  double width() const { return max.x - min.x; }
  double height() const { return max.y - min.y; }
  double area() const { return width() * height(); }
  Vec2 center() const { return 0.5 * (min + max); }
  friend bool operator==(const Rect&, const Rect&) = default;
};

using Polygon = std::vector<Vec2>;

/// Positive for counter-clockwise vertex order.
double signed_area(std::span<const Vec2> poly);
Vec2 centroid(std::span<const Vec2> poly);
Rect bounding_box(std::span<const Vec2> poly);

/// True when no two non-adjacent edges touch and no adjacent edges fold back.
bool is_simple(std::span<const Vec2> poly);

double distance_to_segment(Vec2 p, Vec2 a, Vec2 b);

/// Points on the boundary (within `tol`) count as inside.
bool contains_point(std::span<const Vec2> poly, Vec2 p, double tol = 1e-9);

/// Sutherland-Hodgman clip of an arbitrary simple polygon against a
/// rectangle. Degenerate slivers may appear along the rectangle edges for
/// concave input; they have zero area.
Polygon clip_to_rect(std::span<const Vec2> poly, const Rect& rect);

double intersection_area(const Rect& rect, std::span<const Vec2> poly);

/// Rectangle fully inside the polygon, up to a relative area tolerance.
bool rect_inside(const Rect& rect, std::span<const Vec2> poly,
                 double rel_tol = 1e-9);

/// Overlap length of [a0, a1] and [b0, b1]; zero when disjoint.
double interval_overlap(double a0, double a1, double b0, double b1);

/// Euclidean gap between two rectangles, zero when they overlap or touch.
double rect_gap(const Rect& a, const Rect& b);

}  // namespace roomalign
