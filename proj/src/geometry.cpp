#include "roomalign/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace roomalign {

double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
double norm(Vec2 v) { return std::hypot(v.x, v.y); }

double signed_area(std::span<const Vec2> poly) {
  double twice = 0.0;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    twice += cross(poly[i], poly[(i + 1) % n]);
  }
  return 0.5 * twice;
}

Vec2 centroid(std::span<const Vec2> poly) {
  const std::size_t n = poly.size();
  const double area = signed_area(poly);
  if (n == 0) return {};
  if (std::abs(area) < 1e-15) {
    Vec2 sum{};
    for (const Vec2& p : poly) sum = sum + p;
    return (1.0 / static_cast<double>(n)) * sum;
  }
  // Shift to the first vertex to keep the cross products well conditioned.
  const Vec2 origin = poly[0];
  double cx = 0.0;
  double cy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = poly[i] - origin;
    const Vec2 b = poly[(i + 1) % n] - origin;
    const double c = cross(a, b);
    cx += (a.x + b.x) * c;
    cy += (a.y + b.y) * c;
  }
  const double k = 1.0 / (6.0 * area);
  return origin + Vec2{cx * k, cy * k};
}

Rect bounding_box(std::span<const Vec2> poly) {
  Rect r{poly.front(), poly.front()};
  for (const Vec2& p : poly) {
    r.min.x = std::min(r.min.x, p.x);
    r.min.y = std::min(r.min.y, p.y);
    r.max.x = std::max(r.max.x, p.x);
    r.max.y = std::max(r.max.y, p.y);
  }
  return r;
}

namespace {

int orientation(Vec2 a, Vec2 b, Vec2 c) {
  const double v = cross(b - a, c - a);
  if (std::abs(v) < 1e-12) return 0;
  return v > 0 ? 1 : -1;
}

bool on_segment(Vec2 a, Vec2 b, Vec2 p) {
  return std::min(a.x, b.x) - 1e-12 <= p.x && p.x <= std::max(a.x, b.x) + 1e-12 &&
         std::min(a.y, b.y) - 1e-12 <= p.y && p.y <= std::max(a.y, b.y) + 1e-12;
}

bool segments_touch(Vec2 p1, Vec2 p2, Vec2 q1, Vec2 q2) {
  const int o1 = orientation(p1, p2, q1);
  const int o2 = orientation(p1, p2, q2);
  const int o3 = orientation(q1, q2, p1);
  const int o4 = orientation(q1, q2, p2);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(p1, p2, q1)) return true;
  if (o2 == 0 && on_segment(p1, p2, q2)) return true;
  if (o3 == 0 && on_segment(q1, q2, p1)) return true;
  if (o4 == 0 && on_segment(q1, q2, p2)) return true;
  return false;
}

}  // namespace

bool is_simple(std::span<const Vec2> poly) {
  const std::size_t n = poly.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = poly[i];
    const Vec2 b = poly[(i + 1) % n];
    if (a == b) return false;
    // Adjacent edge folding back onto this one.
    const Vec2 c = poly[(i + 2) % n];
    if (orientation(a, b, c) == 0 && dot(b - a, c - b) < 0) return false;
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      if (segments_touch(a, b, poly[j], poly[(j + 1) % n])) return false;
    }
  }
  return true;
}

double distance_to_segment(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 ab = b - a;
  const double len2 = dot(ab, ab);
  double t = len2 > 0.0 ? dot(p - a, ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return norm(p - (a + t * ab));
}

bool contains_point(std::span<const Vec2> poly, Vec2 p, double tol) {
  const std::size_t n = poly.size();
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2 a = poly[i];
    const Vec2 b = poly[j];
    if (distance_to_segment(p, a, b) <= tol) return true;
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x) inside = !inside;
    }
  }
  return inside;
}

Polygon clip_to_rect(std::span<const Vec2> poly, const Rect& rect) {
  Polygon current(poly.begin(), poly.end());
  // Each clip edge: keep points where `inside(p)` holds.
  auto clip = [&current](auto inside, auto intersect) {
    Polygon out;
    const std::size_t n = current.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2 cur = current[i];
      const Vec2 prev = current[(i + n - 1) % n];
      const bool cur_in = inside(cur);
      const bool prev_in = inside(prev);
      if (cur_in) {
        if (!prev_in) out.push_back(intersect(prev, cur));
        out.push_back(cur);
      } else if (prev_in) {
        out.push_back(intersect(prev, cur));
      }
    }
    current = std::move(out);
  };
  auto at_x = [](double x) {
    return [x](Vec2 a, Vec2 b) {
      const double t = (x - a.x) / (b.x - a.x);
      return Vec2{x, a.y + t * (b.y - a.y)};
    };
  };
  auto at_y = [](double y) {
    return [y](Vec2 a, Vec2 b) {
      const double t = (y - a.y) / (b.y - a.y);
      return Vec2{a.x + t * (b.x - a.x), y};
    };
  };
  clip([&](Vec2 p) { return p.x >= rect.min.x; }, at_x(rect.min.x));
  if (current.empty()) return current;
  clip([&](Vec2 p) { return p.x <= rect.max.x; }, at_x(rect.max.x));
  if (current.empty()) return current;
  clip([&](Vec2 p) { return p.y >= rect.min.y; }, at_y(rect.min.y));
  if (current.empty()) return current;
  clip([&](Vec2 p) { return p.y <= rect.max.y; }, at_y(rect.max.y));
  return current;
}

double intersection_area(const Rect& rect, std::span<const Vec2> poly) {
  const Polygon clipped = clip_to_rect(poly, rect);
  if (clipped.size() < 3) return 0.0;
  return std::abs(signed_area(clipped));
}

bool rect_inside(const Rect& rect, std::span<const Vec2> poly, double rel_tol) {
  const double area = rect.area();
  return intersection_area(rect, poly) >= area * (1.0 - rel_tol);
}

double interval_overlap(double a0, double a1, double b0, double b1) {
  return std::max(0.0, std::min(a1, b1) - std::max(a0, b0));
}

double rect_gap(const Rect& a, const Rect& b) {
  const double dx = std::max({0.0, a.min.x - b.max.x, b.min.x - a.max.x});
  const double dy = std::max({0.0, a.min.y - b.max.y, b.min.y - a.max.y});
  return std::hypot(dx, dy);
}

}  // namespace roomalign
