#include "roomalign/feasibility.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "roomalign/errors.hpp"

namespace roomalign {

void FeasibilityWeights::validate() const {
  for (double v : {lambda_coll, lambda_ergo, lambda_func}) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw ValidationError("feasibility weights must be finite and nonnegative");
    }
  }
}

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::collision: return "collision";
    case ViolationKind::wall: return "wall";
    case ViolationKind::clearance: return "clearance";
    case ViolationKind::missing_edge: return "missing_edge";
    case ViolationKind::missing_category: return "missing_category";
  }
  return "unknown";
}

namespace {

double intersection_volume(const ObjectInstance& a, const ObjectInstance& b) {
  const Rect fa = footprint(a);
  const Rect fb = footprint(b);
  return interval_overlap(fa.min.x, fa.max.x, fb.min.x, fb.max.x) *
         interval_overlap(fa.min.y, fa.max.y, fb.min.y, fb.max.y) *
         interval_overlap(a.z, a.z + a.dims.height, b.z, b.z + b.dims.height);
}

}  // namespace

double box_iou(const ObjectInstance& a, const ObjectInstance& b) {
  const double inter = intersection_volume(a, b);
  if (inter <= 0.0) return 0.0;
  return inter / (a.volume() + b.volume() - inter);
}

double wall_overlap(const ObjectInstance& obj, const RoomSpec& room) {
  const double height_inside =
      interval_overlap(obj.z, obj.z + obj.dims.height, 0.0, room.ceiling_height());
  const double inside =
      intersection_area(footprint(obj), room.boundary()) * height_inside;
  const double volume = obj.volume();
  const double outside = std::max(0.0, volume - inside);
  if (outside <= volume * 1e-12) return 0.0;
  const double room_volume = room.area() * room.ceiling_height();
  return outside / (volume + room_volume - inside);
}

double phi_coll(const Layout& layout, std::vector<Violation>* blame) {
  const auto& objs = layout.objects;
  double total = 0.0;
  for (std::size_t i = 0; i < objs.size(); ++i) {
    for (std::size_t k = i + 1; k < objs.size(); ++k) {
      const double iou = box_iou(objs[i], objs[k]);
      if (iou > 0.0) {
        total += iou;
        if (blame) {
          blame->push_back({ViolationKind::collision,
                            {static_cast<int>(i), static_cast<int>(k)}, {}, iou});
        }
      }
    }
  }
  for (std::size_t i = 0; i < objs.size(); ++i) {
    const double w = wall_overlap(objs[i], layout.room);
    if (w > 0.0) {
      total += w;
      if (blame) blame->push_back({ViolationKind::wall, {static_cast<int>(i)}, {}, w});
    }
  }
  return total;
}

double min_distance(const ObjectInstance& a, const ObjectInstance& b) {
  return rect_gap(footprint(a), footprint(b));
}

double phi_ergo(const Layout& layout, const DesignBrief& brief,
                std::vector<Violation>* blame) {
  const auto& objs = layout.objects;
  double total = 0.0;
  for (const ClearancePair& pair : brief.clearance_pairs) {
    for (std::size_t i = 0; i < objs.size(); ++i) {
      if (objs[i].category_id != pair.category_a) continue;
      for (std::size_t k = 0; k < objs.size(); ++k) {
        if (k == i || objs[k].category_id != pair.category_b) continue;
        // Same-category pairs are unordered.
        if (pair.category_a == pair.category_b && k < i) continue;
        const double deficit = std::max(0.0, pair.tau_path - min_distance(objs[i], objs[k]));
        if (deficit > 0.0) {
          total += deficit;
          if (blame) {
            blame->push_back({ViolationKind::clearance,
                              {static_cast<int>(i), static_cast<int>(k)},
                              {pair.category_a, pair.category_b},
                              deficit});
          }
        }
      }
    }
  }
  return total;
}

int phi_func(const Layout& layout, const DesignBrief& brief,
             std::vector<Violation>* blame) {
  const auto& objs = layout.objects;
  int missing = 0;
  for (const AdjacencyRequirement& req : brief.adjacency_requirements) {
    bool satisfied = false;
    for (std::size_t i = 0; i < objs.size() && !satisfied; ++i) {
      if (objs[i].category_id != req.category_a) continue;
      for (std::size_t k = 0; k < objs.size(); ++k) {
        if (k == i || objs[k].category_id != req.category_b) continue;
        if (min_distance(objs[i], objs[k]) <= req.max_distance) {
          satisfied = true;
          break;
        }
      }
    }
    if (!satisfied) {
      ++missing;
      if (blame) {
        blame->push_back({ViolationKind::missing_edge, {},
                          {req.category_a, req.category_b}, 1.0});
      }
    }
  }
  for (const auto& [cat, count] : brief.required_categories) {
    const auto present = std::count_if(objs.begin(), objs.end(), [cat = cat](const auto& o) {
      return o.category_id == cat;
    });
    if (present < count) {
      ++missing;
      if (blame) {
        blame->push_back({ViolationKind::missing_category, {}, {cat},
                          static_cast<double>(count - present)});
      }
    }
  }
  return missing;
}

FeasibilityReport r_feas(const Layout& layout, const DesignBrief& brief,
                         const FeasibilityWeights& weights) {
  FeasibilityReport report;
  report.phi_coll = phi_coll(layout, &report.blame);
  report.phi_ergo = phi_ergo(layout, brief, &report.blame);
  report.phi_func = phi_func(layout, brief, &report.blame);
  report.r_feas = -(weights.lambda_coll * report.phi_coll +
                    weights.lambda_ergo * report.phi_ergo +
                    weights.lambda_func * static_cast<double>(report.phi_func));
  return report;
}

double oob_rate(std::span<const Layout> layouts) {
  if (layouts.empty()) throw ValidationError("oob_rate needs at least one layout");
  std::size_t total = 0;
  std::size_t outside = 0;
  for (const Layout& layout : layouts) {
    for (const ObjectInstance& o : layout.objects) {
      ++total;
      if (!rect_inside(footprint(o), layout.room.boundary())) ++outside;
    }
  }
  if (total == 0) return 0.0;
  return 100.0 * static_cast<double>(outside) / static_cast<double>(total);
}

double overlap_percent(const Layout& layout) {
  const auto& objs = layout.objects;
  double volume = 0.0;
  double overlap = 0.0;
  for (std::size_t i = 0; i < objs.size(); ++i) {
    volume += objs[i].volume();
    for (std::size_t k = i + 1; k < objs.size(); ++k) {
      overlap += intersection_volume(objs[i], objs[k]);
    }
  }
  if (volume <= 0.0) return 0.0;
  return 100.0 * overlap / volume;
}

double oor_rate(std::span<const Layout> layouts) {
  if (layouts.empty()) throw ValidationError("oor_rate needs at least one layout");
  double sum = 0.0;
  for (const Layout& layout : layouts) sum += overlap_percent(layout);
  return sum / static_cast<double>(layouts.size());
}

nlohmann::json to_json(const FeasibilityReport& report, const Catalog& catalog) {
  nlohmann::json blame = nlohmann::json::array();
  for (const Violation& v : report.blame) {
    nlohmann::json categories = nlohmann::json::array();
    for (int c : v.categories) categories.push_back(catalog.category(c).name);
    blame.push_back({{"kind", to_string(v.kind)},
                     {"objects", v.objects},
                     {"categories", categories},
                     {"magnitude", v.magnitude}});
  }
  return {{"phi_coll", report.phi_coll},
          {"phi_ergo", report.phi_ergo},
          {"phi_func", report.phi_func},
          {"r_feas", report.r_feas},
          {"blame", blame}};
}

}  // namespace roomalign
