#include "roomalign/scene.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "roomalign/errors.hpp"

namespace roomalign {

namespace {

void check_opening(const OpeningSegment& op, const Polygon& boundary,
                   std::string_view what) {
  if (op.start == op.end) {
    throw ValidationError(fmt::format("{} has identical endpoints", what));
  }
  if (op.kind == OpeningKind::door && op.length() < kMinDoorWidth) {
    throw ValidationError(fmt::format("{} is narrower than {} m ({:.3f} m)",
                                      what, kMinDoorWidth, op.length()));
  }
  const std::size_t n = boundary.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = boundary[i];
    const Vec2 b = boundary[(i + 1) % n];
    if (distance_to_segment(op.start, a, b) <= kOpeningTolerance &&
        distance_to_segment(op.end, a, b) <= kOpeningTolerance) {
      return;
    }
  }
  throw ValidationError(fmt::format("{} does not lie on a boundary edge", what));
}

}  // namespace

RoomSpec RoomSpec::make(Polygon boundary, double ceiling_height,
                        std::vector<OpeningSegment> doors,
                        std::vector<OpeningSegment> windows) {
  if (boundary.size() < 3) {
    throw ValidationError("boundary has fewer than 3 vertices");
  }
  for (const Vec2& p : boundary) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw ValidationError("boundary has a non-finite coordinate");
    }
  }
  if (!is_simple(boundary)) {
    throw ValidationError("boundary is not a simple polygon");
  }
  const double area = signed_area(boundary);
  if (std::abs(area) < 1e-12) {
    throw ValidationError("boundary has zero area");
  }
  if (area < 0) std::reverse(boundary.begin(), boundary.end());
  if (!(ceiling_height > 0.0) || !std::isfinite(ceiling_height)) {
    throw ValidationError("ceiling_height must be positive");
  }
  for (std::size_t i = 0; i < doors.size(); ++i) {
    doors[i].kind = OpeningKind::door;
    check_opening(doors[i], boundary, fmt::format("door {}", i));
  }
  for (std::size_t i = 0; i < windows.size(); ++i) {
    windows[i].kind = OpeningKind::window;
    check_opening(windows[i], boundary, fmt::format("window {}", i));
  }
  RoomSpec room;
  room.boundary_ = std::move(boundary);
  room.ceiling_height_ = ceiling_height;
  room.doors_ = std::move(doors);
  room.windows_ = std::move(windows);
  return room;
}

RoomSpec RoomSpec::rectangle(double width, double depth, double ceiling_height,
                             std::vector<OpeningSegment> doors, Vec2 origin) {
  Polygon boundary{origin, origin + Vec2{width, 0.0},
                   origin + Vec2{width, depth}, origin + Vec2{0.0, depth}};
  return make(std::move(boundary), ceiling_height, std::move(doors));
}

double RoomSpec::area() const { return signed_area(boundary_); }
Rect RoomSpec::bounds() const { return bounding_box(boundary_); }
Vec2 RoomSpec::centroid() const { return roomalign::centroid(boundary_); }

RoomSpec RoomSpec::translated(Vec2 offset) const {
  RoomSpec out = *this;
  for (Vec2& p : out.boundary_) p = p + offset;
  for (auto* list : {&out.doors_, &out.windows_}) {
    for (OpeningSegment& op : *list) {
      op.start = op.start + offset;
      op.end = op.end + offset;
    }
  }
  return out;
}

Catalog::Catalog(std::vector<ObjectCategory> categories,
                 std::vector<MaterialSpec> materials)
    : categories_(std::move(categories)), materials_(std::move(materials)) {
  if (categories_.empty() || categories_.size() > kMaxCategories) {
    throw ValidationError(fmt::format("catalog must hold 1..{} categories, got {}",
                                      kMaxCategories, categories_.size()));
  }
  if (materials_.empty() || materials_.size() > kMaxMaterials) {
    throw ValidationError(fmt::format("palette must hold 1..{} materials, got {}",
                                      kMaxMaterials, materials_.size()));
  }
  for (std::size_t i = 0; i < categories_.size(); ++i) {
    const ObjectCategory& c = categories_[i];
    if (c.id != static_cast<int>(i)) {
      throw ValidationError("category ids must be dense and ordered");
    }
    for (const Dimensions& d : c.size_variants) {
      if (!(d.width > 0 && d.depth > 0 && d.height > 0)) {
        throw ValidationError(
            fmt::format("category '{}' has a non-positive dimension", c.name));
      }
    }
    if (!(c.saliency > 0)) {
      throw ValidationError(
          fmt::format("category '{}' needs positive saliency", c.name));
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (categories_[j].name == c.name) {
        throw ValidationError(fmt::format("duplicate category '{}'", c.name));
      }
    }
  }
  for (std::size_t i = 0; i < materials_.size(); ++i) {
    if (materials_[i].id != static_cast<int>(i)) {
      throw ValidationError("material ids must be dense and ordered");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (materials_[j].name == materials_[i].name) {
        throw ValidationError(
            fmt::format("duplicate material '{}'", materials_[i].name));
      }
    }
  }
}

const ObjectCategory& Catalog::category(int id) const {
  if (!has_category(id)) {
    throw ValidationError(fmt::format("unknown category id {}", id));
  }
  return categories_[static_cast<std::size_t>(id)];
}

const MaterialSpec& Catalog::material(int id) const {
  if (!has_material(id)) {
    throw ValidationError(fmt::format("unknown material id {}", id));
  }
  return materials_[static_cast<std::size_t>(id)];
}

std::optional<int> Catalog::category_id(std::string_view name) const {
  for (const ObjectCategory& c : categories_) {
    if (c.name == name) return c.id;
  }
  return std::nullopt;
}

std::optional<int> Catalog::material_id(std::string_view name) const {
  for (const MaterialSpec& m : materials_) {
    if (m.name == name) return m.id;
  }
  return std::nullopt;
}

int Catalog::require_category(std::string_view name) const {
  if (auto id = category_id(name)) return *id;
  throw ValidationError(fmt::format("unknown category '{}'", name));
}

int Catalog::require_material(std::string_view name) const {
  if (auto id = material_id(name)) return *id;
  throw ValidationError(fmt::format("unknown material '{}'", name));
}

bool Catalog::has_category(int id) const {
  return id >= 0 && static_cast<std::size_t>(id) < categories_.size();
}

bool Catalog::has_material(int id) const {
  return id >= 0 && static_cast<std::size_t>(id) < materials_.size();
}

ObjectInstance ObjectInstance::translated(Vec2 offset) const {
  ObjectInstance out = *this;
  out.x += offset.x;
  out.y += offset.y;
  return out;
}

Rect footprint(const ObjectInstance& obj) {
  const double hw = 0.5 * obj.dims.width;
  const double hd = 0.5 * obj.dims.depth;
  return Rect{{obj.x - hw, obj.y - hd}, {obj.x + hw, obj.y + hd}};
}

Layout Layout::translated(Vec2 offset) const {
  Layout out{room.translated(offset), {}};
  out.objects.reserve(objects.size());
  for (const ObjectInstance& o : objects) out.objects.push_back(o.translated(offset));
  return out;
}

void validate(const Layout& layout, const Catalog& catalog) {
  if (layout.objects.size() > kMaxObjects) {
    throw ValidationError(fmt::format("layout has {} objects; at most {} allowed",
                                      layout.objects.size(), kMaxObjects));
  }
  for (std::size_t i = 0; i < layout.objects.size(); ++i) {
    const ObjectInstance& o = layout.objects[i];
    if (!catalog.has_category(o.category_id)) {
      throw ValidationError(
          fmt::format("object {} has unknown category id {}", i, o.category_id));
    }
    if (!catalog.has_material(o.material_id)) {
      throw ValidationError(
          fmt::format("object {} has unknown material id {}", i, o.material_id));
    }
    if (!(o.dims.width > 0 && o.dims.depth > 0 && o.dims.height > 0)) {
      throw ValidationError(fmt::format("object {} has a non-positive dimension", i));
    }
    if (!std::isfinite(o.x) || !std::isfinite(o.y)) {
      throw ValidationError(fmt::format("object {} has a non-finite position", i));
    }
    if (o.z != 0.0) {
      throw ValidationError(
          fmt::format("object {} is not floor-standing (z = {})", i, o.z));
    }
  }
}

void validate(const DesignBrief& brief, const Catalog& catalog) {
  for (const auto& [cat, count] : brief.required_categories) {
    if (!catalog.has_category(cat)) {
      throw ValidationError(fmt::format("required category id {} unknown", cat));
    }
    if (count < 1) {
      throw ValidationError(fmt::format(
          "required count for '{}' must be at least 1", catalog.category(cat).name));
    }
  }
  for (const AdjacencyRequirement& a : brief.adjacency_requirements) {
    if (!catalog.has_category(a.category_a) || !catalog.has_category(a.category_b)) {
      throw ValidationError("adjacency requirement references an unknown category");
    }
    if (!(a.max_distance > 0)) {
      throw ValidationError("adjacency max_distance must be positive");
    }
  }
  for (const ClearancePair& c : brief.clearance_pairs) {
    if (!catalog.has_category(c.category_a) || !catalog.has_category(c.category_b)) {
      throw ValidationError("clearance pair references an unknown category");
    }
    if (!(c.tau_path > 0)) {
      throw ValidationError("clearance tau_path must be positive");
    }
  }
}

}  // namespace roomalign
