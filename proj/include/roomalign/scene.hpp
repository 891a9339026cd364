#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "roomalign/geometry.hpp"

namespace roomalign {

inline constexpr std::size_t kMaxObjects = 12;
inline constexpr std::size_t kMaxCategories = 16;
inline constexpr std::size_t kMaxMaterials = 8;
inline constexpr std::size_t kSizeVariants = 3;
inline constexpr double kOpeningTolerance = 1e-6;
inline constexpr double kMinDoorWidth = 0.6;

enum class OpeningKind { door, window };

struct OpeningSegment {
  Vec2 start;
  Vec2 end;
  OpeningKind kind = OpeningKind::door;

  Vec2 midpoint() const { return 0.5 * (start + end); }
  double length() const { return norm(end - start); }
  friend bool operator==(const OpeningSegment&, const OpeningSegment&) = default;
};

/// Simple polygonal room, stored counter-clockwise. Construct through
/// `RoomSpec::make`, which validates and reorients clockwise input.
class RoomSpec {
 public:
  /// Empty placeholder; not a valid room.
  RoomSpec() = default;

  static RoomSpec make(Polygon boundary, double ceiling_height,
                       std::vector<OpeningSegment> doors = {},
                       std::vector<OpeningSegment> windows = {});

  /// Axis-aligned rectangular room anchored at `origin`.
  static RoomSpec rectangle(double width, double depth,
                            double ceiling_height = 2.7,
                            std::vector<OpeningSegment> doors = {},
                            Vec2 origin = {});

  const Polygon& boundary() const { return boundary_; }
  double ceiling_height() const { return ceiling_height_; }
  const std::vector<OpeningSegment>& doors() const { return doors_; }
  const std::vector<OpeningSegment>& windows() const { return windows_; }

  double area() const;
  Rect bounds() const;
  Vec2 centroid() const;

  RoomSpec translated(Vec2 offset) const;

  friend bool operator==(const RoomSpec&, const RoomSpec&) = default;

 private:
  Polygon boundary_;
  double ceiling_height_ = 0.0;
  std::vector<OpeningSegment> doors_;
  std::vector<OpeningSegment> windows_;
};

struct Dimensions {
  double width = 0.0;
  double depth = 0.0;
  double height = 0.0;
  friend bool operator==(const Dimensions&, const Dimensions&) = default;
};

struct ObjectCategory {
  int id = 0;
  std::string name;
  std::array<Dimensions, kSizeVariants> size_variants{};
  double saliency = 1.0;
  bool needs_access = false;
};

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

struct MaterialSpec {
  int id = 0;
  std::string name;
  Rgb base_color;
};

/// Category catalog plus material palette; ids are dense from 0.
class Catalog {
 public:
  Catalog(std::vector<ObjectCategory> categories,
          std::vector<MaterialSpec> materials);

  /// Catalog built from the shipped configuration.
  static const Catalog& builtin();

  const std::vector<ObjectCategory>& categories() const { return categories_; }
  const std::vector<MaterialSpec>& materials() const { return materials_; }

  const ObjectCategory& category(int id) const;
  const MaterialSpec& material(int id) const;
  std::optional<int> category_id(std::string_view name) const;
  std::optional<int> material_id(std::string_view name) const;
  /// Throws ValidationError naming the unknown label.
  int require_category(std::string_view name) const;
  int require_material(std::string_view name) const;

  bool has_category(int id) const;
  bool has_material(int id) const;

 private:
  std::vector<ObjectCategory> categories_;
  std::vector<MaterialSpec> materials_;
};

/// One placed object: footprint center (x, y), base elevation z, and box
/// dimensions. Boxes are axis-aligned.
struct ObjectInstance {
  int category_id = 0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  Dimensions dims;
  int material_id = 0;

  double volume() const { return dims.width * dims.depth * dims.height; }
  ObjectInstance translated(Vec2 offset) const;
  friend bool operator==(const ObjectInstance&, const ObjectInstance&) = default;
};

/// Axis-aligned floor rectangle of an object.
Rect footprint(const ObjectInstance& obj);

struct Layout {
  RoomSpec room;
  std::vector<ObjectInstance> objects;

  Layout translated(Vec2 offset) const;
  friend bool operator==(const Layout&, const Layout&) = default;
};

struct AdjacencyRequirement {
  int category_a = 0;
  int category_b = 0;
  double max_distance = 0.0;
  friend bool operator==(const AdjacencyRequirement&,
                         const AdjacencyRequirement&) = default;
};

struct ClearancePair {
  int category_a = 0;
  int category_b = 0;
  double tau_path = 0.0;
  friend bool operator==(const ClearancePair&, const ClearancePair&) = default;
};

struct DesignBrief {
  RoomSpec room;
  std::vector<std::string> style_keywords;
  std::string atmosphere_keyword;
  std::map<int, int> required_categories;
  std::vector<AdjacencyRequirement> adjacency_requirements;
  std::vector<ClearancePair> clearance_pairs;
  /// Identification only; not used by any scoring.
  std::string id;
  std::string scenario;

  friend bool operator==(const DesignBrief&, const DesignBrief&) = default;
};

/// Throws ValidationError on the first violated invariant.
void validate(const Layout& layout, const Catalog& catalog);
void validate(const DesignBrief& brief, const Catalog& catalog);

}  // namespace roomalign
