#pragma once

#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "roomalign/scene.hpp"

namespace roomalign {

/// Penalty coefficients of the feasibility branch.
struct FeasibilityWeights {
  double lambda_coll = 1.0;
  double lambda_ergo = 1.0;
  double lambda_func = 1.0;

  void validate() const;
};

enum class ViolationKind { collision, wall, clearance, missing_edge, missing_category };

std::string_view to_string(ViolationKind kind);

/// One entry of the blame list. `objects` holds layout indices; for
/// missing edges and categories it is empty and `categories` names them.
struct Violation {
  ViolationKind kind;
  std::vector<int> objects;
  std::vector<int> categories;
  double magnitude = 0.0;
};

struct FeasibilityReport {
  double phi_coll = 0.0;
  double phi_ergo = 0.0;
  int phi_func = 0;
  double r_feas = 0.0;
  std::vector<Violation> blame;
};

/// Volume IoU of two axis-aligned boxes.
double box_iou(const ObjectInstance& a, const ObjectInstance& b);

/// Volume of the object outside the room prism over the volume of their
/// union; zero iff the box lies inside the prism.
double wall_overlap(const ObjectInstance& obj, const RoomSpec& room);

/// Pairwise IoU over unordered pairs plus the per-object wall term.
double phi_coll(const Layout& layout, std::vector<Violation>* blame = nullptr);

/// Smallest Euclidean gap between the two floor footprints.
double min_distance(const ObjectInstance& a, const ObjectInstance& b);

double phi_ergo(const Layout& layout, const DesignBrief& brief,
                std::vector<Violation>* blame = nullptr);

int phi_func(const Layout& layout, const DesignBrief& brief,
             std::vector<Violation>* blame = nullptr);

FeasibilityReport r_feas(const Layout& layout, const DesignBrief& brief,
                         const FeasibilityWeights& weights = {});

/// Percentage of objects whose footprint leaves the room polygon, pooled
/// over all layouts. Throws ValidationError on an empty list.
double oob_rate(std::span<const Layout> layouts);

/// Mean over layouts of 100 x pairwise intersection volume / total object
/// volume. Throws ValidationError on an empty list.
double oor_rate(std::span<const Layout> layouts);

/// Pairwise intersection volume / total object volume of one layout, in
/// percent; zero for an empty layout.
double overlap_percent(const Layout& layout);

nlohmann::json to_json(const FeasibilityReport& report, const Catalog& catalog);

}  // namespace roomalign
