#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "roomalign/feasibility.hpp"
#include "roomalign/rng.hpp"
#include "roomalign/scene.hpp"

namespace roomalign {

struct ScenarioTemplate {
  std::string name;
  /// Prompt family: functionality, layout, color, atmosphere or stress.
  std::string kind;
  double width_min = 0.0;
  double width_max = 0.0;
  double depth_min = 0.0;
  double depth_max = 0.0;
  std::map<int, int> required;
  std::vector<AdjacencyRequirement> adjacency;
  std::vector<ClearancePair> clearance;
  std::vector<std::string> style_pool;
  std::vector<std::string> atmosphere_pool;

  void validate(const Catalog& catalog) const;
};

/// `[scenario:<name>]` sections; see config/scenarios.ini.
std::vector<ScenarioTemplate> parse_scenarios(std::string_view ini_text,
                                              const Catalog& catalog = Catalog::builtin());
const std::vector<ScenarioTemplate>& builtin_scenarios();

/// Rectangular room with a 0.9 m door on the bottom wall, one or two style
/// keywords and one atmosphere drawn from the pools. Extents are rounded to
/// 5 cm.
DesignBrief instantiate(const ScenarioTemplate& scenario, Rng& rng, std::string id,
                        const Catalog& catalog = Catalog::builtin());

struct PlacementSearch {
  std::optional<Layout> witness;
  int attempts = 0;
  /// Failed attempts per violated constraint kind.
  std::map<ViolationKind, int> failures;
};

inline constexpr int kMaxPlacementAttempts = 10000;

/// Rejection sampler: random variants, materials and in-room positions
/// for the required objects until one layout satisfies every constraint.
PlacementSearch find_feasible_layout(const DesignBrief& brief, Rng& rng,
                                     int max_attempts = kMaxPlacementAttempts,
                                     const Catalog& catalog = Catalog::builtin());

/// `count` briefs cycling through `templates`; brief k is drawn from the
/// stream (rng_seed, k) and checked instantiable. Throws
/// UnsatisfiableError naming the template and its most frequent failure.
std::vector<DesignBrief> gen_instances(std::span<const ScenarioTemplate> templates, int count,
                                       std::uint64_t rng_seed,
                                       const Catalog& catalog = Catalog::builtin());

}  // namespace roomalign
