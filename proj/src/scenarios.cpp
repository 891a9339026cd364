#include "roomalign/scenarios.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "roomalign/config.hpp"
#include "roomalign/default_configs.hpp"
#include "roomalign/errors.hpp"

namespace roomalign {

void ScenarioTemplate::validate(const Catalog& catalog) const {
  if (!(width_min > 0.0 && width_min <= width_max && depth_min > 0.0 && depth_min <= depth_max)) {
    throw ValidationError(fmt::format("scenario {}: invalid room extent range", name));
  }
  if (width_min < 1.2) {
    throw ValidationError(fmt::format("scenario {}: rooms narrower than 1.2 m cannot hold a door",
                                      name));
  }
  if (required.empty()) throw ValidationError(fmt::format("scenario {}: nothing required", name));
  for (const auto& [cat, count] : required) {
    if (!catalog.has_category(cat) || count < 1) {
      throw ValidationError(fmt::format("scenario {}: bad required entry", name));
    }
  }
  if (style_pool.empty() || atmosphere_pool.empty()) {
    throw ValidationError(fmt::format("scenario {}: empty keyword pool", name));
  }
}

namespace {

std::pair<double, double> parse_range(const IniDocument::Section& s, const std::string& key) {
  const auto value = s.get(key);
  if (!value) throw ValidationError(fmt::format("[{}]: missing '{}'", s.name, key));
  const auto parts = split_list(*value, ',');
  if (parts.size() != 2) {
    throw ValidationError(fmt::format("[{}].{}: expected 'min, max'", s.name, key));
  }
  return {parse_double(parts[0], s.name + "." + key), parse_double(parts[1], s.name + "." + key)};
}

std::vector<std::vector<std::string>> parse_tuples(const IniDocument::Section& s,
                                                   const std::string& key, std::size_t arity) {
  std::vector<std::vector<std::string>> out;
  const auto value = s.get(key);
  if (!value) return out;
  for (const std::string& item : split_list(*value, ',')) {
    auto fields = split_list(item, ':');
    if (fields.size() != arity) {
      throw ValidationError(fmt::format("[{}].{}: malformed entry '{}'", s.name, key, item));
    }
    out.push_back(std::move(fields));
  }
  return out;
}

}  // namespace

std::vector<ScenarioTemplate> parse_scenarios(std::string_view ini_text, const Catalog& catalog) {
  std::vector<ScenarioTemplate> out;
  const IniDocument doc = IniDocument::parse(ini_text);
  for (const auto& s : doc.sections()) {
    constexpr std::string_view prefix = "scenario:";
    if (!s.name.starts_with(prefix)) {
      throw ValidationError(fmt::format("unexpected section [{}] in scenario file", s.name));
    }
    ScenarioTemplate t;
    t.name = s.name.substr(prefix.size());
    t.kind = s.get("kind").value_or("");
    std::tie(t.width_min, t.width_max) = parse_range(s, "width");
    std::tie(t.depth_min, t.depth_max) = parse_range(s, "depth");
    for (const auto& f : parse_tuples(s, "required", 2)) {
      t.required[catalog.require_category(f[0])] +=
          static_cast<int>(parse_int(f[1], s.name + ".required"));
    }
    for (const auto& f : parse_tuples(s, "adjacency", 3)) {
      t.adjacency.push_back({catalog.require_category(f[0]), catalog.require_category(f[1]),
                             parse_double(f[2], s.name + ".adjacency")});
    }
    for (const auto& f : parse_tuples(s, "clearance", 3)) {
      t.clearance.push_back({catalog.require_category(f[0]), catalog.require_category(f[1]),
                             parse_double(f[2], s.name + ".clearance")});
    }
    t.style_pool = split_list(s.get("style").value_or(""), ',');
    t.atmosphere_pool = split_list(s.get("atmosphere").value_or(""), ',');
    t.validate(catalog);
    out.push_back(std::move(t));
  }
  return out;
}

const std::vector<ScenarioTemplate>& builtin_scenarios() {
  static const std::vector<ScenarioTemplate> scenarios =
      parse_scenarios(defaults::kScenariosConfig);
  return scenarios;
}

namespace {

double round_to(double v, double step) { return std::round(v / step) * step; }

}  // namespace

DesignBrief instantiate(const ScenarioTemplate& scenario, Rng& rng, std::string id,
                        const Catalog& catalog) {
  scenario.validate(catalog);
  const double width = round_to(rng.uniform(scenario.width_min, scenario.width_max), 0.05);
  const double depth = round_to(rng.uniform(scenario.depth_min, scenario.depth_max), 0.05);
  constexpr double door = 0.9;
  const double door_x = round_to(rng.uniform(0.2, width - door - 0.2), 0.05);
  DesignBrief brief;
  brief.room = RoomSpec::rectangle(
      width, depth, 2.7, {OpeningSegment{{door_x, 0.0}, {door_x + door, 0.0}, OpeningKind::door}});
  std::vector<std::string> pool = scenario.style_pool;
  const std::size_t styles = std::min<std::size_t>(pool.size(), 1 + rng.below(2));
  for (std::size_t k = 0; k < styles; ++k) {
    const std::size_t pick = rng.below(pool.size());
    brief.style_keywords.push_back(pool[pick]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  std::sort(brief.style_keywords.begin(), brief.style_keywords.end());
  brief.atmosphere_keyword = scenario.atmosphere_pool[rng.below(scenario.atmosphere_pool.size())];
  brief.required_categories = scenario.required;
  brief.adjacency_requirements = scenario.adjacency;
  brief.clearance_pairs = scenario.clearance;
  brief.id = std::move(id);
  brief.scenario = scenario.name;
  return brief;
}

PlacementSearch find_feasible_layout(const DesignBrief& brief, Rng& rng, int max_attempts,
                                     const Catalog& catalog) {
  PlacementSearch search;
  const Rect box = brief.room.bounds();
  std::vector<int> categories;
  for (const auto& [cat, count] : brief.required_categories) {
    for (int k = 0; k < count; ++k) categories.push_back(cat);
  }
  if (categories.size() > kMaxObjects) {
    search.failures[ViolationKind::missing_category] = 1;
    return search;
  }
  const int materials = static_cast<int>(catalog.materials().size());
  for (search.attempts = 1; search.attempts <= max_attempts; ++search.attempts) {
    Layout layout;
    layout.room = brief.room;
    for (int cat : categories) {
      ObjectInstance o;
      o.category_id = cat;
      o.dims = catalog.category(cat).size_variants[rng.below(kSizeVariants)];
      o.material_id = static_cast<int>(rng.below(static_cast<std::uint64_t>(materials)));
      const double hx = 0.5 * o.dims.width;
      const double hy = 0.5 * o.dims.depth;
      o.x = box.min.x + hx + rng.uniform() * std::max(0.0, box.width() - 2 * hx);
      o.y = box.min.y + hy + rng.uniform() * std::max(0.0, box.height() - 2 * hy);
      layout.objects.push_back(o);
    }
    const FeasibilityReport report = r_feas(layout, brief);
    if (report.r_feas == 0.0) {
      search.witness = std::move(layout);
      return search;
    }
    std::map<ViolationKind, bool> seen;
    for (const Violation& v : report.blame) seen[v.kind] = true;
    for (const auto& [kind, _] : seen) ++search.failures[kind];
  }
  search.attempts = max_attempts;
  return search;
}

std::vector<DesignBrief> gen_instances(std::span<const ScenarioTemplate> templates, int count,
                                       std::uint64_t rng_seed, const Catalog& catalog) {
  if (count < 1) throw ValidationError("instance count must be at least 1");
  if (templates.empty()) throw ValidationError("no scenario templates given");
  for (const ScenarioTemplate& t : templates) {
    t.validate(catalog);
    int objects = 0;
    double min_area = 0.0;
    for (const auto& [cat, n] : t.required) {
      objects += n;
      double smallest = std::numeric_limits<double>::infinity();
      for (const Dimensions& d : catalog.category(cat).size_variants) {
        smallest = std::min(smallest, d.width * d.depth);
      }
      min_area += n * smallest;
    }
    if (objects > static_cast<int>(kMaxObjects)) {
      throw UnsatisfiableError(fmt::format("scenario {} requires {} objects; layouts hold at most {}",
                                           t.name, objects, kMaxObjects));
    }
    if (min_area > t.width_max * t.depth_max) {
      throw UnsatisfiableError(fmt::format(
          "scenario {}: smallest footprints cover {:.2f} m2, the largest room only {:.2f} m2",
          t.name, min_area, t.width_max * t.depth_max));
    }
  }
  std::vector<DesignBrief> out;
  for (int k = 0; k < count; ++k) {
    const ScenarioTemplate& t = templates[static_cast<std::size_t>(k) % templates.size()];
    Rng rng{rng_seed, static_cast<std::uint64_t>(k)};
    DesignBrief brief = instantiate(t, rng, fmt::format("{}_{:03d}", t.name, k), catalog);
    Rng search_rng{rng_seed, static_cast<std::uint64_t>(k), 1};
    const PlacementSearch search = find_feasible_layout(brief, search_rng, kMaxPlacementAttempts, catalog);
    if (!search.witness) {
      std::string worst = "none";
      int most = 0;
      for (const auto& [kind, n] : search.failures) {
        if (n > most) {
          most = n;
          worst = std::string(to_string(kind));
        }
      }
      throw UnsatisfiableError(fmt::format(
          "scenario {}: no feasible placement in {} attempts; most frequent failure: {} ({} "
          "attempts)",
          t.name, search.attempts, worst, most));
    }
    out.push_back(std::move(brief));
  }
  return out;
}

}  // namespace roomalign
