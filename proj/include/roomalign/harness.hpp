#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "roomalign/embedding.hpp"
#include "roomalign/policy.hpp"
#include "roomalign/scene.hpp"
#include "roomalign/tokenizer.hpp"
#include "roomalign/trainer.hpp"

namespace roomalign {

/// Cosine between the schematic of `layout` and the brief's style text;
/// the same computation as the style term of the aesthetic branch.
double alignment_score(const Layout& layout, const DesignBrief& brief,
                       const EmbeddingProvider& provider, double cell_size = 0.05,
                       const Catalog& catalog = Catalog::builtin());

struct SceneRow {
  std::string id;
  std::string scenario;
  DecodeStatus status = DecodeStatus::ok;
  int objects = 0;
  int out_of_bounds = 0;
  double oob = 0.0;  // percent of this scene's objects
  double oor = 0.0;  // percent
  double phi_coll = 0.0;
  double phi_ergo = 0.0;
  int phi_func = 0;
  double r_feas = 0.0;
  bool gated = false;
  /// NaN when the room has no door.
  double pathway_cost = 0.0;
  int unreachable = 0;
  double cas = 0.0;  // raw cosine
};

/// Summary over a set of scenes. OOB pools objects; the other columns are
/// per-scene means. Pathway cost averages the scenes where it is defined.
struct SummaryRow {
  std::string scenario;
  int scenes = 0;
  int objects = 0;
  double oob = 0.0;
  double oor = 0.0;
  double pathway_cost = 0.0;
  double cas = 0.0;
  double pass_rate = 0.0;
};

SummaryRow summarize(std::string name, std::span<const SceneRow> rows);

struct EvalReport {
  std::vector<SceneRow> scenes;
  std::vector<Layout> layouts;  // parallel to `scenes`
  std::vector<SummaryRow> scenarios;
  SummaryRow aggregate;
  std::uint64_t seed = 0;
  std::uint64_t config_hash = 0;
  long long checkpoint_step = 0;
};

/// Greedy-decodes one layout per brief and computes every metric.
EvalReport evaluate(const LayoutPolicy& policy, const PolicyParams& params,
                    std::span<const DesignBrief> briefs, const RunConfig& config,
                    const EmbeddingProvider& provider,
                    const Catalog& catalog = Catalog::builtin());

std::string scenes_csv(const EvalReport& report);
/// Per-scenario rows followed by the aggregate row "all".
std::string summary_csv(const EvalReport& report);
nlohmann::json report_json(const EvalReport& report);

/// report.csv, scenes.csv, report.json, layouts/<id>.json, renders/<id>.svg.
void write_eval_outputs(const EvalReport& report, const std::filesystem::path& out_dir,
                        const Catalog& catalog = Catalog::builtin());

struct SweepRow {
  std::string lambda;
  double value = 0.0;
  std::uint64_t seed = 0;
  double oor = 0.0;
  double oob = 0.0;
  double cas = 0.0;
  double pass_rate = 0.0;
  /// Training pass rate averaged over the final 100 steps.
  double train_pass_rate = 0.0;
};

struct SweepSummary {
  double value = 0.0;
  int seeds = 0;
  double oor_mean = 0.0;
  double oor_std = 0.0;
  double cas_mean = 0.0;
  double cas_std = 0.0;
};

struct SweepReport {
  std::vector<SweepRow> rows;
  std::vector<SweepSummary> summary;
};

/// Trains and evaluates once per (value, seed), with the seed driving both
/// initialization and sampling. `lambda_name` is "feas" or "aes".
SweepReport sensitivity_sweep(std::string_view lambda_name, std::span<const double> values,
                              const RunConfig& base, std::span<const DesignBrief> briefs,
                              std::span<const std::uint64_t> seeds,
                              const Catalog& catalog = Catalog::builtin(),
                              const std::function<void(const SweepRow&)>& on_row = {});

/// Config with `lambda_name` set to `value` and both seeds set to `seed`.
RunConfig sweep_config(const RunConfig& base, std::string_view lambda_name, double value,
                       std::uint64_t seed);

std::string sweep_csv(const SweepReport& report);
/// value, seeds, oor mean/std, cas mean/std; one row per value.
std::string sweep_summary_csv(const SweepReport& report);

/// Loads every *.json brief in `dir`, sorted by file name.
std::vector<DesignBrief> load_brief_directory(const std::filesystem::path& dir,
                                              const Catalog& catalog = Catalog::builtin());

}  // namespace roomalign
