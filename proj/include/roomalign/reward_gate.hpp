#pragma once

#include <optional>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "roomalign/aesthetics.hpp"
#include "roomalign/feasibility.hpp"

namespace roomalign {

struct GateConfig {
  /// Candidates with raw R_feas below this value are gated out.
  double tau_gate = -0.01;
  double psi_penalty = 2.0;
  double degenerate_norm_value = 0.5;
  /// Branch weights on the normalized scores, each in [0, 1]. With
  /// lambda_feas = 0 the gate is off: every candidate is scored on the
  /// aesthetic branch alone.
  double lambda_feas = 1.0;
  double lambda_aes = 1.0;

  bool gate_enabled() const { return lambda_feas > 0.0; }
  /// Throws ValidationError; psi_penalty below 2 breaks gating dominance.
  void validate() const;
};

struct RewardBreakdown {
  double r_feas_raw = 0.0;
  /// Absent when the candidate was gated out and never scored.
  std::optional<double> r_aes_raw;
  double n_feas = 0.0;
  double n_aes = 0.0;
  bool gated = false;
  double s = 0.0;
};

/// Min-max normalization to [0, 1]; a constant group maps to
/// `degenerate_value`. Throws ValidationError on an empty input.
std::vector<double> normalize_group(std::span<const double> values, double degenerate_value);

/// Hard-gated holistic scores of one sampled group. Feasibility is
/// normalized over the whole group, aesthetics over gated-in candidates.
/// Every gated-in candidate needs an aesthetic value.
std::vector<RewardBreakdown> holistic_scores(std::span<const double> feas,
                                             std::span<const std::optional<double>> aes,
                                             const GateConfig& config);

/// Full reward record of one candidate.
struct CandidateReward {
  FeasibilityReport feasibility;
  std::optional<AestheticBreakdown> aesthetics;
  RewardBreakdown score;
};

/// Runs the verifier on every layout and the critic only on candidates
/// that pass the gate, then fuses the two branches. Candidates are scored
/// on up to `threads` threads; the critic must then be thread-safe.
std::vector<CandidateReward> score_group(std::span<const Layout> layouts,
                                         const DesignBrief& brief,
                                         const FeasibilityWeights& feasibility_weights,
                                         const AestheticCritic& critic,
                                         const GateConfig& config, int threads = 1);

nlohmann::json to_json(const RewardBreakdown& breakdown);
nlohmann::json to_json(const AestheticBreakdown& breakdown);

}  // namespace roomalign
