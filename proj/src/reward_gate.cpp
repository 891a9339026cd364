#include "roomalign/reward_gate.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "roomalign/errors.hpp"
#include "roomalign/parallel.hpp"

namespace roomalign {

void GateConfig::validate() const {
  if (!(tau_gate <= 0.0)) throw ValidationError("tau_gate must be <= 0");
  if (!(psi_penalty >= 2.0) || !std::isfinite(psi_penalty)) {
    throw ValidationError(fmt::format("psi_penalty {} is below 2, gated-out scores could "
                                      "overtake gated-in ones", psi_penalty));
  }
  if (!(degenerate_norm_value >= 0.0 && degenerate_norm_value <= 1.0)) {
    throw ValidationError("degenerate_norm_value must lie in [0, 1]");
  }
  if (!(lambda_feas >= 0.0 && lambda_feas <= 1.0) || !(lambda_aes >= 0.0 && lambda_aes <= 1.0)) {
    throw ValidationError("lambda_feas and lambda_aes must lie in [0, 1]");
  }
}

std::vector<double> normalize_group(std::span<const double> values, double degenerate_value) {
  if (values.empty()) throw ValidationError("cannot normalize an empty group");
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const double min = *lo;
  const double range = *hi - min;
  std::vector<double> out(values.size(), degenerate_value);
  if (range > 0.0) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      out[i] = std::clamp((values[i] - min) / range, 0.0, 1.0);
    }
  }
  return out;
}

std::vector<RewardBreakdown> holistic_scores(std::span<const double> feas,
                                             std::span<const std::optional<double>> aes,
                                             const GateConfig& config) {
  config.validate();
  if (feas.size() != aes.size()) {
    throw ValidationError(fmt::format("group has {} feasibility values but {} aesthetic slots",
                                      feas.size(), aes.size()));
  }
  const std::vector<double> n_feas = normalize_group(feas, config.degenerate_norm_value);
  std::vector<RewardBreakdown> out(feas.size());
  std::vector<std::size_t> gated;
  std::vector<double> gated_aes;
  for (std::size_t i = 0; i < feas.size(); ++i) {
    out[i].r_feas_raw = feas[i];
    out[i].n_feas = n_feas[i];
    out[i].gated = !config.gate_enabled() || feas[i] >= config.tau_gate;
    if (out[i].gated) {
      if (!aes[i]) {
        throw ValidationError(fmt::format("candidate {} passed the gate without an "
                                          "aesthetic score", i));
      }
      out[i].r_aes_raw = aes[i];
      gated.push_back(i);
      gated_aes.push_back(*aes[i]);
    }
  }
  if (!gated.empty()) {
    const std::vector<double> n_aes = normalize_group(gated_aes, config.degenerate_norm_value);
    for (std::size_t k = 0; k < gated.size(); ++k) out[gated[k]].n_aes = n_aes[k];
  }
  for (RewardBreakdown& b : out) {
    b.s = b.gated ? config.lambda_feas * b.n_feas + config.lambda_aes * b.n_aes
                  : config.lambda_feas * b.n_feas - config.psi_penalty;
  }
  return out;
}

std::vector<CandidateReward> score_group(std::span<const Layout> layouts,
                                         const DesignBrief& brief,
                                         const FeasibilityWeights& feasibility_weights,
                                         const AestheticCritic& critic,
                                         const GateConfig& config, int threads) {
  config.validate();
  std::vector<CandidateReward> out(layouts.size());
  std::vector<double> feas(layouts.size());
  std::vector<std::optional<double>> aes(layouts.size());
  parallel_for(layouts.size(), threads, [&](std::size_t i) {
    out[i].feasibility = r_feas(layouts[i], brief, feasibility_weights);
    feas[i] = out[i].feasibility.r_feas;
    if (!config.gate_enabled() || feas[i] >= config.tau_gate) {
      out[i].aesthetics = critic.score(layouts[i], brief);
      aes[i] = out[i].aesthetics->r_aes;
    }
  });
  const std::vector<RewardBreakdown> scores = holistic_scores(feas, aes, config);
  for (std::size_t i = 0; i < layouts.size(); ++i) out[i].score = scores[i];
  return out;
}

nlohmann::json to_json(const RewardBreakdown& b) {
  nlohmann::json j = {{"r_feas_raw", b.r_feas_raw}, {"n_feas", b.n_feas}, {"n_aes", b.n_aes},
                      {"gated", b.gated},           {"s", b.s}};
  j["r_aes_raw"] = b.r_aes_raw ? nlohmann::json(*b.r_aes_raw) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json to_json(const AestheticBreakdown& b) {
  return {{"s_style", b.s_style},
          {"s_comp", b.s_comp},
          {"s_harm", b.s_harm},
          {"r_aes", b.r_aes},
          {"empty_layout", b.empty_layout},
          {"neutral_image", b.neutral_image},
          {"neutral_text", b.neutral_text},
          {"harmony_template", b.harmony_template}};
}

}  // namespace roomalign
