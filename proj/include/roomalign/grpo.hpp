#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "roomalign/policy.hpp"
#include "roomalign/reward_gate.hpp"

namespace roomalign {

struct GrpoConfig {
  int group_size = 8;
  double clip_epsilon = 0.2;
  double kl_beta = 0.02;
  double learning_rate = 0.01;
  /// Fraction trimmed from each tail by the truncated mean.
  double trunc_alpha = 0.1;
  double eps_std = 1e-8;
  int max_steps = 2000;
  double temperature = 1.0;
  std::uint64_t rng_seed = 0;

  void validate() const;
};

/// Negative reference log-likelihoods normalized to sum 1; uniform when
/// every token had probability 1. Throws ValidationError on positive or
/// non-finite input, or an empty sequence.
std::vector<double> token_weights(std::span<const double> ref_logprobs);

/// Mean after dropping floor(alpha * T) entries from each tail; plain mean
/// below 10 entries.
double trunc_mean(std::span<const double> values, double alpha);

/// Truncated mean of the token rewards s * w_t.
double trajectory_value(double s, std::span<const double> weights, double alpha);

/// Population z-scores; all zeros when the standard deviation is below
/// `eps_std`. Throws ValidationError for fewer than two values.
std::vector<double> group_advantages(std::span<const double> values, double eps_std);

/// a_hat * w_t / TruncMean(w), which equals a_hat * r_t / r~ for either sign
/// of s. The ratio is 1 when s = 0 or the truncated mean of w is not
/// positive.
std::vector<double> token_advantages(double a_hat, double s, std::span<const double> weights,
                                     double alpha);

/// exp(ref - new) - (ref - new) - 1.
double kl_term(double new_logprob, double ref_logprob);

/// One brief's sampled group with its credit assignment.
struct GroupBatch {
  const DesignBrief* brief = nullptr;
  std::vector<TokenTrace> traces;
  std::vector<RewardBreakdown> rewards;
  std::vector<std::vector<double>> weights;
  std::vector<std::vector<double>> token_rewards;
  std::vector<double> r_tilde;
  std::vector<double> a_hat;
  std::vector<std::vector<double>> advantages;
};

/// Fills weights, token rewards, trajectory values and advantages from the
/// traces and scores.
GroupBatch make_group_batch(const DesignBrief& brief, std::vector<TokenTrace> traces,
                            std::vector<RewardBreakdown> rewards, const GrpoConfig& config);

struct SurrogateResult {
  double objective = 0.0;
  Eigen::VectorXd gradient;
  /// Mean per-token KL estimate over all traces.
  double kl = 0.0;
  /// Share of tokens whose ratio sat outside the clip range.
  double clip_fraction = 0.0;
};

/// Clipped group-relative objective of each batch, summed over batches,
/// with its exact gradient at `params`.
SurrogateResult surrogate_objective(std::span<const GroupBatch> batches,
                                    const LayoutPolicy& policy, const PolicyParams& params,
                                    const GrpoConfig& config);

}  // namespace roomalign
