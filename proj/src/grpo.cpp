#include "roomalign/grpo.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "roomalign/errors.hpp"

namespace roomalign {

void GrpoConfig::validate() const {
  if (group_size < 2) throw ValidationError("group_size must be at least 2");
  if (!(clip_epsilon > 0.0 && clip_epsilon < 1.0)) {
    throw ValidationError("clip_epsilon must lie in (0, 1)");
  }
  if (!(kl_beta >= 0.0)) throw ValidationError("kl_beta must be nonnegative");
  if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate)) {
    throw ValidationError("learning_rate must be finite and nonnegative");
  }
  if (!(trunc_alpha >= 0.0 && trunc_alpha <= 0.25)) {
    throw ValidationError("trunc_alpha must lie in [0, 0.25]");
  }
  if (!(eps_std > 0.0)) throw ValidationError("eps_std must be positive");
  if (max_steps < 0) throw ValidationError("max_steps must be nonnegative");
  if (!(temperature > 0.0)) throw ValidationError("temperature must be positive");
}

std::vector<double> token_weights(std::span<const double> ref_logprobs) {
  if (ref_logprobs.empty()) throw ValidationError("token_weights needs at least one token");
  std::vector<double> w(ref_logprobs.size());
  double total = 0.0;
  for (std::size_t t = 0; t < w.size(); ++t) {
    const double lp = ref_logprobs[t];
    if (!(lp <= 0.0) || !std::isfinite(lp)) {
      throw ValidationError(fmt::format("invalid reference log-probability {} at token {}", lp, t));
    }
    w[t] = -lp;
    total += w[t];
  }
  if (total <= 0.0) {
    std::fill(w.begin(), w.end(), 1.0 / static_cast<double>(w.size()));
  } else {
    for (double& x : w) x /= total;
  }
  return w;
}

double trunc_mean(std::span<const double> values, double alpha) {
  if (values.empty()) return 0.0;
  std::vector<double> v(values.begin(), values.end());
  std::size_t drop = 0;
  if (v.size() >= 10) {
    drop = static_cast<std::size_t>(std::floor(alpha * static_cast<double>(v.size())));
    std::sort(v.begin(), v.end());
  }
  double sum = 0.0;
  for (std::size_t i = drop; i < v.size() - drop; ++i) sum += v[i];
  return sum / static_cast<double>(v.size() - 2 * drop);
}

double trajectory_value(double s, std::span<const double> weights, double alpha) {
  std::vector<double> r(weights.size());
  for (std::size_t t = 0; t < r.size(); ++t) r[t] = s * weights[t];
  return trunc_mean(r, alpha);
}

std::vector<double> group_advantages(std::span<const double> values, double eps_std) {
  if (values.size() < 2) throw ValidationError("group advantages need at least two values");
  const double n = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= n;
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  const double sd = std::sqrt(var / n);
  std::vector<double> out(values.size(), 0.0);
  if (sd < eps_std) return out;
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = (values[i] - mean) / sd;
  return out;
}

std::vector<double> token_advantages(double a_hat, double s, std::span<const double> weights,
                                     double alpha) {
  std::vector<double> out(weights.size(), a_hat);
  const double tm = trunc_mean(weights, alpha);
  if (s == 0.0 || !(tm > 0.0)) return out;
  for (std::size_t t = 0; t < weights.size(); ++t) out[t] = a_hat * weights[t] / tm;
  return out;
}

double kl_term(double new_logprob, double ref_logprob) {
  const double d = ref_logprob - new_logprob;
  // expm1 keeps the small-difference case accurate and nonnegative.
  return std::max(0.0, std::expm1(d) - d);
}

GroupBatch make_group_batch(const DesignBrief& brief, std::vector<TokenTrace> traces,
                            std::vector<RewardBreakdown> rewards, const GrpoConfig& config) {
  if (traces.size() != rewards.size()) {
    throw ValidationError(fmt::format("{} traces but {} rewards", traces.size(), rewards.size()));
  }
  GroupBatch b;
  b.brief = &brief;
  b.traces = std::move(traces);
  b.rewards = std::move(rewards);
  const std::size_t g = b.traces.size();
  for (std::size_t i = 0; i < g; ++i) {
    const double s = b.rewards[i].s;
    b.weights.push_back(token_weights(b.traces[i].ref_logprobs));
    std::vector<double> r(b.weights[i].size());
    for (std::size_t t = 0; t < r.size(); ++t) r[t] = s * b.weights[i][t];
    b.token_rewards.push_back(std::move(r));
    b.r_tilde.push_back(trajectory_value(s, b.weights[i], config.trunc_alpha));
  }
  b.a_hat = group_advantages(b.r_tilde, config.eps_std);
  for (std::size_t i = 0; i < g; ++i) {
    b.advantages.push_back(
        token_advantages(b.a_hat[i], b.rewards[i].s, b.weights[i], config.trunc_alpha));
  }
  return b;
}

SurrogateResult surrogate_objective(std::span<const GroupBatch> batches,
                                    const LayoutPolicy& policy, const PolicyParams& params,
                                    const GrpoConfig& config) {
  SurrogateResult out;
  out.gradient = Eigen::VectorXd::Zero(params.theta.size());
  const double lo = 1.0 - config.clip_epsilon;
  const double hi = 1.0 + config.clip_epsilon;
  std::size_t tokens = 0;
  std::size_t clipped = 0;
  double kl_sum = 0.0;
  for (const GroupBatch& b : batches) {
    const double g = static_cast<double>(b.traces.size());
    double j = 0.0;
    for (std::size_t i = 0; i < b.traces.size(); ++i) {
      const TokenTrace& tr = b.traces[i];
      const std::size_t n = tr.ref_logprobs.size();
      if (tr.tokens.size() != n + 1 || b.advantages[i].size() != n) {
        throw ValidationError("trace arrays are inconsistent");
      }
      for (int tok : tr.tokens) {
        if (tok < 0 || tok >= policy.vocab_size()) {
          throw ValidationError("trace token lies outside the policy vocabulary");
        }
      }
      const double scale = 1.0 / (g * static_cast<double>(n));
      double sum = 0.0;
      const auto weigh = [&](std::span<const double> new_lp, std::span<double> coef) {
        for (std::size_t t = 0; t < n; ++t) {
          const double a = b.advantages[i][t];
          const double rho = std::exp(new_lp[t] - tr.ref_logprobs[t]);
          const double clipped_rho = std::clamp(rho, lo, hi);
          const double kl = kl_term(new_lp[t], tr.ref_logprobs[t]);
          sum += std::min(rho * a, clipped_rho * a) - config.kl_beta * kl;
          kl_sum += kl;
          ++tokens;
          // The min picks the unclipped branch unless the ratio has moved past
          // the bound in the direction the advantage rewards.
          const bool active = (a > 0.0 && rho <= hi) || (a < 0.0 && rho >= lo);
          if ((a > 0.0 && rho > hi) || (a < 0.0 && rho < lo)) ++clipped;
          double c = active ? rho * a : 0.0;
          c += config.kl_beta * std::expm1(tr.ref_logprobs[t] - new_lp[t]);
          coef[t] = scale * c;
        }
      };
      policy.accumulate_grad(params, *b.brief, tr.tokens, tr.temperature, weigh, out.gradient);
      j += sum / static_cast<double>(n);
    }
    out.objective += j / g;
  }
  if (tokens > 0) {
    out.kl = kl_sum / static_cast<double>(tokens);
    out.clip_fraction = static_cast<double>(clipped) / static_cast<double>(tokens);
  }
  return out;
}

}  // namespace roomalign
