#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "roomalign/scene.hpp"
#include "roomalign/tokenizer.hpp"

namespace roomalign {

struct PolicyConfig {
  int hidden_size = 64;
  /// Restrict every position to grammatically legal tokens.
  bool grammar_mask = true;
  double init_scale = 0.1;
  std::uint64_t init_seed = 7;

  void validate() const;
};

/// Trainable parameters with the number of updates applied so far.
struct PolicyParams {
  Eigen::VectorXd theta;
  long long step = 0;
};

struct TokenTrace {
  /// Starts with BOS.
  std::vector<int> tokens;
  /// Log-probabilities of tokens[1..] under the policy that sampled them.
  std::vector<double> logprobs;
  /// Log-probabilities under the reference policy; recorded at sampling
  /// time from the frozen snapshot, so equal to `logprobs` there.
  std::vector<double> ref_logprobs;
  double temperature = 1.0;
  DecodeStatus status = DecodeStatus::ok;
};

/// Below this temperature sampling is replaced by greedy decoding.
inline constexpr double kGreedyTemperature = 1e-6;

/// Recurrent layout policy:
///
///   h_0     = tanh(Wf f + b0)
///   h_{t+1} = tanh(Wh h_t + E[:, x_t] + P c_t + bh)
///   logits  = (Wo h_{t+1} + bo) / temperature
///
/// where f are the brief features, x_t the current token and c_t the prefix
/// context after x_t: a one-hot of completed object blocks (capped at 12),
/// the per-category count still missing from the brief's requirements, an
/// indicator that some requirement is still open, and the floor coverage of
/// the completed objects on a 6x6 grid over the room's bounding box. Illegal tokens are
/// masked out before the softmax. theta stores Wf, b0, E, P, Wh, bh, Wo, bo
/// in that order, matrices column-major.
class LayoutPolicy {
 public:
  static constexpr int kFeatureDim = 68;
  static constexpr int kSlots = static_cast<int>(kMaxObjects) + 1;
  static constexpr int kCountSlots = 16;
  static constexpr int kOccupancyGrid = 6;
  static constexpr int kContextDim =
      kSlots + kCountSlots + 1 + kOccupancyGrid * kOccupancyGrid;

  struct Offsets {
    std::size_t wf, b0, e, p, wh, bh, wo, bo, total;
  };

  explicit LayoutPolicy(const TokenVocab& vocab, PolicyConfig config = {});

  const TokenVocab& vocab() const { return *vocab_; }
  const PolicyConfig& config() const { return config_; }
  int hidden_size() const { return config_.hidden_size; }
  int vocab_size() const { return vocab_->size(); }
  const Offsets& offsets() const { return offsets_; }
  std::size_t num_params() const { return offsets_.total; }

  /// Small random recurrent weights and a zero output head, so the initial
  /// policy is uniform over legal tokens.
  PolicyParams init_params() const;

  /// Room size (scalars and one-hot bins over 2-6 m), required category
  /// counts, style and atmosphere keyword indicators, bias.
  Eigen::VectorXd features(const DesignBrief& brief) const;

  /// c_t for the last token of `prefix`, computed from scratch.
  Eigen::VectorXd context(const DesignBrief& brief, std::span<const int> prefix) const;

  /// Tokens legal at the next position given the prefix.
  std::vector<char> legal_mask(std::span<const int> prefix) const;

  /// `n` independent samples; candidate i draws from the stream seeded by
  /// (rng_seed, i). Temperatures below kGreedyTemperature decode greedily.
  std::vector<TokenTrace> sample_group(const PolicyParams& params, const DesignBrief& brief,
                                       int n, double temperature,
                                       std::uint64_t rng_seed) const;

  TokenTrace sample(const PolicyParams& params, const DesignBrief& brief,
                    double temperature, std::uint64_t rng_seed,
                    std::uint64_t stream) const;

  /// Argmax decoding; log-probabilities are recorded at temperature 1.
  TokenTrace greedy(const PolicyParams& params, const DesignBrief& brief) const;

  /// Teacher-forced log-probabilities of tokens[1..]; -inf for tokens the
  /// mask forbids. Throws ValidationError on ids outside the vocabulary or
  /// a missing BOS.
  std::vector<double> log_probs(const PolicyParams& params, const DesignBrief& brief,
                                std::span<const int> tokens, double temperature = 1.0) const;

  /// Gradient of sum_t weights[t] * log p(tokens[t + 1] | prefix).
  Eigen::VectorXd grad_weighted_logprob(const PolicyParams& params, const DesignBrief& brief,
                                        std::span<const int> tokens,
                                        std::span<const double> weights,
                                        double temperature = 1.0) const;

  /// Adds the same gradient into `grad`.
  void accumulate_grad(const PolicyParams& params, const DesignBrief& brief,
                       std::span<const int> tokens, std::span<const double> weights,
                       double temperature, Eigen::Ref<Eigen::VectorXd> grad) const;

  /// Receives the teacher-forced log-probabilities and writes the token
  /// weights.
  using TokenWeigher =
      std::function<void(std::span<const double> logprobs, std::span<double> weights)>;

  /// One forward pass shared by scoring and differentiation: `weigh` picks
  /// the weights from the log-probabilities, then the weighted gradient is
  /// added into `grad`. Returns the log-probabilities.
  std::vector<double> accumulate_grad(const PolicyParams& params, const DesignBrief& brief,
                                      std::span<const int> tokens, double temperature,
                                      const TokenWeigher& weigh,
                                      Eigen::Ref<Eigen::VectorXd> grad) const;

 private:
  const TokenVocab* vocab_;
  PolicyConfig config_;
  Offsets offsets_;
};

/// JSON checkpoint with the vocabulary hash, architecture, step and theta.
void save_checkpoint(const std::filesystem::path& path, const LayoutPolicy& policy,
                     const PolicyParams& params);
/// Throws ValidationError on a vocabulary hash or architecture mismatch.
PolicyParams load_checkpoint(const std::filesystem::path& path, const LayoutPolicy& policy);

/// Writes the same document as `save_checkpoint` to a string.
std::string checkpoint_json(const LayoutPolicy& policy, const PolicyParams& params);
PolicyParams parse_checkpoint(std::string_view document, const LayoutPolicy& policy);

}  // namespace roomalign
