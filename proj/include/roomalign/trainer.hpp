#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "roomalign/aesthetics.hpp"
#include "roomalign/config.hpp"
#include "roomalign/feasibility.hpp"
#include "roomalign/grpo.hpp"
#include "roomalign/policy.hpp"
#include "roomalign/reward_gate.hpp"

namespace roomalign {

enum class OptimizerKind { adam, sgd };

/// Everything a training or evaluation run reads from the config file.
struct RunConfig {
  PolicyConfig policy;
  FeasibilityWeights feasibility;
  AestheticWeights aesthetics;
  std::string provider = "builtin";
  std::string remote_url = "http://127.0.0.1:8731";
  double remote_timeout = 5.0;  // seconds
  int remote_dimension = 64;
  GateConfig gate;
  GrpoConfig grpo;
  int batch_size = 1;
  int checkpoint_every = 500;
  int threads = 1;
  OptimizerKind optimizer = OptimizerKind::adam;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_epsilon = 1e-8;

  void validate() const;
};

/// Shipped defaults overlaid with `ini_text`. Unknown sections or keys are
/// rejected.
RunConfig parse_run_config(std::string_view ini_text);
RunConfig load_run_config(const std::filesystem::path& path);
RunConfig default_run_config();

/// Every key with its effective value, in INI form.
std::string resolved_config(const RunConfig& config);
/// Digest of the resolved config text.
std::uint64_t config_hash(const RunConfig& config);

/// Built-in attribute embedder or the remote adapter, as configured.
std::unique_ptr<EmbeddingProvider> make_provider(const RunConfig& config,
                                                 const Catalog& catalog = Catalog::builtin());

/// First- and second-moment state for Adam; plain gradient ascent ignores it.
struct OptimizerState {
  Eigen::VectorXd m;
  Eigen::VectorXd v;
  long long t = 0;
};

/// Ascent step on theta along `grad`.
void apply_update(const RunConfig& config, OptimizerState& state, Eigen::VectorXd& theta,
                  const Eigen::VectorXd& grad);

struct StepMetrics {
  long long step = 0;
  int candidates = 0;
  int gated = 0;
  double pass_rate = 0.0;
  double mean_r_feas = 0.0;
  /// NaN when no candidate passed the gate.
  double mean_r_aes_gated = 0.0;
  double mean_phi_coll = 0.0;
  double objective = 0.0;
  double kl = 0.0;
  double mean_abs_advantage = 0.0;
};

/// Owns the policy parameters and runs the sample / score / update loop.
class Trainer {
 public:
  Trainer(RunConfig config, std::vector<DesignBrief> briefs,
          const Catalog& catalog = Catalog::builtin());
  Trainer(RunConfig config, std::vector<DesignBrief> briefs,
          std::unique_ptr<EmbeddingProvider> provider,
          const Catalog& catalog = Catalog::builtin());

  const RunConfig& config() const { return config_; }
  const LayoutPolicy& policy() const { return *policy_; }
  const PolicyParams& params() const { return params_; }
  void set_params(PolicyParams params) { params_ = std::move(params); }
  const std::vector<DesignBrief>& briefs() const { return briefs_; }
  const AestheticCritic& critic() const { return *critic_; }

  /// Snapshots the old policy, samples and scores one group per brief of
  /// the step's batch, and applies one ascent update.
  StepMetrics step();

  /// `max_steps` steps; `on_step` sees each step's metrics.
  void run(const std::function<void(const StepMetrics&)>& on_step = {});

  /// Number of briefs scored per step and which ones, for step `step`.
  std::vector<std::size_t> batch_indices(long long step) const;

 private:
  RunConfig config_;
  std::vector<DesignBrief> briefs_;
  const Catalog* catalog_;
  std::unique_ptr<TokenVocab> vocab_;
  std::unique_ptr<LayoutPolicy> policy_;
  std::unique_ptr<EmbeddingProvider> provider_;
  std::unique_ptr<AestheticCritic> critic_;
  PolicyParams params_;
  OptimizerState optimizer_;
};

std::string metrics_csv_header();
std::string metrics_csv_row(const StepMetrics& m);

/// Full training run writing config.resolved, metrics.csv and
/// checkpoints/step_N under `out_dir`. Returns the final parameters.
PolicyParams train_to_directory(const RunConfig& config, const std::vector<DesignBrief>& briefs,
                                const std::filesystem::path& out_dir,
                                const Catalog& catalog = Catalog::builtin());

}  // namespace roomalign
