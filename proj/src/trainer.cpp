#include "roomalign/trainer.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <map>

#include <fmt/format.h>

#include "roomalign/default_configs.hpp"
#include "roomalign/errors.hpp"
#include "roomalign/parallel.hpp"
#include "roomalign/rng.hpp"
#include "roomalign/scene_io.hpp"
#include "roomalign/tokenizer.hpp"

namespace roomalign {

void RunConfig::validate() const {
  policy.validate();
  feasibility.validate();
  aesthetics.validate();
  gate.validate();
  grpo.validate();
  if (provider != "builtin" && provider != "remote") {
    throw ValidationError(fmt::format("unknown provider '{}' (builtin or remote)", provider));
  }
  if (!(remote_timeout > 0.0)) throw ValidationError("remote_timeout must be positive");
  if (remote_dimension < 1) throw ValidationError("remote_dimension must be positive");
  if (batch_size < 1) throw ValidationError("batch_size must be positive");
  if (checkpoint_every < 0) throw ValidationError("checkpoint_every must be nonnegative");
  if (threads < 1) throw ValidationError("threads must be positive");
  if (!(adam_beta1 >= 0.0 && adam_beta1 < 1.0) || !(adam_beta2 >= 0.0 && adam_beta2 < 1.0) ||
      !(adam_epsilon > 0.0)) {
    throw ValidationError("adam_beta1/adam_beta2 must lie in [0, 1) and adam_epsilon be positive");
  }
}

namespace {

using Values = std::map<std::string, std::map<std::string, std::string>>;

/// Section and key order of the shipped file, for the resolved echo.
const std::vector<std::pair<std::string, std::vector<std::string>>>& key_order() {
  static const auto order = [] {
    std::vector<std::pair<std::string, std::vector<std::string>>> out;
    const IniDocument doc = IniDocument::parse(defaults::kRunConfig);
    for (const auto& s : doc.sections()) {
      std::vector<std::string> keys;
      for (const auto& [k, v] : s.entries) keys.push_back(k);
      out.emplace_back(s.name, std::move(keys));
    }
    return out;
  }();
  return order;
}

Values overlay(std::string_view ini_text) {
  Values values;
  const IniDocument defaults_doc = IniDocument::parse(defaults::kRunConfig);
  for (const auto& s : defaults_doc.sections()) {
    for (const auto& [k, v] : s.entries) values[s.name][k] = v;
  }
  const IniDocument user_doc = IniDocument::parse(ini_text);
  for (const auto& s : user_doc.sections()) {
    auto sec = values.find(s.name);
    if (sec == values.end()) {
      throw ValidationError(fmt::format("config: unknown section [{}]", s.name));
    }
    for (const auto& [k, v] : s.entries) {
      auto key = sec->second.find(k);
      if (key == sec->second.end()) {
        throw ValidationError(fmt::format("config: unknown key '{}' in [{}]", k, s.name));
      }
      key->second = v;
    }
  }
  return values;
}

struct Reader {
  const Values& values;
  const std::string& get(const std::string& section, const std::string& key) const {
    return values.at(section).at(key);
  }
  double real(const std::string& s, const std::string& k) const {
    return parse_double(get(s, k), s + "." + k);
  }
  int integer(const std::string& s, const std::string& k) const {
    const long long v = parse_int(get(s, k), s + "." + k);
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
      throw ValidationError(fmt::format("{}.{} out of range", s, k));
    }
    return static_cast<int>(v);
  }
  std::uint64_t seed(const std::string& s, const std::string& k) const {
    const long long v = parse_int(get(s, k), s + "." + k);
    if (v < 0) throw ValidationError(fmt::format("{}.{} must be nonnegative", s, k));
    return static_cast<std::uint64_t>(v);
  }
  bool boolean(const std::string& s, const std::string& k) const {
    return parse_bool(get(s, k), s + "." + k);
  }
};

}  // namespace

RunConfig parse_run_config(std::string_view ini_text) {
  const Values values = overlay(ini_text);
  const Reader r{values};
  RunConfig c;
  c.policy.hidden_size = r.integer("policy", "hidden_size");
  c.policy.grammar_mask = r.boolean("policy", "grammar_mask");
  c.policy.init_scale = r.real("policy", "init_scale");
  c.policy.init_seed = r.seed("policy", "init_seed");
  c.feasibility.lambda_coll = r.real("feasibility", "lambda_coll");
  c.feasibility.lambda_ergo = r.real("feasibility", "lambda_ergo");
  c.feasibility.lambda_func = r.real("feasibility", "lambda_func");
  c.aesthetics.lambda_st = r.real("aesthetics", "lambda_st");
  c.aesthetics.lambda_co = r.real("aesthetics", "lambda_co");
  c.aesthetics.lambda_ha = r.real("aesthetics", "lambda_ha");
  c.aesthetics.sigma = r.real("aesthetics", "sigma");
  c.aesthetics.cell_size = r.real("aesthetics", "cell_size");
  c.provider = r.get("aesthetics", "provider");
  c.remote_url = r.get("aesthetics", "remote_url");
  c.remote_timeout = r.real("aesthetics", "remote_timeout");
  c.remote_dimension = r.integer("aesthetics", "remote_dimension");
  c.gate.tau_gate = r.real("gate", "tau_gate");
  c.gate.psi_penalty = r.real("gate", "psi_penalty");
  c.gate.degenerate_norm_value = r.real("gate", "degenerate_norm_value");
  c.gate.lambda_feas = r.real("gate", "lambda_feas");
  c.gate.lambda_aes = r.real("gate", "lambda_aes");
  c.grpo.group_size = r.integer("grpo", "group_size");
  c.grpo.clip_epsilon = r.real("grpo", "clip_epsilon");
  c.grpo.kl_beta = r.real("grpo", "kl_beta");
  c.grpo.learning_rate = r.real("grpo", "learning_rate");
  c.grpo.trunc_alpha = r.real("grpo", "trunc_alpha");
  c.grpo.eps_std = r.real("grpo", "eps_std");
  c.grpo.max_steps = r.integer("grpo", "max_steps");
  c.grpo.temperature = r.real("grpo", "temperature");
  c.grpo.rng_seed = r.seed("grpo", "rng_seed");
  c.batch_size = r.integer("grpo", "batch_size");
  c.checkpoint_every = r.integer("grpo", "checkpoint_every");
  c.threads = r.integer("grpo", "threads");
  const std::string& opt = r.get("grpo", "optimizer");
  if (opt == "adam") {
    c.optimizer = OptimizerKind::adam;
  } else if (opt == "sgd") {
    c.optimizer = OptimizerKind::sgd;
  } else {
    throw ValidationError(fmt::format("grpo.optimizer must be adam or sgd, got '{}'", opt));
  }
  c.adam_beta1 = r.real("grpo", "adam_beta1");
  c.adam_beta2 = r.real("grpo", "adam_beta2");
  c.adam_epsilon = r.real("grpo", "adam_epsilon");
  c.validate();
  return c;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  return parse_run_config(read_text_file(path));
}

RunConfig default_run_config() { return parse_run_config(""); }

std::string resolved_config(const RunConfig& c) {
  auto real = [](double v) { return fmt::format("{}", v); };
  const std::map<std::string, std::map<std::string, std::string>> values = {
      {"policy",
       {{"hidden_size", fmt::format("{}", c.policy.hidden_size)},
        {"grammar_mask", c.policy.grammar_mask ? "true" : "false"},
        {"init_scale", real(c.policy.init_scale)},
        {"init_seed", fmt::format("{}", c.policy.init_seed)}}},
      {"feasibility",
       {{"lambda_coll", real(c.feasibility.lambda_coll)},
        {"lambda_ergo", real(c.feasibility.lambda_ergo)},
        {"lambda_func", real(c.feasibility.lambda_func)}}},
      {"aesthetics",
       {{"lambda_st", real(c.aesthetics.lambda_st)},
        {"lambda_co", real(c.aesthetics.lambda_co)},
        {"lambda_ha", real(c.aesthetics.lambda_ha)},
        {"sigma", real(c.aesthetics.sigma)},
        {"cell_size", real(c.aesthetics.cell_size)},
        {"provider", c.provider},
        {"remote_url", c.remote_url},
        {"remote_timeout", real(c.remote_timeout)},
        {"remote_dimension", fmt::format("{}", c.remote_dimension)}}},
      {"gate",
       {{"tau_gate", real(c.gate.tau_gate)},
        {"psi_penalty", real(c.gate.psi_penalty)},
        {"degenerate_norm_value", real(c.gate.degenerate_norm_value)},
        {"lambda_feas", real(c.gate.lambda_feas)},
        {"lambda_aes", real(c.gate.lambda_aes)}}},
      {"grpo",
       {{"group_size", fmt::format("{}", c.grpo.group_size)},
        {"clip_epsilon", real(c.grpo.clip_epsilon)},
        {"kl_beta", real(c.grpo.kl_beta)},
        {"learning_rate", real(c.grpo.learning_rate)},
        {"trunc_alpha", real(c.grpo.trunc_alpha)},
        {"eps_std", real(c.grpo.eps_std)},
        {"max_steps", fmt::format("{}", c.grpo.max_steps)},
        {"temperature", real(c.grpo.temperature)},
        {"rng_seed", fmt::format("{}", c.grpo.rng_seed)},
        {"batch_size", fmt::format("{}", c.batch_size)},
        {"checkpoint_every", fmt::format("{}", c.checkpoint_every)},
        {"threads", fmt::format("{}", c.threads)},
        {"optimizer", c.optimizer == OptimizerKind::adam ? "adam" : "sgd"},
        {"adam_beta1", real(c.adam_beta1)},
        {"adam_beta2", real(c.adam_beta2)},
        {"adam_epsilon", real(c.adam_epsilon)}}},
  };
  std::string out;
  for (const auto& [section, keys] : key_order()) {
    if (!out.empty()) out += '\n';
    fmt::format_to(std::back_inserter(out), "[{}]\n", section);
    for (const std::string& k : keys) {
      fmt::format_to(std::back_inserter(out), "{} = {}\n", k, values.at(section).at(k));
    }
  }
  return out;
}

std::uint64_t config_hash(const RunConfig& config) {
  const std::string text = resolved_config(config);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::unique_ptr<EmbeddingProvider> make_provider(const RunConfig& config,
                                                 const Catalog& catalog) {
  if (config.provider == "remote") {
    return std::make_unique<RemoteEmbeddingProvider>(
        config.remote_url, static_cast<std::size_t>(config.remote_dimension),
        std::chrono::milliseconds(static_cast<long long>(config.remote_timeout * 1000.0)));
  }
  return std::make_unique<AttributeEmbedder>(catalog);
}

void apply_update(const RunConfig& config, OptimizerState& state, Eigen::VectorXd& theta,
                  const Eigen::VectorXd& grad) {
  const double lr = config.grpo.learning_rate;
  if (config.optimizer == OptimizerKind::sgd) {
    theta += lr * grad;
    return;
  }
  if (state.m.size() != theta.size()) {
    state.m = Eigen::VectorXd::Zero(theta.size());
    state.v = Eigen::VectorXd::Zero(theta.size());
    state.t = 0;
  }
  ++state.t;
  const double b1 = config.adam_beta1;
  const double b2 = config.adam_beta2;
  state.m = b1 * state.m + (1.0 - b1) * grad;
  state.v = b2 * state.v + (1.0 - b2) * grad.cwiseAbs2();
  const double c1 = 1.0 - std::pow(b1, static_cast<double>(state.t));
  const double c2 = 1.0 - std::pow(b2, static_cast<double>(state.t));
  theta.array() += lr * (state.m.array() / c1) /
                   ((state.v.array() / c2).sqrt() + config.adam_epsilon);
}

Trainer::Trainer(RunConfig config, std::vector<DesignBrief> briefs, const Catalog& catalog)
    : Trainer(config, std::move(briefs), make_provider(config, catalog), catalog) {}

Trainer::Trainer(RunConfig config, std::vector<DesignBrief> briefs,
                 std::unique_ptr<EmbeddingProvider> provider, const Catalog& catalog)
    : config_(std::move(config)),
      briefs_(std::move(briefs)),
      catalog_(&catalog),
      provider_(std::move(provider)) {
  config_.validate();
  if (briefs_.empty()) throw ValidationError("training needs at least one brief");
  for (const DesignBrief& b : briefs_) validate(b, catalog);
  vocab_ = std::make_unique<TokenVocab>(catalog);
  policy_ = std::make_unique<LayoutPolicy>(*vocab_, config_.policy);
  critic_ = std::make_unique<StandardCritic>(*provider_, builtin_harmony_templates(),
                                             config_.aesthetics, catalog);
  params_ = policy_->init_params();
}

std::vector<std::size_t> Trainer::batch_indices(long long step) const {
  std::vector<std::size_t> out;
  const std::size_t n = briefs_.size();
  for (int k = 0; k < config_.batch_size; ++k) {
    out.push_back(static_cast<std::size_t>(
        (static_cast<unsigned long long>(step) * config_.batch_size + k) % n));
  }
  return out;
}

StepMetrics Trainer::step() {
  const PolicyParams old = params_;
  const int g = config_.grpo.group_size;
  StepMetrics m;
  m.step = params_.step + 1;
  std::vector<GroupBatch> batches;
  double feas_sum = 0.0;
  double aes_sum = 0.0;
  double coll_sum = 0.0;
  for (std::size_t k : batch_indices(params_.step)) {
    const DesignBrief& brief = briefs_[k];
    const std::uint64_t seed = mix_seed({config_.grpo.rng_seed, static_cast<std::uint64_t>(params_.step), k});
    std::vector<TokenTrace> traces(g);
    std::vector<Layout> layouts(g);
    parallel_for(static_cast<std::size_t>(g), config_.threads, [&](std::size_t i) {
      traces[i] = policy_->sample(old, brief, config_.grpo.temperature, seed, i);
      layouts[i] = decode(traces[i].tokens, brief, *vocab_).layout;
    });
    const std::vector<CandidateReward> rewards =
        score_group(layouts, brief, config_.feasibility, *critic_, config_.gate, config_.threads);
    std::vector<RewardBreakdown> scores;
    for (const CandidateReward& r : rewards) {
      scores.push_back(r.score);
      ++m.candidates;
      feas_sum += r.feasibility.r_feas;
      coll_sum += r.feasibility.phi_coll;
      // Pass rate counts feasibility against the threshold even with the gate off.
      if (r.feasibility.r_feas >= config_.gate.tau_gate) ++m.gated;
      if (r.score.gated) aes_sum += *r.score.r_aes_raw;
    }
    batches.push_back(make_group_batch(brief, std::move(traces), std::move(scores), config_.grpo));
  }
  int aes_count = 0;
  double abs_adv = 0.0;
  std::size_t adv_count = 0;
  for (const GroupBatch& b : batches) {
    for (std::size_t i = 0; i < b.traces.size(); ++i) {
      if (b.rewards[i].gated) ++aes_count;
      for (double a : b.advantages[i]) abs_adv += std::abs(a);
      adv_count += b.advantages[i].size();
    }
  }
  m.pass_rate = static_cast<double>(m.gated) / m.candidates;
  m.mean_r_feas = feas_sum / m.candidates;
  m.mean_phi_coll = coll_sum / m.candidates;
  m.mean_r_aes_gated =
      aes_count > 0 ? aes_sum / aes_count : std::numeric_limits<double>::quiet_NaN();
  m.mean_abs_advantage = adv_count > 0 ? abs_adv / static_cast<double>(adv_count) : 0.0;

  const SurrogateResult s = surrogate_objective(batches, *policy_, params_, config_.grpo);
  m.objective = s.objective;
  m.kl = s.kl;
  apply_update(config_, optimizer_, params_.theta, s.gradient);
  ++params_.step;
  return m;
}

void Trainer::run(const std::function<void(const StepMetrics&)>& on_step) {
  while (params_.step < config_.grpo.max_steps) {
    const StepMetrics m = step();
    if (on_step) on_step(m);
  }
}

std::string metrics_csv_header() {
  return "step,pass_rate,mean_r_feas,mean_r_aes_gated,mean_phi_coll,objective,kl,"
         "mean_abs_advantage\n";
}

std::string metrics_csv_row(const StepMetrics& m) {
  return fmt::format("{},{:.6f},{:.9g},{:.9g},{:.9g},{:.9g},{:.9g},{:.9g}\n", m.step,
                     m.pass_rate, m.mean_r_feas, m.mean_r_aes_gated, m.mean_phi_coll,
                     m.objective, m.kl, m.mean_abs_advantage);
}

PolicyParams train_to_directory(const RunConfig& config, const std::vector<DesignBrief>& briefs,
                                const std::filesystem::path& out_dir, const Catalog& catalog) {
  Trainer trainer(config, briefs, catalog);
  write_text_file(out_dir / "config.resolved", resolved_config(trainer.config()));
  std::string csv = metrics_csv_header();
  const auto checkpoint = [&] {
    save_checkpoint(out_dir / "checkpoints" / fmt::format("step_{}", trainer.params().step),
                    trainer.policy(), trainer.params());
  };
  checkpoint();
  trainer.run([&](const StepMetrics& m) {
    csv += metrics_csv_row(m);
    if (config.checkpoint_every > 0 && m.step % config.checkpoint_every == 0) checkpoint();
  });
  if (config.checkpoint_every == 0 || trainer.params().step % config.checkpoint_every != 0) {
    checkpoint();
  }
  write_text_file(out_dir / "metrics.csv", csv);
  return trainer.params();
}

}  // namespace roomalign
