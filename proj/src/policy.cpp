#include "roomalign/policy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "roomalign/embedding.hpp"
#include "roomalign/errors.hpp"
#include "roomalign/rng.hpp"
#include "roomalign/scene_io.hpp"
#include "roomalign/tokenizer.hpp"

namespace roomalign {

void PolicyConfig::validate() const {
  if (hidden_size < 1 || hidden_size > 256) {
    throw ValidationError(fmt::format("hidden_size {} outside [1, 256]", hidden_size));
  }
  if (!(init_scale >= 0.0) || !std::isfinite(init_scale)) {
    throw ValidationError("init_scale must be finite and nonnegative");
  }
}

namespace {

using Eigen::Map;
using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// Keywords with an indicator slot in the brief features, in sorted order.
const std::vector<std::string>& feature_keywords() {
  static const std::vector<std::string> words = [] {
    std::vector<std::string> w;
    for (const auto& [k, v] : builtin_lexicon()) w.push_back(k);
    return w;
  }();
  return words;
}

constexpr int kRoomBins = 8;
constexpr double kRoomBinLo = 2.0;
constexpr double kRoomBinHi = 6.0;
constexpr int kCountSlots = LayoutPolicy::kCountSlots;
constexpr int kKeywordSlots = 16;

struct ConstNet {
  Map<const MatrixXd> wf;
  Map<const VectorXd> b0;
  Map<const MatrixXd> e;
  Map<const MatrixXd> p;
  Map<const MatrixXd> wh;
  Map<const VectorXd> bh;
  Map<const MatrixXd> wo;
  Map<const VectorXd> bo;
};

struct MutNet {
  Map<MatrixXd> wf;
  Map<VectorXd> b0;
  Map<MatrixXd> e;
  Map<MatrixXd> p;
  Map<MatrixXd> wh;
  Map<VectorXd> bh;
  Map<MatrixXd> wo;
  Map<VectorXd> bo;
};

template <typename Net, typename Ptr>
Net view(Ptr base, const LayoutPolicy::Offsets& o, int h, int f, int v, int s) {
  return Net{{base + o.wf, h, f}, {base + o.b0, h},    {base + o.e, h, v},  {base + o.p, h, s},
             {base + o.wh, h, h}, {base + o.bh, h},    {base + o.wo, v, h}, {base + o.bo, v}};
}

/// Incremental c_t: feed tokens in order, read the vector after each.
class ContextTracker {
 public:
  static constexpr int kGrid = LayoutPolicy::kOccupancyGrid;
  static constexpr int kOccupancyAt = LayoutPolicy::kSlots + kCountSlots + 1;

  ContextTracker(const DesignBrief& brief, const TokenVocab& vocab)
      : vocab_(&vocab), box_(brief.room.bounds()) {
    need_.fill(0);
    occupancy_.fill(0.0);
    for (const auto& [cat, count] : brief.required_categories) {
      if (cat >= 0 && cat < kCountSlots) need_[cat] = count;
    }
  }

  void consume(int token) {
    const TokenType type = vocab_->type(token);
    const int value = vocab_->value(token);
    // Block fields are only trusted when they arrive in grammar order.
    if (type == TokenType::category) {
      if (value < kCountSlots && need_[value] > 0) --need_[value];
      block_ = {value, 0, 0, 0};
      filled_ = 1;
    } else if (filled_ >= 1 && filled_ <= 3 &&
               type == kBlockOrder[static_cast<std::size_t>(filled_)]) {
      block_[static_cast<std::size_t>(filled_)] = value;
      ++filled_;
    } else if (type == TokenType::material) {
      if (filled_ == 4) place();
      slot_ = std::min(slot_ + 1, LayoutPolicy::kSlots - 1);
      filled_ = 0;
    } else {
      filled_ = 0;
    }
  }

  void write(VectorXd& c) const {
    c.setZero(LayoutPolicy::kContextDim);
    c[slot_] = 1.0;
    bool open = false;
    for (int k = 0; k < kCountSlots; ++k) {
      c[LayoutPolicy::kSlots + k] = need_[k];
      open = open || need_[k] > 0;
    }
    c[kOccupancyAt - 1] = open ? 1.0 : 0.0;
    for (int k = 0; k < kGrid * kGrid; ++k) c[kOccupancyAt + k] = occupancy_[k];
  }

 private:
  static constexpr TokenType kBlockOrder[4] = {TokenType::category, TokenType::x_bin,
                                               TokenType::y_bin, TokenType::size};

  void place() {
    constexpr int bins = TokenVocab::kPositionBins;
    const Dimensions& d =
        vocab_->catalog().category(block_[0]).size_variants[static_cast<std::size_t>(block_[3])];
    const double x = dequantize(block_[1], box_.min.x, box_.max.x, bins);
    const double y = dequantize(block_[2], box_.min.y, box_.max.y, bins);
    const double cw = box_.width() / kGrid;
    const double ch = box_.height() / kGrid;
    for (int i = 0; i < kGrid; ++i) {
      const double x0 = box_.min.x + i * cw;
      const double ox = std::min(x + d.width / 2, x0 + cw) - std::max(x - d.width / 2, x0);
      if (ox <= 0.0) continue;
      for (int j = 0; j < kGrid; ++j) {
        const double y0 = box_.min.y + j * ch;
        const double oy = std::min(y + d.depth / 2, y0 + ch) - std::max(y - d.depth / 2, y0);
        if (oy > 0.0) occupancy_[static_cast<std::size_t>(j * kGrid + i)] += ox * oy / (cw * ch);
      }
    }
  }

  const TokenVocab* vocab_;
  Rect box_;
  std::array<int, kCountSlots> need_{};
  std::array<double, kGrid * kGrid> occupancy_{};
  std::array<int, 4> block_{};
  int filled_ = 0;
  int slot_ = 0;
};

int completed_blocks(std::span<const int> prefix, const TokenVocab& vocab) {
  int n = 0;
  for (int t : prefix) {
    if (vocab.type(t) == TokenType::material) ++n;
  }
  return n;
}

/// Masked log-softmax of `z`; fills `probs` (zero outside the mask) and
/// returns log of the normalizer.
double masked_softmax(const VectorXd& z, const std::vector<char>& legal, VectorXd& probs) {
  double m = kNegInf;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    if (legal[i]) m = std::max(m, z[i]);
  }
  double sum = 0.0;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    probs[i] = legal[i] ? std::exp(z[i] - m) : 0.0;
    sum += probs[i];
  }
  probs /= sum;
  return m + std::log(sum);
}

/// Forward pass bookkeeping for one sequence.
struct Rollout {
  MatrixXd h;      // columns h_0 .. h_T
  MatrixXd ctx;    // column t enters h_{t+1}
  MatrixXd probs;  // column t predicts token t + 1
  std::vector<double> logp;
};

/// Contiguous runs of legal ids as (first, count).
std::vector<std::pair<int, int>> legal_runs(const std::vector<char>& legal) {
  std::vector<std::pair<int, int>> runs;
  const int n = static_cast<int>(legal.size());
  for (int i = 0; i < n;) {
    if (!legal[i]) {
      ++i;
      continue;
    }
    int j = i;
    while (j < n && legal[j]) ++j;
    runs.emplace_back(i, j - i);
    i = j;
  }
  return runs;
}

}  // namespace

LayoutPolicy::LayoutPolicy(const TokenVocab& vocab, PolicyConfig config)
    : vocab_(&vocab), config_(config) {
  config_.validate();
  const std::size_t h = config_.hidden_size;
  const std::size_t v = vocab.size();
  std::size_t at = 0;
  auto take = [&](std::size_t n) {
    const std::size_t start = at;
    at += n;
    return start;
  };
  offsets_.wf = take(h * kFeatureDim);
  offsets_.b0 = take(h);
  offsets_.e = take(h * v);
  offsets_.p = take(h * kContextDim);
  offsets_.wh = take(h * h);
  offsets_.bh = take(h);
  offsets_.wo = take(v * h);
  offsets_.bo = take(v);
  offsets_.total = at;
}

PolicyParams LayoutPolicy::init_params() const {
  PolicyParams params;
  params.theta = VectorXd::Zero(static_cast<Eigen::Index>(offsets_.total));
  Rng rng{config_.init_seed};
  const double s = config_.init_scale;
  // Everything before the output head is randomized; the head stays zero.
  for (std::size_t i = 0; i < offsets_.wo; ++i) params.theta[i] = rng.uniform(-s, s);
  for (std::size_t i = offsets_.b0; i < offsets_.b0 + config_.hidden_size; ++i) {
    params.theta[i] = 0.0;
  }
  for (std::size_t i = offsets_.bh; i < offsets_.bh + config_.hidden_size; ++i) {
    params.theta[i] = 0.0;
  }
  return params;
}

Eigen::VectorXd LayoutPolicy::features(const DesignBrief& brief) const {
  VectorXd f = VectorXd::Zero(kFeatureDim);
  const Rect box = brief.room.bounds();
  f[0] = box.width() / 5.0;
  f[1] = box.height() / 5.0;
  f[2] = brief.room.area() / 20.0;
  f[3 + quantize(box.width(), kRoomBinLo, kRoomBinHi, kRoomBins)] = 1.0;
  f[3 + kRoomBins + quantize(box.height(), kRoomBinLo, kRoomBinHi, kRoomBins)] = 1.0;
  int at = 3 + 2 * kRoomBins;
  for (const auto& [cat, count] : brief.required_categories) {
    if (cat >= 0 && cat < kCountSlots) f[at + cat] = count;
  }
  at += kCountSlots;
  const auto& words = feature_keywords();
  auto slot = [&](const std::string& w) {
    auto it = std::lower_bound(words.begin(), words.end(), w);
    if (it == words.end() || *it != w) return -1;
    const int k = static_cast<int>(it - words.begin());
    return k < kKeywordSlots ? k : -1;
  };
  for (const std::string& w : brief.style_keywords) {
    if (const int k = slot(w); k >= 0) f[at + k] = 1.0;
  }
  at += kKeywordSlots;
  if (const int k = slot(brief.atmosphere_keyword); k >= 0) f[at + k] = 1.0;
  at += kKeywordSlots;
  f[at] = 1.0;
  return f;
}

Eigen::VectorXd LayoutPolicy::context(const DesignBrief& brief,
                                      std::span<const int> prefix) const {
  ContextTracker tracker(brief, *vocab_);
  for (int t : prefix) tracker.consume(t);
  VectorXd c;
  tracker.write(c);
  return c;
}

std::vector<char> LayoutPolicy::legal_mask(std::span<const int> prefix) const {
  const int v = vocab_->size();
  std::vector<char> legal(v, 0);
  if (prefix.size() + 1 >= static_cast<std::size_t>(TokenVocab::kMaxSequenceLength)) {
    legal[TokenVocab::kEos] = 1;
    return legal;
  }
  if (!config_.grammar_mask) {
    std::fill(legal.begin(), legal.end(), 1);
    return legal;
  }
  const GrammarState g =
      grammar_state(vocab_->type(prefix.back()), completed_blocks(prefix, *vocab_));
  if (g.allows_eos || g.requires_eos) legal[TokenVocab::kEos] = 1;
  if (!g.requires_eos) {
    const auto [first, count] = vocab_->range(g.expected);
    std::fill(legal.begin() + first, legal.begin() + first + count, 1);
  }
  return legal;
}

namespace {

/// Shared forward kernel for sampling, scoring and differentiation. With
/// `choose` set, the next token is picked by the callback instead of read
/// from `tokens`, which is then extended in place.
template <typename Choose>
Rollout run(const LayoutPolicy& policy, const PolicyParams& params, const DesignBrief& brief,
            std::vector<int>& tokens, double temperature, bool keep, Choose&& choose) {
  const LayoutPolicy::Offsets& o = policy.offsets();
  const int h = policy.hidden_size();
  const int v = policy.vocab_size();
  const ConstNet net = view<ConstNet>(params.theta.data(), o, h, LayoutPolicy::kFeatureDim, v,
                                      LayoutPolicy::kContextDim);
  const TokenVocab& vocab = policy.vocab();
  const VectorXd f = policy.features(brief);
  ContextTracker tracker(brief, vocab);
  VectorXd c;
  Rollout r;
  VectorXd state = (net.wf * f + net.b0).array().tanh().matrix();
  const std::size_t cap = std::max<std::size_t>(tokens.size(), TokenVocab::kMaxSequenceLength);
  if (keep) {
    r.h.resize(h, static_cast<Eigen::Index>(cap));
    r.ctx.resize(LayoutPolicy::kContextDim, static_cast<Eigen::Index>(cap));
    r.probs.resize(v, static_cast<Eigen::Index>(cap));
    r.h.col(0) = state;
  }
  VectorXd pre(h);
  VectorXd z = VectorXd::Zero(v);
  VectorXd probs(v);
  std::size_t t = 0;
  for (;; ++t) {
    if (t + 1 >= tokens.size() && !choose.active()) break;
    const int x = tokens[t];
    tracker.consume(x);
    tracker.write(c);
    pre.noalias() = net.wh * state;
    pre += net.e.col(x) + net.bh;
    for (Eigen::Index k = 0; k < c.size(); ++k) {
      if (c[k] != 0.0) pre += c[k] * net.p.col(k);
    }
    state = pre.array().tanh().matrix();
    const std::vector<char> legal =
        policy.legal_mask(std::span<const int>(tokens.data(), t + 1));
    // Only legal logits are needed; the rest never reach the softmax.
    for (const auto& [first, count] : legal_runs(legal)) {
      z.segment(first, count).noalias() = net.wo.middleRows(first, count) * state;
      z.segment(first, count) += net.bo.segment(first, count);
      z.segment(first, count) /= temperature;
    }
    const double log_norm = masked_softmax(z, legal, probs);
    int y;
    if (choose.active()) {
      y = choose(probs, legal);
      tokens.push_back(y);
    } else {
      y = tokens[t + 1];
      vocab.type(y);
    }
    r.logp.push_back(legal[y] ? z[y] - log_norm : kNegInf);
    if (keep) {
      const auto col = static_cast<Eigen::Index>(t);
      r.h.col(col + 1) = state;
      r.ctx.col(col) = c;
      r.probs.col(col) = probs;
    }
    if (choose.active() && y == TokenVocab::kEos) break;
  }
  if (keep) {
    const auto n = static_cast<Eigen::Index>(r.logp.size());
    r.h.conservativeResize(Eigen::NoChange, n + 1);
    r.ctx.conservativeResize(Eigen::NoChange, n);
    r.probs.conservativeResize(Eigen::NoChange, n);
  }
  return r;
}

struct TeacherForced {
  bool active() const { return false; }
  int operator()(const VectorXd&, const std::vector<char>&) const { return 0; }
};

struct Sampler {
  Rng* rng;
  bool active() const { return true; }
  int operator()(const VectorXd& probs, const std::vector<char>& legal) const {
    const double u = rng->uniform();
    double acc = 0.0;
    int last = -1;
    for (Eigen::Index i = 0; i < probs.size(); ++i) {
      if (!legal[i]) continue;
      acc += probs[i];
      last = static_cast<int>(i);
      if (u < acc) return last;
    }
    return last;
  }
};

struct Argmax {
  bool active() const { return true; }
  int operator()(const VectorXd& probs, const std::vector<char>& legal) const {
    int best = -1;
    for (Eigen::Index i = 0; i < probs.size(); ++i) {
      if (legal[i] && (best < 0 || probs[i] > probs[best])) best = static_cast<int>(i);
    }
    return best;
  }
};

void check_prefix(std::span<const int> tokens) {
  if (tokens.empty() || tokens.front() != TokenVocab::kBos) {
    throw ValidationError("token sequence does not start with BOS");
  }
}

}  // namespace

TokenTrace LayoutPolicy::sample(const PolicyParams& params, const DesignBrief& brief,
                                double temperature, std::uint64_t rng_seed,
                                std::uint64_t stream) const {
  if (temperature < kGreedyTemperature) return greedy(params, brief);
  Rng rng{rng_seed, stream};
  TokenTrace trace;
  trace.tokens = {TokenVocab::kBos};
  trace.temperature = temperature;
  Rollout r = run(*this, params, brief, trace.tokens, temperature, false,
                  Sampler{&rng});
  trace.logprobs = std::move(r.logp);
  trace.ref_logprobs = trace.logprobs;
  trace.status = decode(trace.tokens, brief, *vocab_).status;
  return trace;
}

std::vector<TokenTrace> LayoutPolicy::sample_group(const PolicyParams& params,
                                                   const DesignBrief& brief, int n,
                                                   double temperature,
                                                   std::uint64_t rng_seed) const {
  if (n < 1) throw ValidationError("group size must be positive");
  if (!(temperature > 0.0)) throw ValidationError("temperature must be positive");
  std::vector<TokenTrace> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    out.push_back(sample(params, brief, temperature, rng_seed, static_cast<std::uint64_t>(i)));
  }
  return out;
}

TokenTrace LayoutPolicy::greedy(const PolicyParams& params, const DesignBrief& brief) const {
  TokenTrace trace;
  trace.tokens = {TokenVocab::kBos};
  trace.temperature = 1.0;
  Rollout r = run(*this, params, brief, trace.tokens, 1.0, false, Argmax{});
  trace.logprobs = std::move(r.logp);
  trace.ref_logprobs = trace.logprobs;
  trace.status = decode(trace.tokens, brief, *vocab_).status;
  return trace;
}

std::vector<double> LayoutPolicy::log_probs(const PolicyParams& params,
                                            const DesignBrief& brief,
                                            std::span<const int> tokens,
                                            double temperature) const {
  check_prefix(tokens);
  std::vector<int> seq(tokens.begin(), tokens.end());
  return run(*this, params, brief, seq, temperature, false, TeacherForced{}).logp;
}

Eigen::VectorXd LayoutPolicy::grad_weighted_logprob(const PolicyParams& params,
                                                    const DesignBrief& brief,
                                                    std::span<const int> tokens,
                                                    std::span<const double> weights,
                                                    double temperature) const {
  VectorXd grad = VectorXd::Zero(params.theta.size());
  accumulate_grad(params, brief, tokens, weights, temperature, grad);
  return grad;
}

void LayoutPolicy::accumulate_grad(const PolicyParams& params, const DesignBrief& brief,
                                   std::span<const int> tokens,
                                   std::span<const double> weights, double temperature,
                                   Eigen::Ref<Eigen::VectorXd> grad) const {
  if (!tokens.empty() && weights.size() + 1 != tokens.size()) {
    throw ValidationError(fmt::format("{} weights for {} predicted tokens", weights.size(),
                                      tokens.size() - 1));
  }
  accumulate_grad(
      params, brief, tokens, temperature,
      [&](std::span<const double>, std::span<double> out) {
        std::copy(weights.begin(), weights.end(), out.begin());
      },
      grad);
}

std::vector<double> LayoutPolicy::accumulate_grad(const PolicyParams& params,
                                                  const DesignBrief& brief,
                                                  std::span<const int> tokens, double temperature,
                                                  const TokenWeigher& weigh,
                                                  Eigen::Ref<Eigen::VectorXd> grad) const {
  check_prefix(tokens);
  if (grad.size() != params.theta.size()) {
    throw ValidationError("gradient buffer does not match the parameter vector");
  }
  const int h = hidden_size();
  const int v = vocab_size();
  std::vector<int> seq(tokens.begin(), tokens.end());
  Rollout r = run(*this, params, brief, seq, temperature, true, TeacherForced{});
  const auto n = static_cast<Eigen::Index>(r.logp.size());
  std::vector<double> weights(r.logp.size(), 0.0);
  weigh(r.logp, weights);

  const ConstNet net =
      view<ConstNet>(params.theta.data(), offsets_, h, kFeatureDim, v, kContextDim);
  MutNet g = view<MutNet>(grad.data(), offsets_, h, kFeatureDim, v, kContextDim);

  // Output-layer errors for every position at once: column t becomes
  // w_t (onehot(y_t) - p_t) / temperature.
  MatrixXd& dz = r.probs;
  for (Eigen::Index t = 0; t < n; ++t) {
    const double w = weights[static_cast<std::size_t>(t)];
    if (w == 0.0) {
      dz.col(t).setZero();
      continue;
    }
    if (!std::isfinite(r.logp[static_cast<std::size_t>(t)])) {
      throw ValidationError(fmt::format("token {} at position {} is masked out",
                                        seq[static_cast<std::size_t>(t) + 1], t + 1));
    }
    dz.col(t) *= -w;
    dz(seq[static_cast<std::size_t>(t) + 1], t) += w;
  }
  dz /= temperature;
  const auto next = r.h.rightCols(n);
  g.wo.noalias() += dz * next.transpose();
  g.bo += dz.rowwise().sum();
  const MatrixXd dh_out = net.wo.transpose() * dz;

  MatrixXd da(h, n);
  VectorXd dh = VectorXd::Zero(h);
  for (Eigen::Index t = n; t-- > 0;) {
    dh += dh_out.col(t);
    da.col(t) = dh.array() * (1.0 - next.col(t).array().square());
    dh.noalias() = net.wh.transpose() * da.col(t);
  }
  g.wh.noalias() += da * r.h.leftCols(n).transpose();
  g.p.noalias() += da * r.ctx.transpose();
  g.bh += da.rowwise().sum();
  for (Eigen::Index t = 0; t < n; ++t) g.e.col(seq[static_cast<std::size_t>(t)]) += da.col(t);
  const VectorXd d0 = dh.array() * (1.0 - r.h.col(0).array().square());
  g.wf.noalias() += d0 * features(brief).transpose();
  g.b0 += d0;
  return std::move(r.logp);
}

std::string checkpoint_json(const LayoutPolicy& policy, const PolicyParams& params) {
  nlohmann::json j;
  j["format"] = "roomalign-policy";
  j["version"] = 1;
  j["vocab_hash"] = fmt::format("{:016x}", policy.vocab().hash());
  j["vocab_size"] = policy.vocab_size();
  j["hidden_size"] = policy.hidden_size();
  j["feature_dim"] = LayoutPolicy::kFeatureDim;
  j["context_dim"] = LayoutPolicy::kContextDim;
  j["feature_keywords"] = feature_keywords();
  j["grammar_mask"] = policy.config().grammar_mask;
  j["step"] = params.step;
  j["theta"] = std::vector<double>(params.theta.data(), params.theta.data() + params.theta.size());
  return j.dump() + "\n";
}

PolicyParams parse_checkpoint(std::string_view document, const LayoutPolicy& policy) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(document);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(fmt::format("checkpoint is not valid JSON: {}", e.what()));
  }
  try {
    if (j.at("format") != "roomalign-policy" || j.at("version") != 1) {
      throw ValidationError("unsupported checkpoint format");
    }
    const std::string expected = fmt::format("{:016x}", policy.vocab().hash());
    if (j.at("vocab_hash").get<std::string>() != expected) {
      throw ValidationError(fmt::format("checkpoint vocabulary hash {} does not match {}",
                                        j.at("vocab_hash").get<std::string>(), expected));
    }
    if (j.at("hidden_size").get<int>() != policy.hidden_size() ||
        j.at("feature_dim").get<int>() != LayoutPolicy::kFeatureDim ||
        j.at("context_dim").get<int>() != LayoutPolicy::kContextDim ||
        j.at("feature_keywords").get<std::vector<std::string>>() != feature_keywords()) {
      throw ValidationError("checkpoint architecture does not match the configured policy");
    }
    const auto theta = j.at("theta").get<std::vector<double>>();
    if (theta.size() != policy.num_params()) {
      throw ValidationError(fmt::format("checkpoint holds {} parameters, policy has {}",
                                        theta.size(), policy.num_params()));
    }
    PolicyParams params;
    params.theta = Eigen::Map<const VectorXd>(theta.data(), static_cast<Eigen::Index>(theta.size()));
    params.step = j.at("step").get<long long>();
    if (!params.theta.allFinite()) throw ValidationError("checkpoint holds non-finite values");
    return params;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(fmt::format("malformed checkpoint: {}", e.what()));
  }
}

void save_checkpoint(const std::filesystem::path& path, const LayoutPolicy& policy,
                     const PolicyParams& params) {
  write_text_file(path, checkpoint_json(policy, params));
}

PolicyParams load_checkpoint(const std::filesystem::path& path, const LayoutPolicy& policy) {
  return parse_checkpoint(read_text_file(path), policy);
}

}  // namespace roomalign
