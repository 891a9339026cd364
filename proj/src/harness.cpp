#include "roomalign/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include <fmt/format.h>

#include "roomalign/aesthetics.hpp"
#include "roomalign/errors.hpp"
#include "roomalign/feasibility.hpp"
#include "roomalign/pathway.hpp"
#include "roomalign/scene_io.hpp"
#include "roomalign/schematic.hpp"

namespace roomalign {

double alignment_score(const Layout& layout, const DesignBrief& brief,
                       const EmbeddingProvider& provider, double cell_size,
                       const Catalog& catalog) {
  return s_style(layout, brief, provider, cell_size, catalog);
}

SummaryRow summarize(std::string name, std::span<const SceneRow> rows) {
  SummaryRow out;
  out.scenario = std::move(name);
  out.scenes = static_cast<int>(rows.size());
  int oob_objects = 0;
  int gated = 0;
  int pathway_scenes = 0;
  for (const SceneRow& r : rows) {
    out.objects += r.objects;
    oob_objects += r.out_of_bounds;
    out.oor += r.oor;
    out.cas += r.cas;
    if (r.gated) ++gated;
    if (std::isfinite(r.pathway_cost)) {
      out.pathway_cost += r.pathway_cost;
      ++pathway_scenes;
    }
  }
  if (rows.empty()) return out;
  const double n = static_cast<double>(rows.size());
  out.oob = out.objects > 0 ? 100.0 * oob_objects / out.objects : 0.0;
  out.oor /= n;
  out.cas /= n;
  out.pass_rate = gated / n;
  out.pathway_cost = pathway_scenes > 0 ? out.pathway_cost / pathway_scenes
                                        : std::numeric_limits<double>::quiet_NaN();
  return out;
}

EvalReport evaluate(const LayoutPolicy& policy, const PolicyParams& params,
                    std::span<const DesignBrief> briefs, const RunConfig& config,
                    const EmbeddingProvider& provider, const Catalog& catalog) {
  if (briefs.empty()) throw ValidationError("evaluation needs at least one brief");
  EvalReport report;
  report.seed = config.grpo.rng_seed;
  report.config_hash = config_hash(config);
  report.checkpoint_step = params.step;
  for (std::size_t k = 0; k < briefs.size(); ++k) {
    const DesignBrief& brief = briefs[k];
    const TokenTrace trace = policy.greedy(params, brief);
    DecodeResult decoded = decode(trace.tokens, brief, policy.vocab());
    const Layout& layout = decoded.layout;
    SceneRow row;
    row.id = brief.id.empty() ? fmt::format("scene_{:03d}", k) : brief.id;
    row.scenario = brief.scenario.empty() ? "custom" : brief.scenario;
    row.status = decoded.status;
    row.objects = static_cast<int>(layout.objects.size());
    for (const ObjectInstance& o : layout.objects) {
      if (!rect_inside(footprint(o), layout.room.boundary())) ++row.out_of_bounds;
    }
    row.oob = row.objects > 0 ? 100.0 * row.out_of_bounds / row.objects : 0.0;
    row.oor = overlap_percent(layout);
    const FeasibilityReport f = r_feas(layout, brief, config.feasibility);
    row.phi_coll = f.phi_coll;
    row.phi_ergo = f.phi_ergo;
    row.phi_func = f.phi_func;
    row.r_feas = f.r_feas;
    row.gated = f.r_feas >= config.gate.tau_gate;
    if (layout.room.doors().empty()) {
      row.pathway_cost = std::numeric_limits<double>::quiet_NaN();
    } else {
      const PathwayResult p = pathway_cost(layout, catalog);
      row.pathway_cost = p.cost;
      row.unreachable = static_cast<int>(p.unreachable.size());
    }
    row.cas = alignment_score(layout, brief, provider, config.aesthetics.cell_size, catalog);
    report.scenes.push_back(std::move(row));
    report.layouts.push_back(std::move(decoded.layout));
  }
  std::map<std::string, std::vector<SceneRow>> groups;
  for (const SceneRow& r : report.scenes) groups[r.scenario].push_back(r);
  for (const auto& [name, rows] : groups) report.scenarios.push_back(summarize(name, rows));
  report.aggregate = summarize("all", report.scenes);
  return report;
}

namespace {

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  return fmt::format("{:.6f}", v);
}

}  // namespace

std::string scenes_csv(const EvalReport& report) {
  std::string out =
      "scene_id,scenario,status,objects,oob,oor,phi_coll,phi_ergo,phi_func,r_feas,gated,"
      "pathway_cost,unreachable,cas,cas_x100\n";
  for (const SceneRow& r : report.scenes) {
    fmt::format_to(std::back_inserter(out), "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", r.id,
                   r.scenario, to_string(r.status), r.objects, num(r.oob), num(r.oor),
                   num(r.phi_coll), num(r.phi_ergo), r.phi_func, num(r.r_feas), r.gated ? 1 : 0,
                   num(r.pathway_cost), r.unreachable, num(r.cas), num(100.0 * r.cas));
  }
  return out;
}

std::string summary_csv(const EvalReport& report) {
  std::string out = "scenario,scenes,objects,oob,oor,pathway_cost,cas,cas_x100,pass_rate\n";
  auto row = [&](const SummaryRow& r) {
    fmt::format_to(std::back_inserter(out), "{},{},{},{},{},{},{},{},{}\n", r.scenario, r.scenes,
                   r.objects, num(r.oob), num(r.oor), num(r.pathway_cost), num(r.cas),
                   num(100.0 * r.cas), num(r.pass_rate));
  };
  for (const SummaryRow& r : report.scenarios) row(r);
  row(report.aggregate);
  return out;
}

namespace {

nlohmann::json finite_or_null(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

nlohmann::json summary_json(const SummaryRow& r) {
  return {{"scenario", r.scenario},   {"scenes", r.scenes},
          {"objects", r.objects},     {"oob", r.oob},
          {"oor", r.oor},             {"pathway_cost", finite_or_null(r.pathway_cost)},
          {"cas", r.cas},             {"cas_x100", 100.0 * r.cas},
          {"pass_rate", r.pass_rate}};
}

}  // namespace

nlohmann::json report_json(const EvalReport& report) {
  nlohmann::json j;
  j["metadata"] = {{"seed", report.seed},
                   {"config_hash", fmt::format("{:016x}", report.config_hash)},
                   {"checkpoint_step", report.checkpoint_step},
                   {"decoding", "greedy"},
                   {"cas_scale", "cas_x100 is 100 x the raw cosine, a display convention"}};
  j["scenes"] = nlohmann::json::array();
  for (const SceneRow& r : report.scenes) {
    j["scenes"].push_back({{"scene_id", r.id},
                           {"scenario", r.scenario},
                           {"status", to_string(r.status)},
                           {"objects", r.objects},
                           {"out_of_bounds", r.out_of_bounds},
                           {"oob", r.oob},
                           {"oor", r.oor},
                           {"phi_coll", r.phi_coll},
                           {"phi_ergo", r.phi_ergo},
                           {"phi_func", r.phi_func},
                           {"r_feas", r.r_feas},
                           {"gated", r.gated},
                           {"pathway_cost", finite_or_null(r.pathway_cost)},
                           {"unreachable", r.unreachable},
                           {"cas", r.cas}});
  }
  j["scenarios"] = nlohmann::json::array();
  for (const SummaryRow& r : report.scenarios) j["scenarios"].push_back(summary_json(r));
  j["aggregate"] = summary_json(report.aggregate);
  return j;
}

void write_eval_outputs(const EvalReport& report, const std::filesystem::path& out_dir,
                        const Catalog& catalog) {
  write_text_file(out_dir / "report.csv", summary_csv(report));
  write_text_file(out_dir / "scenes.csv", scenes_csv(report));
  write_text_file(out_dir / "report.json", report_json(report).dump(2) + "\n");
  for (std::size_t k = 0; k < report.scenes.size(); ++k) {
    const std::string& id = report.scenes[k].id;
    write_text_file(out_dir / "layouts" / (id + ".json"), save_layout(report.layouts[k], catalog));
    write_text_file(out_dir / "renders" / (id + ".svg"), to_svg(report.layouts[k], catalog));
  }
}

RunConfig sweep_config(const RunConfig& base, std::string_view lambda_name, double value,
                       std::uint64_t seed) {
  RunConfig c = base;
  if (lambda_name == "feas") {
    c.gate.lambda_feas = value;
  } else if (lambda_name == "aes") {
    c.gate.lambda_aes = value;
  } else {
    throw ValidationError(fmt::format("unknown sweep parameter '{}' (feas or aes)", lambda_name));
  }
  c.grpo.rng_seed = seed;
  c.policy.init_seed = seed;
  c.validate();
  return c;
}

SweepReport sensitivity_sweep(std::string_view lambda_name, std::span<const double> values,
                              const RunConfig& base, std::span<const DesignBrief> briefs,
                              std::span<const std::uint64_t> seeds, const Catalog& catalog,
                              const std::function<void(const SweepRow&)>& on_row) {
  if (values.empty() || seeds.empty()) {
    throw ValidationError("a sweep needs at least one value and one seed");
  }
  SweepReport report;
  for (double value : values) {
    SweepSummary summary;
    summary.value = value;
    std::vector<double> oor;
    std::vector<double> cas;
    for (std::uint64_t seed : seeds) {
      const RunConfig config = sweep_config(base, lambda_name, value, seed);
      Trainer trainer(config, std::vector<DesignBrief>(briefs.begin(), briefs.end()), catalog);
      std::vector<double> pass;
      trainer.run([&](const StepMetrics& m) { pass.push_back(m.pass_rate); });
      const EvalReport eval = evaluate(trainer.policy(), trainer.params(), briefs, config,
                                       *make_provider(config, catalog), catalog);
      SweepRow row;
      row.lambda = std::string(lambda_name);
      row.value = value;
      row.seed = seed;
      row.oor = eval.aggregate.oor;
      row.oob = eval.aggregate.oob;
      row.cas = eval.aggregate.cas;
      row.pass_rate = eval.aggregate.pass_rate;
      const std::size_t tail = std::min<std::size_t>(100, pass.size());
      for (std::size_t i = pass.size() - tail; i < pass.size(); ++i) row.train_pass_rate += pass[i];
      if (tail > 0) row.train_pass_rate /= static_cast<double>(tail);
      oor.push_back(row.oor);
      cas.push_back(row.cas);
      if (on_row) on_row(row);
      report.rows.push_back(row);
    }
    auto mean_std = [](const std::vector<double>& v) {
      double mean = 0.0;
      for (double x : v) mean += x;
      mean /= static_cast<double>(v.size());
      double var = 0.0;
      for (double x : v) var += (x - mean) * (x - mean);
      return std::pair{mean, std::sqrt(var / static_cast<double>(v.size()))};
    };
    summary.seeds = static_cast<int>(seeds.size());
    std::tie(summary.oor_mean, summary.oor_std) = mean_std(oor);
    std::tie(summary.cas_mean, summary.cas_std) = mean_std(cas);
    report.summary.push_back(summary);
  }
  return report;
}

std::string sweep_csv(const SweepReport& report) {
  std::string out = "lambda,value,seed,oor,oob,cas,pass_rate,train_pass_rate\n";
  for (const SweepRow& r : report.rows) {
    fmt::format_to(std::back_inserter(out), "{},{},{},{},{},{},{},{}\n", r.lambda, r.value, r.seed,
                   num(r.oor), num(r.oob), num(r.cas), num(r.pass_rate), num(r.train_pass_rate));
  }
  return out;
}

std::string sweep_summary_csv(const SweepReport& report) {
  std::string out = "value,seeds,oor_mean,oor_std,cas_mean,cas_std\n";
  for (const SweepSummary& s : report.summary) {
    fmt::format_to(std::back_inserter(out), "{},{},{},{},{},{}\n", s.value, s.seeds,
                   num(s.oor_mean), num(s.oor_std), num(s.cas_mean), num(s.cas_std));
  }
  return out;
}

std::vector<DesignBrief> load_brief_directory(const std::filesystem::path& dir,
                                              const Catalog& catalog) {
  if (!std::filesystem::is_directory(dir)) {
    throw ValidationError(fmt::format("'{}' is not a directory", dir.string()));
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<DesignBrief> out;
  for (const auto& f : files) {
    try {
      out.push_back(load_brief(read_text_file(f), catalog));
    } catch (const ValidationError& e) {
      throw ValidationError(fmt::format("{}: {}", f.filename().string(), e.what()));
    }
  }
  if (out.empty()) throw ValidationError(fmt::format("no brief files in '{}'", dir.string()));
  return out;
}

}  // namespace roomalign
