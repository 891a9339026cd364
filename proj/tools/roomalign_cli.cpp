#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "roomalign/aesthetics.hpp"
#include "roomalign/config.hpp"
#include "roomalign/default_configs.hpp"
#include "roomalign/errors.hpp"
#include "roomalign/feasibility.hpp"
#include "roomalign/harness.hpp"
#include "roomalign/pathway.hpp"
#include "roomalign/reward_gate.hpp"
#include "roomalign/scenarios.hpp"
#include "roomalign/scene_io.hpp"
#include "roomalign/schematic.hpp"
#include "roomalign/trainer.hpp"

namespace fs = std::filesystem;
using namespace roomalign;

namespace {

struct Globals {
  std::string config;
  std::string catalog;
  std::optional<std::uint64_t> seed;
  std::string out;
};

RunConfig run_config(const Globals& g) {
  RunConfig c = g.config.empty() ? default_run_config() : load_run_config(g.config);
  if (g.seed) c.grpo.rng_seed = *g.seed;
  return c;
}

const std::string& require_out(const Globals& g) {
  if (g.out.empty()) throw ValidationError("--out is required for this command");
  return g.out;
}

std::vector<double> parse_reals(const std::string& text, const std::string& what) {
  std::vector<double> out;
  for (const std::string& s : split_list(text, ',')) out.push_back(parse_double(s, what));
  return out;
}

int cmd_gen_instances(const Globals& g, const Catalog& catalog, const std::string& scenarios_file,
                      const std::string& names, int count) {
  std::vector<ScenarioTemplate> templates =
      parse_scenarios(scenarios_file.empty() ? std::string(defaults::kScenariosConfig)
                                             : read_text_file(scenarios_file),
                      catalog);
  if (!names.empty()) {
    std::vector<ScenarioTemplate> picked;
    for (const std::string& n : split_list(names, ',')) {
      auto it = std::find_if(templates.begin(), templates.end(),
                             [&](const ScenarioTemplate& t) { return t.name == n; });
      if (it == templates.end()) throw ValidationError(fmt::format("unknown scenario '{}'", n));
      picked.push_back(*it);
    }
    templates = std::move(picked);
  }
  const fs::path out = require_out(g);
  const auto briefs = gen_instances(templates, count, g.seed.value_or(0), catalog);
  for (const DesignBrief& b : briefs) write_text_file(out / (b.id + ".json"), save_brief(b, catalog));
  fmt::print("wrote {} briefs to {}\n", briefs.size(), out.string());
  return 0;
}

int cmd_train(const Globals& g, const Catalog& catalog, const std::string& briefs_dir,
              std::optional<int> steps) {
  RunConfig config = run_config(g);
  if (steps) config.grpo.max_steps = *steps;
  config.validate();
  const auto briefs = load_brief_directory(briefs_dir, catalog);
  const fs::path out = require_out(g);
  const PolicyParams params = train_to_directory(config, briefs, out, catalog);
  fmt::print("trained {} steps on {} briefs; outputs in {}\n", params.step, briefs.size(),
             out.string());
  return 0;
}

int cmd_evaluate(const Globals& g, const Catalog& catalog, const std::string& checkpoint,
                 const std::string& briefs_dir) {
  const RunConfig config = run_config(g);
  const TokenVocab vocab(catalog);
  const LayoutPolicy policy(vocab, config.policy);
  const PolicyParams params =
      checkpoint.empty() ? policy.init_params() : load_checkpoint(checkpoint, policy);
  const auto briefs = load_brief_directory(briefs_dir, catalog);
  const auto provider = make_provider(config, catalog);
  const EvalReport report = evaluate(policy, params, briefs, config, *provider, catalog);
  write_eval_outputs(report, require_out(g), catalog);
  fmt::print("{}", summary_csv(report));
  return 0;
}

FeasibilityWeights parse_weights(const std::string& text) {
  FeasibilityWeights w;
  if (text.empty()) return w;
  const auto v = parse_reals(text, "--weights");
  if (v.size() != 3) throw ValidationError("--weights expects three comma-separated values");
  w = {v[0], v[1], v[2]};
  w.validate();
  return w;
}

int cmd_verify(const Globals& g, const Catalog& catalog, const std::string& layout_file,
               const std::string& brief_file, const std::string& weights) {
  const RunConfig config = run_config(g);
  const Layout layout = load_layout(read_text_file(layout_file), catalog);
  const DesignBrief brief = load_brief(read_text_file(brief_file), catalog);
  const FeasibilityWeights w = weights.empty() ? config.feasibility : parse_weights(weights);
  const FeasibilityReport report = r_feas(layout, brief, w);
  nlohmann::json j = to_json(report, catalog);
  j["tau_gate"] = config.gate.tau_gate;
  j["passes_gate"] = report.r_feas >= config.gate.tau_gate;
  fmt::print("{}\n", j.dump(2));
  return report.r_feas >= config.gate.tau_gate ? 0 : 1;
}

int cmd_score(const Globals& g, const Catalog& catalog, const std::string& layout_file,
              const std::string& brief_file, const std::string& provider_name) {
  RunConfig config = run_config(g);
  if (!provider_name.empty()) config.provider = provider_name;
  config.validate();
  const Layout layout = load_layout(read_text_file(layout_file), catalog);
  const DesignBrief brief = load_brief(read_text_file(brief_file), catalog);
  const auto provider = make_provider(config, catalog);
  const StandardCritic critic(*provider, builtin_harmony_templates(), config.aesthetics, catalog);
  const std::vector<Layout> one{layout};
  const CandidateReward r =
      score_group(one, brief, config.feasibility, critic, config.gate).front();
  nlohmann::json j;
  j["feasibility"] = to_json(r.feasibility, catalog);
  j["aesthetics"] = r.aesthetics ? to_json(*r.aesthetics) : nlohmann::json(nullptr);
  j["reward"] = to_json(r.score);
  j["note"] = "a lone candidate normalizes to the degenerate value on both branches";
  fmt::print("{}\n", j.dump(2));
  return 0;
}

int cmd_render(const Globals& g, const Catalog& catalog, const std::string& layout_file,
               const std::string& raster, double cell) {
  const Layout layout = load_layout(read_text_file(layout_file), catalog);
  write_text_file(require_out(g), to_svg(layout, catalog));
  if (!raster.empty()) write_text_file(raster, to_ppm(project(layout, cell, catalog)));
  return 0;
}

int cmd_sweep(const Globals& g, const Catalog& catalog, const std::string& lambda,
              const std::string& values, const std::string& seeds,
              const std::string& briefs_dir, std::optional<int> steps) {
  RunConfig base = run_config(g);
  if (steps) base.grpo.max_steps = *steps;
  base.validate();
  const auto briefs = load_brief_directory(briefs_dir, catalog);
  std::vector<std::uint64_t> seed_list;
  for (const std::string& s : split_list(seeds, ',')) {
    const long long v = parse_int(s, "--seeds");
    if (v < 0) throw ValidationError("--seeds must be nonnegative");
    seed_list.push_back(static_cast<std::uint64_t>(v));
  }
  const std::vector<double> value_list = parse_reals(values, "--values");
  const SweepReport report =
      sensitivity_sweep(lambda, value_list, base, briefs, seed_list, catalog,
                        [](const SweepRow& r) {
                          fmt::print("lambda_{}={} seed={} oor={:.4f} cas={:.4f}\n", r.lambda,
                                     r.value, r.seed, r.oor, r.cas);
                        });
  const fs::path out = require_out(g);
  write_text_file(out / "sweep.csv", sweep_csv(report));
  write_text_file(out / "sweep_summary.csv", sweep_summary_csv(report));
  return 0;
}

int cmd_eval(const Globals& g, const Catalog& catalog, const std::string& layouts_dir,
             const std::string& brief_file) {
  const DesignBrief brief = load_brief(read_text_file(brief_file), catalog);
  const RunConfig config = run_config(g);
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(layouts_dir)) {
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw ValidationError(fmt::format("no layout files in '{}'", layouts_dir));
  std::string csv = "scene_id,oob,oor,phi_coll,phi_ergo,phi_func,r_feas,pathway_cost\n";
  for (const fs::path& f : files) {
    const Layout layout = load_layout(read_text_file(f), catalog);
    const std::vector<Layout> one{layout};
    const FeasibilityReport rep = r_feas(layout, brief, config.feasibility);
    const std::string pathway =
        layout.room.doors().empty() ? "nan" : fmt::format("{:.6f}", pathway_cost(layout, catalog).cost);
    fmt::format_to(std::back_inserter(csv), "{},{:.6f},{:.6f},{:.6f},{:.6f},{},{:.6f},{}\n",
                   f.stem().string(), oob_rate(one), oor_rate(one), rep.phi_coll, rep.phi_ergo,
                   rep.phi_func, rep.r_feas, pathway);
  }
  write_text_file(require_out(g), csv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Feasibility-gated layout alignment toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--config", g.config, "run configuration file (INI)");
  app.add_option("--catalog", g.catalog, "category and material catalog (INI)");
  app.add_option("--seed", g.seed, "random seed");
  app.add_option("--out", g.out, "output file or directory");

  std::string scenarios_file, names;
  int count = 20;
  auto* gen = app.add_subcommand("gen-instances", "write synthetic design briefs");
  gen->add_option("--scenarios", scenarios_file, "scenario template file");
  gen->add_option("--templates", names, "comma-separated template names");
  gen->add_option("--count", count, "number of briefs")->check(CLI::PositiveNumber);

  std::string briefs_dir;
  std::optional<int> steps;
  auto* train = app.add_subcommand("train", "train the layout policy");
  train->add_option("--briefs", briefs_dir, "directory of brief files")->required();
  train->add_option("--steps", steps, "override grpo.max_steps");

  std::string checkpoint;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "greedy-decode and score a checkpoint");
  evaluate_cmd->add_option("--checkpoint", checkpoint, "policy checkpoint (default: untrained)");
  evaluate_cmd->add_option("--briefs", briefs_dir, "directory of brief files")->required();

  std::string layout_file, brief_file, weights;
  auto* verify = app.add_subcommand("verify", "feasibility report for one layout");
  verify->add_option("--layout", layout_file)->required();
  verify->add_option("--brief", brief_file)->required();
  verify->add_option("--weights", weights, "lambda_coll,lambda_ergo,lambda_func");

  std::string provider;
  auto* score = app.add_subcommand("score", "reward breakdown for one layout");
  score->add_option("--layout", layout_file)->required();
  score->add_option("--brief", brief_file)->required();
  score->add_option("--provider", provider)->check(CLI::IsMember({"builtin", "remote"}));

  std::string raster;
  double cell = 0.05;
  auto* render = app.add_subcommand("render", "SVG and optional pixmap of a layout");
  render->add_option("--layout", layout_file)->required();
  render->add_option("--raster", raster, "pixmap output (plain-text P3)");
  render->add_option("--cell", cell, "raster cell size in meters");

  std::string lambda, values, seeds = "0,1,2";
  auto* sweep = app.add_subcommand("sweep", "train and evaluate over a branch weight");
  sweep->add_option("--lambda", lambda)->required()->check(CLI::IsMember({"feas", "aes"}));
  sweep->add_option("--values", values, "comma-separated values")->required();
  sweep->add_option("--seeds", seeds, "comma-separated seeds");
  sweep->add_option("--briefs", briefs_dir)->required();
  sweep->add_option("--steps", steps, "override grpo.max_steps");

  std::string layouts_dir;
  auto* eval = app.add_subcommand("eval", "metrics table for a directory of layouts");
  eval->add_option("--layouts", layouts_dir)->required();
  eval->add_option("--brief", brief_file)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const Catalog catalog =
        g.catalog.empty() ? Catalog::builtin() : load_catalog(g.catalog);
    if (*gen) return cmd_gen_instances(g, catalog, scenarios_file, names, count);
    if (*train) return cmd_train(g, catalog, briefs_dir, steps);
    if (*evaluate_cmd) return cmd_evaluate(g, catalog, checkpoint, briefs_dir);
    if (*verify) return cmd_verify(g, catalog, layout_file, brief_file, weights);
    if (*score) return cmd_score(g, catalog, layout_file, brief_file, provider);
    if (*render) return cmd_render(g, catalog, layout_file, raster, cell);
    if (*sweep) return cmd_sweep(g, catalog, lambda, values, seeds, briefs_dir, steps);
    if (*eval) return cmd_eval(g, catalog, layouts_dir, brief_file);
  } catch (const ValidationError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 2;
  } catch (const UnsatisfiableError& e) {
    fmt::print(stderr, "unsatisfiable: {}\n", e.what());
    return 3;
  } catch (const ProviderError& e) {
    fmt::print(stderr, "provider failure: {}\n", e.what());
    return 4;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  }
  return 0;
}
