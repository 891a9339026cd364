#include <filesystem>
#include <set>

#include "doctest.h"
#include "roomalign/aesthetics.hpp"
#include "roomalign/errors.hpp"
#include "roomalign/feasibility.hpp"
#include "roomalign/harness.hpp"
#include "roomalign/scenarios.hpp"
#include "roomalign/scene_io.hpp"
#include "support.hpp"

using namespace roomalign;
using namespace testutil;

namespace {

class EqualProvider final : public EmbeddingProvider {
 public:
  std::size_t dimension() const override { return 2; }
  Embedding embed_image(const SchematicRaster&) const override { return {{0.6, 0.8}, false}; }
  Embedding embed_text(std::string_view) const override { return {{0.6, 0.8}, false}; }
};

const ScenarioTemplate& scenario(const std::string& name) {
  for (const ScenarioTemplate& t : builtin_scenarios()) {
    if (t.name == name) return t;
  }
  throw std::runtime_error("no scenario " + name);
}

RunConfig tiny_config() {
  return parse_run_config(R"(
[policy]
hidden_size = 8
[grpo]
group_size = 2
max_steps = 2
)");
}

}  // namespace

TEST_CASE("instance generation is deterministic") {
  const auto a = gen_instances(builtin_scenarios(), 14, 3);
  const auto b = gen_instances(builtin_scenarios(), 14, 3);
  REQUIRE(a.size() == 14);
  for (std::size_t k = 0; k < a.size(); ++k) CHECK(save_brief(a[k]) == save_brief(b[k]));
  std::set<std::string> ids;
  std::set<std::string> scenarios;
  for (const DesignBrief& br : a) {
    ids.insert(br.id);
    scenarios.insert(br.scenario);
    CHECK_NOTHROW(validate(br, Catalog::builtin()));
  }
  CHECK(ids.size() == 14);
  CHECK(scenarios.size() == builtin_scenarios().size());
  CHECK(save_brief(gen_instances(builtin_scenarios(), 14, 4)[0]) != save_brief(a[0]));
}

TEST_CASE("stress scenarios") {
  const std::vector<ScenarioTemplate> office{scenario("small_office")};
  for (const DesignBrief& b : gen_instances(office, 5, 9)) {
    const Rect box = b.room.bounds();
    CHECK(box.width() <= 2.5 + 1e-9);
    CHECK(box.height() <= 3.0 + 1e-9);
    CHECK(b.required_categories.at(category("desk")) == 1);
    CHECK(b.required_categories.at(category("chair")) == 1);
  }
  const ScenarioTemplate& vampire = scenario("vampire_bedroom");
  CHECK(vampire.required.count(category("coffin")) == 1);
  CHECK(scenario("musician_studio").required.count(category("piano")) == 1);
}

TEST_CASE("every built-in scenario admits a feasible witness") {
  Rng rng{131};
  for (const ScenarioTemplate& t : builtin_scenarios()) {
    const DesignBrief b = instantiate(t, rng, t.name + "_x");
    const PlacementSearch s = find_feasible_layout(b, rng);
    REQUIRE(s.witness);
    CHECK(r_feas(*s.witness, b).r_feas == 0.0);
  }
}

TEST_CASE("unsatisfiable templates are reported") {
  const auto crowded = parse_scenarios(R"(
[scenario:closet]
kind = stress
width = 2.0, 2.0
depth = 2.0, 2.0
required = wardrobe:30
adjacency =
clearance =
style = modern
atmosphere = dark
)");
  CHECK_THROWS_AS(gen_instances(crowded, 1, 0), UnsatisfiableError);
  const auto packed = parse_scenarios(R"(
[scenario:closet]
kind = stress
width = 2.0, 2.0
depth = 2.0, 2.0
required = wardrobe:8
adjacency =
clearance =
style = modern
atmosphere = dark
)");
  CHECK_THROWS_AS(gen_instances(packed, 1, 0), UnsatisfiableError);
}

TEST_CASE("alignment score is the style term") {
  const AttributeEmbedder embedder;
  Rng rng{132};
  const auto briefs = gen_instances(builtin_scenarios(), 7, 5);
  for (int trial = 0; trial < 100; ++trial) {
    const Layout layout = random_scene(rng, 1 + static_cast<int>(rng.below(8)));
    const DesignBrief& b = briefs[static_cast<std::size_t>(trial) % briefs.size()];
    CHECK(std::abs(alignment_score(layout, b, embedder) - s_style(layout, b, embedder)) <= 1e-12);
  }
  const Layout any = random_scene(rng, 3);
  CHECK(alignment_score(any, briefs[0], EqualProvider()) == doctest::Approx(1.0));
}

TEST_CASE("gothic materials align better with a gothic brief") {
  const AttributeEmbedder embedder;
  DesignBrief brief;
  brief.room = room_with_door(4, 4);
  brief.style_keywords = {"gothic"};
  brief.atmosphere_keyword = "dark";
  Layout gothic;
  gothic.room = brief.room;
  gothic.objects = {box("coffin", 2, 2.5, 0.8, 2.0, 0.6, "ebony"),
                    box("wardrobe", 3.2, 0.6, 1.2, 0.6, 2.1, "velvet")};
  Layout neutral = gothic;
  for (ObjectInstance& o : neutral.objects) o.material_id = material("linen");
  CHECK(alignment_score(gothic, brief, embedder) > alignment_score(neutral, brief, embedder));
}

TEST_CASE("evaluation smoke run and aggregate recomputation") {
  const RunConfig config = default_run_config();
  const TokenVocab vocab;
  const LayoutPolicy policy(vocab, config.policy);
  const PolicyParams params = policy.init_params();
  const auto briefs = gen_instances(builtin_scenarios(), 20, 11);
  const AttributeEmbedder embedder;
  const EvalReport report = evaluate(policy, params, briefs, config, embedder);
  REQUIRE(report.scenes.size() == 20);
  REQUIRE(report.layouts.size() == 20);
  for (const SceneRow& r : report.scenes) {
    CHECK(std::isfinite(r.oob));
    CHECK(std::isfinite(r.oor));
    CHECK(std::isfinite(r.pathway_cost));
    CHECK(std::isfinite(r.cas));
    CHECK(std::isfinite(r.r_feas));
  }

  CHECK(report.aggregate.oob == doctest::Approx(oob_rate(report.layouts)).epsilon(1e-12));
  CHECK(report.aggregate.oor == doctest::Approx(oor_rate(report.layouts)).epsilon(1e-12));
  double cas = 0.0;
  double path = 0.0;
  int gated = 0;
  int objects = 0;
  for (std::size_t k = 0; k < 20; ++k) {
    const SceneRow& r = report.scenes[k];
    cas += r.cas;
    path += r.pathway_cost;
    gated += r.gated;
    objects += r.objects;
    CHECK(r.objects == static_cast<int>(report.layouts[k].objects.size()));
    CHECK(r.r_feas == r_feas(report.layouts[k], briefs[k]).r_feas);
  }
  CHECK(report.aggregate.scenes == 20);
  CHECK(report.aggregate.objects == objects);
  CHECK(report.aggregate.cas == doctest::Approx(cas / 20));
  CHECK(report.aggregate.pathway_cost == doctest::Approx(path / 20));
  CHECK(report.aggregate.pass_rate == doctest::Approx(gated / 20.0));
  int per_scenario = 0;
  for (const SummaryRow& s : report.scenarios) per_scenario += s.scenes;
  CHECK(per_scenario == 20);

  const std::string summary = summary_csv(report);
  CHECK(std::count(summary.begin(), summary.end(), '\n') ==
        static_cast<long>(report.scenarios.size()) + 2);
  CHECK(scenes_csv(report) == scenes_csv(evaluate(policy, params, briefs, config, embedder)));
  CHECK(report_json(report)["aggregate"]["scenes"] == 20);
}

TEST_CASE("evaluation outputs on disk") {
  const RunConfig config = default_run_config();
  const TokenVocab vocab;
  const LayoutPolicy policy(vocab, config.policy);
  const auto briefs = gen_instances(builtin_scenarios(), 3, 12);
  const EvalReport report =
      evaluate(policy, policy.init_params(), briefs, config, AttributeEmbedder());
  const auto dir = std::filesystem::temp_directory_path() / "roomalign_test_eval";
  std::filesystem::remove_all(dir);
  write_eval_outputs(report, dir);
  for (const char* f : {"report.csv", "scenes.csv", "report.json"}) {
    CHECK(std::filesystem::exists(dir / f));
  }
  for (const DesignBrief& b : briefs) {
    CHECK(std::filesystem::exists(dir / "layouts" / (b.id + ".json")));
    CHECK(std::filesystem::exists(dir / "renders" / (b.id + ".svg")));
  }
  std::filesystem::remove_all(dir);

  const auto bdir = std::filesystem::temp_directory_path() / "roomalign_test_briefs";
  std::filesystem::remove_all(bdir);
  for (const DesignBrief& b : briefs) write_text_file(bdir / (b.id + ".json"), save_brief(b));
  const auto loaded = load_brief_directory(bdir);
  REQUIRE(loaded.size() == 3);
  for (std::size_t k = 0; k < 3; ++k) CHECK(save_brief(loaded[k]) == save_brief(briefs[k]));
  std::filesystem::remove_all(bdir);
}

TEST_CASE("sweep bookkeeping") {
  const auto briefs = gen_instances(builtin_scenarios(), 2, 13);
  const std::vector<double> values{0.5, 0.9};
  const std::vector<std::uint64_t> seeds{1, 2, 3};
  int seen = 0;
  const SweepReport r = sensitivity_sweep("aes", values, tiny_config(), briefs, seeds,
                                          Catalog::builtin(),
                                          [&](const SweepRow&) { ++seen; });
  CHECK(r.rows.size() == 6);
  CHECK(seen == 6);
  REQUIRE(r.summary.size() == 2);
  double mean = 0.0;
  for (int k = 0; k < 3; ++k) mean += r.rows[static_cast<std::size_t>(k)].oor;
  CHECK(r.summary[0].oor_mean == doctest::Approx(mean / 3));
  CHECK(r.summary[0].seeds == 3);
  const std::string csv = sweep_csv(r);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);

  const std::vector<double> one{0.5};
  const std::vector<std::uint64_t> one_seed{1};
  const SweepReport single =
      sensitivity_sweep("feas", one, tiny_config(), briefs, one_seed);
  CHECK(single.rows.size() == 1);
  CHECK_THROWS_AS(sweep_config(tiny_config(), "beta", 0.5, 1), ValidationError);
  const RunConfig swept = sweep_config(tiny_config(), "feas", 0.0, 7);
  CHECK(swept.gate.lambda_feas == 0.0);
  CHECK(swept.grpo.rng_seed == 7);
  CHECK(swept.policy.init_seed == 7);
}
