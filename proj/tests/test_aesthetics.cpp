#include <atomic>
#include <cmath>
#include <thread>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "doctest.h"
#include "httplib.h"
#include "roomalign/aesthetics.hpp"
#include "roomalign/embedding.hpp"
#include "roomalign/errors.hpp"
#include "support.hpp"

using namespace roomalign;
using namespace testutil;

namespace {

// Returns fixed vectors and counts calls.
class StubProvider final : public EmbeddingProvider {
 public:
  StubProvider(std::vector<double> image, std::vector<double> text)
      : image_(std::move(image)), text_(std::move(text)) {}
  std::size_t dimension() const override { return image_.size(); }
  Embedding embed_image(const SchematicRaster&) const override {
    ++calls;
    return {image_, false};
  }
  Embedding embed_text(std::string_view) const override { return {text_, false}; }
  mutable std::atomic<int> calls{0};

 private:
  std::vector<double> image_;
  std::vector<double> text_;
};

DesignBrief brief_with(std::vector<std::string> styles, std::string atmosphere,
                       const RoomSpec& room) {
  DesignBrief b;
  b.room = room;
  b.style_keywords = std::move(styles);
  b.atmosphere_keyword = std::move(atmosphere);
  return b;
}

Layout bedroom(const std::string& mat_a, const std::string& mat_b) {
  Layout layout;
  layout.room = room_with_door(4, 4);
  layout.objects = {box("bed", 2, 2.5, 1.4, 2.0, 0.5, mat_a),
                    box("wardrobe", 3.2, 0.6, 1.2, 0.6, 2.1, mat_b),
                    box("bookshelf", 0.5, 3.5, 0.9, 0.35, 1.9, mat_a)};
  return layout;
}

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

TEST_CASE("s_style with stub vectors") {
  const Layout layout = bedroom("oak", "oak");
  const DesignBrief brief = brief_with({"modern"}, "warm", layout.room);
  CHECK(s_style(layout, brief, StubProvider({0.6, 0.8}, {0.6, 0.8})) == doctest::Approx(1.0));
  CHECK(s_style(layout, brief, StubProvider({1, 0}, {0, 1})) == 0.0);
  CHECK(s_style(layout, brief, StubProvider({1, 0}, {-1, 0})) == doctest::Approx(-1.0));
}

TEST_CASE("gothic materials score higher for a gothic brief") {
  const AttributeEmbedder embedder;
  const Layout dark = bedroom("ebony", "velvet");
  const Layout bright = bedroom("chrome", "glass");
  const DesignBrief brief = brief_with({"gothic"}, "dark", dark.room);
  CHECK(s_style(dark, brief, embedder) > s_style(bright, brief, embedder));
}

TEST_CASE("minimalist prefers low saturation") {
  const AttributeEmbedder embedder;
  const Layout plain = bedroom("linen", "linen");
  const Layout loud = bedroom("teal", "velvet");
  const DesignBrief brief = brief_with({"minimalist"}, "neutral", plain.room);
  CHECK(s_style(plain, brief, embedder) > s_style(loud, brief, embedder));
}

TEST_CASE("style text is sorted keywords then atmosphere, and order free") {
  const Layout layout = bedroom("oak", "linen");
  DesignBrief a = brief_with({"scandinavian", "minimalist"}, "cozy", layout.room);
  DesignBrief b = brief_with({"minimalist", "scandinavian"}, "cozy", layout.room);
  CHECK(style_text(a) == "minimalist scandinavian cozy");
  const AttributeEmbedder embedder;
  CHECK(s_style(layout, a, embedder) == s_style(layout, b, embedder));
}

TEST_CASE("s_comp closed forms") {
  Layout layout;
  layout.room = room_with_door(4, 4);
  layout.objects = {box("chair", 2, 2, 0.5, 0.5, 0.9)};
  CHECK(s_comp(layout, 1.0) == doctest::Approx(1.0));
  const double sigma = 0.7;
  layout.objects[0].x = 2 + sigma;  // distance sigma * sqrt(2)
  layout.objects[0].y = 2 + sigma;
  CHECK(s_comp(layout, sigma) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  layout.objects = {box("chair", 1, 1.5, 0.5, 0.5, 0.9), box("chair", 3, 2.5, 0.5, 0.5, 0.9)};
  CHECK(s_comp(layout, 0.3) == doctest::Approx(1.0));
  // Saliency and area weight the center of mass: a bed (1.5) outweighs a
  // chair (1.0) of smaller area.
  layout.objects = {box("bed", 1, 2, 1.4, 2.0, 0.5), box("chair", 3, 2, 0.5, 0.5, 0.9)};
  const double wb = 1.4 * 2.0 * 1.5;
  const double wc = 0.25;
  const double cx = (wb * 1 + wc * 3) / (wb + wc);
  CHECK(s_comp(layout, 1.0) ==
        doctest::Approx(std::exp(-(cx - 2) * (cx - 2) / 2.0)).epsilon(1e-12));
}

TEST_CASE("s_comp empty layout is flagged zero; translation invariant") {
  Layout layout;
  layout.room = room_with_door(4, 4);
  bool empty = false;
  CHECK(s_comp(layout, 1.0, Catalog::builtin(), &empty) == 0.0);
  CHECK(empty);
  CHECK_THROWS_AS(s_comp(layout, 0.0), ValidationError);
  Rng rng{71};
  for (int trial = 0; trial < 50; ++trial) {
    const Layout s = random_scene(rng, 1 + static_cast<int>(rng.below(8)));
    const double v = s_comp(s, 0.8);
    CHECK(v > 0.0);
    CHECK(v <= 1.0);
    const Layout t = s.translated({rng.uniform(-9, 9), rng.uniform(-9, 9)});
    CHECK(s_comp(t, 0.8) == doctest::Approx(v).epsilon(1e-9));
  }
}

TEST_CASE("default sigma is a quarter of the diagonal") {
  CHECK(default_sigma(RoomSpec::rectangle(3, 4)) == doctest::Approx(1.25));
}

TEST_CASE("s_harm equals one when the histogram matches the template") {
  const Layout layout = bedroom("oak", "teal");
  const HarmonyTemplate t{"match", color_histogram(layout)};
  CHECK(s_harm(layout, t) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("s_harm against a concentrated template by hand summation") {
  Layout empty;
  empty.room = room_with_door(4, 4);
  std::array<double, kHistogramBins> mass{};
  mass[3] = 1.0;
  const HarmonyTemplate t{"spike", smooth(mass)};
  CHECK(t.target.bins[3] == doctest::Approx(1.001 / 1.014));
  // Uniform layout histogram against the spike.
  double kl = 0.0;
  const double u = 1.0 / 14.0;
  const double spike = 1.001 / 1.014;
  const double floor = 0.001 / 1.014;
  for (int i = 0; i < 14; ++i) kl += u * std::log(u / (i == 3 ? spike : floor));
  CHECK(s_harm(empty, t) == doctest::Approx(1.0 / (1.0 + kl)).epsilon(1e-12));
}

TEST_CASE("s_harm falls as mass leaves the template's dominant bin") {
  // Move footprint area from oak (the warm template's strongest bin) to
  // teal (a bin the template leaves empty).
  const HarmonyTemplates& templates = builtin_harmony_templates();
  const HarmonyTemplate& warm = templates.at("warm");
  std::size_t dominant = 0;
  for (std::size_t i = 0; i < kHistogramBins; ++i) {
    if (warm.target.bins[i] > warm.target.bins[dominant]) dominant = i;
  }
  REQUIRE(color_bin(Catalog::builtin().material(material("oak")).base_color) == dominant);
  const std::size_t teal = color_bin(Catalog::builtin().material(material("teal")).base_color);
  REQUIRE(warm.target.bins[teal] < 0.01);
  double previous = 2.0;
  for (int k = 0; k < 5; ++k) {
    Layout layout;
    layout.room = room_with_door(6, 6);
    const double moved = 0.2 * k + 0.1;
    layout.objects = {box("rug", 2, 2, 2.0 * (1.0 - moved), 1.0, 0.01, "oak"),
                      box("rug", 4, 4, 2.0 * moved, 1.0, 0.01, "teal")};
    const double v = s_harm(layout, warm);
    CHECK(v < previous);
    CHECK(v > 0.0);
    previous = v;
  }
}

TEST_CASE("template parsing and fallback") {
  const HarmonyTemplates t = parse_harmony_templates("[x]\nbins = 1,0,0,0,0,0,0,0,0,0,0,0,0,0\n");
  CHECK(t.at("x").target.bins[0] == doctest::Approx(1.001 / 1.014));
  CHECK_THROWS_AS(parse_harmony_templates("[x]\nbins = 1,2\n"), ValidationError);
  CHECK_THROWS_AS(parse_harmony_templates("[x]\nbins = -1,0,0,0,0,0,0,0,0,0,0,0,0,2\n"),
                  ValidationError);
  const HarmonyTemplate u = resolve_template(t, "nonexistent");
  CHECK(u.name == "uniform");
  for (double b : u.target.bins) CHECK(b == doctest::Approx(1.0 / 14));
}

TEST_CASE("r_aes projections, bound and linearity") {
  const Layout layout = bedroom("oak", "walnut");
  const DesignBrief brief = brief_with({"classic"}, "warm", layout.room);
  const AttributeEmbedder embedder;
  const HarmonyTemplates& templates = builtin_harmony_templates();

  AestheticWeights only_harm{0, 0, 1};
  const AestheticBreakdown h = r_aes(layout, brief, embedder, templates, only_harm);
  CHECK(h.r_aes == h.s_harm);
  CHECK(h.harmony_template == "warm");

  AestheticWeights w{0.2, 0.3, 0.5};
  const AestheticBreakdown a = r_aes(layout, brief, embedder, templates, w);
  CHECK(a.r_aes == doctest::Approx(0.2 * a.s_style + 0.3 * a.s_comp + 0.5 * a.s_harm));
  w.lambda_co = 0.6;
  const AestheticBreakdown b = r_aes(layout, brief, embedder, templates, w);
  CHECK(b.r_aes - (0.2 * b.s_style + 0.5 * b.s_harm) ==
        doctest::Approx(2.0 * (a.r_aes - (0.2 * a.s_style + 0.5 * a.s_harm))));

  // Maximum: centered object, histogram equal to the template, equal vectors.
  Layout best;
  best.room = room_with_door(4, 4);
  best.objects = {box("chair", 2, 2, 0.5, 0.5, 0.9, "teal")};
  HarmonyTemplates own{{"match", {"match", color_histogram(best)}}};
  const DesignBrief match_brief = brief_with({"modern"}, "match", best.room);
  const AestheticBreakdown top =
      r_aes(best, match_brief, StubProvider({1, 0}, {1, 0}), own, {1, 1, 1});
  CHECK(top.r_aes == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("weights validation") {
  CHECK_THROWS_AS((AestheticWeights{-0.1, 0.5, 0.5}.validate()), ValidationError);
  AestheticWeights bad_sigma;
  bad_sigma.sigma = -1;
  CHECK_THROWS_AS(bad_sigma.validate(), ValidationError);
}

TEST_CASE("attribute embedder determinism and normalization") {
  const AttributeEmbedder embedder;
  Rng rng{72};
  for (int trial = 0; trial < 100; ++trial) {
    const Layout s = random_scene(rng, 1 + static_cast<int>(rng.below(10)));
    const SchematicRaster r = project(s, 0.05);
    const Embedding a = embedder.embed_image(r);
    CHECK(a.values.size() == AttributeEmbedder::kDimension);
    CHECK(norm2(a.values) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(a.values == embedder.embed_image(r).values);
  }
  for (const auto& [word, _] : builtin_lexicon()) {
    const Embedding t = embedder.embed_text(word);
    CHECK_FALSE(t.neutral);
    CHECK(norm2(t.values) == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("unknown keywords and empty rasters map to the neutral direction") {
  const AttributeEmbedder embedder;
  const Embedding t = embedder.embed_text("zzyzx");
  CHECK(t.neutral);
  CHECK(t.values[AttributeEmbedder::kNeutralIndex] == 1.0);
  Layout empty;
  empty.room = room_with_door(3, 3);
  const Embedding i = embedder.embed_image(project(empty, 0.05));
  CHECK(i.neutral);
  const DesignBrief brief = brief_with({"zzyzx"}, "qqq", empty.room);
  const AestheticBreakdown b = r_aes(empty, brief, embedder, builtin_harmony_templates(), {});
  CHECK(b.neutral_text);
  CHECK(b.neutral_image);
  CHECK(b.empty_layout);
  CHECK(b.harmony_template == "uniform");
}

TEST_CASE("base64 round trip") {
  Rng rng{73};
  for (int len = 0; len < 40; ++len) {
    std::string bytes;
    for (int k = 0; k < len; ++k) bytes.push_back(static_cast<char>(rng.below(256)));
    CHECK(base64_decode(base64_encode(bytes)) == bytes);
  }
  CHECK(base64_encode("Man") == "TWFu");
  CHECK(base64_encode("Ma") == "TWE=");
  CHECK(base64_encode("M") == "TQ==");
}

TEST_CASE("remote provider talks to an embedding service") {
  httplib::Server server;
  std::atomic<int> images{0};
  server.Post("/embed", [&](const httplib::Request& req, httplib::Response& res) {
    const auto body = nlohmann::json::parse(req.body);
    if (body["kind"] == "image") {
      ++images;
      const std::string ppm = base64_decode(body["payload"].get<std::string>());
      res.set_content(ppm.rfind("P3", 0) == 0 ? R"({"vector": [3, 4, 0]})" : "{}",
                      "application/json");
    } else if (body["payload"] == "broken") {
      res.status = 500;
    } else if (body["payload"] == "short") {
      res.set_content(R"({"vector": [1]})", "application/json");
    } else {
      res.set_content(R"({"vector": [0, 2, 0]})", "application/json");
    }
  });
  const int port = server.bind_to_any_port("127.0.0.1");
  std::thread thread([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  const RemoteEmbeddingProvider remote(fmt::format("http://127.0.0.1:{}", port), 3,
                                       std::chrono::milliseconds(2000));
  const Layout layout = bedroom("oak", "oak");
  const Embedding img = remote.embed_image(project(layout, 0.1));
  REQUIRE(img.values.size() == 3);
  CHECK(img.values[0] == doctest::Approx(0.6));
  CHECK(img.values[1] == doctest::Approx(0.8));
  CHECK(img.values[2] == 0.0);
  CHECK(images == 1);
  const DesignBrief brief = brief_with({"modern"}, "warm", layout.room);
  CHECK(s_style(layout, brief, remote) == doctest::Approx(0.8));
  CHECK_THROWS_AS(remote.embed_text("broken"), ProviderError);
  CHECK_THROWS_AS(remote.embed_text("short"), ProviderError);

  server.stop();
  thread.join();
  CHECK_THROWS_AS(remote.embed_text("anything"), ProviderError);
}
