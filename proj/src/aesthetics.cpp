#include "roomalign/aesthetics.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "roomalign/config.hpp"
#include "roomalign/default_configs.hpp"
#include "roomalign/errors.hpp"

namespace roomalign {

HarmonyTemplates parse_harmony_templates(std::string_view ini_text) {
  const IniDocument doc = IniDocument::parse(ini_text);
  HarmonyTemplates templates;
  for (const auto& section : doc.sections()) {
    const auto bins = section.get("bins");
    if (!bins) throw ValidationError(fmt::format("harmony [{}]: missing 'bins'", section.name));
    const auto parts = split_list(*bins, ',');
    if (parts.size() != kHistogramBins) {
      throw ValidationError(fmt::format("harmony [{}]: expected {} bins, got {}",
                                        section.name, kHistogramBins, parts.size()));
    }
    std::array<double, kHistogramBins> mass{};
    double total = 0.0;
    for (std::size_t i = 0; i < kHistogramBins; ++i) {
      mass[i] = parse_double(parts[i], section.name + ".bins");
      if (mass[i] < 0.0) {
        throw ValidationError(fmt::format("harmony [{}]: negative bin mass", section.name));
      }
      total += mass[i];
    }
    if (total <= 0.0) {
      throw ValidationError(fmt::format("harmony [{}]: all bins are zero", section.name));
    }
    templates[section.name] = HarmonyTemplate{section.name, smooth(mass)};
  }
  return templates;
}

const HarmonyTemplates& builtin_harmony_templates() {
  static const HarmonyTemplates templates = parse_harmony_templates(defaults::kHarmonyConfig);
  return templates;
}

HarmonyTemplate resolve_template(const HarmonyTemplates& templates,
                                 std::string_view atmosphere) {
  auto it = templates.find(atmosphere);
  if (it != templates.end()) return it->second;
  HarmonyTemplate uniform;
  uniform.name = "uniform";
  uniform.target.bins.fill(1.0 / kHistogramBins);
  return uniform;
}

void AestheticWeights::validate() const {
  for (double l : {lambda_st, lambda_co, lambda_ha}) {
    if (!(l >= 0.0) || !std::isfinite(l)) {
      throw ValidationError("aesthetic weights must be finite and nonnegative");
    }
  }
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw ValidationError("sigma must be positive, or 0 for the room-scaled default");
  }
  if (!(cell_size >= kMinCellSize && cell_size <= kMaxCellSize)) {
    throw ValidationError(fmt::format("aesthetics cell_size {} outside [{}, {}]", cell_size,
                                      kMinCellSize, kMaxCellSize));
  }
}

double default_sigma(const RoomSpec& room) {
  const Rect box = room.bounds();
  return 0.25 * std::hypot(box.width(), box.height());
}

std::string style_text(const DesignBrief& brief) {
  std::vector<std::string> words = brief.style_keywords;
  std::sort(words.begin(), words.end());
  if (!brief.atmosphere_keyword.empty()) words.push_back(brief.atmosphere_keyword);
  std::string text;
  for (const std::string& w : words) {
    if (!text.empty()) text += ' ';
    text += w;
  }
  return text;
}

namespace {

struct StyleResult {
  double value;
  bool neutral_image;
  bool neutral_text;
};

StyleResult style_score(const Layout& layout, const DesignBrief& brief,
                        const EmbeddingProvider& provider, double cell_size,
                        const Catalog& catalog) {
  const Embedding image = provider.embed_image(project(layout, cell_size, catalog));
  const Embedding text = provider.embed_text(style_text(brief));
  return {cosine(image, text), image.neutral, text.neutral};
}

}  // namespace

double s_style(const Layout& layout, const DesignBrief& brief,
               const EmbeddingProvider& provider, double cell_size, const Catalog& catalog) {
  return style_score(layout, brief, provider, cell_size, catalog).value;
}

double s_comp(const Layout& layout, double sigma, const Catalog& catalog, bool* empty) {
  if (!(sigma > 0.0)) throw ValidationError("sigma must be positive");
  if (empty) *empty = layout.objects.empty();
  if (layout.objects.empty()) return 0.0;
  double mass = 0.0;
  Vec2 moment;
  for (const ObjectInstance& o : layout.objects) {
    const double m = o.dims.width * o.dims.depth * catalog.category(o.category_id).saliency;
    mass += m;
    moment = moment + m * Vec2{o.x, o.y};
  }
  const Vec2 offset = (1.0 / mass) * moment - layout.room.centroid();
  return std::exp(-dot(offset, offset) / (2.0 * sigma * sigma));
}

double kl_divergence(const ColorHistogram& p, const ColorHistogram& q) {
  double kl = 0.0;
  for (std::size_t i = 0; i < kHistogramBins; ++i) {
    if (p.bins[i] > 0.0) kl += p.bins[i] * std::log(p.bins[i] / q.bins[i]);
  }
  return std::max(0.0, kl);
}

double s_harm(const Layout& layout, const HarmonyTemplate& harmony, const Catalog& catalog) {
  return 1.0 / (1.0 + kl_divergence(color_histogram(layout, catalog), harmony.target));
}

AestheticBreakdown r_aes(const Layout& layout, const DesignBrief& brief,
                         const EmbeddingProvider& provider, const HarmonyTemplates& templates,
                         const AestheticWeights& weights, const Catalog& catalog) {
  weights.validate();
  AestheticBreakdown out;
  const StyleResult style = style_score(layout, brief, provider, weights.cell_size, catalog);
  out.s_style = style.value;
  out.neutral_image = style.neutral_image;
  out.neutral_text = style.neutral_text;
  const double sigma = weights.sigma > 0.0 ? weights.sigma : default_sigma(layout.room);
  out.s_comp = s_comp(layout, sigma, catalog, &out.empty_layout);
  const HarmonyTemplate harmony = resolve_template(templates, brief.atmosphere_keyword);
  out.harmony_template = harmony.name;
  out.s_harm = s_harm(layout, harmony, catalog);
  out.r_aes = weights.lambda_st * out.s_style + weights.lambda_co * out.s_comp +
              weights.lambda_ha * out.s_harm;
  return out;
}

StandardCritic::StandardCritic(const EmbeddingProvider& provider,
                               const HarmonyTemplates& templates, AestheticWeights weights,
                               const Catalog& catalog)
    : provider_(&provider), templates_(&templates), weights_(weights), catalog_(&catalog) {
  weights_.validate();
}

AestheticBreakdown StandardCritic::score(const Layout& layout, const DesignBrief& brief) const {
  return r_aes(layout, brief, *provider_, *templates_, weights_, *catalog_);
}

}  // namespace roomalign
