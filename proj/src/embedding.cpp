#include "roomalign/embedding.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include <fmt/format.h>

#include "roomalign/config.hpp"
#include "roomalign/default_configs.hpp"
#include "roomalign/errors.hpp"

namespace roomalign {

double cosine(const Embedding& a, const Embedding& b) {
  if (a.values.size() != b.values.size()) {
    throw ProviderError(fmt::format("embedding dimensions differ ({} vs {})",
                                    a.values.size(), b.values.size()));
  }
  double ab = 0.0;
  double aa = 0.0;
  double bb = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    ab += a.values[i] * b.values[i];
    aa += a.values[i] * a.values[i];
    bb += b.values[i] * b.values[i];
  }
  if (aa <= 0.0 || bb <= 0.0) return 0.0;
  return std::clamp(ab / std::sqrt(aa * bb), -1.0, 1.0);
}

Lexicon parse_lexicon(std::string_view ini_text) {
  const IniDocument doc = IniDocument::parse(ini_text);
  Lexicon lexicon;
  for (const auto& section : doc.sections()) {
    auto& entries = lexicon[section.name];
    for (const auto& [feature, value] : section.entries) {
      if (!(feature.starts_with("category.") || feature.starts_with("material.") ||
            feature.starts_with("hue."))) {
        throw ValidationError(
            fmt::format("lexicon [{}]: unknown feature '{}'", section.name, feature));
      }
      entries.emplace_back(feature, parse_double(value, section.name));
    }
  }
  return lexicon;
}

const Lexicon& builtin_lexicon() {
  static const Lexicon lexicon = parse_lexicon(defaults::kLexiconConfig);
  return lexicon;
}

namespace {

constexpr std::uint64_t kHashSeed = 0x5eed'a11c'e0f0'0d5eULL;
constexpr int kSlotsPerFeature = 2;

std::uint64_t fnv1a(std::string_view text, std::uint64_t seed) {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ seed;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  // Final avalanche (splitmix64 finalizer).
  h ^= h >> 30;
  h *= 0xbf58476d1ce4e5b9ULL;
  h ^= h >> 27;
  h *= 0x94d049bb133111ebULL;
  h ^= h >> 31;
  return h;
}

std::string hue_feature(std::size_t bin) {
  if (bin == kDarkBin) return "hue.dark";
  if (bin == kLightBin) return "hue.light";
  return fmt::format("hue.{}", bin);
}

Embedding normalized_or_neutral(std::vector<double> v, std::size_t neutral_index) {
  double n2 = 0.0;
  for (double x : v) n2 += x * x;
  Embedding out;
  if (n2 <= 1e-24) {
    std::fill(v.begin(), v.end(), 0.0);
    v[neutral_index] = 1.0;
    out.neutral = true;
  } else {
    const double inv = 1.0 / std::sqrt(n2);
    for (double& x : v) x *= inv;
  }
  out.values = std::move(v);
  return out;
}

}  // namespace

AttributeEmbedder::AttributeEmbedder(const Catalog& catalog, Lexicon lexicon)
    : catalog_(&catalog), lexicon_(std::move(lexicon)) {}

std::vector<double> AttributeEmbedder::hash_features(
    const std::vector<std::pair<std::string, double>>& features) const {
  std::vector<double> v(kDimension, 0.0);
  const double share = 1.0 / std::sqrt(static_cast<double>(kSlotsPerFeature));
  for (const auto& [name, weight] : features) {
    for (int slot = 0; slot < kSlotsPerFeature; ++slot) {
      const std::uint64_t h = fnv1a(name, kHashSeed + static_cast<std::uint64_t>(slot));
      const std::size_t index = h % kNeutralIndex;
      const double sign = (h >> 63) ? -1.0 : 1.0;
      v[index] += sign * share * weight;
    }
  }
  return v;
}

Embedding AttributeEmbedder::embed_image(const SchematicRaster& raster) const {
  // Area per (category, material) pair; hue follows from the material.
  std::map<std::pair<int, int>, double> area;
  const double cell_area = raster.cell_size * raster.cell_size;
  for (const RasterCell& p : raster.pixels) {
    if (p.category_id >= 0) area[{p.category_id, p.material_id}] += cell_area;
  }
  std::map<std::string, double> weights;
  for (const auto& [key, a] : area) {
    const auto& [cat, mat] = key;
    weights["category." + catalog_->category(cat).name] += a;
    const MaterialSpec& m = catalog_->material(mat);
    weights["material." + m.name] += a;
    weights[hue_feature(color_bin(m.base_color))] += a;
  }
  std::vector<std::pair<std::string, double>> features(weights.begin(), weights.end());
  return normalized_or_neutral(hash_features(features), kNeutralIndex);
}

Embedding AttributeEmbedder::embed_text(std::string_view text) const {
  std::vector<std::string> words;
  std::string word;
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (std::isalnum(c) || ch == '_' || ch == '-') {
      word += static_cast<char>(std::tolower(c));
    } else if (!word.empty()) {
      words.push_back(std::move(word));
      word.clear();
    }
  }
  if (!word.empty()) words.push_back(std::move(word));
  std::sort(words.begin(), words.end());

  std::map<std::string, double> weights;
  for (const std::string& w : words) {
    auto it = lexicon_.find(w);
    if (it == lexicon_.end()) continue;
    for (const auto& [feature, affinity] : it->second) weights[feature] += affinity;
  }
  std::vector<std::pair<std::string, double>> features(weights.begin(), weights.end());
  return normalized_or_neutral(hash_features(features), kNeutralIndex);
}

}  // namespace roomalign
