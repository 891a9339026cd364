#pragma once

#include <chrono>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "roomalign/scene.hpp"
#include "roomalign/schematic.hpp"

namespace roomalign {

struct Embedding {
  std::vector<double> values;
  /// Nothing recognizable was embedded; `values` is the neutral direction.
  bool neutral = false;
};

double cosine(const Embedding& a, const Embedding& b);

/// Joint image/text embedding space. Implementations return L2-normalized
/// vectors of fixed dimension and equal outputs for equal inputs; they
/// throw ProviderError when no vector can be produced.
class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  virtual std::size_t dimension() const = 0;
  virtual Embedding embed_image(const SchematicRaster& raster) const = 0;
  virtual Embedding embed_text(std::string_view text) const = 0;
};

/// keyword -> (feature, affinity) list; see config/lexicon.ini.
using Lexicon = std::map<std::string, std::vector<std::pair<std::string, double>>>;

Lexicon parse_lexicon(std::string_view ini_text);
const Lexicon& builtin_lexicon();

/// Deterministic stand-in for a vision-language encoder: area-weighted
/// (category, material, hue) occurrences on the image side and lexicon
/// affinities on the text side, feature-hashed into one 64-d space.
class AttributeEmbedder final : public EmbeddingProvider {
 public:
  static constexpr std::size_t kDimension = 64;
  /// The last coordinate is reserved for the neutral direction.
  static constexpr std::size_t kNeutralIndex = kDimension - 1;

  explicit AttributeEmbedder(const Catalog& catalog = Catalog::builtin(),
                             Lexicon lexicon = builtin_lexicon());

  std::size_t dimension() const override { return kDimension; }
  Embedding embed_image(const SchematicRaster& raster) const override;
  Embedding embed_text(std::string_view text) const override;

  /// Raw (unnormalized) feature vector of a weighted feature list.
  std::vector<double> hash_features(
      const std::vector<std::pair<std::string, double>>& features) const;

 private:
  const Catalog* catalog_;
  Lexicon lexicon_;
};

/// Client for an external embedding service speaking
/// POST /embed {"kind": "image"|"text", "payload": ...} -> {"vector": [...]}.
/// Image payloads are base64 of the P3 pixmap. Returned vectors are
/// normalized here. Each call opens its own connection, so concurrent
/// use is safe.
class RemoteEmbeddingProvider final : public EmbeddingProvider {
 public:
  RemoteEmbeddingProvider(std::string base_url, std::size_t dimension,
                          std::chrono::milliseconds timeout);

  std::size_t dimension() const override { return dimension_; }
  Embedding embed_image(const SchematicRaster& raster) const override;
  Embedding embed_text(std::string_view text) const override;

 private:
  Embedding request(std::string_view kind, std::string payload) const;

  std::string base_url_;
  std::size_t dimension_;
  std::chrono::milliseconds timeout_;
};

std::string base64_encode(std::string_view bytes);
std::string base64_decode(std::string_view text);

}  // namespace roomalign
