#pragma once

#include <map>
#include <string>
#include <string_view>

#include "roomalign/embedding.hpp"
#include "roomalign/scene.hpp"
#include "roomalign/schematic.hpp"

namespace roomalign {

struct HarmonyTemplate {
  std::string name;
  ColorHistogram target;
};

using HarmonyTemplates = std::map<std::string, HarmonyTemplate, std::less<>>;

/// One section per atmosphere keyword with a `bins` list of 14 masses.
HarmonyTemplates parse_harmony_templates(std::string_view ini_text);
const HarmonyTemplates& builtin_harmony_templates();

/// Template for `atmosphere`, or the uniform distribution (named "uniform")
/// when none is defined.
HarmonyTemplate resolve_template(const HarmonyTemplates& templates,
                                 std::string_view atmosphere);

struct AestheticWeights {
  double lambda_st = 1.0 / 3.0;
  double lambda_co = 1.0 / 3.0;
  double lambda_ha = 1.0 / 3.0;
  /// Gaussian width of the composition term in meters; 0 selects
  /// `default_sigma` of the room.
  double sigma = 0.0;
  /// Resolution of the schematic fed to the embedding provider.
  double cell_size = 0.05;

  void validate() const;
};

/// 0.25 x the diagonal of the room bounding box.
double default_sigma(const RoomSpec& room);

/// Sorted style keywords followed by the atmosphere keyword, space-joined.
std::string style_text(const DesignBrief& brief);

/// Cosine between the schematic embedding and the style text embedding.
/// Provider errors propagate.
double s_style(const Layout& layout, const DesignBrief& brief,
               const EmbeddingProvider& provider, double cell_size = 0.05,
               const Catalog& catalog = Catalog::builtin());

/// Saliency- and area-weighted center of mass against the room centroid.
/// An empty layout scores 0 and sets `*empty` when given.
double s_comp(const Layout& layout, double sigma,
              const Catalog& catalog = Catalog::builtin(), bool* empty = nullptr);

/// KL(p || q) in nats over the 14 bins.
double kl_divergence(const ColorHistogram& p, const ColorHistogram& q);

double s_harm(const Layout& layout, const HarmonyTemplate& harmony,
              const Catalog& catalog = Catalog::builtin());

struct AestheticBreakdown {
  double s_style = 0.0;
  double s_comp = 0.0;
  double s_harm = 0.0;
  double r_aes = 0.0;
  bool empty_layout = false;
  bool neutral_image = false;
  bool neutral_text = false;
  std::string harmony_template;
};

AestheticBreakdown r_aes(const Layout& layout, const DesignBrief& brief,
                         const EmbeddingProvider& provider,
                         const HarmonyTemplates& templates,
                         const AestheticWeights& weights,
                         const Catalog& catalog = Catalog::builtin());

/// Scores one candidate on the aesthetic branch.
class AestheticCritic {
 public:
  virtual ~AestheticCritic() = default;
  virtual AestheticBreakdown score(const Layout& layout,
                                   const DesignBrief& brief) const = 0;
};

/// `r_aes` with a fixed provider, template set and weights. Holds
/// references; the referents must outlive the critic.
class StandardCritic final : public AestheticCritic {
 public:
  StandardCritic(const EmbeddingProvider& provider, const HarmonyTemplates& templates,
                 AestheticWeights weights, const Catalog& catalog = Catalog::builtin());

  AestheticBreakdown score(const Layout& layout,
                           const DesignBrief& brief) const override;

 private:
  const EmbeddingProvider* provider_;
  const HarmonyTemplates* templates_;
  AestheticWeights weights_;
  const Catalog* catalog_;
};

}  // namespace roomalign
