#pragma once

#include <array>
#include <string>
#include <vector>

#include "roomalign/scene.hpp"

namespace roomalign {

inline constexpr double kMinCellSize = 0.01;
inline constexpr double kMaxCellSize = 0.2;
inline constexpr Rgb kFloorColor{224, 220, 212};
inline constexpr Rgb kBackgroundColor{255, 255, 255};

struct RasterCell {
  int category_id = -1;  // -1: no object
  int material_id = -1;
  Rgb color = kBackgroundColor;
  friend bool operator==(const RasterCell&, const RasterCell&) = default;
};

/// Top-down raster of a layout. Row 0 is the lowest y.
struct SchematicRaster {
  int width = 0;
  int height = 0;
  double cell_size = 0.0;
  Vec2 origin;
  std::vector<RasterCell> pixels;

  const RasterCell& at(int col, int row) const { return pixels[row * width + col]; }
  friend bool operator==(const SchematicRaster&, const SchematicRaster&) = default;
};

/// Floor cells (centers inside the room) take `kFloorColor`; object
/// footprints are painted in input order with their material color.
/// Throws ValidationError when cell_size is outside [0.01, 0.2].
SchematicRaster project(const Layout& layout, double cell_size,
                        const Catalog& catalog = Catalog::builtin());

/// Plain-text portable pixmap (P3), top row first.
std::string to_ppm(const SchematicRaster& raster);

std::string to_svg(const Layout& layout, const Catalog& catalog = Catalog::builtin());

inline constexpr std::size_t kHistogramBins = 14;
inline constexpr std::size_t kDarkBin = 12;
inline constexpr std::size_t kLightBin = 13;
inline constexpr double kHistogramSmoothing = 1e-3;
inline constexpr double kAchromaticSaturation = 0.15;

/// 12 hue bins of 30 degrees, then dark and light achromatic bins.
struct ColorHistogram {
  std::array<double, kHistogramBins> bins{};
};

struct Hsv {
  double h = 0.0;  // degrees in [0, 360)
  double s = 0.0;
  double v = 0.0;
};

Hsv to_hsv(Rgb color);
std::size_t color_bin(Rgb color);

/// Adds the smoothing floor to every bin and renormalizes. All-zero input
/// becomes uniform.
ColorHistogram smooth(const std::array<double, kHistogramBins>& mass);

/// Footprint-area-weighted distribution of object material colors.
ColorHistogram color_histogram(const Layout& layout,
                               const Catalog& catalog = Catalog::builtin());

}  // namespace roomalign
