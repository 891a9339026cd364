#include "roomalign/schematic.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "roomalign/errors.hpp"

namespace roomalign {

SchematicRaster project(const Layout& layout, double cell_size, const Catalog& catalog) {
  if (!(cell_size >= kMinCellSize && cell_size <= kMaxCellSize)) {
    throw ValidationError(fmt::format("cell_size {} outside [{}, {}]", cell_size,
                                      kMinCellSize, kMaxCellSize));
  }
  const Rect box = layout.room.bounds();
  SchematicRaster raster;
  raster.cell_size = cell_size;
  raster.origin = box.min;
  raster.width = std::max(1, static_cast<int>(std::ceil(box.width() / cell_size - 1e-9)));
  raster.height = std::max(1, static_cast<int>(std::ceil(box.height() / cell_size - 1e-9)));
  raster.pixels.assign(static_cast<std::size_t>(raster.width) * raster.height, RasterCell{});

  auto center = [&](int c, int r) {
    return Vec2{box.min.x + (c + 0.5) * cell_size, box.min.y + (r + 0.5) * cell_size};
  };
  for (int r = 0; r < raster.height; ++r) {
    for (int c = 0; c < raster.width; ++c) {
      if (contains_point(layout.room.boundary(), center(c, r), 0.0)) {
        raster.pixels[r * raster.width + c].color = kFloorColor;
      }
    }
  }
  for (const ObjectInstance& o : layout.objects) {
    const Rect f = footprint(o);
    const Rgb color = catalog.material(o.material_id).base_color;
    const int c0 = std::max(0, static_cast<int>(std::floor((f.min.x - box.min.x) / cell_size)));
    const int c1 = std::min(raster.width - 1, static_cast<int>(std::floor((f.max.x - box.min.x) / cell_size)));
    const int r0 = std::max(0, static_cast<int>(std::floor((f.min.y - box.min.y) / cell_size)));
    const int r1 = std::min(raster.height - 1, static_cast<int>(std::floor((f.max.y - box.min.y) / cell_size)));
    for (int r = r0; r <= r1; ++r) {
      for (int c = c0; c <= c1; ++c) {
        const Vec2 p = center(c, r);
        if (p.x >= f.min.x && p.x < f.max.x && p.y >= f.min.y && p.y < f.max.y) {
          raster.pixels[r * raster.width + c] = {o.category_id, o.material_id, color};
        }
      }
    }
  }
  return raster;
}

std::string to_ppm(const SchematicRaster& raster) {
  std::string out = fmt::format("P3\n{} {}\n255\n", raster.width, raster.height);
  for (int r = raster.height - 1; r >= 0; --r) {
    for (int c = 0; c < raster.width; ++c) {
      const Rgb& p = raster.at(c, r).color;
      fmt::format_to(std::back_inserter(out), "{}{} {} {}", c ? " " : "", p.r, p.g, p.b);
    }
    out += '\n';
  }
  return out;
}

namespace {

std::string hex(Rgb c) { return fmt::format("#{:02x}{:02x}{:02x}", c.r, c.g, c.b); }

}  // namespace

std::string to_svg(const Layout& layout, const Catalog& catalog) {
  const Rect box = layout.room.bounds();
  const double margin = 0.25;
  // Drawing units are meters; the group flips y so room coordinates are
  // written verbatim.
  std::string out = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{:.4f} {:.4f} {:.4f} {:.4f}\" "
      "width=\"{:.0f}\" height=\"{:.0f}\">\n",
      box.min.x - margin, -(box.max.y + margin), box.width() + 2 * margin,
      box.height() + 2 * margin, (box.width() + 2 * margin) * 100,
      (box.height() + 2 * margin) * 100);
  out += "<g transform=\"scale(1,-1)\">\n";
  out += "<path class=\"room\" d=\"";
  for (std::size_t i = 0; i < layout.room.boundary().size(); ++i) {
    const Vec2 p = layout.room.boundary()[i];
    fmt::format_to(std::back_inserter(out), "{}{:.4f},{:.4f} ", i == 0 ? "M" : "L", p.x, p.y);
  }
  fmt::format_to(std::back_inserter(out),
                 "Z\" fill=\"{}\" stroke=\"#333333\" stroke-width=\"0.04\"/>\n",
                 hex(kFloorColor));
  for (const OpeningSegment& d : layout.room.doors()) {
    fmt::format_to(std::back_inserter(out),
                   "<line class=\"door\" x1=\"{:.4f}\" y1=\"{:.4f}\" x2=\"{:.4f}\" y2=\"{:.4f}\" "
                   "stroke=\"#c0392b\" stroke-width=\"0.08\"/>\n",
                   d.start.x, d.start.y, d.end.x, d.end.y);
  }
  for (const OpeningSegment& w : layout.room.windows()) {
    fmt::format_to(std::back_inserter(out),
                   "<line class=\"window\" x1=\"{:.4f}\" y1=\"{:.4f}\" x2=\"{:.4f}\" y2=\"{:.4f}\" "
                   "stroke=\"#2e86c1\" stroke-width=\"0.08\"/>\n",
                   w.start.x, w.start.y, w.end.x, w.end.y);
  }
  for (std::size_t i = 0; i < layout.objects.size(); ++i) {
    const ObjectInstance& o = layout.objects[i];
    const Rect f = footprint(o);
    const std::string& name = catalog.category(o.category_id).name;
    fmt::format_to(std::back_inserter(out),
                   "<polygon class=\"object\" data-index=\"{}\" data-category=\"{}\" "
                   "points=\"{:.4f},{:.4f} {:.4f},{:.4f} {:.4f},{:.4f} {:.4f},{:.4f}\" "
                   "fill=\"{}\" fill-opacity=\"0.85\" stroke=\"#222222\" stroke-width=\"0.02\"/>\n",
                   i, name, f.min.x, f.min.y, f.max.x, f.min.y, f.max.x, f.max.y, f.min.x,
                   f.max.y, hex(catalog.material(o.material_id).base_color));
    // Labels are drawn unflipped at the footprint center.
    fmt::format_to(std::back_inserter(out),
                   "<text x=\"{:.4f}\" y=\"{:.4f}\" transform=\"scale(1,-1)\" "
                   "font-size=\"0.14\" text-anchor=\"middle\">{}</text>\n",
                   o.x, -o.y, name);
  }
  out += "</g>\n</svg>\n";
  return out;
}

Hsv to_hsv(Rgb color) {
  const double r = color.r / 255.0;
  const double g = color.g / 255.0;
  const double b = color.b / 255.0;
  const double mx = std::max({r, g, b});
  const double mn = std::min({r, g, b});
  const double delta = mx - mn;
  Hsv out;
  out.v = mx;
  out.s = mx > 0.0 ? delta / mx : 0.0;
  if (delta <= 0.0) return out;
  double h = 0.0;
  if (mx == r) {
    h = std::fmod((g - b) / delta, 6.0);
  } else if (mx == g) {
    h = (b - r) / delta + 2.0;
  } else {
    h = (r - g) / delta + 4.0;
  }
  h *= 60.0;
  if (h < 0.0) h += 360.0;
  out.h = h >= 360.0 ? h - 360.0 : h;
  return out;
}

std::size_t color_bin(Rgb color) {
  const Hsv hsv = to_hsv(color);
  if (hsv.s < kAchromaticSaturation) return hsv.v < 0.5 ? kDarkBin : kLightBin;
  return std::min<std::size_t>(11, static_cast<std::size_t>(hsv.h / 30.0));
}

ColorHistogram smooth(const std::array<double, kHistogramBins>& mass) {
  double total = 0.0;
  for (double m : mass) total += m;
  ColorHistogram out;
  if (total <= 0.0) {
    out.bins.fill(1.0 / kHistogramBins);
    return out;
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < kHistogramBins; ++i) {
    out.bins[i] = mass[i] / total + kHistogramSmoothing;
    sum += out.bins[i];
  }
  for (double& b : out.bins) b /= sum;
  return out;
}

ColorHistogram color_histogram(const Layout& layout, const Catalog& catalog) {
  std::array<double, kHistogramBins> mass{};
  for (const ObjectInstance& o : layout.objects) {
    mass[color_bin(catalog.material(o.material_id).base_color)] +=
        o.dims.width * o.dims.depth;
  }
  return smooth(mass);
}

}  // namespace roomalign
