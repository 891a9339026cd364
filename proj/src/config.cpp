#include "roomalign/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include "roomalign/default_configs.hpp"
#include "roomalign/errors.hpp"

namespace roomalign {

namespace pt = boost::property_tree;

std::optional<std::string> IniDocument::Section::get(std::string_view key) const {
  for (const auto& [k, v] : entries) {
    if (k == key) return v;
  }
  return std::nullopt;
}

IniDocument IniDocument::parse(std::string_view text) {
  pt::ptree tree;
  std::istringstream in{std::string(text)};
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ValidationError(fmt::format("config: {} (line {})", e.message(), e.line()));
  }
  IniDocument doc;
  for (const auto& [name, child] : tree) {
    if (child.empty() && !child.data().empty()) {
      throw ValidationError(fmt::format("config: key '{}' outside of a section", name));
    }
    Section section{name, {}};
    for (const auto& [key, value] : child) {
      section.entries.emplace_back(key, trim(value.data()));
    }
    doc.sections_.push_back(std::move(section));
  }
  return doc;
}

IniDocument IniDocument::read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError(fmt::format("cannot open '{}'", path.string()));
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

const IniDocument::Section* IniDocument::find(std::string_view name) const {
  for (const Section& s : sections_) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

std::string trim(std::string_view text) {
  auto first = std::find_if_not(text.begin(), text.end(),
                                [](unsigned char c) { return std::isspace(c); });
  auto last = std::find_if_not(text.rbegin(), text.rend(),
                               [](unsigned char c) { return std::isspace(c); })
                  .base();
  return first < last ? std::string(first, last) : std::string();
}

std::vector<std::string> split_list(std::string_view text, char sep) {
  std::vector<std::string> out;
  if (trim(text).empty()) return out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    out.push_back(trim(text.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_double(std::string_view text, std::string_view what) {
  const std::string t = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw ValidationError(fmt::format("{}: '{}' is not a number", what, t));
  }
  return value;
}

long long parse_int(std::string_view text, std::string_view what) {
  const std::string t = trim(text);
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw ValidationError(fmt::format("{}: '{}' is not an integer", what, t));
  }
  return value;
}

bool parse_bool(std::string_view text, std::string_view what) {
  const std::string t = trim(text);
  if (t == "true" || t == "1" || t == "yes") return true;
  if (t == "false" || t == "0" || t == "no") return false;
  throw ValidationError(fmt::format("{}: '{}' is not a boolean", what, t));
}

namespace {

Dimensions parse_variant(std::string_view text, std::string_view what) {
  const auto parts = split_list(text, 'x');
  if (parts.size() != 3) {
    throw ValidationError(fmt::format("{}: size variant '{}' needs WxDxH", what, text));
  }
  return {parse_double(parts[0], what), parse_double(parts[1], what),
          parse_double(parts[2], what)};
}

std::string required(const IniDocument::Section& s, std::string_view key) {
  auto v = s.get(key);
  if (!v) throw ValidationError(fmt::format("[{}] missing key '{}'", s.name, key));
  return *v;
}

}  // namespace

Catalog parse_catalog(std::string_view ini_text) {
  const IniDocument doc = IniDocument::parse(ini_text);
  std::vector<ObjectCategory> categories;
  std::vector<MaterialSpec> materials;
  for (const auto& s : doc.sections()) {
    if (s.name.starts_with("category:")) {
      ObjectCategory c;
      c.id = static_cast<int>(categories.size());
      c.name = s.name.substr(9);
      const auto variants = split_list(required(s, "variants"), ';');
      if (variants.size() != kSizeVariants) {
        throw ValidationError(fmt::format("[{}] needs exactly {} size variants",
                                          s.name, kSizeVariants));
      }
      for (std::size_t i = 0; i < kSizeVariants; ++i) {
        c.size_variants[i] = parse_variant(variants[i], s.name);
      }
      c.saliency = parse_double(s.get("saliency").value_or("1.0"), s.name);
      c.needs_access = parse_bool(s.get("needs_access").value_or("false"), s.name);
      categories.push_back(std::move(c));
    } else if (s.name.starts_with("material:")) {
      MaterialSpec m;
      m.id = static_cast<int>(materials.size());
      m.name = s.name.substr(9);
      const auto rgb = split_list(required(s, "base_color"), ',');
      if (rgb.size() != 3) {
        throw ValidationError(fmt::format("[{}] base_color needs r, g, b", s.name));
      }
      std::array<std::uint8_t, 3> channel{};
      for (std::size_t i = 0; i < 3; ++i) {
        const long long v = parse_int(rgb[i], s.name);
        if (v < 0 || v > 255) {
          throw ValidationError(fmt::format("[{}] color channel out of range", s.name));
        }
        channel[i] = static_cast<std::uint8_t>(v);
      }
      m.base_color = {channel[0], channel[1], channel[2]};
      materials.push_back(std::move(m));
    } else {
      throw ValidationError(fmt::format("catalog: unexpected section [{}]", s.name));
    }
  }
  return Catalog(std::move(categories), std::move(materials));
}

Catalog load_catalog(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError(fmt::format("cannot open '{}'", path.string()));
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_catalog(buf.str());
}

const Catalog& Catalog::builtin() {
  static const Catalog catalog = parse_catalog(defaults::kCatalogConfig);
  return catalog;
}

}  // namespace roomalign
