#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "roomalign/scene.hpp"

namespace roomalign {

/// INI document with sections and keys kept in file order.
class IniDocument {
 public:
  struct Section {
    std::string name;
    std::vector<std::pair<std::string, std::string>> entries;

    std::optional<std::string> get(std::string_view key) const;
  };

  /// Throws ValidationError on malformed input or duplicate keys.
  static IniDocument parse(std::string_view text);
  static IniDocument read_file(const std::filesystem::path& path);

  const std::vector<Section>& sections() const { return sections_; }
  const Section* find(std::string_view name) const;

 private:
  std::vector<Section> sections_;
};

std::vector<std::string> split_list(std::string_view text, char sep);
std::string trim(std::string_view text);
/// Strict numeric parse; throws ValidationError naming `what`.
double parse_double(std::string_view text, std::string_view what);
long long parse_int(std::string_view text, std::string_view what);
bool parse_bool(std::string_view text, std::string_view what);

/// Catalog from `[category:<name>]` and `[material:<name>]` sections.
Catalog parse_catalog(std::string_view ini_text);
Catalog load_catalog(const std::filesystem::path& path);

}  // namespace roomalign
