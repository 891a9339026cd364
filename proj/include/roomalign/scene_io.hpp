#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "roomalign/scene.hpp"

namespace roomalign {

/// Parses and validates a layout document. Clockwise room boundaries are
/// reoriented. Throws ValidationError on schema or invariant violations.
Layout load_layout(std::string_view document,
                   const Catalog& catalog = Catalog::builtin());

/// Canonical key-sorted serialization; equal layouts give equal bytes.
std::string save_layout(const Layout& layout,
                        const Catalog& catalog = Catalog::builtin());

DesignBrief load_brief(std::string_view document,
                       const Catalog& catalog = Catalog::builtin());
std::string save_brief(const DesignBrief& brief,
                       const Catalog& catalog = Catalog::builtin());

nlohmann::json room_to_json(const RoomSpec& room);
RoomSpec room_from_json(const nlohmann::json& j);

std::string read_text_file(const std::filesystem::path& path);
/// Creates parent directories as needed and overwrites `path`.
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace roomalign
