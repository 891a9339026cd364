#include "roomalign/scene_io.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "roomalign/errors.hpp"

namespace roomalign {

using nlohmann::json;

namespace {

const json& field(const json& j, std::string_view key, std::string_view where) {
  if (!j.is_object()) {
    throw ValidationError(fmt::format("{}: expected an object", where));
  }
  auto it = j.find(key);
  if (it == j.end()) {
    throw ValidationError(fmt::format("{}: missing field '{}'", where, key));
  }
  return *it;
}

double number(const json& j, std::string_view where) {
  if (!j.is_number()) throw ValidationError(fmt::format("{}: expected a number", where));
  return j.get<double>();
}

std::string text(const json& j, std::string_view where) {
  if (!j.is_string()) throw ValidationError(fmt::format("{}: expected a string", where));
  return j.get<std::string>();
}

const json& array(const json& j, std::string_view where) {
  if (!j.is_array()) throw ValidationError(fmt::format("{}: expected an array", where));
  return j;
}

Vec2 point(const json& j, std::string_view where) {
  const json& a = array(j, where);
  if (a.size() != 2) throw ValidationError(fmt::format("{}: expected [x, y]", where));
  return {number(a[0], where), number(a[1], where)};
}

std::vector<OpeningSegment> openings(const json& room, std::string_view key,
                                     OpeningKind kind) {
  std::vector<OpeningSegment> out;
  auto it = room.find(key);
  if (it == room.end()) return out;
  const std::string where = fmt::format("room.{}", key);
  const json& list = array(*it, where);
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string w = fmt::format("{}[{}]", where, i);
    out.push_back({point(field(list[i], "start", w), w + ".start"),
                   point(field(list[i], "end", w), w + ".end"), kind});
  }
  return out;
}

json point_json(Vec2 p) { return json::array({p.x, p.y}); }

json openings_json(const std::vector<OpeningSegment>& list) {
  json out = json::array();
  for (const OpeningSegment& op : list) {
    out.push_back({{"start", point_json(op.start)}, {"end", point_json(op.end)}});
  }
  return out;
}

json parse_document(std::string_view document) {
  try {
    return json::parse(document);
  } catch (const json::parse_error& e) {
    throw ValidationError(fmt::format("malformed JSON: {}", e.what()));
  }
}

}  // namespace

RoomSpec room_from_json(const json& j) {
  const json& b = array(field(j, "boundary", "room"), "room.boundary");
  Polygon boundary;
  for (std::size_t i = 0; i < b.size(); ++i) {
    boundary.push_back(point(b[i], fmt::format("room.boundary[{}]", i)));
  }
  const double h = number(field(j, "ceiling_height", "room"), "room.ceiling_height");
  return RoomSpec::make(std::move(boundary), h, openings(j, "doors", OpeningKind::door),
                        openings(j, "windows", OpeningKind::window));
}

json room_to_json(const RoomSpec& room) {
  json boundary = json::array();
  for (const Vec2& p : room.boundary()) boundary.push_back(point_json(p));
  return {{"boundary", boundary},
          {"ceiling_height", room.ceiling_height()},
          {"doors", openings_json(room.doors())},
          {"windows", openings_json(room.windows())}};
}

Layout load_layout(std::string_view document, const Catalog& catalog) {
  const json j = parse_document(document);
  Layout layout{room_from_json(field(j, "room", "layout")), {}};
  const json& objects = array(field(j, "objects", "layout"), "objects");
  for (std::size_t i = 0; i < objects.size(); ++i) {
    const std::string w = fmt::format("objects[{}]", i);
    const json& o = objects[i];
    ObjectInstance obj;
    obj.category_id = catalog.require_category(text(field(o, "category", w), w));
    obj.material_id = catalog.require_material(text(field(o, "material", w), w));
    const json& pos = array(field(o, "position", w), w + ".position");
    if (pos.size() != 3) throw ValidationError(w + ".position: expected [x, y, z]");
    obj.x = number(pos[0], w);
    obj.y = number(pos[1], w);
    obj.z = number(pos[2], w);
    const json& dims = array(field(o, "dimensions", w), w + ".dimensions");
    if (dims.size() != 3) throw ValidationError(w + ".dimensions: expected [w, d, h]");
    obj.dims = {number(dims[0], w), number(dims[1], w), number(dims[2], w)};
    layout.objects.push_back(obj);
  }
  validate(layout, catalog);
  return layout;
}

std::string save_layout(const Layout& layout, const Catalog& catalog) {
  json objects = json::array();
  for (const ObjectInstance& o : layout.objects) {
    objects.push_back(
        {{"category", catalog.category(o.category_id).name},
         {"position", json::array({o.x, o.y, o.z})},
         {"dimensions", json::array({o.dims.width, o.dims.depth, o.dims.height})},
         {"material", catalog.material(o.material_id).name}});
  }
  const json j = {{"room", room_to_json(layout.room)}, {"objects", objects}};
  return j.dump(2) + "\n";
}

DesignBrief load_brief(std::string_view document, const Catalog& catalog) {
  const json j = parse_document(document);
  DesignBrief brief;
  brief.room = room_from_json(field(j, "room", "brief"));
  for (const json& k : array(field(j, "style_keywords", "brief"), "style_keywords")) {
    brief.style_keywords.push_back(text(k, "style_keywords"));
  }
  brief.atmosphere_keyword =
      text(field(j, "atmosphere_keyword", "brief"), "atmosphere_keyword");
  const json& req = field(j, "required_categories", "brief");
  if (!req.is_object()) throw ValidationError("required_categories: expected an object");
  for (const auto& [name, count] : req.items()) {
    if (!count.is_number_integer()) {
      throw ValidationError(fmt::format("required_categories.{}: expected an integer", name));
    }
    brief.required_categories[catalog.require_category(name)] = count.get<int>();
  }
  if (auto it = j.find("adjacency_requirements"); it != j.end()) {
    for (const json& a : array(*it, "adjacency_requirements")) {
      const char* w = "adjacency_requirements[]";
      brief.adjacency_requirements.push_back(
          {catalog.require_category(text(field(a, "category_a", w), w)),
           catalog.require_category(text(field(a, "category_b", w), w)),
           number(field(a, "max_distance", w), w)});
    }
  }
  if (auto it = j.find("clearance_pairs"); it != j.end()) {
    for (const json& c : array(*it, "clearance_pairs")) {
      const char* w = "clearance_pairs[]";
      brief.clearance_pairs.push_back(
          {catalog.require_category(text(field(c, "category_a", w), w)),
           catalog.require_category(text(field(c, "category_b", w), w)),
           number(field(c, "tau_path", w), w)});
    }
  }
  if (auto it = j.find("id"); it != j.end()) brief.id = text(*it, "id");
  if (auto it = j.find("scenario"); it != j.end()) brief.scenario = text(*it, "scenario");
  validate(brief, catalog);
  return brief;
}

std::string save_brief(const DesignBrief& brief, const Catalog& catalog) {
  json required = json::object();
  for (const auto& [cat, count] : brief.required_categories) {
    required[catalog.category(cat).name] = count;
  }
  json adjacency = json::array();
  for (const AdjacencyRequirement& a : brief.adjacency_requirements) {
    adjacency.push_back({{"category_a", catalog.category(a.category_a).name},
                         {"category_b", catalog.category(a.category_b).name},
                         {"max_distance", a.max_distance}});
  }
  json clearance = json::array();
  for (const ClearancePair& c : brief.clearance_pairs) {
    clearance.push_back({{"category_a", catalog.category(c.category_a).name},
                         {"category_b", catalog.category(c.category_b).name},
                         {"tau_path", c.tau_path}});
  }
  const json j = {{"id", brief.id},
                  {"scenario", brief.scenario},
                  {"room", room_to_json(brief.room)},
                  {"style_keywords", brief.style_keywords},
                  {"atmosphere_keyword", brief.atmosphere_keyword},
                  {"required_categories", required},
                  {"adjacency_requirements", adjacency},
                  {"clearance_pairs", clearance}};
  return j.dump(2) + "\n";
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError(fmt::format("cannot open '{}'", path.string()));
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError(fmt::format("cannot write '{}'", path.string()));
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

}  // namespace roomalign
