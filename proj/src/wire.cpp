#include "ontoplot/wire.hpp"

#include <array>
#include <cstdint>

#include "ontoplot/error.hpp"

namespace ontoplot {

using nlohmann::json;

namespace {

template <typename E, std::size_t N>
E parse_enum(const json& j, const std::array<E, N>& values, const char* what) {
  const auto text = j.get<std::string>();
  for (E v : values)
    if (to_string(v) == text) return v;
  throw FormatError(0, what, "unknown value \"" + text + "\"");
}

constexpr std::array kBoxKinds{BoxKind::Class, BoxKind::Grid};
constexpr std::array kGlyphKinds{GlyphKind::Circle, GlyphKind::Square, GlyphKind::ThinBlock,
                                 GlyphKind::Triangle};
constexpr std::array kSeparatorStyles{SeparatorStyle::FaintPartial, SeparatorStyle::Solid};
constexpr std::array kOrientations{LabelOrientation::Horizontal, LabelOrientation::Diagonal};
constexpr std::array kLabelKinds{LabelKind::Parent, LabelKind::Association, LabelKind::Pinned};

template <typename T>
void put_optional(json& j, const char* key, const std::optional<T>& value) {
  if (value) j[key] = *value;
}

template <typename T>
void get_optional(const json& j, const char* key, std::optional<T>& out) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null())
    out.reset();
  else
    out = it->template get<T>();
}

template <typename F>
void guarded(const char* what, F&& body) {
  try {
    body();
  } catch (const json::exception& e) {
    throw FormatError(0, what, e.what());
  }
}

std::optional<std::string> optional_string(const json& j, const char* key,
                                           const std::string& path) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) throw FormatError(0, path + "." + key, "expected a string");
  return it->get<std::string>();
}

ViewState read_view_state(const json& j, const std::string& path) {
  if (!j.is_object()) throw FormatError(0, path, "expected an object");
  ViewState v;
  auto prop = j.find("property");
  if (prop == j.end() || !prop->is_string())
    throw FormatError(0, path + ".property", "expected a string");
  v.property = prop->get<std::string>();
  v.focus = optional_string(j, "focus", path);
  v.selection = optional_string(j, "selection", path);

  if (auto it = j.find("overrides"); it != j.end() && !it->is_null()) {
    if (!it->is_array()) throw FormatError(0, path + ".overrides", "expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const json& o = (*it)[i];
      const std::string at = path + ".overrides[" + std::to_string(i) + "]";
      if (!o.is_object() || !o.contains("occ") || !o["occ"].is_number_integer())
        throw FormatError(0, at + ".occ", "expected an integer");
      if (!o.contains("mode") || !o["mode"].is_string())
        throw FormatError(0, at + ".mode", "expected \"expand\" or \"collapse\"");
      const auto mode = o["mode"].get<std::string>();
      Override what;
      if (mode == "expand")
        what = Override::ForceExpanded;
      else if (mode == "collapse")
        what = Override::ForceCollapsed;
      else
        throw FormatError(0, at + ".mode", "expected \"expand\" or \"collapse\"");
      const auto occ = o["occ"].get<long long>();
      if (occ < INT32_MIN || occ > INT32_MAX) throw UnknownOccurrenceError(static_cast<long>(occ));
      v.overrides[static_cast<OccId>(occ)] = what;
    }
  }
  if (auto it = j.find("pinned"); it != j.end() && !it->is_null()) {
    if (!it->is_array()) throw FormatError(0, path + ".pinned", "expected an array");
    for (const auto& p : *it) {
      if (!p.is_string()) throw FormatError(0, path + ".pinned", "expected strings");
      v.pinned.insert(p.get<std::string>());
    }
  }
  if (auto it = j.find("labelOffsets"); it != j.end() && !it->is_null()) {
    if (!it->is_object()) throw FormatError(0, path + ".labelOffsets", "expected an object");
    for (const auto& [id, off] : it->items()) {
      if (!off.is_array() || off.size() != 2 || !off[0].is_number_integer() ||
          !off[1].is_number_integer())
        throw FormatError(0, path + ".labelOffsets." + id, "expected [dx, dy]");
      v.label_offsets[id] = {off[0].get<int>(), off[1].get<int>()};
    }
  }
  return v;
}

}  // namespace

void to_json(json& j, const ViewState& v) {
  j = json::object();
  j["property"] = v.property;
  put_optional(j, "focus", v.focus);
  put_optional(j, "selection", v.selection);
  json overrides = json::array();
  for (const auto& [occ, what] : v.overrides)
    overrides.push_back(
        {{"occ", occ}, {"mode", what == Override::ForceExpanded ? "expand" : "collapse"}});
  j["overrides"] = std::move(overrides);
  j["pinned"] = v.pinned;
  json offsets = json::object();
  for (const auto& [id, off] : v.label_offsets) offsets[id] = {off.first, off.second};
  j["labelOffsets"] = std::move(offsets);
}

void from_json(const json& j, ViewState& v) { v = read_view_state(j, "viewState"); }

ViewState parse_view_state(const json& j, const char* field) { return read_view_state(j, field); }

void to_json(json& j, const Legend& legend) {
  j = {{"bins", legend.bins}, {"colors", legend.colors}};
}

void from_json(const json& j, Legend& legend) {
  guarded("legend", [&] {
    legend.bins = j.at("bins").get<decltype(legend.bins)>();
    legend.colors = j.at("colors").get<std::vector<std::string>>();
  });
}

void to_json(json& j, const Box& b) {
  j = {{"ref", b.ref}, {"kind", to_string(b.kind)}, {"occ", b.occ}, {"x", b.x},
       {"y", b.y},     {"w", b.w},                  {"h", b.h},     {"depth", b.depth}};
}

void from_json(const json& j, Box& b) {
  guarded("box", [&] {
    b.ref = j.at("ref").get<std::string>();
    b.kind = parse_enum(j.at("kind"), kBoxKinds, "box.kind");
    b.occ = j.at("occ").get<OccId>();
    b.x = j.at("x").get<int>();
    b.y = j.at("y").get<int>();
    b.w = j.at("w").get<int>();
    b.h = j.at("h").get<int>();
    b.depth = j.at("depth").get<int>();
  });
}

void to_json(json& j, const Glyph& g) {
  j = {{"ref", g.ref}, {"kind", to_string(g.kind)}, {"occ", g.occ},
       {"cx", g.cx},   {"cy", g.cy},                {"r", g.r}};
  if (!g.class_id.empty()) j["classId"] = g.class_id;
  put_optional(j, "colorBin", g.color_bin);
  put_optional(j, "countLabel", g.count_label);
  put_optional(j, "shadowColor", g.shadow_color);
  if (g.selection)
    j["selection"] = {{"outline", g.selection->outline},
                      {"inArrow", g.selection->in_arrow},
                      {"outArrow", g.selection->out_arrow},
                      {"pulsingRing", g.selection->pulsing_ring}};
}

void from_json(const json& j, Glyph& g) {
  guarded("glyph", [&] {
    g.ref = j.at("ref").get<std::string>();
    g.kind = parse_enum(j.at("kind"), kGlyphKinds, "glyph.kind");
    g.occ = j.at("occ").get<OccId>();
    g.class_id = j.value("classId", std::string());
    g.cx = j.at("cx").get<int>();
    g.cy = j.at("cy").get<int>();
    g.r = j.at("r").get<int>();
    get_optional(j, "colorBin", g.color_bin);
    get_optional(j, "countLabel", g.count_label);
    get_optional(j, "shadowColor", g.shadow_color);
    if (auto it = j.find("selection"); it != j.end() && !it->is_null()) {
      g.selection = SelectionMark{it->at("outline").get<bool>(), it->at("inArrow").get<bool>(),
                                  it->at("outArrow").get<bool>(),
                                  it->at("pulsingRing").get<bool>()};
    } else {
      g.selection.reset();
    }
  });
}

void to_json(json& j, const Separator& s) {
  j = {{"ref", s.ref},
       {"x", s.x},
       {"yTop", s.y_top},
       {"yBottom", s.y_bottom},
       {"style", to_string(s.style)}};
}

void from_json(const json& j, Separator& s) {
  guarded("separator", [&] {
    s.ref = j.at("ref").get<std::string>();
    s.x = j.at("x").get<int>();
    s.y_top = j.at("yTop").get<int>();
    s.y_bottom = j.at("yBottom").get<int>();
    s.style = parse_enum(j.at("style"), kSeparatorStyles, "separator.style");
  });
}

void to_json(json& j, const Label& l) {
  j = {{"ref", l.ref},
       {"text", l.text},
       {"classId", l.class_id},
       {"x", l.x},
       {"y", l.y},
       {"w", l.w},
       {"h", l.h},
       {"orientation", to_string(l.orientation)},
       {"kind", to_string(l.kind)}};
  put_optional(j, "colorBin", l.color_bin);
}

void from_json(const json& j, Label& l) {
  guarded("label", [&] {
    l.ref = j.at("ref").get<std::string>();
    l.text = j.at("text").get<std::string>();
    l.class_id = j.at("classId").get<std::string>();
    l.x = j.at("x").get<int>();
    l.y = j.at("y").get<int>();
    l.w = j.at("w").get<int>();
    l.h = j.at("h").get<int>();
    l.orientation = parse_enum(j.at("orientation"), kOrientations, "label.orientation");
    l.kind = parse_enum(j.at("kind"), kLabelKinds, "label.kind");
    get_optional(j, "colorBin", l.color_bin);
  });
}

void to_json(json& j, const Layout& layout) {
  j = {{"boxes", layout.boxes},   {"glyphs", layout.glyphs},   {"separators", layout.separators},
       {"labels", layout.labels}, {"legend", layout.legend},   {"totalW", layout.total_w},
       {"totalH", layout.total_h}};
}

void from_json(const json& j, Layout& layout) {
  guarded("layout", [&] {
    layout.boxes = j.at("boxes").get<std::vector<Box>>();
    layout.glyphs = j.at("glyphs").get<std::vector<Glyph>>();
    layout.separators = j.at("separators").get<std::vector<Separator>>();
    layout.labels = j.at("labels").get<std::vector<Label>>();
    layout.legend = j.at("legend").get<Legend>();
    layout.total_w = j.at("totalW").get<int>();
    layout.total_h = j.at("totalH").get<int>();
  });
}

void to_json(json& j, const LayoutDiff& diff) {
  json moved = json::array();
  for (const auto& m : diff.moved) moved.push_back({{"ref", m.ref}, {"dx", m.dx}, {"dy", m.dy}});
  json resized = json::array();
  for (const auto& r : diff.resized) resized.push_back({{"ref", r.ref}, {"w", r.w}, {"h", r.h}});
  j = {{"moved", std::move(moved)},
       {"resized", std::move(resized)},
       {"added", diff.added},
       {"removed", diff.removed},
       {"changedRegion", diff.changed_region},
       {"totalW", diff.total_w},
       {"totalH", diff.total_h},
       {"highlightMs", diff.highlight_ms}};
  put_optional(j, "legend", diff.legend);
}

void from_json(const json& j, LayoutDiff& diff) {
  guarded("diff", [&] {
    diff.moved.clear();
    for (const auto& m : j.at("moved"))
      diff.moved.push_back({m.at("ref").get<std::string>(), m.at("dx").get<int>(),
                            m.at("dy").get<int>()});
    diff.resized.clear();
    for (const auto& r : j.at("resized"))
      diff.resized.push_back({r.at("ref").get<std::string>(), r.at("w").get<int>(),
                              r.at("h").get<int>()});
    diff.added = j.at("added").get<Layout>();
    diff.removed = j.at("removed").get<std::vector<std::string>>();
    diff.changed_region = j.at("changedRegion").get<std::vector<std::string>>();
    diff.total_w = j.at("totalW").get<int>();
    diff.total_h = j.at("totalH").get<int>();
    diff.highlight_ms = j.at("highlightMs").get<int>();
    get_optional(j, "legend", diff.legend);
  });
}

void to_json(json& j, const SummaryStats& stats) {
  j = {{"classCount", stats.class_count},
       {"propertyCount", stats.property_count},
       {"associationCount", stats.association_count},
       {"perPropertyCounts", stats.per_property_counts},
       {"rootCount", stats.root_count},
       {"maxDepth", stats.max_depth}};
}

void to_json(json& j, const SearchResult& r) {
  j = {{"classId", r.class_id},
       {"label", r.label},
       {"rank", to_string(r.rank)},
       {"associationCount", r.association_count}};
}

}  // namespace ontoplot
