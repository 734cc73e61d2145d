#pragma once

// JSON encodings shared by the HTTP service, the CLI and tests. Field names
// are camelCase; absent optionals are omitted rather than null.

#include <json.hpp>

#include "ontoplot/hierarchy.hpp"
#include "ontoplot/layout.hpp"
#include "ontoplot/ontology.hpp"
#include "ontoplot/search.hpp"

namespace ontoplot {

void to_json(nlohmann::json& j, const ViewState& v);
/// Throws FormatError naming the offending field.
void from_json(const nlohmann::json& j, ViewState& v);

void to_json(nlohmann::json& j, const Legend& legend);
void from_json(const nlohmann::json& j, Legend& legend);
void to_json(nlohmann::json& j, const Box& b);
void from_json(const nlohmann::json& j, Box& b);
void to_json(nlohmann::json& j, const Glyph& g);
void from_json(const nlohmann::json& j, Glyph& g);
void to_json(nlohmann::json& j, const Separator& s);
void from_json(const nlohmann::json& j, Separator& s);
void to_json(nlohmann::json& j, const Label& l);
void from_json(const nlohmann::json& j, Label& l);
void to_json(nlohmann::json& j, const Layout& layout);
void from_json(const nlohmann::json& j, Layout& layout);
void to_json(nlohmann::json& j, const LayoutDiff& diff);
void from_json(const nlohmann::json& j, LayoutDiff& diff);

void to_json(nlohmann::json& j, const SummaryStats& stats);
void to_json(nlohmann::json& j, const SearchResult& r);

/// Parses a request body into a ViewState, wrapping JSON syntax errors in
/// FormatError.
ViewState parse_view_state(const nlohmann::json& j, const char* field);

}  // namespace ontoplot
