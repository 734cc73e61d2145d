#include "ontoplot/ontology.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include <json.hpp>

#include "ontoplot/error.hpp"

namespace ontoplot {

std::string local_name(std::string_view iri) {
  if (auto hash = iri.rfind('#'); hash != std::string_view::npos && hash + 1 < iri.size())
    return std::string(iri.substr(hash + 1));
  auto trimmed = iri;
  while (!trimmed.empty() && trimmed.back() == '/') trimmed.remove_suffix(1);
  if (auto slash = trimmed.rfind('/'); slash != std::string_view::npos)
    return std::string(trimmed.substr(slash + 1));
  return std::string(iri);
}

std::optional<ClassIndex> OntologySnapshot::find_class(std::string_view id) const {
  auto it = class_lookup_.find(std::string(id));
  if (it == class_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<PropertyIndex> OntologySnapshot::find_property(std::string_view id) const {
  auto it = property_lookup_.find(std::string(id));
  if (it == property_lookup_.end()) return std::nullopt;
  return it->second;
}

ClassIndex OntologySnapshot::class_index(std::string_view id) const {
  if (auto c = find_class(id)) return *c;
  throw UnknownClassError(std::string(id));
}

PropertyIndex OntologySnapshot::property_index(std::string_view id) const {
  if (auto p = find_property(id)) return *p;
  throw UnknownPropertyError(std::string(id));
}

std::string OntologySnapshot::class_label(ClassIndex c) const {
  const auto& ref = classes_[c];
  return ref.label ? *ref.label : local_name(ref.id);
}

std::string OntologySnapshot::property_label(PropertyIndex p) const {
  const auto& ref = properties_[p];
  return ref.label ? *ref.label : local_name(ref.id);
}

namespace {

template <typename Ref>
std::vector<Ref> sorted_refs(std::vector<Ref> refs) {
  std::sort(refs.begin(), refs.end(),
            [](const Ref& a, const Ref& b) { return a.id < b.id; });
  return refs;
}

template <typename T>
std::vector<T> sorted(std::vector<T> values) {
  std::sort(values.begin(), values.end());
  return values;
}

// Merges duplicate declarations of one id. A label beats no label; two
// different labels keep the lexicographically smallest.
template <typename Ref>
void declare(std::vector<Ref>& out, std::unordered_map<std::string, std::uint32_t>& lookup,
             const Ref& ref, std::vector<std::string>& warnings) {
  auto [it, inserted] = lookup.emplace(ref.id, static_cast<std::uint32_t>(out.size()));
  if (inserted) {
    out.push_back(ref);
    return;
  }
  auto& existing = out[it->second];
  if (!ref.label) return;
  if (!existing.label) {
    existing.label = ref.label;
  } else if (*existing.label != *ref.label) {
    warnings.push_back("conflicting labels for " + ref.id + ": '" + *existing.label +
                       "' and '" + *ref.label + "'");
    existing.label = std::min(*existing.label, *ref.label);
  }
}

enum class Mark : std::uint8_t { White, Grey, Black };

// Iterative colour-marking DFS along parent edges. Returns one cycle as the
// sequence of classes on the grey stack, starting at the re-entered class.
std::optional<std::vector<ClassIndex>> find_cycle(
    const std::vector<std::vector<ClassIndex>>& parents) {
  const auto n = parents.size();
  std::vector<Mark> mark(n, Mark::White);
  std::vector<std::pair<ClassIndex, std::size_t>> stack;
  for (ClassIndex start = 0; start < n; ++start) {
    if (mark[start] != Mark::White) continue;
    stack.emplace_back(start, 0);
    mark[start] = Mark::Grey;
    while (!stack.empty()) {
      auto& [node, next] = stack.back();
      if (next == parents[node].size()) {
        mark[node] = Mark::Black;
        stack.pop_back();
        continue;
      }
      ClassIndex up = parents[node][next++];
      if (mark[up] == Mark::Grey) {
        std::vector<ClassIndex> cycle;
        auto it = std::find_if(stack.begin(), stack.end(),
                               [up](const auto& frame) { return frame.first == up; });
        for (; it != stack.end(); ++it) cycle.push_back(it->first);
        return cycle;
      }
      if (mark[up] == Mark::White) {
        mark[up] = Mark::Grey;
        stack.emplace_back(up, 0);
      }
    }
  }
  return std::nullopt;
}

}  // namespace

bool operator==(const OntologySnapshot& a, const OntologySnapshot& b) {
  return sorted_refs(a.classes_) == sorted_refs(b.classes_) &&
         sorted_refs(a.properties_) == sorted_refs(b.properties_) &&
         sorted(a.edges_) == sorted(b.edges_) &&
         sorted(a.associations_) == sorted(b.associations_);
}

OntologySnapshot build_snapshot(SnapshotInput input) {
  OntologySnapshot s;
  s.provenance_.source = std::move(input.source);
  auto& warnings = s.provenance_.warnings;
  warnings = std::move(input.warnings);

  for (const auto& c : input.classes) {
    if (c.id.empty()) throw FormatError(0, "classes", "class with empty id");
    declare(s.classes_, s.class_lookup_, c, warnings);
  }
  for (const auto& p : input.properties) {
    if (p.id.empty()) throw FormatError(0, "properties", "property with empty id");
    declare(s.properties_, s.property_lookup_, p, warnings);
  }

  auto ensure_class = [&](const std::string& id) {
    if (id.empty()) throw FormatError(0, "edges", "empty class reference");
    if (s.class_lookup_.count(id)) return s.class_lookup_.at(id);
    warnings.push_back("undeclared class auto-declared: " + id);
    declare(s.classes_, s.class_lookup_, ClassRef{id, std::nullopt}, warnings);
    return s.class_lookup_.at(id);
  };
  auto ensure_property = [&](const std::string& id) {
    if (id.empty()) throw FormatError(0, "associations", "empty property reference");
    if (s.property_lookup_.count(id)) return s.property_lookup_.at(id);
    warnings.push_back("undeclared property auto-declared: " + id);
    declare(s.properties_, s.property_lookup_, ObjectPropertyRef{id, std::nullopt}, warnings);
    return s.property_lookup_.at(id);
  };

  std::set<std::pair<ClassIndex, ClassIndex>> seen_edges;
  std::vector<std::pair<ClassIndex, ClassIndex>> indexed_edges;
  for (auto& e : input.edges) {
    ClassIndex child = ensure_class(e.child);
    ClassIndex parent = ensure_class(e.parent);
    if (seen_edges.emplace(child, parent).second) {
      indexed_edges.emplace_back(child, parent);
      s.edges_.push_back(std::move(e));
    }
  }

  std::set<std::tuple<ClassIndex, PropertyIndex, ClassIndex>> seen_assocs;
  for (auto& a : input.associations) {
    ClassIndex src = ensure_class(a.source);
    PropertyIndex prop = ensure_property(a.property);
    ClassIndex dst = ensure_class(a.target);
    if (seen_assocs.emplace(src, prop, dst).second) {
      s.indexed_associations_.push_back({src, prop, dst});
      s.associations_.push_back(std::move(a));
    }
  }

  if (s.classes_.empty()) throw EmptyOntologyError();

  s.parents_.assign(s.classes_.size(), {});
  s.children_.assign(s.classes_.size(), {});
  for (auto [child, parent] : indexed_edges) {
    s.parents_[child].push_back(parent);
    s.children_[parent].push_back(child);
  }

  if (auto cycle = find_cycle(s.parents_)) {
    std::vector<std::string> ids;
    for (ClassIndex c : *cycle) ids.push_back(s.classes_[c].id);
    throw CycleError(std::move(ids));
  }
  return s;
}

namespace {

using nlohmann::json;

std::size_t line_of(std::string_view bytes, std::size_t offset) {
  offset = std::min(offset, bytes.size());
  return 1 + static_cast<std::size_t>(std::count(bytes.begin(), bytes.begin() + offset, '\n'));
}

const json& section(const json& doc, const char* name) {
  static const json empty = json::array();
  auto it = doc.find(name);
  if (it == doc.end()) return empty;
  if (!it->is_array()) throw FormatError(0, name, "expected an array");
  return *it;
}

std::string string_field(const json& item, const std::string& where, const char* key) {
  auto it = item.find(key);
  if (it == item.end() || !it->is_string())
    throw FormatError(0, where + "." + key, "missing or non-string member");
  return it->get<std::string>();
}

std::optional<std::string> optional_label(const json& item, const std::string& where) {
  auto it = item.find("label");
  if (it == item.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) throw FormatError(0, where + ".label", "label must be a string");
  return it->get<std::string>();
}

std::string where(const char* name, std::size_t i) {
  return std::string(name) + "[" + std::to_string(i) + "]";
}

}  // namespace

OntologySnapshot read_native_document(std::string_view bytes, std::string source) {
  SnapshotInput input;
  input.source = std::move(source);
  if (bytes.find_first_not_of(" \t\r\n") == std::string_view::npos) throw EmptyOntologyError();

  json doc;
  try {
    doc = json::parse(bytes.begin(), bytes.end());
  } catch (const json::parse_error& e) {
    throw FormatError(line_of(bytes, e.byte == 0 ? 0 : e.byte - 1), "", e.what());
  }
  if (!doc.is_object()) throw FormatError(1, "", "document must be a JSON object");

  static const std::set<std::string> known = {"classes", "properties", "edges", "associations"};
  for (const auto& [key, value] : doc.items())
    if (!known.count(key)) input.warnings.push_back("unknown member ignored: " + key);

  const auto& classes = section(doc, "classes");
  for (std::size_t i = 0; i < classes.size(); ++i) {
    auto w = where("classes", i);
    if (!classes[i].is_object()) throw FormatError(0, w, "expected an object");
    input.classes.push_back({string_field(classes[i], w, "id"), optional_label(classes[i], w)});
  }
  const auto& properties = section(doc, "properties");
  for (std::size_t i = 0; i < properties.size(); ++i) {
    auto w = where("properties", i);
    if (!properties[i].is_object()) throw FormatError(0, w, "expected an object");
    input.properties.push_back(
        {string_field(properties[i], w, "id"), optional_label(properties[i], w)});
  }
  const auto& edges = section(doc, "edges");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    auto w = where("edges", i);
    if (!edges[i].is_object()) throw FormatError(0, w, "expected an object");
    input.edges.push_back({string_field(edges[i], w, "child"), string_field(edges[i], w, "parent")});
  }
  const auto& assocs = section(doc, "associations");
  for (std::size_t i = 0; i < assocs.size(); ++i) {
    auto w = where("associations", i);
    if (!assocs[i].is_object()) throw FormatError(0, w, "expected an object");
    input.associations.push_back({string_field(assocs[i], w, "source"),
                                  string_field(assocs[i], w, "property"),
                                  string_field(assocs[i], w, "target")});
  }
  return build_snapshot(std::move(input));
}

std::string write_native_document(const OntologySnapshot& snapshot) {
  auto refs_json = [](const auto& refs) {
    json out = json::array();
    for (const auto& r : sorted_refs(refs)) {
      json item = {{"id", r.id}};
      if (r.label) item["label"] = *r.label;
      out.push_back(std::move(item));
    }
    return out;
  };
  json doc;
  doc["classes"] = refs_json(snapshot.classes());
  doc["properties"] = refs_json(snapshot.properties());
  doc["edges"] = json::array();
  for (const auto& e : sorted(snapshot.edges()))
    doc["edges"].push_back({{"child", e.child}, {"parent", e.parent}});
  doc["associations"] = json::array();
  for (const auto& a : sorted(snapshot.associations()))
    doc["associations"].push_back(
        {{"source", a.source}, {"property", a.property}, {"target", a.target}});
  return doc.dump(2) + "\n";
}

SummaryStats summarize(const OntologySnapshot& snapshot) {
  SummaryStats stats;
  stats.class_count = snapshot.class_count();
  stats.property_count = snapshot.property_count();
  stats.association_count = snapshot.associations().size();
  for (const auto& p : snapshot.properties()) stats.per_property_counts[p.id] = 0;
  for (const auto& a : snapshot.associations()) ++stats.per_property_counts[a.property];

  // Longest subclass chain, by memoised depth over parent edges.
  const auto n = snapshot.class_count();
  std::vector<std::size_t> depth(n, 0);
  std::vector<bool> done(n, false);
  std::vector<std::pair<ClassIndex, std::size_t>> stack;
  for (ClassIndex c = 0; c < n; ++c) {
    if (snapshot.parents(c).empty()) ++stats.root_count;
    if (done[c]) continue;
    stack.emplace_back(c, 0);
    while (!stack.empty()) {
      auto& [node, next] = stack.back();
      const auto& ups = snapshot.parents(node);
      if (next < ups.size()) {
        ClassIndex up = ups[next++];
        if (!done[up]) stack.emplace_back(up, 0);
        continue;
      }
      std::size_t d = 0;
      for (ClassIndex up : ups) d = std::max(d, depth[up] + 1);
      depth[node] = d;
      done[node] = true;
      stats.max_depth = std::max(stats.max_depth, d);
      stack.pop_back();
    }
  }
  return stats;
}

}  // namespace ontoplot

namespace ontoplot {
namespace {

template <typename Refs>
std::optional<std::uint32_t> unique_match(const Refs& refs, std::string_view text) {
  std::optional<std::uint32_t> by_local, by_label;
  bool local_ambiguous = false, label_ambiguous = false;
  for (std::uint32_t i = 0; i < refs.size(); ++i) {
    const auto& ref = refs[i];
    if (local_name(ref.id) == text) {
      local_ambiguous = local_ambiguous || by_local.has_value();
      by_local = i;
    }
    if (ref.label && *ref.label == text) {
      label_ambiguous = label_ambiguous || by_label.has_value();
      by_label = i;
    }
  }
  if (by_local && !local_ambiguous) return by_local;
  if (by_label && !label_ambiguous) return by_label;
  return std::nullopt;
}

}  // namespace

ClassIndex resolve_class(const OntologySnapshot& snapshot, std::string_view text) {
  if (auto c = snapshot.find_class(text)) return *c;
  if (auto c = unique_match(snapshot.classes(), text)) return *c;
  throw UnknownClassError(std::string(text));
}

PropertyIndex resolve_property(const OntologySnapshot& snapshot, std::string_view text) {
  if (auto p = snapshot.find_property(text)) return *p;
  if (auto p = unique_match(snapshot.properties(), text)) return *p;
  throw UnknownPropertyError(std::string(text));
}

}  // namespace ontoplot
