#include "ontoplot/query_command.hpp"

#include <algorithm>

#include "ontoplot/error.hpp"

namespace ontoplot {

namespace {

struct Signature {
  std::string name;
  std::vector<std::string> required;
  std::vector<std::string> optional;
};

const std::vector<Signature>& signatures() {
  static const std::vector<Signature> table = {
      {"parents", {"class"}, {}},
      {"children", {"class"}, {}},
      {"siblings", {"class"}, {}},
      {"path", {"class"}, {}},
      {"lca", {"a", "b"}, {}},
      {"assoc", {"class", "property"}, {"direction"}},
      {"count", {"class", "property"}, {"direction"}},
      {"max", {"property"}, {"direction"}},
      {"class-effect", {"class", "property"}, {"target"}},
      {"most-children", {"property", "target"}, {}},
      {"outliers", {"property", "target"}, {}},
  };
  return table;
}

const Signature& signature_of(std::string_view sub) {
  for (const auto& s : signatures())
    if (s.name == sub) return s;
  throw UsageError("unknown query subcommand: " + std::string(sub));
}

const std::string& require(const QueryArgs& args, const std::string& key) {
  auto it = args.find(key);
  if (it == args.end() || it->second.empty()) throw UsageError("missing argument: " + key);
  return it->second;
}

Direction direction_arg(const QueryArgs& args, Direction fallback) {
  auto it = args.find("direction");
  if (it == args.end() || it->second.empty()) return fallback;
  auto d = parse_direction(it->second);
  if (!d) throw UsageError("bad direction: " + it->second + " (out, in, both)");
  return *d;
}

bool flag_arg(const QueryArgs& args, const std::string& key) {
  auto it = args.find(key);
  if (it == args.end()) return false;
  if (it->second == "true" || it->second == "1" || it->second.empty()) return true;
  if (it->second == "false" || it->second == "0") return false;
  throw UsageError("bad boolean for " + key + ": " + it->second);
}

QueryOutput list_output(std::vector<std::string> ids) {
  QueryOutput out;
  out.json = ids;
  out.lines = std::move(ids);
  return out;
}

QueryOutput ranked_output(const RankedClasses& ranked) {
  QueryOutput out;
  for (const auto& c : ranked.classes) out.lines.push_back(c + " " + std::to_string(ranked.count));
  out.json = {{"classes", ranked.classes}, {"count", ranked.count}};
  return out;
}

}  // namespace

const std::vector<std::string>& query_subcommands() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& s : signatures()) out.push_back(s.name);
    return out;
  }();
  return names;
}

QueryArgs positional_query_args(std::string_view subcommand,
                                const std::vector<std::string>& positional) {
  const auto& sig = signature_of(subcommand);
  const std::size_t max = sig.required.size() + sig.optional.size();
  if (positional.size() < sig.required.size() || positional.size() > max)
    throw UsageError(std::string(subcommand) + " takes " + std::to_string(sig.required.size()) +
                     (max > sig.required.size() ? "-" + std::to_string(max) : "") + " arguments");
  QueryArgs args;
  for (std::size_t i = 0; i < positional.size(); ++i) {
    const auto& key =
        i < sig.required.size() ? sig.required[i] : sig.optional[i - sig.required.size()];
    args[key] = positional[i];
  }
  return args;
}

QueryOutput run_query(const HierarchyQueries& queries, std::string_view subcommand,
                      const QueryArgs& args) {
  const auto& sig = signature_of(subcommand);
  const auto& s = queries.snapshot();
  auto cls = [&](const std::string& key) { return s.class_id(resolve_class(s, require(args, key))); };
  auto prop = [&]() { return s.property_id(resolve_property(s, require(args, "property"))); };
  const std::string& name = sig.name;

  if (name == "parents") return list_output(queries.parents_of(cls("class")));
  if (name == "children") return list_output(queries.children_of(cls("class")));
  if (name == "siblings") return list_output(queries.siblings_of(cls("class")));
  if (name == "lca") return list_output(queries.closest_common_ancestors(cls("a"), cls("b")));
  if (name == "path") {
    QueryOutput out;
    auto paths = queries.paths_to_root(cls("class"));
    for (const auto& p : paths) {
      std::string line;
      for (const auto& id : p) line += (line.empty() ? "" : " -> ") + id;
      out.lines.push_back(std::move(line));
    }
    out.json = paths;
    return out;
  }
  if (name == "assoc")
    return list_output(
        queries.associated_classes(cls("class"), prop(), direction_arg(args, Direction::Both)));
  if (name == "count") {
    auto n = queries.association_count(cls("class"), prop(), direction_arg(args, Direction::Both));
    return {{std::to_string(n)}, n};
  }
  if (name == "max")
    return ranked_output(queries.max_association_classes(prop(), direction_arg(args, Direction::Out)));
  if (name == "class-effect") {
    const std::string parent = cls("class");
    const std::string property = prop();
    std::optional<std::string> target;
    if (auto it = args.find("target"); it != args.end() && !it->second.empty())
      target = cls("target");
    auto report = queries.class_effect(parent, property,
                                       target ? std::optional<std::string_view>(*target)
                                              : std::nullopt,
                                       flag_arg(args, "transitive"));
    QueryOutput out;
    out.lines.push_back(std::to_string(report.covered()) + "/" +
                        std::to_string(report.total_children) +
                        (report.holds ? " holds" : " does-not-hold"));
    for (const auto& c : report.covered_children) out.lines.push_back(c);
    out.json = {{"parent", report.parent},
                {"coveredChildren", report.covered_children},
                {"totalChildren", report.total_children},
                {"ratio", report.ratio()},
                {"holds", report.holds}};
    return out;
  }
  if (name == "most-children")
    return ranked_output(queries.most_associated_children(prop(), cls("target")));
  // outliers
  return list_output(queries.sibling_outliers(prop(), cls("target")));
}

}  // namespace ontoplot
