#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ontoplot/hierarchy.hpp"

namespace ontoplot {

/// Named query arguments: class, a, b, property, target, direction,
/// transitive ("true"/"false").
using QueryArgs = std::map<std::string, std::string, std::less<>>;

struct QueryOutput {
  std::vector<std::string> lines;  // CLI text, one item per line
  nlohmann::json json;             // HTTP body under "result"
};

/// Subcommand names accepted by run_query, in help order.
const std::vector<std::string>& query_subcommands();

/// Dispatches one hierarchy query. Class and property arguments go through
/// resolve_class / resolve_property. Throws UsageError, UnknownClassError,
/// UnknownPropertyError.
QueryOutput run_query(const HierarchyQueries& queries, std::string_view subcommand,
                      const QueryArgs& args);

/// Maps CLI positional arguments to named ones, e.g. `lca A B` to {a, b}.
QueryArgs positional_query_args(std::string_view subcommand,
                                const std::vector<std::string>& positional);

}  // namespace ontoplot
