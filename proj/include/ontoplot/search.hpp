#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ontoplot/ontology.hpp"

namespace ontoplot {

enum class MatchRank { Exact, Prefix, Substring };

std::string_view to_string(MatchRank rank);

struct SearchResult {
  std::string class_id;
  std::string label;
  MatchRank rank = MatchRank::Substring;
  /// Associations of the requested property touching the class; 0 without one.
  std::size_t association_count = 0;

  friend bool operator==(const SearchResult&, const SearchResult&) = default;
};

inline constexpr std::size_t kMaxSearchResults = 50;

/// ASCII case-insensitive label match, ordered by rank, then label, then id.
/// An empty query yields no results.
std::vector<SearchResult> search(const OntologySnapshot& snapshot, std::string_view query,
                                 std::optional<PropertyIndex> property = std::nullopt);

}  // namespace ontoplot
