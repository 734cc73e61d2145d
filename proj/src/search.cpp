#include "ontoplot/search.hpp"

#include <algorithm>
#include <cctype>

namespace ontoplot {

std::string_view to_string(MatchRank rank) {
  switch (rank) {
    case MatchRank::Exact: return "Exact";
    case MatchRank::Prefix: return "Prefix";
    case MatchRank::Substring: return "Substring";
  }
  return "?";
}

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

std::vector<SearchResult> search(const OntologySnapshot& snapshot, std::string_view query,
                                 std::optional<PropertyIndex> property) {
  std::vector<SearchResult> results;
  if (query.empty()) return results;
  const std::string needle = lower(query);

  std::vector<std::size_t> counts(snapshot.class_count(), 0);
  if (property) {
    for (const auto& a : snapshot.indexed_associations()) {
      if (a.property != *property) continue;
      ++counts[a.source];
      if (a.target != a.source) ++counts[a.target];
    }
  }

  for (ClassIndex c = 0; c < snapshot.class_count(); ++c) {
    std::string label = snapshot.class_label(c);
    const std::string hay = lower(label);
    auto pos = hay.find(needle);
    if (pos == std::string::npos) continue;
    MatchRank rank = hay.size() == needle.size() ? MatchRank::Exact
                     : pos == 0                  ? MatchRank::Prefix
                                                 : MatchRank::Substring;
    results.push_back({snapshot.class_id(c), std::move(label), rank, counts[c]});
  }
  std::sort(results.begin(), results.end(), [](const SearchResult& a, const SearchResult& b) {
    if (a.rank != b.rank) return a.rank < b.rank;
    if (a.label != b.label) return a.label < b.label;
    return a.class_id < b.class_id;
  });
  if (results.size() > kMaxSearchResults) results.resize(kMaxSearchResults);
  return results;
}

}  // namespace ontoplot
