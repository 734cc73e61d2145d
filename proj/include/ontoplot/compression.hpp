#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "ontoplot/hierarchy.hpp"
#include "ontoplot/ontology.hpp"

namespace ontoplot {

enum class InterestMode { Property, Focus };

/// Which classes carry associations of the selected property (or, in
/// focus mode, associations touching the focal class).
struct InterestModel {
  InterestMode mode = InterestMode::Property;
  PropertyIndex property = 0;
  std::optional<ClassIndex> focus;
  /// Association records touching each class, both directions.
  std::vector<std::size_t> count_by_class;
  std::vector<bool> interesting;
  /// Interesting occurrences in each occurrence's subtree, itself included.
  std::vector<std::size_t> subtree_interesting;

  bool is_interesting(ClassIndex c) const { return interesting[c]; }
  std::size_t count(ClassIndex c) const { return count_by_class[c]; }
};

InterestModel mark_interest(const OntologySnapshot& snapshot, const OccurrenceTree& tree,
                            std::string_view property);

InterestModel mark_focus_interest(const OntologySnapshot& snapshot, const OccurrenceTree& tree,
                                  std::string_view focus_class, std::string_view property);

enum class RegionKind { SquareMerge, Chain, Subtree };

std::string_view to_string(RegionKind kind);

struct CompressedRegion {
  RegionKind kind = RegionKind::Subtree;
  /// Visible parent of the hidden occurrences.
  OccId anchor = 0;
  /// SquareMerge: the hidden leaf children of `anchor`, in child order.
  /// Chain: the hidden path, top first. Subtree: the whole hidden subtree
  /// in preorder, its root first.
  std::vector<OccId> members;
  std::size_t max_assoc_inside = 0;
  /// Created by a collapse override rather than by detection.
  bool forced = false;

  std::size_t hidden_count() const noexcept { return members.size(); }
  /// Chain and Subtree regions are rooted at their first member.
  OccId root() const { return members.front(); }

  friend bool operator==(const CompressedRegion&, const CompressedRegion&) = default;
};

struct CompressionPlan {
  std::vector<CompressedRegion> regions;
  /// Visible occurrences, ascending.
  std::vector<OccId> visible;
  /// Per occurrence: index into `regions` hiding it, or -1 when visible.
  std::vector<std::int32_t> region_of;
  /// Instrumentation: occurrences visited by the detection pass.
  std::size_t visits = 0;

  bool is_visible(OccId occ) const { return region_of[static_cast<std::size_t>(occ)] < 0; }
};

enum class Override { ForceExpanded, ForceCollapsed };
using Overrides = std::map<OccId, Override>;

/// One depth-first pass: a child subtree with no interesting class is
/// hidden when its parent's subtree has one. Hidden leaves of one parent
/// merge into a square; hidden paths of two or more become a chain; the
/// rest become subtree glyphs. The root is always visible.
CompressionPlan detect_collapsible(const OccurrenceTree& tree, const InterestModel& interest);

/// Re-plans with user overrides. ForceExpanded exempts an occurrence and
/// everything below it from automatic compression; ForceCollapsed hides a
/// subtree even when it is interesting. Throws UnknownOccurrenceError,
/// RootCollapseError.
CompressionPlan apply_overrides(const CompressionPlan& base, const OccurrenceTree& tree,
                                const InterestModel& interest, const Overrides& overrides);

}  // namespace ontoplot
