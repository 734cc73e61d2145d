#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ontoplot/ontology.hpp"

namespace ontoplot {

using OccId = std::int32_t;

/// Class id of the synthetic root used when several classes lack a parent.
inline constexpr std::string_view kSyntheticRootId = "owl:Thing";
inline constexpr std::string_view kSyntheticRootLabel = "Thing";

struct OccurrenceNode {
  OccId occ = 0;
  std::optional<ClassIndex> class_index;  // empty for the synthetic root
  std::optional<OccId> parent;
  std::vector<OccId> children;
  int depth = 0;
  /// The first occurrence of a class carries its subtree; later
  /// occurrences under other parents are leaves.
  bool primary = true;
};

/// Display tree with one occurrence per (class, parent class) pair.
class OccurrenceTree {
 public:
  const std::vector<OccurrenceNode>& nodes() const noexcept { return nodes_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  OccId root() const noexcept { return 0; }
  bool has_synthetic_root() const noexcept { return synthetic_root_; }

  bool contains(OccId occ) const noexcept {
    return occ >= 0 && static_cast<std::size_t>(occ) < nodes_.size();
  }
  /// Throws UnknownOccurrenceError.
  const OccurrenceNode& node(OccId occ) const;
  const OccurrenceNode& operator[](OccId occ) const { return nodes_[static_cast<std::size_t>(occ)]; }

  /// All occurrences of a class, in creation order.
  const std::vector<OccId>& occurrences_of(ClassIndex c) const { return by_class_[c]; }

  std::string class_id(const OntologySnapshot& s, OccId occ) const;
  std::string label(const OntologySnapshot& s, OccId occ) const;

 private:
  friend OccurrenceTree build_occurrence_tree(const OntologySnapshot& snapshot);

  std::vector<OccurrenceNode> nodes_;
  std::vector<std::vector<OccId>> by_class_;
  bool synthetic_root_ = false;
};

OccurrenceTree build_occurrence_tree(const OntologySnapshot& snapshot);

enum class Direction { Out, In, Both };

std::optional<Direction> parse_direction(std::string_view text);

struct ClassEffectReport {
  std::string parent;
  std::vector<std::string> covered_children;
  std::size_t total_children = 0;
  bool holds = false;

  std::size_t covered() const noexcept { return covered_children.size(); }
  /// ratio as covered / total; 0 when there are no children.
  double ratio() const noexcept {
    return total_children == 0 ? 0.0 : double(covered()) / double(total_children);
  }
};

/// Classes attaining a maximum, with the maximum.
struct RankedClasses {
  std::vector<std::string> classes;
  std::size_t count = 0;

  friend bool operator==(const RankedClasses&, const RankedClasses&) = default;
};

/// Read-only query engine over asserted subclass edges and associations.
/// Set-valued results are returned sorted by id. Class and property
/// arguments are ids (see resolve_class for looser matching).
class HierarchyQueries {
 public:
  explicit HierarchyQueries(const OntologySnapshot& snapshot);

  const OntologySnapshot& snapshot() const noexcept { return *snapshot_; }

  std::vector<std::string> parents_of(std::string_view cls) const;
  std::vector<std::string> children_of(std::string_view cls) const;
  /// Other children of every parent; parentless classes are siblings of
  /// each other.
  std::vector<std::string> siblings_of(std::string_view cls) const;

  /// Every simple upward path from `cls` to a parentless class.
  std::vector<std::vector<std::string>> paths_to_root(std::string_view cls) const;

  /// Common ancestors (a class counts as its own ancestor) minimising the
  /// summed shortest upward distance. Returns the synthetic root id when
  /// the two classes share no asserted ancestor.
  std::vector<std::string> closest_common_ancestors(std::string_view a, std::string_view b) const;

  std::vector<std::string> associated_classes(std::string_view cls, std::string_view property,
                                              Direction direction) const;
  std::size_t association_count(std::string_view cls, std::string_view property,
                                Direction direction = Direction::Both) const;
  /// Classes with the most associations of `property` in `direction`.
  RankedClasses max_association_classes(std::string_view property,
                                        Direction direction = Direction::Out) const;

  /// Direct children (or, with `transitive`, leaf descendants) that are the
  /// source of a `property` association, to `target` when given.
  ClassEffectReport class_effect(std::string_view parent, std::string_view property,
                                 std::optional<std::string_view> target = std::nullopt,
                                 bool transitive = false) const;

  /// Parents with the most children associated with `target` in either
  /// direction.
  RankedClasses most_associated_children(std::string_view property,
                                         std::string_view target) const;

  /// Classes lacking an association with `target` whose siblings (at least
  /// one) all have one.
  std::vector<std::string> sibling_outliers(std::string_view property,
                                            std::string_view target) const;

  // Index-level primitives shared with compression and the service.
  std::vector<ClassIndex> sibling_indices(ClassIndex c) const;
  std::size_t count_indexed(ClassIndex c, PropertyIndex p, Direction d) const;
  bool linked(ClassIndex a, PropertyIndex p, ClassIndex b) const;

 private:
  std::vector<std::string> ids(std::vector<ClassIndex> classes) const;

  const OntologySnapshot* snapshot_;
  std::vector<ClassIndex> roots_;
  // Per class: indices into snapshot.indexed_associations().
  std::vector<std::vector<std::size_t>> outgoing_;
  std::vector<std::vector<std::size_t>> incoming_;
};

}  // namespace ontoplot
