#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ontoplot {

using ClassIndex = std::uint32_t;
using PropertyIndex = std::uint32_t;

struct ClassRef {
  std::string id;
  std::optional<std::string> label;

  friend bool operator==(const ClassRef&, const ClassRef&) = default;
};

struct ObjectPropertyRef {
  std::string id;
  std::optional<std::string> label;

  friend bool operator==(const ObjectPropertyRef&, const ObjectPropertyRef&) = default;
};

/// child ⊑ parent
struct SubclassEdge {
  std::string child;
  std::string parent;

  friend auto operator<=>(const SubclassEdge&, const SubclassEdge&) = default;
};

/// source ⊑ ∃property.target
struct Association {
  std::string source;
  std::string property;
  std::string target;

  friend auto operator<=>(const Association&, const Association&) = default;
};

struct IndexedAssociation {
  ClassIndex source;
  PropertyIndex property;
  ClassIndex target;
};

struct Provenance {
  std::string source;
  std::vector<std::string> warnings;

  std::size_t warning_count() const noexcept { return warnings.size(); }
};

/// Raw, possibly duplicated collections handed to build_snapshot.
struct SnapshotInput {
  std::vector<ClassRef> classes;
  std::vector<ObjectPropertyRef> properties;
  std::vector<SubclassEdge> edges;
  std::vector<Association> associations;
  std::string source = "<memory>";
  std::vector<std::string> warnings;
};

/// Returns the fragment after '#', else the last '/' segment, else the
/// whole IRI.
std::string local_name(std::string_view iri);

/// Immutable, validated ontology. Collections keep first-declaration
/// order; equality ignores order and provenance.
class OntologySnapshot {
 public:
  const std::vector<ClassRef>& classes() const noexcept { return classes_; }
  const std::vector<ObjectPropertyRef>& properties() const noexcept { return properties_; }
  const std::vector<SubclassEdge>& edges() const noexcept { return edges_; }
  const std::vector<Association>& associations() const noexcept { return associations_; }
  const std::vector<IndexedAssociation>& indexed_associations() const noexcept {
    return indexed_associations_;
  }
  const Provenance& provenance() const noexcept { return provenance_; }

  std::size_t class_count() const noexcept { return classes_.size(); }
  std::size_t property_count() const noexcept { return properties_.size(); }

  std::optional<ClassIndex> find_class(std::string_view id) const;
  std::optional<PropertyIndex> find_property(std::string_view id) const;
  /// Throws UnknownClassError.
  ClassIndex class_index(std::string_view id) const;
  /// Throws UnknownPropertyError.
  PropertyIndex property_index(std::string_view id) const;

  const std::string& class_id(ClassIndex c) const { return classes_[c].id; }
  const std::string& property_id(PropertyIndex p) const { return properties_[p].id; }
  /// Label, or the IRI local name when no label was given.
  std::string class_label(ClassIndex c) const;
  std::string property_label(PropertyIndex p) const;

  /// Direct superclasses in edge declaration order.
  const std::vector<ClassIndex>& parents(ClassIndex c) const { return parents_[c]; }
  /// Direct subclasses in edge declaration order.
  const std::vector<ClassIndex>& children(ClassIndex c) const { return children_[c]; }

  friend bool operator==(const OntologySnapshot& a, const OntologySnapshot& b);

 private:
  friend OntologySnapshot build_snapshot(SnapshotInput input);

  std::vector<ClassRef> classes_;
  std::vector<ObjectPropertyRef> properties_;
  std::vector<SubclassEdge> edges_;
  std::vector<Association> associations_;
  std::vector<IndexedAssociation> indexed_associations_;
  std::unordered_map<std::string, ClassIndex> class_lookup_;
  std::unordered_map<std::string, PropertyIndex> property_lookup_;
  std::vector<std::vector<ClassIndex>> parents_;
  std::vector<std::vector<ClassIndex>> children_;
  Provenance provenance_;
};

/// Deduplicates and validates. References to undeclared classes or
/// properties auto-declare them and record a warning.
/// Throws CycleError, EmptyOntologyError.
OntologySnapshot build_snapshot(SnapshotInput input);

/// Parses the native JSON document. Throws FormatError, EmptyOntologyError,
/// CycleError.
OntologySnapshot read_native_document(std::string_view bytes,
                                      std::string source = "<memory>");

/// Canonical form: every section sorted byte-wise by ids.
std::string write_native_document(const OntologySnapshot& snapshot);

struct SummaryStats {
  std::size_t class_count = 0;
  std::size_t property_count = 0;
  std::size_t association_count = 0;
  std::map<std::string, std::size_t> per_property_counts;
  std::size_t root_count = 0;
  std::size_t max_depth = 0;

  friend bool operator==(const SummaryStats&, const SummaryStats&) = default;
};

SummaryStats summarize(const OntologySnapshot& snapshot);

/// Resolves user-supplied text to a class: exact id, else a unique IRI
/// local name, else a unique label. Throws UnknownClassError.
ClassIndex resolve_class(const OntologySnapshot& snapshot, std::string_view text);

/// Same resolution order for object properties. Throws UnknownPropertyError.
PropertyIndex resolve_property(const OntologySnapshot& snapshot, std::string_view text);

}  // namespace ontoplot
