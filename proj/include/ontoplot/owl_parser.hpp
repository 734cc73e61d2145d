#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ontoplot/ontology.hpp"

namespace ontoplot {

enum class AxiomKind {
  ClassDecl,
  ObjectPropertyDecl,
  SubClassNamed,           // subject ⊑ object
  SubClassRestriction,     // subject ⊑ ∃property.object
  EquivalentIntersection,  // marker for a lifted EquivalentClasses axiom
  LabelAnnotation,         // subject has rdfs:label text
  Skipped,                 // construct outside the supported subset
};

std::string_view to_string(AxiomKind kind);

/// One recognised (or skipped) axiom. Only the members relevant to `kind`
/// are populated; all ids are fully expanded IRIs.
struct RawAxiom {
  AxiomKind kind = AxiomKind::Skipped;
  std::string subject;
  std::string property;
  std::string object;
  std::string text;       // label literal
  std::string construct;  // construct name for Skipped
  std::size_t line = 0;

  friend bool operator==(const RawAxiom&, const RawAxiom&) = default;
};

struct ParseReport {
  std::vector<RawAxiom> axioms;
  std::map<std::string, std::size_t> skipped_counts;
  std::map<std::string, std::string> prefixes;
  std::optional<std::string> ontology_iri;
  std::vector<std::string> warnings;

  // Conservation bookkeeping over top-level constructs (prefix
  // declarations and the axioms inside Ontology(...)).
  std::size_t construct_count = 0;
  std::size_t recognized_count = 0;
  std::size_t prefix_count = 0;

  std::size_t skipped_total() const;

  friend bool operator==(const ParseReport&, const ParseReport&) = default;
};

/// Parses the supported OWL 2 Functional-Style Syntax subset. Unsupported
/// axioms are recorded as Skipped. Throws SyntaxError.
ParseReport parse_functional_syntax(std::string_view text);

/// One association per SubClassRestriction record, deduplicated, in
/// first-occurrence order.
std::vector<Association> extract_associations(const ParseReport& report);

struct LabelResolution {
  std::map<std::string, std::string> labels;
  std::vector<std::string> warnings;
};

/// Labels for every class and property id mentioned in the report;
/// rdfs:label wins, else the IRI local name.
LabelResolution resolve_labels(const ParseReport& report);

/// parse -> extract -> resolve -> build_snapshot, for already-parsed text.
OntologySnapshot snapshot_from_report(const ParseReport& report,
                                      std::string source = "<memory>");

/// Loads `.ofn` (functional syntax) or `.json` (native document).
/// Throws IoError when the file cannot be read.
OntologySnapshot load_owl(const std::filesystem::path& path);

}  // namespace ontoplot
