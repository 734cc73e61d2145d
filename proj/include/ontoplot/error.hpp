#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ontoplot {

/// Base of every error raised by the library. `code()` is the stable
/// machine-readable identifier used in HTTP error bodies and CLI diagnostics.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

class CycleError : public Error {
 public:
  explicit CycleError(std::vector<std::string> cycle);
  const std::vector<std::string>& cycle() const noexcept { return cycle_; }

 private:
  std::vector<std::string> cycle_;
};

class EmptyOntologyError : public Error {
 public:
  EmptyOntologyError() : Error("EmptyOntology", "ontology declares no classes") {}
};

/// Malformed native document. `line` is 1-based, 0 when unknown.
class FormatError : public Error {
 public:
  FormatError(std::size_t line, std::string field, const std::string& message);
  std::size_t line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t line, const std::string& message);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& message) : Error("IoError", message) {}
};

class UnknownClassError : public Error {
 public:
  explicit UnknownClassError(const std::string& id)
      : Error("UnknownClass", "unknown class: " + id) {}
};

class UnknownPropertyError : public Error {
 public:
  explicit UnknownPropertyError(const std::string& id)
      : Error("UnknownProperty", "unknown property: " + id) {}
};

class UnknownOccurrenceError : public Error {
 public:
  explicit UnknownOccurrenceError(long occ)
      : Error("UnknownOccurrence", "unknown occurrence: " + std::to_string(occ)) {}
};

class RootCollapseError : public Error {
 public:
  RootCollapseError() : Error("RootCollapse", "the root occurrence cannot be collapsed") {}
};

class NoCommonAncestorError : public Error {
 public:
  NoCommonAncestorError(const std::string& a, const std::string& b)
      : Error("NoCommonAncestor", "no common ancestor of " + a + " and " + b) {}
};

class InconsistentPlanError : public Error {
 public:
  explicit InconsistentPlanError(const std::string& message)
      : Error("InconsistentPlan", message) {}
};

/// Bad command-line or request arguments.
class UsageError : public Error {
 public:
  explicit UsageError(const std::string& message) : Error("Usage", message) {}
};

}  // namespace ontoplot
