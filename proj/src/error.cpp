#include "ontoplot/error.hpp"

namespace ontoplot {
namespace {

std::string describe_cycle(const std::vector<std::string>& cycle) {
  std::string out = "subclass cycle:";
  for (const auto& id : cycle) out += " " + id;
  if (!cycle.empty()) out += " " + cycle.front();
  return out;
}

}  // namespace

CycleError::CycleError(std::vector<std::string> cycle)
    : Error("Cycle", describe_cycle(cycle)), cycle_(std::move(cycle)) {}

FormatError::FormatError(std::size_t line, std::string field, const std::string& message)
    : Error("Format",
            (line > 0 ? "line " + std::to_string(line) + ": " : std::string()) +
                (field.empty() ? std::string() : field + ": ") + message),
      line_(line),
      field_(std::move(field)) {}

SyntaxError::SyntaxError(std::size_t line, const std::string& message)
    : Error("Syntax", "line " + std::to_string(line) + ": " + message), line_(line) {}

}  // namespace ontoplot
