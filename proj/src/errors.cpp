#include "mora/errors.hpp"

namespace mora {

std::string to_string(const SourceSpan& span) {
  if (span.line == 0) return "?";
  return std::to_string(span.line) + ":" + std::to_string(span.column);
}

ParseError::ParseError(const std::string& message, SourceSpan span)
    : Error(to_string(span) + ": syntax error: " + message), span_(span), detail_(message) {}

const char* to_string(Restriction r) {
  switch (r) {
    case Restriction::VariableParameterClash:
      return "variable-parameter-clash";
    case Restriction::ProbabilitySum:
      return "probability-sum";
    case Restriction::DependenceStructure:
      return "dependence-structure";
  }
  return "unknown";
}

NotProbSolvable::NotProbSolvable(Restriction restriction, const std::string& detail, SourceSpan span)
    : Error(to_string(span) + ": not Prob-solvable [" + to_string(restriction) + "]: " + detail),
      restriction_(restriction),
      span_(span),
      detail_(detail) {}

UnboundParameter::UnboundParameter(std::string name)
    : Error("unbound parameter '" + name + "'"), name_(std::move(name)) {}

namespace {
std::string describe_cycle(const std::vector<std::string>& cycle) {
  std::string out = "cyclic dependency between E-variables:";
  for (const auto& v : cycle) out += " E[" + v + "] ->";
  if (!cycle.empty()) out += " E[" + cycle.front() + "]";
  return out;
}
}  // namespace

CyclicDependency::CyclicDependency(std::vector<std::string> cycle)
    : AnalysisError(describe_cycle(cycle)), cycle_(std::move(cycle)) {}

}  // namespace mora
