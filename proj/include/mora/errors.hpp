#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace mora {

/// 1-based line/column of a construct in the program text; 0 means unknown.
struct SourceSpan {
  int line = 0;
  int column = 0;

  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

std::string to_string(const SourceSpan& span);

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, SourceSpan span);
  const SourceSpan& span() const { return span_; }
  const std::string& detail() const { return detail_; }

 private:
  SourceSpan span_;
  std::string detail_;
};

/// The three structural restrictions a loop must satisfy to be analysable.
enum class Restriction {
  VariableParameterClash,  // variables distinct from each other and from parameters
  ProbabilitySum,          // branch probabilities of one update sum to 1
  DependenceStructure,     // linear in itself, polynomial in earlier-updated variables
};

const char* to_string(Restriction r);

class NotProbSolvable : public Error {
 public:
  NotProbSolvable(Restriction restriction, const std::string& detail, SourceSpan span = {});
  Restriction restriction() const { return restriction_; }
  const SourceSpan& span() const { return span_; }
  const std::string& detail() const { return detail_; }

 private:
  Restriction restriction_;
  SourceSpan span_;
  std::string detail_;
};

class UnboundParameter : public Error {
 public:
  explicit UnboundParameter(std::string name);
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

/// Failures of the closure / ordering / solving pipeline (exit code 4).
class AnalysisError : public Error {
 public:
  using Error::Error;
};

class ClosureBlowup : public AnalysisError {
 public:
  using AnalysisError::AnalysisError;
};

class CyclicDependency : public AnalysisError {
 public:
  explicit CyclicDependency(std::vector<std::string> cycle);
  const std::vector<std::string>& cycle() const { return cycle_; }

 private:
  std::vector<std::string> cycle_;
};

class SolverFailure : public AnalysisError {
 public:
  using AnalysisError::AnalysisError;
};

/// Raised when deciding resonance would require knowing whether a
/// parameter-dependent difference of exponential bases vanishes.
class UnresolvedBaseComparison : public SolverFailure {
 public:
  using SolverFailure::SolverFailure;
};

/// Bad command-line values or simulation settings.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace mora
