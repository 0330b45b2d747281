#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mora/errors.hpp"
#include "mora/polynomial.hpp"

namespace mora {

/// RV(uniform, lower, upper) or RV(gauss, mean, variance).
struct Distribution {
  enum class Kind { Uniform, Gauss };

  Kind kind = Kind::Uniform;
  ParamExpr first;   // uniform lower bound / gauss mean
  ParamExpr second;  // uniform upper bound / gauss variance

  friend bool operator==(const Distribution&, const Distribution&) = default;
  friend bool operator<(const Distribution& a, const Distribution& b);
};

std::string to_string(const Distribution& d);

/// Initial value of a variable: a constant expression or a distribution.
using InitValue = std::variant<ParamExpr, Distribution>;

struct InitAssignment {
  std::string variable;
  InitValue value;
  SourceSpan span;

  friend bool operator==(const InitAssignment& a, const InitAssignment& b) {
    return a.variable == b.variable && a.value == b.value;
  }
};

struct RvAssignment {
  std::string variable;
  Distribution distribution;
  SourceSpan span;

  friend bool operator==(const RvAssignment& a, const RvAssignment& b) {
    return a.variable == b.variable && a.distribution == b.distribution;
  }
};

struct Branch {
  VarPoly expr;
  ParamExpr probability;

  friend bool operator==(const Branch&, const Branch&) = default;
};

/// Probabilistic assignment; a plain assignment is one branch with probability 1.
struct BranchUpdate {
  std::vector<Branch> branches;

  friend bool operator==(const BranchUpdate&, const BranchUpdate&) = default;
};

struct UpdateAssignment {
  std::string variable;
  BranchUpdate update;
  SourceSpan span;

  friend bool operator==(const UpdateAssignment& a, const UpdateAssignment& b) {
    return a.variable == b.variable && a.update == b.update;
  }
};

/// A parsed loop. Update expressions are VarPolys over the assigned names;
/// every other symbol is a parameter. Equality ignores source locations.
struct Program {
  std::set<std::string> parameters;
  std::vector<InitAssignment> init_assignments;
  std::vector<RvAssignment> rv_assignments;
  std::vector<UpdateAssignment> update_assignments;

  /// Every name that is assigned somewhere.
  std::set<std::string> variables() const;

  friend bool operator==(const Program&, const Program&) = default;
};

/// Parses the loop language:
///
///   x = 0
///   while true:
///     u = RV(uniform, 0, b)
///     x = x - u @ 1/2; x + u @ 1/2
///
/// Throws ParseError (with line/column) on malformed text, and
/// NotProbSolvable when the branch probabilities of an update do not sum
/// to one.
Program parse_program(std::string_view source);

/// Renders a program back into the input language; parse_program of the
/// result compares equal to `p`.
std::string pretty_print(const Program& p);

/// A program that satisfies the Prob-solvable restrictions. Only
/// validate_prob_solvable can create one.
class ValidatedProgram {
 public:
  const Program& program() const { return program_; }
  const std::set<std::string>& variables() const { return variables_; }
  const std::set<std::string>& parameters() const { return program_.parameters; }

  bool is_rv(const std::string& v) const { return rv_.count(v) > 0; }
  const Distribution& rv_distribution(const std::string& v) const { return rv_.at(v); }

  /// Update assignment of `v`, or nullptr when v is never updated in the loop.
  const UpdateAssignment* update_of(const std::string& v) const;

  /// Self-coefficient c_i of each branch (expr_i = c_i * v + q_i).
  std::vector<ParamExpr> self_coefficients(const std::string& v) const;

 private:
  friend ValidatedProgram validate_prob_solvable(Program p);
  explicit ValidatedProgram(Program p);

  Program program_;
  std::set<std::string> variables_;
  std::map<std::string, Distribution> rv_;
  std::map<std::string, std::size_t> update_index_;
};

/// Checks variable/parameter disjointness, that branch probabilities sum to
/// one, and that every update is linear in its own variable and polynomial
/// only in variables assigned earlier in the loop body. Throws
/// NotProbSolvable naming the violated restriction.
///
/// Parameterized probabilities are accepted when their sum normalizes to 1;
/// their nonnegativity is the caller's obligation.
ValidatedProgram validate_prob_solvable(Program p);

/// Name of the symbolic initial value of `v`, e.g. "y(0)".
std::string initial_symbol(const std::string& v);

/// Value of `v` before the first iteration: its init expression or
/// distribution; for loop random variables their distribution; otherwise the
/// symbolic parameter v(0).
InitValue resolve_initial_value(const ValidatedProgram& p, const std::string& v);

}  // namespace mora
