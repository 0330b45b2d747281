#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "mora/evar.hpp"
#include "mora/frontend.hpp"
#include "mora/moments.hpp"
#include "mora/recurrences.hpp"

namespace mora {

/// k-th moments of every program variable.
struct AllVarsMoment {
  unsigned k = 1;
  friend bool operator==(const AllVarsMoment&, const AllVarsMoment&) = default;
};

/// Moment of one monomial, e.g. x^2 or x*y.
struct SpecificMoment {
  EVar evar;
  friend bool operator==(const SpecificMoment&, const SpecificMoment&) = default;
};

using Goal = std::variant<AllVarsMoment, SpecificMoment>;

struct GoalSpec {
  std::vector<Goal> goals;
  friend bool operator==(const GoalSpec&, const GoalSpec&) = default;
};

/// "2" for AllVarsMoment(2), "x^2" for SpecificMoment(x^2).
std::string to_string(const Goal& g);

/// Integer tokens request k-th moments of all variables; anything else is
/// read as a monomial over program variables ("x^2", "x*y", "x^2*y").
/// Throws std::invalid_argument on an empty list, k < 1, a malformed
/// monomial or an unknown variable.
GoalSpec parse_goals(const std::vector<std::string>& raw, const ValidatedProgram& p);

/// E-variables requested by the goals.
std::set<EVar> goal_evars(const GoalSpec& goals, const ValidatedProgram& p);

/// Everything computed for one program and goal set.
struct Analysis {
  std::vector<MomentEquation> equations;
  SolveOrder order;
  std::map<EVar, ParamExpr> init_moments;
  Solution solution;
};

/// closure -> dependency order -> initial moments -> closed forms.
Analysis analyze(const ValidatedProgram& p, const std::set<EVar>& goals, std::size_t max_closure = 10000);

}  // namespace mora
