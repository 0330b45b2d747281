#pragma once

#include <cstddef>
#include <map>
#include <mutex>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mora/evar.hpp"
#include "mora/frontend.hpp"
#include "mora/polynomial.hpp"

namespace mora {

/// k-th raw moment E[X^k] of a distribution as a parameter expression.
///
/// Uniform(a, b): (b^(k+1) - a^(k+1)) / ((k+1)(b - a)), kept as the exact
/// polynomial quotient sum_j a^j b^(k-j) / (k+1), which is also the point
/// mass a^k when a = b. Gauss(mu, var): m_k = mu m_(k-1) + (k-1) var m_(k-2).
ParamExpr rv_raw_moment(const Distribution& d, unsigned k);

/// Memo of raw moments keyed by (distribution, k). Safe for concurrent use;
/// each key is computed by a single writer and never changes afterwards.
class MomentTable {
 public:
  ParamExpr raw_moment(const Distribution& d, unsigned k);

 private:
  std::mutex mutex_;
  std::map<std::pair<Distribution, unsigned>, ParamExpr> memo_;
};

/// E[target](n+1) = sum of coeff * E[e](n) + constant.
struct MomentEquation {
  EVar target;
  std::map<EVar, ParamExpr> linear_terms;
  ParamExpr constant;

  /// Coefficient of E[target](n) on the right-hand side (zero if absent).
  ParamExpr self_coefficient() const;

  /// Right-hand side as one polynomial over variables and parameters,
  /// with each E[m](n) written as the monomial m.
  ParamExpr rhs_polynomial() const;

  friend bool operator==(const MomentEquation&, const MomentEquation&) = default;
};

/// "E[x*y](n+1) = E[x^2](n) + E[x*y](n) + b^2/3".
std::string to_string(const MomentEquation& e);

/// Rewrites E[target](n+1) into a linear combination of E-variables at n:
/// substitutes the branch updates in reverse program order, replaces powers
/// of random variables by their raw moments, and splits by linearity of
/// expectation.
MomentEquation moment_equation(const EVar& target, const ValidatedProgram& p, MomentTable& table);

/// Moment equations of every E-variable the goals depend on, sorted by
/// E-variable. Throws ClosureBlowup past `max_evars` E-variables.
std::vector<MomentEquation> evar_closure(const std::set<EVar>& goals, const ValidatedProgram& p,
                                         MomentTable& table, std::size_t max_evars = 10000);

/// k-th moment of a single variable's initial value.
ParamExpr initial_moment(const InitValue& value, unsigned k, MomentTable& table);

/// E[target](0): initial values of distinct variables are independent, so
/// the joint moment is the product of the per-variable moments.
ParamExpr initial_moment(const EVar& target, const ValidatedProgram& p, MomentTable& table);

}  // namespace mora
