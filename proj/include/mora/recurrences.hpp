#pragma once

#include <map>
#include <string>
#include <vector>

#include "mora/evar.hpp"
#include "mora/exp_poly.hpp"
#include "mora/moments.hpp"

namespace mora {

/// E[target](n+1) = self_coeff * E[target](n) + inhom(n), E[target](0) = init.
struct Recurrence {
  EVar target;
  ParamExpr self_coeff;
  ExpPoly inhom;
  ParamExpr init;

  friend bool operator==(const Recurrence&, const Recurrence&) = default;
};

/// E-variables ordered so that each equation's non-self terms precede it.
using SolveOrder = std::vector<EVar>;

/// Dependency order over a closed equation set. Constant equations come
/// first; ties are broken by E-variable order. Throws CyclicDependency.
SolveOrder topo_order(const std::vector<MomentEquation>& equations);

/// Substitutes the already-solved closed forms into the non-self terms.
Recurrence build_recurrence(const MomentEquation& e, const std::map<EVar, ExpPoly>& solved,
                            const std::map<EVar, ParamExpr>& init_moments);

/// Closed form by undetermined coefficients. Each inhomogeneous base rho
/// with top degree d contributes a polynomial ansatz of degree d, or d + 1
/// when rho equals the self-coefficient; the homogeneous part alpha * c^n
/// absorbs the initial value. When c = 0 the homogeneous part is the n = 0
/// indicator 0^n. Indicator terms [n = k] in the inhomogeneous part produce
/// indicators only: [n = k+1] when c = 0, else a finite prefix on 0..k.
///
/// Where a base differs from c only by a parameter-dependent expression, the
/// bases are treated as distinct and "c != rho" is appended to
/// `side_conditions`. Throws UnresolvedBaseComparison when that would need
/// division by a non-constant expression, and SolverFailure when the result
/// does not satisfy the recurrence.
ExpPoly solve_first_order(const Recurrence& r, std::vector<std::string>* side_conditions = nullptr);

/// f(n+1) - c f(n) - inhom(n) == 0 as an ExpPoly identity and f(0) == init.
bool satisfies(const Recurrence& r, const ExpPoly& f);

struct Solution {
  std::map<EVar, ExpPoly> closed_forms;
  std::map<EVar, Recurrence> recurrences;
  std::vector<std::string> side_conditions;
};

/// Solves every equation along `order`.
Solution solve_all(const SolveOrder& order, const std::vector<MomentEquation>& equations,
                   const std::map<EVar, ParamExpr>& init_moments);

}  // namespace mora
