#include "mora/recurrences.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "mora/errors.hpp"

namespace mora {

namespace {

using RankedEVar = std::pair<int, EVar>;

std::vector<std::string> find_cycle(const std::map<EVar, std::set<EVar>>& deps, const std::set<EVar>& remaining) {
  // Every remaining node has a remaining dependency; walk until a repeat.
  std::vector<EVar> path;
  std::map<EVar, std::size_t> index;
  EVar cur = *remaining.begin();
  while (!index.count(cur)) {
    index.emplace(cur, path.size());
    path.push_back(cur);
    for (const auto& d : deps.at(cur))
      if (remaining.count(d)) {
        cur = d;
        break;
      }
  }
  std::vector<std::string> cycle;
  for (std::size_t i = index.at(cur); i < path.size(); ++i) cycle.push_back(path[i].to_string());
  return cycle;
}

}  // namespace

SolveOrder topo_order(const std::vector<MomentEquation>& equations) {
  std::map<EVar, std::set<EVar>> deps;
  std::map<EVar, std::set<EVar>> users;
  std::map<EVar, int> rank;
  for (const auto& eq : equations) {
    auto& d = deps[eq.target];
    for (const auto& [e, c] : eq.linear_terms)
      if (e != eq.target) d.insert(e);
    rank[eq.target] = eq.linear_terms.empty() ? 0 : 1;
  }
  for (const auto& [target, d] : deps)
    for (const auto& e : d) {
      if (!deps.count(e))
        throw AnalysisError("E[" + target.to_string() + "] depends on E[" + e.to_string() +
                            "], which has no equation");
      users[e].insert(target);
    }

  std::map<EVar, std::size_t> missing;
  std::set<RankedEVar> ready;
  for (const auto& [target, d] : deps) {
    missing[target] = d.size();
    if (d.empty()) ready.emplace(rank[target], target);
  }
  SolveOrder order;
  while (!ready.empty()) {
    EVar next = ready.begin()->second;
    ready.erase(ready.begin());
    order.push_back(next);
    for (const auto& u : users[next])
      if (--missing[u] == 0) ready.emplace(rank[u], u);
  }
  if (order.size() != deps.size()) {
    std::set<EVar> remaining;
    for (const auto& [target, n] : missing)
      if (n > 0) remaining.insert(target);
    throw CyclicDependency(find_cycle(deps, remaining));
  }
  return order;
}

Recurrence build_recurrence(const MomentEquation& e, const std::map<EVar, ExpPoly>& solved,
                            const std::map<EVar, ParamExpr>& init_moments) {
  Recurrence r{e.target, e.self_coefficient(), ExpPoly(e.constant), {}};
  for (const auto& [ev, coeff] : e.linear_terms) {
    if (ev == e.target) continue;
    auto it = solved.find(ev);
    if (it == solved.end())
      throw AnalysisError("E[" + e.target.to_string() + "] needs E[" + ev.to_string() + "] before it is solved");
    r.inhom += it->second.scaled(coeff);
  }
  auto init = init_moments.find(e.target);
  if (init == init_moments.end())
    throw AnalysisError("no initial value for E[" + e.target.to_string() + "]");
  r.init = init->second;
  return r;
}

namespace {

/// Divides `num` by `den`, where `den` is nonzero as a normal form.
ParamExpr divide(const ParamExpr& num, const ParamExpr& den, const Recurrence& r, const ParamExpr& base) {
  if (auto q = as_rational(den)) return num.divided_by(*q);
  if (auto q = exact_divide(num, den)) return *q;
  throw UnresolvedBaseComparison("closed form of E[" + r.target.to_string() + "] would divide by " +
                                 to_string(den) + " (base " + to_string(base) + " against self-coefficient " +
                                 to_string(r.self_coeff) + "); cannot decide whether it vanishes");
}

}  // namespace

ExpPoly solve_first_order(const Recurrence& r, std::vector<std::string>* side_conditions) {
  const ParamExpr& c = r.self_coeff;

  // h[base][m] = coefficient of base^n n^m in the inhomogeneous part
  std::map<ParamExpr, std::map<unsigned, ParamExpr>> h;
  std::map<unsigned, ParamExpr> indicators;
  for (const auto& [k, coeff] : r.inhom.terms()) {
    if (k.base.is_zero())
      indicators[k.degree] = coeff;
    else
      h[k.base][k.degree] = coeff;
  }

  ExpPoly f;
  // g(n+1) - c g(n) = [n = k]: g = [n = k+1] when c = 0, otherwise g is
  // supported on 0..k with g(i) = -c^(i-k-1).
  for (const auto& [k, coeff] : indicators) {
    if (c.is_zero()) {
      f += ExpPoly::indicator(k + 1, coeff);
      continue;
    }
    if (!as_rational(c) && side_conditions) side_conditions->push_back(to_string(c) + " != 0");
    for (unsigned i = 0; i <= k; ++i)
      f += ExpPoly::indicator(i, -divide(coeff, c.pow(k - i + 1), r, ParamExpr{}));
  }

  for (const auto& [base, coeffs] : h) {
    unsigned d = coeffs.rbegin()->first;
    auto h_at = [&](unsigned m) {
      auto it = coeffs.find(m);
      return it == coeffs.end() ? ParamExpr{} : it->second;
    };
    ParamExpr diff = base - c;
    std::vector<ParamExpr> a(d + 2);

    if (diff.is_zero()) {
      // base^n sum_j a_j n^j with a_0 folded into the homogeneous term:
      // coefficient of base^n n^m gives base * sum_{j>m} C(j, m) a_j = h_m.
      if (!as_rational(base) && side_conditions)
        side_conditions->push_back(to_string(base) + " != 0");
      for (unsigned m = d + 1; m-- > 0;) {
        ParamExpr rhs = h_at(m);
        for (unsigned j = m + 2; j <= d + 1; ++j) rhs -= (base * a[j]).scaled(binomial(j, m));
        a[m + 1] = divide(rhs, base.scaled(Rational(m + 1)), r, base);
      }
    } else {
      // (base - c) a_m + base * sum_{j>m} C(j, m) a_j = h_m
      if (!as_rational(diff) && side_conditions)
        side_conditions->push_back(to_string(c) + " != " + to_string(base));
      for (unsigned m = d + 1; m-- > 0;) {
        ParamExpr rhs = h_at(m);
        for (unsigned j = m + 1; j <= d; ++j) rhs -= (base * a[j]).scaled(binomial(j, m));
        a[m] = divide(rhs, diff, r, base);
      }
    }
    for (unsigned j = 0; j < a.size(); ++j) f.add_term(base, j, a[j]);
  }

  f.add_term(c, 0, r.init - f.at_zero());

  if (!satisfies(r, f))
    throw SolverFailure("closed form " + to_string(f) + " does not satisfy the recurrence of E[" +
                        r.target.to_string() + "]");
  return f;
}

bool satisfies(const Recurrence& r, const ExpPoly& f) {
  ExpPoly residual = f.shifted() - f.scaled(r.self_coeff) - r.inhom;
  return residual.is_zero() && f.at_zero() == r.init;
}

Solution solve_all(const SolveOrder& order, const std::vector<MomentEquation>& equations,
                   const std::map<EVar, ParamExpr>& init_moments) {
  std::map<EVar, const MomentEquation*> by_target;
  for (const auto& eq : equations) by_target.emplace(eq.target, &eq);

  Solution out;
  for (const auto& target : order) {
    auto it = by_target.find(target);
    if (it == by_target.end()) throw AnalysisError("no equation for E[" + target.to_string() + "]");
    Recurrence r = build_recurrence(*it->second, out.closed_forms, init_moments);
    std::vector<std::string> conditions;
    ExpPoly f = solve_first_order(r, &conditions);
    for (auto& cond : conditions) {
      std::string tagged = cond + " (E[" + target.to_string() + "])";
      if (std::find(out.side_conditions.begin(), out.side_conditions.end(), tagged) == out.side_conditions.end())
        out.side_conditions.push_back(std::move(tagged));
    }
    out.closed_forms.emplace(target, std::move(f));
    out.recurrences.emplace(target, std::move(r));
  }
  return out;
}

}  // namespace mora
