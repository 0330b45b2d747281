#include "mora/moments.hpp"

#include <deque>

#include "mora/errors.hpp"

namespace mora {

ParamExpr rv_raw_moment(const Distribution& d, unsigned k) {
  if (d.kind == Distribution::Kind::Uniform) {
    ParamExpr sum;
    for (unsigned j = 0; j <= k; ++j) sum += d.first.pow(j) * d.second.pow(k - j);
    return sum.divided_by(Rational(k + 1));
  }
  ParamExpr prev(Rational(1));
  if (k == 0) return prev;
  ParamExpr cur = d.first;
  for (unsigned i = 2; i <= k; ++i) {
    ParamExpr next = d.first * cur + (d.second * prev).scaled(Rational(i - 1));
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

ParamExpr MomentTable::raw_moment(const Distribution& d, unsigned k) {
  std::lock_guard lock(mutex_);
  auto key = std::make_pair(d, k);
  auto it = memo_.find(key);
  if (it == memo_.end()) it = memo_.emplace(std::move(key), rv_raw_moment(d, k)).first;
  return it->second;
}

ParamExpr MomentEquation::self_coefficient() const {
  auto it = linear_terms.find(target);
  return it == linear_terms.end() ? ParamExpr{} : it->second;
}

ParamExpr MomentEquation::rhs_polynomial() const {
  ParamExpr out = constant;
  for (const auto& [e, c] : linear_terms) out += c * ParamExpr(e.monomial(), Rational(1));
  return out;
}

std::string to_string(const MomentEquation& e) {
  std::string rhs;
  for (const auto& [ev, c] : e.linear_terms) {
    std::string coeff;
    if (c != ParamExpr(Rational(1))) {
      coeff = to_string(c);
      if (c.size() > 1) coeff = "(" + coeff + ")";
      coeff += "*";
    }
    std::string term = coeff + "E[" + ev.to_string() + "](n)";
    rhs += rhs.empty() ? term : " + " + term;
  }
  if (!e.constant.is_zero() || rhs.empty()) {
    std::string c = to_string(e.constant);
    if (rhs.empty())
      rhs = c;
    else if (c.front() == '-')
      rhs += " - " + c.substr(1);
    else
      rhs += " + " + c;
  }
  return "E[" + e.target.to_string() + "](n+1) = " + rhs;
}

MomentEquation moment_equation(const EVar& target, const ValidatedProgram& p, MomentTable& table) {
  VarPoly poly(target.monomial(), ParamExpr(Rational(1)));

  // Walk the body backwards so every variable is expressed through the
  // values it had when the iteration started.
  const auto& updates = p.program().update_assignments;
  for (auto it = updates.rbegin(); it != updates.rend(); ++it) {
    if (!poly.contains(it->variable)) continue;
    VarPoly mixed;
    for (const auto& branch : it->update.branches)
      mixed += poly.substitute(it->variable, branch.expr).scaled(branch.probability);
    poly = std::move(mixed);
  }

  MomentEquation eq{target, {}, {}};
  for (const auto& [m, coeff] : poly.terms()) {
    ParamExpr c = coeff;
    std::vector<Monomial::Factor> state;
    for (const auto& [v, k] : m.factors()) {
      if (p.is_rv(v))
        c = c * table.raw_moment(p.rv_distribution(v), k);
      else
        state.emplace_back(v, k);
    }
    if (c.is_zero()) continue;
    Monomial rest = Monomial::from_factors(std::move(state));
    if (rest.is_one()) {
      eq.constant += c;
      continue;
    }
    auto [slot, inserted] = eq.linear_terms.try_emplace(EVar(rest), c);
    if (!inserted) {
      slot->second += c;
      if (slot->second.is_zero()) eq.linear_terms.erase(slot);
    }
  }
  return eq;
}

std::vector<MomentEquation> evar_closure(const std::set<EVar>& goals, const ValidatedProgram& p,
                                         MomentTable& table, std::size_t max_evars) {
  std::map<EVar, MomentEquation> done;
  std::deque<EVar> pending(goals.begin(), goals.end());
  std::set<EVar> seen(goals.begin(), goals.end());
  while (!pending.empty()) {
    EVar next = pending.front();
    pending.pop_front();
    MomentEquation eq = moment_equation(next, p, table);
    for (const auto& [e, c] : eq.linear_terms) {
      if (!seen.insert(e).second) continue;
      if (seen.size() > max_evars)
        throw ClosureBlowup("E-variable closure exceeds " + std::to_string(max_evars) +
                            " entries; the loop is likely not Prob-solvable");
      pending.push_back(e);
    }
    done.emplace(next, std::move(eq));
  }
  std::vector<MomentEquation> out;
  out.reserve(done.size());
  for (auto& [e, eq] : done) out.push_back(std::move(eq));
  return out;
}

ParamExpr initial_moment(const InitValue& value, unsigned k, MomentTable& table) {
  if (const auto* e = std::get_if<ParamExpr>(&value)) return e->pow(k);
  return table.raw_moment(std::get<Distribution>(value), k);
}

ParamExpr initial_moment(const EVar& target, const ValidatedProgram& p, MomentTable& table) {
  ParamExpr out(Rational(1));
  for (const auto& [v, k] : target.monomial().factors())
    out = out * initial_moment(resolve_initial_value(p, v), k, table);
  return out;
}

}  // namespace mora
