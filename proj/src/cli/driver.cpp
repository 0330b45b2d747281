#include "mora/driver.hpp"

#include <stdexcept>

#include "mora/exp_poly.hpp"

namespace mora {

std::string to_string(const Goal& g) {
  if (const auto* all = std::get_if<AllVarsMoment>(&g)) return std::to_string(all->k);
  return std::get<SpecificMoment>(g).evar.to_string();
}

GoalSpec parse_goals(const std::vector<std::string>& raw, const ValidatedProgram& p) {
  if (raw.empty()) throw std::invalid_argument("at least one goal is required");
  GoalSpec out;
  for (const auto& token : raw) {
    if (!token.empty() && token.find_first_not_of("+-0123456789") == std::string::npos) {
      long k = 0;
      try {
        k = std::stol(token);
      } catch (const std::exception&) {
        throw std::invalid_argument("malformed goal '" + token + "'");
      }
      if (k < 1) throw std::invalid_argument("moment order must be at least 1, got " + token);
      out.goals.emplace_back(AllVarsMoment{static_cast<unsigned>(k)});
      continue;
    }
    EVar e = [&] {
      try {
        return EVar::parse(token);
      } catch (const std::invalid_argument&) {
        throw std::invalid_argument("malformed goal '" + token + "' (expected an integer or a monomial like x^2)");
      }
    }();
    for (const auto& [v, k] : e.monomial().factors())
      if (!p.variables().count(v))
        throw std::invalid_argument("goal '" + token + "' mentions unknown variable '" + v + "'");
    out.goals.emplace_back(SpecificMoment{e});
  }
  return out;
}

std::set<EVar> goal_evars(const GoalSpec& goals, const ValidatedProgram& p) {
  std::set<EVar> out;
  for (const auto& g : goals.goals) {
    if (const auto* all = std::get_if<AllVarsMoment>(&g)) {
      for (const auto& v : p.variables()) out.insert(EVar(Monomial(v, all->k)));
    } else {
      out.insert(std::get<SpecificMoment>(g).evar);
    }
  }
  return out;
}

Analysis analyze(const ValidatedProgram& p, const std::set<EVar>& goals, std::size_t max_closure) {
  MomentTable table;
  Analysis out;
  out.equations = evar_closure(goals, p, table, max_closure);
  out.order = topo_order(out.equations);
  for (const auto& eq : out.equations) out.init_moments.emplace(eq.target, initial_moment(eq.target, p, table));
  out.solution = solve_all(out.order, out.equations, out.init_moments);
  return out;
}

}  // namespace mora
