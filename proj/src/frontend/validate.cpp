#include <map>

#include "mora/frontend.hpp"

namespace mora {

namespace {

// Name reserved for the loop counter in every rendered closed form.
constexpr const char* kCounter = "n";

void require_variable_free(const ParamExpr& e, const std::set<std::string>& vars, const std::string& where,
                           SourceSpan span) {
  for (const auto& s : e.symbols())
    if (vars.count(s))
      throw NotProbSolvable(Restriction::VariableParameterClash,
                            "variable '" + s + "' is used where only constants and parameters are allowed (" +
                                where + ")",
                            span);
}

void check_disjointness(const Program& p, const std::set<std::string>& vars) {
  auto clash = [](const std::string& what, SourceSpan span) {
    throw NotProbSolvable(Restriction::VariableParameterClash, what, span);
  };
  std::map<std::string, SourceSpan> init, rv, upd;
  for (const auto& a : p.init_assignments)
    if (!init.emplace(a.variable, a.span).second) clash("variable '" + a.variable + "' is initialized twice", a.span);
  for (const auto& a : p.rv_assignments) {
    if (!rv.emplace(a.variable, a.span).second)
      clash("random variable '" + a.variable + "' is assigned twice", a.span);
    if (init.count(a.variable))
      clash("random variable '" + a.variable + "' also has an initial assignment", a.span);
  }
  for (const auto& a : p.update_assignments) {
    if (!upd.emplace(a.variable, a.span).second)
      clash("variable '" + a.variable + "' is updated twice in the loop body", a.span);
    if (rv.count(a.variable))
      clash("variable '" + a.variable + "' is both a random variable and an updated variable", a.span);
  }
  for (const auto& name : p.parameters)
    if (vars.count(name)) clash("'" + name + "' is both a parameter and a program variable", {});
  if (vars.count(kCounter) || p.parameters.count(kCounter))
    clash("the name 'n' is reserved for the loop counter", {});

  for (const auto& a : p.init_assignments) {
    if (const auto* e = std::get_if<ParamExpr>(&a.value))
      require_variable_free(*e, vars, "initial value of '" + a.variable + "'", a.span);
    if (const auto* d = std::get_if<Distribution>(&a.value)) {
      require_variable_free(d->first, vars, "distribution argument", a.span);
      require_variable_free(d->second, vars, "distribution argument", a.span);
    }
  }
  for (const auto& a : p.rv_assignments) {
    require_variable_free(a.distribution.first, vars, "distribution argument", a.span);
    require_variable_free(a.distribution.second, vars, "distribution argument", a.span);
  }
  for (const auto& a : p.update_assignments)
    for (const auto& b : a.update.branches) {
      require_variable_free(b.probability, vars, "branch probability", a.span);
      for (const auto& [m, c] : b.expr.terms())
        require_variable_free(c, vars, "coefficient in the update of '" + a.variable + "'", a.span);
    }
}

void check_probabilities(const Program& p) {
  for (const auto& a : p.update_assignments) {
    if (a.update.branches.empty())
      throw NotProbSolvable(Restriction::ProbabilitySum, "update of '" + a.variable + "' has no branches", a.span);
    ParamExpr total;
    for (const auto& b : a.update.branches) {
      total += b.probability;
      if (auto r = as_rational(b.probability); r && (sgn(*r) < 0 || *r > 1))
        throw NotProbSolvable(Restriction::ProbabilitySum,
                              "branch probability " + to_string(*r) + " of the update to '" + a.variable +
                                  "' is outside [0, 1]",
                              a.span);
    }
    if (total != ParamExpr(Rational(1)))
      throw NotProbSolvable(Restriction::ProbabilitySum,
                            "probabilities of the update to '" + a.variable + "' sum to " + to_string(total) +
                                ", not 1",
                            a.span);
  }
}

void check_dependences(const Program& p) {
  // Names whose value is fixed before an update executes: loop random
  // variables, never-updated variables, and variables updated earlier.
  std::set<std::string> available;
  std::set<std::string> updated;
  for (const auto& a : p.update_assignments) updated.insert(a.variable);
  for (const auto& a : p.rv_assignments) available.insert(a.variable);
  for (const auto& a : p.init_assignments)
    if (!updated.count(a.variable)) available.insert(a.variable);

  for (const auto& a : p.update_assignments) {
    const std::string& v = a.variable;
    for (const auto& b : a.update.branches) {
      for (const auto& s : b.expr.symbols()) {
        if (s == v || available.count(s)) continue;
        throw NotProbSolvable(Restriction::DependenceStructure,
                              "update of '" + v + "' depends on '" + s + "', which is only updated later",
                              a.span);
      }
      if (b.expr.degree_in(v) > 1)
        throw NotProbSolvable(Restriction::DependenceStructure,
                              "'" + v + "' depends on itself nonlinearly (degree " +
                                  std::to_string(b.expr.degree_in(v)) + ")",
                              a.span);
      auto parts = b.expr.collect(v);
      if (auto it = parts.find(1); it != parts.end() && !it->second.is_constant())
        throw NotProbSolvable(Restriction::DependenceStructure,
                              "coefficient of '" + v + "' in its own update depends on program variables: " +
                                  to_string(it->second),
                              a.span);
    }
    available.insert(v);
  }
}

}  // namespace

ValidatedProgram::ValidatedProgram(Program p) : program_(std::move(p)), variables_(program_.variables()) {
  for (const auto& a : program_.rv_assignments) rv_.emplace(a.variable, a.distribution);
  for (std::size_t i = 0; i < program_.update_assignments.size(); ++i)
    update_index_.emplace(program_.update_assignments[i].variable, i);
}

const UpdateAssignment* ValidatedProgram::update_of(const std::string& v) const {
  auto it = update_index_.find(v);
  return it == update_index_.end() ? nullptr : &program_.update_assignments[it->second];
}

std::vector<ParamExpr> ValidatedProgram::self_coefficients(const std::string& v) const {
  std::vector<ParamExpr> out;
  const auto* u = update_of(v);
  if (!u) return {ParamExpr(Rational(1))};
  for (const auto& b : u->update.branches) out.push_back(b.expr.coefficient(Monomial(v)));
  return out;
}

ValidatedProgram validate_prob_solvable(Program p) {
  const auto vars = p.variables();
  check_disjointness(p, vars);
  check_probabilities(p);
  check_dependences(p);
  return ValidatedProgram(std::move(p));
}

std::string initial_symbol(const std::string& v) { return v + "(0)"; }

InitValue resolve_initial_value(const ValidatedProgram& p, const std::string& v) {
  for (const auto& a : p.program().init_assignments)
    if (a.variable == v) return a.value;
  if (p.is_rv(v)) return p.rv_distribution(v);
  return ParamExpr::symbol(initial_symbol(v));
}

}  // namespace mora
