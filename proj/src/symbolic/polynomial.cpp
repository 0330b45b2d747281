#include "mora/polynomial.hpp"

#include "mora/errors.hpp"
#include "render.hpp"

namespace mora {

std::optional<Rational> as_rational(const ParamExpr& p) {
  if (!p.is_constant()) return std::nullopt;
  return p.constant_term();
}

std::optional<ParamExpr> exact_divide(const ParamExpr& num, const ParamExpr& den) {
  if (den.is_zero()) return std::nullopt;
  const auto& [lead_m, lead_c] = *den.terms().begin();
  ParamExpr quotient;
  ParamExpr rest = num;
  while (!rest.is_zero()) {
    const auto& [m, c] = *rest.terms().begin();
    if (!m.divisible_by(lead_m)) return std::nullopt;
    ParamExpr step(m.divided_by(lead_m), Rational(c / lead_c));
    quotient += step;
    rest -= step * den;
  }
  return quotient;
}

Rational evaluate(const ParamExpr& p, const std::map<std::string, Rational>& bindings) {
  Rational total = 0;
  for (const auto& [m, c] : p.terms()) {
    Rational term = c;
    for (const auto& [sym, exp] : m.factors()) {
      auto it = bindings.find(sym);
      if (it == bindings.end()) throw UnboundParameter(sym);
      term *= pow(it->second, exp);
    }
    total += term;
  }
  return total;
}

VarPoly split_variables(const ParamExpr& flat, const std::set<std::string>& variables) {
  VarPoly out;
  for (const auto& [m, c] : flat.terms()) {
    std::vector<Monomial::Factor> var_part;
    std::vector<Monomial::Factor> param_part;
    for (const auto& f : m.factors()) (variables.count(f.first) ? var_part : param_part).push_back(f);
    out.add_term(Monomial::from_factors(std::move(var_part)),
                 ParamExpr(Monomial::from_factors(std::move(param_part)), c));
  }
  return out;
}

ParamExpr flatten(const VarPoly& p) {
  ParamExpr out;
  for (const auto& [m, coeff] : p.terms())
    for (const auto& [pm, c] : coeff.terms()) out.add_term(m * pm, c);
  return out;
}

std::string to_string(const ParamExpr& p) {
  std::vector<detail::RenderTerm> terms;
  for (const auto& [m, c] : p.terms()) {
    detail::RenderTerm t{c, {}};
    if (!m.is_one()) t.factors.push_back(m.to_string());
    terms.push_back(std::move(t));
  }
  return detail::join_text(terms);
}

std::string to_string(const VarPoly& p) { return to_string(flatten(p)); }

std::string to_latex(const ParamExpr& p) {
  std::vector<detail::RenderTerm> terms;
  for (const auto& [m, c] : p.terms()) {
    detail::RenderTerm t{c, {}};
    for (const auto& [sym, exp] : m.factors()) t.factors.push_back(detail::latex_symbol(sym, exp));
    terms.push_back(std::move(t));
  }
  return detail::join_latex(terms);
}

}  // namespace mora
