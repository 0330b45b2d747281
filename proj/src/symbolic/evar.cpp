#include "mora/evar.hpp"

#include <stdexcept>

#include "mora/exp_poly.hpp"

namespace mora {

EVar::EVar(Monomial monomial) : monomial_(std::move(monomial)) {
  if (monomial_.is_one()) throw std::invalid_argument("an E-variable needs a nonconstant monomial");
}

EVar EVar::parse(std::string_view text) {
  ParamExpr p = parse_param_expr(text);
  if (p.size() != 1 || p.terms().begin()->second != 1)
    throw std::invalid_argument("not a monomial: '" + std::string(text) + "'");
  return EVar(p.terms().begin()->first);
}

std::string EVar::to_latex() const {
  std::string out;
  for (const auto& [sym, exp] : monomial_.factors()) {
    if (!out.empty()) out += ' ';
    out += sym + "^{" + std::to_string(exp) + "}";
  }
  return out;
}

std::strong_ordering operator<=>(const EVar& a, const EVar& b) {
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  return b.monomial_ <=> a.monomial_;
}

}  // namespace mora
