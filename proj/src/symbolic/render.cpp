#include "render.hpp"

namespace mora::detail {

namespace {

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += sep;
    out += p;
  }
  return out;
}

template <class Body>
std::string join_signed(const std::vector<RenderTerm>& terms, Body body) {
  if (terms.empty()) return "0";
  std::string out;
  for (const auto& t : terms) {
    bool negative = sgn(t.coeff) < 0;
    if (out.empty())
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    out += body(Rational(abs(t.coeff)), t.factors);
  }
  return out;
}

}  // namespace

std::string join_text(const std::vector<RenderTerm>& terms) {
  return join_signed(terms, [](const Rational& c, const std::vector<std::string>& factors) {
    std::string s;
    if (factors.empty() || c.get_num() != 1) s = c.get_num().get_str();
    if (!factors.empty()) {
      if (!s.empty()) s += '*';
      s += join(factors, "*");
    }
    if (c.get_den() != 1) s += "/" + c.get_den().get_str();
    return s;
  });
}

std::string join_latex(const std::vector<RenderTerm>& terms) {
  return join_signed(terms, [](const Rational& c, const std::vector<std::string>& factors) {
    std::string s;
    if (factors.empty() || c.get_num() != 1) s = c.get_num().get_str();
    if (!factors.empty()) {
      if (!s.empty()) s += ' ';
      s += join(factors, " ");
    }
    if (c.get_den() != 1) return "\\frac{" + s + "}{" + c.get_den().get_str() + "}";
    return s;
  });
}

std::string latex_symbol(const std::string& symbol, unsigned exponent) {
  if (exponent == 1) return symbol;
  return symbol + "^{" + std::to_string(exponent) + "}";
}

}  // namespace mora::detail
