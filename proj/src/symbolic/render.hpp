#pragma once

#include <string>
#include <vector>

#include "mora/rational.hpp"

namespace mora::detail {

/// One summand: rational coefficient times already-rendered factors.
struct RenderTerm {
  Rational coeff;
  std::vector<std::string> factors;
};

/// "2*x*y + b^2/3 - 1"; empty input renders as "0".
std::string join_text(const std::vector<RenderTerm>& terms);

/// "2 x y + \frac{b^{2}}{3} - 1".
std::string join_latex(const std::vector<RenderTerm>& terms);

std::string latex_symbol(const std::string& symbol, unsigned exponent);

}  // namespace mora::detail
