#pragma once

#include <compare>
#include <string>
#include <string_view>

#include "mora/monomial.hpp"

namespace mora {

/// E-variable: the expected value E[m(n)] of a nonempty monomial m over
/// program variables, viewed as a sequence in the loop counter n.
class EVar {
 public:
  /// Throws std::invalid_argument for the empty monomial.
  explicit EVar(Monomial monomial);

  /// Parses "x^2*y", "x**2", "x^1*y^1".
  static EVar parse(std::string_view text);

  const Monomial& monomial() const { return monomial_; }
  unsigned degree() const { return monomial_.degree(); }

  /// "x^2*y"; with explicit_ones, "x^2*y^1".
  std::string to_string(bool explicit_ones = false) const { return monomial_.to_string(explicit_ones); }
  std::string to_latex() const;

  friend bool operator==(const EVar&, const EVar&) = default;
  /// Lower total degree first; within a degree, x^2 < x*y < y^2.
  friend std::strong_ordering operator<=>(const EVar& a, const EVar& b);

 private:
  Monomial monomial_;
};

}  // namespace mora
