#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mora {

/// Power product of named symbols, e.g. b^2*y(0). Factors are sorted by
/// symbol name and carry positive exponents; the empty monomial is 1.
///
/// Ordering is graded lexicographic: higher total degree is greater, ties
/// are broken by the first symbol (in name order) whose exponents differ.
class Monomial {
 public:
  using Factor = std::pair<std::string, unsigned>;

  Monomial() = default;
  explicit Monomial(std::string symbol, unsigned exponent = 1);

  /// Merges repeated symbols and drops zero exponents.
  static Monomial from_factors(std::vector<Factor> factors);

  const std::vector<Factor>& factors() const { return factors_; }
  unsigned degree() const { return degree_; }
  unsigned degree_in(std::string_view symbol) const;
  bool is_one() const { return factors_.empty(); }
  bool contains(std::string_view symbol) const { return degree_in(symbol) > 0; }

  Monomial without(std::string_view symbol) const;

  /// True when every exponent of `divisor` is at most the matching one here.
  bool divisible_by(const Monomial& divisor) const;
  /// Requires divisible_by(divisor).
  Monomial divided_by(const Monomial& divisor) const;

  Monomial pow(unsigned exponent) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) = default;
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);

  /// "b^2*y(0)"; exponents of one are omitted unless `explicit_ones`.
  std::string to_string(bool explicit_ones = false) const;

 private:
  std::vector<Factor> factors_;
  unsigned degree_ = 0;
};

}  // namespace mora
