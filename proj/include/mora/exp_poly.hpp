#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "mora/polynomial.hpp"

namespace mora {

/// Exponential polynomial in the loop counter n:
///   f(n) = sum of coeff * base^n * n^degree
/// with symbolic coefficients and bases. (base, degree) pairs are unique and
/// no stored coefficient is zero.
///
/// Base 0 is special: the key (0, k) stands for the indicator [n = k]. With
/// 0^0 = 1 the key (0, 0) is the usual 0^n. Indicators only arise from
/// self-coefficient 0 and mark the first few values where f differs from its
/// exponential-polynomial part.
class ExpPoly {
 public:
  struct Key {
    ParamExpr base;
    unsigned degree = 0;

    friend bool operator==(const Key&, const Key&) = default;
    friend bool operator<(const Key& a, const Key& b) {
      if (int c = compare(a.base, b.base); c != 0) return c < 0;
      return a.degree < b.degree;
    }
  };
  using TermMap = std::map<Key, ParamExpr>;

  ExpPoly() = default;
  explicit ExpPoly(ParamExpr constant);

  static ExpPoly term(ParamExpr coeff, ParamExpr base, unsigned degree);
  /// The sequence f(n) = n.
  static ExpPoly counter();
  /// coeff * [n = k]
  static ExpPoly indicator(unsigned k, ParamExpr coeff);

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const ParamExpr& base, unsigned degree, const ParamExpr& coeff);

  ExpPoly& operator+=(const ExpPoly& o);
  ExpPoly& operator-=(const ExpPoly& o);
  friend ExpPoly operator+(ExpPoly a, const ExpPoly& b) { return a += b; }
  friend ExpPoly operator-(ExpPoly a, const ExpPoly& b) { return a -= b; }
  friend ExpPoly operator-(const ExpPoly& a) { return a.scaled(ParamExpr(Rational(-1))); }
  friend ExpPoly operator*(const ExpPoly& a, const ExpPoly& b);

  ExpPoly scaled(const ParamExpr& factor) const;
  ExpPoly pow(unsigned k) const;

  /// The sequence n -> f(n + 1), expanded.
  ExpPoly shifted() const;

  /// f(0) as a parameter expression.
  ParamExpr at_zero() const;

  /// Exact value at a concrete n under parameter bindings.
  Rational evaluate(unsigned long n, const std::map<std::string, Rational>& bindings) const;

  /// Coefficient-only view when f does not depend on n.
  std::optional<ParamExpr> as_constant() const;

  std::set<ParamExpr> bases() const;
  /// Highest degree paired with `base`, or nullopt if the base is absent.
  std::optional<unsigned> degree_for(const ParamExpr& base) const;
  std::set<std::string> parameters() const;

  /// Copy without the indicator terms.
  ExpPoly without_zero_base() const;
  bool has_zero_base() const;
  /// Smallest K such that f agrees with without_zero_base() for all n >= K.
  unsigned exceptional_prefix() const;

  friend bool operator==(const ExpPoly&, const ExpPoly&) = default;

 private:
  TermMap terms_;
};

/// Canonical ASCII rendering, e.g. "b^2*n^2/6 + b^2*n/6" or "(1/2)^n".
std::string to_string(const ExpPoly& f);
std::string to_latex(const ExpPoly& f);

/// Parses an expression over parameters, the counter `n`, and exponentials
/// `base^n`. Accepts the output of to_string(ExpPoly). Symbols may carry a
/// "(0)" suffix, as in y(0). Throws std::invalid_argument on bad input.
ExpPoly parse_exp_poly(std::string_view text);

/// Like parse_exp_poly but rejects any dependence on n.
ParamExpr parse_param_expr(std::string_view text);

}  // namespace mora
