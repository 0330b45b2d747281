#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mora/monomial.hpp"
#include "mora/rational.hpp"

namespace mora {

template <class Coeff>
class Polynomial;

template <class Coeff>
bool is_zero(const Polynomial<Coeff>& p);

/// Sparse multivariate polynomial in canonical expanded form.
///
/// Terms are stored leading-term first under the graded lexicographic
/// monomial order, and no stored coefficient is zero. Two polynomials are
/// equal iff they have identical term maps, so equality is decidable by
/// normal form. `Coeff` is either `Rational` (giving `ParamExpr`) or
/// `Polynomial<Rational>` (giving `VarPoly`, a polynomial over program
/// variables whose coefficients are parameter expressions).
template <class Coeff>
class Polynomial {
 public:
  using coefficient_type = Coeff;
  using TermMap = std::map<Monomial, Coeff, std::greater<>>;

  Polynomial() = default;
  Polynomial(Coeff constant) { add_term(Monomial{}, std::move(constant)); }  // NOLINT
  Polynomial(const Monomial& m, Coeff c) { add_term(m, std::move(c)); }

  static Polynomial symbol(std::string name, unsigned exponent = 1) {
    return Polynomial(Monomial(std::move(name), exponent), Coeff(1));
  }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
  }

  Coeff constant_term() const {
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? Coeff(0) : it->second;
  }

  Coeff coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Coeff(0) : it->second;
  }

  unsigned degree() const { return terms_.empty() ? 0 : terms_.begin()->first.degree(); }

  unsigned degree_in(std::string_view sym) const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree_in(sym));
    return d;
  }

  std::set<std::string> symbols() const {
    std::set<std::string> out;
    for (const auto& [m, c] : terms_)
      for (const auto& [s, e] : m.factors()) out.insert(s);
    return out;
  }

  bool contains(std::string_view sym) const { return degree_in(sym) > 0; }

  void add_term(const Monomial& m, Coeff c) {
    if (mora::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(m, std::move(c));
    if (!inserted) {
      it->second += c;
      if (mora::is_zero(it->second)) terms_.erase(it);
    }
  }

  Polynomial& operator+=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(const Polynomial& a) {
    Polynomial out;
    for (const auto& [m, c] : a.terms_) out.terms_.emplace(m, -c);
    return out;
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial out;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
    return out;
  }

  /// Multiplies every coefficient by `s`.
  Polynomial scaled(const Coeff& s) const {
    Polynomial out;
    if (mora::is_zero(s)) return out;
    for (const auto& [m, c] : terms_) out.add_term(m, c * s);
    return out;
  }

  /// Exact division of every coefficient by a nonzero rational.
  Polynomial divided_by(const Rational& d) const {
    Polynomial out;
    for (const auto& [m, c] : terms_) out.add_term(m, c * Coeff(Rational(1) / d));
    return out;
  }

  Polynomial pow(unsigned k) const {
    Polynomial result(Coeff(1));
    Polynomial base = *this;
    while (k > 0) {
      if (k & 1U) result = result * base;
      k >>= 1U;
      if (k > 0) base = base * base;
    }
    return result;
  }

  /// Replaces every occurrence of `sym` by `replacement`, fully expanded.
  Polynomial substitute(std::string_view sym, const Polynomial& replacement) const {
    if (!contains(sym)) return *this;
    std::vector<Polynomial> powers{Polynomial(Coeff(1))};
    Polynomial out;
    for (const auto& [m, c] : terms_) {
      unsigned e = m.degree_in(sym);
      while (powers.size() <= e) powers.push_back(powers.back() * replacement);
      out += Polynomial(m.without(sym), c) * powers[e];
    }
    return out;
  }

  /// Groups terms by their power of `sym`: result[k] is the cofactor of sym^k.
  std::map<unsigned, Polynomial> collect(std::string_view sym) const {
    std::map<unsigned, Polynomial> out;
    for (const auto& [m, c] : terms_) out[m.degree_in(sym)].add_term(m.without(sym), c);
    return out;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) = default;

  /// Total order on normal forms, used for deterministic containers.
  friend int compare(const Polynomial& a, const Polynomial& b) {
    auto ia = a.terms_.begin();
    auto ib = b.terms_.begin();
    for (; ia != a.terms_.end() && ib != b.terms_.end(); ++ia, ++ib) {
      if (auto o = ia->first <=> ib->first; o != 0) return o < 0 ? -1 : 1;
      if (int c = compare(ia->second, ib->second); c != 0) return c;
    }
    if (ia == a.terms_.end()) return ib == b.terms_.end() ? 0 : -1;
    return 1;
  }
  friend bool operator<(const Polynomial& a, const Polynomial& b) { return compare(a, b) < 0; }

 private:
  TermMap terms_;
};

template <class Coeff>
bool is_zero(const Polynomial<Coeff>& p) {
  return p.is_zero();
}

/// Polynomial over symbolic parameters with rational coefficients.
using ParamExpr = Polynomial<Rational>;

/// Polynomial over program variables whose coefficients are ParamExprs.
using VarPoly = Polynomial<ParamExpr>;

/// Value of a constant ParamExpr, if it has no parameters.
std::optional<Rational> as_rational(const ParamExpr& p);

/// Exact quotient `num / den` when `den` divides `num` in the polynomial
/// ring, std::nullopt otherwise. `den` must be nonzero.
std::optional<ParamExpr> exact_divide(const ParamExpr& num, const ParamExpr& den);

/// Substitutes rational values for parameters. Throws UnboundParameter when
/// a symbol has no binding.
Rational evaluate(const ParamExpr& p, const std::map<std::string, Rational>& bindings);

/// Splits a flat polynomial over all symbols into a VarPoly, moving every
/// symbol in `variables` into the outer monomial.
VarPoly split_variables(const ParamExpr& flat, const std::set<std::string>& variables);

/// Inverse of split_variables.
ParamExpr flatten(const VarPoly& p);

/// Canonical text such as "b^2/3 + x^2 + 2*x*y" (ASCII, '^' for powers).
std::string to_string(const ParamExpr& p);
std::string to_string(const VarPoly& p);

/// LaTeX rendering such as "\frac{b^{2}}{3}".
std::string to_latex(const ParamExpr& p);

}  // namespace mora
