#include "mora/monomial.hpp"

#include <algorithm>
#include <cassert>

namespace mora {

Monomial::Monomial(std::string symbol, unsigned exponent) {
  if (exponent > 0) {
    factors_.emplace_back(std::move(symbol), exponent);
    degree_ = exponent;
  }
}

Monomial Monomial::from_factors(std::vector<Factor> factors) {
  std::sort(factors.begin(), factors.end(),
            [](const Factor& a, const Factor& b) { return a.first < b.first; });
  Monomial out;
  for (auto& [sym, exp] : factors) {
    if (exp == 0) continue;
    if (!out.factors_.empty() && out.factors_.back().first == sym)
      out.factors_.back().second += exp;
    else
      out.factors_.emplace_back(std::move(sym), exp);
    out.degree_ += exp;
  }
  return out;
}

unsigned Monomial::degree_in(std::string_view symbol) const {
  for (const auto& [sym, exp] : factors_)
    if (sym == symbol) return exp;
  return 0;
}

Monomial Monomial::without(std::string_view symbol) const {
  Monomial out;
  for (const auto& f : factors_) {
    if (f.first == symbol) continue;
    out.factors_.push_back(f);
    out.degree_ += f.second;
  }
  return out;
}

bool Monomial::divisible_by(const Monomial& divisor) const {
  return std::all_of(divisor.factors_.begin(), divisor.factors_.end(),
                     [this](const Factor& f) { return degree_in(f.first) >= f.second; });
}

Monomial Monomial::divided_by(const Monomial& divisor) const {
  assert(divisible_by(divisor));
  Monomial out;
  for (const auto& [sym, exp] : factors_) {
    unsigned e = exp - divisor.degree_in(sym);
    if (e == 0) continue;
    out.factors_.emplace_back(sym, e);
    out.degree_ += e;
  }
  return out;
}

Monomial Monomial::pow(unsigned exponent) const {
  if (exponent == 0) return {};
  Monomial out = *this;
  for (auto& f : out.factors_) f.second *= exponent;
  out.degree_ *= exponent;
  return out;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.factors_.reserve(a.factors_.size() + b.factors_.size());
  auto ia = a.factors_.begin();
  auto ib = b.factors_.begin();
  while (ia != a.factors_.end() || ib != b.factors_.end()) {
    if (ib == b.factors_.end() || (ia != a.factors_.end() && ia->first < ib->first)) {
      out.factors_.push_back(*ia++);
    } else if (ia == a.factors_.end() || ib->first < ia->first) {
      out.factors_.push_back(*ib++);
    } else {
      out.factors_.emplace_back(ia->first, ia->second + ib->second);
      ++ia;
      ++ib;
    }
  }
  out.degree_ = a.degree_ + b.degree_;
  return out;
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
  if (auto c = a.degree_ <=> b.degree_; c != 0) return c;
  auto ia = a.factors_.begin();
  auto ib = b.factors_.begin();
  for (; ia != a.factors_.end() && ib != b.factors_.end(); ++ia, ++ib) {
    // The symbol that sorts first dominates: x*y > y^2.
    if (ia->first != ib->first)
      return ia->first < ib->first ? std::strong_ordering::greater : std::strong_ordering::less;
    if (ia->second != ib->second) return ia->second <=> ib->second;
  }
  if (ia != a.factors_.end()) return std::strong_ordering::greater;
  if (ib != b.factors_.end()) return std::strong_ordering::less;
  return std::strong_ordering::equal;
}

std::string Monomial::to_string(bool explicit_ones) const {
  if (factors_.empty()) return "1";
  std::string out;
  for (const auto& [sym, exp] : factors_) {
    if (!out.empty()) out += '*';
    out += sym;
    if (exp != 1 || explicit_ones) out += '^' + std::to_string(exp);
  }
  return out;
}

}  // namespace mora
