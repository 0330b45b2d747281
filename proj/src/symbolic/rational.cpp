#include "mora/rational.hpp"

#include <cctype>
#include <stdexcept>
#include <string>

namespace mora {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s)
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  std::string_view numerator = s;
  std::string_view denominator;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    numerator = s.substr(0, slash);
    denominator = s.substr(slash + 1);
    if (!all_digits(denominator)) throw std::invalid_argument("malformed rational: " + std::string(text));
  }
  std::string_view int_part = numerator;
  std::string_view frac_part;
  if (auto dot = numerator.find('.'); dot != std::string_view::npos) {
    int_part = numerator.substr(0, dot);
    frac_part = numerator.substr(dot + 1);
    if (!frac_part.empty() && !all_digits(frac_part))
      throw std::invalid_argument("malformed rational: " + std::string(text));
  }
  if (!all_digits(int_part)) throw std::invalid_argument("malformed rational: " + std::string(text));

  mpz_class digits(std::string(int_part) + std::string(frac_part), 10);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac_part.size());
  Rational value(digits, scale);
  if (!denominator.empty()) {
    mpz_class den(std::string(denominator), 10);
    if (den == 0) throw std::invalid_argument("zero denominator: " + std::string(text));
    value /= den;
  }
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& r) { return r.get_str(); }

Rational pow(const Rational& base, unsigned long exponent) {
  mpz_class num;
  mpz_class den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
  return Rational(num, den);
}

Rational binomial(unsigned n, unsigned k) {
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return Rational(out);
}

double to_double(const Rational& r) { return r.get_d(); }

}  // namespace mora
