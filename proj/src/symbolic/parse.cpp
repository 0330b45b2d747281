#include <cctype>
#include <stdexcept>
#include <string>

#include "mora/exp_poly.hpp"

namespace mora {

namespace {

// Recursive descent over:
//   sum     := product (('+' | '-') product)*
//   product := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary (('^' | '**') (INT | 'n'))?
//   primary := NUM | IDENT ['(' INT ')'] | 'n' | '(' sum ')' | '[' 'n' '=' INT ']'
class ExpPolyParser {
 public:
  explicit ExpPolyParser(std::string_view text) : text_(text) {}

  ExpPoly parse() {
    ExpPoly out = sum();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("cannot parse '" + std::string(text_) + "' at offset " + std::to_string(pos_) +
                                ": " + what);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) != token) return false;
    pos_ += token.size();
    return true;
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  ExpPoly sum() {
    ExpPoly out = product();
    for (;;) {
      if (accept("+"))
        out += product();
      else if (accept("-"))
        out -= product();
      else
        return out;
    }
  }

  ExpPoly product() {
    ExpPoly out = unary();
    for (;;) {
      if (text_.substr(pos_, 2) != "**" && accept("*")) {
        out = out * unary();
      } else if (accept("/")) {
        auto divisor = unary().as_constant();
        if (!divisor || !as_rational(*divisor) || is_zero(*as_rational(*divisor)))
          fail("division is only supported by nonzero rational constants");
        out = out.scaled(ParamExpr(Rational(1 / *as_rational(*divisor))));
      } else {
        return out;
      }
    }
  }

  ExpPoly unary() {
    if (accept("-")) return -unary();
    return power();
  }

  ExpPoly power() {
    ExpPoly base = primary();
    skip_space();
    if (!accept("^") && !accept("**")) return base;
    skip_space();
    if (peek() == 'n' && !is_ident_char(pos_ + 1)) {
      ++pos_;
      auto b = base.as_constant();
      if (!b) fail("exponential base must not depend on n");
      return ExpPoly::term(ParamExpr(Rational(1)), *b, 0);
    }
    return base.pow(integer());
  }

  bool is_ident_char(std::size_t at) const {
    return at < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[at])) || text_[at] == '_');
  }

  unsigned integer() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer exponent");
    return static_cast<unsigned>(std::stoul(std::string(text_.substr(start, pos_ - start))));
  }

  ExpPoly primary() {
    char ch = peek();
    if (ch == '(') {
      ++pos_;
      ExpPoly inner = sum();
      if (!accept(")")) fail("expected ')'");
      return inner;
    }
    if (ch == '[') {
      ++pos_;
      if (!accept("n") || !accept("=")) fail("expected an indicator like [n=1]");
      unsigned k = integer();
      if (!accept("]")) fail("expected ']'");
      return ExpPoly::indicator(k, ParamExpr(Rational(1)));
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
        ++pos_;
      return ExpPoly(ParamExpr(parse_rational(text_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(ch))) {
      std::size_t start = pos_;
      while (is_ident_char(pos_)) ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      if (name == "n") return ExpPoly::counter();
      // Symbolic initial value such as y(0).
      if (pos_ + 2 < text_.size() && text_[pos_] == '(' && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
        std::size_t close = text_.find(')', pos_);
        if (close == std::string_view::npos) fail("expected ')'");
        name += text_.substr(pos_, close - pos_ + 1);
        pos_ = close + 1;
      }
      return ExpPoly(ParamExpr::symbol(name));
    }
    fail(ch == '\0' ? "unexpected end of input" : "unexpected '" + std::string(1, ch) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

ExpPoly parse_exp_poly(std::string_view text) { return ExpPolyParser(text).parse(); }

ParamExpr parse_param_expr(std::string_view text) {
  auto constant = parse_exp_poly(text).as_constant();
  if (!constant) throw std::invalid_argument("expression depends on n: '" + std::string(text) + "'");
  return *constant;
}

}  // namespace mora
