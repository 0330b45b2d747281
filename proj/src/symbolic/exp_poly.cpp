#include "mora/exp_poly.hpp"

#include <algorithm>
#include <vector>

#include "render.hpp"

namespace mora {

namespace {

const ParamExpr& one() {
  static const ParamExpr value(Rational(1));
  return value;
}

}  // namespace

ExpPoly::ExpPoly(ParamExpr constant) { add_term(one(), 0, constant); }

ExpPoly ExpPoly::term(ParamExpr coeff, ParamExpr base, unsigned degree) {
  ExpPoly out;
  out.add_term(base, degree, coeff);
  return out;
}

ExpPoly ExpPoly::counter() { return term(ParamExpr(Rational(1)), one(), 1); }

ExpPoly ExpPoly::indicator(unsigned k, ParamExpr coeff) { return term(std::move(coeff), ParamExpr{}, k); }

void ExpPoly::add_term(const ParamExpr& base, unsigned degree, const ParamExpr& coeff) {
  if (coeff.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(Key{base, degree}, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

ExpPoly& ExpPoly::operator+=(const ExpPoly& o) {
  for (const auto& [k, c] : o.terms_) add_term(k.base, k.degree, c);
  return *this;
}

ExpPoly& ExpPoly::operator-=(const ExpPoly& o) {
  for (const auto& [k, c] : o.terms_) add_term(k.base, k.degree, -c);
  return *this;
}

namespace {

// Value of base^n n^degree at a fixed n, with 0^0 = 1.
ParamExpr term_at(const ExpPoly::Key& k, unsigned n) {
  if (k.degree > 0 && n == 0) return {};
  return k.base.pow(n).scaled(mora::pow(Rational(n), k.degree));
}

}  // namespace

ExpPoly operator*(const ExpPoly& a, const ExpPoly& b) {
  ExpPoly out;
  for (const auto& [ka, ca] : a.terms_)
    for (const auto& [kb, cb] : b.terms_) {
      bool ia = ka.base.is_zero(), ib = kb.base.is_zero();
      if (ia && ib) {
        if (ka.degree == kb.degree) out.add_term(ka.base, ka.degree, ca * cb);
      } else if (ia) {
        out.add_term(ka.base, ka.degree, ca * cb * term_at(kb, ka.degree));
      } else if (ib) {
        out.add_term(kb.base, kb.degree, ca * cb * term_at(ka, kb.degree));
      } else {
        out.add_term(ka.base * kb.base, ka.degree + kb.degree, ca * cb);
      }
    }
  return out;
}

ExpPoly ExpPoly::scaled(const ParamExpr& factor) const {
  ExpPoly out;
  for (const auto& [k, c] : terms_) out.add_term(k.base, k.degree, c * factor);
  return out;
}

ExpPoly ExpPoly::pow(unsigned k) const {
  ExpPoly out(ParamExpr(Rational(1)));
  for (unsigned i = 0; i < k; ++i) out = out * *this;
  return out;
}

ExpPoly ExpPoly::shifted() const {
  // base^(n+1) (n+1)^d = base * base^n * sum_m C(d, m) n^m
  ExpPoly out;
  for (const auto& [k, c] : terms_) {
    if (k.base.is_zero()) {
      if (k.degree > 0) out.add_term(k.base, k.degree - 1, c);
      continue;
    }
    ParamExpr lead = c * k.base;
    for (unsigned m = 0; m <= k.degree; ++m) out.add_term(k.base, m, lead.scaled(binomial(k.degree, m)));
  }
  return out;
}

ParamExpr ExpPoly::at_zero() const {
  ParamExpr out;
  for (const auto& [k, c] : terms_)
    if (k.degree == 0) out += c;  // also the n = 0 indicator
  return out;
}

Rational ExpPoly::evaluate(unsigned long n, const std::map<std::string, Rational>& bindings) const {
  Rational total = 0;
  Rational n_value(static_cast<unsigned long>(n));
  for (const auto& [k, c] : terms_) {
    if (k.base.is_zero()) {
      if (n == k.degree) total += mora::evaluate(c, bindings);
      continue;
    }
    Rational base = mora::evaluate(k.base, bindings);
    total += mora::evaluate(c, bindings) * mora::pow(base, n) * mora::pow(n_value, k.degree);
  }
  return total;
}

std::optional<ParamExpr> ExpPoly::as_constant() const {
  if (terms_.empty()) return ParamExpr{};
  if (terms_.size() == 1 && terms_.begin()->first == Key{one(), 0}) return terms_.begin()->second;
  return std::nullopt;
}

std::set<ParamExpr> ExpPoly::bases() const {
  std::set<ParamExpr> out;
  for (const auto& [k, c] : terms_) out.insert(k.base);
  return out;
}

std::optional<unsigned> ExpPoly::degree_for(const ParamExpr& base) const {
  std::optional<unsigned> out;
  for (const auto& [k, c] : terms_)
    if (k.base == base) out = std::max(out.value_or(0), k.degree);
  return out;
}

std::set<std::string> ExpPoly::parameters() const {
  std::set<std::string> out;
  for (const auto& [k, c] : terms_) {
    out.merge(k.base.symbols());
    out.merge(c.symbols());
  }
  return out;
}

ExpPoly ExpPoly::without_zero_base() const {
  ExpPoly out;
  for (const auto& [k, c] : terms_)
    if (!k.base.is_zero()) out.terms_.emplace(k, c);
  return out;
}

bool ExpPoly::has_zero_base() const {
  return std::any_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.first.base.is_zero(); });
}

unsigned ExpPoly::exceptional_prefix() const {
  unsigned out = 0;
  for (const auto& [k, c] : terms_)
    if (k.base.is_zero()) out = std::max(out, k.degree + 1);
  return out;
}

namespace {

// Render order: base 1 first, then remaining bases; highest n-degree first.
std::vector<std::pair<ExpPoly::Key, ParamExpr>> render_order(const ExpPoly& f) {
  std::vector<std::pair<ExpPoly::Key, ParamExpr>> items(f.terms().begin(), f.terms().end());
  std::stable_sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
    bool a_one = a.first.base == one();
    bool b_one = b.first.base == one();
    if (a_one != b_one) return a_one;
    if (int c = compare(a.first.base, b.first.base); c != 0) return c < 0;
    return a.first.degree > b.first.degree;
  });
  return items;
}

bool is_plain_symbol(const ParamExpr& p) {
  if (p.size() != 1) return false;
  const auto& [m, c] = *p.terms().begin();
  return c == 1 && m.factors().size() == 1 && m.degree() == 1;
}

std::string base_text(const ParamExpr& base) {
  if (auto r = as_rational(base)) {
    if (r->get_den() == 1 && sgn(*r) >= 0) return r->get_str() + "^n";
    return "(" + r->get_str() + ")^n";
  }
  if (is_plain_symbol(base)) return to_string(base) + "^n";
  return "(" + to_string(base) + ")^n";
}

std::string base_latex(const ParamExpr& base) {
  if (auto r = as_rational(base); r && r->get_den() == 1 && sgn(*r) >= 0) return r->get_str() + "^{n}";
  if (is_plain_symbol(base)) return to_latex(base) + "^{n}";
  return "\\left(" + to_latex(base) + "\\right)^{n}";
}

template <class SymbolFn, class CounterFn, class BaseFn, class IndicatorFn, class JoinFn>
std::string render(const ExpPoly& f, SymbolFn symbol, CounterFn counter, BaseFn base_fn, IndicatorFn indicator,
                   JoinFn join) {
  std::vector<detail::RenderTerm> terms;
  for (const auto& [k, coeff] : render_order(f)) {
    for (const auto& [m, c] : coeff.terms()) {
      detail::RenderTerm t{c, {}};
      for (const auto& [sym, exp] : m.factors()) t.factors.push_back(symbol(sym, exp));
      if (k.base.is_zero()) {
        t.factors.push_back(indicator(k.degree));
      } else {
        if (k.degree > 0) t.factors.push_back(counter(k.degree));
        if (k.base != one()) t.factors.push_back(base_fn(k.base));
      }
      terms.push_back(std::move(t));
    }
  }
  return join(terms);
}

}  // namespace

std::string to_string(const ExpPoly& f) {
  return render(
      f, [](const std::string& s, unsigned e) { return e == 1 ? s : s + "^" + std::to_string(e); },
      [](unsigned d) { return d == 1 ? std::string("n") : "n^" + std::to_string(d); }, base_text,
      [](unsigned k) { return k == 0 ? std::string("0^n") : "[n=" + std::to_string(k) + "]"; }, detail::join_text);
}

std::string to_latex(const ExpPoly& f) {
  return render(
      f, detail::latex_symbol, [](unsigned d) { return detail::latex_symbol("n", d); }, base_latex,
      [](unsigned k) { return "[n = " + std::to_string(k) + "]"; }, detail::join_latex);
}

}  // namespace mora
