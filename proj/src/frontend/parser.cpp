#include <cctype>
#include <optional>
#include <sstream>

#include "mora/frontend.hpp"

namespace mora {

namespace {

struct Token {
  enum class Kind { Ident, Number, Plus, Minus, Star, Power, LParen, RParen, At, Semi, Comma, Assign, Colon, End };

  Kind kind;
  std::string text;
  int column;
};

std::vector<Token> tokenize(std::string_view line, int line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto at = [&](std::size_t k) { return k < line.size() ? line[k] : '\0'; };
  auto digit = [&](std::size_t k) { return std::isdigit(static_cast<unsigned char>(at(k))) != 0; };
  while (i < line.size()) {
    char ch = line[i];
    int col = static_cast<int>(i) + 1;
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(ch))) {
      std::size_t start = i;
      while (std::isalnum(static_cast<unsigned char>(at(i)))) ++i;
      out.push_back({Token::Kind::Ident, std::string(line.substr(start, i - start)), col});
      continue;
    }
    if (digit(i)) {
      // [0-9]+[.]?[0-9]*([/][1-9][0-9]*)?
      std::size_t start = i;
      while (digit(i)) ++i;
      if (at(i) == '.') {
        ++i;
        while (digit(i)) ++i;
      }
      if (at(i) == '/') {
        if (!digit(i + 1) || at(i + 1) == '0')
          throw ParseError("malformed fraction in numeric literal", {line_no, static_cast<int>(i) + 1});
        ++i;
        while (digit(i)) ++i;
      }
      out.push_back({Token::Kind::Number, std::string(line.substr(start, i - start)), col});
      continue;
    }
    Token::Kind kind;
    std::size_t len = 1;
    switch (ch) {
      case '+': kind = Token::Kind::Plus; break;
      case '-': kind = Token::Kind::Minus; break;
      case '*':
        kind = at(i + 1) == '*' ? Token::Kind::Power : Token::Kind::Star;
        len = at(i + 1) == '*' ? 2 : 1;
        break;
      case '^': kind = Token::Kind::Power; break;
      case '(': kind = Token::Kind::LParen; break;
      case ')': kind = Token::Kind::RParen; break;
      case '@': kind = Token::Kind::At; break;
      case ';': kind = Token::Kind::Semi; break;
      case ',': kind = Token::Kind::Comma; break;
      case '=': kind = Token::Kind::Assign; break;
      case ':': kind = Token::Kind::Colon; break;
      case '/':
        throw ParseError("'/' is only allowed inside a numeric literal such as 1/2", {line_no, col});
      default:
        throw ParseError(std::string("unexpected character '") + ch + "'", {line_no, col});
    }
    out.push_back({kind, std::string(line.substr(i, len)), col});
    i += len;
  }
  out.push_back({Token::Kind::End, "", static_cast<int>(line.size()) + 1});
  return out;
}

/// Parser over the tokens of one line.
class LineParser {
 public:
  LineParser(std::vector<Token> tokens, int line_no) : tokens_(std::move(tokens)), line_(line_no) {}

  const Token& peek() const { return tokens_[pos_]; }
  bool at(Token::Kind k) const { return peek().kind == k; }
  SourceSpan span() const { return {line_, peek().column}; }

  [[noreturn]] void fail(const std::string& what) const {
    std::string found = at(Token::Kind::End) ? "end of line" : "'" + peek().text + "'";
    throw ParseError(what + ", found " + found, span());
  }

  Token expect(Token::Kind k, const char* what) {
    if (!at(k)) fail(std::string("expected ") + what);
    return tokens_[pos_++];
  }

  bool accept(Token::Kind k) {
    if (!at(k)) return false;
    ++pos_;
    return true;
  }

  bool is_header() const {
    return tokens_.size() == 4 && tokens_[0].kind == Token::Kind::Ident && tokens_[0].text == "while" &&
           tokens_[1].kind == Token::Kind::Ident && tokens_[1].text == "true" && tokens_[2].kind == Token::Kind::Colon;
  }

  bool rhs_is_distribution() const {
    return tokens_.size() > 3 && tokens_[2].kind == Token::Kind::Ident && tokens_[2].text == "RV" &&
           tokens_[3].kind == Token::Kind::LParen;
  }

  ParamExpr expression() {
    ParamExpr out = term();
    for (;;) {
      if (accept(Token::Kind::Plus))
        out += term();
      else if (accept(Token::Kind::Minus))
        out -= term();
      else
        return out;
    }
  }

  Distribution distribution() {
    expect(Token::Kind::Ident, "'RV'");
    expect(Token::Kind::LParen, "'('");
    Distribution d;
    Token kind = expect(Token::Kind::Ident, "distribution name");
    if (kind.text == "uniform")
      d.kind = Distribution::Kind::Uniform;
    else if (kind.text == "gauss")
      d.kind = Distribution::Kind::Gauss;
    else
      throw ParseError("unsupported distribution '" + kind.text + "' (expected uniform or gauss)",
                       {line_, kind.column});
    expect(Token::Kind::Comma, "','");
    d.first = expression();
    expect(Token::Kind::Comma, "','");
    d.second = expression();
    expect(Token::Kind::RParen, "')'");
    return d;
  }

  void end() {
    if (!at(Token::Kind::End)) fail("expected end of statement");
  }

 private:
  ParamExpr term() {
    ParamExpr out = unary();
    while (accept(Token::Kind::Star)) out = out * unary();
    return out;
  }

  ParamExpr unary() {
    if (accept(Token::Kind::Minus)) return -unary();
    return power();
  }

  ParamExpr power() {
    ParamExpr base = primary();
    if (!accept(Token::Kind::Power)) return base;
    Token e = expect(Token::Kind::Number, "integer exponent");
    if (e.text.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("exponent must be a nonnegative integer", {line_, e.column});
    return base.pow(static_cast<unsigned>(std::stoul(e.text)));
  }

  ParamExpr primary() {
    if (at(Token::Kind::Number)) return ParamExpr(parse_rational(tokens_[pos_++].text));
    if (at(Token::Kind::Ident)) return ParamExpr::symbol(tokens_[pos_++].text);
    if (accept(Token::Kind::LParen)) {
      ParamExpr inner = expression();
      expect(Token::Kind::RParen, "')'");
      return inner;
    }
    fail("expected a number, name or '('");
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  int line_;
};

// Updates are parsed before the variable set is known; expressions stay flat
// until the end of the file.
struct RawUpdate {
  std::string variable;
  std::vector<std::pair<ParamExpr, ParamExpr>> branches;
  SourceSpan span;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

bool operator<(const Distribution& a, const Distribution& b) {
  if (a.kind != b.kind) return a.kind < b.kind;
  if (int c = compare(a.first, b.first); c != 0) return c < 0;
  return compare(a.second, b.second) < 0;
}

std::string to_string(const Distribution& d) {
  return std::string("RV(") + (d.kind == Distribution::Kind::Uniform ? "uniform" : "gauss") + ", " +
         to_string(d.first) + ", " + to_string(d.second) + ")";
}

std::set<std::string> Program::variables() const {
  std::set<std::string> out;
  for (const auto& a : init_assignments) out.insert(a.variable);
  for (const auto& a : rv_assignments) out.insert(a.variable);
  for (const auto& a : update_assignments) out.insert(a.variable);
  return out;
}

Program parse_program(std::string_view source) {
  Program program;
  std::vector<RawUpdate> updates;
  bool in_loop = false;
  int line_no = 0;
  SourceSpan last{1, 1};

  std::size_t start = 0;
  while (start <= source.size()) {
    std::size_t stop = source.find('\n', start);
    if (stop == std::string_view::npos) stop = source.size();
    std::string_view raw = source.substr(start, stop - start);
    start = stop + 1;
    ++line_no;
    std::string_view text = trim(raw);
    if (text.empty() || text.front() == '#') continue;
    last = {line_no, 1};

    LineParser line(tokenize(raw, line_no), line_no);
    if (line.is_header()) {
      if (in_loop) throw ParseError("duplicate loop header", line.span());
      in_loop = true;
      continue;
    }
    if (line.at(Token::Kind::Ident) && line.peek().text == "while")
      throw ParseError("only the loop header 'while true:' is supported", line.span());

    SourceSpan span = line.span();
    std::string variable = line.expect(Token::Kind::Ident, "variable name").text;
    line.expect(Token::Kind::Assign, "'='");

    if (!in_loop) {
      InitValue value = line.rhs_is_distribution() ? InitValue(line.distribution()) : InitValue(line.expression());
      line.end();
      program.init_assignments.push_back({variable, std::move(value), span});
      continue;
    }
    if (line.rhs_is_distribution()) {
      if (!updates.empty())
        throw ParseError("random-variable assignment after update assignments", span);
      Distribution d = line.distribution();
      line.end();
      program.rv_assignments.push_back({variable, std::move(d), span});
      continue;
    }

    RawUpdate update{variable, {}, span};
    bool missing_probability = false;
    for (;;) {
      ParamExpr expr = line.expression();
      std::optional<ParamExpr> prob;
      if (line.accept(Token::Kind::At)) prob = line.expression();
      missing_probability |= !prob.has_value();
      update.branches.emplace_back(std::move(expr), prob.value_or(ParamExpr(Rational(1))));
      if (!line.accept(Token::Kind::Semi) || line.at(Token::Kind::End)) break;
    }
    line.end();
    if (missing_probability && update.branches.size() > 1)
      throw ParseError("every branch of a probabilistic update needs an '@' probability", span);
    updates.push_back(std::move(update));
  }

  if (!in_loop) throw ParseError("missing loop header 'while true:'", last);
  if (updates.empty()) throw ParseError("loop body needs at least one update assignment", last);

  const std::set<std::string> vars = [&] {
    std::set<std::string> v;
    for (const auto& a : program.init_assignments) v.insert(a.variable);
    for (const auto& a : program.rv_assignments) v.insert(a.variable);
    for (const auto& u : updates) v.insert(u.variable);
    return v;
  }();

  for (auto& u : updates) {
    UpdateAssignment out{u.variable, {}, u.span};
    ParamExpr total;
    for (auto& [expr, prob] : u.branches) {
      total += prob;
      out.update.branches.push_back({split_variables(expr, vars), prob});
    }
    if (total != ParamExpr(Rational(1)))
      throw NotProbSolvable(Restriction::ProbabilitySum,
                            "probabilities of the update to '" + u.variable + "' sum to " + to_string(total) +
                                ", not 1",
                            u.span);
    program.update_assignments.push_back(std::move(out));
  }

  auto note_symbols = [&](const ParamExpr& e) {
    for (const auto& s : e.symbols())
      if (!vars.count(s)) program.parameters.insert(s);
  };
  for (const auto& a : program.init_assignments) {
    if (const auto* e = std::get_if<ParamExpr>(&a.value)) note_symbols(*e);
    if (const auto* d = std::get_if<Distribution>(&a.value)) {
      note_symbols(d->first);
      note_symbols(d->second);
    }
  }
  for (const auto& a : program.rv_assignments) {
    note_symbols(a.distribution.first);
    note_symbols(a.distribution.second);
  }
  for (const auto& u : updates)
    for (const auto& [expr, prob] : u.branches) {
      note_symbols(expr);
      note_symbols(prob);
    }
  return program;
}

namespace {

// Grammar-conforming rendering: powers are written as repeated products.
std::string program_expr(const ParamExpr& e) {
  if (e.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : e.terms()) {
    Rational mag = abs(c);
    if (first)
      out << (sgn(c) < 0 ? "-" : "");
    else
      out << (sgn(c) < 0 ? " - " : " + ");
    first = false;
    bool need_star = false;
    if (m.is_one() || mag != 1) {
      out << mag.get_str();
      need_star = true;
    }
    for (const auto& [sym, exp] : m.factors())
      for (unsigned k = 0; k < exp; ++k) {
        out << (need_star ? "*" : "") << sym;
        need_star = true;
      }
  }
  return out.str();
}

std::string program_dist(const Distribution& d) {
  return std::string("RV(") + (d.kind == Distribution::Kind::Uniform ? "uniform" : "gauss") + ", " +
         program_expr(d.first) + ", " + program_expr(d.second) + ")";
}

}  // namespace

std::string pretty_print(const Program& p) {
  std::ostringstream out;
  for (const auto& a : p.init_assignments) {
    out << a.variable << " = ";
    if (const auto* e = std::get_if<ParamExpr>(&a.value))
      out << program_expr(*e);
    else
      out << program_dist(std::get<Distribution>(a.value));
    out << '\n';
  }
  out << "while true:\n";
  for (const auto& a : p.rv_assignments) out << "  " << a.variable << " = " << program_dist(a.distribution) << '\n';
  for (const auto& a : p.update_assignments) {
    out << "  " << a.variable << " = ";
    const auto& branches = a.update.branches;
    bool explicit_prob = branches.size() > 1 || branches.front().probability != ParamExpr(Rational(1));
    for (std::size_t i = 0; i < branches.size(); ++i) {
      if (i > 0) out << "; ";
      out << program_expr(flatten(branches[i].expr));
      if (explicit_prob) out << " @ " << program_expr(branches[i].probability);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace mora
