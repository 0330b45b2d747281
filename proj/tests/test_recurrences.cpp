#include <random>

#include "doctest.h"
#include "mora/driver.hpp"
#include "mora/exp_poly.hpp"
#include "mora/recurrences.hpp"
#include "oracles.hpp"

using namespace mora;

namespace {

ParamExpr P(std::string_view s) { return parse_param_expr(s); }
ExpPoly X(std::string_view s) { return parse_exp_poly(s); }
EVar E(std::string_view s) { return EVar::parse(s); }

Recurrence rec(std::string_view target, std::string_view c, std::string_view inhom, std::string_view init) {
  return {E(target), P(c), X(inhom), P(init)};
}

std::set<std::string> symbols_of(const Recurrence& r) {
  auto s = r.inhom.parameters();
  for (const auto& x : r.self_coeff.symbols()) s.insert(x);
  for (const auto& x : r.init.symbols()) s.insert(x);
  return s;
}

}  // namespace

TEST_CASE("solve_first_order examples") {
  CHECK(solve_first_order(rec("x^2", "1", "b^2/3", "0")) == X("b^2*n/3"));
  CHECK(solve_first_order(rec("x*y", "1", "b^2*n/3 + b^2/3", "0")) == X("b^2*n*(n+1)/6"));
  CHECK(solve_first_order(rec("y^2", "1", "b^2*n^2/3 + 2*b^2*n/3 + b^2/3 + 1", "y(0)^2")) ==
        X("n*(2*b^2*n^2 + 3*b^2*n + b^2 + 18)/18 + y(0)^2"));
  CHECK(solve_first_order(rec("v", "1/2", "0", "1")) == X("(1/2)^n"));
  CHECK(solve_first_order(rec("v", "1", "1", "0")) == X("n"));
  CHECK(solve_first_order(rec("v", "-1/2", "1", "0")) == X("2/3 - 2/3*(-1/2)^n"));
}

TEST_CASE("resonance raises the polynomial degree") {
  auto r = rec("v", "2", "2^n", "0");
  auto f = solve_first_order(r);
  CHECK(f == X("n*2^n/2"));
  auto seq = oracle::iterate(r, 15, {});
  for (unsigned n = 0; n <= 15; ++n) CHECK(f.evaluate(n, {}) == seq[n]);

  auto r2 = rec("v", "1/3", "n^2*(1/3)^n + (1/3)^n", "5");
  auto f2 = solve_first_order(r2);
  CHECK(f2.degree_for(P("1/3")) == 3u);
  CHECK(satisfies(r2, f2));
}

TEST_CASE("zero self-coefficient") {
  auto r = rec("x", "0", "2", "7");
  auto f = solve_first_order(r);
  CHECK(f == X("2 + 5*0^n"));
  CHECK(f.evaluate(0, {}) == 7);
  CHECK(f.evaluate(1, {}) == 2);
  CHECK(f.evaluate(9, {}) == 2);

  // An indicator fed through c = 0 moves one step right.
  auto shifted = rec("x", "0", "3*0^n + 1", "2");
  auto g = solve_first_order(shifted);
  CHECK(g == X("1 + 1*0^n + 3*[n=1]"));
  CHECK(g.exceptional_prefix() == 2);
  auto seq = oracle::iterate(shifted, 6, {});
  for (unsigned n = 0; n <= 6; ++n) CHECK(g.evaluate(n, {}) == seq[n]);

  // Nonzero c: a finite prefix and no extra exponential.
  auto prefix = rec("x", "2", "[n=2]", "0");
  auto h = solve_first_order(prefix);
  CHECK(h.without_zero_base().is_zero() == false);
  auto seq2 = oracle::iterate(prefix, 8, {});
  for (unsigned n = 0; n <= 8; ++n) CHECK(h.evaluate(n, {}) == seq2[n]);
}

TEST_CASE("parametric self-coefficients") {
  CHECK_THROWS_AS(solve_first_order(rec("x", "p", "1", "0")), UnresolvedBaseComparison);

  std::vector<std::string> conds;
  auto r = rec("x", "1 + p", "p", "0");
  auto f = solve_first_order(r, &conds);
  CHECK(f == X("(1 + p)^n - 1"));
  REQUIRE(conds.size() == 1);
  CHECK(conds[0] == "p + 1 != 1");

  // Self-coefficient p with no inhomogeneous part needs no division.
  conds.clear();
  CHECK(solve_first_order(rec("x", "p", "0", "a"), &conds) == X("a*p^n"));
  CHECK(conds.empty());
}

TEST_CASE("satisfies rejects wrong candidates") {
  auto r = rec("v", "1", "1", "0");
  CHECK(satisfies(r, X("n")));
  CHECK_FALSE(satisfies(r, X("n + 1")));
  CHECK_FALSE(satisfies(r, X("2*n")));
}

TEST_CASE("topo_order") {
  auto p = oracle::load_corpus("running");
  MomentTable t;
  auto eqs = evar_closure({E("y^2"), E("x"), E("y")}, p, t);
  auto order = topo_order(eqs);
  auto pos = [&](const char* s) { return std::find(order.begin(), order.end(), E(s)) - order.begin(); };
  REQUIRE(order.size() == eqs.size());
  CHECK(pos("x^2") < pos("x*y"));
  CHECK(pos("x*y") < pos("y^2"));
  CHECK(pos("x") < pos("y"));
  CHECK(topo_order(eqs) == order);

  std::vector<MomentEquation> reversed(eqs.rbegin(), eqs.rend());
  CHECK(topo_order(reversed) == order);

  CHECK(topo_order(evar_closure({E("v")}, oracle::load_corpus("counter"), t)) == SolveOrder{E("v")});

  MomentEquation a{E("a"), {{E("b"), P("1")}}, {}};
  MomentEquation b{E("b"), {{E("a"), P("2")}}, {}};
  try {
    topo_order({a, b});
    FAIL("cycle accepted");
  } catch (const CyclicDependency& e) {
    CHECK(e.cycle().size() == 2);
  }
}

TEST_CASE("build_recurrence") {
  auto p = oracle::load_corpus("running");
  MomentTable t;
  auto eq = moment_equation(E("x*y"), p, t);
  std::map<EVar, ExpPoly> solved{{E("x^2"), X("b^2*n/3")}};
  auto r = build_recurrence(eq, solved, {{E("x*y"), P("0")}});
  CHECK(r.self_coeff == P("1"));
  CHECK(r.inhom == X("b^2*n/3 + b^2/3"));
  CHECK(r.init.is_zero());
  CHECK_THROWS_AS(build_recurrence(eq, {}, {{E("x*y"), P("0")}}), AnalysisError);
  CHECK_THROWS_AS(build_recurrence(eq, solved, {}), AnalysisError);
}

TEST_CASE("running example closed forms") {
  auto p = oracle::load_corpus("running");
  auto a = analyze(p, goal_evars(parse_goals({"1", "2"}, p), p));
  const auto& cf = a.solution.closed_forms;
  CHECK(cf.at(E("x")) == X("0"));
  CHECK(cf.at(E("y")) == X("y(0)"));
  CHECK(cf.at(E("x^2")) == X("b^2*n/3"));
  CHECK(cf.at(E("x*y")) == X("b^2*n^2/6 + b^2*n/6"));
  CHECK(cf.at(E("y^2")) == X("b^2*n^3/9 + b^2*n^2/6 + b^2*n/18 + n + y(0)^2"));
  CHECK(cf.at(E("u")) == X("b/2"));
  CHECK(cf.at(E("g^2")) == X("1"));
  CHECK(a.solution.side_conditions.empty());
}

TEST_CASE("solve_all against exact enumeration") {
  struct Case {
    const char* name;
    const char* target;
    oracle::Bindings params;
  };
  std::vector<Case> cases{
      {"counter", "v", {{"v(0)", 3}}},
      {"counter", "v^3", {{"v(0)", -2}}},
      {"halving", "v", {}},
      {"halving", "v^2", {}},
      {"coin_double", "x^2", {}},
      {"biased_walk", "x^2", {{"p", Rational(1, 3)}}},
      {"biased_walk", "x^3", {{"p", Rational(3, 4)}}},
      {"stuttering", "s*t", {}},
      {"stuttering", "t^2", {}},
      {"square", "y", {}},
      {"neg_half", "v^2", {{"v(0)", 2}}},
      {"doubling_resonance", "v*w", {{"v(0)", 1}}},
      {"neg_half_resonance", "v^2", {{"v(0)", -1}}},
  };
  for (const auto& c : cases) {
    INFO(c.name << " E[" << c.target << "]");
    auto p = oracle::load_corpus(c.name);
    auto a = analyze(p, {E(c.target)});
    const ExpPoly& f = a.solution.closed_forms.at(E(c.target));
    auto truth = oracle::enumerate_moments(p, E(c.target).monomial(), 10, c.params);
    for (unsigned n = 0; n <= 10; ++n) CHECK(f.evaluate(n, c.params) == truth[n]);
  }
  CHECK(analyze(oracle::load_corpus("halving"), {E("v")}).solution.closed_forms.at(E("v")) == X("(1/2)^n"));
  CHECK(analyze(oracle::load_corpus("counter"), {E("v")}).solution.closed_forms.at(E("v")) == X("v(0) + n"));
  CHECK(analyze(oracle::load_corpus("square"), {E("y")}).solution.closed_forms.at(E("y")) == X("n^2"));
}

TEST_CASE("corpus closed forms satisfy their recurrences and iterate correctly") {
  std::mt19937 rng(11);
  std::set<ParamExpr> self_coeffs;
  for (const auto& name : oracle::corpus()) {
    CAPTURE(name);
    auto p = oracle::load_corpus(name);
    auto a = analyze(p, goal_evars(parse_goals({"1", "2", "3"}, p), p));
    for (const auto& [e, f] : a.solution.closed_forms) {
      const auto& r = a.solution.recurrences.at(e);
      self_coeffs.insert(r.self_coeff);
      CHECK(satisfies(r, f));
      for (int trial = 0; trial < 3; ++trial) {
        auto b = oracle::random_bindings(symbols_of(r), rng);
        auto seq = oracle::iterate(r, 25, b);
        for (unsigned n = 0; n <= 25; ++n) CHECK(f.evaluate(n, b) == seq[n]);
      }
    }
  }
  for (const char* c : {"0", "1", "1/2", "-1/2", "2"}) CHECK_MESSAGE(self_coeffs.count(P(c)), c);
}
