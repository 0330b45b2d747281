#include "doctest.h"
#include "mora/driver.hpp"
#include "mora/verifier.hpp"
#include "oracles.hpp"

using namespace mora;

namespace {

EVar E(std::string_view s) { return EVar::parse(s); }

SimConfig running_config(unsigned n, std::uint64_t trials, std::uint64_t seed) {
  SimConfig cfg;
  cfg.bindings = {{"b", 2}, {"y(0)", 0}};
  cfg.iterations = n;
  cfg.trials = trials;
  cfg.seed = seed;
  return cfg;
}

const std::set<EVar> kRunningTargets{E("x"), E("x^2"), E("y"), E("x*y"), E("y^2")};

}  // namespace

TEST_CASE("deterministic program has zero spread") {
  auto p = validate_prob_solvable(parse_program("while true:\nv = v + 1"));
  SimConfig cfg;
  cfg.bindings = {{"v(0)", 0}};
  cfg.iterations = 7;
  cfg.trials = 50;
  auto est = simulate(p, cfg, {E("v")});
  CHECK(est.at(E("v")).mean == 7);
  CHECK(est.at(E("v")).sd == 0);

  auto report = check({{E("v"), parse_exp_poly("v(0) + n")}}, est, cfg);
  REQUIRE(report.entries.size() == 1);
  CHECK(report.entries[0].pass);
  CHECK(report.entries[0].margin == doctest::Approx(1e-9));
}

TEST_CASE("running example at n = 0") {
  auto p = oracle::load_corpus("running");
  auto est = simulate(p, running_config(0, 1000, 3), kRunningTargets);
  CHECK(est.at(E("x^2")).mean == 0);
  CHECK(est.at(E("x*y")).mean == 0);
  CHECK(est.at(E("y^2")).sd == 0);
}

TEST_CASE("estimates are reproducible and independent of the thread count") {
  auto p = oracle::load_corpus("running");
  auto cfg = running_config(10, 2000, 42);
  cfg.threads = 1;
  auto a = simulate(p, cfg, kRunningTargets);
  cfg.threads = 5;
  auto b = simulate(p, cfg, kRunningTargets);
  CHECK(a == b);
  cfg.seed = 43;
  CHECK(simulate(p, cfg, kRunningTargets) != a);
}

TEST_CASE("a perturbed closed form fails") {
  auto p = oracle::load_corpus("running");
  auto a = analyze(p, kRunningTargets);
  auto cfg = running_config(20, 100000, 7);
  auto est = simulate(p, cfg, kRunningTargets);
  auto good = check(a.solution.closed_forms, est, cfg);
  CHECK(good.all_pass());

  auto bad = a.solution.closed_forms;
  bad.at(E("x^2")) += ExpPoly(ParamExpr(Rational(1)));
  auto report = check(bad, est, cfg);
  CHECK_FALSE(report.all_pass());
  for (const auto& e : report.entries) CHECK(e.pass == (e.evar != E("x^2")));
}

TEST_CASE("twenty seeds all pass at z = 5") {
  auto p = oracle::load_corpus("running");
  auto a = analyze(p, {E("x^2")});
  for (std::uint64_t seed = 100; seed < 120; ++seed) {
    auto cfg = running_config(20, 20000, seed);
    auto report = check(a.solution.closed_forms, simulate(p, cfg, {E("x^2")}), cfg);
    CHECK_MESSAGE(report.all_pass(), "seed " << seed);
  }
}

TEST_CASE("configuration errors") {
  auto p = oracle::load_corpus("running");
  SimConfig cfg;
  cfg.trials = 10;
  CHECK_THROWS_AS(simulate(p, cfg, {E("x")}), ConfigError);  // b unbound
  cfg = running_config(3, 1, 0);
  CHECK_THROWS_AS(simulate(p, cfg, {E("x")}), ConfigError);  // one trial
  auto biased = oracle::load_corpus("biased_walk");
  SimConfig walk;
  walk.bindings = {{"p", Rational(3, 2)}};
  walk.trials = 10;
  CHECK_THROWS_AS(simulate(biased, walk, {E("x")}), ConfigError);
  auto rv = validate_prob_solvable(parse_program("while true:\nu = RV(uniform, 1, a)\nx = x + u"));
  SimConfig bad_bounds;
  bad_bounds.bindings = {{"a", 0}, {"x(0)", 0}};
  bad_bounds.trials = 10;
  CHECK_THROWS_AS(simulate(rv, bad_bounds, {E("x")}), ConfigError);
}

TEST_CASE("discrete programs: exact enumeration matches the closed form") {
  struct Case {
    const char* name;
    const char* target;
    oracle::Bindings params;
  };
  std::vector<Case> cases{{"biased_walk", "x^2", {{"p", Rational(2, 5)}}},
                          {"stuttering", "t^2", {}},
                          {"halving", "v", {}},
                          {"coin_double", "x^3", {}}};
  for (const auto& c : cases) {
    INFO(c.name);
    auto p = oracle::load_corpus(c.name);
    auto f = analyze(p, {E(c.target)}).solution.closed_forms.at(E(c.target));
    auto truth = oracle::enumerate_moments(p, E(c.target).monomial(), 5, c.params);
    for (unsigned n = 0; n <= 5; ++n) CHECK(f.evaluate(n, c.params) == truth[n]);

    // The simulator agrees with the same values statistically.
    SimConfig cfg;
    cfg.bindings = c.params;
    cfg.iterations = 5;
    cfg.trials = 20000;
    cfg.seed = 9;
    auto report = check({{E(c.target), f}}, simulate(p, cfg, {E(c.target)}), cfg);
    CHECK(report.all_pass());
  }
}
