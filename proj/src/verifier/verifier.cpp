#include "mora/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

#include "mora/errors.hpp"

namespace mora {

namespace {

using Factors = std::vector<std::pair<std::size_t, unsigned>>;

struct NumTerm {
  double coeff;
  Factors factors;
};

struct NumBranch {
  std::vector<NumTerm> terms;
  double cumulative;
};

struct NumUpdate {
  std::size_t target;
  std::vector<NumBranch> branches;
};

struct NumDist {
  Distribution::Kind kind;
  double first;
  double second;
};

struct NumRv {
  std::size_t target;
  NumDist dist;
};

// Initial value: a constant, or a fresh sample.
struct NumInit {
  std::size_t target;
  bool sampled;
  double value;
  NumDist dist;
};

double power(double x, unsigned e) {
  double out = 1;
  for (unsigned i = 0; i < e; ++i) out *= x;
  return out;
}

double product(const Factors& f, const std::vector<double>& state) {
  double t = 1;
  for (const auto& [i, e] : f) t *= power(state[i], e);
  return t;
}

class Compiled {
 public:
  Compiled(const ValidatedProgram& p, const SimConfig& cfg, const std::set<EVar>& targets) : cfg_(cfg) {
    std::size_t i = 0;
    for (const auto& v : p.variables()) index_.emplace(v, i++);

    const auto& prog = p.program();
    for (const auto& v : p.variables()) {
      auto init = resolve_initial_value(p, v);
      if (const auto* d = std::get_if<Distribution>(&init))
        inits_.push_back({index_.at(v), true, 0, dist(*d)});
      else
        inits_.push_back({index_.at(v), false, number(std::get<ParamExpr>(init)), {}});
    }
    for (const auto& a : prog.rv_assignments) rvs_.push_back({index_.at(a.variable), dist(a.distribution)});
    for (const auto& a : prog.update_assignments) {
      NumUpdate u{index_.at(a.variable), {}};
      double total = 0;
      for (const auto& b : a.update.branches) {
        double prob = number(b.probability);
        if (!(prob >= 0 && prob <= 1))
          throw ConfigError("branch probability " + to_string(b.probability) + " of '" + a.variable +
                            "' evaluates to " + std::to_string(prob) + ", outside [0, 1]");
        total += prob;
        u.branches.push_back({poly(flatten(b.expr)), total});
      }
      u.branches.back().cumulative = 2;  // absorb rounding in the running sum
      updates_.push_back(std::move(u));
    }
    for (const auto& e : targets) {
      Factors f;
      for (const auto& [v, k] : e.monomial().factors()) {
        auto it = index_.find(v);
        if (it == index_.end()) throw ConfigError("E[" + e.to_string() + "] mentions unknown variable '" + v + "'");
        f.emplace_back(it->second, k);
      }
      targets_.push_back(std::move(f));
    }
  }

  std::size_t target_count() const { return targets_.size(); }

  // Writes the target values after the last iteration into `out`.
  void trial(std::uint64_t j, double* out) const {
    std::seed_seq seq{static_cast<std::uint32_t>(cfg_.seed), static_cast<std::uint32_t>(cfg_.seed >> 32),
                      static_cast<std::uint32_t>(j), static_cast<std::uint32_t>(j >> 32)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::vector<double> state(index_.size(), 0.0);
    for (const auto& init : inits_) state[init.target] = init.sampled ? sample(init.dist, rng) : init.value;
    for (unsigned n = 0; n < cfg_.iterations; ++n) {
      for (const auto& rv : rvs_) state[rv.target] = sample(rv.dist, rng);
      for (const auto& u : updates_) {
        const NumBranch* chosen = &u.branches.front();
        if (u.branches.size() > 1) {
          double r = coin(rng);
          for (const auto& b : u.branches)
            if (r < b.cumulative) {
              chosen = &b;
              break;
            }
        }
        double value = 0;
        for (const auto& t : chosen->terms) value += t.coeff * product(t.factors, state);
        state[u.target] = value;
      }
    }
    for (std::size_t t = 0; t < targets_.size(); ++t) out[t] = product(targets_[t], state);
  }

 private:
  double number(const ParamExpr& e) const {
    for (const auto& s : e.symbols())
      if (!cfg_.bindings.count(s))
        throw ConfigError("parameter '" + s + "' is unbound; pass it with --param " + s + "=<value>");
    return to_double(evaluate(e, cfg_.bindings));
  }

  NumDist dist(const Distribution& d) const {
    NumDist out{d.kind, number(d.first), number(d.second)};
    if (d.kind == Distribution::Kind::Uniform && out.first > out.second)
      throw ConfigError(to_string(d) + " has lower bound above upper bound under the bindings");
    if (d.kind == Distribution::Kind::Gauss && out.second < 0)
      throw ConfigError(to_string(d) + " has negative variance under the bindings");
    return out;
  }

  std::vector<NumTerm> poly(const ParamExpr& e) const {
    std::vector<NumTerm> out;
    for (const auto& [m, c] : e.terms()) {
      NumTerm t{to_double(c), {}};
      for (const auto& [s, k] : m.factors()) {
        auto it = index_.find(s);
        if (it != index_.end())
          t.factors.emplace_back(it->second, k);
        else
          t.coeff *= power(number(ParamExpr::symbol(s)), k);
      }
      out.push_back(std::move(t));
    }
    return out;
  }

  static double sample(const NumDist& d, std::mt19937_64& rng) {
    if (d.kind == Distribution::Kind::Uniform) {
      if (d.first == d.second) return d.first;
      return std::uniform_real_distribution<double>(d.first, d.second)(rng);
    }
    if (d.second == 0) return d.first;
    return std::normal_distribution<double>(d.first, std::sqrt(d.second))(rng);
  }

  const SimConfig& cfg_;
  std::map<std::string, std::size_t> index_;
  std::vector<NumInit> inits_;
  std::vector<NumRv> rvs_;
  std::vector<NumUpdate> updates_;
  std::vector<Factors> targets_;
};

}  // namespace

std::map<EVar, MomentEstimate> simulate(const ValidatedProgram& p, const SimConfig& cfg,
                                        const std::set<EVar>& targets) {
  if (cfg.trials < 2) throw ConfigError("at least two trials are needed, got " + std::to_string(cfg.trials));
  Compiled sim(p, cfg, targets);
  const std::size_t width = sim.target_count();
  std::vector<double> values(cfg.trials * width);

  unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, cfg.trials));
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < threads; ++w)
    pool.emplace_back([&, w] {
      std::uint64_t lo = cfg.trials * w / threads, hi = cfg.trials * (w + 1) / threads;
      for (std::uint64_t j = lo; j < hi; ++j) sim.trial(j, &values[j * width]);
    });
  for (auto& t : pool) t.join();

  std::map<EVar, MomentEstimate> out;
  std::size_t col = 0;
  const double count = static_cast<double>(cfg.trials);
  for (const auto& e : targets) {
    double sum = 0;
    for (std::uint64_t j = 0; j < cfg.trials; ++j) sum += values[j * width + col];
    double mean = sum / count;
    double sq = 0;
    for (std::uint64_t j = 0; j < cfg.trials; ++j) {
      double d = values[j * width + col] - mean;
      sq += d * d;
    }
    double sd = std::sqrt(sq / (count - 1));
    out.emplace(e, MomentEstimate{e, mean, sd, sd / std::sqrt(count)});
    ++col;
  }
  return out;
}

bool VerifyReport::all_pass() const {
  return std::all_of(entries.begin(), entries.end(), [](const VerifyEntry& e) { return e.pass; });
}

VerifyReport check(const std::map<EVar, ExpPoly>& closed, const std::map<EVar, MomentEstimate>& est,
                   const SimConfig& cfg, double z, double atol) {
  VerifyReport out{cfg.iterations, cfg.trials, cfg.seed, z, atol, cfg.bindings, {}};
  for (const auto& [e, m] : est) {
    auto it = closed.find(e);
    if (it == closed.end()) continue;
    double exact = to_double(it->second.evaluate(cfg.iterations, cfg.bindings));
    double margin = z * m.se + atol - std::abs(exact - m.mean);
    out.entries.push_back({e, exact, m, margin, margin >= 0});
  }
  return out;
}

}  // namespace mora
