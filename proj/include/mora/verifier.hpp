#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "mora/evar.hpp"
#include "mora/exp_poly.hpp"
#include "mora/frontend.hpp"

namespace mora {

struct SimConfig {
  /// Parameters and symbolic initial values such as "y(0)".
  std::map<std::string, Rational> bindings;
  unsigned iterations = 0;
  std::uint64_t trials = 2;
  std::uint64_t seed = 0;
  /// Worker threads; 0 picks the hardware concurrency.
  unsigned threads = 0;
};

struct MomentEstimate {
  EVar evar;
  double mean = 0;
  double sd = 0;
  double se = 0;
};

/// Runs the loop `cfg.trials` times for `cfg.iterations` iterations and
/// averages each target monomial. Trial j draws from its own generator
/// seeded by (seed, j), so results do not depend on the thread count.
///
/// Throws ConfigError when a needed parameter is unbound, a branch
/// probability falls outside [0, 1], a distribution is malformed under the
/// bindings, trials < 2, or a target mentions an unknown variable.
std::map<EVar, MomentEstimate> simulate(const ValidatedProgram& p, const SimConfig& cfg,
                                        const std::set<EVar>& targets);

struct VerifyEntry {
  EVar evar;
  double exact = 0;
  MomentEstimate estimate;
  /// z * se + atol - |exact - mean|; nonnegative iff the entry passes.
  double margin = 0;
  bool pass = false;

  friend bool operator==(const VerifyEntry&, const VerifyEntry&) = default;
};

inline bool operator==(const MomentEstimate& a, const MomentEstimate& b) {
  return a.evar == b.evar && a.mean == b.mean && a.sd == b.sd && a.se == b.se;
}

struct VerifyReport {
  unsigned iterations = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  double z = 5;
  double atol = 1e-9;
  std::map<std::string, Rational> bindings;
  std::vector<VerifyEntry> entries;

  bool all_pass() const;
  friend bool operator==(const VerifyReport&, const VerifyReport&) = default;
};

/// |f(n) - mean| <= z * se + atol for every estimate with a closed form.
VerifyReport check(const std::map<EVar, ExpPoly>& closed, const std::map<EVar, MomentEstimate>& est,
                   const SimConfig& cfg, double z = 5, double atol = 1e-9);

}  // namespace mora
