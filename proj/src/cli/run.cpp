#include "mora/run.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "mora/driver.hpp"
#include "mora/errors.hpp"

namespace mora {

std::pair<std::string, Rational> parse_binding(const std::string& text) {
  auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == text.size())
    throw ConfigError("expected name=value, got '" + text + "'");
  std::string name = text.substr(0, eq);
  try {
    return {name, parse_rational(text.substr(eq + 1))};
  } catch (const std::exception&) {
    throw ConfigError("value of '" + name + "' is not a rational number: '" + text.substr(eq + 1) + "'");
  }
}

namespace {

std::string read_program(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read program file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

InvariantReport build_report(const RunOptions& o) {
  auto start = std::chrono::steady_clock::now();
  ValidatedProgram p = validate_prob_solvable(parse_program(read_program(o.program_path)));
  GoalSpec goals = [&] {
    try {
      return parse_goals(o.goals, p);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }();
  Analysis a = analyze(p, goal_evars(goals, p), o.max_closure);

  InvariantReport r;
  r.program = o.program_path;
  for (const auto& g : goals.goals) r.goals.push_back(to_string(g));
  r.closed_forms = a.solution.closed_forms;
  r.initial_values = a.init_moments;
  for (const auto& [e, f] : r.closed_forms) r.parameters.merge(f.parameters());
  r.side_conditions = a.solution.side_conditions;

  if (o.verify) {
    SimConfig cfg{o.verify->bindings, o.verify->iterations, o.verify->trials, o.verify->seed, o.verify->threads};
    std::set<EVar> targets;
    for (const auto& [e, f] : r.closed_forms) targets.insert(e);
    for (const auto& s : r.parameters)
      if (!cfg.bindings.count(s))
        throw ConfigError("--verify needs a value for '" + s + "'; pass --param " + s + "=<value>");
    r.verification = check(r.closed_forms, simulate(p, cfg, targets), cfg, o.verify->z);
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.seconds = std::round(secs * 1000) / 1000;
  return r;
}

}  // namespace

int run(const RunOptions& options, std::ostream& out, std::ostream& err, InvariantReport* report) {
  InvariantReport r;
  try {
    r = build_report(options);
  } catch (const ParseError& e) {
    err << options.program_path << ":" << e.what() << "\n";
    return kExitParse;
  } catch (const NotProbSolvable& e) {
    err << options.program_path << ":" << e.what() << "\n";
    return kExitNotSolvable;
  } catch (const AnalysisError& e) {
    err << "analysis failed: " << e.what() << "\n";
    return kExitAnalysis;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UnboundParameter& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  std::string text = emit(r, options.format);
  if (options.out_path) {
    std::ofstream file(*options.out_path, std::ios::binary);
    if (!file || !(file << text)) {
      err << "error: cannot write '" << *options.out_path << "'\n";
      return kExitUsage;
    }
  } else {
    out << text;
  }
  if (report) *report = r;
  if (r.verification && !r.verification->all_pass()) {
    err << "verification failed: some Monte-Carlo estimates disagree with the closed forms\n";
    return kExitVerifyFailed;
  }
  return kExitOk;
}

}  // namespace mora
