#include <iostream>

#include "CLI11.hpp"
#include "mora/errors.hpp"
#include "mora/run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"mora: moment invariants of probabilistic loops"};
  mora::RunOptions opts;
  std::string format = "txt";
  std::string out_path;
  bool verify = false;
  std::vector<std::string> params;
  mora::VerifyOptions v;

  app.add_option("program", opts.program_path, "loop program file")->required();
  app.add_option("-g,--goal", opts.goals, "moment order k (all variables) or a monomial like x^2*y; repeatable")
      ->delimiter(',');
  app.add_option("-f,--format", format, "txt, tex or json")->check(CLI::IsMember({"txt", "tex", "json"}));
  app.add_option("-o,--out", out_path, "write the report to this file instead of stdout");
  app.add_option("--max-closure", opts.max_closure, "abort when the E-variable closure grows past this size");
  app.add_flag("--verify", verify, "cross-check the closed forms by simulation");
  app.add_option("--param", params, "binding name=rational for --verify, e.g. b=2 or y(0)=0; repeatable");
  app.add_option("--iters", v.iterations, "iteration count n for --verify");
  app.add_option("--trials", v.trials, "number of simulated runs for --verify");
  app.add_option("--seed", v.seed, "master seed for --verify");
  app.add_option("--z", v.z, "pass threshold in standard errors for --verify");
  app.add_option("--threads", v.threads, "simulation threads, 0 = all cores");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : mora::kExitUsage;
  }

  try {
    opts.format = mora::parse_format(format);
    if (!out_path.empty()) opts.out_path = out_path;
    if (!params.empty() && !verify) throw mora::ConfigError("--param only applies with --verify");
    if (verify) {
      for (const auto& p : params) v.bindings.insert(mora::parse_binding(p));
      opts.verify = v;
    }
  } catch (const mora::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return mora::kExitUsage;
  }
  return mora::run(opts, std::cout, std::cerr);
}
