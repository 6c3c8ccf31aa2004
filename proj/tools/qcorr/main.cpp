#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
  using qcorr::cli::RunConfig;
  RunConfig cfg;
  CLI::App app{"Entanglement and classical-correlation measures with monogamy checks"};
  app.require_subcommand(1);

  const auto common = [&cfg](CLI::App* sub) {
    sub->add_option("--seed", cfg.seeds, "Random seed (repeatable)");
    sub->add_option("--budget", cfg.budget, "Objective evaluations per optimization")->check(CLI::PositiveNumber);
    sub->add_option("--restarts", cfg.restarts, "Optimizer restarts")->check(CLI::PositiveNumber);
    sub->add_option("--out", cfg.out_path, "Write the JSON report here");
    sub->add_option("--format", cfg.format, "Standard output format")->check(CLI::IsMember({"json", "text"}));
  };

  CLI::App* compute = app.add_subcommand("compute", "Evaluate a measure on a state file");
  compute->add_option("measure", cfg.name, "entropy, coherent_information, concurrence, wootters, eof, holevo, "
                                           "csecret1, ed1, squashed_ub")->required();
  compute->add_option("--state", cfg.state_path, "State document")->required();
  compute->add_option("--povm", cfg.povm_path, "POVM document (holevo, csecret1)");
  compute->add_option("--keep", cfg.keep, "Labels of the marginal (entropy, coherent_information)");
  compute->add_option("--measured", cfg.measured, "Measured subsystem (holevo, csecret1, ed1)");
  compute->add_option("--cap", cfg.cap, "Extension dimension cap for squashed_ub (0: rank^2)");
  common(compute);

  CLI::App* verify = app.add_subcommand("verify", "Run verification suites");
  verify->add_option("suite,--suite", cfg.suites, "Suite names (positional or repeatable --suite)");
  verify->add_option("--state", cfg.state_path, "Input state for thm1, cor1, cor2 or main5");
  verify->add_option("--trials", cfg.trials, "Use seeds 1..N when no --seed is given")->check(CLI::NonNegativeNumber);
  verify->add_option("--gap-tol", cfg.gap_tol, "Duality-gap tolerance")->check(CLI::PositiveNumber);
  common(verify);

  CLI::App* cat = app.add_subcommand("catalog", "Export a named state");
  cat->add_option("name", cfg.name, "Catalog entry")->required();
  cat->add_option("--p", cfg.p, "Mixing parameter (werner)");
  cat->add_option("--dims", cfg.dims, "Subsystem dimensions (ginibre, haar_pure)")->delimiter(',');
  cat->add_option("--rank", cfg.rank, "Rank (ginibre)");
  common(cat);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  cfg.command = app.get_subcommands().front()->get_name();
  return qcorr::cli::run(cfg, std::cout, std::cerr);
}
