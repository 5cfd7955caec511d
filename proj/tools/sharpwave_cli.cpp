// sharpwave: run verification suites and print constants.

#include <iostream>

#include "CLI11.hpp"
#include "sharpwave/cli.hpp"

int main(int argc, char** argv) {
  using namespace sharpwave;
  RunConfig cfg;
  double tol = 0.0;

  CLI::App app{"Numerical checks of sharp bilinear half-wave estimates"};
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--dim", cfg.dim, "spatial dimension d")->check(CLI::Range(2, 64));
  app.add_option("--beta", cfg.beta, "weight exponent beta");
  app.add_option("--mode", cfg.mode, "pm (u v-bar) or pp (u v)")->check(CLI::IsMember({"pm", "pp"}));
  app.add_option("--data", cfg.data,
                 "data preset: foschi, gaussian, tilted_gaussian, extremiser(a,b1,c), prop13(delta)");
  auto* tol_opt = app.add_option("--tol", tol, "relative tolerance (default 1e-6 for lemma31, 1e-3 otherwise)");
  app.add_option("--nodes", cfg.nodes, "starting Jacobi nodes per angle (lemma31)")->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "random seed");
  app.add_option("--out", cfg.out, "output file ('-' or empty: stdout; relative paths go under SHARPWAVE_OUT_DIR)");
  app.add_option("--format", cfg.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--samples", cfg.samples, "pairs (lemma31) or boosts (lorentz)");
  app.add_option("--budget", cfg.budget, "objective evaluations (search)")->check(CLI::PositiveNumber);
  app.add_option("--params", cfg.params, "search family size (search)")->check(CLI::Range(1, 12));
  app.add_flag("--timing", cfg.timing, "keep runtime_ms in reports");
  app.add_option("--dims", cfg.dims, "dimensions for the constants table")->delimiter(',');
  app.add_option("--betas", cfg.betas, "betas for the constants table")->delimiter(',');

  const std::pair<const char*, const char*> commands[] = {
      {"constants", "sharp constants at the given (beta, d)"},
      {"lemma31", "delta-constrained integral against its closed form on random pairs"},
      {"lorentz", "Lorentz boost invariants"},
      {"verify", "bilinear estimate ratio for a preset"},
      {"radial", "radial corollary for a preset"},
      {"sphere", "sphere inequalities (HLS chain, constant bound) for a preset"},
      {"counterexample", "blow-up scan near the endpoint"},
      {"search", "Nelder-Mead search for extremisers"},
      {"all", "every acceptance suite with a summary matrix"}};
  for (auto [name, help] : commands)
    app.add_subcommand(name, help)->callback([&cfg, n = std::string(name)] { cfg.command = n; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }
  if (tol_opt->count() > 0) cfg.tol = tol;

  const RunResult res = run(cfg);
  return write_outputs(res, cfg);
}
