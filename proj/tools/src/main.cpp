#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "coherence_cli/app.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Coherence work and clock-resource ledger"};
  app.require_subcommand(1);

  coherence::cli::JobSpec job;
  double beta = 0.0;
  double epsilon = 0.0;
  std::size_t n = 0;

  const char* commands[][2] = {
      {"compute", "work and clock quantities of one state"},
      {"tradeoff", "trade-off bounds for one state, or a random sweep with --samples"},
      {"monotones", "monotone audit of the transition state -> target"},
      {"thermomajorize", "thermomajorization curves of D(rho) and Pi(rho)"},
      {"ising-spectrum", "free-fermion levels of the transverse-field Ising ring"},
      {"ising-histogram", "epsilon-window level counts across an (h, J) sweep"},
      {"verify", "randomized property suites"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--input", job.input, "input JSON document");
    sub->add_option("--output", job.output, "output file (stdout when omitted)");
    sub->add_option("--beta", beta, "inverse temperature");
    sub->add_option("--epsilon", epsilon, "energy-window width");
    sub->add_option("--seed", job.seed, "RNG seed")->default_val(42);
    sub->add_option("--samples", job.samples, "sample count (0 = default)");
    sub->add_option("--n", n, "system size");
    sub->add_option("--suite", job.suite, "verify suite or \"all\"")->default_val("tradeoff");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return coherence::cli::kInputError;
  }

  for (auto* sub : app.get_subcommands()) {
    job.command = sub->get_name();
    if (sub->count("--beta") > 0) job.beta = beta;
    if (sub->count("--epsilon") > 0) job.epsilon = epsilon;
    if (sub->count("--n") > 0) job.n = n;
  }
  return coherence::cli::run(job, std::cout, std::cerr);
}
