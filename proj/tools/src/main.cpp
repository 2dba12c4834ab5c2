#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "t2hilb/report.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Hilbert series and Laurent coefficients of 2-torus symplectic quotients"};

  t2hilb::RunConfig cfg;
  std::string tasks = "classify";

  app.add_option("--matrix", cfg.matrix_text,
                 "weight matrix, rows separated by ';' (e.g. \"1 2 3; 0 1 1\")")
      ->required();
  app.add_option("--tasks", tasks, "comma-separated subset of classify,series,gammas,verify")
      ->capture_default_str();
  app.add_option("--oracle-degree", cfg.oracle_degree, "degree bound for oracle comparisons")
      ->capture_default_str();
  app.add_option("--genericize-bound", cfg.genericize_bound, "row-operation search bound")
      ->capture_default_str();
  app.add_option("--gamma-variant", cfg.gamma_variant,
                 "removed-column coefficient: theorem, proof or auto")
      ->check(CLI::IsMember({"theorem", "proof", "auto"}))
      ->capture_default_str();
  app.add_option("--format", cfg.format, "output format")
      ->check(CLI::IsMember({"text", "json", "latex"}))
      ->capture_default_str();
  app.add_option("--seed", cfg.seed, "seed for the perturbation oracle")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  cfg.tasks.clear();
  std::string tok;
  for (char c : tasks + ",") {
    if (c == ',') {
      if (!tok.empty()) cfg.tasks.push_back(tok);
      tok.clear();
    } else if (!isspace(static_cast<unsigned char>(c))) {
      tok += c;
    }
  }

  t2hilb::RunResult res = t2hilb::run(cfg);
  std::fputs(res.output.c_str(), stdout);
  return res.exit_code;
}
