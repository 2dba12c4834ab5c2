#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "t2hilb/gammas.hpp"
#include "t2hilb/series.hpp"
#include "t2hilb/weights.hpp"

namespace t2hilb {

// One pipeline invocation. The same config always produces byte-identical
// output: summation order is fixed and the seed pins the perturbation runs.
struct RunConfig {
  std::string matrix_text;
  std::vector<std::string> tasks = {"classify"};  // classify, series, gammas, verify
  int oracle_degree = 20;
  int genericize_bound = 10;
  std::string gamma_variant = "auto";  // theorem | proof | auto
  std::string format = "text";         // text | json | latex
  std::uint64_t seed = 1;
};

struct RunResult {
  int exit_code = 0;  // 0 iff every task succeeded and every verification passed
  std::string output;
};

RunResult run(const RunConfig& config);

// "theorem"/"proof" pass through; "auto" picks the variant whose removed
// column coefficient matches the exact Laurent expansion of the
// discriminating matrix [[1,3,4],[0,1,2]].
KappaVariant resolve_kappa(const std::string& name);

struct VerifyCheck {
  std::string name;
  bool pass = false;
  bool informational = false;  // logged observations that never fail
  std::string detail;
};

// Built-in battery checks plus oracle comparisons for the given matrix.
std::vector<VerifyCheck> verify_battery(const WeightMatrix& A, int oracle_degree,
                                        int genericize_bound, KappaVariant variant,
                                        std::uint64_t seed);

}  // namespace t2hilb
