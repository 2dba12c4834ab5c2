#pragma once

#include <cstdint>
#include <vector>

#include "t2hilb/rational.hpp"
#include "t2hilb/weights.hpp"

namespace t2hilb {

// dim of the degree-d graded piece of the invariants of the cotangent lift:
// the number of monomials x^a y^b with |a| + |b| = d and A (a - b) = 0,
// counted by dynamic programming over the columns of (A | -A).
Int invariant_dimension(const WeightMatrix& A, int d);

// Naive enumeration over all exponent vectors; test reference only.
Int invariant_dimension_naive(const WeightMatrix& A, int d);

struct OracleSeries {
  int degree_bound = 0;
  std::vector<Int> off;  // h_0..h_D
  std::vector<Int> on;   // coefficients of (1 - t^2)^2 * sum h_d t^d, d <= D
};

OracleSeries oracle_series(const WeightMatrix& A, int D);

enum class GammaKind { gamma0, gamma2_first_sum };

struct PerturbationEstimate {
  double value = 0;   // mean of the per-trial Richardson extrapolations
  double spread = 0;  // max - min across trials
};

// Evaluates the minor formula at x_ij = a_ij (1 + eps r_ij) with r uniform in
// [-1, 1], Richardson-extrapolated over eps, eps/2, eps/4. Floating point
// appears only here, as a cross-check.
PerturbationEstimate perturbation_gamma(const WeightMatrix& A, GammaKind kind, double eps,
                                        int trials, std::uint64_t seed);

}  // namespace t2hilb
