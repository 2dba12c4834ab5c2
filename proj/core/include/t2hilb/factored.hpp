#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "t2hilb/bivariate.hpp"
#include "t2hilb/series.hpp"
#include "t2hilb/weights.hpp"

namespace t2hilb {

// (p, q) stands for the denominator factor (1 - s^p t^q); never both zero.
using FactorKey = std::pair<std::int64_t, std::int64_t>;
using FactorMultiset = std::map<FactorKey, std::int64_t>;

// scalar * num / prod (1 - s^p t^q)^mult. The representation is allowed to
// stay unreduced; reduction happens only at canonicalization time.
struct FactoredRational {
  Rat scalar = 1;
  BivariateLaurent num = BivariateLaurent::one();
  FactorMultiset den;

  static FactoredRational zero();
  bool is_zero() const { return scalar == 0 || num.is_zero(); }
  void add_factor(std::int64_t p, std::int64_t q, std::int64_t mult = 1);
};

FactoredRational mul(const FactoredRational& a, const FactoredRational& b);

// Seed term of the sectioning pipeline for an ordered pair with d_ij > 0:
// 1 / (d_ij^2 * prod_{k != i,j} (1 - s^{d_ik} t^{d_ij+d_jk})(1 - s^{-d_ik} t^{d_ij-d_jk})).
FactoredRational phi_term(const WeightMatrix& A, int i, int j);

// Flip denominator factors with a negative exponent on the chosen axis,
// compensating the numerator by the monomial -s^-p t^-q per multiplicity.
FactoredRational normalize(const FactoredRational& F, Axis axis);

// Splits off the denominator factors constant on the axis; the product of
// the two parts equals F. The first part has numerator 1 and scalar 1.
std::pair<FactoredRational, FactoredRational> factor_out_axis_free(const FactoredRational& F,
                                                                   Axis axis);

// Denominator transform of the sectioning step:
// axis t: (1 - s^p t^q) -> (1 - s^{pd/g} t^{q/g})^g with g = gcd(d, q),
// and symmetrically for axis s. The q = 0 branch (g = d) follows the formal
// rule for completeness; u_op refuses axis-free factors instead of using it.
FactorMultiset u_op_denominator(const FactorMultiset& den, std::int64_t d, Axis axis);

// Sectioning operator U_{d,axis}: keeps every d-th coefficient of the formal
// Laurent expansion along the axis. Requires the denominator normalized on
// the axis with no axis-free factor; the numerator may be Laurent on the
// axis (finitely many negative exponents are handled by expanding from the
// bottom exponent).
FactoredRational u_op(const FactoredRational& F, std::int64_t d, Axis axis);

// Truncated formal expansion along the axis, up to exponent max_deg
// inclusive. Requires all denominator factors to have exponent >= 1 on the
// axis. Exposed for the sectioning property tests.
BivariateLaurent truncated_series(const FactoredRational& F, Axis axis, std::int64_t max_deg);

// Prepare for the s = t substitution: flip factors with p + q < 0 and cancel
// factors with p + q = 0 against the numerator by exact division.
FactoredRational normalize_for_diagonal(const FactoredRational& F);

// Substitute s = t: exponent pairs merge to their sum and factors become
// (1 - t^{p+q}). A factor with p + q <= 0 raises errc::needs_reassembly.
UnivariateRational substitute_diagonal(const FactoredRational& F);

}  // namespace t2hilb
