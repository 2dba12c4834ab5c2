#pragma once

#include <optional>
#include <string>
#include <vector>

#include "t2hilb/rational.hpp"
#include "t2hilb/upoly.hpp"
#include "t2hilb/weights.hpp"

namespace t2hilb {

// Coefficient of the removed-column sum: the theorem statement prints
// (g_p - 1)/12 while its derivation yields (g_p^2 - 1)/12. Both are
// implemented; the default is the one pinned by the acceptance suite.
enum class KappaVariant { theorem, proof };
inline constexpr KappaVariant kDefaultKappa = KappaVariant::proof;

const char* kappa_variant_name(KappaVariant v);

Rat kappa(KappaVariant v, const Int& g);

struct GammaTerm {
  int i = 0, j = 0;  // 0-based ordered pair with d_ij > 0
  bool singular = false;
  std::optional<Rat> value;  // direct value for nonsingular terms
  std::string u_fraction;    // printed term for the singular ones
};

struct RemovedColumn {
  int p = 0;
  Int g_p;        // gcd of the minors of A with column p removed (0 if rank < 2)
  Rat gamma0_Ap;  // value of the gamma_0 summation formula on A_p
};

struct GammaLedger {
  std::vector<GammaTerm> terms;
  std::optional<Rat> singular_group_value;  // joint value of the singular terms
  std::vector<RemovedColumn> removed_columns;  // gamma_2 second sum only
};

struct Gamma0Result {
  Rat value;
  GammaLedger ledger;
};

struct Gamma2Result {
  Rat value;
  Rat gamma3;  // always equal to value (graded Gorenstein)
  Rat first_sum;
  Rat second_sum;
  KappaVariant variant = kDefaultKappa;
  GammaLedger ledger;
};

struct GammaOffResult {
  Rat g0, g1, g2, g3;  // Laurent coefficients of the off-shell series at t = 1
};

// gamma_0 via the minor formula, with the u-substitution handling of the
// singular terms. Requires faithful, standard form, n > 2.
Gamma0Result gamma0(const WeightMatrix& A);

Gamma2Result gamma2(const WeightMatrix& A, KappaVariant variant = kDefaultKappa);

// gamma_0^off = gamma_1^off = gamma_0/4, gamma_2^off = (3 gamma_0 + 4 gamma_2)/16,
// gamma_3^off = (gamma_0 + 4 gamma_2)/8.
GammaOffResult gamma_off(const WeightMatrix& A, KappaVariant variant = kDefaultKappa);

// The gamma_0 summation applied to a column subset (empty sum = 0); used for
// the removed-column contributions and exposed for the symbolic tests.
Rat gamma0_formula(const WeightMatrix& A, const std::vector<int>& columns,
                   GammaLedger* ledger = nullptr);

// Forces every term through the u-substitution path; for generic matrices
// this must agree with the direct evaluation.
Rat gamma0_all_symbolic(const WeightMatrix& A);

}  // namespace t2hilb
